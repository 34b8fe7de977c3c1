"""Prototype of the spectral gluing solver, run before freezing the design."""
import math
import numpy as np
from circletau.maps import CircleMap

TWO_PI = 2 * math.pi


def solve_tau(fmap, omega, N, M=None):
    """Solve Phi(f(x)+omega) = Phi(x) + tau in least squares.

    Phi(z) = z + sum a_k e^{2pi i k z} + sum b_k e^{-2pi i k (z - omega)}
    Unknowns [a_1..a_N, b_1..b_N, tau].
    """
    if M is None:
        M = 4 * N + 8
    x = np.arange(M) / M
    fx = np.real(fmap.lift(x)) + omega  # top-boundary images f(x_j) + omega
    k = np.arange(1, N + 1)
    # columns for a_k: e^{2pi i k (f+omega)} - e^{2pi i k x}
    A_up = np.exp(2j * np.pi * np.outer(fx, k)) - np.exp(2j * np.pi * np.outer(x, k))
    # columns for b_k: e^{-2pi i k (f+omega-omega)} - e^{-2pi i k (x-omega)}
    A_dn = np.exp(-2j * np.pi * np.outer(fx - omega, k)) - np.exp(
        -2j * np.pi * np.outer(x - omega, k)
    )
    A_tau = -np.ones((M, 1), dtype=complex)
    A = np.hstack([A_up, A_dn, A_tau])
    rhs = -(fx - x)
    sol, res, rank, sv = np.linalg.lstsq(A, rhs, rcond=None)
    tau = sol[-1]
    resid = np.max(np.abs(A @ sol - rhs))
    cond = sv[0] / sv[-1]
    return tau, resid, cond, sol


def solve_welding(fmap, N, M=None):
    """phi-(f(x)) = phi+(x);  phi+ = z + C+ + sum_{k>0} a_k e^{2pi ikz},
    phi- = z + C- + sum_{k>0} b_k e^{-2pi ikz}.  Gauge C+ = 0.
    Unknowns [a_1..a_N, b_1..b_N, Cminus]."""
    if M is None:
        M = 4 * N + 8
    x = np.arange(M) / M
    fx = np.real(fmap.lift(x))
    k = np.arange(1, N + 1)
    A_a = -np.exp(2j * np.pi * np.outer(x, k))
    A_b = np.exp(-2j * np.pi * np.outer(fx, k))
    A_c = np.ones((M, 1), dtype=complex)
    A = np.hstack([A_a, A_b, A_c])
    rhs = x - fx
    sol, *_ = np.linalg.lstsq(A, rhs.astype(complex), rcond=None)
    resid = np.max(np.abs(A @ sol - rhs))
    c_minus = sol[-1]
    c_f = -c_minus
    return c_f, resid


b = 1.0 / (4 * math.pi)
arnold = CircleMap(0.0, (), (b,))
rot = CircleMap(0.3)

# 1. rotation exactness
tau, resid, cond, _ = solve_tau(rot, 0.1 + 0.2j, N=8)
print(f"rotation: tau={tau:.15f} expect {0.4+0.2j}, resid={resid:.2e}, cond={cond:.1e}")

# 2. welding constant of the Arnold map + asymptote
c_f, wres = solve_welding(arnold, N=32)
print(f"arnold C_f = {c_f:.15f}  resid={wres:.2e}")
for y in (1.0, 2.0, 3.0, 4.0):
    tau, resid, cond, _ = solve_tau(arnold, 1j * y, N=32)
    gap = abs(tau - 1j * y - c_f)
    print(f"  y={y}: tau={tau:.12f} gap={gap:.3e} resid={resid:.2e} cond={cond:.1e}")

# 3. boundary ladder at omega=0 (hyperbolic, rot 0)
print("boundary ladder at omega=0:")
taus = []
for i, y in enumerate([0.2 / 2**l for l in range(6)]):
    N = int(min(240, max(24, 1.6 / y)))
    tau, resid, cond, _ = solve_tau(arnold, 1j * y, N=N)
    taus.append((y, tau))
    print(f"  y={y:.5f} N={N}: tau={tau:.12f} resid={resid:.2e} cond={cond:.1e}")

# Richardson (polynomial, Neville) to y=0
ys = np.array([t[0] for t in taus])
vals = np.array([t[1] for t in taus])
T = [vals.copy()]
order = 3
for m in range(1, order + 1):
    prev = T[-1]
    cur = np.empty(len(vals) - m, dtype=complex)
    for l in range(len(cur)):
        r = ys[l] / ys[l + m]
        cur[l] = prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0)
    T.append(cur)
tau_bar = T[order][-1]
err = abs(T[order][-1] - T[order - 1][-1])
R0 = 1.0 / (2 * math.pi * (1 / math.log(1.5) + 1 / math.log(2)))
h = abs(tau_bar) ** 2 / (2 * tau_bar.imag)
print(f"tau_bar = {tau_bar:.10f}  est err={err:.2e}")
print(f"h = {h:.8f}  vs R0 = {R0:.8f}  ratio {h/R0:.4f}")
print(f"-1/sigma would be ~ {1j/ (math.pi*(1/math.log(1.5)+1/math.log(2))):.8f}")
