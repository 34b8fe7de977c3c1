"""Calibrate: fold vs poly extrapolation across edge distances; N(y) choice."""
import math
import cmath
import numpy as np
from scipy.optimize import brentq
from circletau.maps import CircleMap
from scratch_uniformizer import solve_tau

TWO_PI = 2 * math.pi
b = 1.0 / (4 * math.pi)


def true_R(om):
    g = lambda t: om + b * math.sin(TWO_PI * t)
    xa = brentq(g, 0.5, 0.75)
    xr = brentq(g, 0.75, 1.0)
    fa = CircleMap(om, (), (b,))
    ra, rr = float(fa.deriv(xa)), float(fa.deriv(xr))
    return 1.0 / (TWO_PI * (1 / abs(math.log(ra)) + 1 / abs(math.log(rr))))


def neville_at(nodes, vals, target):
    n = len(nodes)
    p = list(map(complex, vals))
    x = list(map(complex, nodes))
    for m in range(1, n):
        for i in range(n - m):
            p[i] = ((target - x[i + m]) * p[i] + (x[i] - target) * p[i + 1]) / (x[i] - x[i + m])
    return p[0]


def poly_extrap(ys, vals, order=3):
    T = [np.asarray(vals, dtype=complex)]
    for m in range(1, order + 1):
        prev = T[-1]
        cur = np.empty(len(vals) - m, dtype=complex)
        for l in range(len(cur)):
            r = ys[l] / ys[l + m]
            cur[l] = prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0)
        T.append(cur)
    return T[order][-1]


ladder = [0.2 / 2**l for l in range(6)]


def n_of_y(y, c=2.0, cap=256):
    return int(min(cap, max(32, c / y)))


print("eps      2R         poly_h      fold_h      (h target ~<= 2R)")
for eps in (0.05, 0.03, 0.01, 0.003, 0.001, 3e-4, 1e-4):
    om = b - eps
    fa = CircleMap(om, (), (b,))
    taus = []
    for y in ladder:
        tau, resid, cond, _ = solve_tau(fa, 1j * y, N=n_of_y(y))
        taus.append(tau)
    tb_p = poly_extrap(np.array(ladder), taus)
    u_nodes = [cmath.sqrt(1 - 1j * y / eps) for y in ladder]
    tb_s = neville_at(u_nodes, taus, 1.0)
    hp = abs(tb_p) ** 2 / tb_p.imag if tb_p.imag > 0 else float("nan")
    hs = abs(tb_s) ** 2 / tb_s.imag if tb_s.imag > 0 else float("nan")
    print(f"{eps:<8} {2*true_R(om):<10.6f} {hp:<11.6f} {hs:<11.6f}  tau_fold={tb_s:.7f}")

# N(y) residual profile at bottom rungs
print("\nresidual profile near bottom rungs (omega = b - 1e-4):")
fa = CircleMap(b - 1e-4, (), (b,))
for y in (0.0125, 0.00625, 0.004):
    for N in (160, 240, 320):
        tau, resid, cond, _ = solve_tau(fa, 1j * y, N=N)
        print(f"  y={y} N={N}: resid={resid:.2e} cond={cond:.1e} tau={tau:.9f}")

# symmetric center: does fold (one-sided) pollute Re tau?
fa = CircleMap(0.0, (), (b,))
taus = [solve_tau(fa, 1j * y, N=n_of_y(y))[0] for y in ladder]
tb_p = poly_extrap(np.array(ladder), taus)
u_nodes = [cmath.sqrt(1 - 1j * y / b) for y in ladder]
tb_s = neville_at(u_nodes, taus, 1.0)
print(f"\ncenter: poly={tb_p:.10f}  fold={tb_s:.10f}  (true Re=0, h/2<=R0={true_R(0.0):.8f})")
print(f"center h/2: poly={abs(tb_p)**2/(2*tb_p.imag):.8f} fold={abs(tb_s)**2/(2*tb_s.imag):.8f}")
