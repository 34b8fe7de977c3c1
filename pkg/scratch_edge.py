"""Near-edge tau_bar strategies: direct tiny-y solves vs sqrt-variable extrapolation."""
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


def poly_extrap(ys, vals, order=3):
    T = [np.asarray(vals, dtype=complex)]
    for m in range(1, order + 1):
        prev = T[-1]
        cur = np.empty(len(vals) - m, dtype=complex)
        for l in range(len(cur)):
            r = ys[l] / ys[l + m]
            cur[l] = prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0)
        T.append(cur)
    return T[order][-1], abs(T[order][-1] - T[order - 1][-1])


def neville_at(nodes, vals, target):
    """Polynomial interpolation evaluated at complex target."""
    n = len(nodes)
    p = list(map(complex, vals))
    x = list(map(complex, nodes))
    for m in range(1, n):
        for i in range(n - m):
            p[i] = ((target - x[i + m]) * p[i] + (x[i] - target) * p[i + 1]) / (x[i] - x[i + m])
    return p[0]


for eps in (1e-3, 3e-4, 1e-4):
    om = b - eps
    fa = CircleMap(om, (), (b,))
    R = true_R(om)
    print(f"--- eps={eps}  2R={2*R:.6f}")
    # 1. direct tiny-y solves
    for y in (2e-3, 1e-3, 3e-4, 1e-4):
        for N in (200, 400):
            try:
                tau, resid, cond, _ = solve_tau(fa, 1j * y, N=N)
                h = abs(tau) ** 2 / tau.imag
                print(f"   direct y={y:.0e} N={N}: tau={tau:.8f} h={h:.6f} resid={resid:.1e} cond={cond:.1e}")
            except Exception as e:
                print(f"   direct y={y:.0e} N={N}: {e}")
        if y == 1e-3:
            break  # keep it quick for the first pass

for eps in (1e-3, 1e-4):
    om = b - eps
    fa = CircleMap(om, (), (b,))
    R = true_R(om)
    ladder = [0.2 / 2**l for l in range(6)]
    taus = []
    for y in ladder:
        N = int(min(240, max(24, 2.0 / y)))
        tau, resid, cond, _ = solve_tau(fa, 1j * y, N=N)
        taus.append(tau)
    ys = np.array(ladder)
    # sqrt-variable: u = sqrt(eps - i y), target u* = sqrt(eps)
    u_nodes = [cmath.sqrt(eps - 1j * y) for y in ladder]
    tgt = math.sqrt(eps)
    tb_sqrt = neville_at(u_nodes, taus, tgt)
    tb_poly, err = poly_extrap(ys, taus)
    h_s = abs(tb_sqrt) ** 2 / tb_sqrt.imag if tb_sqrt.imag > 0 else float("nan")
    h_p = abs(tb_poly) ** 2 / tb_poly.imag if tb_poly.imag > 0 else float("nan")
    print(f"eps={eps}: 2R={2*R:.6f}  poly h={h_p:.6f}  sqrt-var h={h_s:.6f} tau_sqrt={tb_sqrt:.8f}")
