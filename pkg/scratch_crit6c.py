"""Criterion 6: residual-truncated ladders + symmetric fold extrapolation."""
import math
import cmath
import numpy as np
from circletau.maps import CircleMap
from scratch_uniformizer import solve_tau


def neville_at(nodes, vals, target):
    n = len(nodes)
    p = list(map(complex, vals))
    x = list(map(complex, nodes))
    for m in range(1, n):
        for i in range(n - m):
            p[i] = ((target - x[i + m]) * p[i] + (x[i] - target) * p[i + 1]) / (x[i] - x[i + m])
    return p[0]


def poly_extrap(ys, vals, order):
    T = [np.asarray(vals, dtype=complex)]
    for m in range(1, order + 1):
        prev = T[-1]
        cur = np.empty(len(vals) - m, dtype=complex)
        for l in range(len(cur)):
            r = ys[l] / ys[l + m]
            cur[l] = prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0)
        T.append(cur)
    return T[order][-1], abs(T[order][-1] - T[order - 1][-1])


def rungs_with_resid(fm, ladder, resid_keep=1e-7, cap=512):
    out = []
    for y in ladder:
        N = int(min(cap, max(32, 1.8 / max(y, 7e-3))))
        while True:
            tau, resid, cond, _ = solve_tau(fm, 1j * y, N=N)
            if resid <= 1e-9 or N >= cap:
                break
            N = min(cap, int(N * 1.6))
        if resid <= resid_keep:
            out.append((y, tau, resid))
        else:
            break  # deeper rungs only get worse
    return out


g = CircleMap(0.5, (), (0.0, 0.05))
h2 = g.iterate(2)
ladder = [0.25 / 2**l for l in range(7)]

# plateau half-width of the 1/2 plateau of family x+omega+0.05 sin 4pi x (edges by G2 range)
x = np.linspace(0, 1, 8192, endpoint=False)
y2v = g.lift(g.lift(x))
G2 = y2v - x - 1.0
w = float(max(G2.max(), -G2.min()))
print(f"plateau half-width w ~ {w:.6f}")

for name, fm in (("f", g), ("f2", h2)):
    rungs = rungs_with_resid(fm, ladder)
    print(f"{name}: kept {len(rungs)} rungs, deepest y={rungs[-1][0]:.5f} resid={rungs[-1][2]:.1e}")
    ys = np.array([r[0] for r in rungs])
    taus = [r[1] for r in rungs]
    order = min(3, len(rungs) - 1)
    vp, ep = poly_extrap(ys, taus, order)
    # symmetric two-sided fold, edges at +-w (for f2 the rot-0 plateau in its own shift family)
    s_edge = w if name == "f" else 2 * w  # rough: f2's plateau is about twice as wide
    uP = [cmath.sqrt(1 - 1j * yy / s_edge) for yy in ys]
    uM = [cmath.sqrt(1 + 1j * yy / s_edge) for yy in ys]
    vf = 0.5 * (neville_at(uP, taus, 1.0) + neville_at(uM, taus, 1.0))
    print(f"   poly: {vp:.10f} (est err {ep:.1e})   sym-fold: {vf:.10f}")
    if name == "f":
        ref2 = 2 * vp
        ref2f = 2 * vf
print(f"\nim gaps: poly {abs(vp.imag - ref2.imag):.2e}  sym-fold {abs(vf.imag - ref2f.imag):.2e}")
