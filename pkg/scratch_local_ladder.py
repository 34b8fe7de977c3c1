"""Edge-adapted ladders: rungs scaled to the edge distance eps."""
import math
import cmath
import numpy as np
from scipy.optimize import brentq, minimize_scalar
from circletau.maps import CircleMap
from scratch_uniformizer import solve_tau

TWO_PI = 2 * math.pi


def neville_at(nodes, vals, target):
    n = len(nodes)
    p = list(map(complex, vals))
    x = list(map(complex, nodes))
    for m in range(1, n):
        for i in range(n - m):
            p[i] = ((target - x[i + m]) * p[i] + (x[i] - target) * p[i + 1]) / (x[i] - x[i + m])
    return p[0]


fam = CircleMap(0.0, (), (-0.05, -0.03))
g = lambda x: -float(fam.displacement(x))
r = minimize_scalar(lambda t: -g(t), bracket=(0.5, 0.55, 0.6), method="brent")
y1, x2 = -r.fun, r.x
a_fold = abs(float(fam.deriv(x2, 2))) / 2

print("conditioning probe at tiny y (two-humped, eps=1e-4):")
fm = fam.shifted(y1 + 1e-4)
for y in (6e-4, 2e-4, 1e-4, 5e-5):
    for N in (128, 256):
        tau, resid, cond, _ = solve_tau(fm, 1j * y, N=N)
        print(f"  y={y:.0e} N={N}: tau={tau:.8f} resid={resid:.1e} cond={cond:.1e}")

print("\nedge-adapted fold extrapolation at the complex endpoint:")
for eps in (1e-3, 3e-4, 1e-4, 4e-5):
    om = y1 + eps
    fm = fam.shifted(om)
    ladder = [eps * c for c in (6, 4, 2.5, 1.6, 1.0, 0.7, 0.5)]
    taus = []
    for y in ladder:
        N = int(min(256, max(48, 1.8 / max(y, 3e-3))))
        tau, resid, cond, _ = solve_tau(fm, 1j * y, N=N)
        taus.append(tau)
    u = [cmath.sqrt(1 + 1j * yy / eps) for yy in ladder]  # singularity at -eps
    tb_t = neville_at(u, taus, 1.0)
    W = [ui * (-1.0 / t) for ui, t in zip(u, taus)]
    tb_s = -1.0 / neville_at(u, W, 1.0)
    def stats(t):
        if t.imag <= 0:
            return float("nan"), float("nan")
        return abs(t) ** 2 / t.imag, math.atan2(t.imag, t.real)
    ht, at = stats(tb_t)
    hs, as_ = stats(tb_s)
    ra = float(fm.deriv(brentq(lambda t: g(t) - om, -0.2, 0.1613)))
    rr = float(fm.deriv(brentq(lambda t: g(t) - om, 0.1613, x2)))
    ImS = math.pi / abs(math.log(ra)) + math.pi / abs(math.log(rr))
    ang_pred = math.atan2(ImS, math.pi / math.sqrt(a_fold * eps))
    print(f"eps={eps:<7} tau-side h={ht:.6f} ang={at:.4f} | sig-side h={hs:.6f} ang={as_:.4f} | pred h~{1/ImS:.5f} ang~{ang_pred:.4f}")

print("\nsame idea at the arnold real edge:")
b = 1.0 / (4 * math.pi)
arn = CircleMap(0.0, (), (b,))
for eps in (1e-3, 1e-4):
    om = b - eps
    fm = arn.shifted(om)
    gg = lambda t: om + b * math.sin(TWO_PI * t)
    xa, xr = brentq(gg, 0.5, 0.75), brentq(gg, 0.75, 1.0)
    ra, rr = float(fm.deriv(xa)), float(fm.deriv(xr))
    R = 1.0 / (TWO_PI * (1 / abs(math.log(ra)) + 1 / abs(math.log(rr))))
    ladder = [eps * c for c in (6, 4, 2.5, 1.6, 1.0, 0.7, 0.5)]
    taus = []
    for y in ladder:
        N = int(min(256, max(48, 1.8 / max(y, 3e-3))))
        tau, resid, cond, _ = solve_tau(fm, 1j * y, N=N)
        taus.append(tau)
    u = [cmath.sqrt(1 - 1j * yy / eps) for yy in ladder]
    tb_t = neville_at(u, taus, 1.0)
    W = [ui * (-1.0 / t) for ui, t in zip(u, taus)]
    tb_s = -1.0 / neville_at(u, W, 1.0)
    print(f"eps={eps:<7} 2R={2*R:.6f} tau-side h={abs(tb_t)**2/tb_t.imag:.6f} "
          f"sig-side h={abs(tb_s)**2/tb_s.imag:.6f}  tau={tb_s:.8f}")
