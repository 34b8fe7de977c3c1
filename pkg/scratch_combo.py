"""Combined standard+edge ladder with residual-driven N escalation."""
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


def solve_adaptive(fm, y, n0, resid_target=1e-8, n_cap=384):
    N = n0
    while True:
        tau, resid, cond, _ = solve_tau(fm, 1j * y, N=N)
        if resid <= resid_target or N >= n_cap:
            return tau, resid, cond, N
        N = min(n_cap, int(N * 1.6))


def ladder_for(s):
    """Standard rungs plus edge rungs scaled to |s|."""
    rungs = [0.25 / 2**l for l in range(7)]  # 0.25 .. 0.0039
    a = abs(s)
    if a < 0.02:
        extra = [a * c for c in (2.0, 1.2, 0.7)]
        rungs += [y for y in extra if y < rungs[-1] and y >= 2e-5]
    return rungs


def tau_bar(fm, s, resid_target=1e-8, verbose=False):
    rungs = ladder_for(s)
    taus = []
    worst = 0.0
    for y in rungs:
        n0 = int(min(256, max(32, 1.8 / max(y, 7e-3))))
        tau, resid, cond, N = solve_adaptive(fm, y, n0, resid_target)
        worst = max(worst, resid)
        taus.append(tau)
        if verbose:
            print(f"      y={y:.2e} N={N} resid={resid:.1e} cond={cond:.1e}")
    u = [cmath.sqrt(1 - 1j * y / s) for y in rungs]
    tb = neville_at(u, taus, 1.0)
    return tb, worst


b = 1.0 / (4 * math.pi)
arn = CircleMap(0.0, (), (b,))
print("ARNOLD real edge:")
for eps in (1e-3, 3e-4, 1e-4):
    om = b - eps
    fm = arn.shifted(om)
    gg = lambda t: om + b * math.sin(TWO_PI * t)
    xa, xr = brentq(gg, 0.5, 0.75), brentq(gg, 0.75, 1.0)
    ra, rr = float(fm.deriv(xa)), float(fm.deriv(xr))
    R = 1.0 / (TWO_PI * (1 / abs(math.log(ra)) + 1 / abs(math.log(rr))))
    tb, worst = tau_bar(fm, eps)
    print(f"  eps={eps:<7} 2R={2*R:.6f} h={abs(tb)**2/tb.imag:.6f} tau={tb:.8f} worst_resid={worst:.1e}")

fam = CircleMap(0.0, (), (-0.05, -0.03))
g = lambda x: -float(fam.displacement(x))
r = minimize_scalar(lambda t: -g(t), bracket=(0.5, 0.55, 0.6), method="brent")
y1, x2 = -r.fun, r.x
a_fold = abs(float(fam.deriv(x2, 2))) / 2
print("TWO-HUMPED complex endpoint:")
for eps in (2e-3, 1e-3, 6.5e-4, 5e-4, 3e-4):
    om = y1 + eps
    fm = fam.shifted(om)
    tb, worst = tau_bar(fm, -eps)
    h = abs(tb) ** 2 / tb.imag if tb.imag > 0 else float("nan")
    ang = math.atan2(tb.imag, tb.real)
    ra = float(fm.deriv(brentq(lambda t: g(t) - om, -0.2, 0.1613)))
    rr = float(fm.deriv(brentq(lambda t: g(t) - om, 0.1613, x2)))
    ImS = math.pi / abs(math.log(ra)) + math.pi / abs(math.log(rr))
    ang_pred = math.atan2(ImS, math.pi / math.sqrt(a_fold * eps))
    print(f"  eps={eps:<7} h={h:.6f} ang={ang:.4f} | pred h~{1/ImS:.5f} ang~{ang_pred:.4f} worst_resid={worst:.1e}")
