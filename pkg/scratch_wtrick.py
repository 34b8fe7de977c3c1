"""Extrapolate W(u) = u * (-1/tau) instead of tau near endpoints; compare."""
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


ladder = [0.25 / 2**l for l in range(7)]


def n_of_y(y, c=1.8, cap=256):
    return int(min(cap, max(32, c / y)))


def tau_rungs(fmap):
    out = []
    for y in ladder:
        tau, resid, cond, _ = solve_tau(fmap, 1j * y, N=n_of_y(y))
        out.append(tau)
    return out


def extrap_tau_fold(taus, s):
    u = [cmath.sqrt(1 - 1j * y / s) for y in ladder]
    return neville_at(u, taus, 1.0)


def extrap_sigma_fold(taus, s):
    u = [cmath.sqrt(1 - 1j * y / s) for y in ladder]
    W = [ui * (-1.0 / t) for ui, t in zip(u, taus)]
    Wstar = neville_at(u, W, 1.0)
    return -1.0 / Wstar


fam = CircleMap(0.0, (), (-0.05, -0.03))
g = lambda x: -float(fam.displacement(x))
r = minimize_scalar(lambda t: -g(t), bracket=(0.5, 0.55, 0.6), method="brent")
y1 = -r.fun
x2 = r.x
r2 = minimize_scalar(lambda t: -g(t), bracket=(0.1, 0.16, 0.2), method="brent")
y2 = -r2.fun
a_fold = abs(-(float(fam.deriv(x2, 2))) ) / 2  # |g''|/2 at ghost
B_guess = None

print("complex left endpoint (want: angle decreasing to 0, h floor ~0.044):")
for eps in (3e-3, 1e-3, 3e-4, 1e-4, 4e-5):
    om = y1 + eps
    fm = fam.shifted(om)
    taus = tau_rungs(fm)
    tb_t = extrap_tau_fold(taus, -eps)
    tb_s = extrap_sigma_fold(taus, -eps)
    def stats(t):
        if t.imag <= 0:
            return float("nan"), float("nan")
        return abs(t) ** 2 / t.imag, math.atan2(t.imag, t.real)
    ht, at = stats(tb_t)
    hs, as_ = stats(tb_s)
    # theory reference
    ra = float(fm.deriv(brentq(lambda t: g(t) - om, -0.2, 0.1613)))
    rr = float(fm.deriv(brentq(lambda t: g(t) - om, 0.1613, x2)))
    ImS = math.pi / abs(math.log(ra)) + math.pi / abs(math.log(rr))
    Re_sigma_pred = -math.pi / math.sqrt(a_fold * eps)
    ang_pred = math.atan2(ImS, -Re_sigma_pred)  # angle of -1/sigma = arg(conj(-sigma)) ~ atan(ImS/|ReS|)
    print(f"eps={eps:<7} tau-side h={ht:.6f} ang={at:.4f} | sigma-side h={hs:.6f} ang={as_:.4f} "
          f"| pred h~{1/ImS:.5f} ang~{ang_pred:.4f}")

print("\nreal right endpoint of two-humped (want h -> 0):")
for eps in (1e-3, 3e-4, 1e-4):
    om = y2 - eps
    fm = fam.shifted(om)
    taus = tau_rungs(fm)
    tb_t = extrap_tau_fold(taus, eps)
    tb_s = extrap_sigma_fold(taus, eps)
    ht = abs(tb_t) ** 2 / tb_t.imag
    hs = abs(tb_s) ** 2 / tb_s.imag
    print(f"eps={eps:<7} tau-side h={ht:.6f} | sigma-side h={hs:.6f}")

print("\narnold right edge reference (2R truth):")
b = 1.0 / (4 * math.pi)
arn = CircleMap(0.0, (), (b,))
for eps in (1e-3, 1e-4):
    om = b - eps
    fm = arn.shifted(om)
    gg = lambda t: om + b * math.sin(TWO_PI * t)
    xa = brentq(gg, 0.5, 0.75)
    xr = brentq(gg, 0.75, 1.0)
    ra, rr = float(fm.deriv(xa)), float(fm.deriv(xr))
    R = 1.0 / (TWO_PI * (1 / abs(math.log(ra)) + 1 / abs(math.log(rr))))
    taus = tau_rungs(fm)
    tb_t = extrap_tau_fold(taus, eps)
    tb_s = extrap_sigma_fold(taus, eps)
    ht = abs(tb_t) ** 2 / tb_t.imag
    hs = abs(tb_s) ** 2 / tb_s.imag
    print(f"eps={eps:<7} 2R={2*R:.6f} tau-side h={ht:.6f} | sigma-side h={hs:.6f}")

print("\narnold center (true Re=0, h=2R0=0.0814300):")
taus = tau_rungs(arn)
for s in (b, -b):
    tb_t = extrap_tau_fold(taus, s)
    tb_s = extrap_sigma_fold(taus, s)
    print(f"  s={s:+.4f}: tau-side {tb_t:.9f} | sigma-side {tb_s:.9f}")
