"""Complex-endpoint behavior of the two-humped family d = -(0.05 sin2 + 0.03 sin4)."""
import math
import cmath
import numpy as np
from scipy.optimize import brentq, minimize_scalar
from circletau.maps import CircleMap
from scratch_uniformizer import solve_tau

TWO_PI = 2 * math.pi
fam = CircleMap(0.0, (), (-0.05, -0.03))  # d(x) = -(0.05 sin 2pix + 0.03 sin 4pix)

# g(x) = x - f(x) = -d(x); critical points / local maxima
g = lambda x: -float(fam.displacement(x))
gp = lambda x: -(float(fam.deriv(x)) - 1.0)

xs = np.linspace(0, 1, 4097)
gv = -np.asarray(fam.displacement(xs))
# local maxima on grid
loc = [i for i in range(1, 4096) if gv[i] >= gv[i - 1] and gv[i] >= gv[i + 1]]
print("grid local maxima near:", [(xs[i], gv[i]) for i in loc])
maxima = []
for i in loc:
    r = minimize_scalar(lambda t: -g(t), bracket=(xs[i - 1], xs[i], xs[i + 1]), method="brent")
    maxima.append((r.x, -r.fun))
print("refined maxima:", maxima)
(y1x, y1), (y2x, y2) = sorted(maxima, key=lambda t: t[1])
print(f"y1={y1:.8f} at x={y1x:.6f}   y2={y2:.8f} at x={y2x:.6f}")


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


def tau_bar_fold(fmap, s):
    taus = []
    for y in ladder:
        tau, resid, cond, _ = solve_tau(fmap, 1j * y, N=n_of_y(y))
        taus.append(tau)
    u_nodes = [cmath.sqrt(1 - 1j * y / s) for y in ladder]
    return neville_at(u_nodes, taus, 1.0)


print("\napproach to the complex left endpoint y1:")
for eps in (3e-3, 1e-3, 3e-4, 1e-4):
    om = y1 + eps
    fm = fam.shifted(om)
    tb = tau_bar_fold(fm, -eps)  # singularity below at distance eps
    h = abs(tb) ** 2 / tb.imag
    ang = math.atan2(tb.imag, tb.real)
    # surviving multipliers for reference
    ra = float(fm.deriv(brentq(lambda t: g(t) - om, -0.2, y2x)))
    rr = float(fm.deriv(brentq(lambda t: g(t) - om, y2x, 0.55)))
    ImS = math.pi / abs(math.log(ra)) + math.pi / abs(math.log(rr))
    print(f"eps={eps:<7} tau={tb:.7f}  h={h:.6f}  angle={ang:.5f}  1/ImSigma={1/ImS:.6f} rho=({ra:.4f},{rr:.4f})")

print("\napproach to the real right endpoint y2:")
for eps in (3e-3, 1e-3, 3e-4):
    om = y2 - eps
    fm = fam.shifted(om)
    tb = tau_bar_fold(fm, eps)
    h = abs(tb) ** 2 / tb.imag
    ang = math.atan2(tb.imag, tb.real)
    print(f"eps={eps:<7} tau={tb:.7f}  h={h:.6f}  angle={ang:.5f}")
