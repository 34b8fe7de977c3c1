"""Criterion 6 at softer-multiplier omega, fold extrapolation with true edge distances."""
import math
import cmath
import numpy as np
from scipy.optimize import brentq
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


def g2_range(fm):
    x = np.linspace(0, 1, 8192, endpoint=False)
    y = fm.lift(fm.lift(x))
    G2 = y - x - 1.0
    return float(G2.min()), float(G2.max())


base = CircleMap(0.0, (), (0.0, 0.05))
print("omega scan: multipliers of the attracting period-2 orbit")
for om in (0.5, 0.53, 0.55, 0.57):
    fm = base.shifted(om)
    x = np.linspace(0, 1, 1 << 14, endpoint=False)
    G2 = fm.lift(fm.lift(x)) - x - 1.0
    roots = []
    for i in range(len(x) - 1):
        if G2[i] == 0 or G2[i] * G2[i + 1] < 0:
            r = brentq(lambda t: float(fm.lift(fm.lift(t))) - t - 1.0, x[i], x[i + 1], xtol=1e-14)
            roots.append(r)
    rhos = [float(fm.deriv(r) * fm.deriv(float(fm.lift(r)))) for r in roots]
    mn, mx = g2_range(fm)
    print(f"  om={om}: roots={[f'{r:.4f}' for r in roots]} rhos={[f'{p:.4f}' for p in rhos]} G2 range=({mn:.4f},{mx:.4f})")

omega_star = 0.55
fm = base.shifted(omega_star)
h2 = fm.iterate(2)
mn, mx = g2_range(fm)
# f-side: 1/2-plateau of x+om+0.05sin4pix: edges at om where max/min G2 hits 0:
# when shifting f by zeta, G2 shifts by 2*zeta approx? No: compute directly:
# edge distances: right edge where min G2 = 0 -> need zeta with min G2(fm+zeta) = 0.
# Do it numerically by bisection on zeta.
def min_g2(zeta):
    fz = base.shifted(omega_star + zeta)
    x = np.linspace(0, 1, 4096, endpoint=False)
    return float((fz.lift(fz.lift(x)) - x - 1.0).min())
def max_g2(zeta):
    fz = base.shifted(omega_star + zeta)
    x = np.linspace(0, 1, 4096, endpoint=False)
    return float((fz.lift(fz.lift(x)) - x - 1.0).max())
zr = brentq(min_g2, 0.0, 0.2, xtol=1e-12)   # right edge distance
zl = brentq(max_g2, -0.2, 0.0, xtol=1e-12)  # left edge (negative)
print(f"f-side plateau edge distances: left {zl:.6f}, right {zr:.6f}")
s_f = zr if zr < -zl else zl
# f2-side: family h2 + zeta: fixed pts where G2 + zeta = 0: edges at zeta = -mx (left), -mn (right)
s_h_right = -mn  # distance to right edge
s_h_left = -mx   # negative
s_h = s_h_right if s_h_right < -s_h_left else s_h_left
print(f"f2-side edge distances: left {s_h_left:.6f}, right {s_h_right:.6f}")

ladder = [0.25 / 2**l for l in range(7)]


def tau_bar_fold(fmap, s, cap=512, label=""):
    taus = []
    nodes = []
    for y in ladder:
        N = int(min(cap, max(32, 1.8 / max(y, 7e-3))))
        while True:
            tau, resid, cond, _ = solve_tau(fmap, 1j * y, N=N)
            if resid <= 1e-9 or N >= cap:
                break
            N = min(cap, int(N * 1.6))
        print(f"   {label} y={y:.5f} N={N} resid={resid:.1e}")
        taus.append(tau)
        nodes.append(cmath.sqrt(1 - 1j * y / s))
    return neville_at(nodes, taus, 1.0)


tb_f = tau_bar_fold(fm, s_f, label="f ")
tb_h = tau_bar_fold(h2, s_h, label="f2")
two = 2 * tb_f
gap_im = abs(tb_h.imag - two.imag)
gap_re = abs((tb_h.real - two.real + 0.5) % 1.0 - 0.5)
print(f"tau(f)  = {tb_f:.10f}")
print(f"tau(f2) = {tb_h:.10f}")
print(f"2tau(f) = {two:.10f}")
print(f"gaps: re {gap_re:.2e} im {gap_im:.2e}")
