"""Prototype: linearizing charts, sigma, xi distortion, near-edge bubble."""
import math
import numpy as np
from circletau.maps import CircleMap
from scratch_uniformizer import solve_tau

TWO_PI = 2 * math.pi
b = 1.0 / (4 * math.pi)
arnold = CircleMap(0.0, (), (b,))


def chart_inverse(H, Hp, alpha, rho, x, tol=1e-13, cap=100000):
    """phi^{-1}(x) and (phi^{-1})'(x) for fixed point alpha of lift H with H(alpha)=alpha.

    Attracting rho<1: limit of (H^n(x)-alpha)/rho^n; repelling: Newton-invert H.
    Returns (value, derivative)."""
    attracting = rho < 1.0
    val = x
    dval = 1.0
    prev = None
    scale = 1.0
    for n in range(1, cap):
        if attracting:
            dval *= Hp(val)
            val = H(val)
            scale *= rho
        else:
            # invert: solve H(z) = val
            z = alpha + (val - alpha) / rho
            for _ in range(60):
                step = (H(z) - val) / Hp(z)
                z -= step
                if abs(step) < 1e-15:
                    break
            dval /= Hp(z)
            val = z
            scale *= 1.0 / rho  # we will divide by rho^{-n}
        u = (val - alpha) / scale if attracting else (val - alpha) * (rho ** n)
        du = dval / scale if attracting else dval * (rho ** n)
        if prev is not None and abs(u - prev) <= tol * max(1.0, abs(u)):
            return u, du
        prev = u
    raise RuntimeError("no convergence")


# Arnold at omega=0: alpha0=0.5 attracting rho=0.5 ; alpha1=1.0 repelling rho=1.5
H = lambda t: float(arnold.lift(t))
Hp = lambda t: float(arnold.deriv(t))

# markers: x0 in (0.5, 1) -> 0.75 ; x1 in (1, 1.5) -> 1.25
alpha = [0.5, 1.0]
rho = [0.5, 1.5]
x_marks = [0.75, 1.25]

# r_j = log phi_j^{-1}(x_j)/log rho_j
u00, _ = chart_inverse(H, Hp, alpha[0], rho[0], x_marks[0])
u11, _ = chart_inverse(H, Hp, alpha[1], rho[1], x_marks[1])
# s_j needs phi_j^{-1}(x_{j-1}): chart 0 at x_{-1} = x_1 - 1 = 0.25 ; chart 1 at x_0 = 0.75
u01, _ = chart_inverse(H, Hp, alpha[0], rho[0], 0.25)
u10, _ = chart_inverse(H, Hp, alpha[1], rho[1], 0.75)
print("phi0^-1(0.75) =", u00, " phi0^-1(0.25) =", u01)
print("phi1^-1(1.25) =", u11, " phi1^-1(0.75) =", u10)
# Schroeder check
fu, _ = chart_inverse(H, Hp, alpha[0], rho[0], H(0.75))
print("schroeder rel err:", abs(fu - rho[0] * u00) / abs(u00))

lr = [math.log(r) for r in rho]
r0 = math.log(u00) / lr[0]
r1 = math.log(u11) / lr[1]
s0 = math.log(abs(u01)) / lr[0] + 1j * math.pi / abs(lr[0])
s1 = math.log(abs(u10)) / lr[1] + 1j * math.pi / abs(lr[1])
sigma = (s0 - r0) + (s1 - r1)
print("sigma =", sigma)
print("Im sigma expect:", math.pi / abs(lr[0]) + math.pi / abs(lr[1]))
minus_inv = -1.0 / sigma
print("-1/sigma =", minus_inv)

tau_bar = 0.0814433989j  # from scratch_uniformizer run


def dh(z, w):
    z, w = complex(z), complex(w)
    return math.acosh(1 + abs(z - w) ** 2 / (2 * z.imag * w.imag))


print("d_H(tau_bar, -1/sigma) =", dh(tau_bar, minus_inv), " 5 D_f =", 10 * math.log(3))

# xi distortion: xi_j : t -> log|phi_{j+1}^{-1}(phi_j(e^{t log rho_j}))| / log rho_{j+1}
# parametrize by x in [x0, H(x0)): t(x) = log phi_0^{-1}(x)/log rho_0, s(x) = log|phi_1^{-1}(x)|/log rho_1
xs_lo, xs_hi = 0.75, H(0.75)
xs = np.linspace(min(xs_lo, xs_hi), max(xs_lo, xs_hi), 65)
tvals, svals, tps, sps = [], [], [], []
for xx in xs:
    u, du = chart_inverse(H, Hp, alpha[0], rho[0], xx)
    v, dv = chart_inverse(H, Hp, alpha[1], rho[1], xx)
    tvals.append(math.log(u) / lr[0])
    svals.append(math.log(abs(v)) / lr[1])
    tps.append(du / u / lr[0])
    sps.append(dv / v / lr[1])
xi_p = np.array(sps) / np.array(tps)
dist = float(np.max(np.log(xi_p)) - np.min(np.log(xi_p)))
print("xi_0 distortion =", dist, " bound 4 D_f =", 8 * math.log(3))
print("xi' range:", xi_p.min(), xi_p.max())

# Near-edge feasibility: omega close to right edge b of the 0/1 plateau
for eps in (1e-3, 1e-4):
    om = b - eps
    # fixed points: sin(2pi x) = -om/b ; near x=3/4
    # solve via newton on g(x) = om + b sin(2pi x)
    from scipy.optimize import brentq
    g = lambda t: om + b * math.sin(TWO_PI * t)
    xa = brentq(g, 0.5, 0.75)
    xr = brentq(g, 0.75, 1.0)
    fa = CircleMap(om, (), (b,))
    ra, rr = float(fa.deriv(xa)), float(fa.deriv(xr))
    R = 1.0 / (TWO_PI * (1 / abs(math.log(ra)) + 1 / abs(math.log(rr))))
    print(f"eps={eps}: multipliers {ra:.6f},{rr:.6f}  R={R:.6f} 2R={2*R:.6f}")
    taus = []
    ladder = [0.2 / 2**l for l in range(6)]
    for y in ladder:
        N = int(min(240, max(24, 2.0 / y)))
        tau, resid, cond, _ = solve_tau(fa, 1j * y, N=N)
        taus.append(tau)
    ys = np.array(ladder)
    vals = np.array(taus)
    T = [vals.copy()]
    for m in range(1, 4):
        prev = T[-1]
        cur = np.empty(len(vals) - m, dtype=complex)
        for l in range(len(cur)):
            r = ys[l] / ys[l + m]
            cur[l] = prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0)
        T.append(cur)
    tb = T[3][-1]
    h = abs(tb) ** 2 / tb.imag
    print(f"   tau_bar={tb:.8f} h={h:.6f}  vs 2R={2*R:.6f}  est err={abs(T[3][-1]-T[2][-1]):.2e}")
