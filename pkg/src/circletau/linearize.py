"""Linearizing charts at hyperbolic periodic points and the sigma sum.

Working with the q-th iterate H = F^q - p (a lift fixing each periodic
point), the chart inverse at a fixed point alpha with multiplier rho is

    phi^{-1}(x) = lim_n (H^n(x) - alpha) / rho^n        (attracting)
    phi^{-1}(x) = lim_n rho^n (H^{-n}(x) - alpha)       (repelling)

computed in ratio form together with its derivative.  Charts are
orientation preserving (phi'(0) = 1), so phi^{-1} is positive right of
alpha and negative left of it; with markers x_j in (alpha_j, alpha_{j+1})
the chart coordinates

    r_j = log phi_j^{-1}(x_j) / log rho_j
    s_j = log |phi_j^{-1}(x_{j-1})| / log rho_j + i pi / |log rho_j|

are branch-unambiguous, and sigma = sum_j (s_j - r_j) is the modulus of
the translation-glued comparison torus whose negative reciprocal is
quasiconformally close to the complex rotation number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .dynamics import Cycle, find_cycles
from .errors import (
    ConfigError,
    NonCoprimeHomology,
    NotConverged,
    NotHyperbolic,
    NotInUpperHalfPlane,
    OutsideBasin,
    ParabolicPresent,
)
from .maps import total_distortion
from .uniformize import UpperHalfPoint, hyperbolic_distance_mod1, wrap_half

_CHART_TOL = 1e-12
_CHART_CAP = 100_000


class IterationChart:
    """Schroeder chart inverse at a hyperbolic fixed point of H = F^q - p."""

    def __init__(self, map, p: int, q: int, alpha: float, rho: float):
        if abs(rho - 1.0) <= 1e-12:
            raise NotHyperbolic(f"multiplier {rho} is parabolic at {alpha}")
        self.map = map
        self.p = p
        self.q = q
        self.alpha = float(alpha)
        self.rho = float(rho)

    @property
    def kind(self) -> str:
        return "attracting" if self.rho < 1.0 else "repelling"

    @property
    def log_rho(self) -> float:
        return math.log(self.rho)

    @property
    def modulus(self) -> float:
        return math.pi / abs(self.log_rho)

    def _h(self, x: float) -> float:
        y = x
        for _ in range(self.q):
            y = float(self.map.lift(y))
        return y - self.p

    def _h_prime(self, x: float) -> float:
        d = 1.0
        y = x
        for _ in range(self.q):
            d *= float(self.map.deriv(y))
            y = float(self.map.lift(y))
        return d

    def _h_inverse(self, target: float, seed: float) -> float:
        z = seed
        for _ in range(80):
            step = (self._h(z) - target) / self._h_prime(z)
            z -= step
            if abs(step) < 1e-15 * max(1.0, abs(z)):
                return z
        raise NotConverged(f"Newton inversion of F^{self.q} stalled near {seed}")

    def inverse_with_deriv(self, x: float, tol: float = _CHART_TOL,
                           cap: int = _CHART_CAP):
        """(phi^{-1}(x), (phi^{-1})'(x)) for x in the lift chart adjacent to alpha.

        Iterates the ratio form of the Schroeder limit and, once the gap
        to alpha is ~1e-6 (still far above the rounding floor, where the
        per-step factors would pick up 1e-16/gap relative noise), sums
        the remaining geometric tail from the measured contraction.
        """
        a, rho = self.alpha, self.rho
        d0 = x - a
        if d0 == 0.0:
            return 0.0, 1.0
        if abs(d0) >= 0.75:
            raise OutsideBasin(f"{x} is not adjacent to the periodic point {a}")
        u = d0
        du = 1.0
        y = x
        attracting = rho < 1.0
        prev_gap = abs(d0)
        tail_gap = 1e-6 * max(1.0, abs(d0))
        for _ in range(cap):
            if attracting:
                ynext = self._h(y)
                ratio = (ynext - a) / ((y - a) * rho)
                w = self._h_prime(y) / rho
            else:
                ynext = self._h_inverse(y, a + (y - a) / rho)
                ratio = (ynext - a) * rho / (y - a)
                w = rho / self._h_prime(ynext)
            gap = abs(ynext - a)
            if gap >= prev_gap and gap > 1e-14:
                raise OutsideBasin(
                    f"orbit of {x} moves away from {a}: outside the basin"
                )
            u *= ratio
            du *= w
            log_r = math.log(abs(ratio))
            if abs(log_r) <= max(1e-15, 0.01 * tol):
                return u, du
            if gap < tail_gap:
                kappa = gap / prev_gap
                if kappa < 0.9 or gap < 1e-12:
                    tail = kappa / (1.0 - kappa)
                    return (
                        u * math.exp(log_r * tail),
                        du * math.exp(math.log(abs(w)) * tail),
                    )
            y = ynext
            prev_gap = gap
        raise NotConverged(
            f"chart iteration at alpha = {a} did not stabilize within {cap} steps"
        )

    def inverse(self, x: float, tol: float = _CHART_TOL, cap: int = _CHART_CAP) -> float:
        return self.inverse_with_deriv(x, tol, cap)[0]


def linearizing_inverse(map, cycle: Cycle, base_point: float) -> float:
    """phi^{-1}(base_point) in the chart at the cycle point nearest base_point.

    Negative left of the periodic point, positive right of it.
    """
    if cycle.kind == "parabolic":
        raise NotHyperbolic("linearizing charts need a hyperbolic cycle")
    x = float(base_point)
    best = min(cycle.points, key=lambda a: abs(wrap_half(x - a)))
    alpha = best + round(x - best)  # representative of the point next to x
    chart = IterationChart(map, cycle.winding, cycle.period, alpha, cycle.multiplier)
    return chart.inverse(x)


@dataclass(frozen=True)
class SigmaData:
    """Chart coordinates of the markers and their sigma sum."""

    r_tilde: tuple
    s_tilde: tuple
    sigma: complex
    moduli: tuple  # pi / |log rho_j|
    marker_points: tuple
    alphas: tuple
    multipliers: tuple

    def to_json_dict(self) -> dict:
        return {
            "sigma_re": self.sigma.real,
            "sigma_im": self.sigma.imag,
            "r_tilde": [[z.real, z.imag] for z in self.r_tilde],
            "s_tilde": [[z.real, z.imag] for z in self.s_tilde],
            "moduli": list(self.moduli),
            "markers": list(self.marker_points),
            "alphas": list(self.alphas),
            "multipliers": list(self.multipliers),
        }


def ordered_charts(map, p: int, q: int, cycles: Sequence[Cycle] | None = None):
    """Charts at all periodic points, cyclically ordered, attracting first.

    The 2mq fixed points of F^q - p are lifted to an increasing sequence
    alpha_0 < ... < alpha_{2mq-1} < alpha_0 + 1 with alpha_0 attracting
    and kinds alternating.
    """
    if cycles is None:
        cycles = find_cycles(map, p, q)
    if any(not c.is_hyperbolic for c in cycles):
        raise NotHyperbolic("a parabolic cycle is present")
    pts = []
    for c in cycles:
        for t in c.points:
            pts.append((t, c.multiplier))
    pts.sort()
    kinds = [rho < 1.0 for _, rho in pts]
    if len(pts) % 2 != 0 or any(a == b for a, b in zip(kinds, kinds[1:] + kinds[:1])):
        raise NotHyperbolic("attracting and repelling points do not alternate")
    start = kinds.index(True)
    ordered = pts[start:] + [(t + 1.0, rho) for t, rho in pts[:start]]
    return [IterationChart(map, p, q, t, rho) for t, rho in ordered]


def _check_marker(chart: IterationChart, x: float, lo: float, hi: float) -> float:
    """Enforce the ordering condition, pushing once by H if needed."""
    hx = chart._h(x)
    if chart.kind == "attracting":
        ok = lo < hx < x
    else:
        ok = x < hx < hi
    if ok:
        return x
    x2 = hx
    hx2 = chart._h(x2)
    ok2 = (lo < hx2 < x2) if chart.kind == "attracting" else (x2 < hx2 < hi)
    if not ok2:
        raise ConfigError(f"marker {x} cannot satisfy the ordering condition")
    return x2


def sigma_from_charts(charts, markers) -> SigmaData:
    """sigma = sum_j (s_j - r_j) from chart objects and markers.

    charts[j] needs .alpha, .rho, .log_rho, .modulus and .inverse(x);
    markers[j] must lie in (alpha_j, alpha_{j+1}).  This seam lets tests
    substitute exactly-linear charts.
    """
    n = len(charts)
    r_t, s_t = [], []
    for j in range(n):
        cj = charts[j]
        u = cj.inverse(markers[j])
        if u <= 0.0:
            raise ConfigError(
                f"marker {markers[j]} is not right of alpha_{j} = {cj.alpha}"
            )
        r_t.append(complex(math.log(u) / cj.log_rho, 0.0))
        prev = markers[j - 1] - (1.0 if j == 0 else 0.0)
        v = cj.inverse(prev)
        if v >= 0.0:
            raise ConfigError(
                f"marker {prev} is not left of alpha_{j} = {cj.alpha}"
            )
        s_t.append(complex(math.log(-v) / cj.log_rho, math.pi / abs(cj.log_rho)))
    sigma = sum(s - r for s, r in zip(s_t, r_t))
    return SigmaData(
        r_tilde=tuple(r_t),
        s_tilde=tuple(s_t),
        sigma=complex(sigma),
        moduli=tuple(c.modulus for c in charts),
        marker_points=tuple(markers),
        alphas=tuple(c.alpha for c in charts),
        multipliers=tuple(c.rho for c in charts),
    )


def sigma(map, p: int, q: int, markers: Sequence[float] | None = None) -> SigmaData:
    """Full sigma computation for a hyperbolic map with rot = p/q."""
    charts = ordered_charts(map, p, q)
    n = len(charts)
    alphas = [c.alpha for c in charts]
    alphas_ext = alphas + [alphas[0] + 1.0]
    if markers is None:
        markers = [0.5 * (alphas_ext[j] + alphas_ext[j + 1]) for j in range(n)]
    else:
        markers = [float(x) for x in markers]
        for j, x in enumerate(markers):
            if not (alphas_ext[j] < x < alphas_ext[j + 1]):
                raise ConfigError(
                    f"marker {x} is outside (alpha_{j}, alpha_{j+1})"
                )
    markers = [
        _check_marker(charts[j], markers[j], alphas_ext[j], alphas_ext[j + 1])
        for j in range(n)
    ]
    return sigma_from_charts(charts, markers)


# -- disk radius and inequality checks ----------------------------------------


@dataclass(frozen=True)
class DiskRadius:
    """R_omega and, when a distortion constant is supplied, D_f/(4 pi q^2)."""

    value: float
    coarse_bound: float | None


def bubble_disk_radius(cycles: Sequence[Cycle], q: int,
                       distortion: float | None = None) -> DiskRadius:
    """R = 1 / (2 pi q sum over periodic points of 1/|log rho|).

    Each orbit contributes q equal terms to the sum.
    """
    if not cycles:
        raise ConfigError("need at least one cycle")
    if any(not c.is_hyperbolic for c in cycles):
        raise ParabolicPresent("disk radius is undefined with a parabolic cycle")
    total = sum(q / abs(math.log(c.multiplier)) for c in cycles)
    R = 1.0 / (2.0 * math.pi * q * total)
    coarse = None if distortion is None else distortion / (4.0 * math.pi * q * q)
    return DiskRadius(R, coarse)


@dataclass(frozen=True)
class AnnuliCheck:
    passed: bool
    slack: float
    lhs: float  # Im tau / |a + b tau|^2 at the minimizing representative
    rhs: float  # sum of moduli


def annuli_inequality_check(tau, moduli: Sequence[float], homology) -> AnnuliCheck:
    """Length-area bound Im tau / |a + b tau|^2 >= sum mod A_j."""
    a, b = int(homology[0]), int(homology[1])
    if math.gcd(abs(a), abs(b)) != 1:
        raise NonCoprimeHomology(f"gcd({a}, {b}) != 1")
    z = tau.as_complex if isinstance(tau, UpperHalfPoint) else complex(tau)
    if z.imag <= 0.0:
        raise NotInUpperHalfPlane(f"tau must have Im > 0, got {z}")
    if b == 0:
        denom = abs(a) ** 2
    else:
        n0 = round(-(a / b + z.real))
        denom = min(abs(a + b * (z + n)) ** 2 for n in (n0 - 1, n0, n0 + 1))
    lhs = z.imag / denom
    rhs = float(sum(moduli))
    return AnnuliCheck(lhs >= rhs, lhs - rhs, lhs, rhs)


@dataclass(frozen=True)
class QcTwistCheck:
    """Hyperbolic distance between q tau_bar and -1/sigma, with both bounds."""

    distance: float
    bound_base: float  # 5 D_f(f)
    bound_iterated: float  # 5 D_f(F^q), the safe variant
    sigma_data: SigmaData
    minus_inv_sigma: complex

    @property
    def within_base(self) -> bool:
        return self.distance <= self.bound_base

    @property
    def within_iterated(self) -> bool:
        return self.distance <= self.bound_iterated


def qc_estimate_check(map, p: int, q: int, tau_bar) -> QcTwistCheck:
    """d_H(q tau_bar, -1/sigma), compared against 5 D_f and 5 D_{F^q}."""
    sd = sigma(map, p, q)
    target = -1.0 / sd.sigma
    z = tau_bar.as_complex if isinstance(tau_bar, UpperHalfPoint) else complex(tau_bar)
    if z.imag <= 0.0:
        raise NotInUpperHalfPlane("tau_bar must be interior (hyperbolic case)")
    dist = hyperbolic_distance_mod1(q * z, target)
    d_base = total_distortion(map).value
    d_iter = d_base if q == 1 else total_distortion(map.iterate(q)).value
    return QcTwistCheck(dist, 5.0 * d_base, 5.0 * d_iter, sd, target)


def xi_distortion(map, p: int, q: int, j: int, grid: int = 65) -> float:
    """Distortion of the gluing xi_j = chart_{j+1}^{-1} o chart_j over one period.

    Parametrized by x in the fundamental interval between x_j and H(x_j):
    xi_j'(t) = s'(x) / t'(x) with t = log phi_j^{-1} / log rho_j and
    s = log |phi_{j+1}^{-1}| / log rho_{j+1}.
    """
    charts = ordered_charts(map, p, q)
    n = len(charts)
    j = j % n
    cj = charts[j]
    cnext = charts[(j + 1) % n]
    shift = 1.0 if j == n - 1 else 0.0  # alpha_{j+1} wraps past alpha_0
    alpha_next = cnext.alpha + shift
    x0 = 0.5 * (cj.alpha + alpha_next)
    x1 = cj._h(x0)
    lo, hi = (x1, x0) if x1 < x0 else (x0, x1)
    logs = []
    for i in range(grid):
        x = lo + (hi - lo) * i / (grid - 1)
        u, du = cj.inverse_with_deriv(x)
        v, dv = cnext.inverse_with_deriv(x - shift)
        tp = du / (u * cj.log_rho)
        sp = dv / (v * cnext.log_rho)
        xi_p = sp / tp
        if xi_p <= 0.0:
            raise NotConverged(f"xi'({x}) = {xi_p} is not positive")
        logs.append(math.log(xi_p))
    return max(logs) - min(logs)
