"""Complex rotation numbers via spectral solution of the gluing equation.

For Im(omega) > 0 the annulus between R/Z and R/Z + omega glued by
f + omega is a torus C/(Z + tau Z); the uniformizing map is sought as

    Phi(z) = z + sum_{k=1..N} a_k e^{2 pi i k z}
               + sum_{k=1..N} b_k e^{-2 pi i k (z - omega)}

so that every basis element has sup-modulus 1 on the closed annulus, and
(a, b, tau) solve the collocation equations
Phi(f(x_j) + omega) = Phi(x_j) + tau in least squares.

Boundary values tau_bar(omega) for real omega are obtained by
extrapolating a ladder of solves tau(omega + i y_l) to y = 0: plain
polynomial Richardson away from the bifurcation locus, and polynomial
interpolation in the fold variable u = sqrt(1 - i y / s) when the signed
distance s to the nearest non-hyperbolic parameter is known (the
extension of tau across a plateau has a square-root branch point there,
so the ladder must be interpolated through that structure to converge).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ConfigError,
    ExtrapolationDiverged,
    IllConditioned,
    NotInUpperHalfPlane,
)

TWO_PI = 2.0 * math.pi
COND_LIMIT = 1e12
HARD_Y_FLOOR = 2e-5  # absolute floor for edge-adapted rungs


def wrap_half(x: float) -> float:
    """Reduce to (-1/2, 1/2]."""
    y = x - math.floor(x)
    return y - 1.0 if y > 0.5 else y


@dataclass(frozen=True)
class UpperHalfPoint:
    """Point of H/Z (im > 0) or its boundary R/Z (im = 0), re in [0, 1)."""

    re: float
    im: float

    def __post_init__(self):
        if self.im < 0.0:
            raise ConfigError(f"im must be >= 0, got {self.im}")
        object.__setattr__(self, "re", self.re - math.floor(self.re))

    @property
    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def lift_near(self, x0: float) -> complex:
        """The representative with Re nearest to x0."""
        return complex(x0 + wrap_half(self.re - x0), self.im)

    @staticmethod
    def from_complex(z: complex) -> "UpperHalfPoint":
        return UpperHalfPoint(z.real % 1.0, z.imag)


def hyperbolic_distance(z, w) -> float:
    """Poincare distance in the upper half-plane.

    arccosh(1 + |z-w|^2 / (2 Im z Im w)).
    """
    z = z.as_complex if isinstance(z, UpperHalfPoint) else complex(z)
    w = w.as_complex if isinstance(w, UpperHalfPoint) else complex(w)
    if z.imag <= 0.0 or w.imag <= 0.0:
        raise NotInUpperHalfPlane(f"points must have Im > 0, got {z}, {w}")
    return math.acosh(1.0 + abs(z - w) ** 2 / (2.0 * z.imag * w.imag))


def hyperbolic_distance_mod1(z, w) -> float:
    """d_H between classes in H/Z: lift z to the translate nearest w."""
    z = z.as_complex if isinstance(z, UpperHalfPoint) else complex(z)
    w = w.as_complex if isinstance(w, UpperHalfPoint) else complex(w)
    zl = complex(w.real + wrap_half(z.real - w.real), z.imag)
    best = hyperbolic_distance(zl, w)
    for k in (-1, 1):  # neighbors can win when Im is large
        best = min(best, hyperbolic_distance(zl + k, w))
    return best


def y_min(map) -> float:
    """Smallest annulus height for direct default solves: max(1e-3, delta/50)."""
    return max(1e-3, map.strip_halfwidth / 50.0)


@dataclass(frozen=True)
class ConjugacySolution:
    """One gluing solve: tau plus coefficients and diagnostics."""

    tau: UpperHalfPoint
    tau_raw: complex  # as solved, before mod-1 normalization
    coeff_up: tuple  # a_k, k = 1..N
    coeff_down: tuple  # b_k against the scaled basis e^{-2 pi i k (z - omega)}
    residual: float  # max collocation defect
    min_phi_prime: float  # min |Phi'| over both boundary circles
    cond: float
    omega: complex
    n_modes: int
    m_points: int

    @property
    def non_injective(self) -> bool:
        return self.min_phi_prime <= 1e-12

    def phi(self, z):
        z = np.asarray(z, dtype=complex)
        out = z.astype(complex).copy()
        for k, a in enumerate(self.coeff_up, start=1):
            out += a * np.exp(2j * math.pi * k * z)
        for k, b in enumerate(self.coeff_down, start=1):
            out += b * np.exp(-2j * math.pi * k * (z - self.omega))
        return out if out.shape else out[()]

    def phi_prime(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape, dtype=complex)
        for k, a in enumerate(self.coeff_up, start=1):
            out += 2j * math.pi * k * a * np.exp(2j * math.pi * k * z)
        for k, b in enumerate(self.coeff_down, start=1):
            out -= 2j * math.pi * k * b * np.exp(-2j * math.pi * k * (z - self.omega))
        return out if out.shape else out[()]


def complex_rotation_number(
    map,
    omega: complex,
    n_modes: int = 64,
    m_points: int | None = None,
    y_floor: float | None = None,
) -> ConjugacySolution:
    """Solve Phi(f(x) + omega) = Phi(x) + tau in least squares.

    y_floor guards against annuli thinner than the default basis can
    resolve; pass y_floor=0.0 to disable (the edge-adapted boundary
    ladder does, after checking the condition estimate instead).
    """
    omega = complex(omega)
    if omega.imag <= 0.0:
        raise NotInUpperHalfPlane(f"Im omega must be > 0, got {omega}")
    floor = y_min(map) if y_floor is None else y_floor
    if omega.imag < floor:
        raise IllConditioned(
            f"Im omega = {omega.imag:g} is below the resolution floor "
            f"{floor:g} (annulus thinner than the basis resolves); "
            "boundary values are reached by extrapolation, not direct solves"
        )
    N = int(n_modes)
    if N < 1:
        raise ConfigError(f"n_modes must be >= 1, got {n_modes}")
    M = 4 * N + 8 if m_points is None else int(m_points)
    if M < 4 * N + 4:
        raise ConfigError(f"m_points must be >= 4*n_modes + 4, got {M}")

    x = np.arange(M) / M
    fx = np.asarray(np.real(map.lift(x)), dtype=float) + omega
    k = np.arange(1, N + 1)
    col_up = np.exp(2j * math.pi * np.outer(fx, k)) - np.exp(2j * math.pi * np.outer(x, k))
    col_dn = np.exp(-2j * math.pi * np.outer(fx - omega, k)) - np.exp(
        -2j * math.pi * np.outer(x[:, None] - omega, k[None, :])
    )
    col_tau = -np.ones((M, 1), dtype=complex)
    A = np.hstack([col_up, col_dn, col_tau])
    rhs = -(fx - x)
    sol, _, _, sv = np.linalg.lstsq(A, rhs, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if cond > COND_LIMIT:
        raise IllConditioned(
            f"condition estimate {cond:.3g} exceeds {COND_LIMIT:g}; "
            "reduce n_modes or increase Im omega"
        )
    residual = float(np.max(np.abs(A @ sol - rhs)))
    tau = complex(sol[-1])
    if tau.imag <= 0.0:
        raise IllConditioned(
            f"solved tau = {tau:.6g} left the upper half-plane; "
            "the solve is not trustworthy at these parameters"
        )

    solution = ConjugacySolution(
        tau=UpperHalfPoint.from_complex(tau),
        tau_raw=tau,
        coeff_up=tuple(sol[:N]),
        coeff_down=tuple(sol[N : 2 * N]),
        residual=residual,
        min_phi_prime=0.0,
        cond=cond,
        omega=omega,
        n_modes=N,
        m_points=M,
    )
    xb = np.arange(4 * M) / (4 * M)
    mpp = min(
        float(np.min(np.abs(solution.phi_prime(xb + 0j)))),
        float(np.min(np.abs(solution.phi_prime(xb + omega)))),
    )
    object.__setattr__(solution, "min_phi_prime", mpp)
    return solution


# -- boundary extrapolation ---------------------------------------------------


@dataclass(frozen=True)
class Rung:
    y: float
    tau: complex
    residual: float
    n_modes: int


@dataclass(frozen=True)
class BoundaryValue:
    """Extrapolated tau_bar(omega) with diagnostics."""

    tau: UpperHalfPoint
    tau_raw: complex
    error_estimate: float
    rungs: tuple
    method: str  # "richardson" | "fold"
    omega: float


DEFAULT_LADDER = tuple(0.25 / 2**l for l in range(7))


def _heuristic_modes(y: float) -> int:
    return int(min(256, max(32, math.ceil(1.8 / max(y, 7e-3)))))


def _solve_rung(map, omega, y, resid_target, n_cap, y_floor) -> Rung:
    N = _heuristic_modes(y)
    best = None
    while True:
        sol = complex_rotation_number(map, omega + 1j * y, N, y_floor=y_floor)
        if best is None or sol.residual < best.residual:
            best = Rung(y, sol.tau_raw, sol.residual, N)
        if sol.residual <= resid_target or N >= n_cap:
            return best
        if best.n_modes < N:  # escalation stopped helping
            return best
        N = min(n_cap, int(N * 1.6))


def _neville(nodes, vals, target) -> complex:
    p = [complex(v) for v in vals]
    x = [complex(t) for t in nodes]
    n = len(p)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = ((target - x[i + m]) * p[i] + (x[i] - target) * p[i + 1]) / (
                x[i] - x[i + m]
            )
    return p[0]


def _richardson(ys, vals, order):
    """Neville tableau in y extrapolated to 0; returns (value, estimate, column)."""
    T = [list(map(complex, vals))]
    for m in range(1, order + 1):
        prev = T[-1]
        cur = []
        for l in range(len(vals) - m):
            r = ys[l] / ys[l + m]
            cur.append(prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0))
        T.append(cur)
    top = T[order]
    gaps = [abs(b - a) for a, b in zip(top, top[1:])]
    for g0, g1 in zip(gaps, gaps[1:]):
        if g1 > 10.0 * g0 and g0 > 1e-13:
            raise ExtrapolationDiverged(
                f"Richardson column stopped contracting (gaps {g0:.3e} -> {g1:.3e})"
            )
    est = abs(T[order][-1] - T[order - 1][-1])
    return T[order][-1], est, top


def boundary_tau(
    map,
    omega: float,
    ladder: Sequence[float] | None = None,
    edge_distance: float | None = None,
    order: int = 3,
    resid_target: float = 3e-7,
    n_cap: int = 384,
    y_floor: float | None = None,
) -> BoundaryValue:
    """tau_bar(omega) = lim_{y->0} tau(omega + i y) by ladder extrapolation.

    edge_distance is the signed real offset from omega to the nearest
    non-hyperbolic parameter of the family (positive when the
    singularity lies to the right).  When given, rungs scaled to that
    distance are appended and the extrapolation runs in the fold
    variable u = sqrt(1 - i y / s); otherwise plain polynomial
    Richardson of the given order is used.
    """
    omega = float(omega)
    rungs_y = list(DEFAULT_LADDER if ladder is None else [float(y) for y in ladder])
    if not rungs_y or any(y <= 0 for y in rungs_y) or any(
        later >= earlier for later, earlier in zip(rungs_y[1:], rungs_y[:-1])
    ):
        raise ConfigError("ladder must be a decreasing sequence of positive heights")
    floor = y_min(map) if y_floor is None else y_floor
    if ladder is None:
        rungs_y = [y for y in rungs_y if y >= floor] or [floor]

    method = "richardson"
    if edge_distance is not None and edge_distance != 0.0:
        method = "fold"
        s = float(edge_distance)
        if abs(s) < 0.02:
            extra = [abs(s) * c for c in (2.0, 1.2, 0.7)]
            rungs_y += [
                y for y in extra if y < rungs_y[-1] and y >= HARD_Y_FLOOR
            ]
            floor = min(floor, HARD_Y_FLOOR)

    rungs = [_solve_rung(map, omega, y, resid_target, n_cap, floor) for y in rungs_y]

    # unwrap: mod-1 jumps between rungs would wreck the extrapolation
    taus = [rungs[0].tau]
    for r in rungs[1:]:
        prev = taus[-1]
        taus.append(complex(prev.real + wrap_half(r.tau.real - prev.real), r.tau.imag))

    if method == "fold":
        nodes = [cmath.sqrt(1.0 - 1j * y / s) for y in rungs_y]
        value = _neville(nodes, taus, 1.0)
        value_drop = _neville(nodes[:-1], taus[:-1], 1.0)
        est = abs(value - value_drop)
    else:
        ys = np.asarray(rungs_y)
        order_eff = min(order, len(rungs_y) - 1)
        value, est, _ = _richardson(ys, taus, order_eff)

    im = value.imag
    if im < 0.0:
        # boundary values on R/Z extrapolate to im = 0 up to noise
        est = max(est, -im)
        im = 0.0
    return BoundaryValue(
        tau=UpperHalfPoint(value.real % 1.0, im),
        tau_raw=value,
        error_estimate=est,
        rungs=tuple(rungs),
        method=method,
        omega=omega,
    )


def solution_csv_row(sol: ConjugacySolution):
    """(re_omega, im_omega, re_tau, im_tau, residual, min_phi_prime, N, M)."""
    return (
        sol.omega.real,
        sol.omega.imag,
        sol.tau.re,
        sol.tau.im,
        sol.residual,
        sol.min_phi_prime,
        sol.n_modes,
        sol.m_points,
    )
