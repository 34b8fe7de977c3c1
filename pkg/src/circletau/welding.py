"""Conformal welding of the two half-cylinders glued by a circle map.

Solves phi-(f(x)) = phi+(x) on R/Z with

    phi+(z) = z + C+ + sum_{k>0} a_k e^{2 pi i k z}   (holomorphic on H+/Z)
    phi-(z) = z + C- + sum_{k>0} b_k e^{-2 pi i k z}  (holomorphic on H-/Z)

The one-sided frequency supports are the discrete form of holomorphy at
the two punctures +-i inf, where phi+-(z) = z + C+- + o(1).  The welding
constant C_f = C+ - C- is gauge-invariant and equals the +i inf
asymptote of tau_f(omega) - omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, IllConditioned
from .uniformize import COND_LIMIT, complex_rotation_number, wrap_half


@dataclass(frozen=True)
class WeldingSolution:
    c_plus: complex
    c_minus: complex
    c_f: complex
    coeff_plus: tuple  # a_k, k = 1..N
    coeff_minus: tuple  # b_k against e^{-2 pi i k z}
    residual: float
    cond: float
    n_modes: int
    m_points: int

    def to_json_dict(self) -> dict:
        return {
            "c_f_re": self.c_f.real,
            "c_f_im": self.c_f.imag,
            "residual": self.residual,
            "N": self.n_modes,
            "M": self.m_points,
        }


def welding_constant(
    map,
    n_modes: int = 48,
    m_points: int | None = None,
    gauge_c_plus: complex = 0.0,
) -> WeldingSolution:
    """Solve the welding equation in least squares; C_f = C+ - C-.

    The gauge C+ is free ("unique up to addition of a constant"); C_f is
    invariant under it.
    """
    N = int(n_modes)
    if N < 1:
        raise ConfigError(f"n_modes must be >= 1, got {n_modes}")
    M = 4 * N + 8 if m_points is None else int(m_points)
    if M < 4 * N + 4:
        raise ConfigError(f"m_points must be >= 4*n_modes + 4, got {M}")
    gauge = complex(gauge_c_plus)

    x = np.arange(M) / M
    fx = np.asarray(np.real(map.lift(x)), dtype=float)
    k = np.arange(1, N + 1)
    # unknowns [a_1..a_N, b_1..b_N, C-]
    col_a = -np.exp(2j * math.pi * np.outer(x, k))
    col_b = np.exp(-2j * math.pi * np.outer(fx, k))
    col_c = np.ones((M, 1), dtype=complex)
    A = np.hstack([col_a, col_b, col_c])
    rhs = (x - fx + gauge).astype(complex)
    sol, _, _, sv = np.linalg.lstsq(A, rhs, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if cond > COND_LIMIT:
        raise IllConditioned(f"welding system condition estimate {cond:.3g}")
    residual = float(np.max(np.abs(A @ sol - rhs)))
    c_minus = complex(sol[-1])
    return WeldingSolution(
        c_plus=gauge,
        c_minus=c_minus,
        c_f=gauge - c_minus,
        coeff_plus=tuple(sol[:N]),
        coeff_minus=tuple(sol[N : 2 * N]),
        residual=residual,
        cond=cond,
        n_modes=N,
        m_points=M,
    )


@dataclass(frozen=True)
class AsymptoteReport:
    heights: tuple
    gaps: tuple  # |tau(iy) - iy - C_f| per height, mod 1 in the real part
    c_f: complex

    @property
    def decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.gaps, self.gaps[1:]))


def asymptote_check(
    map,
    heights: Sequence[float],
    welding: WeldingSolution | None = None,
    n_modes: int = 48,
) -> AsymptoteReport:
    """Gaps |tau_f(iy) - iy - C_f| for increasing heights y.

    For an analytic diffeomorphism the gap decays (exponentially) as
    y grows; solver errors at heights below the resolution floor are
    surfaced, not silenced.
    """
    hs = [float(y) for y in heights]
    if not hs or any(b <= a for a, b in zip(hs, hs[1:])):
        raise ConfigError("heights must be strictly increasing")
    weld = welding if welding is not None else welding_constant(map, n_modes)
    gaps = []
    for y in hs:
        sol = complex_rotation_number(map, 1j * y, n_modes)
        diff = sol.tau_raw - 1j * y - weld.c_f
        gaps.append(abs(complex(wrap_half(diff.real), diff.imag)))
    return AsymptoteReport(tuple(hs), tuple(gaps), weld.c_f)
