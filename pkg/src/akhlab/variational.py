"""Verification of the breather's variational characterization, three ways.

The breather is a critical point of H = F - alpha^2 E and therefore
satisfies, at every fixed time, the fourth-order ODE

    A_4x + 3 A_x^2 conj(A) + (4|A|^2 - 3) A_xx + A^2 conj(A)_xx
        + 2 |A_x|^2 A + (3/2)(|A|^2 - 1)^2 A
        + alpha^2 (A_xx + (|A|^2 - 1) A) = 0.

Three independent checks are implemented, each sensitive to a different
transcription-error class:

  1. ode_lhs: the operator assembled on grid samples of A with spectral
     derivatives. Both the sampling and the transforms run in 80-bit
     extended precision internally: in float64 the flat FFT noise floor
     amplified by k_max^4 puts the residual near 1e-6 at 512 points,
     whereas extended precision brings it below 1e-9.
  2. h_stationarity: the first variation of H vanishes at A, so
     |H[A + eps*w] - H[A]| scales like eps^2 for arbitrary periodic w;
     the fitted log-log slope certifies it, and a deliberately wrong
     multiplier in H restores the eps^1 scaling.
  3. The pointwise factor decomposition: the operator equals
     e^{it}/N^5 * sum_i R_i with six explicit polynomial expressions in
     M, N and their derivatives, and collecting the sum produces fifteen
     coefficients a_1..a_15 that all vanish identically under the
     parameter relations alpha^2 = 2(1-2a), beta^2 = 8a(1-2a), s^2 = 2a
     - proved here in exact rational arithmetic, not floating point.

R_1 contains the factor (i N_x + 2 N_xt); with N separable N_xt vanishes
identically, but the full factor is kept rather than pre-simplified, and
the pointwise cross-check against ode_lhs vindicates it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.fft

from .breather import AkhmedievParams, appendix_factors, akhmediev, breather_field
from .exactpoly import DEFAULT_RELATIONS, ExactPoly, Relations, generators
from .functionals import energy, f_functional
from .spectral import PeriodicGrid, SampledField, quadrature, spectral_derivative

_PI_LD = np.longdouble("3.14159265358979323846264338327950288")
_TAIL_WARN_RATIO = 1e-10


class UnderResolvedGridWarning(UserWarning):
    """Raised when the spectral tail of the sampled breather is not negligible."""


@dataclass(frozen=True)
class ResidualReport:
    params: AkhmedievParams
    time: float
    sup_norm: float
    l2_norm: float
    grid_points: int

    def to_dict(self) -> dict:
        return {
            "a": self.params.a,
            "time": self.time,
            "sup_norm": self.sup_norm,
            "l2_norm": self.l2_norm,
            "grid_points": self.grid_points,
        }


def _check_grid(p: AkhmedievParams, grid: PeriodicGrid):
    if grid.n_points < 128:
        raise ValueError(f"residual evaluation needs n_points >= 128, got {grid.n_points}")
    if abs(grid.length - p.period) > 1e-9 * p.period:
        raise ValueError(
            f"grid length {grid.length} does not span the breather period {p.period}"
        )


def _operator(A, Ax, Axx, A4x, alpha_sq):
    absA2 = (A * np.conj(A)).real
    return (
        A4x
        + 3.0 * Ax**2 * np.conj(A)
        + (4.0 * absA2 - 3.0) * Axx
        + A**2 * np.conj(Axx)
        + 2.0 * (Ax * np.conj(Ax)).real * A
        + 1.5 * (absA2 - 1.0) ** 2 * A
        + alpha_sq * (Axx + (absA2 - 1.0) * A)
    )


def ode_lhs(p: AkhmedievParams, t: float, grid: PeriodicGrid) -> SampledField:
    """The fourth-order operator applied to A(t, .), sampled on the grid.

    Internally extended precision (longdouble samples and transforms);
    the result is returned in double precision. A warning is issued when
    the top quarter of the spectrum carries more than 1e-10 of the peak
    coefficient, i.e. the grid does not resolve the breather.
    """
    _check_grid(p, grid)
    n = grid.n_points
    ld = np.longdouble
    alpha = np.sqrt(ld(2) * (ld(1) - ld(2) * ld(p.a)))
    L = ld(2) * _PI_LD / alpha
    x = np.arange(n, dtype=ld) * (L / n)
    A = akhmediev(p, t, x)

    coeffs = scipy.fft.fft(A) / n
    modes = np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(int)
    tail = np.abs(coeffs[np.abs(modes) >= (3 * n) // 8]).max()
    peak = np.abs(coeffs).max()
    if tail > _TAIL_WARN_RATIO * peak:
        warnings.warn(
            f"grid with {n} points under-resolves the breather "
            f"(spectral tail {float(tail / peak):.2e} of peak)",
            UnderResolvedGridWarning,
            stacklevel=2,
        )

    k = ld(2) * _PI_LD * modes.astype(ld) / L

    def deriv(order):
        mult = (1j * k) ** order
        if order % 2 == 1:
            mult[n // 2] = 0
        return scipy.fft.ifft(coeffs * mult * n)

    r = _operator(A, deriv(1), deriv(2), deriv(4), alpha**2)
    return SampledField(grid, r.astype(complex))


def operator_on_field(f: SampledField, alpha_sq: float) -> SampledField:
    """The same operator applied to an arbitrary sampled field, in float64.

    Used for negative controls: fields that are not solutions produce
    residuals many orders of magnitude above the breather's.
    """
    A = f.values
    Ax = spectral_derivative(f, 1).values
    Axx = spectral_derivative(f, 2).values
    A4x = spectral_derivative(f, 4).values
    return SampledField(f.grid, _operator(A, Ax, Axx, A4x, alpha_sq))


def residual_report(p: AkhmedievParams, t: float, grid: PeriodicGrid) -> ResidualReport:
    r = ode_lhs(p, t, grid)
    sup = float(np.max(np.abs(r.values)))
    l2 = float(np.sqrt(np.real(quadrature(SampledField(grid, np.abs(r.values) ** 2)))))
    return ResidualReport(params=p, time=t, sup_norm=sup, l2_norm=l2, grid_points=grid.n_points)


@dataclass(frozen=True)
class StationarityResult:
    slope: float | None
    vanishes_to_roundoff: bool
    eps_values: tuple[float, ...]
    deltas: tuple[float, ...]


def h_stationarity(
    p: AkhmedievParams,
    t: float,
    w: SampledField,
    eps_list: list[float],
    multiplier_scale: float = 1.0,
) -> StationarityResult:
    """Fit the order of |H[A + eps w] - H[A]| in eps.

    A slope >= 1.9 certifies a vanishing first variation. With
    multiplier_scale != 1 the functional F - scale*alpha^2*E is probed
    instead; its first variation at A does not vanish and the slope drops
    to ~1 once eps is small enough for the linear term to dominate.
    """
    mult = multiplier_scale * p.alpha**2

    def h(field: SampledField) -> float:
        return f_functional(field) - mult * energy(field)

    A = breather_field(p, t, w.grid)
    h0 = h(A)
    deltas = []
    for eps in eps_list:
        pert = SampledField(w.grid, A.values + eps * w.values)
        deltas.append(abs(h(pert) - h0))
    floor = 1e-12 * abs(h0)
    usable = [(e, d) for e, d in zip(eps_list, deltas) if d > floor]
    if len(usable) < 2:
        return StationarityResult(None, True, tuple(eps_list), tuple(deltas))
    loge = np.log([e for e, _ in usable])
    logd = np.log([d for _, d in usable])
    slope = float(np.polyfit(loge, logd, 1)[0])
    return StationarityResult(slope, False, tuple(eps_list), tuple(deltas))


def evaluate_R(p: AkhmedievParams, i: int, t: float, x: float) -> complex:
    """One of the six factor expressions R_1..R_6 of the operator decomposition."""
    if not 1 <= i <= 6:
        raise ValueError(f"R index must be in 1..6, got {i}")
    f = appendix_factors(p, t, x)
    M, N = f.M, f.N
    M_t, N_t, N_x, N_xx = f.M_t, f.N_t, f.N_x, f.N_xx
    M_x = M_xx = M_xt = M_xxt = 0.0  # M depends on t only
    N_xt = N_xxt = 0.0  # N is separable
    Mb = np.conj(M)
    Mb_x = np.conj(M_x)
    alpha_sq = p.alpha**2
    if i == 1:
        return complex(
            0.5
            * N
            * (
                6j * M * N_t * N_x**2
                - 2j
                * N
                * (
                    N_x * (M_t * N_x + M * (1j * N_x + 2.0 * N_xt))
                    + N_t * (2.0 * M_x * N_x + M * N_xx)
                )
                + N**3 * (M_xx - 1j * M_xxt)
                + N**2
                * (
                    -2.0 * M_x * (N_x - 1j * N_xt)
                    + 1j
                    * (2.0 * N_x * M_xt + N_t * M_xx + 1j * M * N_xx + M_t * N_xx + M * N_xxt)
                )
            )
        )
    if i == 2:
        return complex(
            0.5
            * (2.0 * M * (Mb + N) + N * (2.0 * Mb + (alpha_sq - 1.0) * N))
            * (2.0 * M * N_x**2 + N**2 * M_xx - N * (2.0 * M_x * N_x + M * N_xx))
        )
    if i == 3:
        return complex((M + N) * (-N * M_x + M * N_x) * (N * Mb_x - Mb * N_x))
    if i == 4:
        return complex(0.5 * (Mb + N) * (N * M_x - M * N_x) ** 2)
    if i == 5:
        return complex(
            0.5
            * N**2
            * (M + N)
            * ((1.5 - alpha_sq) * N**2 + (alpha_sq - 3.0) * (Mb + N) * (M + N))
        )
    return complex(0.75 * (M + N) ** 3 * (Mb + N) ** 2)


def appendix_residual(p: AkhmedievParams, t: float, x: float) -> tuple[complex, float]:
    """e^{it}/N^5 * sum_i R_i at a point, with the cancellation scale.

    The scale sum_i |R_i| / |N|^5 is the magnitude against which the sum
    cancels; differences from ode_lhs are meaningful relative to it.
    """
    rs = [evaluate_R(p, i, t, x) for i in range(1, 7)]
    N = appendix_factors(p, t, x).N
    phase = complex(np.cos(t), np.sin(t))
    value = phase / N**5 * sum(rs)
    scale = float(sum(abs(r) for r in rs) / abs(N) ** 5)
    return value, scale


def coefficient_terms(alpha2, beta2, beta, sqrt2a, a, i):
    """The fifteen collected coefficients, written once over any commutative
    ring supplying alpha^2, beta^2, beta, sqrt(2a), a and the imaginary unit.

    Instantiated with exact ring generators for the identity proof and
    with plain complex numbers for raw spot checks.
    """
    f = Fraction
    a4 = alpha2 * alpha2
    a6 = a4 * alpha2
    a8 = a6 * alpha2
    b4 = beta2 * beta2
    return [
        f(3, 2) * (alpha2 - 1) * beta2 * (beta2 - 4 * a * alpha2),
        -1 * (alpha2 - 1) * beta2 * (3 * a4 - 5 * alpha2 + 3 * beta2)
        + 2 * a * (3 * a8 - 5 * a6 - alpha2 * beta2 + 3 * a4 * beta2),
        f(1, 2) * (alpha2 - 1) * (3 * a8 - 10 * a6 - 10 * alpha2 * beta2 + 3 * b4 + a4 * (6 * beta2 + 8)),
        f(3, 2) * i * beta * beta2 * (beta2 - 4 * a * alpha2),
        i * beta * (beta2 * (5 * alpha2 - 3 * a4 - 3 * beta2) + a * (6 * a6 - 8 * a4 + 6 * alpha2 * beta2)),
        f(1, 2) * i * beta * (3 * a8 - 10 * a6 - 10 * alpha2 * beta2 + 3 * b4 + a4 * (6 * beta2 + 8)),
        f(3, 2) * sqrt2a * beta2 * (beta2 - 4 * a * alpha2),
        -1 * sqrt2a * (beta2 * (5 * a4 - 7 * alpha2 + 3 * beta2) + a * (2 * alpha2 * beta2 - 6 * a6)),
        f(1, 2) * sqrt2a * (7 * a8 - 24 * a6 - 16 * alpha2 * beta2 + 3 * b4 + 10 * a4 * (beta2 + 2)),
        2 * i * sqrt2a * alpha2 * beta * (4 * a * alpha2 - beta2),
        2 * i * sqrt2a * alpha2 * beta * (a4 - 2 * alpha2 + beta2),
        4 * a * alpha2 * (2 * a * (a4 + beta2) - beta2),
        6 * a * alpha2 * (a4 - 2 * alpha2 + beta2),
        2 * sqrt2a * a * alpha2 * (a4 - 2 * alpha2 + beta2),
        -4 * a * a * alpha2 * (a4 - 2 * alpha2 + beta2),
    ]


def raw_coefficient_values(alpha_sq: complex, beta_sq: complex, a: complex) -> list[complex]:
    """The fifteen coefficients evaluated numerically before any substitution."""
    beta = complex(np.sqrt(complex(beta_sq)))
    sqrt2a = complex(np.sqrt(complex(2 * a)))
    return [complex(v) for v in coefficient_terms(alpha_sq, beta_sq, beta, sqrt2a, a, 1j)]


@dataclass(frozen=True)
class CoefficientCheck:
    index: int
    is_zero: bool
    residual: ExactPoly

    def to_dict(self) -> dict:
        return {"index": self.index, "is_zero": self.is_zero, "residual": str(self.residual)}


def verify_coefficients(relations: Relations = DEFAULT_RELATIONS) -> list[CoefficientCheck]:
    """Reduce each collected coefficient in the exact ring; all must vanish.

    With the true relations the residuals are exactly zero polynomials.
    A nonzero residual is returned verbatim for inspection (the wrong-
    relation negative control exercises that path).
    """
    a, s, b, i, one = generators(relations)
    alpha2 = 2 * one - 4 * a
    beta2 = b * b  # reduces via the ring relation
    exprs = coefficient_terms(alpha2, beta2, b, s, a, i)
    return [
        CoefficientCheck(index=idx, is_zero=expr.is_zero, residual=expr)
        for idx, expr in enumerate(exprs, start=1)
    ]
