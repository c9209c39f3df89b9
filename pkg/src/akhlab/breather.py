"""Closed forms for the space-periodic, time-localized breather of focusing NLS.

For 0 < a < 1/2 put alpha = sqrt(2(1-2a)) and beta = sqrt(8a(1-2a)). The
breather over the unit-modulus background e^{it} is

    A(t, x) = e^{it} [ 1 + (alpha^2 cosh(beta t) + i beta sinh(beta t))
                           / (sqrt(2a) cos(alpha x) - cosh(beta t)) ],

with exact spatial period L = 2 pi / alpha. Since sqrt(2a) < 1 <= cosh,
the denominator is strictly negative, so A is smooth everywhere. As
t -> +-infinity, e^{-it} A converges to the unit-modulus constant
e^{+- i theta} with e^{i theta} = 1 - alpha^2 - i beta; the gap field

    Q(t, x) = e^{-it} A(t, x) - e^{i theta}

decays like e^{-beta |t|} and drives every experiment downstream.

All evaluators use the hyperbolically normalized forms (numerator and
denominator divided by cosh(beta t)), which never overflow: 1/cosh
underflows gracefully to 0 and tanh saturates, giving the correct limits
for arbitrarily large |t|. The factor pair M, N and their derivatives are
kept in raw form for the pointwise decomposition checks; those are meant
for desk-scale times. Evaluators are dtype-polymorphic: passing a
longdouble x produces extended-precision samples (used by the residual
verification).

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .spectral import PeriodicGrid, SampledField


class DerivedConstants(NamedTuple):
    a: np.floating
    alpha: np.floating
    beta: np.floating
    sqrt_2a: np.floating
    phase_factor: np.complexfloating


def derived_constants(a: float, dtype=np.float64) -> DerivedConstants:
    """alpha, beta, sqrt(2a) and the limit phase, computed in the given dtype."""
    a_ = dtype(a)
    one = dtype(1)
    alpha = np.sqrt(dtype(2) * (one - dtype(2) * a_))
    beta = np.sqrt(dtype(8) * a_ * (one - dtype(2) * a_))
    sqrt_2a = np.sqrt(dtype(2) * a_)
    phase = (one - alpha**2) - 1j * beta
    return DerivedConstants(a_, alpha, beta, sqrt_2a, phase)


@dataclass(frozen=True)
class AkhmedievParams:
    """Parameter bundle; everything is derived from a in (0, 1/2)."""

    a: float
    alpha: float
    beta: float
    phase_factor: complex
    period: float

    @property
    def sqrt_2a(self) -> float:
        return float(np.sqrt(2.0 * self.a))


def derive_params(a: float) -> AkhmedievParams:
    """Derive the full parameter bundle from the single shape parameter a.

    Raises ValueError outside the open interval (0, 1/2), where the
    breather degenerates (alpha or beta vanishes).
    """
    if not (0.0 < a < 0.5):
        raise ValueError(f"breather parameter a must lie in (0, 1/2), got {a}")
    d = derived_constants(a)
    return AkhmedievParams(
        a=float(a),
        alpha=float(d.alpha),
        beta=float(d.beta),
        phase_factor=complex(d.phase_factor),
        period=float(2.0 * np.pi / d.alpha),
    )


def _dtype_of(x) -> type:
    dt = np.asarray(x).dtype
    if dt == np.longdouble:
        return np.longdouble
    return np.float64


def _cis(t):
    """exp(i t) in the precision of t."""
    return np.cos(t) + 1j * np.sin(t)


def _hyperbolic_arg(beta, t, dtype):
    """beta*t clamped where cosh would overflow; tanh and 1/cosh are already
    saturated to machine precision far before the clamp."""
    arg = beta * dtype(t)
    bound = dtype(700)
    return min(max(arg, -bound), bound)


def akhmediev(p: AkhmedievParams, t: float, x):
    """The breather A(t, x); x may be a scalar or array of any real dtype."""
    dtype = _dtype_of(x)
    d = derived_constants(p.a, dtype)
    t_ = dtype(t)
    x_ = np.asarray(x, dtype=dtype)
    bt = _hyperbolic_arg(d.beta, t, dtype)
    num = d.alpha**2 + 1j * d.beta * np.tanh(bt)
    den = d.sqrt_2a * np.cos(d.alpha * x_) / np.cosh(bt) - dtype(1)
    return _cis(t_) * (1 + num / den)


def stokes(t: float, phase: complex) -> complex:
    """The background plane wave phase * e^{it}; phase must be unit-modulus."""
    return phase * complex(np.cos(t), np.sin(t))


def q_value(p: AkhmedievParams, t: float, x):
    """The gap field Q(t, x) = e^{-it} A(t, x) - e^{i theta}."""
    dtype = _dtype_of(x)
    d = derived_constants(p.a, dtype)
    x_ = np.asarray(x, dtype=dtype)
    bt = _hyperbolic_arg(d.beta, t, dtype)
    g = dtype(1) - d.sqrt_2a * np.cos(d.alpha * x_) / np.cosh(bt)
    return d.alpha**2 * (1 - 1 / g) + 1j * d.beta * (1 - np.tanh(bt) / g)


def q_x_value(p: AkhmedievParams, t: float, x):
    """Spatial derivative of Q in closed form.

    Both terms carry the 1/cosh(beta t) factor from differentiating the
    normalized denominator; this is what makes sup_x |Q_x| decay like
    e^{-beta t}, and it matches spectral and finite-difference
    differentiation of q_value.
    """
    dtype = _dtype_of(x)
    d = derived_constants(p.a, dtype)
    x_ = np.asarray(x, dtype=dtype)
    bt = _hyperbolic_arg(d.beta, t, dtype)
    ch = np.cosh(bt)
    g = dtype(1) - d.sqrt_2a * np.cos(d.alpha * x_) / ch
    common = d.sqrt_2a * np.sin(d.alpha * x_) / (ch * g**2)
    return d.alpha**3 * common + 1j * d.alpha * d.beta * np.tanh(bt) * common


@dataclass(frozen=True)
class AppendixFactors:
    """Numerator/denominator pair of the breather and their derivatives.

    M depends on t only and N is separable, so M_x, M_xx, M_xt, M_xxt,
    N_xt and N_xxt vanish identically; only the nonzero derivatives are
    stored. Raw cosh/sinh are used, so this is meant for |beta t| well
    below the overflow threshold (~700).
    """

    M: complex
    N: float
    M_t: complex
    N_t: float
    N_x: float
    N_xx: float
    N_xxx: float
    N_xxxx: float

    @property
    def partials(self) -> dict:
        return {
            "M_t": self.M_t,
            "N_t": self.N_t,
            "N_x": self.N_x,
            "N_xx": self.N_xx,
            "N_xxx": self.N_xxx,
            "N_xxxx": self.N_xxxx,
        }


def appendix_factors(p: AkhmedievParams, t: float, x: float) -> AppendixFactors:
    """M, N and their nonvanishing derivatives at a point."""
    d = derived_constants(p.a)
    ch = np.cosh(d.beta * t)
    sh = np.sinh(d.beta * t)
    cos = np.cos(d.alpha * x)
    sin = np.sin(d.alpha * x)
    return AppendixFactors(
        M=complex(d.alpha**2 * ch, d.beta * sh),
        N=float(d.sqrt_2a * cos - ch),
        M_t=complex(d.alpha**2 * d.beta * sh, d.beta**2 * ch),
        N_t=float(-d.beta * sh),
        N_x=float(-d.sqrt_2a * d.alpha * sin),
        N_xx=float(-d.sqrt_2a * d.alpha**2 * cos),
        N_xxx=float(d.sqrt_2a * d.alpha**3 * sin),
        N_xxxx=float(d.sqrt_2a * d.alpha**4 * cos),
    )


def natural_grid(p: AkhmedievParams, n_points: int) -> PeriodicGrid:
    """Grid spanning exactly one spatial period of the breather."""
    return PeriodicGrid(n_points, p.period)


def breather_field(p: AkhmedievParams, t: float, grid: PeriodicGrid) -> SampledField:
    return SampledField(grid, akhmediev(p, t, grid.nodes))


def q_field(p: AkhmedievParams, t: float, grid: PeriodicGrid) -> SampledField:
    return SampledField(grid, q_value(p, t, grid.nodes))


def stokes_field(grid: PeriodicGrid, phase: complex, t: float = 0.0) -> SampledField:
    return SampledField(grid, np.full(grid.n_points, stokes(t, phase)))
