"""Desk-scale reenactment of the instability mechanism.

Four quantitative pieces:

  * q_decay_scan - the gap field Q(T) between the breather and the
    phase-shifted background shrinks like e^{-beta T} in every Sobolev
    norm, and its norms satisfy the Hoelder interpolation bound
    ||Q||_{H^s} <= ||Q||_{L^2}^{1-s} ||Q||_{H^1}^s with constant 1 in the
    homogeneous coefficient convention.
  * modulated_distance - the distance from a field to the breather's
    symmetry orbit {e^{i gamma} A(t, . - x0)}, minimized over phase and
    shift. The phase minimization is exact per shift (the objective is
    sinusoidal in gamma), so only x0 is searched: a coarse pass over 64
    shifts followed by step-halving descent to 1e-6.
  * instability_report - Stokes data at time T sits within
    eps(T) = ||Q(T)||_{H^s} of the breather, yet at t = 0 its modulated
    distance d0 to the orbit is a fixed positive number; the ratio
    d0/eps(T) grows like e^{beta T}, so no uniform stability constant
    can exist.
  * mi_growth_rate - seeding the background with a cos(k x) sideband
    excites the modulational instability; for k inside the band the
    fitted growth rate matches sigma(k) = k sqrt(2 - k^2) (which equals
    beta at k = alpha), while k^2 > 2 stays neutrally stable.

Closed forms are used on both sides of the headline comparison;
the PDE solver only corroborates (breather_perturbation_divergence).
Runs are pure given their inputs and parallelize freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .breather import (
    AkhmedievParams,
    akhmediev,
    breather_field,
    natural_grid,
    q_field,
    q_value,
    stokes_field,
)
from .solver import SolverConfig, evolve
from .spectral import (
    PeriodicGrid,
    SampledField,
    SobolevConvention,
    homogeneous,
    inhomogeneous,
    sobolev_norm,
    transform,
)

_MAX_BETA_T = 300.0


@dataclass(frozen=True)
class ModulationParams:
    """Orbit coordinates: shift in [0, L), phase in [0, 2 pi)."""

    x0: float
    gamma0: float

    @staticmethod
    def wrapped(x0: float, gamma0: float, length: float) -> "ModulationParams":
        return ModulationParams(x0 % length, gamma0 % (2.0 * np.pi))


@dataclass(frozen=True)
class QDecayRow:
    T: float
    l2: float
    h1: float
    hs: float
    interpolation_ok: bool

    def to_dict(self) -> dict:
        return {
            "T": self.T,
            "l2": self.l2,
            "h1": self.h1,
            "hs": self.hs,
            "interpolation_ok": self.interpolation_ok,
        }


@dataclass(frozen=True)
class QDecayScan:
    s: float
    a: float
    rows: tuple[QDecayRow, ...]
    fitted_rate: float


@dataclass(frozen=True)
class InstabilityRow:
    T: float
    eps: float
    d0: float
    ratio: float

    def to_dict(self) -> dict:
        return {"T": self.T, "eps": self.eps, "d0": self.d0, "ratio": self.ratio}


@dataclass(frozen=True)
class InstabilityReport:
    s: float
    a: float
    rows: tuple[InstabilityRow, ...]
    fitted_decay_rate: float
    c_s_estimate: float


@dataclass(frozen=True)
class MiGrowthFit:
    rate: float
    rows: tuple[tuple[float, float], ...]
    window_truncated: bool


@dataclass(frozen=True)
class DivergenceScan:
    rows: tuple[tuple[float, float], ...]
    blown_up: bool


def random_band_limited(
    grid: PeriodicGrid,
    rng: np.random.Generator,
    max_mode: int = 8,
    amplitude: float = 1.0,
) -> SampledField:
    """Random smooth periodic field with modes |m| <= max_mode, unit L^2
    coefficient norm scaled by amplitude."""
    n = grid.n_points
    coeffs = np.zeros(n, dtype=complex)
    for m in range(-max_mode, max_mode + 1):
        coeffs[m % n] = rng.normal() + 1j * rng.normal()
    coeffs *= amplitude / np.sqrt(np.sum(np.abs(coeffs) ** 2))
    j = np.arange(n)
    values = np.zeros(n, dtype=complex)
    for m in range(-max_mode, max_mode + 1):
        values += coeffs[m % n] * np.exp(2j * np.pi * m * j / n)
    return SampledField(grid, values)


def stokes_deficit_perturbation(p: AkhmedievParams, t0: float, grid: PeriodicGrid) -> SampledField:
    """w0 = -e^{i t0} Q(t0, .): added to A(t0) it gives exactly Stokes data."""
    phase = complex(np.cos(t0), np.sin(t0))
    return SampledField(grid, -phase * q_value(p, t0, grid.nodes))


def _check_T_values(p: AkhmedievParams, T_values) -> list[float]:
    ts = [float(T) for T in T_values]
    if len(ts) < 2 or any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
        raise ValueError("T_values must be strictly increasing with at least two entries")
    if max(abs(t) for t in ts) * p.beta > _MAX_BETA_T:
        raise ValueError(f"|T|*beta must stay below {_MAX_BETA_T} for overflow-safe scans")
    return ts


def q_decay_scan(
    p: AkhmedievParams,
    s: float,
    T_values,
    n_points: int = 256,
    time_reversed: bool = False,
) -> QDecayScan:
    """Norms of Q(T) on an increasing T ladder, with the fitted decay rate.

    Norms use the homogeneous coefficient convention, under which the
    interpolation bound holds with constant exactly 1. The rate is the
    least-squares slope of log ||Q||_{H^1} over the largest three T.
    With time_reversed the scan runs toward t -> -infinity, covering the
    conjugate-phase limit.
    """
    ts = _check_T_values(p, T_values)
    grid = natural_grid(p, n_points)
    conv_l2 = homogeneous(0.0)
    conv_h1 = homogeneous(1.0)
    conv_hs = homogeneous(s)
    rows = []
    for T in ts:
        if time_reversed:
            # toward t -> -infinity the limit phase conjugates: the gap is
            # e^{-it} A(t) - conj(phase) evaluated at t = -T
            phase_t = complex(np.cos(T), np.sin(T))
            gap = phase_t * akhmediev(p, -T, grid.nodes) - np.conj(p.phase_factor)
            q = SampledField(grid, gap)
        else:
            q = q_field(p, T, grid)
        l2 = sobolev_norm(q, conv_l2)
        h1 = sobolev_norm(q, conv_h1)
        hs = sobolev_norm(q, conv_hs)
        ok = hs <= l2 ** (1.0 - s) * h1**s * (1.0 + 1e-12)
        rows.append(QDecayRow(T=T, l2=l2, h1=h1, hs=hs, interpolation_ok=ok))
    tail = rows[-3:]
    slope = np.polyfit([r.T for r in tail], np.log([r.h1 for r in tail]), 1)[0]
    return QDecayScan(s=s, a=p.a, rows=tuple(rows), fitted_rate=float(-slope))


def _orbit_objective(
    u_coeffs: np.ndarray,
    a_coeffs: np.ndarray,
    weights: np.ndarray,
    modes: np.ndarray,
    length: float,
):
    """Distance^2 to the orbit as a function of shift, with the phase solved
    exactly: min_gamma ||u - e^{i gamma} A(. - x0)||^2 =
    ||u||^2 + ||A||^2 - 2 |<u, A(. - x0)>|, all in weighted coefficient space."""
    uu = float(np.sum(weights * np.abs(u_coeffs) ** 2))
    aa = float(np.sum(weights * np.abs(a_coeffs) ** 2))
    wua = weights * u_coeffs * np.conj(a_coeffs)

    def at(x0: float) -> tuple[float, float]:
        inner = np.sum(wua * np.exp(2j * np.pi * modes * (x0 / length)))
        d2 = uu + aa - 2.0 * abs(inner)
        return max(d2, 0.0), float(np.angle(inner))

    return at


def modulated_distance(
    u: SampledField,
    p: AkhmedievParams,
    t: float,
    s: float,
    convention: SobolevConvention | None = None,
    coarse_points: int = 64,
    refine_step: float = 1e-6,
) -> tuple[float, ModulationParams]:
    """Minimal Sobolev distance from u to the breather orbit at time t.

    Returns the distance and the minimizing (x0, gamma0). The default
    norm is the inhomogeneous H^s convention (a true norm; the
    homogeneous one ignores the mean mode).
    """
    if abs(u.grid.length - p.period) > 1e-9 * p.period:
        raise ValueError("field grid is not commensurate with the breather period")
    conv = convention if convention is not None else inhomogeneous(s)
    L = u.grid.length
    modes = u.grid.frequencies()
    weights = conv.weights(modes)
    u_coeffs = transform(u).coeffs
    a_coeffs = transform(breather_field(p, t, u.grid)).coeffs
    objective = _orbit_objective(u_coeffs, a_coeffs, weights, modes, L)

    shifts = np.arange(coarse_points) * (L / coarse_points)
    d2s = [objective(x0)[0] for x0 in shifts]
    best_idx = int(np.argmin(d2s))
    x0 = float(shifts[best_idx])
    d2 = d2s[best_idx]

    step = L / coarse_points
    while step > refine_step:
        moved = False
        for candidate in (x0 - step, x0 + step):
            d2c, _ = objective(candidate)
            if d2c < d2:
                d2, x0 = d2c, candidate
                moved = True
        if not moved:
            step /= 2.0
    d2, gamma = objective(x0)
    return float(np.sqrt(d2)), ModulationParams.wrapped(x0, gamma, L)


def instability_report(
    p: AkhmedievParams,
    s: float,
    T_values,
    n_points: int = 256,
    convention: SobolevConvention | None = None,
) -> InstabilityReport:
    """The ratio (fixed distance at t = 0) / (vanishing distance at t = T).

    eps(T) = ||Q(T)||_{H^s} is the distance between Stokes data and the
    breather at initial time T; d0 is the modulated distance of the
    Stokes field to the orbit at t = 0, recomputed per row (it cannot
    depend on T). A growing ratio refutes any uniform stability constant.
    """
    ts = _check_T_values(p, T_values)
    conv = convention if convention is not None else inhomogeneous(s)
    grid = natural_grid(p, n_points)
    stokes = stokes_field(grid, p.phase_factor)
    rows = []
    for T in ts:
        eps = sobolev_norm(q_field(p, T, grid), conv)
        d0, _ = modulated_distance(stokes, p, 0.0, s, convention=conv)
        rows.append(InstabilityRow(T=T, eps=eps, d0=d0, ratio=d0 / eps))
    tail = rows[-3:]
    slope = np.polyfit([r.T for r in tail], np.log([r.eps for r in tail]), 1)[0]
    return InstabilityReport(
        s=s,
        a=p.a,
        rows=tuple(rows),
        fitted_decay_rate=float(-slope),
        c_s_estimate=rows[-1].d0,
    )


def mi_growth_rate(
    p: AkhmedievParams,
    delta: float,
    cfg: SolverConfig,
    harmonic: int = 1,
) -> MiGrowthFit:
    """Fitted sideband growth rate for background data 1 + delta cos(k x),
    k = harmonic * alpha, riding on the phase-shifted Stokes wave.

    The +-k pair lands in Fourier bins +-harmonic of the natural grid.
    Amplitudes are recorded while below 10*delta; the fit uses the rows
    with amplitude >= 3*delta where the decaying Bogoliubov component is
    negligible, falling back to all rows for non-growing sidebands.
    """
    if not 0.0 < delta <= 1e-3:
        raise ValueError(f"delta must lie in (0, 1e-3], got {delta}")
    grid = natural_grid(p, cfg.n_points)
    x = grid.nodes
    u0 = SampledField(
        grid, p.phase_factor * (1.0 + delta * np.cos(harmonic * p.alpha * x))
    )
    traj = evolve(u0, cfg, alpha_sq=p.alpha**2)
    rows = []
    n = grid.n_points
    for t, snap in zip(traj.times, traj.snapshots):
        c = np.fft.fft(snap.values) / n
        amp = float(abs(c[harmonic % n]) + abs(c[-harmonic % n]))
        if amp >= 10.0 * delta:
            break
        rows.append((t - cfg.t_start, amp))
    window_truncated = traj.blown_up and (
        (rows[-1][0] if rows else 0.0) < 2.0 / p.beta
    )
    fit_rows = [r for r in rows if r[1] >= 3.0 * delta]
    if len(fit_rows) < 4:
        fit_rows = rows
    if len(fit_rows) < 2:
        raise ValueError("recorded window too short to fit a growth rate")
    times = np.array([r[0] for r in fit_rows])
    amps = np.array([r[1] for r in fit_rows])
    rate = float(np.polyfit(times, np.log(amps), 1)[0])
    return MiGrowthFit(rate=rate, rows=tuple(rows), window_truncated=window_truncated)


def breather_perturbation_divergence(
    p: AkhmedievParams,
    w0: SampledField,
    cfg: SolverConfig,
    s: float,
    convention: SobolevConvention | None = None,
) -> DivergenceScan:
    """Evolve A(t_start) + w0 and track the modulated distance to the orbit.

    Evidence output, no pass/fail contract; a blow-up abort is reported,
    not raised.
    """
    grid = w0.grid
    u0 = SampledField(grid, breather_field(p, cfg.t_start, grid).values + w0.values)
    traj = evolve(u0, cfg, alpha_sq=p.alpha**2)
    rows = []
    for t, snap in zip(traj.times, traj.snapshots):
        d, _ = modulated_distance(snap, p, t, s, convention=convention)
        rows.append((t, d))
    return DivergenceScan(rows=tuple(rows), blown_up=traj.blown_up)
