"""Closed-form evaluators: parameter relations, symmetries, asymptotics."""

import numpy as np
import pytest

from akhlab import (
    akhmediev,
    appendix_factors,
    derive_params,
    natural_grid,
    q_value,
    q_x_value,
    stokes,
)
from akhlab.breather import q_field
from akhlab.spectral import spectral_derivative


def test_derive_params_quarter():
    p = derive_params(0.25)
    assert p.alpha == pytest.approx(1.0, abs=1e-15)
    assert p.beta == pytest.approx(1.0, abs=1e-15)
    assert p.phase_factor == pytest.approx(-1j, abs=1e-15)
    assert p.period == pytest.approx(2.0 * np.pi, rel=1e-15)


def test_derive_params_point_two():
    p = derive_params(0.2)
    assert p.alpha == pytest.approx(1.0954451150103321, rel=1e-12)
    assert p.beta == pytest.approx(0.9797958971132712, rel=1e-12)


@pytest.mark.parametrize("a", [0.5, 0.0, -0.1, 0.75, 1.0])
def test_derive_params_domain(a):
    with pytest.raises(ValueError):
        derive_params(a)


def test_parameter_invariants_sampled():
    for a in np.linspace(1e-3, 0.499, 1000):
        p = derive_params(float(a))
        assert abs(p.alpha**2 - 2.0 * (1.0 - 2.0 * a)) <= 1e-14 * 2.0
        assert abs(p.beta**2 - 8.0 * a * (1.0 - 2.0 * a)) <= 1e-14 * 8.0
        assert abs(abs(p.phase_factor) - 1.0) <= 1e-14
        assert p.period == pytest.approx(2.0 * np.pi / p.alpha, rel=1e-14)
        assert 0.0 < p.sqrt_2a < 1.0


def test_akhmediev_at_origin():
    p = derive_params(0.25)
    expected = 1.0 + 1.0 / (np.sqrt(0.5) - 1.0)
    assert akhmediev(p, 0.0, 0.0) == pytest.approx(expected, abs=1e-13)
    assert expected == pytest.approx(-2.4142135623730945, rel=1e-12)


@pytest.mark.parametrize("a", [0.1, 0.25, 0.4])
def test_akhmediev_periodicity(a):
    p = derive_params(a)
    ts = np.linspace(-3.0, 3.0, 64)
    xs = np.linspace(0.0, p.period, 64, endpoint=False)
    for t in ts:
        diff = akhmediev(p, t, xs + p.period) - akhmediev(p, t, xs)
        assert np.max(np.abs(diff)) < 1e-12


def test_akhmediev_asymptotic_phase():
    p = derive_params(0.25)
    xs = np.linspace(0.0, p.period, 32, endpoint=False)
    phase_t = complex(np.cos(10.0), np.sin(10.0))
    gap = np.abs(akhmediev(p, 10.0, xs) - phase_t * p.phase_factor)
    assert np.max(gap) < 1e-3
    # t -> -infinity approaches the conjugate phase
    phase_m = complex(np.cos(10.0), -np.sin(10.0))
    gap_m = np.abs(akhmediev(p, -10.0, xs) - phase_m * np.conj(p.phase_factor))
    assert np.max(gap_m) < 1e-3


@pytest.mark.parametrize("a", [0.1, 0.3, 0.45])
def test_time_and_space_symmetry(a):
    p = derive_params(a)
    xs = np.linspace(-p.period, p.period, 41)
    for t in [0.3, 1.1, 2.5]:
        assert np.max(np.abs(np.abs(akhmediev(p, -t, xs)) - np.abs(akhmediev(p, t, xs)))) < 1e-12
        assert np.max(np.abs(akhmediev(p, t, -xs) - akhmediev(p, t, xs))) < 1e-12


def test_background_approach_is_monotone_and_exponential():
    p = derive_params(0.3)
    xs = np.linspace(0.0, p.period, 128, endpoint=False)
    ts = np.linspace(2.0, 6.0, 17)
    sups = []
    for t in ts:
        gap = akhmediev(p, t, xs) * complex(np.cos(t), -np.sin(t)) - p.phase_factor
        sups.append(np.max(np.abs(gap)))
    sups = np.array(sups)
    assert np.all(np.diff(sups) < 0.0)
    # fit the envelope constant on a coarse subset, check it bounds the rest
    fit_c = np.max(sups[::4] * np.exp(p.beta * ts[::4]))
    assert np.all(sups <= 1.05 * fit_c * np.exp(-p.beta * ts))


def test_stokes_values():
    assert stokes(0.0, 1.0) == pytest.approx(1.0)
    assert stokes(np.pi, 1.0) == pytest.approx(-1.0, abs=1e-15)
    p = derive_params(0.25)
    assert stokes(0.0, p.phase_factor) == pytest.approx(-1j, abs=1e-15)


def test_q_value_at_origin():
    p = derive_params(0.25)
    q = q_value(p, 0.0, 0.0)
    assert q == pytest.approx(-2.414213562373095 + 1.0j, abs=1e-12)


def test_q_decomposition_identity():
    rng = np.random.default_rng(11)
    for a in [0.12, 0.25, 0.37]:
        p = derive_params(a)
        ts = rng.uniform(-5.0, 5.0, 100)
        xs = rng.uniform(0.0, p.period, 100)
        for t, x in zip(ts, xs):
            lhs = akhmediev(p, t, x)
            rhs = complex(np.cos(t), np.sin(t)) * (p.phase_factor + q_value(p, t, x))
            assert abs(lhs - rhs) < 1e-12


def test_q_vanishes_for_large_time():
    p = derive_params(0.25)
    xs = np.linspace(0.0, p.period, 64, endpoint=False)
    sups = [np.max(np.abs(q_value(p, T, xs))) for T in [5.0, 10.0, 15.0, 20.0]]
    assert all(s2 < s1 for s1, s2 in zip(sups, sups[1:]))
    assert sups[-1] < 1e-7


def test_q_overflow_safe_far_out():
    p = derive_params(0.25)
    # cosh would overflow near beta*t ~ 710; the normalized form must not
    q = q_value(p, 500.0, 1.0)
    assert np.isfinite(q.real) and np.isfinite(q.imag)
    assert abs(q) < 1e-100
    A = akhmediev(p, 500.0, 1.0)
    assert np.isfinite(A.real) and np.isfinite(A.imag)


def test_q_x_zero_at_origin():
    for a in [0.1, 0.25, 0.4]:
        p = derive_params(a)
        for t in [-2.0, 0.0, 1.5]:
            assert abs(q_x_value(p, t, 0.0)) == 0.0


def test_q_x_matches_finite_difference():
    p = derive_params(0.25)
    t = 1.0
    x = p.period / 4.0
    h = 1e-6
    fd = (q_value(p, t, x + h) - q_value(p, t, x - h)) / (2.0 * h)
    closed = q_x_value(p, t, x)
    assert abs(closed - fd) <= 1e-8 * abs(closed)


@pytest.mark.parametrize("a,t", [(0.25, 0.8), (0.4, -1.7), (0.1, 2.0)])
def test_q_x_matches_spectral_derivative(a, t):
    p = derive_params(a)
    grid = natural_grid(p, 512)
    spectral = spectral_derivative(q_field(p, t, grid), 1).values
    closed = q_x_value(p, t, grid.nodes)
    assert np.max(np.abs(spectral - closed)) < 1e-10


def test_q_x_sup_decays():
    p = derive_params(0.3)
    xs = np.linspace(0.0, p.period, 128, endpoint=False)
    sups = [np.max(np.abs(q_x_value(p, T, xs))) for T in [2.0, 4.0, 6.0, 10.0]]
    assert all(s2 < s1 for s1, s2 in zip(sups, sups[1:]))
    assert sups[-1] < 1e-3


def test_appendix_factors_values():
    p = derive_params(0.25)
    f = appendix_factors(p, 0.0, 0.0)
    assert f.M == pytest.approx(1.0 + 0.0j, abs=1e-15)
    assert f.N == pytest.approx(np.sqrt(0.5) - 1.0, abs=1e-15)
    assert f.N == pytest.approx(-0.2928932188134524, abs=1e-12)
    assert f.M_t == pytest.approx(1.0j, abs=1e-15)
    assert f.N_x == 0.0
    assert f.N_xx == pytest.approx(-np.sqrt(0.5), abs=1e-15)


def test_appendix_factors_negative_denominator_and_identity():
    rng = np.random.default_rng(5)
    for a in [0.05, 0.25, 0.45]:
        p = derive_params(a)
        for _ in range(50):
            t = rng.uniform(-4.0, 4.0)
            x = rng.uniform(0.0, p.period)
            f = appendix_factors(p, t, x)
            assert f.N < 0.0
            lhs = 1.0 + f.M / f.N
            rhs = akhmediev(p, t, x) * complex(np.cos(t), -np.sin(t))
            assert abs(lhs - rhs) < 1e-13


def test_appendix_partials_match_finite_differences():
    p = derive_params(0.3)
    t, x = 0.7, 1.3
    h = 1e-6

    def M(tt):
        return appendix_factors(p, tt, x).M

    def N(tt, xx):
        return appendix_factors(p, tt, xx).N

    f = appendix_factors(p, t, x)
    assert f.M_t == pytest.approx((M(t + h) - M(t - h)) / (2 * h), rel=1e-6)
    assert f.N_t == pytest.approx((N(t + h, x) - N(t - h, x)) / (2 * h), rel=1e-6)
    assert f.N_x == pytest.approx((N(t, x + h) - N(t, x - h)) / (2 * h), rel=1e-6)
    assert f.N_xx == pytest.approx((N(t, x + h) - 2 * N(t, x) + N(t, x - h)) / h**2, rel=1e-3)
    # third and fourth derivatives: reuse the cosine structure instead of noisy FD
    assert f.N_xxx == pytest.approx(-p.alpha**2 * f.N_x, rel=1e-12)
    assert f.N_xxxx == pytest.approx(-p.alpha**2 * f.N_xx, rel=1e-12)
    assert f.partials["M_t"] == f.M_t


def test_longdouble_path_consistent_with_double():
    p = derive_params(0.25)
    x64 = np.linspace(0.0, p.period, 16, endpoint=False)
    xld = x64.astype(np.longdouble)
    v64 = akhmediev(p, 0.7, x64)
    vld = akhmediev(p, 0.7, xld)
    assert vld.dtype == np.clongdouble
    assert np.max(np.abs(v64 - vld.astype(complex))) < 1e-13
