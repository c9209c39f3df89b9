"""The three-way verification of the variational characterization."""

import numpy as np
import pytest

from akhlab import (
    SampledField,
    UnderResolvedGridWarning,
    appendix_residual,
    derive_params,
    evaluate_R,
    h_stationarity,
    natural_grid,
    ode_lhs,
    operator_on_field,
    raw_coefficient_values,
    residual_report,
    stokes_field,
    verify_coefficients,
)
from akhlab.exactpoly import WRONG_B_RELATIONS
from akhlab.experiments import random_band_limited


def test_operator_vanishes_on_stokes():
    p = derive_params(0.3)
    g = natural_grid(p, 256)
    r = operator_on_field(stokes_field(g, p.phase_factor), p.alpha**2)
    assert np.max(np.abs(r.values)) < 1e-13


@pytest.mark.parametrize("a,t", [(0.25, 0.0), (0.1, -3.0), (0.4, 2.5)])
def test_residual_small_on_breather(a, t):
    p = derive_params(a)
    rep = residual_report(p, t, natural_grid(p, 512))
    assert rep.sup_norm <= 1e-8
    assert rep.l2_norm <= rep.sup_norm * np.sqrt(p.period)
    assert rep.grid_points == 512


def test_residual_rejects_wrong_grid():
    p = derive_params(0.25)
    from akhlab.spectral import PeriodicGrid

    with pytest.raises(ValueError):
        ode_lhs(p, 0.0, PeriodicGrid(512, 5.0))
    with pytest.raises(ValueError):
        ode_lhs(p, 0.0, PeriodicGrid(64, p.period))


def test_grid_halving_stays_roundoff_dominated():
    # Both grids resolve the field completely, so the residual is the FFT
    # noise floor amplified by k_max^4: refining the grid must not shrink
    # it (that would signal truncation-dominated error) and grows it by
    # roughly (512/256)^4 = 16.
    p = derive_params(0.25)
    r256 = residual_report(p, 0.0, natural_grid(p, 256)).sup_norm
    r512 = residual_report(p, 0.0, natural_grid(p, 512)).sup_norm
    ratio = r512 / r256
    assert 1.0 <= ratio <= 40.0


def test_under_resolved_grid_warns():
    p = derive_params(0.49)
    with pytest.warns(UnderResolvedGridWarning):
        ode_lhs(p, 0.0, natural_grid(p, 128))


def test_non_solution_control():
    p = derive_params(0.25)
    g = natural_grid(p, 512)
    u = SampledField(g, 1.0 + 0.1 * np.cos(p.alpha * g.nodes) + 0j)
    r = operator_on_field(u, p.alpha**2)
    assert np.max(np.abs(r.values)) > 1e-2


def test_stationarity_zero_perturbation():
    p = derive_params(0.3)
    g = natural_grid(p, 256)
    w = SampledField(g, np.zeros(256, dtype=complex))
    res = h_stationarity(p, 0.5, w, [1e-2 * 2.0**-k for k in range(5)])
    assert res.vanishes_to_roundoff
    assert res.slope is None
    assert all(d == 0.0 for d in res.deltas)


def test_stationarity_slope_is_quadratic():
    p = derive_params(0.3)
    g = natural_grid(p, 512)
    rng = np.random.default_rng(21)
    w = random_band_limited(g, rng)
    res = h_stationarity(p, 0.5, w, [1e-2 * 2.0**-k for k in range(5)])
    assert not res.vanishes_to_roundoff
    assert res.slope == pytest.approx(2.0, abs=0.1)


def test_stationarity_wrong_multiplier_control():
    # with the wrong multiplier the first variation survives; a small
    # perturbation amplitude keeps the linear term dominant over the eps range
    p = derive_params(0.3)
    g = natural_grid(p, 512)
    rng = np.random.default_rng(22)
    w = random_band_limited(g, rng, amplitude=0.01)
    res = h_stationarity(
        p, 0.5, w, [1e-2 * 2.0**-k for k in range(6)], multiplier_scale=2.0
    )
    assert res.slope == pytest.approx(1.0, abs=0.2)


def test_R4_vanishes_at_origin():
    for a in (0.1, 0.25, 0.4):
        p = derive_params(a)
        assert evaluate_R(p, 4, 0.0, 0.0) == 0.0


def test_R6_value():
    p = derive_params(0.25)
    # (3/4) (M+N)^3 (conj(M)+N)^2 with M = 1, N = sqrt(1/2) - 1
    val = evaluate_R(p, 6, 0.0, 0.0)
    assert val == pytest.approx(0.75 * np.sqrt(0.5) ** 5, rel=1e-12)
    assert val == pytest.approx(0.1325825214724777, rel=1e-7)


def test_R_index_validated():
    p = derive_params(0.25)
    for bad in (0, 7, -1):
        with pytest.raises(ValueError):
            evaluate_R(p, bad, 0.0, 0.0)


@pytest.mark.parametrize("a", [0.1, 0.25, 0.4])
def test_appendix_sum_matches_operator(a):
    p = derive_params(a)
    grid = natural_grid(p, 256)
    rng = np.random.default_rng(int(a * 1000))
    for t in rng.uniform(-3.0, 3.0, 5):
        field = ode_lhs(p, float(t), grid)
        for j in rng.integers(0, grid.n_points, 8):
            x = float(grid.nodes[j])
            value, scale = appendix_residual(p, float(t), x)
            assert abs(value - field.values[j]) <= 1e-9 * scale


def test_verify_coefficients_all_zero():
    checks = verify_coefficients()
    assert len(checks) == 15
    assert [c.index for c in checks] == list(range(1, 16))
    for c in checks:
        assert c.is_zero
        assert c.residual.is_zero
        assert str(c.residual) == "0"


def test_verify_coefficients_negative_control():
    checks = verify_coefficients(WRONG_B_RELATIONS)
    assert not checks[0].is_zero  # a_1 survives the wrong substitution
    assert str(checks[0].residual) != "0"


def test_raw_coefficient_spot_values():
    # a_1 = (3/2)(-1+alpha^2) beta^2 (-4 a alpha^2 + beta^2) before substitution
    vals = raw_coefficient_values(1.0, 1.0, 1.0)
    assert vals[0] == pytest.approx(0.0, abs=1e-14)
    vals = raw_coefficient_values(4.0, 1.0, 1.0)
    assert vals[0] == pytest.approx(-67.5, rel=1e-14)


def test_raw_coefficients_vanish_under_true_relations():
    for a in (0.1, 0.25, 0.4):
        alpha_sq = 2.0 * (1.0 - 2.0 * a)
        beta_sq = 8.0 * a * (1.0 - 2.0 * a)
        vals = raw_coefficient_values(alpha_sq, beta_sq, a)
        assert max(abs(v) for v in vals) < 1e-12
