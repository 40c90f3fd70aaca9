import math

import numpy as np
import pytest

import radialgate as rg

FOUR_PI = 4.0 * math.pi


def grid_through(r_min, probe, r_max_at_least, h_target):
    """Uniform grid whose node set contains the probe radius exactly."""
    k = max(int(round((probe - r_min) / h_target)), 8)
    h = (probe - r_min) / k
    n = k + int(math.ceil((r_max_at_least - probe) / h)) + 1
    return rg.RadialGrid(r_min, r_min + (n - 1) * h, n)


def test_residual_constant_profile():
    grid = grid_through(1e-3, 0.1, 0.12, 1e-3)
    rep = rg.numeric_delta_residual(np.ones(grid.n_points), grid, 0.1)
    assert rep.integral == pytest.approx(-FOUR_PI, rel=5e-4)
    assert rep.predicted == pytest.approx(-FOUR_PI, rel=1e-12)
    assert rep.relative_error < 5e-4
    assert rep.probe_radius == pytest.approx(0.1, abs=1e-12)


def test_residual_linear_profile_vanishes():
    grid = grid_through(1e-3, 0.1, 0.12, 1e-3)
    rep = rg.numeric_delta_residual(grid.nodes(), grid, 0.1)
    assert abs(rep.integral) < 1e-12


def test_residual_cos_converges_second_order():
    errs = []
    for m in (1, 2):
        grid = grid_through(1e-3, 0.3, 0.35, 4e-4 / m)
        rep = rg.numeric_delta_residual(np.cos(grid.nodes()), grid, 0.3)
        errs.append(abs(rep.integral + FOUR_PI))
    assert errs[1] < errs[0]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(2.0, abs=0.5)


def test_residual_reconciles_corrected_identity():
    # integral + 4 pi u(0) -> 0 with the extrapolated origin value
    for f in (np.cos, lambda r: np.exp(-r), lambda r: 1 + r**2):
        errs = []
        for m in (1, 2):
            grid = grid_through(1e-3, 0.5, 0.6, 4e-4 / m)
            rep = rg.numeric_delta_residual(f(grid.nodes()), grid, 0.5)
            errs.append(abs(rep.integral - rep.predicted))
        assert 1.5 <= math.log2(errs[0] / errs[1]) <= 2.5


def test_residual_grid_too_coarse():
    grid = rg.RadialGrid(1e-3, 0.2, 32)
    with pytest.raises(rg.GridTooCoarse):
        rg.numeric_delta_residual(np.ones(32), grid, 4 * grid.spacing * 0.9)
    with pytest.raises(rg.DomainError):
        rg.numeric_delta_residual(np.ones(32), grid, 0.21)


def test_residual_convention_switch():
    grid = grid_through(1e-3, 0.1, 0.12, 1e-3)
    u = np.ones(grid.n_points)
    rep4 = rg.numeric_delta_residual(u, grid, 0.1, convention="4pi")
    rep2 = rg.numeric_delta_residual(u, grid, 0.1, convention="2pi")
    assert rep2.predicted == pytest.approx(2.0 * rep4.predicted, rel=1e-12)
    assert rep2.integral == rep4.integral  # only the prediction changes
    with pytest.raises(rg.DomainError):
        rg.numeric_delta_residual(u, grid, 0.1, convention="8pi")


def test_report_requires_probe_at_least_4h():
    with pytest.raises(rg.GridTooCoarse):
        rg.ResidualReport(
            probe_radius=0.003,
            integral=0.0,
            predicted=0.0,
            relative_error=0.0,
            grid_spacing=1e-3,
        )


def test_extrapolate_to_origin_quadratic_exact():
    r = np.array([0.01, 0.02, 0.03])
    u = 2.0 - 3.0 * r + 5.0 * r**2
    from radialgate.deltaprobe import extrapolate_to_origin

    assert extrapolate_to_origin(r, u) == pytest.approx(2.0, abs=1e-14)


# ---------------------------------------------------------------------------
# pointwise identity defect
# ---------------------------------------------------------------------------


def test_identity_defect_r_squared_exact():
    grid = rg.RadialGrid(0.3, 2.0, 1701)
    d = rg.identity_defect_away_from_origin(grid.nodes() ** 2, grid, 0.5)
    assert d < 5e-9  # both stencils are exact; only rounding remains


def test_identity_defect_sin_bound_by_truncation_oracle():
    # estimate the O(h^2) constant from a coarser grid, then check the bound
    grids = [rg.RadialGrid(0.3, 2.0, n) for n in (851, 1701)]
    defects = [
        rg.identity_defect_away_from_origin(np.sin(g.nodes()), g, 0.5) for g in grids
    ]
    c_est = defects[0] / grids[0].spacing ** 2
    assert defects[1] <= 1.2 * c_est * grids[1].spacing ** 2
    assert defects[1] < 1e-4  # h = 1e-3 scale


def test_identity_defect_second_order_ratio():
    for f in (np.sin, lambda r: r * np.exp(-r)):
        defects = []
        for n in (426, 851):
            g = rg.RadialGrid(0.3, 2.0, n)
            defects.append(rg.identity_defect_away_from_origin(f(g.nodes()), g, 0.5))
        assert 3.5 <= defects[0] / defects[1] <= 4.5


def test_identity_defect_harmonic_profile():
    # u = 1 gives w = 1/r, annihilated by the radial Laplacian away from 0;
    # the flux stencil leaves a truncation h^2/(2 r^5), largest at r_low
    defects = []
    for n in (426, 851):
        g = rg.RadialGrid(0.3, 2.0, n)
        defects.append(rg.identity_defect_away_from_origin(np.ones(n), g, 0.5))
    h0 = rg.RadialGrid(0.3, 2.0, 426).spacing
    assert defects[0] == pytest.approx(h0**2 / (2 * 0.5**5), rel=0.05)
    assert 3.5 <= defects[0] / defects[1] <= 4.5


def test_identity_defect_r_low_validation():
    grid = rg.RadialGrid(0.3, 2.0, 100)
    with pytest.raises(rg.DomainError):
        rg.identity_defect_away_from_origin(np.ones(100), grid, 0.3)


# ---------------------------------------------------------------------------
# closed-form small-sphere bracket
# ---------------------------------------------------------------------------


def test_asymptotic_examples():
    value, cls = rg.asymptotic_origin_limit(1.0, 0, 0.0, 0.0, 1.0, -0.5, 0.1)
    assert cls == rg.Zero()
    _, cls = rg.asymptotic_origin_limit(2.0, 1, 0.0, 0.0, 1.0, 1.0, 0.1)
    assert cls == rg.Zero()  # first coefficient cancels: s(s-1) = l(l+1)
    _, cls = rg.asymptotic_origin_limit(0.8, 0, 3.0, 0.1, 1.0, -0.5, 0.1)
    assert cls == rg.Infinite()


def test_asymptotic_value_matches_brute_force_quadrature():
    # independent oracle: integrate the defining integrals numerically
    from scipy.integrate import quad

    s, l, n, g, m, e, a = 1.3, 1, 1.5, 0.4, 1.2, -0.7, 0.3
    value, _ = rg.asymptotic_origin_limit(s, l, n, g, m, e, a)
    term1 = quad(lambda r: s * (s - 1) * r ** (s - 1), 0, a)[0]
    term2 = quad(lambda r: -l * (l + 1) * r ** (s - 1), 0, a)[0]
    term3 = quad(lambda r: 2 * m * (e - g * r**-n) * r ** (s + 1), 0, a)[0]
    assert value == pytest.approx(term1 + term2 + term3, rel=1e-9)


def test_asymptotic_log_cases():
    with pytest.raises(rg.LogCase):
        rg.asymptotic_origin_limit(0.0, 0, 1.0, 0.5, 1.0, -0.5, 0.1)
    with pytest.raises(rg.LogCase):
        rg.asymptotic_origin_limit(1.0, 0, 3.0, 0.5, 1.0, -0.5, 0.1)  # s + 2 - n = 0
    with pytest.raises(rg.LogCase):
        rg.asymptotic_origin_limit(0.0, 1, 1.0, 0.0, 1.0, -0.5, 0.1)
    with pytest.raises(rg.LogCase):
        rg.asymptotic_origin_limit(-2.0, 0, 1.0, 0.0, 1.0, -0.5, 0.1)


def test_asymptotic_s_zero_free_case_finite():
    value, cls = rg.asymptotic_origin_limit(0.0, 0, 0.0, 0.0, 1.0, -0.5, 0.2)
    assert isinstance(cls, rg.Finite)
    assert cls.value == pytest.approx(-1.0)
    assert value == pytest.approx(-1.0 - 0.5 * 0.04)


def test_min_exponent_bound():
    assert rg.min_exponent_bound(3.0) == pytest.approx(1.0)
    assert rg.min_exponent_bound(2.0) == pytest.approx(0.0)
    assert rg.min_exponent_bound(0.0) == pytest.approx(-2.0)
    with pytest.raises(rg.DomainError):
        rg.min_exponent_bound(-1.0)


def test_classification_sweep_sample():
    rng = np.random.default_rng(21)
    checked = 0
    while checked < 200:
        s = float(rng.uniform(-3.0, 4.0))
        n = float(rng.uniform(0.0, 4.0))
        l = int(rng.integers(0, 4))
        g = float(rng.uniform(-2.0, 2.0))
        e = float(rng.uniform(-2.0, 2.0))
        m = float(rng.uniform(0.5, 2.0))
        if (abs(s) < 0.05 or abs(s + 2 - n) < 0.05 or abs(s + 2) < 0.05
                or abs(g) < 0.05 or abs(e) < 0.05
                or abs(s * (s - 1) - l * (l + 1)) < 0.05):
            continue
        _, cls = rg.asymptotic_origin_limit(s, l, n, g, m, e, 0.05)
        expect_zero = s > max(0.0, n - 2.0)
        expect_infinite = (s < 0.0) or (s + 2.0 - n < 0.0)
        assert isinstance(cls, rg.Zero) == expect_zero
        assert isinstance(cls, rg.Infinite) == expect_infinite
        checked += 1


def test_residual_report_roundtrip():
    grid = grid_through(1e-3, 0.1, 0.12, 1e-3)
    rep = rg.numeric_delta_residual(np.cos(grid.nodes()), grid, 0.1)
    assert rg.ResidualReport.from_dict(rep.to_dict()) == rep
