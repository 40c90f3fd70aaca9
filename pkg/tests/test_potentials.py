import numpy as np
import pytest

import radialgate as rg


def test_evaluate_examples():
    assert rg.evaluate_potential(rg.Coulomb(1.0), 2.0) == pytest.approx(-0.5)
    assert rg.evaluate_potential(rg.InverseSquare(0.16), 0.5) == pytest.approx(-0.64)
    assert rg.evaluate_potential(
        rg.RegularizedInverseSquare(1.0, 0.1), 0.05
    ) == pytest.approx(-100.0)


def test_evaluate_vectorized():
    r = np.array([0.5, 1.0, 2.0])
    v = rg.evaluate_potential(rg.Coulomb(2.0), r)
    assert np.allclose(v, [-4.0, -2.0, -1.0])


def test_harmonic_mass_enters_evaluation():
    assert rg.evaluate_potential(rg.Harmonic(2.0), 3.0, mass=2.0) == pytest.approx(36.0)


def test_domain_errors_at_origin():
    for p in (rg.Coulomb(1.0), rg.InverseSquare(0.1), rg.PowerLaw(1.0, 3.0)):
        with pytest.raises(rg.DomainError):
            rg.evaluate_potential(p, 0.0)
    # finite-at-origin variants allow r = 0
    assert rg.evaluate_potential(rg.Harmonic(1.0), 0.0) == 0.0
    assert rg.evaluate_potential(
        rg.RegularizedInverseSquare(1.0, 0.1), 0.0
    ) == pytest.approx(-100.0, rel=1e-12)
    with pytest.raises(rg.DomainError):
        rg.evaluate_potential(rg.Harmonic(1.0), -1.0)


def test_harmonic_nonnegative():
    rng = np.random.default_rng(7)
    r = rng.uniform(0.0, 50.0, size=300)
    assert np.all(rg.evaluate_potential(rg.Harmonic(2.5), r) >= 0.0)


def test_classify_examples():
    assert rg.classify_origin(rg.Coulomb(1.0)) == rg.Regular()
    assert rg.classify_origin(rg.InverseSquare(0.16)) == rg.TransitiveSingular(0.16)
    assert rg.classify_origin(rg.PowerLaw(0.1, 3.0)) == rg.StronglySingular(3.0, 0.1)


def test_classify_powerlaw_cases():
    assert rg.classify_origin(rg.PowerLaw(1.0, 1.0)) == rg.Regular()
    assert rg.classify_origin(rg.PowerLaw(0.0, 2.0)) == rg.Regular()
    # attractive 1/r^2 written as a power law carries v0 = -g
    assert rg.classify_origin(rg.PowerLaw(-0.3, 2.0)) == rg.TransitiveSingular(0.3)
    with pytest.raises(rg.Unclassifiable):
        rg.classify_origin(rg.PowerLaw(0.3, 2.0))


def test_classify_repulsive_inverse_square_carries_sign():
    oc = rg.classify_origin(rg.InverseSquare(-0.12))
    assert oc == rg.TransitiveSingular(-0.12)


def test_regularized_always_regular():
    rng = np.random.default_rng(11)
    for _ in range(50):
        v0 = rng.uniform(-5, 5)
        rc = rng.uniform(1e-4, 2.0)
        assert rg.classify_origin(rg.RegularizedInverseSquare(v0, rc)) == rg.Regular()


def test_classify_pure_in_parameters():
    # classification depends only on the variant and its parameters
    p = rg.InverseSquare(0.2)
    assert rg.classify_origin(p) == rg.classify_origin(p)
    rg.RadialGrid(1e-3, 5.0, 100)  # building grids has no effect on it
    assert rg.classify_origin(p) == rg.TransitiveSingular(0.2)


def test_grid_invariants():
    g = rg.RadialGrid(0.5, 2.5, 21)
    assert g.spacing == pytest.approx(0.1)
    r = g.nodes()
    assert r[0] == pytest.approx(0.5) and r[-1] == pytest.approx(2.5)
    assert np.allclose(np.diff(r), g.spacing)
    with pytest.raises(rg.DomainError):
        rg.RadialGrid(0.0, 1.0, 32)
    with pytest.raises(rg.DomainError):
        rg.RadialGrid(1.0, 0.5, 32)
    with pytest.raises(rg.DomainError):
        rg.RadialGrid(0.1, 1.0, 15)


def test_powerlaw_requires_positive_exponent():
    with pytest.raises(rg.DomainError):
        rg.PowerLaw(1.0, 0.0)
    with pytest.raises(rg.DomainError):
        rg.RegularizedInverseSquare(1.0, -0.1)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("coulomb:alpha=1", rg.Coulomb(1.0)),
        ("invsq:v0=0.16", rg.InverseSquare(0.16)),
        ("power:g=0.1,n=3", rg.PowerLaw(0.1, 3.0)),
        ("harmonic:omega=1", rg.Harmonic(1.0)),
        ("invsq-reg:v0=1,rcore=0.1", rg.RegularizedInverseSquare(1.0, 0.1)),
    ],
)
def test_parse_potential(text, expected):
    assert rg.parse_potential(text) == expected
    assert rg.parse_potential(rg.format_potential(expected)) == expected


def test_parse_errors_name_token_and_position():
    with pytest.raises(rg.PotentialParseError, match="position 0"):
        rg.parse_potential("morse:d=1")
    with pytest.raises(rg.PotentialParseError, match="beta"):
        rg.parse_potential("coulomb:beta=1")
    with pytest.raises(rg.PotentialParseError, match="position"):
        rg.parse_potential("power:g=1,n=abc")
    with pytest.raises(rg.PotentialParseError, match="missing"):
        rg.parse_potential("power:g=1")
