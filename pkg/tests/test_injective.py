import itertools

import pytest

from lcwb.errors import UnsupportedPrime
from lcwb.graded import box
from lcwb.injective import (RationalFunction, build_hull_model, catalogue, decomposition_check, essential_check,
                            gamma_on_hull, hom_exactness_on_hull, localize_hull)
from lcwb.module import ModuleObject
from lcwb.poly import PolynomialRing
from lcwb.primes import monomial_prime

from conftest import ideal


def test_maximal_model_dims(R2):
    x, y = R2.gens()
    e = build_hull_model(ideal(R2, x, y))
    assert e.dim((-2, -1)) == 1 and e.dim((1, -1)) == 0 and e.dim((0, 0)) == 1
    for a in box(-3, 3, 2):
        assert e.dim(a) == (1 if max(a) <= 0 else 0)


def test_inverse_polynomials_one_variable(R1):
    x = R1.var(0)
    e = build_hull_model(ideal(R1, x))
    # x is surjective: every piece at a <= -1 is hit from a - 1
    for a in range(-5, 0):
        assert e.mult((a - 1,), (1,)).any()
    # locally nilpotent: x^(1-a) kills degree a
    for a in range(-5, 1):
        assert not e.mult((a,), (1 - a,)).any()


def test_fraction_field_model(R1):
    x = R1.var(0)
    e = build_hull_model(ideal(R1))
    for a in range(-4, 5):
        assert e.dim((a,)) == 1
        assert e.mult((a,), (3,)).any()
    r = RationalFunction.of(x + 1)
    assert (r * r.inverse()).is_one()


def test_unsupported_primes(R2, R3):
    x, y, z = R3.gens()
    with pytest.raises(UnsupportedPrime):
        build_hull_model(ideal(R3, x))
    with pytest.raises(UnsupportedPrime):
        build_hull_model(ideal(R2))
    with pytest.raises(UnsupportedPrime):
        build_hull_model(ideal(R2, R2.var(0) * R2.var(1)))
    assert build_hull_model(ideal(R3, x, y, z)).dim((-1, -1, 0)) == 1


def test_catalogue_sizes():
    assert len(catalogue(PolynomialRing(["x"]))) == 2
    assert len(catalogue(PolynomialRing(["x", "y"]))) == 3
    assert len(catalogue(PolynomialRing(["x", "y", "z"]))) == 1


def test_essential_and_socle():
    for n in (1, 2):
        ring = PolynomialRing(["x", "y"][:n])
        for model in catalogue(ring):
            assert essential_check(model, box(-3, 3, n))
            rep = decomposition_check([model])
            assert rep["passed"]


def test_gamma_on_hull_examples(R1, R2):
    x = R1.var(0)
    zero = ideal(R1)
    r = gamma_on_hull(build_hull_model(ideal(R1, x)), ideal(R1, x), zero)
    assert r.predicted == "Identity" and r.agreement
    r = gamma_on_hull(build_hull_model(ideal(R1)), ideal(R1, x), zero)
    assert r.predicted == "Zero" and r.agreement
    x, y = R2.gens()
    r = gamma_on_hull(build_hull_model(ideal(R2, x, y)), ideal(R2, x), ideal(R2, y))
    assert r.predicted == "Identity" and r.agreement


def test_gamma_dichotomy_and_transitions(R2):
    x, y = R2.gens()
    ks = [ideal(R2, x), ideal(R2, y), ideal(R2, x, y), ideal(R2, x * y), ideal(R2, x ** 2, y)]
    js = [ideal(R2), ideal(R2, y), ideal(R2, x * y)]
    for model in catalogue(R2):
        for k, j in itertools.product(ks, js):
            r = gamma_on_hull(model, k, j, box(-3, 3, 2))
            assert r.summary in ("Zero", "Identity") and r.agreement
        # K' ⊆ K with both Identity: same torsion part everywhere
        big = gamma_on_hull(model, ideal(R2, x, y), ideal(R2), box(-3, 3, 2))
        small = gamma_on_hull(model, ideal(R2, x * y), ideal(R2), box(-3, 3, 2))
        if big.summary == small.summary == "Identity":
            assert big.observed == small.observed


def test_localize_hull_examples(R1, R2):
    x = R1.var(0)
    assert localize_hull(build_hull_model(ideal(R1, x)), x).summary == "Zero"
    assert localize_hull(build_hull_model(ideal(R1)), x).summary == "Identity"
    assert localize_hull(build_hull_model(ideal(R1)), x + 1).summary == "Identity"
    x, y = R2.gens()
    r = localize_hull(build_hull_model(ideal(R2, x)), y)
    assert r.summary == "Identity" and r.agreement
    r = localize_hull(build_hull_model(ideal(R2, x)), ("complement", ideal(R2, x)))
    assert r.summary == "Identity" and r.agreement
    r = localize_hull(build_hull_model(ideal(R2, x, y)), ("complement", ideal(R2, x)))
    assert r.summary == "Zero" and r.agreement


def test_localization_dies_iff_torsion(R2):
    x, y = R2.gens()
    for model in catalogue(R2):
        for f in (x, y, x * y, x + y):
            loc = localize_hull(model, f, box(-2, 2, 2))
            gam = gamma_on_hull(model, ideal(R2, f), ideal(R2), box(-2, 2, 2))
            assert (loc.summary == "Zero") == (gam.summary == "Identity")


def test_decomposition_examples(R2):
    x, y = R2.gens()
    m = ideal(R2, x, y)
    rep = decomposition_check([build_hull_model(m), build_hull_model(m, (-1, -2))])
    assert rep["passed"] and len(rep["recovered"]) == 2
    rep = decomposition_check([build_hull_model(ideal(R2, x)), build_hull_model(m)])
    assert rep["passed"]


def test_hom_exactness_examples(R1, R2):
    x, y = R2.gens()
    free = ModuleObject.free(R2, 1)
    assert hom_exactness_on_hull(build_hull_model(ideal(R2, x, y)), free, [[x]], box(-2, 2, 2))["passed"]
    assert hom_exactness_on_hull(build_hull_model(ideal(R2, x)), free, [[R2.one()]], box(-2, 2, 2))["passed"]
    x = R1.var(0)
    assert hom_exactness_on_hull(build_hull_model(ideal(R1)), ModuleObject.free(R1, 1), [[x]])["passed"]
