import pytest

from lcwb.checks import (hull_catalogue, monomial_ass_oracle, ring_of, run_suite, suite_hull_lemmas, suite_names)
from lcwb.errors import UnknownSuite
from lcwb.ideal import Ideal

import oracles


def test_registered_suites():
    assert set(suite_names()) == {"ass-laws", "torsion-laws", "hull-lemmas", "cohomology-routes",
                                  "spectral-mv", "appendix6"}


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")


def test_hull_lemmas_on_one_variable_catalogue():
    props = suite_hull_lemmas(0, n_values=(1,), pairs_per_ring=16)
    assert props and all(p["passed"] for p in props)
    assert all(p["instances"] > 0 for p in props)
    # both primes of F[x], with shifted copies
    assert {tuple(sorted(m.support)) for m in hull_catalogue((1,))} == {(), (0,)}


def test_package_oracle_matches_test_oracle():
    ring = ring_of(3)
    x, y, z = ring.gens()
    for gens in ([x * y, y * z], [x ** 2, x * y, y ** 3], [x * y * z, x ** 2], [x ** 3, y ** 2 * z, x * z ** 2]):
        i = Ideal(ring, gens)
        exps = [next(iter(g.terms)) for g in i.gb]
        assert monomial_ass_oracle(i) == oracles.ass_supports(exps, 3)


def test_ass_laws_suite_passes():
    rep = run_suite("ass-laws", 0)
    assert rep["passed"], [p for p in rep["properties"] if not p["passed"]]
