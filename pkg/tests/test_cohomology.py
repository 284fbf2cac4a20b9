import random

import pytest

from lcwb.cohomology import (CechComplex, ass_finiteness_experiment, cech_local_cohomology, colim_ext_route,
                             torsionness_probe, two_ideal_cohomology, window_start)
from lcwb.graded import box
from lcwb.ideal import Ideal
from lcwb.module import ModuleObject, SubobjectHandle, quotient_object, random_monomial_ideal
from lcwb.poly import PolynomialRing
from lcwb.primes import gamma_torsion

import oracles
from conftest import ideal

BOX2 = box(-3, 3, 2)


def test_top_cohomology_of_plane(R2):
    x, y = R2.gens()
    t = cech_local_cohomology(ModuleObject.free(R2, 1), [x, y], BOX2, [0, 1, 2])
    for a in BOX2:
        assert t.dim(0, a) == 0 and t.dim(1, a) == 0
        assert t.dim(2, a) == oracles.local_cohomology_dim(frozenset(), a, 2)
        assert t.dim(2, a) == (1 if max(a) <= -1 else 0)


def test_line_examples(R1):
    x = R1.var(0)
    degs = box(-3, 3, 1)
    t = cech_local_cohomology(ModuleObject.free(R1, 1), [x], degs, [0, 1])
    assert t.dim(1, (-1,)) == 1 and t.dim(1, (0,)) == 0
    assert all(t.dim(0, a) == 0 for a in degs)
    t = cech_local_cohomology(ModuleObject.cyclic(ideal(R1, x)), [x], degs, [0, 1])
    assert t.dim(0, (0,)) == 1 and sum(t.dim(1, a) for a in degs) == 0


def test_d_squared_and_term_counts(R3):
    x, y, z = R3.gens()
    m = ModuleObject.cyclic(ideal(R3, x * y, z ** 2))
    cx = CechComplex(m.graded(), [x, y, z])
    assert [len(cx.subsets[k]) for k in range(4)] == [1, 3, 3, 1]
    for a in box(-2, 1, 3):
        assert cx.check_d_squared(a)


def test_colim_examples(R1, R2):
    x = R1.var(0)
    free = ModuleObject.free(R1, 1)
    t = colim_ext_route(free, free, ideal(R1, x), [1], [(-1,)])
    assert t.dim(1, (-1,)) == 1 and t.meta["t_star"][(1, (-1,))] >= 2
    t = colim_ext_route(ModuleObject.cyclic(ideal(R1, x)), free, ideal(R1, x), [0], box(-2, 2, 1))
    assert t.dim(0, (0,)) == 1 and t.dim(0, (1,)) == 0
    x, y = R2.gens()
    f2 = ModuleObject.free(R2, 1)
    t = colim_ext_route(f2, f2, ideal(R2, x, y), [2], [(-1, -1), (0, -1)])
    assert t.dim(2, (-1, -1)) == 1 and t.dim(2, (0, -1)) == 0


def test_window_start():
    assert window_start((0, 0), (0, 0)) == 1
    assert window_start((2, 1), (-1, 3)) == 1 + 3


@pytest.mark.parametrize("seed", range(6))
def test_routes_agree(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y"])
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 2, 2))
    i = random_monomial_ideal(ring, rng, 2, 2)
    degs = box(-2, 2, 2)
    a = cech_local_cohomology(m, i, degs, [0, 1, 2])
    b = colim_ext_route(m, ModuleObject.free(ring, 1), i, [0, 1, 2], degs)
    assert a.agrees_with(b)
    assert not b.meta["unstabilized"]


def test_two_ideal_examples(R2):
    x, y = R2.gens()
    degs = box(-2, 2, 2)
    m = ModuleObject.cyclic(ideal(R2, x ** 2, y ** 2))
    t = two_ideal_cohomology(m, ideal(R2, x), ideal(R2, x), [0, 1, 2], degs)
    assert all(t.dim(i, a) == 0 for i in (1, 2) for a in degs)
    assert all(t.dim(0, a) == m.graded().dim(a) for a in degs)
    m = ModuleObject.cyclic(ideal(R2, x * y))
    t = two_ideal_cohomology(m, ideal(R2, x), ideal(R2), [0, 1], degs)
    g = SubobjectHandle(m, [[y]]).as_module().graded()
    assert all(t.dim(0, a) == g.dim(a) for a in degs)
    # H^1 is computed on R/(y) where x acts freely: R_x/R in x-degrees <= -1, y-degree 0
    want = {a for a in degs if a[0] <= -1 and a[1] == 0}
    assert {a for a in degs if t.dim(1, a)} == want


@pytest.mark.parametrize("seed", range(10))
def test_two_ideal_matches_cech_when_j_zero(seed):
    rng = random.Random(50 + seed)
    ring = PolynomialRing(["x", "y"])
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 3, 2))
    i = random_monomial_ideal(ring, rng, 2, 2)
    degs = box(-2, 2, 2)
    a = two_ideal_cohomology(m, i, Ideal(ring, []), [0, 1, 2], degs)
    b = cech_local_cohomology(m, i, degs, [0, 1, 2])
    assert a.dims == b.dims


@pytest.mark.parametrize("seed", range(8))
def test_vanishing_on_torsion_and_euler_characteristic(seed):
    rng = random.Random(70 + seed)
    ring = PolynomialRing(["x", "y"])
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 3, 2))
    i = random_monomial_ideal(ring, rng, 2, 2)
    j = random_monomial_ideal(ring, rng, 1, 2)
    degs = box(-2, 2, 2)
    gam = gamma_torsion(m, i, j)
    quot, _ = quotient_object(m, gam)
    idx = [0, 1, 2]
    tables = [cech_local_cohomology(x, i, degs, idx) for x in (gam.as_module(), m, quot)]
    for a in degs:
        chi = [sum((-1) ** k * t.dim(k, a) for k in idx) for t in tables]
        assert chi[0] - chi[1] + chi[2] == 0
    t = two_ideal_cohomology(quot, i, j, idx, degs)
    assert all(t.dim(0, a) == 0 for a in degs)


def test_readings_recorded(R2):
    x, y = R2.gens()
    m = ModuleObject.free(R2, 1)
    t = two_ideal_cohomology(m, ideal(R2, x, y), ideal(R2, y), [0, 1, 2], box(-2, 1, 2))
    assert t.meta["k_prime"] == str(ideal(R2, x))
    # literal reading: Γ = 0 and H^1_{(x,y)}(R) = 0; graded-derived reading is H^1_{(x)}(R) = R_x/R
    assert t.dim(1, (-1, 0)) == 0
    assert t.meta["graded_derived"].dim(1, (-1, 0)) == 1
    assert (1, (-1, 0)) in t.meta["readings_differ"]


def test_torsionness_examples(R1, R2):
    x, y = R2.gens()
    t = cech_local_cohomology(ModuleObject.free(R2, 1), [x, y], box(-3, 0, 2), [2])
    r = torsionness_probe(t, ideal(R2, x, y), ideal(R2))
    assert r["passed"] and r["checked_elements"] > 0
    x = R1.var(0)
    t = cech_local_cohomology(ModuleObject.free(R1, 1), [x], box(-3, 0, 1), [1])
    assert torsionness_probe(t, ideal(R1, x), ideal(R1))["passed"]


def test_ass_finiteness_examples(R2):
    x, y = R2.gens()
    degs = box(-2, 1, 2)
    zero = ideal(R2)
    r = ass_finiteness_experiment(ModuleObject.free(R2, 1), ideal(R2, x, y), zero, 2, degs)
    assert r["detected"] == [str(ideal(R2, x, y))] and r["passed"]
    r = ass_finiteness_experiment(ModuleObject.cyclic(ideal(R2, x)), ideal(R2, x), zero, 0, degs)
    assert r["detected"] == [str(ideal(R2, x))]
    r = ass_finiteness_experiment(ModuleObject.free(R2, 1), ideal(R2, x), zero, 1, degs)
    assert set(r["detected"]) <= {str(ideal(R2, x)), str(ideal(R2, x, y))} and r["passed"]
