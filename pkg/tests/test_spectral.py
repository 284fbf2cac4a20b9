import itertools
import random

import numpy as np
import pytest

from lcwb import linalg as la
from lcwb.cohomology import cech_local_cohomology
from lcwb.errors import NonFunctorialTransitions, PluginWithoutBicomplex
from lcwb.graded import box
from lcwb.ideal import Ideal
from lcwb.module import ModuleObject, random_monomial_ideal
from lcwb.poly import PolynomialRing
from lcwb.spectral import (CechPlugin, ColimPlugin, FinitePoset, build_bicomplex_and_pages, build_poset,
                           cech_transition_maps, convergence_report, degeneration_criterion, e2_from_plugin,
                           roos_chain_complex, roos_cohomology, roos_homology)

from conftest import ideal

P = 32003


def test_poset_examples(R2, R3):
    x, y = R2.gens()
    pos = build_poset([ideal(R2, x), ideal(R2, y)])
    assert pos.size == 3
    assert {str(q) for q in pos.ideals} == {str(ideal(R2, x)), str(ideal(R2, y)), str(ideal(R2, x, y))}
    ix = {str(q): k for k, q in enumerate(pos.ideals)}
    a, b, top = ix[str(ideal(R2, x))], ix[str(ideal(R2, y))], ix[str(ideal(R2, x, y))]
    # p <= q iff I_p contains I_q, so the sum (x, y) lies below both members
    assert not pos.leq(a, b) and not pos.leq(b, a)
    assert pos.leq(top, a) and pos.leq(top, b)
    assert pos.intersection == ideal(R2, x * y)
    assert build_poset([ideal(R2, x), ideal(R2, x)]).size == 1
    x, y, z = R3.gens()
    pos = build_poset([ideal(R3, x, y), ideal(R3, y, z)])
    assert pos.size == 3 and pos.ideals[0] == ideal(R3, x, y, z)


def test_poset_generator_lists_shrink(R3):
    x, y, z = R3.gens()
    pos = build_poset([ideal(R3, x), ideal(R3, y), ideal(R3, z), ideal(R3, x, y)])
    for i, j in itertools.product(range(pos.size), repeat=2):
        if pos.leq(i, j):
            assert set(pos.members[j]) <= set(pos.members[i])
            assert set(pos.gen_lists[j]) <= set(pos.gen_lists[i])


def _constant(poset, d):
    return [d] * poset.size, lambda i, j: la.identity(d)


def test_roos_examples():
    one = FinitePoset(["p"], lambda i, j: i == j)
    r = roos_homology(one, [3], lambda i, j: la.identity(3), P)
    assert r.dims == {0: 3} and r.colimit_dim == 3
    vee = FinitePoset(["p", "q", "r"], lambda i, j: i == j or j == 2)
    dims, tr = _constant(vee, 2)
    r = roos_homology(vee, dims, tr, P)
    assert r.dims[0] == 2 and r.dims[1] == 0 and r.colimit_dim == 2
    # supported on the maximal node only
    dims = [0, 0, 2]
    r = roos_homology(vee, dims, lambda i, j: la.zeros(dims[j], dims[i]), P)
    assert r.dims == {0: 2, 1: 0} and r.colimit_dim == 2
    # supported on a lower node with zero maps: it dies in the colimit
    dims = [2, 0, 0]
    r = roos_homology(vee, dims, lambda i, j: la.zeros(dims[j], dims[i]), P)
    assert r.dims == {0: 0, 1: 0} and r.colimit_dim == 0


def test_roos_two_bottoms_no_top():
    # two incomparable points: L_0 is the direct sum, nothing higher
    two = FinitePoset(["p", "q"], lambda i, j: i == j)
    r = roos_homology(two, [1, 1], lambda i, j: la.identity(1), P)
    assert r.dims == {0: 2}


def test_roos_circle_has_l1():
    # a, b < c, d: the order complex is a circle, so the constant functor has L_1 = W
    sq = FinitePoset(["a", "b", "c", "d"], lambda i, j: i == j or (i < 2 <= j))
    dims, tr = _constant(sq, 1)
    r = roos_homology(sq, dims, tr, P)
    assert r.dims[0] == 1 and r.dims[1] == 1 and r.boundary_squares_zero


def test_roos_cohomology_constant():
    vee = FinitePoset(["p", "q", "r"], lambda i, j: i == j or j == 2)
    dims, tr = _constant(vee, 2)
    assert roos_cohomology(vee, dims, tr, P) == {0: 2, 1: 0}


def test_roos_rejects_nonfunctorial():
    chain = FinitePoset(["a", "b", "c"], lambda i, j: i <= j)
    maps = {(0, 1): np.array([[1]]), (1, 2): np.array([[1]]), (0, 2): np.array([[2]])}
    with pytest.raises(NonFunctorialTransitions):
        roos_homology(chain, [1, 1, 1], lambda i, j: maps[(i, j)], P)


def test_roos_boundary_squares_random():
    rng = np.random.default_rng(3)
    chain = FinitePoset(list("abcd"), lambda i, j: i <= j)
    base = [rng.integers(0, 5, size=(2, 2)) for _ in range(3)]

    def tr(i, j):
        m = la.identity(2)
        for k in range(i, j):
            m = la.matmul(base[k], m, P)
        return m

    _, _, mats = roos_chain_complex(chain, [2] * 4, tr, P)
    for l in range(1, 3):
        assert not la.matmul(mats[l], mats[l + 1], P).any()


def test_cech_transition_examples(R2):
    x, y = R2.gens()
    pos = build_poset([ideal(R2, x), ideal(R2, y)])
    plugin = cech_transition_maps(pos, ModuleObject.free(R2, 1), degrees=box(-2, 1, 2))
    top = 0
    assert pos.ideals[top] == ideal(R2, x, y)
    a = (-1, 0)
    xi = next(i for i, q in enumerate(pos.ideals) if q == ideal(R2, x))
    # top node (x, y) has the longer generator list; its H^1 at (-1, 0) is 0 while H^1_{(x)} is 1
    assert plugin.value_dim(top, 1, a) == 0 and plugin.value_dim(xi, 1, a) == 1
    m = plugin.transition(xi, xi, 1, a)
    assert np.array_equal(m, la.identity(m.shape[0]))


def test_mv_example():
    ring = PolynomialRing(["x", "y", "z", "w"])
    x, y, z, w = ring.gens()
    a, b = Ideal(ring, [x, y]), Ideal(ring, [z, w])
    m = ModuleObject.free(ring, 1)
    target = (-1, -1, -1, -1)
    degs = [target, (-1, -1, 0, 0), (0, 0, -1, -1), (-1, 0, -1, 0)]
    ss = build_bicomplex_and_pages(CechPlugin(build_poset([a, b]), m), m, degs)
    assert {k: v for k, v in ss.page(2, target).items() if v} == {(-1, 4): 1}
    assert {k: v for k, v in ss.page(2, (-1, -1, 0, 0)).items() if v} == {(0, 2): 1}
    assert ss.e_inf_total(3, target) == 1
    inter = Ideal(ring, [x * z, x * w, y * z, y * w])
    cech = cech_local_cohomology(m, inter, degs, list(range(5)))
    assert cech.dim(3, target) == 1
    for d in degs:
        for n in range(5):
            assert ss.e_inf_total(n, d) == cech.dim(n, d)
    assert convergence_report(ss)["passed"]


def test_single_ideal_collapses(R2):
    x, y = R2.gens()
    m = ModuleObject.cyclic(ideal(R2, x * y ** 2))
    degs = box(-2, 2, 2)
    ss = build_bicomplex_and_pages(CechPlugin(build_poset([ideal(R2, x, y)]), m), m, degs)
    c = cech_local_cohomology(m, [x, y], degs, [0, 1, 2])
    for a in degs:
        page = {k: v for k, v in ss.page(2, a).items() if v}
        assert all(s == 0 for s, _ in page)
        assert all(page.get((0, j), 0) == c.dim(j, a) for j in range(3))


def test_principal_product_example(R2):
    x, y = R2.gens()
    m = ModuleObject.free(R2, 1)
    degs = box(-2, 2, 2)
    ss = build_bicomplex_and_pages(CechPlugin(build_poset([ideal(R2, x), ideal(R2, y)]), m), m, degs)
    c = cech_local_cohomology(m, [x * y], degs, [0, 1, 2])
    for a in degs:
        for n in range(3):
            assert ss.e_inf_total(n, a) == (c.dim(n, a) or 0)


def test_zero_module(R2):
    x, y = R2.gens()
    m = ModuleObject.cyclic(ideal(R2, 1))
    ss = build_bicomplex_and_pages(CechPlugin(build_poset([ideal(R2, x), ideal(R2, y)]), m), m, box(-1, 1, 2))
    rep = convergence_report(ss)
    assert rep["passed"] and all(r["e_inf"] == 0 for r in rep["rows"])


@pytest.mark.parametrize("seed", range(5))
def test_e2_independent_of_generator_order(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y"])
    fam = [random_monomial_ideal(ring, rng, 2, 2) for _ in range(2)]
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 2, 2))
    pos = build_poset(fam)
    degs = box(-2, 1, 2)
    base = build_bicomplex_and_pages(CechPlugin(pos, m), m, degs, abutment=False)
    order = list(range(len(pos.master)))[::-1]
    perm = build_bicomplex_and_pages(CechPlugin(pos, m, order=order), m, degs, abutment=False)
    for a in degs:
        clean = lambda pg: {k: v for k, v in pg.items() if v}
        assert clean(base.page(2, a)) == clean(perm.page(2, a))


@pytest.mark.parametrize("seed", range(5))
def test_convergence_random(seed):
    rng = random.Random(40 + seed)
    ring = PolynomialRing(["x", "y"])
    fam = [random_monomial_ideal(ring, rng, 2, 2) for _ in range(rng.choice([2, 3]))]
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 2, 2))
    ss = build_bicomplex_and_pages(CechPlugin(build_poset(fam), m), m, box(-2, 2, 2))
    rep = convergence_report(ss)
    assert rep["passed"], rep["mismatches"][:3]


def test_nonzero_j_checks(R2):
    x, y = R2.gens()
    m = ModuleObject.cyclic(ideal(R2, x ** 2 * y))
    plugin = CechPlugin(build_poset([ideal(R2, x), ideal(R2, x * y)]), m, ideal(R2, y))
    ss = build_bicomplex_and_pages(plugin, m, box(-2, 1, 2))
    rep = convergence_report(ss)
    assert all(rep["checks"].values())
    assert "readings_differ" in ss.meta


def test_degeneration_criterion():
    assert degeneration_criterion({(0, 2): 1, (-1, 4): 1})
    assert not degeneration_criterion({(-2, 3): 1, (0, 2): 1})
    assert degeneration_criterion({})


def test_colim_plugin(R2):
    x, y = R2.gens()
    m = ModuleObject.free(R2, 1)
    pos = build_poset([ideal(R2, x), ideal(R2, y)])
    plugin = ColimPlugin("Gamma_V", pos, m, ModuleObject.free(R2, 1), 2)
    with pytest.raises(PluginWithoutBicomplex):
        build_bicomplex_and_pages(plugin, m, [(-1, -1)])
    out = e2_from_plugin(plugin, [(-1, -1), (-1, 0), (0, 0)])
    assert not out["unstabilized"]
    for a in out["e2"]:
        if out["degenerate"][a]:
            assert out["converges"][a]
    with pytest.raises(ValueError):
        ColimPlugin("Other", pos, m, m, 1)
