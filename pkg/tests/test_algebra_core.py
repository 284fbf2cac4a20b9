import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lcwb import linalg as la
from lcwb.groebner import groebner_basis, syzygies
from lcwb.ideal import (Ideal, free_resolution, ideal_ops, intersection, quotient, radical_membership,
                        saturation)
from lcwb.module import ModuleObject, localize, random_monomial_ideal
from lcwb.poly import PolynomialRing

from conftest import ideal

P = 32003


# -- linear algebra over F_p -------------------------------------------------------

@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows, cols, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 7, size=(rows, cols)) % 7
    r = la.rank(a, 7)
    ns = la.nullspace(a, 7)
    assert r + ns.shape[0] == cols
    if ns.shape[0]:
        assert not la.matmul(a, ns.T, 7).any()


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_rank_matches_sympy(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 5, size=(4, 5))
    a[3] = (a[0] + 2 * a[1]) % 5
    dm = sympy.polys.matrices.DomainMatrix.from_list_sympy(4, 5, a.tolist()).convert_to(sympy.GF(5))
    want = dm.rank()
    assert la.rank(a, 5) == want


def test_solve_and_quotient_space():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([5, 6])
    x = la.solve(a, b, 7)
    assert np.array_equal(la.matmul(a, x.reshape(-1, 1), 7).reshape(-1) % 7, b % 7)
    q = la.QuotientSpace(la.identity(3), np.array([[1, 1, 0]]), 7)
    assert q.dim == 2


# -- Gröbner bases ----------------------------------------------------------------

def test_groebner_examples(R2):
    x, y = R2.gens()
    assert groebner_basis([x, x]) == [x]
    assert sorted(map(str, groebner_basis([x + y, y]))) == ["x", "y"]
    gb = groebner_basis([x * y - 1, x ** 2])
    assert len(gb) == 1 and gb[0].is_constant()


def _sympy_gb(polys, names, order="grevlex"):
    syms = sympy.symbols(names)
    exprs = [sympy.sympify(str(f).replace("^", "**")) for f in polys]
    g = sympy.groebner(exprs, *syms, order=order, modulus=P)
    return sorted(str(sympy.Poly(e, *syms, modulus=P).as_expr()) for e in g.exprs)


def _canon_sympy(polys, names):
    syms = sympy.symbols(names)
    return sorted(str(sympy.Poly(sympy.sympify(str(f).replace("^", "**")), *syms, modulus=P).as_expr())
                  for f in polys)


@pytest.mark.parametrize("seed", range(12))
def test_groebner_against_sympy(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y", "z"])
    polys = []
    for _ in range(3):
        f = ring.zero()
        for _ in range(rng.randint(1, 3)):
            e = [rng.randint(0, 2) for _ in range(3)]
            f = f + ring.monomial(e, rng.randint(1, 9))
        polys.append(f)
    ours = groebner_basis(polys)
    assert _canon_sympy(ours, "x y z") == _sympy_gb(polys, "x y z")


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_members_reduce_to_zero(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y"])
    x, y = ring.gens()
    gens = [x ** 2 - y, x * y + rng.randint(1, 5)]
    i = Ideal(ring, gens)
    f = ring.monomial((rng.randint(0, 2), rng.randint(0, 2))) * gens[0] + ring.const(rng.randint(0, 4)) * gens[1]
    assert i.normal_form(f).is_zero()
    assert i.contains(f)


# -- ideal operations -------------------------------------------------------------------

def test_ideal_ops_examples(R2):
    x, y = R2.gens()
    assert ideal_ops(ideal(R2, x), ideal(R2, y), "intersection") == ideal(R2, x * y)
    assert ideal_ops(ideal(R2, x * y), ideal(R2, x), "quotient") == ideal(R2, y)
    assert ideal_ops(ideal(R2, x ** 2 * y), ideal(R2, x), "saturation") == ideal(R2, y)
    assert ideal_ops(ideal(R2, x), ideal(R2, y), "sum") == ideal(R2, x, y)
    assert ideal_ops(ideal(R2, x), ideal(R2, y), "product") == ideal(R2, x * y)
    with pytest.raises(ValueError):
        ideal_ops(ideal(R2, x), ideal(R2, y), "tensor")


def _mono_exps(i):
    return [next(iter(g.terms)) for g in i.gb]


def _in_monomial(e, gens):
    return any(all(a >= b for a, b in zip(e, g)) for g in gens)


def test_intersection_lcm_oracle():
    rng = random.Random(5)
    for _ in range(50):
        ring = PolynomialRing(["x", "y", "z"][: rng.randint(1, 3)])
        i = random_monomial_ideal(ring, rng, 3, 3)
        j = random_monomial_ideal(ring, rng, 3, 3)
        lcms = [tuple(max(a, b) for a, b in zip(e, f)) for e in _mono_exps(i) for f in _mono_exps(j)]
        want = Ideal(ring, [ring.monomial(e) for e in lcms])
        got = intersection(i, j)
        assert got == want
        assert i.contains_ideal(got) and j.contains_ideal(got)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_quotient_and_saturation_laws(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y"])
    i = random_monomial_ideal(ring, rng, 3, 3)
    j = random_monomial_ideal(ring, rng, 2, 2)
    q = quotient(i, j)
    assert i.contains_ideal(q * j)
    s = saturation(i, j)
    assert quotient(s, j) == s


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_radical_membership_brute_force(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y", "z"])
    i = random_monomial_ideal(ring, rng, 3, 3)
    e = [rng.randint(0, 2) for _ in range(3)]
    f = ring.monomial(e)
    gens = _mono_exps(i)
    brute = any(_in_monomial(tuple(t * a for a in e), gens) for t in range(1, 9))
    assert radical_membership(f, i) == brute


def test_radical_membership_examples(R2):
    x, y = R2.gens()
    assert radical_membership(x, ideal(R2, x ** 2))
    assert radical_membership(x + y, ideal(R2, x ** 3, y ** 3))
    assert not radical_membership(x, ideal(R2, y))


# -- syzygies and resolutions -----------------------------------------------------------

def _times(cols, coeffs, ring):
    out = ring.zero()
    for c, f in zip(cols, coeffs):
        out = out + c * f
    return out


def test_syzygy_examples(R2):
    x, y = R2.gens()
    syz = syzygies(R2, 1, [[x], [y]])
    assert len(syz) == 1
    assert _times([x, y], syz[0], R2).is_zero()
    assert {str(syz[0][0]), str(syz[0][1])} in ({"y", "-x"}, {"-y", "x"})
    assert syzygies(R2, 2, [[R2.one(), R2.zero()], [R2.zero(), R2.one()]]) == []
    s2 = syzygies(R2, 1, [[x ** 2], [x * y]])
    assert len(s2) == 1 and _times([x ** 2, x * y], s2[0], R2).is_zero()


def test_free_resolution_examples(R1, R2):
    x = R1.var(0)
    r = free_resolution(R1, 1, [[x]], 3)
    assert r.betti() == [1, 1]
    x, y = R2.gens()
    k = free_resolution(R2, 1, [[x], [y]], 3, [(0, 0)])
    assert k.betti() == [1, 2, 1]
    assert k.check_complex() and k.check_exact()
    m = free_resolution(R2, 1, [[x ** 2], [x * y]], 3, [(0, 0)])
    assert m.betti() == [1, 2, 1]
    assert m.check_complex() and m.check_exact()


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_resolutions_compose_to_zero(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y", "z"])
    i = random_monomial_ideal(ring, rng, 3, 3)
    r = free_resolution(ring, 1, [[g] for g in i.gb], 4, [(0, 0, 0)])
    assert r.check_complex() and r.check_exact()


# -- graded pieces and localization ---------------------------------------------------------

def test_graded_piece_examples(R2):
    x, y = R2.gens()
    assert ModuleObject.free(R2, 1).graded().dim((2, 0)) == 1
    assert ModuleObject.cyclic(ideal(R2, x * y)).graded().dim((1, 1)) == 0
    assert localize(ModuleObject.free(R2, 1), x).graded().dim((-3, 1)) == 1
    assert localize(ModuleObject.free(R2, 1), x).graded().dim((-2, 3)) == 1


def test_localization_examples(R2):
    x, y = R2.gens()
    loc = localize(ModuleObject.cyclic(ideal(R2, x * y)), x)
    assert loc.kernel.contains([y])
    assert loc.graded().dim((-1, 1)) == 0 and loc.graded().dim((-1, 0)) == 1
    assert localize(ModuleObject.cyclic(ideal(R2, x)), x).is_zero()
