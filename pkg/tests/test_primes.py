import random

import pytest
from hypothesis import given, settings, strategies as st

from lcwb.errors import NotIntoIdealTimesModule, NotPrime, PreconditionFailed, ZeroModule
from lcwb.ideal import Ideal, sum_ideals
from lcwb.module import ModuleObject, SubobjectHandle, direct_sum, quotient_object, random_monomial_ideal
from lcwb.poly import PolynomialRing
from lcwb.primes import (associated_primes, find_elementary_subobject, gamma_prime_equivalence, gamma_torsion,
                         integrality_certificate, monomial_prime, nakayama_witness, nonzerodivisor_in_ideal,
                         prime_filtration, radical_annihilator_identity, support, torsion_theory_check,
                         w_membership)

import oracles
from conftest import ideal


def exps(i):
    return [next(iter(g.terms)) for g in i.gb]


def support_of(q):
    return frozenset(k for g in q.gb for k, v in enumerate(next(iter(g.terms))) if v)


def labels(primes):
    return sorted(sorted(support_of(q)) for q in primes)


def test_w_membership_examples(R2):
    x, y = R2.gens()
    zero = ideal(R2)
    assert w_membership(ideal(R2, x), zero, ideal(R2, x, y))
    assert w_membership(ideal(R2, x), ideal(R2, x), ideal(R2, y))
    assert not w_membership(ideal(R2, x), ideal(R2, y), ideal(R2, y))
    with pytest.raises(NotPrime):
        w_membership(ideal(R2, x), zero, ideal(R2, x * y))


def test_w_membership_linear_prime(R2):
    x, y = R2.gens()
    assert w_membership(ideal(R2, x + y), ideal(R2), ideal(R2, x + y))
    assert not w_membership(ideal(R2, x), ideal(R2), ideal(R2, x + y))


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_w_with_zero_j_is_containment(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y", "z"])
    i = random_monomial_ideal(ring, rng, 3, 3)
    f = [k for k in range(3) if rng.random() < 0.5]
    p = monomial_prime(ring, set(f))
    want = all(any(e[k] for k in f) for e in exps(i))
    assert w_membership(i, Ideal(ring, []), p) == want


def test_elementary_examples(R2):
    x, y = R2.gens()
    assert find_elementary_subobject(ModuleObject.cyclic(ideal(R2, x, y))).prime == ideal(R2, x, y)
    w = find_elementary_subobject(ModuleObject.cyclic(ideal(R2, x ** 2, x * y)))
    assert w.prime == ideal(R2, x, y) and w.status == "certified"
    assert w.subobject.annihilator() == w.prime
    w = find_elementary_subobject(ModuleObject.cyclic(ideal(R2, x * y)))
    assert w.prime in (ideal(R2, x), ideal(R2, y))
    assert w.subobject.annihilator() == w.prime
    with pytest.raises(ZeroModule):
        find_elementary_subobject(ModuleObject.cyclic(ideal(R2, 1)))


def test_ass_examples(R2):
    x, y = R2.gens()
    p = ideal(R2, y)
    assert associated_primes(ModuleObject.cyclic(p)).primes == [p]
    r = associated_primes(ModuleObject.cyclic(ideal(R2, x * y)))
    assert r.status == "certified" and labels(r.primes) == labels([ideal(R2, x), ideal(R2, y)])
    r = associated_primes(ModuleObject.cyclic(ideal(R2, x ** 2, x * y)))
    assert labels(r.primes) == labels([ideal(R2, x), ideal(R2, x, y)])


def test_filtration_examples(R2):
    x, y = R2.gens()
    f = prime_filtration(ModuleObject.cyclic(ideal(R2, x ** 2, x * y)))
    assert f.length == 2
    assert f.quotient_primes == [ideal(R2, x, y), ideal(R2, x)]
    f = prime_filtration(ModuleObject.cyclic(ideal(R2, x, y)))
    assert f.length == 1
    f = prime_filtration(direct_sum(ModuleObject.cyclic(ideal(R2, x)), ModuleObject.cyclic(ideal(R2, y))))
    assert labels(f.quotient_primes) == labels([ideal(R2, x), ideal(R2, y)])


@pytest.mark.parametrize("seed", range(30))
def test_ass_matches_monomial_oracle(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y", "z"][: rng.randint(1, 3)])
    l = random_monomial_ideal(ring, rng, 3, 3)
    r = associated_primes(ModuleObject.cyclic(l))
    assert r.status == "certified"
    got = {support_of(q) for q in r.primes}
    assert got == oracles.ass_supports(exps(l), ring.n)


@pytest.mark.parametrize("seed", range(10))
def test_filtration_chain_laws(seed):
    rng = random.Random(100 + seed)
    ring = PolynomialRing(["x", "y"])
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 3, 3))
    f = prime_filtration(m)
    assert f.chain[0].is_zero() and f.chain[-1].equals(m.whole())
    for a, b in zip(f.chain, f.chain[1:]):
        assert b.contains_sub(a) and not a.contains_sub(b)
    ass = associated_primes(m).primes
    assert all(any(q == p for p in f.quotient_primes) for q in ass)


def test_support_examples(R2):
    x, y = R2.gens()
    s = support(ModuleObject.cyclic(ideal(R2, x)))
    assert s.contains(ideal(R2, x, y)) and not s.contains(ideal(R2, y))
    s = support(ModuleObject.cyclic(ideal(R2, x ** 2, x * y)))
    assert s.minimal_primes() == [ideal(R2, x)]


def test_gamma_examples(R2):
    x, y = R2.gens()
    zero = ideal(R2)
    m = ModuleObject.cyclic(ideal(R2, x * y))
    assert gamma_torsion(m, ideal(R2, x), zero).equals(SubobjectHandle(m, [[y]]))
    m2 = ModuleObject.cyclic(ideal(R2, x ** 2 * y, y ** 3))
    assert gamma_torsion(m2, ideal(R2, x), ideal(R2, x, y)).equals(m2.whole())
    m3 = ModuleObject.cyclic(ideal(R2, x))
    assert gamma_torsion(m3, ideal(R2, y), zero).is_zero()


@pytest.mark.parametrize("seed", range(20))
def test_gamma_is_saturation(seed):
    rng = random.Random(200 + seed)
    ring = PolynomialRing(["x", "y", "z"][: rng.randint(1, 3)])
    l = random_monomial_ideal(ring, rng, 3, 3)
    i = random_monomial_ideal(ring, rng, 2, 3)
    m = ModuleObject.cyclic(l)
    sat = oracles.saturation(exps(l), exps(i))
    want = SubobjectHandle(m, [[ring.monomial(e)] for e in sat])
    assert gamma_torsion(m, i, Ideal(ring, [])).equals(want)


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_gamma_monotone_in_j(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y"])
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 3, 3))
    i = random_monomial_ideal(ring, rng, 2, 2)
    j = random_monomial_ideal(ring, rng, 1, 2)
    j2 = sum_ideals(j, random_monomial_ideal(ring, rng, 1, 2))
    assert gamma_torsion(m, i, j2).contains_sub(gamma_torsion(m, i, j))


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_ass_of_gamma(seed):
    rng = random.Random(seed)
    ring = PolynomialRing(["x", "y"])
    m = ModuleObject.cyclic(random_monomial_ideal(ring, rng, 3, 3))
    i = random_monomial_ideal(ring, rng, 2, 2)
    j = Ideal(ring, []) if rng.random() < 0.5 else random_monomial_ideal(ring, rng, 1, 2)
    g = gamma_torsion(m, i, j)
    want = [q for q in associated_primes(m).primes if w_membership(i, j, q)]
    got = associated_primes(g.as_module()).primes
    assert labels(got) == labels(want)


def test_torsion_theory_examples(R2):
    x, y = R2.gens()
    zero = ideal(R2)
    r = torsion_theory_check(ModuleObject.cyclic(ideal(R2, x * y)), ideal(R2, x), zero)
    assert r["passed"] and r["quotient_torsion_free"]
    m = ModuleObject.cyclic(ideal(R2, x ** 2))
    g = gamma_torsion(m, ideal(R2, x), zero)
    assert g.equals(m.whole())
    assert quotient_object(m, g)[0].is_zero()
    assert gamma_torsion(ModuleObject.free(R2, 1), ideal(R2, x), zero).is_zero()


def test_gamma_prime_examples(R2):
    x, y = R2.gens()
    zero = ideal(R2)
    m = ModuleObject.cyclic(ideal(R2, x ** 2))
    r = gamma_prime_equivalence(m, ideal(R2, x), zero, samples=[[x]])
    assert r["passed"] and r["samples"][0]["power_side"] and r["samples"][0]["radical_side"]
    r = gamma_prime_equivalence(ModuleObject.free(R2, 1), ideal(R2, x), zero, samples=[[R2.one()]])
    s = r["samples"][0]
    assert r["passed"] and not s["power_side"] and not s["radical_side"]
    r = gamma_prime_equivalence(ModuleObject.free(R2, 1), ideal(R2, x), ideal(R2, 1), samples=[[R2.one()]])
    assert r["samples"][0]["power_side"] and r["samples"][0]["radical_side"]


def test_integrality_examples(R2):
    x, y = R2.gens()
    c = integrality_certificate(ModuleObject.cyclic(ideal(R2, x ** 2)), [[x]], ideal(R2, x))
    assert c.n == 1 and c.coefficients == [-x] and c.verified
    c = integrality_certificate(ModuleObject.free(R2, 2), [[0, x], [x, 0]], ideal(R2, x))
    assert c.n == 2 and c.coefficients[0] == -x ** 2 and c.coefficients[1].is_zero() and c.verified
    c = integrality_certificate(ModuleObject.cyclic(ideal(R2, x ** 3)), [[x ** 2]], ideal(R2, x))
    assert c.coefficients == [-x ** 2] and c.verified
    with pytest.raises(NotIntoIdealTimesModule):
        integrality_certificate(ModuleObject.free(R2, 1), [[y]], ideal(R2, x))


def test_nakayama_examples(R2):
    x, y = R2.gens()
    assert nakayama_witness(ModuleObject.cyclic(ideal(R2, x - 1)), ideal(R2, x)) == 1 - x
    assert nakayama_witness(ModuleObject.cyclic(ideal(R2, 1)), ideal(R2, x)) == R2.one()
    assert nakayama_witness(ModuleObject.cyclic(ideal(R2, x - 1, y)), ideal(R2, x)) == 1 - x
    with pytest.raises(PreconditionFailed):
        nakayama_witness(ModuleObject.free(R2, 1), ideal(R2, x))


def test_radical_identity_examples(R2):
    x, y = R2.gens()
    assert radical_annihilator_identity(ModuleObject.free(R2, 1), ideal(R2, x))["passed"]
    assert radical_annihilator_identity(ModuleObject.cyclic(ideal(R2, x ** 2)), ideal(R2, y))["passed"]
    m = direct_sum(ModuleObject.cyclic(ideal(R2, x)), ModuleObject.cyclic(ideal(R2, y)))
    assert radical_annihilator_identity(m, ideal(R2, x))["passed"]


def test_nonzerodivisor_examples(R2):
    x, y = R2.gens()
    r = nonzerodivisor_in_ideal(ideal(R2, x, y), ModuleObject.cyclic(ideal(R2, x)))
    assert r["found"] and r["element"] in (y, x + y)
    r = nonzerodivisor_in_ideal(ideal(R2, x), ModuleObject.cyclic(ideal(R2, x)))
    assert not r["found"] and r["covering_prime"] == ideal(R2, x)
    r = nonzerodivisor_in_ideal(ideal(R2, x + y), ModuleObject.cyclic(ideal(R2, x * y)))
    assert r["found"] and r["element"] == x + y
