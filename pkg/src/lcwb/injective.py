"""Closed-form models of injective hulls E(R/p) for monomial primes p.

The model of E(R/p_F)(s) has one basis element in each degree a with
a_i <= s_i for i in F: inverse monomials in the variables of F with
coefficients in the field of fractions of k[x_j : j not in F].  Degreewise
the coefficient field is seen through its Laurent monomials, so each piece
is one-dimensional; annihilators, socles and the action of monomials agree
with the ungraded hull.  Bijectivity of non-monomial elements is checked
exactly, with univariate rational functions where needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import CapExceeded, UnsupportedLocalization, UnsupportedPrime
from .graded import DirectSum, GradedModule, HomFromResolution, box, induced_on_cohomology, vadd
from .ideal import (Ideal, free_resolution, monomial_prime, monomial_prime_support, radical_contains,
                    sum_ideals)
from .poly import Polynomial, PolynomialRing

DEFAULT_BOX = (-4, 4)
DEFAULT_CAP = 12


# -- univariate rational functions -------------------------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Dense univariate polynomial over F_p; coefficients in increasing degree."""

    def __init__(self, coeffs, p: int):
        self.p = p
        self.c = _trim(int(x) % p for x in coeffs)

    def is_zero(self):
        return not self.c

    @property
    def degree(self):
        return len(self.c) - 1

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return UPoly([x + y for x, y in zip(a, b)], self.p)

    def __neg__(self):
        return UPoly([-x for x in self.c], self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UPoly([], self.p)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(other.c):
                out[i + j] += x * y
        return UPoly(out, self.p)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c and self.p == other.p

    def __hash__(self):
        return hash((self.c, self.p))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        rem = list(self.c)
        inv = pow(other.c[-1], p - 2, p)
        q = [0] * max(0, len(rem) - len(other.c) + 1)
        while len(rem) >= len(other.c) and rem:
            shift = len(rem) - len(other.c)
            f = rem[-1] * inv % p
            q[shift] = f
            for i, y in enumerate(other.c):
                rem[i + shift] = (rem[i + shift] - f * y) % p
            rem = list(_trim(rem))
        return UPoly(q, p), UPoly(rem, p)

    def monic(self):
        inv = pow(self.c[-1], self.p - 2, self.p)
        return UPoly([x * inv for x in self.c], self.p)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    @classmethod
    def from_polynomial(cls, f: Polynomial):
        if f.ring.n != 1:
            raise ValueError("univariate polynomial expected")
        deg = max((e[0] for e in f.terms), default=0)
        c = [0] * (deg + 1)
        for e, v in f.terms.items():
            c[e[0]] = v
        return cls(c, f.ring.p)


class RationalFunction:
    """Element of F_p(x) in lowest terms with monic denominator."""

    def __init__(self, num: UPoly, den: UPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if not num.is_zero() else den
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
        lead = pow(den.c[-1], den.p - 2, den.p)
        self.num = num * UPoly([lead], den.p)
        self.den = den * UPoly([lead], den.p)

    @classmethod
    def of(cls, f: Polynomial):
        return cls(UPoly.from_polynomial(f), UPoly([1], f.ring.p))

    def is_zero(self):
        return self.num.is_zero()

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero is not invertible")
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def is_one(self):
        return self.num.c == (1,) and self.den.c == (1,)


# -- models --------------------------------------------------------------------------

class InjectiveModel(GradedModule):
    """E(R/p_F) shifted so that its socle sits in degree s (only s_F matters)."""

    def __init__(self, ring: PolynomialRing, support, shift=None):
        self.ring = ring
        self.n = ring.n
        self.p = ring.p
        self.support = frozenset(support)
        self.shift = tuple(shift) if shift is not None else (0,) * ring.n
        self.prime = monomial_prime(ring, self.support)

    @property
    def kind(self) -> str:
        if self.support or self.n == 0:
            return "InversePolynomial"
        return "RationalFunctionField"

    @property
    def is_maximal(self) -> bool:
        return len(self.support) == self.n

    def dim(self, a) -> int:
        return 1 if all(a[i] <= self.shift[i] for i in self.support) else 0

    def mult(self, a, b):
        if self.dim(a) and self.dim(vadd(a, b)):
            return np.ones((1, 1), dtype=np.int64)
        return la.zeros(self.dim(vadd(a, b)), self.dim(a))

    def element_annihilator(self, a) -> Ideal:
        """Ann of the basis element of degree a: (x_i^(s_i - a_i + 1) : i in F)."""
        ring = self.ring
        if not self.dim(a):
            return Ideal(ring, [ring.one()])
        gens = []
        for i in sorted(self.support):
            e = [0] * ring.n
            e[i] = self.shift[i] - a[i] + 1
            gens.append(ring.monomial(e))
        return Ideal(ring, gens)

    def label(self) -> str:
        return f"E(R/{self.prime})({list(self.shift)})"

    def __repr__(self):
        return f"InjectiveModel({self.label()})"


def build_hull_model(p: Ideal, shift=None) -> InjectiveModel:
    ring = p.ring
    f = monomial_prime_support(p)
    if f is None:
        raise UnsupportedPrime(f"{p} is not a monomial prime")
    if len(f) < ring.n and ring.n > 2:
        raise UnsupportedPrime("non-maximal primes are modelled only for n <= 2")
    if not f and ring.n == 2:
        raise UnsupportedPrime("E(R/(0)) needs a two-variable rational function field")
    return InjectiveModel(ring, f, shift)


def catalogue(ring: PolynomialRing):
    """All models for ring (n <= 2) or the maximal one (n > 2), unshifted."""
    from .ideal import all_monomial_primes
    out = []
    for f in sorted(all_monomial_primes(ring), key=lambda s: (len(s), sorted(s))):
        try:
            out.append(build_hull_model(monomial_prime(ring, f)))
        except UnsupportedPrime:
            continue
    return out


def essential_check(model: InjectiveModel, degrees) -> bool:
    """Every nonzero piece reaches the copy of R/p (degrees a_F = s_F) by a monomial."""
    s = model.shift
    for a in degrees:
        if not model.dim(a):
            continue
        b = tuple(s[i] - a[i] if i in model.support else max(0, s[i] - a[i]) for i in range(model.n))
        if not model.mult(a, b).any():
            return False
    return True


@dataclass
class HullValueReport:
    functor: str
    predicted: str
    observed: dict = field(default_factory=dict)  # degree -> "full" | "zero"
    agreement: bool = False
    summary: str = ""
    cap_exceeded: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def _summarize(observed: dict) -> str:
    vals = set(observed.values())
    if not vals or vals == {"zero"}:
        return "Zero"
    if vals == {"full"}:
        return "Identity"
    return "Partial"


def gamma_on_hull(model: InjectiveModel, k: Ideal, j: Ideal, degrees=None,
                  cap: int = DEFAULT_CAP) -> HullValueReport:
    """Γ_{K,J}(E) degreewise: e is torsion iff K^t ⊆ Ann(e) + J for some t <= cap."""
    from .primes import w_membership
    ring = model.ring
    if degrees is None:
        degrees = box(DEFAULT_BOX[0], DEFAULT_BOX[1], ring.n)
    predicted = "Identity" if w_membership(k, j, model.prime) else "Zero"
    observed, capped, exps = {}, [], {}
    memo = {}
    for a in degrees:
        a = tuple(a)
        if not model.dim(a):
            continue
        ann = model.element_annihilator(a)
        key = tuple(sorted(str(g) for g in ann.gb))
        if key not in memo:
            base = sum_ideals(ann, j)
            torsion = radical_contains(base, k)
            t_found = None
            if torsion:
                power = Ideal(ring, [ring.one()])
                for t in range(1, cap + 1):
                    power = power * k
                    if base.contains_ideal(power):
                        t_found = t
                        break
            memo[key] = (torsion, t_found)
        torsion, t_found = memo[key]
        observed[a] = "full" if torsion else "zero"
        if torsion and t_found is None:
            capped.append(a)
        exps[a] = t_found
    summary = _summarize(observed)
    return HullValueReport("Gamma_KJ", predicted, observed, summary == predicted, summary, capped,
                           {"exponent": exps})


def _truncation_diagonal(model: InjectiveModel, f: Polynomial, depth: int = 3):
    """Matrix of f on inverse monomials of F-degree <= depth, coefficients in k[x_j : j not in F].

    Returns the diagonal entries and whether the matrix is triangular for the
    order by total F-degree.
    """
    ring = model.ring
    fset = sorted(model.support)
    from itertools import product as iproduct
    basis = [e for e in iproduct(range(depth + 1), repeat=len(fset)) if sum(e) <= depth]
    index = {e: k for k, e in enumerate(basis)}
    diag = [ring.zero() for _ in basis]
    triangular = True
    for k, alpha in enumerate(basis):
        for e, c in f.terms.items():
            beta = tuple(e[i] for i in fset)
            new = tuple(x - y for x, y in zip(alpha, beta))
            if min(new, default=0) < 0:
                continue  # lands past the socle: zero
            coeff_exp = tuple(0 if i in model.support else e[i] for i in range(ring.n))
            term = ring.monomial(coeff_exp, c)
            tgt = index[new]
            if tgt == k:
                diag[k] = diag[k] + term
            elif sum(new) > sum(alpha):
                triangular = False
    return diag, triangular


def localize_hull(model: InjectiveModel, f, degrees=None, cap: int = DEFAULT_CAP) -> HullValueReport:
    """E_f (or E_q for a prime complement ("complement", q)) compared with Zero/Identity."""
    ring = model.ring
    if degrees is None:
        degrees = box(DEFAULT_BOX[0], DEFAULT_BOX[1], ring.n)
    if isinstance(f, tuple) and f and f[0] == "complement":
        q = f[1]
        qs = monomial_prime_support(q)
        if qs is None:
            raise UnsupportedLocalization("prime complements are supported for monomial primes only")
        predicted = "Identity" if model.support <= qs else "Zero"
        obs = {}
        elements = [ring.var(i) for i in range(ring.n) if i not in qs]
        for a in degrees:
            a = tuple(a)
            if not model.dim(a):
                continue
            dead = False
            for g in elements:
                (e, _), = g.terms.items()
                big = tuple(cap * x for x in e)
                if not model.mult(a, big).any():
                    dead = True
                    break
            obs[a] = "zero" if dead else "full"
        summary = _summarize(obs)
        return HullValueReport("localization", predicted, obs, summary == predicted, summary,
                               details={"complement_of": str(q)})
    f = ring.coerce(f)
    if f.is_zero():
        raise UnsupportedLocalization("cannot invert 0")
    predicted = "Zero" if model.prime.contains(f) else "Identity"
    obs = {}
    details = {}
    if f.is_monomial():
        (e, _), = f.terms.items()
        big = tuple(cap * x for x in e)
        for a in degrees:
            a = tuple(a)
            if model.dim(a):
                obs[a] = "full" if model.mult(a, big).any() else "zero"
    else:
        if not model.support and ring.n == 1:
            r = RationalFunction.of(f)
            ok = (r * r.inverse()).is_one()
            details["exact_inverse"] = ok
            status = "full" if ok else "zero"
        else:
            diag, tri = _truncation_diagonal(model, f)
            if not tri:
                raise UnsupportedLocalization("truncated action is not triangular")
            if all(d.is_zero() for d in diag):
                status = "zero"  # strictly triangular: locally nilpotent
            elif all(not d.is_zero() for d in diag) and len({str(d) for d in diag}) == 1:
                status = "full"  # unipotent up to a unit of the coefficient field
            else:
                raise UnsupportedLocalization("mixed diagonal on the truncation")
            details["diagonal"] = str(diag[0])
        for a in degrees:
            a = tuple(a)
            if model.dim(a):
                obs[a] = status
    summary = _summarize(obs)
    return HullValueReport("localization", predicted, obs, summary == predicted, summary,
                           details=details)


def hull_sum(models) -> DirectSum:
    return DirectSum(list(models))


def decomposition_check(models, degrees=None, cap: int = DEFAULT_CAP) -> dict:
    """Recover the summands (F, s_F) of a direct sum of models from socle data.

    In degree a, an element killed by every x_i (i in F) that survives
    multiplication by u^cap, u = prod_{j not in F} x_j, can only come from a
    summand E(R/p_F) whose socle degree agrees with a on F.  Counting at
    degrees with a_j = 0 off F recovers each summand once.
    """
    models = list(models)
    n = models[0].n
    p = models[0].p
    if degrees is None:
        degrees = box(DEFAULT_BOX[0], DEFAULT_BOX[1], n)
    e = hull_sum(models)
    from .ideal import all_monomial_primes
    found = []
    for fset in sorted(all_monomial_primes(models[0].ring), key=lambda s: (len(s), sorted(s))):
        for a in degrees:
            a = tuple(a)
            if any(a[j] != 0 for j in range(n) if j not in fset):
                continue
            d = e.dim(a)
            if not d:
                continue
            mats = [e.mult(a, tuple(1 if k == i else 0 for k in range(n))) for i in sorted(fset)]
            socle = la.nullspace(np.concatenate(mats, axis=0), p) if mats else la.identity(d)
            if socle.shape[0] == 0:
                continue
            u = tuple(0 if k in fset else cap for k in range(n))
            mult = la.rank(la.matmul(e.mult(a, u), socle.T, p), p)
            key = (tuple(sorted(fset)), tuple(a[i] for i in sorted(fset)))
            found.extend([key] * mult)
    expected = sorted((tuple(sorted(m.support)), tuple(m.shift[i] for i in sorted(m.support)))
                      for m in models)
    found = sorted(found)
    return {"expected": expected, "recovered": found, "passed": expected == found}


def hom_exactness_on_hull(model: GradedModule, v, sub_gens, degrees=None) -> dict:
    """Hom(V, E) -> Hom(V', E) is surjective in every tested degree."""
    from .module import present_subquotient
    n = model.n
    if degrees is None:
        degrees = box(DEFAULT_BOX[0], DEFAULT_BOX[1], n)
    v.require_graded()
    vres = free_resolution(v.ring, v.rank, v.relations, 2, v.degrees)
    gens = [g for g in sub_gens if not all(x.is_zero() for x in g)]
    sub = present_subquotient(v.ring, v.rank, gens, v.relations, v.degrees)
    sres = free_resolution(sub.ring, sub.rank, sub.relations, 2, sub.degrees)
    h_v = HomFromResolution(vres, model, 0)
    h_s = HomFromResolution(sres, model, 0)
    table, failures = {}, []
    for a in degrees:
        a = tuple(a)
        src, tgt = h_v.ext(0).piece(a), h_s.ext(0).piece(a)
        chain = h_v.pullback(gens, sres, 0, a)
        m = induced_on_cohomology(chain, src, tgt, model.p)
        r = la.rank(m, model.p) if m.size else 0
        table[a] = (src.dim, tgt.dim, r)
        if r != tgt.dim:
            failures.append(a)
    return {"table": table, "failures": failures, "passed": not failures}
