"""Elementary subobjects, associated primes, supports, W(I,J), two-ideal torsion and
the determinant-trick certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct

from .errors import (AssIncomplete, CapExceeded, NotIntoIdealTimesModule, NotPrime,
                     PreconditionFailed, SearchExhausted, ZeroModule)
from .groebner import Lifter, vec_to_column
from .ideal import (Ideal, all_monomial_primes, apply_matrix, intersect_all, is_zero_column,
                    monomial_prime, monomial_prime_support, quotient_by_element, radical_membership, sum_ideals,
                    unit_ideal, zero_column, zero_ideal)
from .module import (ModuleObject, SubobjectHandle, _unit_col, preimage_columns, quotient_object,
                     scalar_kernel_image, sub_intersection, torsion_submodule)
from .poly import Polynomial

DEFAULT_DEGREE_BOUND = 6
DEFAULT_CAP = 12


# -- primes -------------------------------------------------------------------------

def is_linear_ideal(q: Ideal) -> bool:
    return bool(q.gb) and all(g.total_degree() == 1 for g in q.gb)


def prime_kind(q: Ideal) -> str:
    """'monomial' or 'linear' when q is recognizably prime; raises NotPrime otherwise."""
    if monomial_prime_support(q) is not None:
        return "monomial"
    if is_linear_ideal(q):
        return "linear"
    raise NotPrime(f"{q} is not a recognizable prime (monomial or linear)")


def prime_label(q: Ideal) -> str:
    return str(q)


def w_membership(i: Ideal, j: Ideal, p: Ideal) -> bool:
    """p ∈ W(I,J): every generator of I lies in rad(p + J)."""
    prime_kind(p)
    base = sum_ideals(p, j)
    return all(radical_membership(g, base) for g in i.generators)


def minimal_primes_monomial(q: Ideal) -> list[Ideal]:
    """Minimal primes of a monomial ideal (minimal variable covers of the supports)."""
    ring = q.ring
    if not q.is_monomial():
        raise ValueError("minimal primes are only computed for monomial ideals")
    if q.is_unit():
        return []
    supports = [g.support() for g in q.gb]
    covers = []
    for size in range(ring.n + 1):
        for f in combinations(range(ring.n), size):
            fs = set(f)
            if all(s & fs for s in supports) and not any(c <= fs for c in covers):
                covers.append(fs)
    return [monomial_prime(ring, c) for c in covers]


# -- elementary subobjects ---------------------------------------------------------------

@dataclass
class ElementaryWitness:
    subobject: SubobjectHandle
    prime: Ideal
    status: str  # "certified" or "heuristic"
    certificate: dict = field(default_factory=dict)


def _cyclic(mod: ModuleObject, col) -> list:
    """Generators of A·R·m."""
    if mod.algebra.is_trivial():
        return [col]
    return [mod.act(i, col) for i in range(mod.algebra.dim)]


def _scale_gens(gens, f):
    return [[f * x for x in g] for g in gens]


def _candidates(mod: ModuleObject, d: int):
    ring = mod.ring
    for total in range(d + 1):
        for e in iproduct(range(total + 1), repeat=ring.n):
            if sum(e) != total:
                continue
            m = ring.monomial(e)
            for j in range(mod.rank):
                col = zero_column(ring, mod.rank)
                col[j] = m
                if not mod.in_relations(col):
                    yield total, col


def _walk(mod: ModuleObject, start_gens, budget: int, graded: bool):
    """Raise the annihilator until it is prime; returns (L, prime, status, steps) or None."""
    ring = mod.ring
    gens = start_gens
    steps = []
    used = 0
    for _ in range(200):
        sub = SubobjectHandle(mod, gens, check=False)
        q = sub.annihilator()
        fset = monomial_prime_support(q)
        if fset is not None:
            if graded:
                outside = [i for i in range(ring.n) if i not in fset]
                if outside:
                    u = ring.monomial(tuple(0 if i in fset else 1 for i in range(ring.n)))
                    tors = sub_intersection(sub, torsion_submodule(mod, Ideal(ring, [u])))
                    if not tors.is_zero():
                        steps.append(("torsion-part", str(u)))
                        gens = tors.generators
                        continue
                return sub, q, "certified", steps, used
            return sub, q, "heuristic", steps, used
        if q.is_monomial():
            g_prime = _best_multiplier(q)
            used += g_prime.total_degree()
            if used > budget:
                return None
            steps.append(("multiply", str(g_prime)))
            gens = _scale_gens(gens, g_prime)
            continue
        if is_linear_ideal(q):
            return sub, q, "heuristic", steps, used
        return None
    return None


def _best_multiplier(q: Ideal) -> Polynomial:
    """Monomial g' = x^alpha / x_i (alpha a minimal generator of degree >= 2) whose colon
    (q : g') contains the most variables; ties go to the first option found."""
    ring = q.ring
    best, best_score = None, -1
    for gen in q.gb:
        (alpha, _), = gen.terms.items()
        if sum(alpha) < 2:
            continue
        for i, a in enumerate(alpha):
            if not a:
                continue
            shift = list(alpha)
            shift[i] -= 1
            g_prime = ring.monomial(shift)
            col = quotient_by_element(q, g_prime)
            score = sum(1 for k in range(ring.n) if col.contains(ring.var(k)))
            if score > best_score:
                best, best_score = g_prime, score
    return best


def _sample_check(mod: ModuleObject, sub: SubobjectHandle, prime: Ideal, depth: int = 2):
    """Annihilators of sampled nonzero cyclic subobjects x^g·m, |g| <= depth."""
    ring = mod.ring
    checked = []
    ok = True
    for total in range(depth + 1):
        for e in iproduct(range(total + 1), repeat=ring.n):
            if sum(e) != total:
                continue
            m = ring.monomial(e)
            for g in sub.generators:
                col = [m * x for x in g]
                if mod.in_relations(col):
                    continue
                ann = SubobjectHandle(mod, _cyclic(mod, col), check=False).annihilator()
                good = ann == prime
                ok = ok and good
                checked.append({"multiplier": str(m), "annihilator": str(ann), "agrees": good})
    return ok, checked


def find_elementary_subobject(mod: ModuleObject, degree_bound: int = DEFAULT_DEGREE_BOUND) -> ElementaryWitness:
    if mod.is_zero():
        raise ZeroModule("the zero module has no elementary subobjects")
    graded = mod.is_graded()
    found = []
    for deg, col in _candidates(mod, degree_bound):
        if found and deg > 0:
            break
        res = _walk(mod, _cyclic(mod, col), degree_bound - deg, graded)
        if res is not None:
            found.append((col, res))
    if found:
        # inclusion-maximal prime among the searched walks
        col, res = found[0]
        for c2, r2 in found[1:]:
            if r2[1].contains_ideal(res[1]) and not res[1].contains_ideal(r2[1]):
                col, res = c2, r2
        sub, q, status, steps, used = res
        ok, checked = _sample_check(mod, sub, q)
        if not ok:
            status = "heuristic"
        if status == "certified" and monomial_prime_support(q) is None:
            status = "heuristic"
        cert = {
            "start_element": [str(f) for f in col],
            "walk": steps,
            "degree_bound": degree_bound,
            "torsion_free_check": "exact" if (graded and status == "certified") else "sampled",
            "sampled": checked,
        }
        return ElementaryWitness(sub, q, status, cert)
    raise SearchExhausted(f"no elementary subobject found within degree bound {degree_bound}")


# -- filtrations and Ass -----------------------------------------------------------------

@dataclass
class PrimeFiltration:
    chain: list  # SubobjectHandle of the original module, increasing, from 0 to M
    quotient_primes: list
    statuses: list

    @property
    def length(self) -> int:
        return len(self.quotient_primes)

    def certified(self) -> bool:
        return all(s == "certified" for s in self.statuses)


def prime_filtration(mod: ModuleObject, degree_bound: int = DEFAULT_DEGREE_BOUND,
                     max_length: int = 100) -> PrimeFiltration:
    chain = [mod.zero_sub()]
    primes, statuses = [], []
    gens: list = []
    for _ in range(max_length):
        quot, _ = quotient_object(mod, SubobjectHandle(mod, gens, check=False))
        if quot.is_zero():
            return PrimeFiltration(chain, primes, statuses)
        w = find_elementary_subobject(quot, degree_bound)
        gens = gens + w.subobject.generators
        chain.append(SubobjectHandle(mod, gens, check=False))
        primes.append(w.prime)
        statuses.append(w.status)
    raise SearchExhausted("prime filtration exceeded the maximal length")


def colon_by_prime(mod: ModuleObject, p: Ideal) -> SubobjectHandle:
    """(0 :_M p) = {m : p m = 0}."""
    ring, r = mod.ring, mod.rank
    gens = p.generators
    if not gens:
        return mod.whole()
    images = []
    k = len(gens)
    for j in range(r):
        col = zero_column(ring, r * k)
        for t, g in enumerate(gens):
            col[t * r + j] = g
        images.append(col)
    target = []
    for t in range(k):
        for rel in mod.relations:
            big = zero_column(ring, r * k)
            big[t * r:(t + 1) * r] = rel
            target.append(big)
    cols = preimage_columns(ring, r, images, r * k, target)
    sub = SubobjectHandle(mod, cols, check=False)
    if mod.is_graded() and all(g.is_monomial() for g in gens):
        sub = sub.homogenized()
    return sub


def is_associated(mod: ModuleObject, p: Ideal) -> bool:
    """p ∈ Ass(M) iff Ann(0 :_M p) = p (valid for any prime p)."""
    sub = colon_by_prime(mod, p)
    if sub.is_zero():
        return False
    return sub.annihilator() == p


@dataclass
class AssResult:
    primes: list
    status: str  # "certified" | "heuristic"
    superset: list
    filtration: PrimeFiltration | None = None

    def labels(self):
        return sorted(str(q) for q in self.primes)


def _dedup(ideals):
    out = []
    for q in ideals:
        if not any(q == o for o in out):
            out.append(q)
    return out


def associated_primes(mod: ModuleObject, degree_bound: int = DEFAULT_DEGREE_BOUND) -> AssResult:
    if mod.is_zero():
        return AssResult([], "certified", [], PrimeFiltration([mod.zero_sub()], [], []))
    filt = prime_filtration(mod, degree_bound)
    cands = _dedup(filt.quotient_primes)
    verified = [q for q in cands if is_associated(mod, q)]
    status = "certified" if filt.certified() else "heuristic"
    return AssResult(verified, status, cands, filt)


def associated_primes_by_enumeration(mod: ModuleObject) -> list[Ideal]:
    """Ass of a fine-graded module: test every monomial prime with the colon criterion."""
    mod.require_graded()
    ring = mod.ring
    return [monomial_prime(ring, f) for f in all_monomial_primes(ring)
            if is_associated(mod, monomial_prime(ring, f))]


# -- support -----------------------------------------------------------------------

@dataclass
class SupportResult:
    annihilator: Ideal

    def contains(self, p: Ideal) -> bool:
        return p.contains_ideal(self.annihilator)

    def minimal_primes(self):
        return minimal_primes_monomial(self.annihilator)


def support(mod: ModuleObject) -> SupportResult:
    return SupportResult(mod.annihilator())


# -- two-ideal torsion ------------------------------------------------------------

@dataclass
class GammaResult:
    subobject: SubobjectHandle
    k_ideal: Ideal
    ass: AssResult
    selected: list


def gamma_data(mod: ModuleObject, i: Ideal, j: Ideal, degree_bound: int = DEFAULT_DEGREE_BOUND) -> GammaResult:
    ass = associated_primes(mod, degree_bound)
    if ass.status != "certified":
        raise AssIncomplete("associated primes are not certified for this module")
    sel = [q for q in ass.primes if w_membership(i, j, q)]
    k = intersect_all(sel, mod.ring) if sel else unit_ideal(mod.ring)
    if sel:
        sub = torsion_submodule(mod, k)
    else:
        sub = mod.zero_sub()
    return GammaResult(sub, k, ass, sel)


def gamma_torsion(mod: ModuleObject, i: Ideal, j: Ideal, degree_bound: int = DEFAULT_DEGREE_BOUND) -> SubobjectHandle:
    """Γ_{I,J}(M) as a subobject."""
    return gamma_data(mod, i, j, degree_bound).subobject


def pull_back_subobject(ambient: ModuleObject, parent: SubobjectHandle, inner: SubobjectHandle) -> SubobjectHandle:
    """Map a subobject of ``parent.as_module()`` back into ``ambient`` coordinates."""
    ring = ambient.ring
    out = []
    for c in inner.generators:
        out.append(apply_matrix(ring, parent.generators, c, ambient.rank))
    return SubobjectHandle(ambient, out, check=False)


def torsion_theory_check(mod: ModuleObject, i: Ideal, j: Ideal, degree_bound: int = DEFAULT_DEGREE_BOUND,
                         samples: int = 4) -> dict:
    gam = gamma_torsion(mod, i, j, degree_bound)
    quot, _ = quotient_object(mod, gam)
    gq = gamma_torsion(quot, i, j, degree_bound)
    quotient_torsion_free = gq.is_zero()
    sub_reports = []
    ring = mod.ring
    tested = 0
    for _, col in _candidates(mod, 2):
        if tested >= samples:
            break
        n = SubobjectHandle(mod, _cyclic(mod, col), check=False)
        nmod = n.as_module()
        if nmod.rank == 0:
            continue
        inner = gamma_torsion(nmod, i, j, degree_bound)
        pulled = pull_back_subobject(mod, n, inner)
        expected = sub_intersection(n, gam)
        sub_reports.append({"element": [str(f) for f in col], "agrees": pulled.equals(expected)})
        tested += 1
    return {
        "quotient_torsion_free": quotient_torsion_free,
        "hereditary": all(r["agrees"] for r in sub_reports),
        "subobjects": sub_reports,
        "passed": quotient_torsion_free and all(r["agrees"] for r in sub_reports),
    }


def _in_ideal_times_module(mod: ModuleObject, ideal: Ideal, col) -> bool:
    ring, r = mod.ring, mod.rank
    gens = [[f * x for x in _unit_col(ring, r, jj)] for f in ideal.generators for jj in range(r)]
    span = gens + mod.relations
    if not span:
        return is_zero_column(col)
    return Lifter(ring, r, span).contains(col)


def gamma_prime_equivalence(mod: ModuleObject, i: Ideal, j: Ideal, samples=None, cap: int = DEFAULT_CAP) -> dict:
    """For cyclic N = R·m: (I^n N ⊆ J N for some n <= cap) versus (I ⊆ rad(Ann N + J))."""
    ring = mod.ring
    if samples is None:
        samples = [col for _, col in _candidates(mod, 2)][:6]
    reports = []
    for col in samples:
        gens_n = _cyclic(mod, col)
        nsub = SubobjectHandle(mod, gens_n, check=False)
        if nsub.is_zero():
            continue
        ann = nsub.annihilator()
        right = all(radical_membership(g, sum_ideals(ann, j)) for g in i.generators)
        jn = [[g * x for x in v] for g in j.generators for v in gens_n]
        span = jn + mod.relations
        lf = Lifter(ring, mod.rank, span) if span else None
        left, found_n = False, None
        ipow = unit_ideal(ring)
        for n in range(cap + 1):
            imgs = [[f * x for x in v] for f in ipow.generators for v in gens_n]
            if all(is_zero_column(c) or (lf is not None and lf.contains(c)) for c in imgs):
                left, found_n = True, n
                break
            ipow = ipow * i
        entry = {"element": [str(f) for f in col], "power_side": left, "radical_side": right,
                 "n": found_n}
        if not left and right:
            entry["cap_exceeded"] = True
            entry["agrees"] = None
        else:
            entry["agrees"] = left == right
        reports.append(entry)
    decided = [r for r in reports if r["agrees"] is not None]
    return {"samples": reports, "passed": all(r["agrees"] for r in decided),
            "cap_exceeded": sum(1 for r in reports if r["agrees"] is None)}


# -- appendix certificates ------------------------------------------------------------

def _det(mat, ring):
    """Determinant by Laplace expansion along the first row."""
    n = len(mat)
    if n == 0:
        return ring.one()
    if n == 1:
        return mat[0][0]
    total = ring.zero()
    for c in range(n):
        if mat[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in mat[1:]]
        term = mat[0][c] * _det(minor, ring)
        total = total + term if c % 2 == 0 else total - term
    return total


def _ideal_coefficients(mod: ModuleObject, ideal: Ideal, images):
    """C with images_j = Σ_i C[i][j] g_i mod N and every C[i][j] ∈ ideal, or None."""
    ring, r = mod.ring, mod.rank
    f = list(ideal.generators)
    gens = []
    for fk in f:
        for ii in range(r):
            col = zero_column(ring, r)
            col[ii] = fk
            gens.append(col)
    lf = Lifter(ring, r, gens + mod.relations)
    mat = [[ring.zero() for _ in range(r)] for _ in range(r)]
    for jdx, img in enumerate(images):
        coeffs = lf.lift(img)
        if coeffs is None:
            return None
        col = vec_to_column(coeffs, ring, len(gens))
        for k, fk in enumerate(f):
            for ii in range(r):
                mat[ii][jdx] = mat[ii][jdx] + col[k * r + ii] * fk
    return mat


@dataclass
class IntegralityCertificate:
    n: int
    coefficients: list  # p_0 .. p_{n-1}: p(X) = Σ p_k X^k
    matrix: list
    verified: bool

    def poly_string(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if not c.is_zero():
                terms.append(f"({c})*X^{k}" if k else f"({c})")
        return " + ".join(terms) or "0"


def integrality_certificate(mod: ModuleObject, phi, ideal: Ideal) -> IntegralityCertificate:
    """Determinant trick: φ^n + p(φ) = 0 with p(X) ∈ I'[X]."""
    ring, r = mod.ring, mod.rank
    phi = [[ring.coerce(x) for x in col] for col in phi]
    if not all(mod.in_relations(apply_matrix(ring, phi, rel, r)) for rel in mod.relations):
        raise PreconditionFailed("the matrix does not preserve the relations, so it is not an endomorphism")
    images = [apply_matrix(ring, phi, _unit_col(ring, r, jj), r) for jj in range(r)]
    c = _ideal_coefficients(mod, ideal, images)
    if c is None:
        raise NotIntoIdealTimesModule("φ(M) is not contained in I'M")
    big = ring.extend([ring.fresh_name("X")])
    xvar = big.var(big.n - 1)
    mat = [[(xvar if a == b else big.zero()) - ring.embed(c[a][b], big) for b in range(r)] for a in range(r)]
    chi = _det(mat, big)
    coeffs = [ring.zero() for _ in range(r + 1)]
    for e, v in chi.terms.items():
        k = e[-1]
        coeffs[k] = coeffs[k] + Polynomial(ring, {e[:-1]: v})
    lower = coeffs[:r]
    # verify on generators: φ^r g + Σ p_k φ^k g ∈ N
    ok = True
    for jj in range(r):
        g = _unit_col(ring, r, jj)
        powers = [g]
        for _ in range(r):
            powers.append(apply_matrix(ring, phi, powers[-1], r))
        total = powers[r]
        for k in range(r):
            total = [a + lower[k] * b for a, b in zip(total, powers[k])]
        if not mod.in_relations(total):
            ok = False
    ok = ok and all(ideal.contains(q) for q in lower)
    return IntegralityCertificate(r, lower, c, ok)


def nakayama_witness(mod: ModuleObject, ideal: Ideal):
    """t ∈ 1 + I' with t M = 0, assuming M = I'M."""
    ring, r = mod.ring, mod.rank
    if mod.is_zero():
        return ring.one()
    ident = mod.identity_matrix()
    for col in ident:
        if not _in_ideal_times_module(mod, ideal, col):
            raise PreconditionFailed("M is not equal to I'M")
    cert = integrality_certificate(mod, ident, ideal)
    t = ring.one()
    for q in cert.coefficients:
        t = t + q
    for col in ident:
        if not mod.in_relations([t * x for x in col]):
            raise PreconditionFailed("derived element does not annihilate M")
    return t


def radical_annihilator_identity(mod: ModuleObject, ideal: Ideal) -> dict:
    """rad(Ann(M/I'M)) = rad(Ann(M) + I'), both inclusions generatorwise."""
    ring, r = mod.ring, mod.rank
    extra = [[f * x for x in _unit_col(ring, r, jj)] for f in ideal.generators for jj in range(r)]
    left = mod.with_relations(extra).annihilator()
    right = sum_ideals(mod.annihilator(), ideal)
    forward = all(radical_membership(g, right) for g in left.generators)
    backward = all(radical_membership(g, left) for g in right.generators)
    return {"ann_quotient": str(left), "ann_plus_ideal": str(right.canonical()),
            "left_in_right": forward, "right_in_left": backward, "passed": forward and backward}


def nonzerodivisor_in_ideal(i: Ideal, mod: ModuleObject, degree_bound: int = DEFAULT_DEGREE_BOUND) -> dict:
    ass = associated_primes(mod, degree_bound)
    if ass.status != "certified":
        raise AssIncomplete("associated primes are not certified for this module")
    for q in ass.primes:
        if q.contains_ideal(i):
            return {"found": False, "covering_prime": q}
    ring = i.ring
    gens = list(i.generators)
    cands = list(gens)
    for c in iproduct(range(1, 4), repeat=len(gens)):
        cands.append(sum((ring.const(k) * g for k, g in zip(c, gens)), ring.zero()))
    for a in cands:
        if a.is_zero() or any(q.contains(a) for q in ass.primes):
            continue
        ker, _ = scalar_kernel_image(mod, a)
        if ker.is_zero():
            return {"found": True, "element": a}
    raise SearchExhausted("prime avoidance did not produce a nonzerodivisor")
