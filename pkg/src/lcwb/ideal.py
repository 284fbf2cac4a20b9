"""Ideals of F_p[x_1..x_n] with cached Gröbner bases, ideal arithmetic and free resolutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import CapExceeded, NonHomogeneousInput
from .groebner import Lifter, ModuleGB, column_to_vec, groebner_basis, poly_to_vec, vec_to_column
from .poly import Polynomial, PolynomialRing, format_poly


class Ideal:
    """Ideal given by generators.  The zero ideal has no generators."""

    def __init__(self, ring: PolynomialRing, generators=()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring.coerce(g)
            if not g.is_zero() and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = None
        self._engine = None

    # -- Gröbner data -------------------------------------------------
    @property
    def gb(self) -> list[Polynomial]:
        if self._gb is None:
            self._gb = groebner_basis(self.generators)
        return self._gb

    def _nf_engine(self) -> ModuleGB:
        if self._engine is None:
            self._engine = ModuleGB(self.ring, 1, [poly_to_vec(g) for g in self.gb])
        return self._engine

    def normal_form(self, f) -> Polynomial:
        f = self.ring.coerce(f)
        v = self._nf_engine().reduce(poly_to_vec(f))
        return Polynomial(self.ring, {e: c for (_, e), c in v.items()})

    def contains(self, f) -> bool:
        f = self.ring.coerce(f)
        return self._nf_engine().contains(poly_to_vec(f))

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, tuple(self.gb)))

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return len(self.gb) == 1 and self.gb[0].is_constant()

    def canonical(self) -> Ideal:
        """Same ideal generated by its reduced Gröbner basis."""
        return Ideal(self.ring, self.gb)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gb)

    def __repr__(self):
        return f"<{', '.join(format_poly(g) for g in self.generators)}>"

    def __str__(self):
        return "<" + ", ".join(format_poly(g) for g in self.gb) + ">"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: Ideal) -> Ideal:
        return sum_ideals(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return product_ideals(self, other)

    def power(self, t: int) -> Ideal:
        out = unit_ideal(self.ring)
        for _ in range(t):
            out = product_ideals(out, self)
        return out


def unit_ideal(ring: PolynomialRing) -> Ideal:
    return Ideal(ring, [ring.one()])


def zero_ideal(ring: PolynomialRing) -> Ideal:
    return Ideal(ring, [])


def sum_ideals(i: Ideal, j: Ideal) -> Ideal:
    return Ideal(i.ring, i.generators + j.generators)


def product_ideals(i: Ideal, j: Ideal) -> Ideal:
    return Ideal(i.ring, [f * g for f in i.generators for g in j.generators]).canonical()


def intersection(i: Ideal, j: Ideal) -> Ideal:
    """I ∩ J from the position-over-term basis of <(f, f), (g, 0)> ⊆ R^2.

    Elements with vanishing first component have second component
    Σ a f = -Σ b g, which is exactly I ∩ J.
    """
    ring = i.ring
    if i.is_zero() or j.is_zero():
        return zero_ideal(ring)
    gens = []
    for f in i.generators:
        v = poly_to_vec(f, 0)
        v.update(poly_to_vec(f, 1))
        gens.append(v)
    for g in j.generators:
        gens.append(poly_to_vec(g, 0))
    gb = ModuleGB(ring, 2, gens, "pot")
    out = []
    for v in gb.vectors():
        if all(c == 1 for (c, _) in v):
            out.append(Polynomial(ring, {e: a for (_, e), a in v.items()}))
    return Ideal(ring, out).canonical()


def intersect_all(ideals, ring: PolynomialRing) -> Ideal:
    out = unit_ideal(ring)
    for k in ideals:
        out = intersection(out, k)
    return out


def quotient_by_element(i: Ideal, g: Polynomial) -> Ideal:
    """(I : g) = (I ∩ (g)) / g."""
    ring = i.ring
    if g.is_zero():
        return unit_ideal(ring)
    inter = intersection(i, Ideal(ring, [g]))
    return Ideal(ring, [exact_divide(h, g) for h in inter.generators]).canonical()


def exact_divide(h: Polynomial, g: Polynomial) -> Polynomial:
    lf = Lifter(h.ring, 1, [[g]])
    coeffs = lf.lift([h])
    if coeffs is None:
        raise ValueError(f"{g} does not divide {h}")
    return vec_to_column(coeffs, h.ring, 1)[0]


def quotient(i: Ideal, j: Ideal) -> Ideal:
    """(I : J) = ∩_g (I : g) over generators g of J."""
    ring = i.ring
    out = unit_ideal(ring)
    for g in j.generators:
        out = intersection(out, quotient_by_element(i, g))
    return out


def saturation(i: Ideal, j: Ideal, cap: int | None = None) -> Ideal:
    """(I : J^∞) by iterating quotients until two consecutive steps agree."""
    cur = i.canonical()
    steps = 0
    while True:
        nxt = quotient(cur, j)
        steps += 1
        if nxt == cur:
            return cur
        if cap is not None and steps > cap:
            raise CapExceeded(f"saturation did not stabilize within {cap} steps")
        cur = nxt


def ideal_ops(i: Ideal, j: Ideal, kind: str) -> Ideal:
    if i.ring != j.ring:
        raise ValueError("ideals live in different rings")
    ops = {
        "sum": lambda: sum_ideals(i, j).canonical(),
        "product": lambda: product_ideals(i, j),
        "intersection": lambda: intersection(i, j),
        "quotient": lambda: quotient(i, j),
        "saturation": lambda: saturation(i, j),
    }
    if kind not in ops:
        raise ValueError(f"unknown ideal operation {kind!r}")
    return ops[kind]()


def radical_membership(f, i: Ideal) -> bool:
    """f ∈ rad(I) iff 1 ∈ I + (1 - z f) in R[z]."""
    ring = i.ring
    f = ring.coerce(f)
    if f.is_zero():
        return True
    big = ring.extend([ring.fresh_name("z")])
    z = big.var(big.n - 1)
    gens = [ring.embed(g, big) for g in i.generators]
    gens.append(big.one() - z * ring.embed(f, big))
    gb = groebner_basis(gens)
    return len(gb) == 1 and gb[0].is_constant()


def radical_contains(rad_of: Ideal, j: Ideal) -> bool:
    """J ⊆ rad(rad_of)."""
    return all(radical_membership(g, rad_of) for g in j.generators)


def monomial_prime(ring: PolynomialRing, indices) -> Ideal:
    return Ideal(ring, [ring.var(i) for i in sorted(indices)])


def monomial_prime_support(q: Ideal):
    """Variable set F if q is the monomial prime (x_i : i ∈ F), else None."""
    gb = q.gb
    if not gb:
        return frozenset()
    out = set()
    for g in gb:
        if not g.is_monomial():
            return None
        (e, _), = g.terms.items()
        if sum(e) != 1:
            return None
        out.add(e.index(1))
    return frozenset(out)


def all_monomial_primes(ring: PolynomialRing):
    for bits in iproduct([0, 1], repeat=ring.n):
        yield frozenset(i for i, b in enumerate(bits) if b)


# -- matrices and resolutions ---------------------------------------------

def zero_column(ring: PolynomialRing, r: int) -> list[Polynomial]:
    return [ring.zero() for _ in range(r)]


def is_zero_column(col) -> bool:
    return all(f.is_zero() for f in col)


def mat_columns(ring, matrix):
    """Normalize a matrix given as rows of polynomial-like entries to a list of columns."""
    rows = [[ring.coerce(x) for x in row] for row in matrix]
    if not rows:
        return []
    return [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]


def apply_matrix(ring, columns, coeffs, rank):
    """Σ coeffs_j * columns_j with coeffs a list of polynomials."""
    out = zero_column(ring, rank)
    for col, c in zip(columns, coeffs):
        if c.is_zero():
            continue
        for i in range(rank):
            if not col[i].is_zero():
                out[i] = out[i] + c * col[i]
    return out


def column_degree(col, row_degrees):
    """Multidegree of a fine-homogeneous column, or None if not homogeneous or zero."""
    deg = None
    for f, d in zip(col, row_degrees):
        for e in f.terms:
            cand = tuple(a + b for a, b in zip(e, d))
            if deg is None:
                deg = cand
            elif cand != deg:
                return "inhomogeneous"
    return deg


def homogeneous_parts(col, row_degrees) -> list:
    """Split a column into its fine-homogeneous components."""
    ring = None
    parts: dict = {}
    r = len(col)
    for i, (f, d) in enumerate(zip(col, row_degrees)):
        ring = f.ring
        for e, c in f.terms.items():
            deg = tuple(a + b for a, b in zip(e, d))
            parts.setdefault(deg, [dict() for _ in range(r)])[i][e] = c
    return [(deg, [Polynomial(ring, t) for t in parts[deg]]) for deg in sorted(parts)]


def minimize_columns(ring, rank, columns, degrees=None):
    """Drop columns lying in the span of the others.

    When column degrees are given (graded case) columns are scanned in
    increasing total degree and kept only if new, which gives a minimal
    generating set.
    """
    cols = [c for c in columns if not is_zero_column(c)]
    if degrees is not None:
        degs = [column_degree(c, degrees) for c in cols]
        order = sorted(range(len(cols)), key=lambda k: (sum(degs[k]), degs[k], k))
        kept = []
        lifter = None
        for k in order:
            if lifter is not None and lifter.contains(cols[k]):
                continue
            kept.append(k)
            lifter = Lifter(ring, rank, [cols[m] for m in kept])
        kept.sort()
        return [cols[k] for k in kept]
    kept = list(range(len(cols)))
    for k in reversed(range(len(cols))):
        others = [cols[m] for m in kept if m != k]
        if others and Lifter(ring, rank, others).contains(cols[k]):
            kept.remove(k)
    return [cols[k] for k in kept]


@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... ; matrices[i] has rank(F_i) rows and rank(F_{i+1}) columns.

    Columns are stored as lists of polynomials.  ``degree_shifts[i]`` lists
    the multidegrees of the basis of F_i when the input is fine-graded.
    """

    ring: PolynomialRing
    ranks: list
    matrices: list
    degree_shifts: list | None = None
    _lifters: dict = field(default_factory=dict, repr=False)

    def betti(self) -> list[int]:
        out = list(self.ranks)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def lifter(self, i: int) -> Lifter:
        """Lifter onto the image of matrices[i] (i.e. into F_i)."""
        if i not in self._lifters:
            self._lifters[i] = Lifter(self.ring, self.ranks[i], self.matrices[i])
        return self._lifters[i]

    def check_complex(self) -> bool:
        for k in range(len(self.matrices) - 1):
            a, b = self.matrices[k], self.matrices[k + 1]
            for col in b:
                img = apply_matrix(self.ring, a, col, self.ranks[k])
                if not is_zero_column(img):
                    return False
        return True

    def check_exact(self) -> bool:
        """Each matrix's columns generate the syzygies of the previous one."""
        for k in range(len(self.matrices) - 1):
            syz = Lifter(self.ring, self.ranks[k], self.matrices[k]).syzygies()
            nxt = Lifter(self.ring, self.ranks[k + 1], self.matrices[k + 1]) if self.matrices[k + 1] else None
            for v in syz:
                col = vec_to_column(v, self.ring, self.ranks[k + 1])
                if nxt is None or not nxt.contains(col):
                    return False
        return True


def free_resolution(ring: PolynomialRing, rank: int, relations, length: int,
                    gen_degrees=None) -> FreeResolution:
    """Resolution of coker(relations: R^s -> R^rank) up to F_length.

    With ``gen_degrees`` the relations must be fine-homogeneous; the
    resolution is then graded and minimal.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    graded = gen_degrees is not None
    shifts = [list(map(tuple, gen_degrees))] if graded else None
    cols = minimize_columns(ring, rank, relations, shifts[0] if graded else None)
    ranks = [rank]
    mats = []
    for level in range(length):
        if graded:
            degs = []
            for c in cols:
                d = column_degree(c, shifts[-1])
                if d is None or d == "inhomogeneous":
                    raise NonHomogeneousInput("relation column is not multihomogeneous")
                degs.append(d)
            shifts.append(degs)
        mats.append(cols)
        ranks.append(len(cols))
        if level + 1 == length:
            break
        if not cols:
            continue
        nxt = [vec_to_column(v, ring, len(cols)) for v in Lifter(ring, ranks[-2], cols).syzygies()]
        if graded:
            nxt = [part for c in nxt for _, part in homogeneous_parts(c, shifts[-1])]
        cols = minimize_columns(ring, len(cols), nxt, shifts[-1] if graded else None)
    return FreeResolution(ring, ranks, mats, shifts)


def ideal_from_strings(ring: PolynomialRing, gens) -> Ideal:
    return Ideal(ring, [ring.coerce(g) for g in gens])


def column_in_span(ring, rank, columns, v) -> bool:
    if not columns:
        return is_zero_column(v)
    return Lifter(ring, rank, columns).contains(v)


__all__ = [
    "Ideal", "FreeResolution", "free_resolution", "ideal_ops", "intersection", "quotient",
    "saturation", "radical_membership", "sum_ideals", "product_ideals", "unit_ideal",
    "zero_ideal", "monomial_prime", "monomial_prime_support", "column_to_vec",
]
