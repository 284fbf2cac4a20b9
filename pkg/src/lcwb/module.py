"""Finitely presented modules over R = F_p[x], optionally with a commuting algebra action.

A module is F/N with F = R^r and N spanned by relation columns.  Elements
are columns (lists of r polynomials) read modulo N.  An optional
finite-dimensional algebra A acts through r×r polynomial matrices whose
columns give the images of the generators.
"""

from __future__ import annotations

from collections import deque
from itertools import product as iproduct

import numpy as np

from .errors import InvalidSubobject, NonHomogeneousInput, NonMonomialDenominator
from .groebner import Lifter, ModuleGB, column_to_vec, vec_to_column
from .ideal import (Ideal, apply_matrix, column_degree, free_resolution, homogeneous_parts,
                    intersect_all, is_zero_column, mat_columns, minimize_columns, unit_ideal,
                    zero_column)
from .poly import Polynomial, PolynomialRing


# -- algebra -----------------------------------------------------------------

class AlgebraSpec:
    """Finite-dimensional associative unital F_p-algebra given by structure constants.

    ``mult[i][j][k]`` is the coefficient of basis element k in e_i * e_j.
    """

    def __init__(self, dim: int, mult, unit, p: int):
        self.dim = dim
        self.p = p
        self.mult = np.mod(np.array(mult, dtype=np.int64).reshape(dim, dim, dim), p)
        self.unit = np.mod(np.array(unit, dtype=np.int64).reshape(dim), p)

    @classmethod
    def trivial(cls, p: int) -> AlgebraSpec:
        return cls(1, [[[1]]], [1], p)

    @classmethod
    def dual_numbers(cls, p: int) -> AlgebraSpec:
        """F_p[e]/(e^2) with basis 1, e."""
        m = np.zeros((2, 2, 2), dtype=np.int64)
        m[0, 0, 0] = 1
        m[0, 1, 1] = 1
        m[1, 0, 1] = 1
        return cls(2, m, [1, 0], p)

    @classmethod
    def split(cls, k: int, p: int) -> AlgebraSpec:
        """F_p^k with orthogonal idempotents."""
        m = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            m[i, i, i] = 1
        return cls(k, m, [1] * k, p)

    def is_trivial(self) -> bool:
        return self.dim == 1

    def product(self, u, v):
        return np.mod(np.einsum("i,j,ijk->k", u, v, self.mult), self.p)

    def check_laws(self) -> bool:
        d, p = self.dim, self.p
        eye = np.eye(d, dtype=np.int64)
        for i in range(d):
            if not np.array_equal(self.product(self.unit, eye[i]), eye[i]):
                return False
            if not np.array_equal(self.product(eye[i], self.unit), eye[i]):
                return False
            for j in range(d):
                for k in range(d):
                    left = self.product(self.product(eye[i], eye[j]), eye[k])
                    right = self.product(eye[i], self.product(eye[j], eye[k]))
                    if not np.array_equal(np.mod(left - right, p), np.zeros(d, dtype=np.int64)):
                        return False
        return True


# -- helpers -------------------------------------------------------------------

def infer_degrees(ring: PolynomialRing, rank: int, relations):
    """Generator multidegrees making every relation column fine-homogeneous, or None.

    Each connected block of generators (linked through shared relation
    columns) gets its first generator placed in degree 0.
    """
    n = ring.n
    for col in relations:
        if any(len(f.terms) > 1 for f in col):
            return None
    links = [[] for _ in range(rank)]
    for k, col in enumerate(relations):
        nz = [(j, next(iter(f.terms))) for j, f in enumerate(col) if not f.is_zero()]
        for (j1, e1), (j2, e2) in zip(nz, nz[1:]):
            # d_j1 + e1 = d_j2 + e2
            links[j1].append((j2, tuple(a - b for a, b in zip(e1, e2))))
            links[j2].append((j1, tuple(b - a for a, b in zip(e1, e2))))
    degrees = [None] * rank
    for start in range(rank):
        if degrees[start] is not None:
            continue
        degrees[start] = (0,) * n
        queue = deque([start])
        while queue:
            j = queue.popleft()
            for m, off in links[j]:
                cand = tuple(a + b for a, b in zip(degrees[j], off))
                if degrees[m] is None:
                    degrees[m] = cand
                    queue.append(m)
                elif degrees[m] != cand:
                    return None
    return degrees


def _mono_data(f: Polynomial):
    """(exponent, coefficient) of a single-term polynomial."""
    (e, c), = f.terms.items()
    return e, c


def _add_cols(a, b):
    return [x + y for x, y in zip(a, b)]


def _scale_col(col, f):
    return [f * x for x in col]


def _unit_col(ring, r, j):
    col = zero_column(ring, r)
    col[j] = ring.one()
    return col


# -- module objects -----------------------------------------------------------

class ModuleObject:
    """coker(relations) over ``ring`` with optional multidegrees and algebra action."""

    def __init__(self, ring: PolynomialRing, rank: int, relations=(), degrees=None,
                 algebra: AlgebraSpec | None = None, action=None, validate: bool = True):
        self.ring = ring
        self.rank = rank
        rels = []
        for col in relations:
            col = [ring.coerce(x) for x in col]
            if len(col) != rank:
                raise ValueError("relation column has the wrong length")
            if not is_zero_column(col):
                rels.append(col)
        self.relations = rels
        if degrees is None:
            degrees = infer_degrees(ring, rank, rels)
        self.degrees = [tuple(d) for d in degrees] if degrees is not None else None
        if self.degrees is not None and len(self.degrees) != rank:
            raise ValueError("one degree per generator required")
        self.algebra = algebra or AlgebraSpec.trivial(ring.p)
        if action is None:
            if not self.algebra.is_trivial():
                raise ValueError("a nontrivial algebra needs action matrices")
            action = [self.identity_matrix()]
        self.action = [[[ring.coerce(x) for x in col] for col in m] for m in action]
        self._lifter = None
        self._graded_cache = None
        if validate and not self.algebra.is_trivial():
            self.validate_action()

    # construction --------------------------------------------------------
    @classmethod
    def free(cls, ring, rank: int, degrees=None) -> ModuleObject:
        return cls(ring, rank, [], degrees or [(0,) * ring.n] * rank)

    @classmethod
    def cyclic(cls, ideal: Ideal, degree=None) -> ModuleObject:
        """R/I."""
        ring = ideal.ring
        return cls(ring, 1, [[g] for g in ideal.generators], [degree or (0,) * ring.n]
                   if all(g.is_monomial() for g in ideal.generators) else None)

    @classmethod
    def coker(cls, ring, rows, degrees=None) -> ModuleObject:
        """Cokernel of a matrix given by rows; its columns are the relations."""
        cols = mat_columns(ring, rows)
        rank = len(rows)
        return cls(ring, rank, cols, degrees)

    def with_relations(self, extra) -> ModuleObject:
        return ModuleObject(self.ring, self.rank, self.relations + list(extra), self.degrees,
                            self.algebra, self.action, validate=False)

    def identity_matrix(self):
        return [_unit_col(self.ring, self.rank, j) for j in range(self.rank)]

    # basic queries ------------------------------------------------------
    @property
    def lifter(self) -> Lifter:
        if self._lifter is None:
            self._lifter = Lifter(self.ring, self.rank, self.relations)
        return self._lifter

    def in_relations(self, col) -> bool:
        if is_zero_column(col):
            return True
        if not self.relations:
            return False
        return self.lifter.contains(col)

    def is_zero(self) -> bool:
        return all(self.in_relations(_unit_col(self.ring, self.rank, j)) for j in range(self.rank))

    def is_graded(self) -> bool:
        if self.degrees is None:
            return False
        for col in self.relations:
            d = column_degree(col, self.degrees)
            if d == "inhomogeneous":
                return False
        for m in self.action:
            for j, col in enumerate(m):
                d = column_degree(col, self.degrees)
                if d == "inhomogeneous" or (d is not None and d != self.degrees[j]):
                    return False
        return True

    def require_graded(self):
        if not self.is_graded():
            raise NonHomogeneousInput("module data is not multihomogeneous")

    def relation_degrees(self):
        return [column_degree(c, self.degrees) for c in self.relations]

    def act(self, i: int, col):
        """Image of an element under the i-th algebra basis element."""
        return apply_matrix(self.ring, self.action[i], col, self.rank)

    def validate_action(self) -> None:
        ring, r = self.ring, self.rank
        for m in self.action:
            for col in self.relations:
                if not self.in_relations(apply_matrix(ring, m, col, r)):
                    raise InvalidSubobject("algebra action does not preserve the relations")
        d = self.algebra.dim
        for i in range(d):
            for k in range(d):
                for j in range(r):
                    g = _unit_col(ring, r, j)
                    lhs = self.act(i, self.act(k, g))
                    rhs = zero_column(ring, r)
                    for l in range(d):
                        c = int(self.algebra.mult[i, k, l])
                        if c:
                            rhs = _add_cols(rhs, _scale_col(self.act(l, g), ring.const(c)))
                    diff = [a - b for a, b in zip(lhs, rhs)]
                    if not self.in_relations(diff):
                        raise InvalidSubobject("action violates the algebra multiplication table")
        for j in range(r):
            g = _unit_col(ring, r, j)
            img = zero_column(ring, r)
            for l in range(d):
                c = int(self.algebra.unit[l])
                if c:
                    img = _add_cols(img, _scale_col(self.act(l, g), ring.const(c)))
            if not self.in_relations([a - b for a, b in zip(img, g)]):
                raise InvalidSubobject("algebra unit does not act as the identity")

    def whole(self) -> SubobjectHandle:
        return SubobjectHandle(self, self.identity_matrix(), check=False)

    def zero_sub(self) -> SubobjectHandle:
        return SubobjectHandle(self, [], check=False)

    def element_annihilator(self, col) -> Ideal:
        """(N : v) = {a : a v ∈ N}."""
        return annihilator_of_columns(self, [col])

    def annihilator(self) -> Ideal:
        return annihilator(self)

    def graded(self, inverted=frozenset()):
        """Degreewise view (see ``graded.PresentedGraded``)."""
        from .graded import PresentedGraded
        self.require_graded()
        if self._graded_cache is None:
            rel_degs, coeffs = [], np.zeros((self.rank, len(self.relations)), dtype=np.int64)
            for k, col in enumerate(self.relations):
                rel_degs.append(column_degree(col, self.degrees))
                for j, f in enumerate(col):
                    if not f.is_zero():
                        coeffs[j, k] = _mono_data(f)[1]
            self._graded_cache = (rel_degs, coeffs)
        rel_degs, coeffs = self._graded_cache
        return PresentedGraded(self.ring.n, self.ring.p, self.degrees, rel_degs, coeffs,
                               frozenset(inverted))

    def __repr__(self):
        return f"ModuleObject(rank={self.rank}, relations={len(self.relations)})"


def direct_sum(*mods: ModuleObject) -> ModuleObject:
    ring = mods[0].ring
    total = sum(m.rank for m in mods)
    rels, degs, off = [], [], 0
    graded = all(m.degrees is not None for m in mods)
    for m in mods:
        for col in m.relations:
            big = zero_column(ring, total)
            big[off:off + m.rank] = col
            rels.append(big)
        if graded:
            degs.extend(m.degrees)
        off += m.rank
    return ModuleObject(ring, total, rels, degs if graded else None)


class SubobjectHandle:
    """Submodule of ``ambient`` generated by columns (in ambient generator coordinates)."""

    def __init__(self, ambient: ModuleObject, generators, check: bool = True):
        self.ambient = ambient
        ring = ambient.ring
        gens = []
        for col in generators:
            col = [ring.coerce(x) for x in col]
            if not ambient.in_relations(col):
                gens.append(col)
        self.generators = gens
        self._lifter = None
        if check:
            self.validate()

    def validate(self):
        amb = self.ambient
        if amb.algebra.is_trivial():
            return
        for col in self.generators:
            for i in range(amb.algebra.dim):
                if not self.contains(amb.act(i, col)):
                    raise InvalidSubobject("subobject is not stable under the algebra action")

    @property
    def lifter(self) -> Lifter:
        if self._lifter is None:
            self._lifter = Lifter(self.ambient.ring, self.ambient.rank,
                                  self.generators + self.ambient.relations)
        return self._lifter

    def contains(self, col) -> bool:
        if is_zero_column(col):
            return True
        return self.lifter.contains(col)

    def is_zero(self) -> bool:
        return not self.generators

    def contains_sub(self, other: SubobjectHandle) -> bool:
        return all(self.contains(c) for c in other.generators)

    def equals(self, other: SubobjectHandle) -> bool:
        return self.contains_sub(other) and other.contains_sub(self)

    def annihilator(self) -> Ideal:
        return annihilator_of_columns(self.ambient, self.generators)

    def as_module(self) -> ModuleObject:
        """Presentation of the subobject on its generators."""
        amb = self.ambient
        return present_subquotient(amb.ring, amb.rank, self.generators, amb.relations,
                                   amb.degrees, amb if not amb.algebra.is_trivial() else None)

    def is_graded(self) -> bool:
        if self.ambient.degrees is None:
            return False
        return all(column_degree(c, self.ambient.degrees) != "inhomogeneous" for c in self.generators)

    def homogenized(self) -> SubobjectHandle:
        """Same subobject generated by fine-homogeneous components (graded ambients only)."""
        degs = self.ambient.degrees
        parts = [part for c in self.generators for _, part in homogeneous_parts(c, degs)]
        return SubobjectHandle(self.ambient, parts, check=False)

    def __repr__(self):
        return f"SubobjectHandle({len(self.generators)} generators)"


def present_subquotient(ring, rank, gens, rels, degrees=None, acting: ModuleObject | None = None):
    """Module generated by ``gens`` inside R^rank / span(rels).

    Relations are the syzygies of [gens | rels] restricted to the gens part.
    With ``acting`` the algebra action is transported by lifting.
    """
    gens = [g for g in gens if not is_zero_column(g)]
    s = len(gens)
    if s == 0:
        return ModuleObject(ring, 0, [], [])
    lf = Lifter(ring, rank, gens + list(rels))
    syz = [vec_to_column(v, ring, s) for v in lf.syzygies()]
    gdegs = None
    if degrees is not None:
        gdegs = [column_degree(g, degrees) for g in gens]
        if any(d is None or d == "inhomogeneous" for d in gdegs):
            gdegs = None
        else:
            syz = [part for c in syz for _, part in homogeneous_parts(c, gdegs)]
            syz = minimize_columns(ring, s, syz, gdegs)
    action = None
    algebra = None
    if acting is not None and not acting.algebra.is_trivial():
        algebra = acting.algebra
        action = []
        for i in range(algebra.dim):
            mat = []
            for g in gens:
                coeffs = lf.lift(acting.act(i, g))
                if coeffs is None:
                    raise InvalidSubobject("generators are not stable under the algebra action")
                mat.append(vec_to_column(coeffs, ring, s))
            action.append(mat)
    return ModuleObject(ring, s, syz, gdegs, algebra, action, validate=False)


def prune_generators(ring, rank, gens, base, degrees=None):
    """Drop generators lying in the span of the kept ones plus ``base``.

    Graded inputs are scanned by increasing total degree.
    """
    gens = [g for g in gens if not is_zero_column(g)]
    if degrees is not None:
        degs = [column_degree(g, degrees) for g in gens]
        if all(d is not None and d != "inhomogeneous" for d in degs):
            order = sorted(range(len(gens)), key=lambda k: (sum(degs[k]), degs[k], k))
            gens = [gens[k] for k in order]
    kept = []
    lf = Lifter(ring, rank, list(base)) if base else None
    for g in gens:
        if lf is not None and lf.contains(g):
            continue
        kept.append(g)
        lf = Lifter(ring, rank, kept + list(base))
    return kept


# -- annihilators and colons -------------------------------------------------------

def annihilator_of_columns(mod: ModuleObject, cols) -> Ideal:
    """∩_v (N : v) over the given elements."""
    ring = mod.ring
    ideals = []
    for v in cols:
        if mod.in_relations(v):
            continue
        lf = Lifter(ring, mod.rank, [v] + mod.relations)
        gens = [vec_to_column(w, ring, 1)[0] for w in lf.syzygies()]
        ideals.append(Ideal(ring, gens))
    return intersect_all(ideals, ring).canonical()


def annihilator(mod: ModuleObject) -> Ideal:
    """Ann(M) as the intersection of the generators' annihilators."""
    return annihilator_of_columns(mod, mod.identity_matrix())


def preimage_columns(ring, src_rank, images, target_rank, target_sub):
    """Generators of {u ∈ R^src_rank : Σ u_j images_j ∈ span(target_sub)}."""
    lf = Lifter(ring, target_rank, list(images) + list(target_sub))
    return [vec_to_column(v, ring, src_rank) for v in lf.syzygies()
            if not is_zero_column(vec_to_column(v, ring, src_rank))]


def scalar_kernel_image(mod: ModuleObject, a) -> tuple[SubobjectHandle, SubobjectHandle]:
    """(Ker(a_M), aM) as subobjects."""
    ring, r = mod.ring, mod.rank
    a = ring.coerce(a)
    images = [_scale_col(_unit_col(ring, r, j), a) for j in range(r)]
    ker = preimage_columns(ring, r, images, r, mod.relations)
    ker_h = SubobjectHandle(mod, ker, check=False)
    if mod.is_graded() and a.is_monomial():
        ker_h = ker_h.homogenized()
    img = SubobjectHandle(mod, images, check=False)
    return ker_h, img


def sub_sum(n1: SubobjectHandle, n2: SubobjectHandle) -> SubobjectHandle:
    return SubobjectHandle(n1.ambient, n1.generators + n2.generators, check=False)


def sub_intersection(n1: SubobjectHandle, n2: SubobjectHandle) -> SubobjectHandle:
    """(L1 + N) ∩ (L2 + N) via a position-over-term basis in R^r ⊕ R^r."""
    amb = n1.ambient
    ring, r = amb.ring, amb.rank
    a = n1.generators + amb.relations
    b = n2.generators + amb.relations
    gens = []
    for g in a:
        v = column_to_vec(g)
        v.update({(i + r, e): c for (i, e), c in column_to_vec(g).items()})
        gens.append(v)
    for h in b:
        gens.append(column_to_vec(h))
    if not n1.generators or not n2.generators:
        return amb.zero_sub()
    gb = ModuleGB(ring, 2 * r, gens, "pot")
    out = []
    for v in gb.vectors():
        if all(i >= r for (i, _) in v):
            out.append(vec_to_column(v, ring, r, offset=r))
    res = SubobjectHandle(amb, out, check=False)
    if amb.is_graded() and n1.is_graded() and n2.is_graded():
        res = res.homogenized()
    return res


def sub_colon(n2: SubobjectHandle, n1: SubobjectHandle) -> Ideal:
    """(N2 : N1) = {a : a N1 ⊆ N2}."""
    amb = n2.ambient
    ring = amb.ring
    ideals = []
    for v in n1.generators:
        lf = Lifter(ring, amb.rank, [v] + n2.generators + amb.relations)
        ideals.append(Ideal(ring, [vec_to_column(w, ring, 1)[0] for w in lf.syzygies()]))
    return intersect_all(ideals, ring).canonical()


def subobject_lattice_ops(n1: SubobjectHandle, n2: SubobjectHandle) -> dict:
    if n1.ambient is not n2.ambient:
        raise ValueError("subobjects of different ambients")
    return {
        "sum": sub_sum(n1, n2),
        "intersection": sub_intersection(n1, n2),
        "colon": sub_colon(n2, n1),
    }


def quotient_object(mod: ModuleObject, sub: SubobjectHandle):
    """(M/N, projection matrix).  The projection is the identity on generators."""
    q = ModuleObject(mod.ring, mod.rank, mod.relations + sub.generators, mod.degrees,
                     mod.algebra, mod.action, validate=False)
    return q, mod.identity_matrix()


def saturate_columns(ring, rank, base, f: Polynomial, cap: int = 64):
    """Generators of (L :_F f^∞) for L = span(base) ⊆ F = R^rank."""
    cur = list(base)
    for _ in range(cap):
        images = [_scale_col(_unit_col(ring, rank, j), f) for j in range(rank)]
        nxt = preimage_columns(ring, rank, images, rank, cur)
        lf = Lifter(ring, rank, cur) if cur else None
        if all(lf is not None and lf.contains(c) for c in nxt) or (not nxt):
            return cur
        cur = minimize_columns(ring, rank, cur + nxt)
    raise RuntimeError("module saturation did not stabilize")


def torsion_submodule(mod: ModuleObject, k: Ideal) -> SubobjectHandle:
    """(0 :_M K^∞) = ∩_g (0 :_M g^∞) over generators g of K."""
    ring = mod.ring
    if k.is_zero():
        return mod.zero_sub()
    result = None
    for g in k.gb:
        cols = saturate_columns(ring, mod.rank, mod.relations, g)
        h = SubobjectHandle(mod, cols, check=False)
        result = h if result is None else sub_intersection(result, h)
    if mod.is_graded() and result is not None:
        result = result.homogenized()
    return result


# -- Hom and Ext -------------------------------------------------------------------

def _block_map(ring, mat_cols, a_rank: int, r: int):
    """Map M^a -> M^b induced by an a×b matrix (list of b columns of length a).

    Returns the images of the basis (h, j) of R^{r a} as columns of R^{r b};
    basis index h*r + j.
    """
    b = len(mat_cols)
    out = []
    for h in range(a_rank):
        for j in range(r):
            col = zero_column(ring, r * b)
            for k in range(b):
                col[k * r + j] = mat_cols[k][h]
            out.append(col)
    return out


def _block_relations(mod: ModuleObject, copies: int):
    ring, r = mod.ring, mod.rank
    out = []
    for h in range(copies):
        for col in mod.relations:
            big = zero_column(ring, r * copies)
            big[h * r:(h + 1) * r] = col
            out.append(big)
    return out


def _block_degrees(mod: ModuleObject, shifts):
    if mod.degrees is None or shifts is None:
        return None
    return [tuple(a - b for a, b in zip(d, s)) for s in shifts for d in mod.degrees]


def _block_action(mod: ModuleObject, copies: int):
    if mod.algebra.is_trivial():
        return None
    ring, r = mod.ring, mod.rank
    out = []
    for m in mod.action:
        big = []
        for h in range(copies):
            for j in range(r):
                col = zero_column(ring, r * copies)
                col[h * r:(h + 1) * r] = m[j]
                big.append(col)
        out.append(big)
    return out


def _power_module(mod: ModuleObject, copies: int, shifts) -> ModuleObject:
    return ModuleObject(mod.ring, mod.rank * copies, _block_relations(mod, copies),
                        _block_degrees(mod, shifts), mod.algebra, _block_action(mod, copies),
                        validate=False)


def cohomology_module(mod: ModuleObject, a_mat, a_rank, b_mat, b_rank, prev_rank, shifts):
    """ker(M^a -> M^b) / im(M^prev -> M^a) where maps come from polynomial matrices.

    ``a_mat`` is prev×a (or None), ``b_mat`` is a×b (or None for the zero map).
    """
    ring, r = mod.ring, mod.rank
    big = _power_module(mod, a_rank, shifts)
    if b_mat is not None and b_rank:
        images = _block_map(ring, b_mat, a_rank, r)
        kernel = preimage_columns(ring, r * a_rank, images, r * b_rank, _block_relations(mod, b_rank))
    else:
        kernel = big.identity_matrix()
    image = _block_map(ring, a_mat, prev_rank, r) if a_mat is not None and prev_rank else []
    if big.is_graded():
        kernel = [part for c in kernel for _, part in homogeneous_parts(c, big.degrees)]
        image = [part for c in image for _, part in homogeneous_parts(c, big.degrees)]
    kernel = prune_generators(ring, r * a_rank, kernel, big.relations + image, big.degrees)
    return present_subquotient(ring, r * a_rank, kernel, big.relations + image, big.degrees,
                               big if not mod.algebra.is_trivial() else None)


def hom_internal(v: ModuleObject, mod: ModuleObject) -> ModuleObject:
    """Hom_R(V, M) as the kernel of M^{gens V} -> M^{rels V}."""
    shifts = v.degrees if (v.degrees is not None and v.is_graded()) else None
    return cohomology_module(mod, None, v.rank, v.relations, len(v.relations), 0, shifts)


def ext_modules(v: ModuleObject, mod: ModuleObject, top: int) -> list[ModuleObject]:
    """[Ext^0 .. Ext^top](V, M) from a free resolution of V."""
    graded = v.is_graded()
    res = free_resolution(v.ring, v.rank, v.relations, top + 1, v.degrees if graded else None)
    out = []
    for i in range(top + 1):
        shifts = res.degree_shifts[i] if graded else None
        prev = res.matrices[i - 1] if i >= 1 else None
        prev_rank = res.ranks[i - 1] if i >= 1 else 0
        out.append(cohomology_module(mod, prev, res.ranks[i], res.matrices[i], res.ranks[i + 1],
                                     prev_rank, shifts))
    return out


# -- localization ----------------------------------------------------------------

class LocalizedModule:
    """M_T for T generated by monomials: kernel of M -> M_T plus the degreewise view."""

    def __init__(self, mod: ModuleObject, inverted_vars: frozenset, kernel: SubobjectHandle):
        self.base = mod
        self.inverted = inverted_vars
        self.kernel = kernel
        self.reduced, _ = quotient_object(mod, kernel)

    def is_zero(self) -> bool:
        return self.reduced.is_zero()

    def graded(self):
        return self.reduced.graded(self.inverted)

    def graded_piece(self, a):
        return self.graded().piece(a)


def localize(mod: ModuleObject, inverted) -> LocalizedModule:
    """Localize at the multiplicative set generated by the given monomials."""
    ring = mod.ring
    if isinstance(inverted, (Polynomial, str)):
        inverted = [inverted]
    monos = [ring.coerce(f) for f in inverted]
    support = set()
    for f in monos:
        if not f.is_monomial() or f.is_constant():
            raise NonMonomialDenominator(f"cannot invert {f}")
        support |= f.support()
    u = ring.monomial(tuple(1 if i in support else 0 for i in range(ring.n)))
    kernel = SubobjectHandle(mod, saturate_columns(ring, mod.rank, mod.relations, u), check=False)
    if mod.is_graded():
        kernel = kernel.homogenized()
    return LocalizedModule(mod, frozenset(support), kernel)


def random_monomial_ideal(ring: PolynomialRing, rng, max_gens: int = 3, max_deg: int = 4) -> Ideal:
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = [0] * ring.n
        for _ in range(rng.randint(1, max_deg)):
            e[rng.randrange(ring.n)] += 1
        gens.append(ring.monomial(e))
    return Ideal(ring, gens)


def all_exponents_up_to(n: int, d: int):
    for e in iproduct(range(d + 1), repeat=n):
        if sum(e) <= d:
            yield e
