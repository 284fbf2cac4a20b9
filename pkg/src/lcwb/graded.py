"""Degreewise linear algebra for Z^n-graded modules.

Every graded module exposes finite-dimensional pieces M_a and the matrices
of multiplication by monomials x^b : M_a -> M_{a+b}.  Matrices act on column
vectors of piece coordinates, so ``mult(a, b)`` has shape
(dim M_{a+b}, dim M_a).
"""

from __future__ import annotations

from itertools import product as iproduct

import numpy as np

from . import linalg as la
from .errors import CapExceeded


def unit_vec(n: int, i: int):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def box(lo: int, hi: int, n: int):
    """All degrees in [lo, hi]^n, in lexicographic order."""
    return [tuple(a) for a in iproduct(range(lo, hi + 1), repeat=n)]


class GradedModule:
    """Interface: ``dim(a)`` and ``mult(a, b)``."""

    n: int
    p: int

    def dim(self, a) -> int:
        raise NotImplementedError

    def mult(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def var_action(self, a, i: int) -> np.ndarray:
        return self.mult(a, unit_vec(self.n, i))

    def dims(self, degrees) -> dict:
        return {tuple(a): self.dim(a) for a in degrees}


class Piece:
    """Degree-a piece of a presented module: labels = valid generator indices."""

    def __init__(self, labels, quot: la.QuotientSpace):
        self.labels = labels
        self.pos = {j: k for k, j in enumerate(labels)}
        self.quot = quot

    @property
    def dim(self) -> int:
        return self.quot.dim


class PresentedGraded(GradedModule):
    """coker(C) with generator degrees d_j and relation degrees e_k, localized at variables ``inverted``.

    The degree-a piece is spanned by generators j with (a - d_j)_i >= 0 for
    every non-inverted i, modulo relations k satisfying the same condition;
    monomial multiplication is the identity on generator labels.
    """

    def __init__(self, n, p, gen_degrees, rel_degrees, coeffs, inverted=frozenset()):
        self.n = n
        self.p = p
        self.gen_degrees = [tuple(d) for d in gen_degrees]
        self.rel_degrees = [tuple(d) for d in rel_degrees]
        self.coeffs = np.mod(np.asarray(coeffs, dtype=np.int64).reshape(len(self.gen_degrees),
                                                                      len(self.rel_degrees)), p)
        self.inverted = frozenset(inverted)
        self._free = [i for i in range(n) if i not in self.inverted]
        self._cache: dict = {}
        self._mult_cache: dict = {}

    def localized(self, inverted) -> PresentedGraded:
        return PresentedGraded(self.n, self.p, self.gen_degrees, self.rel_degrees, self.coeffs,
                               self.inverted | frozenset(inverted))

    def _valid(self, a, d) -> bool:
        return all(a[i] >= d[i] for i in self._free)

    def piece(self, a) -> Piece:
        a = tuple(a)
        got = self._cache.get(a)
        if got is not None:
            return got
        labels = [j for j, d in enumerate(self.gen_degrees) if self._valid(a, d)]
        rels = [k for k, e in enumerate(self.rel_degrees) if self._valid(a, e)]
        sub = self.coeffs[np.ix_(labels, rels)].T if labels and rels else la.zeros(0, len(labels))
        pc = Piece(labels, la.QuotientSpace(la.identity(len(labels)), sub, self.p))
        self._cache[a] = pc
        return pc

    def dim(self, a) -> int:
        return self.piece(a).dim

    def embed(self, src: Piece, tgt: Piece, vecs: np.ndarray) -> np.ndarray:
        """Rows in src label coordinates -> rows in tgt label coordinates."""
        out = la.zeros(vecs.shape[0], len(tgt.labels))
        for k, j in enumerate(src.labels):
            out[:, tgt.pos[j]] = vecs[:, k]
        return out

    def mult(self, a, b) -> np.ndarray:
        key = (tuple(a), tuple(b))
        got = self._mult_cache.get(key)
        if got is not None:
            return got
        for i in self._free:
            if b[i] < 0:
                raise ValueError("negative exponent in a non-inverted variable")
        src = self.piece(a)
        tgt = self.piece(vadd(a, b))
        if src.dim == 0 or tgt.dim == 0:
            m = la.zeros(tgt.dim, src.dim)
        else:
            m = tgt.quot.coords_matrix(self.embed(src, tgt, src.quot.basis))
        self._mult_cache[key] = m
        return m

    def localization_map(self, other: PresentedGraded, a) -> np.ndarray:
        """Canonical map self_a -> other_a where other inverts a superset of variables."""
        src, tgt = self.piece(a), other.piece(a)
        if src.dim == 0 or tgt.dim == 0:
            return la.zeros(tgt.dim, src.dim)
        return tgt.quot.coords_matrix(self.embed(src, tgt, src.quot.basis))

    def element_coords(self, a, label_vec) -> np.ndarray:
        """Quotient coordinates of a vector given over the piece's labels."""
        return self.piece(a).quot.coords(np.asarray(label_vec, dtype=np.int64))


class ShiftedModule(GradedModule):
    """M(s): degree a piece is M_{a+s}."""

    def __init__(self, base: GradedModule, shift):
        self.base = base
        self.shift = tuple(shift)
        self.n = base.n
        self.p = base.p

    def dim(self, a):
        return self.base.dim(vadd(a, self.shift))

    def mult(self, a, b):
        return self.base.mult(vadd(a, self.shift), b)


class DirectSum(GradedModule):
    def __init__(self, parts):
        self.parts = list(parts)
        self.n = self.parts[0].n if self.parts else 0
        self.p = self.parts[0].p if self.parts else 2

    def dim(self, a):
        return sum(m.dim(a) for m in self.parts)

    def offsets(self, a):
        out, k = [], 0
        for m in self.parts:
            out.append(k)
            k += m.dim(a)
        return out

    def mult(self, a, b):
        blocks = [m.mult(a, b) for m in self.parts]
        return block_diag(blocks)


class ZeroModule(GradedModule):
    def __init__(self, n, p):
        self.n, self.p = n, p

    def dim(self, a):
        return 0

    def mult(self, a, b):
        return la.zeros(0, 0)


def block_diag(blocks) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = la.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


# -- cohomology of degreewise complexes ----------------------------------------------

class CohomologyPiece:
    """ker(d_out)/im(d_in) inside a chain space; basis rows are chain vectors."""

    def __init__(self, d_in: np.ndarray, d_out: np.ndarray, dim_chain: int, p: int):
        ker = la.nullspace(d_out, p) if d_out.shape[0] else la.identity(dim_chain)
        if dim_chain == 0:
            ker = la.zeros(0, 0)
        im = d_in.T.copy() if d_in.shape[1] else la.zeros(0, dim_chain)
        self.quot = la.QuotientSpace(ker, im, p)
        self.dim_chain = dim_chain

    @property
    def dim(self):
        return self.quot.dim


class CohomologyModule(GradedModule):
    """H^i of a complex of graded modules with degree-0 differentials.

    ``terms`` is a dict i -> GradedModule and ``diff(i, a)`` returns the
    matrix of C^i_a -> C^{i+1}_a.
    """

    def __init__(self, terms: dict, diff, i: int, n: int, p: int):
        self.terms = terms
        self.diff = diff
        self.i = i
        self.n = n
        self.p = p
        self._cache: dict = {}

    def _dim_chain(self, j, a):
        t = self.terms.get(j)
        return t.dim(a) if t is not None else 0

    def piece(self, a) -> CohomologyPiece:
        a = tuple(a)
        got = self._cache.get(a)
        if got is None:
            i = self.i
            c = self._dim_chain(i, a)
            d_out = self.diff(i, a) if i + 1 in self.terms else la.zeros(0, c)
            d_in = self.diff(i - 1, a) if i - 1 in self.terms else la.zeros(c, 0)
            got = CohomologyPiece(d_in, d_out, c, self.p)
            self._cache[a] = got
        return got

    def dim(self, a):
        return self.piece(a).dim

    def mult(self, a, b):
        src = self.piece(a)
        tgt = self.piece(vadd(a, b))
        if src.dim == 0 or tgt.dim == 0:
            return la.zeros(tgt.dim, src.dim)
        chain = self.terms[self.i].mult(a, b)
        imgs = la.matmul(chain, src.quot.basis.T, self.p).T
        return tgt.quot.coords_matrix(imgs)


def induced_on_cohomology(chain_map: np.ndarray, src: CohomologyPiece, tgt: CohomologyPiece, p: int):
    """Matrix of the map induced by a chain-level matrix on cohomology pieces."""
    if src.dim == 0 or tgt.dim == 0:
        return la.zeros(tgt.dim, src.dim)
    imgs = la.matmul(chain_map, src.quot.basis.T, p).T
    return tgt.quot.coords_matrix(imgs)


# -- Hom out of graded free resolutions ------------------------------------------------

def _entry_data(f, src_deg, tgt_deg):
    """(coefficient, exponent) for a fine-homogeneous matrix entry, or None when zero."""
    if f.is_zero():
        return None
    (e, c), = f.terms.items()
    return c, e


class HomFromResolution:
    """The complex Hom(F_•, M) for a graded free resolution F_• and graded M.

    Hom(F_i, M)_a = ⊕_h M_{a + s_h} over basis elements h of F_i of degree s_h.
    """

    def __init__(self, res, mod: GradedModule, top: int):
        self.res = res
        self.mod = mod
        self.top = top
        self.p = mod.p
        self.n = mod.n
        self.terms = {i: DirectSum([ShiftedModule(mod, s) for s in res.degree_shifts[i]])
                      if res.degree_shifts[i] else ZeroModule(mod.n, mod.p)
                      for i in range(min(top + 2, len(res.degree_shifts)))}
        self._dcache: dict = {}

    def diff(self, i, a):
        """Hom(F_i, M)_a -> Hom(F_{i+1}, M)_a."""
        key = (i, tuple(a))
        got = self._dcache.get(key)
        if got is not None:
            return got
        res, mod, p = self.res, self.mod, self.p
        src_shifts = res.degree_shifts[i]
        tgt_shifts = res.degree_shifts[i + 1] if i + 1 < len(res.degree_shifts) else []
        src_dims = [mod.dim(vadd(a, s)) for s in src_shifts]
        tgt_dims = [mod.dim(vadd(a, s)) for s in tgt_shifts]
        out = la.zeros(sum(tgt_dims), sum(src_dims))
        mat = res.matrices[i] if i < len(res.matrices) else []
        r0 = 0
        for k, col in enumerate(mat):
            c0 = 0
            for h, f in enumerate(col):
                data = _entry_data(f, src_shifts[h], tgt_shifts[k])
                if data is not None and src_dims[h] and tgt_dims[k]:
                    c, _ = data
                    shift = vsub(tgt_shifts[k], src_shifts[h])
                    block = mod.mult(vadd(a, src_shifts[h]), shift)
                    out[r0:r0 + tgt_dims[k], c0:c0 + src_dims[h]] = np.mod(
                        out[r0:r0 + tgt_dims[k], c0:c0 + src_dims[h]] + c * block, p)
                c0 += src_dims[h]
            r0 += tgt_dims[k]
        self._dcache[key] = out
        return out

    def ext(self, i: int) -> CohomologyModule:
        return CohomologyModule(self.terms, self.diff, i, self.n, self.p)

    def pullback(self, alpha_cols, src_res, i, a):
        """Hom(F_i, M)_a -> Hom(F'_i, M)_a for a chain-map component α_i : F'_i -> F_i.

        ``alpha_cols`` are the columns α_i(e'_k) in F_i coordinates; this
        object's resolution is the target F and ``src_res`` is F'.
        """
        mod, p = self.mod, self.p
        f_shifts = self.res.degree_shifts[i]
        g_shifts = src_res.degree_shifts[i]
        f_dims = [mod.dim(vadd(a, s)) for s in f_shifts]
        g_dims = [mod.dim(vadd(a, s)) for s in g_shifts]
        out = la.zeros(sum(g_dims), sum(f_dims))
        r0 = 0
        for k, col in enumerate(alpha_cols):
            c0 = 0
            for h, f in enumerate(col):
                if not f.is_zero() and f_dims[h] and g_dims[k]:
                    (e, c), = f.terms.items()
                    shift = vsub(g_shifts[k], f_shifts[h])
                    block = mod.mult(vadd(a, f_shifts[h]), shift)
                    out[r0:r0 + g_dims[k], c0:c0 + f_dims[h]] = np.mod(
                        out[r0:r0 + g_dims[k], c0:c0 + f_dims[h]] + c * block, p)
                c0 += f_dims[h]
            r0 += g_dims[k]
        return out


def lift_chain_map(src_res, tgt_res, phi0_cols, top: int):
    """Components α_0..α_top of a chain map F' -> F extending α_0 = phi0.

    Columns of α_k are α_k(e'_j) in F_k coordinates, chosen homogeneous of
    the degree of e'_j.
    """
    from .groebner import vec_to_column
    from .ideal import apply_matrix, homogeneous_parts
    ring = tgt_res.ring
    alphas = [phi0_cols]
    for k in range(1, top + 1):
        if k > len(src_res.matrices) or k > len(tgt_res.matrices):
            break
        src_mat = src_res.matrices[k - 1]
        tgt_rank = tgt_res.ranks[k]
        cols = []
        for j, c in enumerate(src_mat):
            img = apply_matrix(ring, alphas[k - 1], c, tgt_res.ranks[k - 1])
            if all(f.is_zero() for f in img):
                cols.append([ring.zero() for _ in range(tgt_rank)])
                continue
            coeffs = tgt_res.lifter(k - 1).lift(img)
            if coeffs is None:
                raise ValueError("chain map does not lift: image leaves the boundary module")
            col = vec_to_column(coeffs, ring, tgt_rank)
            want = src_res.degree_shifts[k][j]
            parts = dict(homogeneous_parts(col, tgt_res.degree_shifts[k]))
            cols.append(parts.get(want, [ring.zero() for _ in range(tgt_rank)]))
        alphas.append(cols)
    return alphas


def check_stable(dims_seq, maps_seq, p):
    """Whether transitions are isomorphisms: list of booleans per step."""
    out = []
    for t in range(len(maps_seq)):
        m = maps_seq[t]
        d0, d1 = dims_seq[t], dims_seq[t + 1]
        out.append(d0 == d1 and (d0 == 0 or la.rank(m, p) == d0))
    return out


def first_stable(iso_flags, start_index: int = 0):
    """Smallest t (index into the value list) with flags[t-1] and flags[t] true, or None."""
    for t in range(max(1, start_index), len(iso_flags)):
        if iso_flags[t - 1] and iso_flags[t]:
            return t
    return None


__all__ = ["GradedModule", "PresentedGraded", "DirectSum", "ShiftedModule", "CohomologyModule",
           "HomFromResolution", "lift_chain_map", "box", "CapExceeded"]
