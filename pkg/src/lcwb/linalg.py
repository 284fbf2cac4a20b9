"""Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy.int64`` arrays with entries in ``[0, p)``.  Subspaces are
carried as row spaces: a subspace of F_p^n is an array of shape ``(k, n)``
whose rows span it.  Primes must stay below 2**31 so that products of two
residues fit in an int64.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**31


def asmat(a, ncols: int | None = None, p: int | None = None) -> np.ndarray:
    """Coerce ``a`` to a 2-d int64 array (optionally reduced mod p)."""
    m = np.asarray(a, dtype=np.int64)
    if m.ndim == 1:
        if ncols is not None and m.size == 0:
            m = m.reshape(0, ncols)
        else:
            m = m.reshape(1, -1)
    if m.size == 0 and ncols is not None:
        m = m.reshape(m.shape[0], ncols)
    if p is not None:
        m = np.mod(m, p)
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p; safe for any inner dimension."""
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    # Chunk the inner dimension so partial sums never overflow.
    out = zeros(a.shape[0], b.shape[1])
    step = max(1, (2**62) // (p * p))
    for k in range(0, a.shape[1], step):
        out = np.mod(out + a[:, k:k + step] @ b[k:k + step, :], p)
    return out


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.mod(np.array(a, dtype=np.int64, copy=True), p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = np.mod(m[r] * inv_mod(m[r, c], p), p)
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = np.mod(m[hit] - np.outer(col[hit], m[r]), p)
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Reduced basis of the row space of ``a``."""
    if a.shape[0] == 0:
        return a.reshape(0, a.shape[1])
    return rref(a, p)[0]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : a @ x = 0}."""
    rows, cols = a.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return identity(cols)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def left_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows y with y @ a = 0."""
    return nullspace(a.T.copy(), p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b (b a vector), or None."""
    rows, cols = a.shape
    b = np.mod(np.asarray(b, dtype=np.int64).reshape(rows), p)
    if cols == 0:
        return zeros(1, 0)[0] if not b.any() else None
    aug = np.concatenate([a, b.reshape(rows, 1)], axis=1)
    r, piv = rref(aug, p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x


def solve_many(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solution X of a @ X = b for a matrix right-hand side, or None."""
    rows, cols = a.shape
    k = b.shape[1]
    if cols == 0:
        return zeros(0, k) if not np.mod(b, p).any() else None
    r, piv = rref(np.concatenate([a, b], axis=1), p)
    if any(c >= cols for c in piv):
        return None
    x = zeros(cols, k)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols:]
    return x


def in_span(v: np.ndarray, basis: np.ndarray, p: int) -> bool:
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if basis.shape[0] == 0:
        return not np.mod(v, p).any()
    return rank(np.concatenate([basis, v]), p) == rank(basis, p)


def span_sum(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    return row_basis(np.concatenate([u, w]), p)


def intersect(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """Basis of rowspace(u) ∩ rowspace(w)."""
    n = u.shape[1]
    if u.shape[0] == 0 or w.shape[0] == 0:
        return zeros(0, n)
    u = row_basis(u, p)
    w = row_basis(w, p)
    # a @ u = b @ w  <=>  [a, -b] in left kernel of [u; w]
    k = left_nullspace(np.concatenate([u, w]), p)
    if k.shape[0] == 0:
        return zeros(0, n)
    return row_basis(matmul(k[:, :u.shape[0]], u, p), p)


def complement_basis(sub: np.ndarray, ambient: np.ndarray, p: int) -> np.ndarray:
    """Rows of ``ambient`` extending a basis of ``sub`` (sub ⊆ ambient) to one of ambient."""
    sub = row_basis(sub, p)
    picked = sub
    out = []
    for row in row_basis(ambient, p):
        trial = np.concatenate([picked, row.reshape(1, -1)])
        if rank(trial, p) > picked.shape[0]:
            picked = row_basis(trial, p)
            out.append(row)
    if not out:
        return zeros(0, ambient.shape[1])
    return np.array(out, dtype=np.int64)


def preimage(f: np.ndarray, target: np.ndarray, p: int) -> np.ndarray:
    """Rows x (source coordinates) with f @ x in rowspace(target).

    ``f`` has shape (m, n) acting on column vectors of length n.
    """
    m, n = f.shape
    if target.shape[0] == 0:
        return nullspace(f, p) if m else identity(n)
    # f x = t^T c  <=>  [f | -t^T] (x, c) = 0
    big = np.concatenate([f, np.mod(-target.T, p)], axis=1)
    k = nullspace(big, p)
    if k.shape[0] == 0:
        return zeros(0, n)
    return row_basis(k[:, :n], p)


class QuotientSpace:
    """Coordinates on V/W for row spaces W ⊆ V ⊆ F_p^n.

    ``basis`` rows are chosen representatives of a basis of V/W.
    """

    def __init__(self, ambient: np.ndarray, sub: np.ndarray, p: int):
        self.p = p
        self.sub = row_basis(sub, p)
        self.basis = complement_basis(self.sub, ambient, p)
        self.n = ambient.shape[1]
        self._stack = np.concatenate([self.basis, self.sub]) if self.sub.size else self.basis

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coords(self, v: np.ndarray) -> np.ndarray | None:
        """Coordinates of v (an element of V) modulo W; None if v ∉ V."""
        if self.dim == 0 and self.sub.shape[0] == 0:
            return np.zeros(0, dtype=np.int64) if not np.mod(v, self.p).any() else None
        x = solve(self._stack.T.copy(), np.asarray(v, dtype=np.int64), self.p)
        if x is None:
            return None
        return x[:self.dim]

    def coords_matrix(self, vs: np.ndarray) -> np.ndarray:
        """Columns = coordinates of rows of ``vs``."""
        if vs.shape[0] == 0:
            return zeros(self.dim, 0)
        x = solve_many(self._stack.T.copy(), vs.T.copy(), self.p)
        if x is None:
            raise ValueError("vector outside the ambient space")
        return x[:self.dim]
