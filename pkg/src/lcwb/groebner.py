"""Buchberger's algorithm for submodules of free modules R^r.

A module element is a dict mapping ``(component, exponent)`` to a nonzero
coefficient mod p.  Ideals are the rank-one case (component 0).  Two term
orders on R^r are offered: ``pot`` compares components first (lower index
wins) and is used for elimination of components; ``top`` compares monomials
first.
"""

from __future__ import annotations

from .poly import ORDERS, Polynomial, PolynomialRing, mono_divides, mono_lcm


def term_key(ring: PolynomialRing, module_order: str = "pot"):
    mk = ORDERS[ring.order]
    if module_order == "pot":
        return lambda t: (-t[0], mk(t[1]))
    if module_order == "top":
        return lambda t: (mk(t[1]), -t[0])
    raise ValueError(f"unknown module order {module_order!r}")


def poly_to_vec(f: Polynomial, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f.terms.items()}


def column_to_vec(col) -> dict:
    """List of polynomials -> module element."""
    v = {}
    for i, f in enumerate(col):
        for e, c in f.terms.items():
            v[(i, e)] = c
    return v


def vec_to_column(v: dict, ring: PolynomialRing, rank: int, offset: int = 0) -> list[Polynomial]:
    parts = [dict() for _ in range(rank)]
    for (i, e), c in v.items():
        if offset <= i < offset + rank:
            parts[i - offset][e] = c
    return [Polynomial(ring, t) for t in parts]


def _sub_scaled(v: dict, g: dict, shift, c: int, p: int) -> None:
    """v -= c * x^shift * g (in place)."""
    for (i, e), a in g.items():
        t = (i, tuple(x + y for x, y in zip(e, shift)))
        val = (v.get(t, 0) - c * a) % p
        if val:
            v[t] = val
        else:
            v.pop(t, None)


def _scale(v: dict, c: int, p: int) -> dict:
    return {t: (a * c) % p for t, a in v.items()}


class _Elem:
    __slots__ = ("vec", "lt")

    def __init__(self, vec, lt):
        self.vec = vec
        self.lt = lt  # (component, exponent), coefficient normalized to 1


class ModuleGB:
    """Reduced Gröbner basis of the submodule of R^rank spanned by ``gens``."""

    def __init__(self, ring: PolynomialRing, rank: int, gens, module_order: str = "pot"):
        self.ring = ring
        self.rank = rank
        self.p = ring.p
        self.module_order = module_order
        self.key = term_key(ring, module_order)
        self.basis = self._compute([g for g in gens if g])
        self._index = {}
        for el in self.basis:
            self._index.setdefault(el.lt[0], []).append(el)

    # -- core ---------------------------------------------------------
    def _leading(self, v: dict):
        return max(v, key=self.key)

    def _normalize(self, v: dict) -> _Elem:
        lt = self._leading(v)
        inv = pow(v[lt], -1, self.p)
        return _Elem(_scale(v, inv, self.p), lt)

    @staticmethod
    def _find(index, t):
        for el in index.get(t[0], ()):
            if mono_divides(el.lt[1], t[1]):
                return el
        return None

    def _reduce_with(self, v: dict, index, full: bool = True) -> dict:
        v = dict(v)
        rem = {}
        p = self.p
        while v:
            t = self._leading(v)
            el = self._find(index, t)
            if el is None:
                if not full:
                    rem.update(v)
                    return rem
                rem[t] = v.pop(t)
                continue
            shift = tuple(a - b for a, b in zip(t[1], el.lt[1]))
            _sub_scaled(v, el.vec, shift, v[t], p)
        return rem

    def _compute(self, gens):
        p, key = self.p, self.key
        rank_one = self.rank == 1
        elems: list[_Elem] = []
        index: dict = {}
        pairs: set = set()

        def add(h):
            el = self._normalize(h)
            k = len(elems)
            elems.append(el)
            index.setdefault(el.lt[0], []).append(el)
            for i, other in enumerate(elems[:-1]):
                if other is not None and other.lt[0] == el.lt[0]:
                    pairs.add((i, k))

        for g in gens:
            h = self._reduce_with(g, index)
            if h:
                add(h)

        def lcm_of(pair):
            a, b = elems[pair[0]], elems[pair[1]]
            return (a.lt[0], mono_lcm(a.lt[1], b.lt[1]))

        while pairs:
            pair = min(pairs, key=lambda pr: (key(lcm_of(pr)), pr))
            pairs.discard(pair)
            i, j = pair
            a, b = elems[i], elems[j]
            comp, lcm = lcm_of(pair)
            if rank_one and all(x == 0 or y == 0 for x, y in zip(a.lt[1], b.lt[1])):
                continue  # coprime leading monomials
            if self._chain_skip(i, j, comp, lcm, elems, pairs):
                continue
            s = {(c, tuple(x + y for x, y in zip(e, _diff(lcm, a.lt[1])))): v for (c, e), v in a.vec.items()}
            _sub_scaled(s, b.vec, _diff(lcm, b.lt[1]), 1, p)
            if not s:
                continue
            h = self._reduce_with(s, index)
            if h:
                add(h)

        # Minimalize then interreduce.
        alive = [el for el in elems]
        minimal = []
        for idx, el in enumerate(alive):
            redundant = False
            for jdx, other in enumerate(alive):
                if jdx == idx or other.lt[0] != el.lt[0]:
                    continue
                if mono_divides(other.lt[1], el.lt[1]) and (other.lt != el.lt or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                minimal.append(el)
        out = []
        for el in minimal:
            others = {}
            for o in minimal:
                if o is not el:
                    others.setdefault(o.lt[0], []).append(o)
            tail = dict(el.vec)
            lead = tail.pop(el.lt)
            red = self._reduce_with(tail, others)
            red[el.lt] = lead
            out.append(_Elem(red, el.lt))
        out.sort(key=lambda el: key(el.lt))
        return out

    @staticmethod
    def _chain_skip(i, j, comp, lcm, elems, pairs) -> bool:
        for k, el in enumerate(elems):
            if k == i or k == j or el.lt[0] != comp:
                continue
            if not mono_divides(el.lt[1], lcm):
                continue
            if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
                continue
            return True
        return False

    # -- public -------------------------------------------------------
    def reduce(self, v: dict) -> dict:
        """Fully reduced normal form."""
        return self._reduce_with(v, self._index)

    def contains(self, v: dict) -> bool:
        return not self._reduce_with(v, self._index, full=False)

    def vectors(self) -> list[dict]:
        return [el.vec for el in self.basis]

    def leading_terms(self) -> list:
        return [el.lt for el in self.basis]


def _diff(a, b):
    return tuple(x - y for x, y in zip(a, b))


def groebner_basis(polys, order: str | None = None) -> list[Polynomial]:
    """Reduced monic Gröbner basis of the ideal generated by ``polys``."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return []
    ring = polys[0].ring
    if order and order != ring.order:
        ring = _with_order(ring, order)
        polys = [Polynomial(ring, f.terms) for f in polys]
    gb = ModuleGB(ring, 1, [poly_to_vec(f) for f in polys])
    return [Polynomial(ring, {e: c for (_, e), c in v.items()}) for v in gb.vectors()]


def _with_order(ring: PolynomialRing, order: str) -> PolynomialRing:
    return PolynomialRing(ring.variables, ring.p, order)


class Lifter:
    """Expresses vectors of R^r as R-combinations of fixed columns.

    Uses a position-over-term basis of the graph module spanned by
    (c_j, e_j) in R^r ⊕ R^s: a vector v lies in the column span iff the
    normal form of (v, 0) has no terms in the first r components, and then
    the remaining part is minus a coefficient vector.
    """

    def __init__(self, ring: PolynomialRing, rank: int, columns):
        self.ring = ring
        self.rank = rank
        self.columns = [c if isinstance(c, dict) else column_to_vec(c) for c in columns]
        s = len(self.columns)
        self.s = s
        gens = []
        for j, c in enumerate(self.columns):
            g = dict(c)
            g[(rank + j, ring.zero_exp)] = 1
            gens.append(g)
        self.gb = ModuleGB(ring, rank + s, gens, "pot")

    def syzygies(self) -> list[dict]:
        """Generators of the kernel of the column map, as vectors in R^s."""
        r = self.rank
        out = []
        for v in self.gb.vectors():
            if all(i >= r for (i, _) in v):
                out.append({(i - r, e): c for (i, e), c in v.items()})
        return out

    def lift(self, v):
        """Coefficient vector (dict in R^s) with columns·coeffs = v, or None."""
        if not isinstance(v, dict):
            v = column_to_vec(v)
        nf = self.gb.reduce(v)
        r, p = self.rank, self.ring.p
        if any(i < r for (i, _) in nf):
            return None
        return {(i - r, e): (-c) % p for (i, e), c in nf.items()}

    def contains(self, v) -> bool:
        return self.lift(v) is not None


def syzygies(ring: PolynomialRing, rank: int, columns) -> list[list[Polynomial]]:
    """Columns generating the syzygy module of the given columns of R^rank."""
    lf = Lifter(ring, rank, columns)
    return [vec_to_column(v, ring, lf.s) for v in lf.syzygies()]


def submodule_gb(ring: PolynomialRing, rank: int, columns, module_order: str = "top") -> ModuleGB:
    cols = [c if isinstance(c, dict) else column_to_vec(c) for c in columns]
    return ModuleGB(ring, rank, cols, module_order)
