"""Degreewise local cohomology: graded Čech complexes, colimits of Ext, the two-ideal
route, torsionness probes and associated-prime detection on cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import linalg as la
from .errors import AssIncomplete, HypothesisUnverifiable, NonHomogeneousInput
from .graded import (CohomologyModule, DirectSum, GradedModule, HomFromResolution, PresentedGraded,
                     ZeroModule, box, first_stable, induced_on_cohomology, lift_chain_map, vadd,
                     vsub)
from .ideal import Ideal, free_resolution, intersect_all, monomial_prime, unit_ideal
from .module import ModuleObject, quotient_object
from .poly import PolynomialRing

DEFAULT_T_MAX = 12


def _as_graded(mod):
    if isinstance(mod, GradedModule):
        return mod
    if isinstance(mod, ModuleObject):
        return mod.graded()
    raise TypeError("expected a graded module")


def _support_sets(gens):
    out = []
    for g in gens:
        if not g.is_multihomogeneous():
            raise NonHomogeneousInput(f"Čech generator {g} is not multihomogeneous")
        out.append(frozenset(g.support()))
    return out


# -- Čech complexes ---------------------------------------------------------------------

class CechComplex:
    """Č(f_1..f_s; M) with C^k = ⊕_{|σ|=k} M_{f_σ}; the sign of σ -> σ∪{j} is (-1)^(#σ below j)."""

    def __init__(self, mod: PresentedGraded, gens):
        self.mod = mod
        self.gens = list(gens)
        self.supports = _support_sets(self.gens) if self.gens and not isinstance(self.gens[0], frozenset) else list(self.gens)
        s = len(self.supports)
        self.s = s
        self.n = mod.n
        self.p = mod.p
        self.subsets = {k: list(combinations(range(s), k)) for k in range(s + 1)}
        self._loc: dict = {}
        self.terms = {k: DirectSum([self.localization(sig) for sig in self.subsets[k]])
                      for k in range(s + 1)}
        self._dcache: dict = {}

    def localization(self, sigma) -> PresentedGraded:
        support = frozenset().union(*[self.supports[i] for i in sigma]) if sigma else frozenset()
        got = self._loc.get(support)
        if got is None:
            got = self.mod.localized(support)
            self._loc[support] = got
        return got

    def diff(self, k, a):
        key = (k, tuple(a))
        got = self._dcache.get(key)
        if got is not None:
            return got
        src = self.subsets[k]
        tgt = self.subsets.get(k + 1, [])
        sdims = [self.localization(s).dim(a) for s in src]
        tdims = [self.localization(t).dim(a) for t in tgt]
        soff = np.concatenate([[0], np.cumsum(sdims)]).astype(int)
        toff = np.concatenate([[0], np.cumsum(tdims)]).astype(int)
        tindex = {t: i for i, t in enumerate(tgt)}
        out = la.zeros(int(toff[-1]), int(soff[-1]))
        for si, sig in enumerate(src):
            if not sdims[si]:
                continue
            for j in range(self.s):
                if j in sig:
                    continue
                tau = tuple(sorted(sig + (j,)))
                ti = tindex[tau]
                if not tdims[ti]:
                    continue
                sign = -1 if sum(1 for x in sig if x < j) % 2 else 1
                block = self.localization(sig).localization_map(self.localization(tau), a)
                out[toff[ti]:toff[ti + 1], soff[si]:soff[si + 1]] = np.mod(sign * block, self.p)
        self._dcache[key] = out
        return out

    def cohomology(self, i) -> CohomologyModule:
        if i < 0 or i > self.s:
            return CohomologyModule({}, self.diff, i, self.n, self.p)
        return CohomologyModule(self.terms, self.diff, i, self.n, self.p)

    def check_d_squared(self, a) -> bool:
        for k in range(self.s - 1):
            if la.matmul(self.diff(k + 1, a), self.diff(k, a), self.p).any():
                return False
        return True


# -- tables -------------------------------------------------------------------------

@dataclass
class LocalCohomologyTable:
    route: str
    degrees: list
    indices: list
    dims: dict = field(default_factory=dict)  # (i, a) -> int, or None when unstabilized
    modules: dict = field(default_factory=dict)  # i -> GradedModule (for bases and actions)
    meta: dict = field(default_factory=dict)

    def dim(self, i, a):
        return self.dims.get((i, tuple(a)))

    def records(self):
        return [{"i": i, "degree": list(a), "dim": self.dims[(i, a)]}
                for (i, a) in sorted(self.dims)]

    def nonzero(self):
        return {k: v for k, v in self.dims.items() if v}

    def agrees_with(self, other: LocalCohomologyTable) -> bool:
        for key, v in self.dims.items():
            w = other.dims.get(key)
            if v is None or w is None:
                continue
            if v != w:
                return False
        return True


def _table_from_modules(route, modules: dict, degrees, meta=None) -> LocalCohomologyTable:
    t = LocalCohomologyTable(route, list(degrees), sorted(modules), meta=meta or {})
    for i, m in modules.items():
        t.modules[i] = m
        for a in degrees:
            t.dims[(i, tuple(a))] = m.dim(tuple(a))
    return t


def cech_local_cohomology(mod, ideal_gens, degrees, indices) -> LocalCohomologyTable:
    """H^i of the Čech complex on the given multihomogeneous generators."""
    if isinstance(ideal_gens, Ideal):
        ideal_gens = list(ideal_gens.gb)
    if isinstance(mod, ModuleObject):
        mod.require_graded()
        graded = mod.graded()
    else:
        graded = mod
    cx = CechComplex(graded, ideal_gens)
    modules = {i: cx.cohomology(i) for i in indices}
    t = _table_from_modules("Cech", modules, degrees, {"generators": [str(g) for g in ideal_gens]})
    t.meta["complex"] = cx
    return t


# -- colimits of Ext -----------------------------------------------------------------

class ColimSystem:
    """Degreewise direct system Ext^i(V_t, M) -> Ext^i(V_{t+1}, M), t = 1, 2, ...

    ``build(t)`` returns a graded ModuleObject V_t; ``transition(t)`` returns
    the columns of φ_0 : F_0(V_{t+1}) -> F_0(V_t) inducing V_{t+1} -> V_t.
    """

    def __init__(self, target: GradedModule, build, transition, top: int):
        self.target = target
        self.build = build
        self.transition = transition
        self.top = top
        self._res: dict = {}
        self._hom: dict = {}
        self._alpha: dict = {}

    def resolution(self, t):
        if t not in self._res:
            v = self.build(t)
            v.require_graded()
            self._res[t] = free_resolution(v.ring, v.rank, v.relations, self.top + 1, v.degrees)
        return self._res[t]

    def hom(self, t) -> HomFromResolution:
        if t not in self._hom:
            self._hom[t] = HomFromResolution(self.resolution(t), self.target, self.top)
        return self._hom[t]

    def alpha(self, t):
        if t not in self._alpha:
            src, tgt = self.resolution(t + 1), self.resolution(t)
            self._alpha[t] = lift_chain_map(src, tgt, self.transition(t), self.top)
        return self._alpha[t]

    def value(self, t, i) -> CohomologyModule:
        return self.hom(t).ext(i)

    def transition_matrix(self, t, i, a):
        """Ext^i(V_t, M)_a -> Ext^i(V_{t+1}, M)_a."""
        alphas = self.alpha(t)
        if i >= len(alphas):
            raise ValueError("chain map not lifted far enough")
        h_t, h_next = self.hom(t), self.hom(t + 1)
        chain = h_t.pullback(alphas[i], self.resolution(t + 1), i, a)
        return induced_on_cohomology(chain, h_t.ext(i).piece(a), h_next.ext(i).piece(a), self.target.p)


@dataclass
class StabilizedEntry:
    dim: int | None
    t_star: int | None
    dims_by_t: list


def stabilize(system: ColimSystem, i: int, degrees, t_max: int = DEFAULT_T_MAX, start=None):
    """Per degree: smallest t >= start(a) with the transitions t-1 -> t and t -> t+1 both isomorphisms.

    ``start`` maps a degree to the first admissible t (default 2).  A run of
    zero pieces at small t does not by itself mean the colimit vanishes, so
    callers pass a degree-dependent start (see ``window_start``).
    """
    out = {}
    p = system.target.p
    for a in degrees:
        a = tuple(a)
        t0 = max(2, start(a) if start else 2)
        if t0 + 1 > t_max:
            out[a] = StabilizedEntry(None, None, [])
            continue
        dims = [system.value(t, i).dim(a) for t in (t0 - 1, t0)]
        found = None
        prev_iso = None
        for t in range(t0 - 1, t_max):
            if t + 1 > t0:
                dims.append(system.value(t + 1, i).dim(a))
            d_t, d_next = dims[t - (t0 - 1)], dims[t + 1 - (t0 - 1)]
            iso = d_t == d_next and (d_t == 0 or la.rank(system.transition_matrix(t, i, a), p) == d_t)
            if prev_iso and iso:
                found = t
                break
            prev_iso = iso
        out[a] = StabilizedEntry(dims[found - (t0 - 1)] if found else None, found, dims)
    return out


def window_start(degree_data, a):
    """First t worth testing in degree a: 1 + sum_i max(0, E_i - a_i).

    E_i is the largest i-th coordinate among the generator and relation
    degrees of the modules involved.  Pieces far below these degrees only
    become nonzero once t has grown past the distance.
    """
    return 1 + sum(max(0, e - x) for e, x in zip(degree_data, a))


def degree_ceiling(n, *modules):
    ceil = [0] * n
    for m in modules:
        if isinstance(m, PresentedGraded):
            degs = m.gen_degrees + m.rel_degrees
        elif isinstance(m, ModuleObject):
            degs = list(m.degrees or []) + [d for d in m.relation_degrees() if isinstance(d, tuple)]
        elif hasattr(m, "shift") and hasattr(m, "support"):
            degs = [m.shift]
        else:
            degs = []
        for d in degs:
            ceil = [max(c, x) for c, x in zip(ceil, d)]
    return ceil


def quotient_power_system(v: ModuleObject, k: Ideal):
    """V_t = V / K^t V with the identity on generators as transitions."""
    ring = v.ring
    cache = {}

    def build(t):
        if t not in cache:
            kt = k.power(t)
            extra = []
            for g in kt.generators:
                for j in range(v.rank):
                    col = [ring.zero() for _ in range(v.rank)]
                    col[j] = g
                    extra.append(col)
            cache[t] = v.with_relations(extra)
        return cache[t]

    def transition(t):
        return build(t + 1).identity_matrix()

    return build, transition


def colim_ext_route(mod, v: ModuleObject, k: Ideal, indices, degrees, t_max: int = DEFAULT_T_MAX):
    """colim_t Ext^i(V/K^tV, M) degreewise with per-degree stabilization."""
    target = _as_graded(mod)
    build, transition = quotient_power_system(v, k)
    top = max(indices)
    system = ColimSystem(target, build, transition, top)
    t = LocalCohomologyTable("ColimExt", list(degrees), list(indices))
    unstable = []
    ceil = degree_ceiling(target.n, target, v)
    start = lambda a: window_start(ceil, a)
    for i in indices:
        entries = stabilize(system, i, degrees, t_max, start)
        for a, e in entries.items():
            t.dims[(i, a)] = e.dim
            t.meta.setdefault("t_star", {})[(i, a)] = e.t_star
            if e.dim is None:
                unstable.append((i, a))
    t.meta["unstabilized"] = unstable
    t.meta["t_max"] = t_max
    t.meta["system"] = system
    return t


# -- two-ideal route ---------------------------------------------------------------------

def w_minimal_monomial_primes(i: Ideal, j: Ideal):
    """Minimal monomial primes in W(I,J) (checked over all 2^n monomial primes)."""
    from .primes import w_membership
    ring = i.ring
    members = []
    from .ideal import all_monomial_primes
    for f in sorted(all_monomial_primes(ring), key=lambda s: (len(s), sorted(s))):
        if any(m <= f for m in members):
            continue
        if w_membership(i, j, monomial_prime(ring, f)):
            members.append(f)
    return [monomial_prime(ring, f) for f in members], members


def w_radical_ideal(i: Ideal, j: Ideal) -> Ideal:
    """K' = intersection of the minimal monomial primes of W(I,J) (R if there are none)."""
    primes, _ = w_minimal_monomial_primes(i, j)
    if not primes:
        return unit_ideal(i.ring)
    return intersect_all(primes, i.ring)


def two_ideal_cohomology(mod: ModuleObject, i: Ideal, j: Ideal, indices, degrees,
                         degree_bound: int = 6) -> LocalCohomologyTable:
    """H^0 = Γ_{I,J}(M); for i > 0 the Čech cohomology H^i_I(M/Γ_{I,J}(M)).

    The table also carries the graded-derived values H^i_{K'}(M), with K' the
    intersection of the minimal monomial primes in W(I,J), and flags the
    degrees where the two readings differ.
    """
    from .primes import gamma_torsion
    mod.require_graded()
    gam = gamma_torsion(mod, i, j, degree_bound)
    quot, _ = quotient_object(mod, gam)
    gmod = gam.as_module()
    modules = {}
    pos = [x for x in indices if x > 0]
    if 0 in indices:
        modules[0] = gmod.graded() if gmod.rank else ZeroModule(mod.ring.n, mod.ring.p)
    if pos:
        lit = cech_local_cohomology(quot, list(i.gb), degrees, pos)
        modules.update(lit.modules)
    table = _table_from_modules("TwoIdealRoute", modules, degrees,
                                {"identity": "H^i_{I,J}(M) = H^i_I(M / Gamma_{I,J}(M)) for i > 0"})
    kp = w_radical_ideal(i, j)
    alt = cech_local_cohomology(mod, list(kp.gb), degrees, list(indices))
    differ = [(x, a) for (x, a), v in table.dims.items() if alt.dims.get((x, a)) != v]
    table.meta["graded_derived"] = alt
    table.meta["k_prime"] = str(kp)
    table.meta["readings_differ"] = differ
    return table


# -- probes --------------------------------------------------------------------------

def _monomial_degrees(ideal: Ideal):
    out = []
    for g in ideal.gb:
        if not g.is_monomial():
            raise NonHomogeneousInput("torsion probe needs a monomial ideal")
        (e, _), = g.terms.items()
        out.append(e)
    return out


def torsionness_probe(table: LocalCohomologyTable, i: Ideal, j: Ideal, cap: int = 12) -> dict:
    """Check that every basis element of every computed piece is killed by a power of K'."""
    kp = w_radical_ideal(i, j)
    ring = i.ring
    failures, capped = [], []
    checked = 0
    for idx, m in table.modules.items():
        for a in table.degrees:
            a = tuple(a)
            d = m.dim(a)
            if not d:
                continue
            if kp.is_unit():
                continue  # K' = R kills everything
            pending = np.arange(d)
            basis = la.identity(d)
            killed_at = None
            power = unit_ideal(ring)
            for t in range(1, cap + 1):
                power = power * kp
                alive = False
                for e in _monomial_degrees(power):
                    img = la.matmul(m.mult(a, e), basis, m.p)
                    if img.any():
                        alive = True
                        break
                if not alive:
                    killed_at = t
                    break
            checked += d
            if killed_at is None:
                capped.append({"i": idx, "degree": list(a)})
    return {"k_prime": str(kp), "checked_elements": checked, "failures": failures,
            "cap_exceeded": capped, "passed": not failures and not capped}


class QuotientGraded(GradedModule):
    """X / N where N is generated by elements (degree b, coordinate vector)."""

    def __init__(self, base: GradedModule, generators):
        self.base = base
        self.gens = [(tuple(b), np.asarray(v, dtype=np.int64)) for b, v in generators]
        self.n, self.p = base.n, base.p
        self._cache = {}

    def piece(self, a):
        a = tuple(a)
        if a not in self._cache:
            d = self.base.dim(a)
            rows = []
            for b, v in self.gens:
                shift = vsub(a, b)
                if min(shift, default=0) < 0:
                    continue
                img = la.matmul(self.base.mult(b, shift), v.reshape(-1, 1), self.p)[:, 0]
                rows.append(img)
            sub = np.array(rows, dtype=np.int64).reshape(len(rows), d) if rows else la.zeros(0, d)
            self._cache[a] = la.QuotientSpace(la.identity(d), sub, self.p)
        return self._cache[a]

    def dim(self, a):
        return self.piece(a).dim

    def mult(self, a, b):
        src, tgt = self.piece(a), self.piece(vadd(a, b))
        if src.dim == 0 or tgt.dim == 0:
            return la.zeros(tgt.dim, src.dim)
        imgs = la.matmul(self.base.mult(a, b), src.basis.T, self.p).T
        return tgt.coords_matrix(imgs)


def detect_ass(x: GradedModule, degrees, cap: int = 12):
    """Monomial primes p_F admitting m in the box with p_F m = 0 and u^cap m != 0, u = prod_{j∉F} x_j."""
    n, p = x.n, x.p
    found = set()
    from itertools import product as iproduct
    subsets = [frozenset(i for i, b in enumerate(bits) if b) for bits in iproduct([0, 1], repeat=n)]
    for a in degrees:
        a = tuple(a)
        d = x.dim(a)
        if not d:
            continue
        for fset in subsets:
            if fset in found:
                continue
            mats = [x.mult(a, tuple(1 if k == i else 0 for k in range(n))) for i in sorted(fset)]
            if mats:
                stacked = np.concatenate(mats, axis=0)
                socle = la.nullspace(stacked, p)
            else:
                socle = la.identity(d)
            if socle.shape[0] == 0:
                continue
            u = tuple(0 if k in fset else cap for k in range(n))
            img = la.matmul(x.mult(a, u), socle.T, p)
            if la.rank(img, p) > 0:
                found.add(fset)
    return found


def ass_finiteness_experiment(mod: ModuleObject, i: Ideal, j: Ideal, index: int, degrees,
                              n_generators=(), cap: int = 12) -> dict:
    """Detect associated monomial primes of H^index_{I,J}(M)/N inside the box."""
    ring = mod.ring
    table = two_ideal_cohomology(mod, i, j, list(range(index + 1)), degrees)
    hyp = []
    lo = min(min(a) for a in degrees)
    hi = max(max(a) for a in degrees)
    bigger = box(lo - 1, hi + 1, ring.n)
    for jj in range(index):
        m = table.modules[jj]
        ok = _generated_in_box(m, degrees, bigger)
        hyp.append({"i": jj, "generated_in_box": ok})
        if not ok:
            raise HypothesisUnverifiable(f"H^{jj} is not generated inside the box")
    h = table.modules[index]
    x = QuotientGraded(h, n_generators) if n_generators else h
    found = detect_ass(x, degrees, cap)
    # candidate primes: monomial primes containing K' and Ann(M)
    kp = w_radical_ideal(i, j)
    ann = mod.annihilator()
    from .ideal import all_monomial_primes
    candidates = set()
    for f in all_monomial_primes(ring):
        q = monomial_prime(ring, f)
        if q.contains_ideal(kp) and q.contains_ideal(ann):
            candidates.add(f)
    detected = [str(monomial_prime(ring, f)) for f in sorted(found, key=lambda s: (len(s), sorted(s)))]
    return {
        "index": index,
        "detected": detected,
        "finite": True,
        "contained_in_candidates": found <= candidates,
        "candidates": [str(monomial_prime(ring, f)) for f in sorted(candidates, key=lambda s: (len(s), sorted(s)))],
        "hypothesis": hyp,
        "hypothesis_mode": "surrogate: generated by box degrees within the box enlarged by 1",
        "passed": found <= candidates,
    }


def _generated_in_box(m: GradedModule, degrees, bigger) -> bool:
    inside = {tuple(a) for a in degrees}
    for a in bigger:
        a = tuple(a)
        if a in inside:
            continue
        d = m.dim(a)
        if not d:
            continue
        rows = []
        for b in inside:
            shift = vsub(a, b)
            if min(shift) < 0 or m.dim(b) == 0:
                continue
            rows.append(m.mult(b, shift).T)
        if not rows:
            return False
        span = np.concatenate(rows, axis=0)
        if la.rank(span, m.p) < d:
            return False
    return True
