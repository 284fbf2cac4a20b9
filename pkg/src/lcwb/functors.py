"""Generalized local cohomology Γ_{V_K} and the generalized ideal transform Δ_{V_K}.

Both are computed degreewise as stabilized colimits:
Γ_{V_K}(M) = colim_t Hom(V/K^tV, M) and Δ_{V_K}(M) = colim_t Hom(K^tV, M),
with derived values taken from Ext in place of Hom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .cohomology import (DEFAULT_T_MAX, ColimSystem, degree_ceiling, quotient_power_system,
                         stabilize, window_start)
from .graded import GradedModule, HomFromResolution, box, induced_on_cohomology
from .groebner import Lifter, vec_to_column
from .ideal import Ideal, free_resolution, homogeneous_parts, zero_column
from .module import ModuleObject, hom_internal, present_subquotient


@dataclass
class TransformResult:
    functor: str
    degrees: list
    indices: list
    values: dict = field(default_factory=dict)  # (i, a) -> dim or None
    t_star: dict = field(default_factory=dict)
    status: dict = field(default_factory=dict)  # (i, a) -> "stabilized" | "unstabilized"
    meta: dict = field(default_factory=dict)

    def dim(self, i, a):
        return self.values.get((i, tuple(a)))

    def unstabilized(self):
        return [k for k, s in self.status.items() if s == "unstabilized"]

    def total(self, i=0):
        return sum(v for (j, _), v in self.values.items() if j == i and v)

    def records(self):
        return [{"i": i, "degree": list(a), "dim": self.values[(i, a)], "t_star": self.t_star[(i, a)],
                 "status": self.status[(i, a)]} for (i, a) in sorted(self.values)]


def _target(mod):
    if isinstance(mod, ModuleObject):
        return mod.graded()
    return mod


def _degrees(mod, degrees):
    if degrees is None:
        degrees = box(-3, 3, _target(mod).n)
    return [tuple(a) for a in degrees]


def power_submodule_system(v: ModuleObject, k: Ideal):
    """V_t = K^tV presented on the generators g·e_j (g a generator of K^t), with inclusions."""
    ring = v.ring
    cache = {}

    def gens(t):
        out = []
        for g in k.power(t).generators:
            for j in range(v.rank):
                col = zero_column(ring, v.rank)
                col[j] = g
                out.append(col)
        return out

    def build(t):
        if t not in cache:
            cache[t] = (gens(t), present_subquotient(ring, v.rank, gens(t), v.relations, v.degrees))
        return cache[t][1]

    def transition(t):
        build(t)
        build(t + 1)
        small, big = cache[t + 1][0], cache[t][0]
        s = len(big)
        lifter = Lifter(ring, v.rank, big + v.relations)
        target_degrees = cache[t][1].degrees
        cols = []
        for g in small:
            coeffs = lifter.lift(g)
            if coeffs is None:
                raise ValueError("K^(t+1)V is not inside K^tV")
            col = vec_to_column(coeffs, ring, s)
            want = tuple(cache[t + 1][1].degrees[len(cols)])
            parts = dict(homogeneous_parts(col, target_degrees))
            cols.append(parts.get(want, zero_column(ring, s)))
        return cols

    return build, transition, gens


def _run(tag, system, target, v, indices, degrees, t_max, extra=()):
    ceil = degree_ceiling(target.n, target, v, *extra)
    start = lambda a: window_start(ceil, a)
    res = TransformResult(tag, list(degrees), list(indices), meta={"t_max": t_max})
    for i in indices:
        for a, e in stabilize(system, i, degrees, t_max, start).items():
            res.values[(i, a)] = e.dim
            res.t_star[(i, a)] = e.t_star
            res.status[(i, a)] = "stabilized" if e.dim is not None else "unstabilized"
    res.meta["system"] = system
    return res


def derived_gamma_V(mod, v: ModuleObject, k: Ideal, indices=(0,), degrees=None,
                    t_max: int = DEFAULT_T_MAX) -> TransformResult:
    """colim_t Ext^i(V/K^tV, M) per degree."""
    target = _target(mod)
    degrees = _degrees(mod, degrees)
    build, transition = quotient_power_system(v, k)
    system = ColimSystem(target, build, transition, max(indices))
    return _run("Gamma_V", system, target, v, indices, degrees, t_max)


def gamma_V(mod, v: ModuleObject, k: Ideal, degrees=None, t_max: int = DEFAULT_T_MAX) -> TransformResult:
    return derived_gamma_V(mod, v, k, (0,), degrees, t_max)


def nagata_transform(mod, v: ModuleObject, k: Ideal, indices=(0,), degrees=None,
                     t_max: int = DEFAULT_T_MAX) -> TransformResult:
    """colim_t Ext^i(K^tV, M) along the inclusions K^(t+1)V ⊆ K^tV."""
    target = _target(mod)
    degrees = _degrees(mod, degrees)
    if k.is_zero():
        res = TransformResult("Delta_V", degrees, list(indices))
        for i in indices:
            for a in degrees:
                res.values[(i, a)] = 0
                res.t_star[(i, a)] = 1
                res.status[(i, a)] = "stabilized"
        return res
    build, transition, _ = power_submodule_system(v, k)
    system = ColimSystem(target, build, transition, max(indices))
    return _run("Delta_V", system, target, v, indices, degrees, t_max)


def gamma_V_identity_check(mod: ModuleObject, v: ModuleObject, k: Ideal, degrees=None) -> dict:
    """Γ_{V_K}(M) against Hom(V, Γ_K(M)) degreewise."""
    from .primes import gamma_torsion
    degrees = _degrees(mod, degrees)
    lhs = gamma_V(mod, v, k, degrees)
    gam = gamma_torsion(mod, k, Ideal(mod.ring, []))
    sub = gam.as_module()
    if sub.rank == 0:
        rhs = {a: 0 for a in degrees}
    else:
        h = hom_internal(v, sub)
        g = h.graded() if h.rank else None
        rhs = {a: (g.dim(a) if g is not None else 0) for a in degrees}
    mismatches = [a for a in degrees if lhs.dim(0, a) is not None and lhs.dim(0, a) != rhs[a]]
    return {"lhs": {a: lhs.dim(0, a) for a in degrees}, "rhs": rhs, "mismatches": mismatches,
            "unstabilized": lhs.unstabilized(), "passed": not mismatches}


def hull_ses_check(model, v: ModuleObject, k: Ideal, degrees=None, t_max: int = DEFAULT_T_MAX) -> dict:
    """0 -> Γ_{V_K}(E) -> Hom(V, E) -> Δ_{V_K}(E) -> 0 degreewise, plus the hull dichotomy for Δ."""
    from .ideal import monomial_prime_support
    n = model.n
    if degrees is None:
        degrees = box(-2, 2, n)
    degrees = [tuple(a) for a in degrees]
    # pieces of E far below its socle degree need large t; size the window to the box
    ceil = degree_ceiling(n, model, v)
    t_max = max(t_max, max(window_start(ceil, a) for a in degrees) + 2)
    gam = gamma_V(model, v, k, degrees, t_max)
    delta = nagata_transform(model, v, k, (0,), degrees, t_max)
    vres = free_resolution(v.ring, v.rank, v.relations, 2, v.degrees)
    hom_v = HomFromResolution(vres, model, 0)
    q_sys, d_sys = gam.meta.get("system"), delta.meta.get("system")
    prime_in_vk = model.prime.contains_ideal(k)
    rows, failures, capped = {}, [], []
    p = model.p
    for a in degrees:
        g, d = gam.dim(0, a), delta.dim(0, a)
        h = hom_v.ext(0).dim(a)
        if g is None or d is None:
            capped.append(a)
            continue
        ok = g + d == h
        # Γ -> Hom injective at t*, Hom -> Δ surjective at t*
        tg = gam.t_star[(0, a)]
        if g:
            src = q_sys.hom(tg).ext(0).piece(a)
            chain = q_sys.hom(tg).pullback(v.identity_matrix(), vres, 0, a)
            m = induced_on_cohomology(chain, src, hom_v.ext(0).piece(a), p)
            ok = ok and la.rank(m, p) == g
        td = delta.t_star[(0, a)] if d_sys is not None else None
        if d and td is not None:
            _, _, gens = power_submodule_system(v, k)
            chain = hom_v.pullback(gens(td), d_sys.resolution(td), 0, a)
            m = induced_on_cohomology(chain, hom_v.ext(0).piece(a), d_sys.hom(td).ext(0).piece(a), p)
            ok = ok and la.rank(m, p) == d
        dich = (d == 0) if prime_in_vk else (d == h)
        rows[a] = {"gamma": g, "hom": h, "delta": d, "exact": ok, "dichotomy": dich}
        if not (ok and dich):
            failures.append(a)
    return {"rows": rows, "failures": failures, "cap_exceeded": capped,
            "prediction": "Delta=0" if prime_in_vk else "Delta=Hom(V,E)",
            "passed": not failures and not capped}


def four_term_check(mod: ModuleObject, k: Ideal, degrees=None) -> dict:
    """dims: Γ_K(M) - M + Δ_K(M) - H^1_K(M) = 0 in every degree (V = R)."""
    from .cohomology import cech_local_cohomology
    degrees = _degrees(mod, degrees)
    free = ModuleObject.free(mod.ring, 1)
    gam = gamma_V(mod, free, k, degrees)
    delta = nagata_transform(mod, free, k, (0,), degrees)
    h1 = cech_local_cohomology(mod, list(k.gb), degrees, [1])
    g = mod.graded()
    bad = []
    for a in degrees:
        vals = (gam.dim(0, a), g.dim(a), delta.dim(0, a), h1.dim(1, a))
        if None in vals:
            continue
        if vals[0] - vals[1] + vals[2] - vals[3] != 0:
            bad.append(a)
    return {"failures": bad, "passed": not bad}
