"""Task execution for .lcw scripts: result envelopes, manifests, parallel runs."""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .dsl import (REQUIRED, TASK_SIGNATURES, AlgebraDecl, Decl, IntLit, NameRef, Script, TaskDecl,
                  bind_task_args, parse_script)
from .errors import LcwbError
from .graded import box
from .ideal import Ideal, mat_columns
from .module import AlgebraSpec, ModuleObject, SubobjectHandle, quotient_object
from .poly import PolynomialRing

ENVELOPE_FIELDS = ("task_id", "task", "input_sha256", "engine_version", "status", "payload", "error", "timing")
DEFAULT_OUT = "lcwb-out"


# -- resolving the script into engine objects ----------------------------------------------

class Session:
    """Engine objects for the declarations of a checked script."""

    def __init__(self, script: Script):
        rd = script.ring
        self.script = script
        self.ring = PolynomialRing(list(rd.variables), rd.characteristic)
        self.env = {}
        self.types = {}
        for st in script.statements:
            if isinstance(st, AlgebraDecl):
                self.env[st.name] = self._algebra(st)
                self.types[st.name] = "algebra"
            elif isinstance(st, Decl):
                if st.kind == "ideal":
                    self.env[st.name] = self.ideal(st.value)
                elif st.kind == "module":
                    self.env[st.name] = self.module(st.value)
                else:
                    base, mat = st.value
                    mod = self.env[base.name]
                    cols = mat_columns(self.ring, [[self.ring.evaluate(e) for e in row] for row in mat.rows])
                    self.env[st.name] = SubobjectHandle(mod, cols)
                self.types[st.name] = st.kind

    def _algebra(self, st: AlgebraDecl) -> AlgebraSpec:
        p = self.ring.p
        if st.kind == "trivial":
            return AlgebraSpec.trivial(p)
        if st.kind == "dual":
            return AlgebraSpec.dual_numbers(p)
        if st.kind == "split":
            return AlgebraSpec.split(st.args[0], p)
        dim, vals, unit = st.args
        return AlgebraSpec(dim, list(vals), list(unit), p)

    def ideal(self, v) -> Ideal:
        if isinstance(v, NameRef):
            return self.env[v.name]
        return Ideal(self.ring, [self.ring.evaluate(g) for g in v.gens])

    def module(self, v) -> ModuleObject:
        ring = self.ring
        if isinstance(v, NameRef):
            return self.env[v.name]
        if v.kind == "free":
            return ModuleObject.free(ring, v.rank)
        if v.kind == "quotient":
            return ModuleObject.cyclic(self.ideal(v.ideal))
        if v.kind == "subquotient":
            sub = self.env[v.sub]
            return quotient_object(self.env[v.base], sub)[0]
        rows = [[ring.evaluate(e) for e in row] for row in v.matrix.rows]
        cols = mat_columns(ring, rows)
        rank = len(rows)
        if v.algebra is None:
            return ModuleObject(ring, rank, cols, v.degrees)
        action = [mat_columns(ring, [[ring.evaluate(e) for e in row] for row in a.rows]) for a in v.action]
        return ModuleObject(ring, rank, cols, v.degrees, self.env[v.algebra], action)

    def resolve(self, value, want: str):
        if want == "ideal":
            return self.ideal(value)
        if want == "module":
            return self.module(value)
        if want == "box":
            return (value.lo, value.hi)
        if want == "int":
            return value.value
        if want == "str":
            return value.value
        if want == "ints":
            return [value.value] if isinstance(value, IntLit) else [x.value for x in value.items]
        if want == "ideals":
            return [self.ideal(x) for x in value.items]
        raise ValueError(want)

    def task_inputs(self, task: TaskDecl) -> dict:
        """Resolved arguments with defaults filled in."""
        bound = bind_task_args(task, self.types, self.script.ring)
        ring = self.ring
        out = {}
        for name, kind, default in TASK_SIGNATURES[task.name]:
            if name in bound:
                out[name] = self.resolve(bound[name], kind)
            elif kind == "ideal":
                out[name] = Ideal(ring, [])
            elif kind == "module":
                out[name] = ModuleObject.free(ring, 1)
            elif kind == "box":
                out[name] = (-2, 2)
            elif kind == "ints":
                out[name] = list(range(ring.n + 1))
            elif default is not REQUIRED:
                out[name] = default
        return out


# -- canonical input descriptions --------------------------------------------------------

def canonical_ideal(i: Ideal) -> list:
    return sorted(str(g) for g in i.gb)


def canonical_module(m: ModuleObject) -> dict:
    out = {"rank": m.rank,
           "relations": [[str(x) for x in col] for col in m.relations],
           "degrees": [list(d) for d in m.degrees] if m.degrees is not None else None}
    if not m.algebra.is_trivial():
        out["algebra"] = {"dim": m.algebra.dim, "mult": m.algebra.mult.reshape(-1).tolist(),
                          "unit": m.algebra.unit.tolist()}
        out["action"] = [[[str(x) for x in col] for col in a] for a in m.action]
    return out


def canonical_value(v):
    if isinstance(v, Ideal):
        return {"ideal": canonical_ideal(v)}
    if isinstance(v, ModuleObject):
        return {"module": canonical_module(v)}
    if isinstance(v, (list, tuple)):
        return [canonical_value(x) for x in v]
    return v


def input_hash(ring: PolynomialRing, task: str, inputs: dict, extra=None) -> str:
    doc = {"ring": {"p": ring.p, "variables": list(ring.variables)}, "task": task,
           "inputs": {k: canonical_value(inputs[k]) for k in sorted(inputs)}}
    if extra:
        doc["extra"] = extra
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def current_seed() -> int:
    return int(os.environ.get("LCWB_SEED", "0"))


# -- task implementations -------------------------------------------------------------------

def _cols(gens):
    return [[str(x) for x in col] for col in gens]


def _task_ass(ring, a):
    from .primes import associated_primes
    res = associated_primes(a["M"], a["d"])
    return {"primes": res.labels(), "status": res.status,
            "candidates": sorted(str(q) for q in res.superset)}


def _task_filtration(ring, a):
    from .primes import prime_filtration
    f = prime_filtration(a["M"], a["d"])
    return {"length": f.length, "quotient_primes": [str(q) for q in f.quotient_primes],
            "statuses": list(f.statuses), "chain": [_cols(s.generators) for s in f.chain]}


def _task_gamma(ring, a):
    from .primes import gamma_data
    g = gamma_data(a["M"], a["I"], a["J"], a["d"])
    sub = g.subobject
    return {"generators": _cols(sub.generators), "is_zero": sub.is_zero(),
            "is_whole": sub.equals(a["M"].whole()), "k_ideal": str(g.k_ideal),
            "selected_primes": [str(q) for q in g.selected], "ass": g.ass.labels()}


def _task_w(ring, a):
    from .primes import prime_kind, w_membership
    return {"result": w_membership(a["I"], a["J"], a["p"]), "prime_kind": prime_kind(a["p"])}


def _degrees(ring, bx):
    return box(bx[0], bx[1], ring.n)


def _task_lc(ring, a):
    from .cohomology import cech_local_cohomology, colim_ext_route, two_ideal_cohomology
    mod, i, j = a["M"], a["I"], a["J"]
    degrees = _degrees(ring, a["box"])
    indices = sorted(set(a["i"]))
    route = a["route"]
    out = {"route": route}
    if route == "two" or (route == "cech" and not j.is_zero()):
        t = two_ideal_cohomology(mod, i, j, indices, degrees)
        out["route"] = "two"
        out["k_prime"] = t.meta["k_prime"]
        out["graded_derived"] = [r for r in t.meta["graded_derived"].records() if r["dim"] != 0]
        out["readings_differ"] = [{"i": x, "degree": list(d)} for x, d in t.meta["readings_differ"]]
    elif route == "cech":
        mod.require_graded()
        t = cech_local_cohomology(mod, i, degrees, indices)
    else:
        if not j.is_zero():
            raise LcwbError("the colim route computes H^i_I only (J = 0)")
        t = colim_ext_route(mod, ModuleObject.free(ring, 1), i, indices, degrees)
        out["unstabilized"] = [{"i": x, "degree": list(d)} for x, d in t.meta["unstabilized"]]
    out["table"] = [r for r in t.records() if r["dim"] != 0]
    return out


def _page_records(page: dict):
    return [{"s": s, "k": k, "dim": d} for (s, k), d in sorted(page.items()) if d]


def _task_ss(ring, a):
    from .spectral import CechPlugin, build_bicomplex_and_pages, build_poset, convergence_report
    mod, j = a["M"], a["J"]
    poset = build_poset(a["family"])
    plugin = CechPlugin(poset, mod, j)
    degrees = _degrees(ring, a["box"])
    ss = build_bicomplex_and_pages(plugin, mod, degrees)
    rep = convergence_report(ss)
    pages = []
    for deg in ss.degrees:
        info = ss.per_degree[deg]
        e2 = _page_records(info.pages.get(2, {}))
        einf = _page_records(info.pages.get(ss.e_infinity_page, {}))
        if e2 or einf:
            pages.append({"degree": list(deg), "E2": e2, "Einf": einf})
    return {"poset": [str(q) for q in poset.ideals],
            "pages": pages, "mismatches": [{"n": n, "degree": list(d)} for n, d in rep["mismatches"]],
            "checks": rep["checks"], "converges": rep["passed"]}


def _transform(kind, ring, a):
    from .functors import derived_gamma_V, nagata_transform
    fn = derived_gamma_V if kind == "gammaV" else nagata_transform
    res = fn(a["M"], a["V"], a["K"], sorted(set(a["i"])), _degrees(ring, a["box"]))
    recs = [r for r in res.records() if r["dim"] != 0]
    return {"functor": res.functor, "table": recs,
            "unstabilized": [{"i": i, "degree": list(d)} for i, d in sorted(res.unstabilized())]}


def _task_check(ring, a):
    from .checks import run_suite
    rep = run_suite(a["suite"], seed=current_seed())
    rep.pop("seconds", None)
    return rep


TASK_RUNNERS = {
    "ass": _task_ass,
    "filtration": _task_filtration,
    "gamma": _task_gamma,
    "w": _task_w,
    "lc": _task_lc,
    "ss": _task_ss,
    "gammaV": lambda ring, a: _transform("gammaV", ring, a),
    "nagata": lambda ring, a: _transform("nagata", ring, a),
    "check": _task_check,
}


def task_id(index: int, name: str) -> str:
    return f"{index:03d}-{name}"


def execute_task(text: str, index: int) -> dict:
    """Run one task of a script; failures are captured in the envelope."""
    script = parse_script(text)
    task = script.tasks[index]
    env = {"task_id": task_id(index, task.name), "task": task.name, "input_sha256": None,
           "engine_version": __version__, "status": "ok", "payload": None, "error": None,
           "timing": None}
    start = time.perf_counter()
    try:
        session = Session(script)
        inputs = session.task_inputs(task)
        extra = {"seed": current_seed()} if task.name == "check" else None
        env["input_sha256"] = input_hash(session.ring, task.name, inputs, extra)
        env["payload"] = TASK_RUNNERS[task.name](session.ring, inputs)
    except LcwbError as e:
        env["status"] = "error"
        env["error"] = {"code": e.code, "message": str(e)}
    except Exception as e:  # isolate unexpected failures to this task
        env["status"] = "error"
        env["error"] = {"code": type(e).__name__, "message": str(e)}
    env["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return {k: env[k] for k in ENVELOPE_FIELDS}


def _execute_star(args):
    return execute_task(*args)


def run_tasks(script_text: str, jobs: int = 1, out_dir=None) -> list[dict]:
    """Run every task; with ``out_dir`` write one JSON file per task and manifest.json."""
    script = parse_script(script_text)
    n = len(script.tasks)
    work = [(script_text, k) for k in range(n)]
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, n)) as pool:
            envelopes = list(pool.map(_execute_star, work))
    else:
        envelopes = [execute_task(*w) for w in work]
    if out_dir is not None:
        write_results(envelopes, script_text, Path(out_dir))
    return envelopes


def exit_code(envelopes) -> int:
    return 0 if all(e["status"] == "ok" for e in envelopes) else 1


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_results(envelopes, script_text: str, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for e in envelopes:
        (out / f"{e['task_id']}.json").write_text(_dump(e), encoding="utf-8")
    manifest = {
        "engine_version": __version__,
        "script_sha256": hashlib.sha256(script_text.encode("utf-8")).hexdigest(),
        "seed": current_seed(),
        "exit_code": exit_code(envelopes),
        "tasks": [{"task_id": e["task_id"], "status": e["status"], "input_sha256": e["input_sha256"],
                   "file": f"{e['task_id']}.json"} for e in envelopes],
    }
    (out / "manifest.json").write_text(_dump(manifest), encoding="utf-8")


def payload_digest(envelope: dict) -> str:
    """Hash of everything except timing: equal across runs and job counts."""
    body = {k: envelope[k] for k in ENVELOPE_FIELDS if k != "timing"}
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode("utf-8")).hexdigest()


def explain(tid: str, out_dir=DEFAULT_OUT) -> str:
    """Human-readable summary of a stored envelope."""
    out = Path(out_dir)
    path = out / f"{tid}.json"
    if not path.exists():
        known = []
        if (out / "manifest.json").exists():
            known = [t["task_id"] for t in json.loads((out / "manifest.json").read_text())["tasks"]]
        raise LcwbError(f"no result for task {tid!r} in {out}" + (f"; known: {', '.join(known)}" if known else ""))
    env = json.loads(path.read_text(encoding="utf-8"))
    lines = [f"task {env['task_id']} ({env['task']}): {env['status']}",
             f"  input sha256   {env['input_sha256']}",
             f"  engine version {env['engine_version']}",
             f"  time           {env['timing']['seconds']:.3f}s"]
    if env["error"]:
        lines.append(f"  error          {env['error']['code']}: {env['error']['message']}")
    else:
        lines.append("  payload:")
        for key, val in env["payload"].items():
            text = json.dumps(val)
            if len(text) > 200:
                text = text[:197] + "..."
            lines.append(f"    {key}: {text}")
    return "\n".join(lines)
