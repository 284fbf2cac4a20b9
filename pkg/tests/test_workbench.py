import json
from importlib import resources

import pytest

from lcwb import __version__
from lcwb.errors import LcwbError
from lcwb.workbench import (ENVELOPE_FIELDS, execute_task, exit_code, explain, payload_digest, run_tasks)

HEAD = "ring R = F(32003)[x,y];\n"


def run(body, **kw):
    return run_tasks(HEAD + body, **kw)


def test_w_task_true():
    (env,) = run("task w(I=<x>, J=<0>, p=<x,y>);")
    assert env["status"] == "ok" and env["payload"]["result"] is True
    assert list(env) == list(ENVELOPE_FIELDS)
    assert env["engine_version"] == __version__ and env["task_id"] == "000-w"


def test_failing_task_is_isolated():
    envs = run("task w(I=<x>, J=<0>, p=<x,y>);\n"
               "task w(I=<x>, J=<0>, p=<x*y>);\n"
               "task ass(module quotient(<x*y>));")
    assert [e["status"] for e in envs] == ["ok", "error", "ok"]
    assert envs[1]["error"]["code"] == "NotPrime"
    assert envs[2]["payload"]["primes"] == ["<x>", "<y>"]
    assert exit_code(envs) != 0
    assert exit_code([envs[0], envs[2]]) == 0


def test_parallel_matches_serial():
    body = ("task ass(module quotient(<x^2, x*y>));\n"
            "task gamma(module quotient(<x*y>), I=<x>, J=<0>);\n"
            "task lc(module free(1), I=<x,y>, box=box([-2,1]^n), i=[0,1,2]);\n")
    serial = run(body, jobs=1)
    par = run(body, jobs=2)
    assert [payload_digest(e) for e in serial] == [payload_digest(e) for e in par]


def test_hash_tracks_semantic_inputs():
    def h(body):
        return run(body)[0]["input_sha256"]

    base = h("task gamma(module quotient(<x*y>), I=<x>, J=<0>);")
    assert base == h("task gamma(module quotient(<y*x>), I=<x>, J=<0>);")
    assert base == h("ideal K = <x>;\ntask gamma(module quotient(<x*y>), I=K);")
    assert base != h("task gamma(module quotient(<x*y>), I=<y>, J=<0>);")
    assert base != h("task gamma(module quotient(<x*y^2>), I=<x>, J=<0>);")
    assert base != h("task gamma(module quotient(<x*y>), I=<x>, J=<0>, d=5);")
    other_ring = run_tasks("ring R = F(7)[x,y];\ntask gamma(module quotient(<x*y>), I=<x>, J=<0>);")
    assert base != other_ring[0]["input_sha256"]


def test_check_hash_includes_seed(monkeypatch):
    text = HEAD + 'task check("appendix6");'
    monkeypatch.setenv("LCWB_SEED", "0")
    a = execute_task(text, 0)
    monkeypatch.setenv("LCWB_SEED", "1")
    b = execute_task(text, 0)
    assert a["input_sha256"] != b["input_sha256"]
    assert a["status"] == "ok" and a["payload"]["passed"]


def test_colim_route_rejects_nonzero_j():
    (env,) = run('task lc(module free(1), I=<x>, J=<y>, route="colim", box=box([-1,1]^n), i=[0]);')
    assert env["status"] == "error"


def test_lc_two_route_reports_readings():
    (env,) = run('task lc(module free(1), I=<x,y>, J=<y>, box=box([-1,0]^n), i=[0,1,2]);')
    assert env["status"] == "ok"
    assert env["payload"]["route"] == "two"


def test_ss_payload():
    (env,) = run("task ss(module free(1), family=[<x>, <y>], box=box([-1,0]^n));")
    p = env["payload"]
    assert env["status"] == "ok" and p["converges"]
    assert sorted(p["poset"]) == sorted(["<x>", "<y>", "<y, x>"])


def test_results_written_and_explained(tmp_path):
    envs = run("task w(I=<x>, J=<0>, p=<x,y>);\ntask ass(module quotient(<x^2>));", out_dir=tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["exit_code"] == 0 and len(manifest["tasks"]) == 2
    stored = json.loads((tmp_path / "000-w.json").read_text())
    assert stored == envs[0]
    text = explain("001-ass", tmp_path)
    assert "001-ass" in text and "ok" in text
    with pytest.raises(LcwbError):
        explain("009-nothing", tmp_path)


def _corpus(name):
    return resources.files("lcwb").joinpath("corpus", name).read_text(encoding="utf-8")


def test_corpus_known_answers():
    expected = json.loads(_corpus("expected.json"))["ass"]
    texts = {}
    for key, labels in expected.items():
        fname, idx = key.split(":")
        texts.setdefault(fname, _corpus(fname))
        env = execute_task(texts[fname], int(idx))
        assert env["status"] == "ok", env["error"]
        assert env["payload"]["primes"] == labels


def test_corpus_expected_matches_oracle():
    # the basics ass tasks are cyclic monomial quotients of F[x,y,z]
    from oracles import ass_supports
    relations = {
        "basics.lcw:000": [(2, 1, 0), (1, 2, 0)],
        "basics.lcw:001": [(1, 1, 0), (0, 1, 1)],
        "basics.lcw:002": [(2, 0, 0), (1, 1, 0), (0, 3, 0)],
        "basics.lcw:003": [(1, 1, 1), (2, 0, 0)],
        "basics.lcw:004": [(3, 0, 0), (0, 2, 1), (1, 0, 2)],
    }
    expected = json.loads(_corpus("expected.json"))["ass"]
    for key, gens in relations.items():
        got = {frozenset("xyz"[k] for k in s) for s in ass_supports(gens, 3)}
        want = {frozenset(label.strip("<>").split(", ")) for label in expected[key]}
        assert got == want, key
