"""Command-line entry point: ``lcwb run``, ``lcwb check``, ``lcwb explain``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import LcwbError, ScriptError, UnknownSuite


def _cmd_run(args) -> int:
    from .workbench import exit_code, run_tasks
    path = Path(args.script)
    text = path.read_text(encoding="utf-8")
    try:
        envelopes = run_tasks(text, args.jobs, args.out)
    except ScriptError as e:
        print(f"{path}:{e.line}:{e.col}: {e.code}: {e.message}", file=sys.stderr)
        return 2
    for env in envelopes:
        line = f"{env['task_id']:<16} {env['status']:<6} {env['timing']['seconds']:8.3f}s"
        if env["error"]:
            line += f"  {env['error']['code']}: {env['error']['message']}"
        print(line)
    print(f"results written to {args.out}")
    return exit_code(envelopes)


def _print_report(rep) -> None:
    for prop in rep["properties"]:
        mark = "PASS" if prop["passed"] else "FAIL"
        print(f"{mark} {rep['suite']}/{prop['name']} ({prop['instances']} instances)")
        for ce in prop["counterexamples"]:
            print(f"     counterexample: {json.dumps(ce, default=str)}")


def _cmd_check(args) -> int:
    from .checks import run_suite, suite_names
    from .workbench import current_seed
    seed = current_seed()
    names = suite_names() if args.suite == "all" else [args.suite]
    reports = []
    try:
        for name in names:
            rep = run_suite(name, seed)
            reports.append(rep)
            if not args.json:
                _print_report(rep)
                print(f"{'PASS' if rep['passed'] else 'FAIL'} {name} in {rep['seconds']:.1f}s")
    except UnknownSuite as e:
        print(f"UnknownSuite: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(reports if len(reports) > 1 else reports[0], indent=2, default=str))
    return 0 if all(r["passed"] for r in reports) else 1


def _cmd_explain(args) -> int:
    from .workbench import explain
    try:
        print(explain(args.task_id, args.out))
    except LcwbError as e:
        print(str(e), file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    from .workbench import DEFAULT_OUT
    parser = argparse.ArgumentParser(prog="lcwb", description="Local cohomology workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the tasks of a .lcw script")
    run.add_argument("script")
    run.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    run.add_argument("--out", default=DEFAULT_OUT, help=f"result directory (default {DEFAULT_OUT})")
    run.set_defaults(func=_cmd_run)

    check = sub.add_parser("check", help="run a property suite, or 'all'")
    check.add_argument("suite")
    check.add_argument("--json", action="store_true", help="print the full machine-readable report")
    check.set_defaults(func=_cmd_check)

    explain = sub.add_parser("explain", help="summarize a stored task result")
    explain.add_argument("task_id")
    explain.add_argument("--out", default=DEFAULT_OUT)
    explain.set_defaults(func=_cmd_explain)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
