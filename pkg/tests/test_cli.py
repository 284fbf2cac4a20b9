import json
import subprocess
import sys

from lcwb.cli import main


def write(tmp_path, body):
    p = tmp_path / "s.lcw"
    p.write_text("ring R = F(32003)[x,y];\n" + body, encoding="utf-8")
    return p


def test_run_and_explain(tmp_path, capsys):
    script = write(tmp_path, "task w(I=<x>, J=<0>, p=<x,y>);\ntask ass(module quotient(<x*y>));\n")
    out = tmp_path / "out"
    assert main(["run", str(script), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "000-w" in text and "001-ass" in text
    assert main(["explain", "000-w", "--out", str(out)]) == 0
    assert "000-w (w): ok" in capsys.readouterr().out
    assert main(["explain", "042-nope", "--out", str(out)]) == 2


def test_run_exit_codes(tmp_path, capsys):
    script = write(tmp_path, "task w(I=<x>, J=<0>, p=<x*y>);\n")
    assert main(["run", str(script), "--out", str(tmp_path / "o")]) == 1
    assert "NotPrime" in capsys.readouterr().out
    bad = write(tmp_path, "task w(I=<x>, J=<0>, p=<x,y>)\n")
    assert main(["run", str(bad), "--out", str(tmp_path / "o2")]) == 2
    assert "SyntaxError" in capsys.readouterr().err


def test_check_suite(capsys):
    assert main(["check", "appendix6"]) == 0
    out = capsys.readouterr().out
    assert "PASS appendix6" in out
    assert main(["check", "appendix6", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["suite"] == "appendix6" and rep["passed"]


def test_check_unknown_suite(capsys):
    assert main(["check", "no-such-suite"]) == 2
    assert "UnknownSuite" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    script = write(tmp_path, "task w(I=<x>, J=<0>, p=<x,y>);\n")
    r = subprocess.run([sys.executable, "-m", "lcwb.cli", "run", str(script), "--out", str(tmp_path / "o")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "000-w" in r.stdout
