import io
import json
import subprocess
import sys

import pytest

from greenrec.cli import main

from closed_forms import ex1_particular


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return [line.split("\t") for line in text.splitlines()]


def write(tmp_path, name="p.json", **doc):
    base = {"order": 2, "coefficients": ["1", "-2", "1"], "forcing": "n",
            "initial": ["0", "0"], "range": [-4, 6]}
    base.update(doc)
    path = tmp_path / name
    path.write_text(json.dumps(base))
    return str(path)


def test_solve_example1(problems_dir):
    code, out = run("solve", str(problems_dir / "example1.json"))
    assert code == 0
    table = rows(out)
    assert table[0] == ["n", "f", "C", "P"]
    assert ["5", "30", "0", "30"] in table
    assert len(table) == 1 + 31
    for n, f, _, _ in table[1:]:
        assert f == str(ex1_particular(int(n)))


def test_solve_nonzero_initial(tmp_path):
    code, out = run("solve", write(tmp_path, initial=["1", "1/2"], forcing="0"))
    assert code == 0
    by_n = {r[0]: r[1:] for r in rows(out)[1:]}
    assert by_n["4"] == ["-1", "-1", "0"]
    assert by_n["-3"] == ["5/2", "5/2", "0"]


def test_green_example3(problems_dir):
    code, out = run("green", str(problems_dir / "example3.json"), "--kind", "retarded", "--m", "2")
    assert code == 0
    table = rows(out)
    assert table[0] == ["n", "G"]
    assert ["3", "4/5"] in table
    assert ["1", "0"] in table


@pytest.mark.parametrize("name, kind, m", [
    ("example3.json", "retarded", 4), ("example3.json", "advanced", -3),
    ("example1.json", "retarded", 0), ("example1.json", "advanced", -7),
])
def test_green_strategies_byte_identical(problems_dir, name, kind, m):
    path = str(problems_dir / name)
    outs = {s: run("green", path, "--kind", kind, "--m", str(m), "--strategy", s)[1]
            for s in ("ratio", "recursion")}
    assert outs["ratio"] == outs["recursion"]
    if name == "example1.json":
        assert run("green", path, "--kind", kind, "--m", str(m), "--strategy", "cc")[1] == outs["ratio"]


def test_green_cc_needs_constant(problems_dir, capsys):
    code, _ = run("green", str(problems_dir / "example3.json"), "--kind", "retarded",
                  "--m", "2", "--strategy", "cc")
    assert code == 2
    assert "constant_coefficients" in capsys.readouterr().err


def test_basis(problems_dir):
    code, out = run("basis", str(problems_dir / "example1.json"), "--i", "0")
    assert code == 0
    table = rows(out)
    assert table[0] == ["n", "B0"]
    assert all(int(v) == 1 - int(n) for n, v in table[1:])
    code, _ = run("basis", str(problems_dir / "example1.json"), "--i", "2")
    assert code == 2


def test_singular_leading_coefficient_exit_2(tmp_path, capsys):
    code, out = run("solve", write(tmp_path, coefficients=["n - 3", "-2", "1"]))
    assert code == 2
    assert out == ""
    assert "n=3" in capsys.readouterr().err


def test_bad_field_exit_2(tmp_path, capsys):
    code, _ = run("solve", write(tmp_path, initial=["0"]))
    assert code == 2
    assert "initial" in capsys.readouterr().err


def test_forcing_failure_names_n(tmp_path, capsys):
    code, _ = run("solve", write(tmp_path, forcing="1/(n-2)"))
    assert code == 2
    assert "n=2" in capsys.readouterr().err


def test_missing_file_exit_2(tmp_path):
    assert run("solve", str(tmp_path / "nope.json"))[0] == 2


def test_json_format(problems_dir):
    code, out = run("solve", str(problems_dir / "example2.json"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    row = next(r for r in data if r["n"] == -3)
    assert row == {"n": -3, "f": "17/2", "C": "0", "P": "17/2"}


def test_float_mode(tmp_path):
    code, out = run("solve", write(tmp_path, mode="float"))
    assert code == 0
    by_n = {r[0]: r[1] for r in rows(out)[1:]}
    assert float(by_n["5"]) == pytest.approx(30.0)


def test_verify_passes_and_is_deterministic(problems_dir):
    path = str(problems_dir / "example3.json")
    code, out = run("verify", path, "--seed", "3", "--cases", "3")
    assert code == 0
    table = rows(out)
    assert table[0] == ["case", "check", "status", "detail"]
    assert {r[2] for r in table[1:]} == {"pass"}
    assert any(r[0] == "random seed=5" for r in table[1:])
    assert run("verify", path, "--seed", "3", "--cases", "3", "--jobs", "2")[1] == out


def test_verify_constant_file_includes_closed_form_check(problems_dir):
    code, out = run("verify", str(problems_dir / "example1.json"), "--cases", "0")
    assert code == 0
    assert "constant_coeff_equivalence" in out


def test_verify_reports_counterexample(problems_dir, monkeypatch):
    import greenrec.cli as cli
    from greenrec.verify import CheckResult

    def fake_suite(doc, seed, cases, jobs):
        return [CheckResult("file", "oracle_equivalence", True),
                CheckResult("random seed=4", "solution_residual", False, "nonzero residual at n=7")]

    monkeypatch.setattr(cli, "run_suite", fake_suite)
    code, out = run("verify", str(problems_dir / "example3.json"))
    assert code == 1
    lines = out.splitlines()
    assert lines[-2] == "counterexample: case=random seed=4 check=solution_residual nonzero residual at n=7"
    assert lines[-1].startswith("problem: seed=4 c=(")


def test_solve_residual_failure_exit_1(problems_dir, monkeypatch, capsys):
    import greenrec.cli as cli
    from dataclasses import replace
    from greenrec.recurrence import SequenceWindow

    real = cli.solve_full

    def skewed(request):
        result = real(request)
        res = result.residual
        return replace(result, residual=SequenceWindow(res.lo, (0,) * 3 + (1,) + res.values[4:]))

    monkeypatch.setattr(cli, "solve_full", skewed)
    code, _ = run("solve", str(problems_dir / "example1.json"))
    assert code == 1
    assert "n=-5" in capsys.readouterr().err


def test_outputs_are_byte_deterministic(problems_dir):
    path = str(problems_dir / "example3.json")
    assert run("solve", path)[1] == run("solve", path)[1]


def test_console_entry_point(problems_dir):
    proc = subprocess.run([sys.executable, "-m", "greenrec", "green", str(problems_dir / "example3.json"),
                           "--kind", "advanced", "--m", "-2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "-2\t1\n" in proc.stdout
