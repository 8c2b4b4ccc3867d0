import json
import subprocess
import sys

import pytest

from pptineq.cli import main


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "pptineq", *args], input=stdin, capture_output=True, check=False
    )


def test_sweep_then_thresholds_pipeline():
    sweep = run("sweep", "--family", "dur", "--n-min", "3", "--n-max", "10")
    assert sweep.returncode == 0
    th = run("thresholds", stdin=sweep.stdout)
    assert th.returncode == 0
    assert json.loads(th.stdout) == {"mermin2": 8, "threeSetting": 7, "continuous": 6, "pptOperator": 4}


def test_thresholds_from_file(tmp_path, capsys):
    out = tmp_path / "dur.csv"
    assert main(["sweep", "--family", "dur", "--format", "csv", "--out", str(out)]) == 0
    assert main(["thresholds", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["pptOperator"] == 4


def test_thresholds_not_reached(tmp_path, capsys):
    out = tmp_path / "dur.json"
    assert main(["sweep", "--family", "dur", "--n-max", "5", "--witness", "mermin2", "--out", str(out)]) == 0
    assert main(["thresholds", str(out)]) == 0
    assert json.loads(capsys.readouterr().out) == {"mermin2": "threshold not reached in range 3..5"}


def test_sweep_byte_identical(tmp_path):
    a = run("sweep", "--family", "noisyGhz", "--visibility", "0.3", "--n-min", "2", "--n-max", "6", "--format", "csv")
    b = run("sweep", "--family", "noisyGhz", "--visibility", "0.3", "--n-min", "2", "--n-max", "6", "--format", "csv")
    assert a.returncode == 0 and a.stdout == b.stdout


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--family", "bogus"],
        ["sweep", "--family", "noisyGhz"],
        ["sweep", "--family", "dur", "--n-min", "1"],
        ["sweep", "--family", "dur", "--n-max", "11", "--check-ppt"],
        ["thresholds", "/nonexistent/path.json"],
        [],
    ],
)
def test_config_errors_exit_1(argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_numerical_failure_exit_2(monkeypatch):
    import pptineq.scan as scan
    from pptineq.errors import NumericalError

    def boom(*a, **k):
        raise NumericalError("forced")

    monkeypatch.setattr(scan, "_evaluate_row", boom)
    assert main(["sweep", "--family", "dur", "--n-max", "4"]) == 2


def test_unwritable_output_exit_1(tmp_path):
    assert main(["sweep", "--family", "ghz", "--n-max", "3", "--out", str(tmp_path / "missing" / "x.csv")]) == 1


def test_table_output(capsys):
    assert main(["sweep", "--family", "ghz", "--n-min", "2", "--n-max", "3", "--format", "table", "--check-ppt"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].split()[:3] == ["n", "family", "witness"]
