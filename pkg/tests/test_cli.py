import json

import pytest

from folinv.cli import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_LIMIT,
    EXIT_OK,
    JobSpec,
    main,
    run_job,
)
from folinv.config import Config
from folinv.report import ReportDoc

SUZUKI_INPUT = {
    "P": "2*y^2 + x^3",
    "Q": "-2*x*y",
    "f": "x*(y^2 - x^3)*(y^2 - x^2 - x^3)",
    "divisor": [
        {"f": "x", "coeff": 1},
        {"f": "y^2 - x^3", "coeff": 1},
        {"f": "y^2 - x^2 - x^3", "coeff": 1},
        {"f": "y^2 - 2*x^2 - x^3", "coeff": -1},
    ],
}

ALCANTARA_INPUT = {
    "A": "-3*x^2*y",
    "B": "-y^2*z + 3*x^3",
    "C": "y^3",
    "curve": "y*(y^2*z - x^3)",
    "points": [["0", "0", "1"]],
}


def _write(tmp_path, payload, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_local_invariants_cli(tmp_path, capsys):
    path = _write(tmp_path, SUZUKI_INPUT)
    code = main(["local", "invariants", "--input", path, "--format", "structured"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    doc = ReportDoc.from_json(out)
    assert doc.invariants["milnor-foliation"] == 5
    assert doc.invariants["milnor-curve"] == 17
    assert doc.invariants["tjurina-foliation"] == 5
    assert doc.invariants["chi"] == 0
    assert doc.invariants["mult-along-divisor"] == 5


def test_local_check_all_cli(tmp_path, capsys):
    path = _write(tmp_path, SUZUKI_INPUT)
    code = main(["local", "check", "all", "--input", path])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "[FAIL]" not in out
    assert "mu-tau-transfer" in out


def test_local_check_single_name(tmp_path, capsys):
    path = _write(tmp_path, SUZUKI_INPUT)
    code = main(["local", "check", "transfer", "--input", path])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "gsv-difference" in out and "ratio" not in out


def test_global_check_all_cli(tmp_path, capsys):
    path = _write(tmp_path, ALCANTARA_INPUT)
    code = main(["global", "check", "all", "--input", path, "--format", "structured"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    doc = ReportDoc.from_json(out)
    assert doc.verdicts["singularities-complete"]["status"] == "holds"
    assert doc.verdicts["gsv-sum"]["status"] == "holds"
    # reducible family curve: the equality is a flagged probe, not a failure
    assert doc.verdicts["tjurina-equality"]["status"] == "not-applicable"


def test_malformed_polynomial_exit_2(tmp_path, capsys):
    bad = dict(SUZUKI_INPUT)
    bad["P"] = "x^^2"
    path = _write(tmp_path, bad)
    code = main(["local", "invariants", "--input", path])
    assert code == EXIT_INPUT_ERROR
    assert "input error" in capsys.readouterr().out


def test_missing_file_exit_2(capsys):
    code = main(["local", "invariants", "--input", "/nonexistent/job.json"])
    assert code == EXIT_INPUT_ERROR


def test_degree_cap_exit_3(tmp_path, capsys):
    path = _write(tmp_path, SUZUKI_INPUT)
    code = main(["local", "invariants", "--input", path, "--degree-cap", "2"])
    assert code == EXIT_LIMIT
    assert "computation limit" in capsys.readouterr().out


def test_failing_check_exit_1(tmp_path, capsys):
    # the ratio bound presumes the supplied divisor is balanced; claiming
    # all four Suzuki separatrices with positive signs breaks that
    # assertion, chi goes negative (warning) and the bound fails honestly
    payload = {
        "P": "2*y^2 + x^3",
        "Q": "-2*x*y",
        "divisor": [
            {"f": "x", "coeff": 1},
            {"f": "y^2 - x^3", "coeff": 1},
            {"f": "y^2 - x^2 - x^3", "coeff": 1},
            {"f": "y^2 - 2*x^2 - x^3", "coeff": 1},
        ],
    }
    path = _write(tmp_path, payload)
    code = main(["local", "check", "ratio", "--input", path])
    out = capsys.readouterr().out
    assert code == EXIT_CHECK_FAILED
    assert "[FAIL]" in out


def test_example_run_exit_codes(capsys):
    assert main(["example", "run", "suzuki"]) == EXIT_OK
    capsys.readouterr()
    assert main(["example", "run", "fk", "--k", "4"]) == EXIT_OK
    capsys.readouterr()
    assert main(["example", "run", "alcantara", "--n", "2", "--zeta", "2",
                 "--lambda2", "5"]) == EXIT_OK
    capsys.readouterr()
    assert main(["example", "run", "nosuch"]) == EXIT_INPUT_ERROR


def test_example_list(capsys):
    assert main(["example", "list"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("suzuki", "fk", "alcantara"):
        assert name in out
    assert "n^2+n+1" in out
    assert "3k-2" in out


def test_out_file_and_roundtrip(tmp_path):
    path = _write(tmp_path, SUZUKI_INPUT)
    dest = tmp_path / "report.json"
    code = main(["local", "invariants", "--input", path, "--format",
                 "structured", "--out", str(dest)])
    assert code == EXIT_OK
    doc = ReportDoc.from_json(dest.read_text())
    again = ReportDoc.from_json(doc.to_json())
    assert again.to_json() == doc.to_json()
    assert doc.invariants["gsv"] == -10


def test_determinism_repeated_runs(tmp_path):
    job = JobSpec("local-check", SUZUKI_INPUT, ("transfer", "adjunction"),
                  Config(seed=7))
    first, code1 = run_job(job)
    second, code2 = run_job(job)
    assert code1 == code2 == EXIT_OK
    assert first.stable_json() == second.stable_json()


def test_jobspec_example_kind():
    report, code = run_job(JobSpec("example", {"name": "fk", "k": 5}))
    assert code == EXIT_OK
    assert report.invariants["milnor-foliation"] == 45
