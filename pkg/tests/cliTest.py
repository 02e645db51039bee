"""End to end runs through the command line entry point."""
from __future__ import annotations

import json
import pathlib

import pytest

from primesums.cli import main
from primesums.initVariables import RunConfig
from primesums.utils import Command

TEMPLATES = pathlib.Path(__file__).resolve().parents[1] / "templates"


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PRIMESUMS_CACHE_DIR", str(tmp_path / "cache"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_thm2_acceptance_run(capsys):
    code, out, err = run_cli(capsys, "thm2", "--range", "1:10000", "--no-timings")
    assert code == 0
    records = json_lines(out)
    assert len(records) == 10_001
    assert all(r["exact"] and r["ms"] == 0 for r in records[:-1])
    assert records[-1]["kind"] == "SUMMARY"
    assert records[-1]["violations"] == 0
    assert "checked=10000 exact=10000 violations=0 inconclusive=0 elapsed=0.000" in err


def test_collision_at_twenty(capsys):
    code, out, _ = run_cli(capsys, "collision", "--n", "20")
    assert code == 0
    record = json_lines(out)[0]
    assert record["witnesses"] == [[5, 11], [5, 7]]
    assert record["products"] == [55, 35]


def test_thm1_below_its_domain_is_a_usage_error(capsys):
    code, out, err = run_cli(capsys, "thm1", "--range", "1:4")
    assert code == 2
    assert out == ""
    assert "x >= 5" in err


def test_sample_without_seed(capsys):
    code, _, err = run_cli(capsys, "thm2", "--range", "1:1e6", "--sample", "5")
    assert code == 2
    assert "--seed" in err


def test_sampling_is_seeded(capsys):
    argv = ("thm2", "--range", "1e4:1e8", "--sample", "50", "--seed", "7", "--no-timings")
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first == second
    xs = [r["x"] for r in json_lines(first[1])[:-1]]
    assert xs == sorted(xs) and len(set(xs)) == 50


def test_output_is_worker_independent(capsys):
    base = ("pi-formula", "--range", "2:3000", "--no-timings")
    code, single, _ = run_cli(capsys, *base)
    assert code == 0
    _, sharded, _ = run_cli(capsys, *base, "--workers", "3")
    assert single == sharded


def test_inverted_range(capsys):
    code, _, err = run_cli(capsys, "thm2", "--range", "10:1")
    assert code == 2
    assert "past its end" in err


def test_unknown_command_exits_with_usage():
    with pytest.raises(SystemExit) as info:
        main(["thm3", "--n", "5"])
    assert info.value.code == 2


def test_parity_audit(capsys):
    code, out, _ = run_cli(capsys, "pi-formula", "--range", "2:300", "--variant", "audit",
                           "--no-timings")
    assert code == 0
    audits = {r["variant"]: r for r in json_lines(out) if r.get("kind") == "PARITY_AUDIT"}
    assert audits["statement"]["rounds_everywhere"]
    assert audits["proof"]["max_abs_residual"] > 0.1


def test_prime_window_violations_exit_one(capsys):
    code, out, _ = run_cli(capsys, "prime-window", "--range", "3:200", "--no-timings")
    assert code == 1
    records = json_lines(out)
    assert records[0]["status"] == "PASS"
    assert any(r.get("status") == "VIOLATION" for r in records)
    assert records[-2]["kind"] == "PRIME_WINDOW_UNIFORM"
    assert records[-1]["statuses"]["VIOLATION"] == records[-1]["violations"]


def test_prime_window_pass_cases(capsys):
    code, _, _ = run_cli(capsys, "prime-window", "--range", "3:4")
    assert code == 0


def test_goldbach_skips_odd_n(capsys):
    code, out, _ = run_cli(capsys, "goldbach", "--range", "6:200", "--no-timings")
    assert code == 0
    records = json_lines(out)[:-1]
    assert [r["n"] for r in records] == list(range(6, 201, 2))


def test_upsilon_run(capsys):
    code, out, _ = run_cli(capsys, "upsilon", "--xs", "10,100,1000")
    assert code == 0
    records = json_lines(out)[:-1]
    assert records[0]["ratio"] is None
    assert records[2]["ratio"] > 0


def test_trend_csv(capsys, tmp_path):
    plot = tmp_path / "trend.png"
    code, out, _ = run_cli(capsys, "trend", "--xs", "10000,100000", "--format", "csv",
                           "--plot", str(plot))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,mertens_sum,logx_loglogx,ratio"
    assert len(lines) == 3
    assert plot.exists()


def test_out_file(tmp_path, capsys):
    path = tmp_path / "runs" / "thm2.jsonl"
    code, out, _ = run_cli(capsys, "thm2", "--range", "1:100", "--out", str(path))
    assert code == 0 and out == ""
    assert len(path.read_text().splitlines()) == 101


def test_parameters_file(capsys, tmp_path):
    params = tmp_path / "parameters.txt"
    params.write_text("Command: thm2\nRange: 1:1e3\nTimings: 0  # identical reruns\n")
    code, out, _ = run_cli(capsys, "thm2", "--params", str(params))
    assert code == 0
    assert len(json_lines(out)) == 1001
    # explicit flags win over the file
    code, out, _ = run_cli(capsys, "thm2", "--params", str(params), "--format", "csv")
    assert out.splitlines()[0].startswith("identity,x,lhs,rhs")


def test_missing_parameters_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "thm2", "--params", str(tmp_path / "absent.txt"))
    assert code == 2
    assert "not found" in err


@pytest.mark.parametrize("name", ["acceptance", "trend"])
def test_shipped_templates_parse(name):
    config = RunConfig.from_parameters(TEMPLATES / name / "parameters.txt")
    config.validate()
    assert config.values()


def test_acceptance_template_values():
    config = RunConfig.from_parameters(TEMPLATES / "acceptance" / "parameters.txt")
    assert config.command is Command.THM2
    assert config.values() == list(range(1, 10_001))
    assert config.timings is False


def test_timings_are_on_unless_disabled(capsys):
    code, out, _ = run_cli(capsys, "thm2", "--range", "1:50")
    assert code == 0
    assert all(isinstance(r["ms"], (int, float)) for r in json_lines(out)[:-1])
    with pytest.raises(SystemExit):
        main(["thm2", "--help"])
    assert "give identical bytes" in " ".join(capsys.readouterr().out.split())
