import io
import json
import re
import subprocess
import sys

import pytest

from covergame.cli import main, parse_args, run_command
from covergame.errors import UnsupportedFormat
from covergame.output import emit_output
from covergame.strategy import softmax_guess
from oracles import LHS_1_0_M1, WIN_1_0_M1

GOLDEN_CASES = [
    (["exact", "--points", "1,0,-1"], "exact_1_0_-1.json"),
    (["inequality", "--points", "1,0,-1"], "inequality_1_0_-1.json"),
    (["sweep", "--points", "1,0,-1", "--scales", "1,0.1,0.001"], "sweep_1_0_-1.csv"),
    (["ruleset", "check", "{golden}/vertical.json"], "vertical_check.json"),
    (["ruleset", "check", "{golden}/mirror.json"], "mirror_check.json"),
    (["ruleset", "sample", "mirror", "--params", "[[0,1],[1,2]]"], "mirror.json"),
]


def run(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.mark.parametrize("argv,name", GOLDEN_CASES)
def test_golden_outputs_are_byte_identical(argv, name, golden_dir, capsys):
    argv = [a.format(golden=golden_dir) for a in argv]
    status, out, _ = run(argv, capsys)
    assert status == 0
    assert out.encode() == (golden_dir / name).read_bytes()


def test_golden_values_agree_with_the_oracle(golden_dir):
    exact = json.loads((golden_dir / "exact_1_0_-1.json").read_text())
    assert abs(exact["win_probability"] - WIN_1_0_M1) <= 1e-9
    assert abs(exact["edge"] - (WIN_1_0_M1 - 1 / 6)) <= 1e-9
    ineq = json.loads((golden_dir / "inequality_1_0_-1.json").read_text())
    assert abs(ineq["lhs"] - LHS_1_0_M1) <= 1e-9 and ineq["holds"] is True
    vertical = json.loads((golden_dir / "vertical_check.json").read_text())
    assert vertical["verdict"] == "unsolvable" and vertical["witness"] == [0.0]


def test_key_order_is_fixed(capsys):
    _, out, _ = run(["simulate", "--points", "1,0", "--trials", "1000", "--seed", "4"], capsys)
    assert list(json.loads(out)) == ["n", "points", "win_probability", "baseline", "edge",
                                     "method", "trials", "stderr", "seed"]


def test_simulate_is_deterministic(capsys):
    argv = ["simulate", "--points", "1,0,-1", "--trials", "5000", "--seed", "9"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_exact_methods_agree(capsys):
    enum = json.loads(run(["exact", "--points", "2,0.5,-1,0.1", "--method", "enum"], capsys)[1])
    dp = json.loads(run(["exact", "--points", "2,0.5,-1,0.1", "--method", "dp"], capsys)[1])
    assert enum["win_probability"] == pytest.approx(dp["win_probability"], abs=1e-11)


def test_negative_leading_point(capsys):
    status, out, _ = run(["exact", "--points=-1,0"], capsys)
    assert status == 0 and json.loads(out)["points"] == [0.0, -1.0]


@pytest.mark.parametrize("argv", [
    ["exact", "--points", "1,1"],
    ["exact", "--points", "1"],
    ["exact", "--method", "enum", "--points", "1,0,2,3,4,5,6,7,8,9,10"],
    ["ruleset", "check", "/nonexistent/rules.json"],
    ["ruleset", "sample", "mirror", "--params", "not json"],
    ["adversary", "--n", "3", "--min-gap", "1", "--range", "0,1"],
])
def test_domain_errors_exit_with_one(argv, capsys):
    status, out, err = run(argv, capsys)
    assert status == 1 and out == ""
    assert re.match(r"^\w+: ", err)


@pytest.mark.parametrize("argv", [
    ["exact", "--points", "a,b"],
    ["exact"],
    ["simulate", "--points", "1,0", "--seed", "-1"],
    ["simulate", "--points", "1,0", "--seed", str(2 ** 64)],
    ["simulate", "--points", "1,0", "--trials", "0"],
    ["sweep", "--points", "1,0", "--scales", "1", "--format", "xml"],
    ["bogus"],
])
def test_usage_errors_exit_with_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_largest_seed_is_accepted():
    assert parse_args(["simulate", "--points", "1,0", "--seed", str(2 ** 64 - 1)]).seed == 2 ** 64 - 1


def test_sweep_csv_header(capsys):
    _, out, _ = run(["sweep", "--points", "3,1", "--scales", "1,0.5"], capsys)
    lines = out.splitlines()
    assert lines[0] == "scale,win_probability,baseline,edge" and len(lines) == 3


def test_play_transcript_shows_the_softmax_distribution(capsys):
    for seed in range(20):
        status, out, _ = run(["play", "--seed", str(seed), "--points", "1.5,0,-0.5,2"], capsys)
        assert status == 0
        lines = out.splitlines()
        assert lines[-1] == "outcome: win" or lines[-1].startswith("outcome: loss at stage ")
        for line in lines:
            m = re.match(r"stage \d+: visible (\[.*\]), distribution (\[.*\])", line)
            if m:
                visible, shown = json.loads(m.group(1)), json.loads(m.group(2))
                assert shown == pytest.approx(softmax_guess(visible).probs, abs=1e-6)


def test_play_reads_points_from_stdin():
    args = parse_args(["play", "--seed", "1"])
    text, status = run_command(args, io.StringIO("1, 0, -1\n"))
    assert status == 0 and text.startswith("reveal order")


def test_play_is_reproducible(capsys):
    argv = ["play", "--seed", "77", "--points", "1,0,-1"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_unsupported_formats():
    with pytest.raises(UnsupportedFormat):
        emit_output({"n": 2}, "csv")
    with pytest.raises(UnsupportedFormat):
        emit_output({"n": 2}, "yaml")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "covergame", "exact", "--points", "1,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stderr.startswith("DuplicateValues: ")
    proc = subprocess.run([sys.executable, "-m", "covergame", "exact"], capture_output=True)
    assert proc.returncode == 2
