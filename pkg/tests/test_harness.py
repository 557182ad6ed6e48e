"""Random generation determinism, the experiment harness, and the CLI."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from tightmatch.cli import main
from tightmatch.experiment import ExperimentConfig, run_experiment
from tightmatch.generate import RandomModel, random_colouring, random_path_cycle_instance
from tightmatch.hypercore import Colour
from tightmatch.serialize import load


# -- random model ------------------------------------------------------------


def test_random_all_red():
    g = random_colouring(RandomModel(n=7, k=3, red_prob=1.0, seed=5))
    assert g.is_complete()
    assert all(c is Colour.RED for c in g.edges.values())


def test_random_all_absent():
    g = random_colouring(RandomModel(n=7, k=3, absent_prob=1.0, seed=5))
    assert g.edge_count == 0


def test_random_seed_determinism():
    a = random_colouring(RandomModel(n=12, k=4, absent_prob=0.2, seed=99))
    b = random_colouring(RandomModel(n=12, k=4, absent_prob=0.2, seed=99))
    assert a == b
    c = random_colouring(RandomModel(n=12, k=4, absent_prob=0.2, seed=100))
    assert a != c


def test_random_path_instance_deterministic():
    a = random_path_cycle_instance(3, 12, seed=7, structure="path")
    b = random_path_cycle_instance(3, 12, seed=7, structure="path")
    assert a == b
    structure, xs, ys, edges = a
    assert all(len(set(e) & set(ys)) >= 2 for e in edges)


# -- experiment harness ---------------------------------------------------------


def test_experiment_k4_complete_red():
    config = ExperimentConfig(
        model=RandomModel(n=8, k=4, red_prob=1.0, seed=1),
        repetitions=1,
        pipeline="k4",
        no_meta=True,
    )
    report = run_experiment(config)
    lines = [ln for ln in report.splitlines() if not ln.startswith("#")]
    header, row, summary = lines[0], lines[1], lines[-1]
    cells = dict(zip(header.split(","), row.split(",")))
    assert cells["covered"] == "8"
    assert cells["verified"] == "true"
    assert "median_coverage=1.000000" in summary


def test_experiment_rows_in_order_and_seeded():
    config = ExperimentConfig(
        model=RandomModel(n=10, k=4, seed=50),
        repetitions=3,
        pipeline="k4",
        no_meta=True,
    )
    report = run_experiment(config)
    rows = [ln for ln in report.splitlines() if ln and ln[0].isdigit()]
    seeds = [int(r.split(",")[1]) for r in rows]
    assert seeds == [50, 51, 52]


def test_experiment_byte_identical_with_no_meta():
    config = ExperimentConfig(
        model=RandomModel(n=10, k=4, seed=3),
        repetitions=2,
        pipeline="k4",
        no_meta=True,
    )
    assert run_experiment(config) == run_experiment(config)


def test_experiment_mu_oracle_column():
    config = ExperimentConfig(
        model=RandomModel(n=5, k=3, seed=11),
        repetitions=4,
        pipeline="mu",
        mu_mode=("any", 1),
        no_meta=True,
    )
    report = run_experiment(config)
    lines = [ln for ln in report.splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    for row in lines[1:-1]:
        cells = dict(zip(header, row.split(",")))
        assert cells["weight"] == cells["oracle"]


# -- CLI -----------------------------------------------------------------------


def test_cli_gen_analyze_round_trip(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "random", "--n", "8", "--k", "3", "--seed", "4", "-o", str(out)]) == 0
    g = load(out)
    assert g.n == 8 and g.k == 3
    capsys.readouterr()
    assert main(["analyze", str(out), "--json"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["edges"] == g.edge_count


def test_cli_density_check(tmp_path, capsys):
    out = tmp_path / "g.txt"
    main(["gen", "random", "--n", "10", "--k", "3", "--red-p", "1", "-o", str(out)])
    capsys.readouterr()
    code = main(["density", "check", "--mu", "4/5", "--alpha", "0", str(out), "--json"])
    assert code == 0
    info = json.loads(capsys.readouterr().out)
    assert info["dense"] is True


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 5\nR 0 0 1\n")
    assert main(["analyze", str(bad)]) == 2
    missing = tmp_path / "missing.txt"
    assert main(["analyze", str(missing)]) == 2
    # a partitionable instance exits 0, the extremal instance exits 3
    ok = tmp_path / "ok.txt"
    main(["gen", "random", "--n", "6", "--k", "3", "--red-p", "1", "-o", str(ok)])
    capsys.readouterr()
    assert main(["verify", "partition", str(ok)]) == 0
    capsys.readouterr()


def test_cli_match_summary_line(tmp_path, capsys):
    src = tmp_path / "h.txt"
    main(["gen", "random", "--n", "12", "--k", "4", "--red-p", "1", "-o", str(src)])
    capsys.readouterr()
    trace = tmp_path / "trace.json"
    code = main(["match", "k4", str(src), "--trace", str(trace)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("covered=12/12")
    assert json.loads(trace.read_text())["k"] == 4


def test_cli_mu(tmp_path, capsys):
    src = tmp_path / "h.txt"
    main(["gen", "random", "--n", "6", "--k", "3", "--seed", "2", "-o", str(src)])
    capsys.readouterr()
    assert main(["mu", "--s", "1", "--beta", "1/3", str(src)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["optimality"] == "exact"


def test_cli_experiment(tmp_path, capsys):
    out = tmp_path / "runs.csv"
    code = main([
        "experiment", "--pipeline", "k4", "--n", "10", "--k", "4",
        "--reps", "2", "--seed", "7", "--no-meta", "-o", str(out),
    ])
    assert code == 0
    text = out.read_text()
    assert "format_version=1" in text
    assert text.count("\n") >= 6
