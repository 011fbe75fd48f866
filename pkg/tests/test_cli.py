import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from randchain.betti import ChainSpec, betti_distribution
from randchain.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_dist_csv(capsys):
    code, out, _ = run(["dist", "--q", "2", "--dims", "1,1", "--m", "0"], capsys)
    assert code == 0
    rows = csv_rows(out)
    assert [(r["b"], r["numerator"], r["denominator"], float(r["decimal"])) for r in rows] == [
        ("0", "1", "2", 0.5),
        ("1", "1", "2", 0.5),
    ]


def test_dist_json_round_trip(capsys):
    code, out, _ = run(["dist", "--q", "7", "--dims", "2,3,2,2", "--m", "1", "--format", "json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "dist"
    assert report["params"] == {"q": 7, "dims": [2, 3, 2, 2], "m": 1}
    parsed = {r["b"]: Fraction(int(r["numerator"]), int(r["denominator"])) for r in report["rows"]}
    assert parsed == dict(betti_distribution(ChainSpec(7, (2, 3, 2, 2)), 1))


def test_rank_dist(capsys):
    code, out, _ = run(["rank-dist", "--q", "2", "--dims", "1,1", "--m", "1"], capsys)
    assert code == 0
    assert {r["rank"]: r["numerator"] + "/" + r["denominator"] for r in csv_rows(out)} == {"0": "1/2", "1": "1/2"}


def test_moments(capsys):
    code, out, _ = run(["moments", "--q", "2", "--dims", "1,1", "--m", "0", "--t", "2", "--format", "json"], capsys)
    assert code == 0
    stats = {r["stat"]: (r["numerator"], r["denominator"]) for r in json.loads(out)["rows"]}
    assert stats == {"mean": ("1", "2"), "variance": ("1", "4"), "moment_2": ("1", "2")}


def test_asymptotic(capsys):
    code, out, _ = run(["asymptotic", "--dims", "1,3,1", "--m", "1", "--format", "json"], capsys)
    assert code == 0
    rows = {r["quantity"]: r["value"] for r in json.loads(out)["rows"]}
    assert rows == {"B_m": 1, "limiting_rank": 1, "istar": "1,2"}


def test_counts(capsys):
    code, out, _ = run(["counts", "--q", "2", "--rank-matrices", "2,2,1"], capsys)
    assert code == 0
    assert csv_rows(out)[0]["numerator"] == "9"


def test_counts_several(capsys):
    code, out, _ = run(
        ["counts", "--q", "2", "--q-binomial", "4,2", "--independent-tuples", "2,2", "--pmkr", "1,1,1", "--format", "json"],
        capsys,
    )
    assert code == 0
    got = {r["quantity"]: (r["numerator"], r["denominator"]) for r in json.loads(out)["rows"]}
    assert got == {"q_binomial": ("35", "1"), "independent_tuples": ("6", "1"), "pmkr": ("1", "2")}


def test_counts_needs_a_request(capsys):
    code, _, err = run(["counts", "--q", "2"], capsys)
    assert code == 1 and "counts needs" in err


def test_sweep_q(capsys):
    code, out, _ = run(["sweep-q", "--qs", "2,3,5,7,11", "--dims", "2,3,2,2", "--m", "1", "--format", "json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["params"]["B_m"] == 0
    assert report["monotone"] is True
    assert report["rows"][-1]["decimal"] > 0.9


def test_sweep_q_flags_non_monotone(capsys):
    # listing primes in decreasing order makes the sequence decrease
    code, out, _ = run(["sweep-q", "--qs", "11,2", "--dims", "2,3,2,2", "--m", "1", "--format", "json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["monotone"] is False
    assert [r["monotone"] for r in report["rows"]] == [True, False]


def test_sample_reproducible(capsys):
    argv = ["sample", "--q", "3", "--dims", "2,2,2", "--m", "1", "--trials", "500", "--seed", "42", "--format", "json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    report = json.loads(first)
    assert report["seed"] == "42"
    assert sum(r["count"] for r in report["rows"]) == 500


def test_sample_csv_echoes_seed(capsys):
    code, out, _ = run(["sample", "--q", "2", "--dims", "1,1", "--m", "0", "--trials", "10", "--seed", "9"], capsys)
    assert code == 0
    assert {r["seed"] for r in csv_rows(out)} == {"9"}


def test_compare_includes_oracle(capsys):
    code, out, _ = run(
        ["compare", "--q", "2", "--dims", "1,2,1", "--m", "1", "--trials", "2000", "--seed", "3", "--format", "json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["tv_oracle_exact"]["numerator"] == "0"
    assert report["tv_empirical_exact"]["decimal"] < 0.1
    assert all(r["oracle"] != "" for r in report["rows"])


def test_compare_over_budget(capsys):
    argv = ["compare", "--q", "2", "--dims", "3,3,3", "--m", "1", "--trials", "10", "--seed", "3", "--budget", "100"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert all(r["oracle"] == "" for r in csv_rows(out))
    code, _, err = run(argv + ["--require-oracle"], capsys)
    assert code == 2 and "states" in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(["dist", "--q", "2", "--dims", "1,1", "--m", "0", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().startswith("b,numerator")


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["dist", "--q", "4", "--dims", "1,1", "--m", "0"], "--q"),
        (["dist", "--q", "2", "--dims", "1,x", "--m", "0"], "--dims"),
        (["dist", "--q", "2", "--dims", "1,-1", "--m", "0"], "--dims"),
        (["dist", "--q", "2", "--dims", "1,1", "--m", "1"], "--m"),
        (["rank-dist", "--q", "2", "--dims", "1,1", "--m", "0"], "--m"),
        (["sweep-q", "--qs", "2,9", "--dims", "1,1", "--m", "0"], "--qs"),
        (["sample", "--q", "2", "--dims", "1,1", "--m", "0", "--trials", "0"], "--trials"),
    ],
)
def test_usage_errors(argv, flag, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1
    assert out == ""
    assert flag in err
    assert len(err.strip().splitlines()) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "randchain", "asymptotic", "--dims", "1,3,1", "--m", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "B_m,1" in proc.stdout
