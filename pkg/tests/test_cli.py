from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qkzres.cli import budget, main
from qkzres.construct import xi_gen
from qkzres.qchar import QSeries, branching
from qkzres.wedge import WedgeElement


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_tetra(capsys):
    code, out, _ = run(capsys, "verify", "tetra", "--n-max", "12")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert len([c for c in data["checks"] if c["name"].startswith("tetranomial")]) == 13


def test_verify_det_symbolic(capsys):
    code, out, _ = run(capsys, "verify", "det", "--even", "4", "--ell", "2", "--mode", "symbolic")
    data = json.loads(out)
    assert code == 0
    (check,) = data["checks"]
    assert check["detail"]["exponent"] == 5 and check["detail"]["c"] not in (None, "0")


def test_verify_span(capsys):
    code, out, _ = run(capsys, "verify", "span", "--n", "3", "--ell", "3")
    data = json.loads(out)
    assert code == 0
    assert data["checks"][0]["detail"]["rank"] == 20 == data["checks"][0]["detail"]["dimension"]


def test_emit_gen_round_trip(capsys):
    code, out, _ = run(capsys, "emit", "gen", "--even", "4", "--kind", "xi", "--index", "1")
    assert code == 0
    assert WedgeElement.from_json(json.loads(out)) == xi_gen(4, 1)


def test_emit_branch_round_trip(capsys):
    code, out, _ = run(capsys, "emit", "branch", "--parity", "0", "--lambda", "0", "--cutoff", "20")
    assert QSeries.from_json(json.loads(out)) == branching(0, 0, 20)


def test_emit_char_odd_offset(capsys):
    code, out, _ = run(capsys, "emit", "char", "--parity", "odd", "--n", "3", "--ell", "1", "--cutoff", "10")
    assert code == 0 and Fraction(json.loads(out)["offset"]) == Fraction(9, 4)
    code, out2, _ = run(capsys, "char", "--n", "3", "--ell", "1", "--cutoff", "10")
    assert out2 == out


def test_emit_basis_and_table(capsys):
    code, out, _ = run(capsys, "emit", "basis", "--even", "4", "--ell", "2")
    labels = [row["label"] for row in json.loads(out)]
    assert len(labels) == 6
    code, out, _ = run(capsys, "emit", "series", "--kind", "qbinom", "--m", "4", "--r", "2", "--format", "table")
    assert out.strip() == "1 + q + 2*q^2 + q^3 + q^4"


def test_coords(capsys):
    code, out, _ = run(capsys, "coords", "--even", "4", "Xi2")
    assert code == 0 and json.loads(out) == {"xi1": "2"}
    code, out, _ = run(capsys, "coords", "--even", "4", "v1", "w1")
    assert json.loads(out) == {"v1^w1": "1"}


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--n", "4", "1,2,4|2,4")
    trace = json.loads(out)
    assert code == 0 and trace[0]["descriptor"] == "(1,2,4|2,4)" and trace[-1]["case"] == "zero"


def test_qid(capsys):
    for which in ("fermionic", "ising", "branching"):
        code, out, _ = run(capsys, "qid", which, "--cutoff", "12")
        assert code == 0 and json.loads(out)["passed"]


def test_exit_codes(capsys, monkeypatch):
    code, _, err = run(capsys, "emit", "gen", "--even", "4", "--kind", "v", "--index", "9")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "verify", "det", "--even", "3")
    assert code == 2
    monkeypatch.setenv("QKZRES_BUDGET", "nvars=4")
    assert budget()["nvars"] == 4
    code, _, _ = run(capsys, "verify", "basis", "--even", "6")
    assert code == 2
    monkeypatch.setenv("QKZRES_BUDGET", "bogus=1")
    code, _, _ = run(capsys, "verify", "basis", "--even", "2")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])


def test_failure_exit_code(capsys, monkeypatch):
    import qkzres.cli as cli

    def broken(args, rep):
        rep.add("always fails", False, {"counterexample": [1, 2]})
    monkeypatch.setitem(cli.SUITES, "tetra", broken)
    code, out, _ = run(capsys, "verify", "tetra")
    assert code == 1 and json.loads(out)["checks"][0]["detail"] == {"counterexample": [1, 2]}


def test_table_format(capsys):
    code, out, _ = run(capsys, "verify", "tetra", "--n-max", "2", "--format", "table")
    assert out.startswith("suite tetra: PASS")


def test_seed_and_timing(capsys):
    _, out, _ = run(capsys, "verify", "det", "--even", "4", "--ell", "3", "--mode", "randomized", "--seed", "5")
    detail = json.loads(out)["checks"][0]["detail"]
    assert detail["seed"] == 5 and detail["trials"] == 8 and "seconds" not in json.loads(out)
    _, out, _ = run(capsys, "verify", "tetra", "--n-max", "2", "--timing")
    assert "seconds" in json.loads(out)


@pytest.mark.slow
def test_verify_all_is_deterministic():
    cmd = [sys.executable, "-m", "qkzres", "verify", "all", "--seed", "3"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0
    assert first.stdout == second.stdout
