import json
from fractions import Fraction

import pytest

from scg.cli import main
from scg.generators import random_supermodular, random_omega
from scg.generalized import serialize_generalized, serialize_omega
from scg.model import Edge, GameInstance, serialize_instance


@pytest.fixture
def cyclic(tmp_path):
    path = tmp_path / "e1.json"
    assert main(["gen", "example1", "--out", str(path)]) == 0
    return str(path)


@pytest.fixture
def pair(tmp_path):
    g = GameInstance(
        n=2, m=2,
        intrinsic=((Fraction(4), Fraction(0)), (Fraction(0), Fraction(5))),
        edges=(Edge(0, 1, Fraction(6), Fraction(1, 2)),))
    path = tmp_path / "pair.json"
    path.write_text(serialize_instance(g))
    return str(path)


def test_gen_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "random", "--n", "5", "--m", "3", "--seed", "9",
                     "--out", str(p)]) == 0
    assert a.read_text() == b.read_text()


def test_solve_hybrid_with_oracle(pair, capsys):
    assert main(["solve", "hybrid", "--alpha", "2", "--in", pair,
                 "--opt-oracle"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["profile"] == "2,2"
    assert out["rho"] == "1"
    assert out["welfare"] == "11"


def test_verify_nash_failure_exit_code(cyclic, capsys):
    code = main(["verify", "nash", "--alpha", "1", "--in", cyclic,
                 "--profile", "1,2,3"])
    assert code == 4
    out = json.loads(capsys.readouterr().out)
    assert abs(float(Fraction(out["max_factor"])) - 1.41421) < 1e-4


def test_verify_nash_success(pair, capsys):
    assert main(["verify", "nash", "--alpha", "1", "--in", pair,
                 "--profile", "1,2"]) == 0


def test_verify_strong(pair, capsys):
    assert main(["verify", "strong", "--alpha", "1", "--in", pair,
                 "--profile", "1,2"]) == 0
    code = main(["verify", "strong", "--alpha", "1", "--in", pair,
                 "--profile", "1,1"])
    assert code == 4
    out = capsys.readouterr().out.strip().splitlines()[-1]
    assert json.loads(out)["verdict"] == "violated"


def test_census_json_and_csv(cyclic, capsys):
    assert main(["census", "--in", cyclic, "--alpha", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["exists"] is False and payload["equilibria"] == []
    assert main(["census", "--in", cyclic, "--alpha", "3/2",
                 "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().split("\r\n")
    assert lines[0] == "profile,welfare,max_factor,is_nash,is_strong"
    assert len(lines) > 1


def test_payments_command(pair, capsys):
    assert main(["payments", "--in", pair]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["profile"] == "2,2"
    assert out["payments"] == ["1", "0"]
    assert out["nu"] == "1/11"
    assert Fraction(out["post_payment_max_factor"]) <= 1


def test_bounds_single_cell(capsys):
    assert main(["bounds", "--alpha", "2", "--gamma", "1", "--m", "4"]) == 0
    assert capsys.readouterr().out.strip() == "4/7"


def test_bounds_grid_csv(capsys):
    assert main(["bounds", "--alpha", "2,1618/1000", "--gamma", "1,2,10",
                 "--m", "4", "--asymptotic", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().split("\r\n")
    assert lines[0] == "alpha,gamma,m,fraction,decimal"
    assert len(lines) == 13  # 2 alphas x 3 gammas x (4, inf)
    cells = {tuple(l.split(",")[:3]): l.split(",")[3:] for l in lines[1:]}
    assert cells[("2", "1", "4")][0] == "4/7"
    assert cells[("2", "10", "4")][0] == "1/4"


def test_solve_oneshot_and_sqrt2(cyclic, capsys):
    assert main(["solve", "oneshot", "--in", cyclic, "--alpha", "1",
                 "--k0", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["profile"] == "2,2,3"
    assert main(["solve", "sqrt2", "--in", cyclic]) == 0
    profile = json.loads(capsys.readouterr().out)["profile"]
    assert main(["verify", "nash", "--alpha", "141422/100000", "--in", cyclic,
                 "--profile", profile]) == 0


def test_solve_two_strategy_algorithms(pair, capsys):
    assert main(["solve", "algorithm1", "--in", pair]) == 0
    p = json.loads(capsys.readouterr().out)["profile"]
    assert main(["verify", "nash", "--alpha", "1", "--in", pair,
                 "--profile", p]) == 0
    capsys.readouterr()
    assert main(["solve", "strong2", "--in", pair]) == 0
    p = json.loads(capsys.readouterr().out)["profile"]
    assert main(["verify", "strong", "--alpha", "1", "--in", pair,
                 "--profile", p]) == 0


def test_generalized_pipeline(tmp_path, capsys):
    gg = random_supermodular(4, 2, 2, 0)
    path = tmp_path / "gg.json"
    path.write_text(serialize_generalized(gg))
    assert main(["solve", "oneshot-gen", "--in", str(path), "--k0", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert main(["verify", "generalized", "--in", str(path),
                 "--profile", out["profile"], "--alpha", "3"]) == 0


def test_lexstrong_pipeline(tmp_path, capsys):
    og = random_omega(4, 2, 0, omega=Fraction(1, 2))
    path = tmp_path / "og.json"
    path.write_text(serialize_omega(og))
    assert main(["solve", "lexstrong", "--in", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["alpha"] == "2"


def test_audit_potential_command(tmp_path, capsys, cyclic):
    ok = tmp_path / "cc.json"
    assert main(["gen", "random-cc", "--n", "5", "--m", "3", "--seed", "4",
                 "--out", str(ok)]) == 0
    assert main(["audit-potential", "--in", str(ok), "--trials", "500"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["recovered"] is True and payload["violations"] == 0
    assert main(["audit-potential", "--in", cyclic]) == 4
    payload = json.loads(capsys.readouterr().out)
    assert payload["recovered"] is False


def test_argument_errors_exit_2(tmp_path, capsys):
    assert main(["bounds", "--alpha", "x", "--gamma", "1", "--m", "4"]) == 2
    assert main(["solve", "hybrid", "--in", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_size_guard_exit_3(tmp_path, capsys):
    big = tmp_path / "big.json"
    assert main(["gen", "random", "--n", "20", "--m", "3", "--seed", "1",
                 "--out", str(big)]) == 0
    assert main(["census", "--in", str(big)]) == 3


def test_search_no_sne_runs(capsys):
    assert main(["search-no-sne", "--n", "3", "--count", "5", "--seed", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["scanned"] == 5
