import json

import pytest

from qdiam.cli import main
from qdiam.families import read_family


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- bound ---------------------------------------------------------------------

def test_bound_kleitman(capsys):
    code, out, _ = run_cli(capsys, "bound", "kleitman", "--q", "2",
                           "--n", "4", "--d", "3")
    assert code == 0
    assert out.splitlines()[0] == "23"


def test_bound_type_a_with_range_flag(capsys):
    code, out, _ = run_cli(capsys, "bound", "typeA-even", "--q", "2",
                           "--n", "7", "--t", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "842"
    assert doc["hypothesis_range_satisfied"] is False


def test_bound_out_of_range_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "bound", "kleitman", "--q", "2",
                           "--n", "3", "--d", "3")
    assert code == 2
    assert "n >= d+1" in err


def test_bound_missing_parameter(capsys):
    code, _, err = run_cli(capsys, "bound", "kleitman", "--q", "2", "--n", "4")
    assert code == 2
    assert "--d" in err


def test_bound_values_are_decimal_strings(capsys):
    # a value far beyond 64-bit range must print exactly
    code, out, _ = run_cli(capsys, "bound", "gauss", "--q", "3",
                           "--n", "40", "--k", "20")
    assert code == 0
    from qdiam.qcount import gauss_binom
    assert out.strip() == str(gauss_binom(40, 20, 3))


# -- construct / check ----------------------------------------------------------

def test_construct_and_check_round_trip(tmp_path, capsys):
    fam_path = tmp_path / "d1.fam"
    code, out, _ = run_cli(capsys, "construct", "D", "--q", "2", "--n", "4",
                           "--t", "1", "--x", "2:4:1:1000",
                           "-o", str(fam_path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == "23"
    assert doc["diameter"] == 3
    assert doc["support"] == [0, 1, 2]
    with open(fam_path) as fh:
        fam = read_family(fh)
    assert len(fam) == 23

    code, out, _ = run_cli(capsys, "check", str(fam_path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == "23"
    assert doc["diameter"] == 3


def test_construct_ball_radius_zero(capsys):
    code, out, err = run_cli(capsys, "construct", "ball",
                             "--center", "2:4:0:", "--r", "0")
    assert code == 0
    assert out.startswith("family 2 4 1\n")
    assert "size 1" in err


def test_construct_k_family(tmp_path, capsys):
    fam_path = tmp_path / "k.fam"
    code, out, _ = run_cli(capsys, "construct", "K", "--q", "2", "--n", "7",
                           "--t", "2", "--x", "2:7:1:1000000",
                           "--y", "2:7:3:0100000,0010000,0001000",
                           "-o", str(fam_path), "--format", "json")
    assert code == 0
    assert json.loads(out)["size"] == "3006"


def test_construct_conflicting_params(capsys):
    code, _, err = run_cli(capsys, "construct", "D", "--q", "3", "--n", "4",
                           "--t", "1", "--x", "2:4:1:1000")
    assert code == 2
    assert "conflicts" in err


def test_check_admissibility_verdict(tmp_path, capsys):
    fam_path = tmp_path / "l.fam"
    run_cli(capsys, "construct", "L", "--q", "2", "--n", "4", "--t", "1",
            "-o", str(fam_path))
    code, out, _ = run_cli(capsys, "check", str(fam_path),
                           "--class", "A_even", "--t", "1", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["admissibility"]["admissible"] is False
    assert doc["admissibility"]["witness_kind"] == "lower_layers"


def test_check_parse_error_has_line(tmp_path, capsys):
    bad = tmp_path / "bad.fam"
    bad.write_text("family 2 4 1\n2:4:2:1100,1100\n")
    code, _, err = run_cli(capsys, "check", str(bad))
    assert code == 2
    assert "line 2" in err


# -- enumerate -------------------------------------------------------------------

def test_enumerate_layer(capsys):
    code, out, err = run_cli(capsys, "enumerate", "--q", "2", "--n", "3",
                             "--k", "1")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 7
    assert "7 subspaces" in err


def test_enumerate_budget(capsys, monkeypatch):
    monkeypatch.setenv("QDIAM_MAX_LATTICE", "10")
    code, _, err = run_cli(capsys, "enumerate", "--q", "2", "--n", "4")
    assert code == 2
    assert "budget" in err.lower()


# -- oracle ----------------------------------------------------------------------

def test_oracle_exit_zero_and_report(tmp_path, capsys):
    out_path = tmp_path / "rep.json"
    code, _, _ = run_cli(capsys, "oracle", "max", "--q", "2", "--n", "3",
                         "--d", "2", "--all", "-o", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["optimum"] == "8"
    assert doc["characterization_match"] is True
    assert doc["exhaustive"] is True


def test_oracle_budget_exit_two(capsys):
    code, _, err = run_cli(capsys, "oracle", "max", "--q", "2", "--n", "9",
                           "--d", "2")
    assert code == 2
    assert "budget" in err.lower()


def test_oracle_env_budget_override(capsys, monkeypatch):
    monkeypatch.setenv("QDIAM_MAX_LATTICE", "10")
    code, _, _ = run_cli(capsys, "oracle", "max", "--q", "2", "--n", "3",
                         "--d", "2")
    assert code == 2
    # explicit flag takes precedence over the environment
    code, out, _ = run_cli(capsys, "oracle", "max", "--q", "2", "--n", "3",
                           "--d", "2", "--budget", "400")
    assert code == 0


def test_oracle_admissible_class(capsys):
    code, out, _ = run_cli(capsys, "oracle", "max", "--q", "2", "--n", "4",
                           "--d", "3", "--class", "A_odd")
    assert code == 0
    doc = json.loads(out)
    assert doc["optimum"] == "23"
    assert doc["parameters"]["family_class"] == "A_odd"
    assert doc["in_hypothesis_range"] is False


def test_oracle_timeout_exit_two(capsys):
    code, out, _ = run_cli(capsys, "oracle", "max", "--q", "2", "--n", "5",
                           "--d", "3", "--all", "--timeout", "0.0")
    assert code == 2
    doc = json.loads(out)
    assert doc["timed_out"] is True
    assert doc["proven_optimal"] is False


def test_oracle_threads_validated(capsys):
    with pytest.raises(SystemExit):
        main(["oracle", "max", "--q", "2", "--n", "3", "--d", "2",
              "--threads", "0"])


# -- sweep -----------------------------------------------------------------------

def test_sweep_csv_output(capsys):
    code, out, _ = run_cli(capsys, "sweep", "lemma26", "--qmax", "2",
                           "--nmax", "16", "--kmax", "6", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "q,k,s,n,lhs,rhs,margin,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_sweep_exit_codes(capsys):
    code, _, _ = run_cli(capsys, "sweep", "type-ratio")
    assert code == 0
    code, out, _ = run_cli(capsys, "sweep", "type-compare", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["all_pass"] is False
    assert any(f["params"] == {"q": 2, "t": 2, "n": 12} for f in doc["failures"])


def test_sweep_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "sweep", "hm-positive", "--qmax", "2",
                         "--nmax", "30", "--format", "csv")
    _, out2, _ = run_cli(capsys, "sweep", "hm-positive", "--qmax", "2",
                         "--nmax", "30", "--format", "csv")
    assert out1 == out2


def test_check_class_requires_t(tmp_path, capsys):
    fam_path = tmp_path / "l.fam"
    run_cli(capsys, "construct", "L", "--q", "2", "--n", "3", "--t", "1",
            "-o", str(fam_path))
    code, _, err = run_cli(capsys, "check", str(fam_path), "--class", "A_even")
    assert code == 2
    assert "--t" in err
