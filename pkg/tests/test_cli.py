"""Front-end behavior: file parsing, reports, exit codes, certificate round trips."""

import json

import pytest

from galois_equiv.cli import (
    certificate_from_json,
    fixture_path,
    load_problem,
    main,
)
from galois_equiv.equivariance import verify_certificate

A5 = fixture_path("a5_3dim.json")
C3 = fixture_path("c3_inversion.json")
A7D = fixture_path("2a7_4dim.json")
REPLAY = fixture_path("a5_replay_y.json")

# Two matrices over Q[sqrt-7] whose common twist intertwiner is
# [[0,1],[-2,0]], of twisted norm -2: a minimal instance with a genuine
# obstruction.  The group is free (no relations) and tau is the identity.
OBSTRUCTED = {
    "field": {"min_poly": [7, 0, 1], "sigma_image": [0, -1]},
    "group": {
        "generators": ["g", "h"],
        "relations": [],
        "tau": {"g": "g", "h": "h"},
        "tau_order": 2,
    },
    "representation": {
        "g": [[[0, 1], 1], [-2, [0, -1]]],
        "h": [[0, 1], [-2, 0]],
    },
    "options": {"seed": 0},
}


def report_of(capsys):
    return json.loads(capsys.readouterr().out)


def write_problem(tmp_path, data, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_validate_a5(capsys):
    assert main(["validate", A5]) == 0
    report = report_of(capsys)
    assert report["ok"] and report["absolutely_irreducible"]
    assert report["burnside_dim"] == 9


def test_lambda_a5(capsys):
    assert main(["lambda", A5]) == 0
    report = report_of(capsys)
    assert report == {"lambda_rep": "-1", "lambda_canonical": "1", "is_trivial": True}


def test_lambda_c3(capsys):
    assert main(["lambda", C3]) == 0
    report = report_of(capsys)
    assert report == {"lambda_rep": "1", "lambda_canonical": "1", "is_trivial": True}


def test_equivariant_certificate_round_trip(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["equivariant", A5, "--out", str(out)]) == 0
    report = report_of(capsys)
    assert report["is_trivial"] and report["verified"]
    problem = load_problem(A5)
    cert = certificate_from_json(json.loads(out.read_text()), problem)
    assert verify_certificate(cert, problem.representation()).ok


def test_equivariant_is_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "c1.json", tmp_path / "c2.json"
    assert main(["equivariant", A5, "--seed", "7", "--out", str(out1)]) == 0
    capsys.readouterr()
    assert main(["equivariant", A5, "--seed", "7", "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_replay_uses_the_given_matrix(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["equivariant", A5, "--replay-Y", REPLAY, "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["witness"] == ["2", "-1"]
    assert cert["y"][0][0] == ["1", "-2"]
    # the replayed conjugation lands on matrices with denominator 40
    assert cert["rho_prime"]["b"][0][0] == ["1/4", "-1/10"]


def test_equivariant_c3_one_by_one(capsys):
    assert main(["equivariant", C3]) == 0
    report = report_of(capsys)
    assert report["is_trivial"] and report["verified"]
    cert = report["certificate"]
    assert len(cert["y"]) == 1 and len(cert["y"][0]) == 1
    assert cert["rho_prime"]["g"] == [[["-1/2", "1/2"]]]


def test_induce_a5(capsys):
    assert main(["induce", A5]) == 0
    report = report_of(capsys)
    assert report == {"endo_dim": 4, "relations_ok": True, "schur_index": 1, "symbol": None}


def test_induce_c3(capsys):
    assert main(["induce", C3]) == 0
    report = report_of(capsys)
    assert report["endo_dim"] == 4 and report["schur_index"] == 1


def test_validate_double_cover(capsys):
    assert main(["validate", A7D]) == 0
    report = report_of(capsys)
    assert report["ok"]
    assert report["burnside_dim"] == 16


def test_lambda_double_cover(capsys):
    assert main(["lambda", A7D]) == 3
    report = report_of(capsys)
    assert report["lambda_canonical"] == "-2"
    assert report["is_trivial"] is False
    assert report["lambda_primes_divide_declared_order"] is True


def test_induce_double_cover(capsys):
    assert main(["induce", A7D]) == 3
    report = report_of(capsys)
    assert report["schur_index"] == 2
    assert report["symbol"] == ["-2", "-7"]
    assert report["endo_dim"] == 4
    assert report["relations_ok"]


def test_equivariant_double_cover_reports_obstruction(capsys):
    assert main(["equivariant", A7D]) == 3
    report = report_of(capsys)
    assert report["symbol"] == ["-2", "-7"]
    assert report["certificate"]["y"] is None


def test_obstructed_lambda_exits_3(tmp_path, capsys):
    path = write_problem(tmp_path, OBSTRUCTED)
    assert main(["lambda", path]) == 3
    report = report_of(capsys)
    assert report["lambda_rep"] == "-2"
    assert report["lambda_canonical"] == "-2"
    assert report["is_trivial"] is False


def test_obstructed_equivariant_reports_symbol(tmp_path, capsys):
    path = write_problem(tmp_path, OBSTRUCTED)
    out = tmp_path / "cert.json"
    assert main(["equivariant", path, "--out", str(out)]) == 3
    report = report_of(capsys)
    assert report["symbol"] == ["-2", "-7"]
    assert report["certificate"]["y"] is None
    # the obstruction certificate still re-verifies from disk
    cert = json.loads(out.read_text())
    assert cert["is_trivial"] is False


def test_obstructed_induce_reports_index_two(tmp_path, capsys):
    path = write_problem(tmp_path, OBSTRUCTED)
    assert main(["induce", path]) == 3
    report = report_of(capsys)
    assert report["schur_index"] == 2
    assert report["symbol"] == ["-2", "-7"]
    assert report["endo_dim"] == 4


def test_validate_catches_broken_relation(tmp_path, capsys):
    data = json.loads(open(A5).read())
    data["group"]["relations"] = ["a a", "b b b", "a b"]
    path = write_problem(tmp_path, data)
    assert main(["validate", path]) == 1
    report = report_of(capsys)
    assert not report["ok"]
    assert {"word": "a b", "holds": False} in report["relations"]


def test_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"field": [1, 2,')
    assert main(["validate", str(path)]) == 2
    err = capsys.readouterr().err
    assert "parse error" in err and "line 1" in err


def test_missing_block_is_positioned(tmp_path, capsys):
    path = write_problem(tmp_path, {"field": {"min_poly": [-5, 0, 1], "sigma_image": [0, -1]}})
    assert main(["validate", path]) == 2
    assert "group" in capsys.readouterr().err


def test_ragged_matrix_exits_2(tmp_path, capsys):
    data = json.loads(open(C3).read())
    data["representation"]["g"] = [[1, 0], [1]]
    path = write_problem(tmp_path, data)
    assert main(["validate", path]) == 2
    assert "representation.g" in capsys.readouterr().err


def test_unknown_generator_exits_2(tmp_path, capsys):
    data = json.loads(open(C3).read())
    data["group"]["relations"] = ["g q"]
    path = write_problem(tmp_path, data)
    assert main(["validate", path]) == 2
    assert "group" in capsys.readouterr().err


def test_reducible_min_poly_exits_2(tmp_path, capsys):
    data = json.loads(open(C3).read())
    data["field"]["min_poly"] = [-4, 0, 1]
    path = write_problem(tmp_path, data)
    assert main(["validate", path]) == 2
    assert "field" in capsys.readouterr().err


def test_witness_flag_is_parsed(capsys):
    assert main(["lambda", A5, "--witness", "2,-1"]) == 0
    assert report_of(capsys)["is_trivial"] is True


def test_missing_file_exits_2(tmp_path, capsys):
    assert main(["lambda", str(tmp_path / "nope.json")]) == 2
