import json
from pathlib import Path

import pytest

from tauaudit.cli import main

GOLDEN = Path(__file__).parent / "golden"

TABLE1_CSV = """p,q,S0,S1,S2,S3,S4,S5
8291,216113,212008,4065,40,0,0,0
29021,1357091,1342657,14358,76,0,0,0
30403,1283839,1268731,15015,93,0,0,0
34549,789673,772578,16918,175,2,0,0
51133,112919,89995,20474,2267,174,9,0
53897,371549,345582,25014,925,28,0,0
96739,392957,347376,42917,2543,118,3,0
"""

VERDICTS = {"holds", "fails", "undetermined", "not-directly-testable"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def check_schema(payload):
    assert isinstance(payload, list) and payload
    for r in payload:
        assert set(r) == {"claim", "inputs", "verdict", "witness"}
        assert isinstance(r["claim"], str)
        assert isinstance(r["inputs"], dict) and isinstance(r["witness"], dict)
        assert r["verdict"] in VERDICTS
        _no_raw_numbers(r)


def _no_raw_numbers(value):
    # every integer travels as a decimal string
    if isinstance(value, dict):
        for v in value.values():
            _no_raw_numbers(v)
    elif isinstance(value, list):
        for v in value:
            _no_raw_numbers(v)
    else:
        assert not isinstance(value, int) or isinstance(value, bool)


class TestTau:
    @pytest.mark.parametrize("engine", ["eta", "eisenstein", "discriminant"])
    def test_tau_1(self, capsys, engine):
        code, out, _ = run(capsys, "--format", "text", "tau", "--n", "1", "--engine", engine)
        assert code == 0 and out == "1\n"

    def test_tau_json(self, capsys):
        code, out, _ = run(capsys, "tau", "--n", "2")
        assert code == 0
        assert json.loads(out) == {"n": "2", "engine": "eta", "tau": "-24"}

    def test_bad_n(self, capsys):
        code, _, err = run(capsys, "tau", "--n", "0")
        assert code == 1 and "error" in err


class TestExitCodes:
    def test_verify_engines(self, capsys):
        code, out, _ = run(capsys, "verify-engines", "--max", "300")
        assert code == 0
        check_schema(json.loads(out))

    def test_scan(self, capsys):
        code, out, _ = run(capsys, "scan", "--max", "2000")
        assert code == 0
        assert json.loads(out)[0]["verdict"] == "holds"

    def test_scan_uses_cache(self, capsys, tmp_path):
        code, _, _ = run(capsys, "--cache-dir", str(tmp_path), "scan", "--max", "500")
        assert code == 0
        assert (tmp_path / "sigma_k5_N500_modnone.txt").exists()
        assert (tmp_path / "sigma_k11_N500_modnone.txt").exists()

    def test_lemma1(self, capsys):
        assert run(capsys, "lemma1", "--max", "5000")[0] == 0

    def test_claims_holds(self, capsys):
        code, out, _ = run(capsys, "claims", "--p", "1381")
        assert code == 0
        check_schema(json.loads(out))

    def test_claims_fails(self, capsys):
        # 7 | 252 breaks the low-digit claim
        code, out, _ = run(capsys, "claims", "--p", "7")
        assert code == 2
        assert any(r["claim"] == "DIGITS_EQ12" and r["verdict"] == "fails" for r in json.loads(out))

    def test_claims_undetermined(self, capsys):
        code, _, _ = run(capsys, "claims", "--p", "29021", "--trial-bound", "100", "--rho-iterations", "1")
        assert code == 3

    def test_matrix_sample_mode_undetermined(self, capsys):
        code, out, _ = run(capsys, "matrix", "--p", "1381", "--q", "216113")
        assert code == 3
        check_schema(json.loads(out))

    def test_matrix_full(self, capsys):
        code, out, _ = run(capsys, "matrix", "--p", "211", "--q", "1013", "--full")
        assert code in (0, 2)
        claims = {r["claim"]: r["verdict"] for r in json.loads(out)}
        assert claims["WSUM_EQ49"] == "holds"
        assert (code == 2) == ("fails" in claims.values())

    def test_census(self, capsys):
        assert run(capsys, "census", "--p", "8291", "--q", "216113")[0] == 0

    def test_group(self, capsys):
        assert run(capsys, "group", "--p", "8291", "--q", "216113")[0] == 0

    def test_group_bad_q(self, capsys):
        code, _, err = run(capsys, "group", "--p", "8291", "--q", "2")
        assert code == 1 and "odd prime" in err

    def test_gcd(self, capsys):
        code, out, _ = run(capsys, "gcd", "--p", "1381")
        assert code == 0
        check_schema(json.loads(out))

    def test_periodicity(self, capsys):
        assert run(capsys, "periodicity", "--p", "1381", "--alpha", "1", "--k", "5")[0] == 0

    def test_periodicity_precondition(self, capsys):
        assert run(capsys, "periodicity", "--p", "1381", "--alpha", "2", "--k", "1")[0] == 1


class TestUsage:
    def test_unknown_flag(self, capsys):
        code, out, err = run(capsys, "tau", "--n", "1", "--bogus")
        assert code == 1 and out == ""
        assert "usage:" in err

    def test_missing_subcommand(self, capsys):
        assert run(capsys)[0] == 1

    def test_resource_error(self, capsys):
        code, _, err = run(capsys, "--memory-budget", "1000", "scan", "--max", "5000")
        assert code == 1 and "memory_budget_bytes" in err

    def test_nonpositive_budget(self, capsys):
        assert run(capsys, "--jobs", "0", "gapset", "--max", "5")[0] == 1


class TestTables:
    def test_table1_csv_byte_for_byte(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "table1")
        assert code == 0
        assert out == TABLE1_CSV

    def test_table1_json(self, capsys):
        code, out, _ = run(capsys, "--jobs", "2", "table1")
        assert code == 0
        payload = json.loads(out)
        check_schema(payload)
        assert sum(r["claim"] == "TABLE1_ROW" for r in payload) == 7

    def test_gapset_text(self, capsys):
        code, out, _ = run(capsys, "--format", "text", "gapset", "--max", "60")
        assert code == 0
        assert out.split()[:14] == "6 10 12 16 18 28 30 36 40 42 46 48 52 58".split()

    def test_gapset_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "gapset", "--max", "12")
        assert out == "alpha\n6\n10\n12\n"


def test_csv_report_format(capsys):
    code, out, _ = run(capsys, "--format", "csv", "lemma1", "--max", "100")
    lines = out.splitlines()
    assert lines[0] == "claim,verdict,inputs,witness"
    assert lines[1].startswith("LEMMA1_SCAN,holds,")


def test_golden_claims_report(capsys):
    code, out, _ = run(capsys, "claims", "--p", "1381")
    golden = (GOLDEN / "claims_p1381.json").read_text()
    assert out == golden
