"""End-to-end tests of the command line interface."""

import json

from supertorus import cli
from supertorus import exterior as ex


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["version"] == 1
    row = next(r for r in payload["rows"] if r["bidegree"] == [1, 1])
    assert row["h0"] == 6
    assert payload["total_h0"] == 35
    assert payload["catalan"] == 14


def test_dims_n0(capsys):
    code, out, _ = run(capsys, "dims", "--n", "0", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [{"n": 0, "bidegree": [0, 0], "h0": 1, "h1": 1}]
    assert payload["total_h0"] == 1


def test_dims_csv_totals(capsys):
    code, out, _ = run(capsys, "dims", "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,n,i,j,h0,h1"
    assert any(line.startswith("total_h0,2") and line.split(",")[4] == "10" for line in lines)


def test_dims_guard(capsys):
    code, _, err = run(capsys, "dims", "--n", "15")
    assert code == 2
    assert "guard" in err


def test_reduce_crossing(capsys):
    code, out, _ = run(capsys, "reduce", "n=4; arcs=(1,3),(2,4)", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [t["coeff"] for t in payload["terms"]] == ["-1", "-1"]


def test_reduce_noncrossing_echo(capsys):
    code, out, _ = run(capsys, "reduce", "n=2; arcs=(1,2)")
    assert code == 0
    assert out.strip() == "1 * [n=2; arcs=(1,2)]"


def test_reduce_parse_error_caret(capsys):
    code, _, err = run(capsys, "reduce", "n=4; arcs=(1,3,(2,4)")
    assert code == 2
    assert "^" in err


def test_reduce_invalid_matching_distinct_error(capsys):
    code, _, err = run(capsys, "reduce", "n=4; arcs=(1,2),(2,3)")
    assert code == 2
    assert "invalid matching" in err
    assert "^" not in err


def test_basis_n1(capsys):
    code, out, _ = run(capsys, "basis", "--n", "1", "--i", "1", "--j", "1")
    assert code == 0
    assert "1*a1 t1" in out


def test_basis_json_count(capsys):
    code, out, _ = run(capsys, "basis", "--n", "2", "--i", "1", "--j", "1", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert len(payload["rows"]) == 3


def test_character_identity_column(capsys):
    code, out, _ = run(capsys, "character", "--n", "3", "--i", "1", "--j", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    identity = next(r for r in payload["rows"] if r["cycle_type"] == [1, 1, 1])
    assert identity["character"] == 6


def test_character_zero_module_message(capsys):
    code, _, err = run(capsys, "character", "--n", "3", "--i", "0", "--j", "1")
    assert code == 2
    assert "zero" in err


def test_bijection_contains_worked_example(capsys):
    code, out, _ = run(capsys, "bijection", "--n", "8", "--k", "9", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    row = next(
        r for r in payload["rows"] if r["A"] == [1, 2, 4, 5] and r["B"] == [3, 4, 6, 7, 8]
    )
    assert row["matching"]["arcs"] == [[1, 7], [2, 3], [5, 6]]
    assert row["matching"]["alphatheta"] == [4]
    assert row["matching"]["alpha"] == [8]
    assert all(r["round_trip"] for r in payload["rows"])


def test_verify_small_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--n-max", "2", "--seed", "1")
    assert code == 0
    assert "FAIL" not in out


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 2
    assert "unknown suite" in err


def test_verify_guard(capsys):
    code, _, err = run(capsys, "verify", "--n-max", "11")
    assert code == 2
    assert "guard" in err


def test_verify_fault_injection_fails(capsys, monkeypatch):
    # a broken theta-derivative sign must fail the core suite
    def flipped(preceding, gen):
        sign = -1 if preceding & 1 else 1
        return -sign if gen.kind == "theta" else sign

    monkeypatch.setattr(ex, "_DERIVATIVE_SIGN", flipped)
    code, out, _ = run(capsys, "verify", "--suite", "core", "--n-max", "2", "--seed", "1")
    assert code == 1
    assert "FAIL" in out


def test_outputs_are_byte_deterministic(capsys):
    _, out1, _ = run(capsys, "verify", "--suite", "matchings", "--n-max", "2", "--seed", "5",
                     "--format", "json")
    _, out2, _ = run(capsys, "verify", "--suite", "matchings", "--n-max", "2", "--seed", "5",
                     "--format", "json")
    assert out1 == out2
    _, d1, _ = run(capsys, "dims", "--n", "4", "--format", "csv")
    _, d2, _ = run(capsys, "dims", "--n", "4", "--format", "csv")
    assert d1 == d2


def test_no_floats_in_output(capsys):
    _, out, _ = run(capsys, "reduce", "n=3; arcs=(1,3); a=2", "--format", "json")
    assert "e-" not in out and ".0" not in out


def test_missing_subcommand_usage_error(capsys):
    assert cli.main([]) == 2


def test_bad_flag_usage_error(capsys):
    assert cli.main(["dims", "--bogus", "3"]) == 2
