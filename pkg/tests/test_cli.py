import json

import pytest

from multiderange import cli
from multiderange import selftest as selftest_mod
from multiderange.cli import parse_shape, ShapeParseError
from multiderange.polys import AlphaPoly
from multiderange.recurrence import builtin_operator, operator_to_record, save_operator


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def run_machine(capsys, *argv):
    rc, out, err = run_cli(capsys, *argv, "--format", "machine")
    return rc, (json.loads(out) if out.strip() else None), err


def test_parse_shape():
    assert parse_shape("1,1") == (1, 1)
    assert parse_shape("4^13") == (4,) * 13
    assert parse_shape("2,3^2,1") == (2, 3, 3, 1)
    assert parse_shape("0") == (0,)
    for bad in ("", "1,", "a", "2^", "-1", "1^2^3"):
        with pytest.raises(ShapeParseError):
            parse_shape(bad)


def test_wder_machine_envelope(capsys):
    rc, env, _ = run_machine(capsys, "wder", "1,1")
    assert rc == 0
    assert env["command"] == "wder"
    assert env["inputs"] == {"shape": [1, 1], "alpha": None, "identified": False}
    assert env["result"] == {"variable": "a", "coeffs": ["0", "1"]}
    assert isinstance(env["timing_ms"], float)


def test_wder_zero_polynomial(capsys):
    rc, env, _ = run_machine(capsys, "wder", "2")
    assert rc == 0
    assert env["result"] == {"variable": "a", "coeffs": []}


def test_wder_alpha_evaluation(capsys):
    rc, env, _ = run_machine(capsys, "wder", "1,1,1,1", "--alpha", "1")
    assert rc == 0
    assert env["result"] == "9"


def test_wder_identified_requires_alpha_one(capsys):
    rc, _, err = run_cli(capsys, "wder", "2,2", "--identified", "--alpha", "2")
    assert rc == 2
    assert "identified" in err


def test_count_identified(capsys):
    rc, env, _ = run_machine(capsys, "count", "2,2,2", "--identified")
    assert rc == 0
    assert env["result"] == "10"


def test_wder_deck_identified(capsys):
    rc, env, _ = run_machine(capsys, "wder", "4^13", "--alpha", "1", "--identified")
    assert rc == 0
    assert env["result"] == "1493804444499093354916284290188948031229880469556"


def test_bad_shape_exit_code(capsys):
    rc, _, err = run_cli(capsys, "wder", "2,x")
    assert rc == 2
    assert "bad shape" in err


def test_seq_values(capsys):
    rc, env, _ = run_machine(capsys, "seq", "1", "4")
    assert rc == 0
    assert env["inputs"]["engine"] == "recurrence"
    values = env["result"]["values"]
    assert values == [
        {"variable": "a", "coeffs": []},
        {"variable": "a", "coeffs": ["0", "1"]},
        {"variable": "a", "coeffs": ["0", "2"]},
        {"variable": "a", "coeffs": ["0", "6", "3"]},
    ]


def test_seq_k2_values(capsys):
    rc, env, _ = run_machine(capsys, "seq", "2", "3")
    assert rc == 0
    assert env["result"]["values"] == [
        {"variable": "a", "coeffs": []},
        {"variable": "a", "coeffs": ["0", "2", "2"]},
        {"variable": "a", "coeffs": ["0", "32", "40", "8"]},
    ]


@pytest.mark.parametrize("k", [1, 2])
def test_seq_engine_agreement(capsys, k):
    rc1, env1, _ = run_machine(capsys, "seq", str(k), "10", "--engine", "recurrence")
    rc2, env2, _ = run_machine(capsys, "seq", str(k), "10", "--engine", "direct")
    assert rc1 == rc2 == 0
    assert json.dumps(env1["result"]) == json.dumps(env2["result"])


def test_seq_recurrence_unsupported_k(capsys):
    rc, _, err = run_cli(capsys, "seq", "3", "4", "--engine", "recurrence")
    assert rc == 2
    assert "no built-in operator" in err


def test_seq_direct_engine_for_large_k(capsys):
    rc, env, _ = run_machine(capsys, "seq", "3", "3")
    assert rc == 0
    assert env["inputs"]["engine"] == "direct"


def test_seq_with_operator_file(capsys, tmp_path):
    path = tmp_path / "op1.json"
    save_operator(builtin_operator(1), path)
    rc1, env1, _ = run_machine(capsys, "seq", "1", "8", "--operator", str(path))
    rc2, env2, _ = run_machine(capsys, "seq", "1", "8")
    assert rc1 == rc2 == 0
    assert env1["inputs"]["engine"] == "operator-file"
    assert env1["result"] == env2["result"]


def test_seq_alpha_one_derangement_numbers(capsys):
    rc, env, _ = run_machine(capsys, "seq", "1", "8", "--alpha", "1")
    assert rc == 0
    assert env["result"]["values"] == ["0", "1", "2", "9", "44", "265", "1854", "14833"]


def test_seq_deck_last_value(capsys):
    from math import factorial
    from multiderange.selftest import DECK_IDENTIFIED_COUNT

    rc, env, _ = run_machine(capsys, "seq", "4", "13", "--alpha", "1")
    assert rc == 0
    assert env["inputs"]["engine"] == "direct"
    labeled = factorial(4) ** 13 * DECK_IDENTIFIED_COUNT
    assert env["result"]["values"][-1] == str(labeled)


def test_guess_from_equal_blocks(capsys, tmp_path):
    out_path = tmp_path / "guessed.json"
    rc, env, _ = run_machine(
        capsys,
        "guess", "-k", "1", "--terms", "15",
        "--max-order", "2", "--max-deg-n", "1", "--max-deg-a", "1",
        "--out", str(out_path),
    )
    assert rc == 0
    assert env["result"]["found"] is True
    assert env["result"]["operator"] == operator_to_record(builtin_operator(1))
    # the --out artifact is the bare operator record, consumable by verify
    assert json.loads(out_path.read_text()) == operator_to_record(builtin_operator(1))


def test_guess_constant_sequence_file(capsys, tmp_path):
    seq_path = tmp_path / "const.json"
    seq_path.write_text(json.dumps({
        "schema": "poly-sequence/v1",
        "start": 0,
        "values": ["1"] * 10,
    }))
    rc, env, _ = run_machine(capsys, "guess", "--file", str(seq_path),
                             "--max-order", "1", "--max-deg-n", "0", "--max-deg-a", "0")
    assert rc == 0
    assert env["result"]["operator"]["coeffs"] == [[[0, 0, "-1"]], [[0, 0, "1"]]]


def test_guess_insufficient_terms(capsys):
    rc, env, _ = run_machine(capsys, "guess", "-k", "1", "--terms", "4")
    assert rc == 1
    assert env["result"]["found"] is False


def test_guess_requires_a_source(capsys):
    rc, _, err = run_cli(capsys, "guess")
    assert rc == 2
    assert "--file" in err


def test_verify_pass_and_fail(capsys, tmp_path):
    op_path = tmp_path / "op1.json"
    save_operator(builtin_operator(1), op_path)
    rc, env, _ = run_machine(capsys, "verify", "--operator", str(op_path),
                             "-k", "1", "--terms", "11")
    assert rc == 0
    assert env["result"]["verified"] is True

    # perturb the coefficient of the 'a' monomial in c_0: breaks the n=0 window
    record = operator_to_record(builtin_operator(1))
    record["coeffs"][0][0][2] = "-2"
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(record))
    rc, env, _ = run_machine(capsys, "verify", "--operator", str(bad_path),
                             "-k", "1", "--terms", "11")
    assert rc == 1
    assert env["result"]["verified"] is False
    assert env["result"]["first_failure"] == 0


def test_verify_schema_error(capsys, tmp_path):
    bad = tmp_path / "mangled.json"
    bad.write_text('{"schema": "recurrence-operator/v1", "order": 2}')
    rc, _, err = run_cli(capsys, "verify", "--operator", str(bad), "-k", "1",
                         "--terms", "8")
    assert rc == 2
    assert "operator.coeffs" in err


def test_verify_constant_sequence_against_shift_minus_one(capsys, tmp_path):
    op_path = tmp_path / "nm1.json"
    op_path.write_text(json.dumps({
        "schema": "recurrence-operator/v1",
        "order": 1,
        "valid_from": 0,
        "coeffs": [[[0, 0, "-1"]], [[0, 0, "1"]]],
    }))
    seq_path = tmp_path / "const.json"
    seq_path.write_text(json.dumps({
        "schema": "poly-sequence/v1", "start": 0, "values": ["1"] * 6,
    }))
    rc, env, _ = run_machine(capsys, "verify", "--operator", str(op_path),
                             "--file", str(seq_path))
    assert rc == 0
    assert env["result"]["verified"] is True


def test_selftest_with_lowered_cap(capsys):
    rc, env, _ = run_machine(capsys, "selftest", "--cap", "4")
    assert rc == 0
    rows = {r["name"]: r for r in env["result"]}
    assert rows["oracle-sweep"]["passed"] is True
    assert "total <= 4" in rows["oracle-sweep"]["detail"]


def test_selftest_full(capsys):
    rc, env, _ = run_machine(capsys, "selftest")
    assert rc == 0
    assert all(r["passed"] for r in env["result"])
    assert {r["name"] for r in env["result"]} == {
        "oracle-sweep", "cycle-identity", "deck-of-cards",
        "recurrence-cross-validation",
    }


def test_selftest_detects_sabotage(capsys, monkeypatch):
    monkeypatch.setattr(selftest_mod, "rising_factorial", lambda n: AlphaPoly((n,)))
    rc, env, _ = run_machine(capsys, "selftest", "--cap", "4")
    assert rc == 1
    rows = {r["name"]: r for r in env["result"]}
    assert rows["cycle-identity"]["passed"] is False
    assert rows["oracle-sweep"]["passed"] is True


def test_out_artifact_round_trips(capsys, tmp_path):
    out_path = tmp_path / "poly.json"
    rc, env, _ = run_machine(capsys, "wder", "2,2", "--out", str(out_path))
    assert rc == 0
    assert json.loads(out_path.read_text()) == env["result"]


def test_text_format_smoke(capsys):
    rc, out, _ = run_cli(capsys, "wder", "2,2")
    assert rc == 0
    assert "2*a^2 + 2*a" in out
    assert "time:" in out
