import json

import pytest

from conftest import DELTA, EX1, OMEGA, STUCK, T0
from ljc.cli import BAD_INPUT, FAIL, OK, UNKNOWN, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "x(y,z.z)")
    assert code == OK and out.strip().startswith("x(y, z.z)")


def test_parse_error_points_at_the_column(capsys):
    code, _, err = run(capsys, "parse", "x(y, .z)")
    assert code == BAD_INPUT
    assert "^" in err


def test_parse_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(r"\a.a"))
    code, out, _ = run(capsys, "parse", "--format", "json")
    assert code == OK and json.loads(out)["term"] == r"\a.a"


def test_parse_from_file(capsys, tmp_path):
    f = tmp_path / "t.txt"
    f.write_text("x[y := z]\n")
    code, out, _ = run(capsys, "parse", "--calculus", "es", "-f", str(f))
    assert code == OK and "x[y := z]" in out


def test_reduce_trace_follows_the_weak_head_strategy(capsys):
    code, out, _ = run(capsys, "reduce", "--trace", EX1)
    assert code == OK
    first = out.splitlines()[1]
    assert first == "dbeta @ [0,2] [erasing]"


def test_loops_stop_at_the_step_limit(capsys):
    code, out, _ = run(capsys, "reduce", "--steps", "5", "--format", "json", OMEGA)
    assert code == OK
    assert json.loads(out)["steps"] == 5 and not json.loads(out)["normal"]
    assert run(capsys, "nf", "--fuel", "5", OMEGA)[0] == UNKNOWN


def test_weak_head_strategy_stops_at_a_whnf(capsys):
    code, out, _ = run(capsys, "nf", "--rules", "wh", r"(\a.a)(\b.b, c.\d.(\e.e)(d, f.f))")
    assert code == OK and out.strip() == r"\d.(\e.e)(d, f.f)"


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", T0)
    assert code == OK and out.strip().splitlines()[-1] == "z"


def test_nf_for_es_and_lambda(capsys):
    assert run(capsys, "nf", "--calculus", "es", r"(\x.x x) y")[1].strip().endswith("y y")
    assert run(capsys, "nf", "--calculus", "lam", r"(\x.x) y")[1].strip().endswith("y")


def test_unknown_rule_is_bad_input(capsys):
    code, _, err = run(capsys, "reduce", "--rules", "gamma", "x")
    assert code == BAD_INPUT and "gamma" in err


def test_sn_on_normalizing_and_looping_terms(capsys):
    assert run(capsys, "sn", T0)[0] == OK
    code, out, _ = run(capsys, "sn", "--format", "json", OMEGA)
    assert code == UNKNOWN
    obj = json.loads(out)
    assert obj["isn"] == "unknown" and obj["brute"] == "no"
    code, _, _ = run(capsys, "sn", "--method", "brute", OMEGA)
    assert code == FAIL


def test_sn_witnesses(capsys):
    code, out, _ = run(capsys, "sn", "--method", "isn", "--emit-witness", "x(y, a.a)")
    assert code == OK and len(out.splitlines()) > 1
    code, out, _ = run(capsys, "sn", "--method", "brute", "--emit-witness", "--format", "json", OMEGA)
    assert code == FAIL and json.loads(out)["loop"]


def test_sn_is_rule_sensitive(capsys):
    assert run(capsys, "sn", "--method", "brute", "--rules", "beta", STUCK)[0] == OK
    assert run(capsys, "sn", "--method", "brute", "--rules", "dbeta", STUCK)[0] == FAIL


def test_sn_isn_only_for_j(capsys):
    assert run(capsys, "sn", "--calculus", "es", "--method", "isn", "x")[0] == BAD_INPUT
    assert run(capsys, "sn", "--calculus", "es", "x[y := z]")[0] == OK


def test_simple_types(capsys):
    code, out, _ = run(capsys, "type", "--system", "simple", "w(u, y.y)")
    assert code == OK and out.strip() == "u:a, w:(a -> b) ⊢ w(u, y.y) : b"
    assert run(capsys, "type", "--system", "simple", DELTA)[0] == FAIL


def test_quant_types_and_the_checker(capsys, tmp_path):
    code, out, _ = run(capsys, "type", T0)
    assert code == OK and "z:[o]" in out
    code, out, _ = run(capsys, "type", "--emit-derivation", "--format", "json", T0)
    f = tmp_path / "d.json"
    f.write_text(out)
    code, out, _ = run(capsys, "check-derivation", "-f", str(f))
    assert code == OK and out.startswith("accepted")
    obj = json.loads(f.read_text())
    obj["type"] = "q"
    f.write_text(json.dumps(obj))
    assert run(capsys, "check-derivation", "-f", str(f))[0] == FAIL
    f.write_text("{not json")
    assert run(capsys, "check-derivation", "-f", str(f))[0] == BAD_INPUT


def test_type_of_a_looping_term_is_unknown(capsys):
    assert run(capsys, "type", "--fuel", "500", OMEGA)[0] == UNKNOWN


def test_fuel_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("LJC_FUEL", "500")
    assert run(capsys, "type", OMEGA)[0] == UNKNOWN


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "--map", "naive", "x(y, z.z)")
    assert code == OK and out.strip() == "z[z := x y]"
    code, out, _ = run(capsys, "translate", "--map", "bullet", "--format", "json", "m n")
    assert json.loads(out)["calculus"] == "j"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "isn", "--max-size", "4")
    assert code == OK and out.startswith("isn: ok")
    code, out, _ = run(capsys, "verify", "--suite", "worked-cases", "--format", "json")
    assert code == OK and json.loads(out)["violations"] == []


def test_bad_subcommand_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == BAD_INPUT
