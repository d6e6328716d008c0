import pytest
from hypothesis import given, settings

from conftest import DELTA, es_terms, j_terms
from ljc.enumerate import enumerate_es_terms, enumerate_terms
from ljc.esterms import es_alpha_eq, es_free_vars
from ljc.quant import Deriv, check_derivation_es, check_derivation_j, check_relevance
from ljc.search import sn_search
from ljc.synthesis import synthesize_quant
from ljc.syntax import parse_es, parse_term, show_es
from ljc.terms import alpha_eq, free_vars
from ljc.translations import (
    MAPS,
    bullet,
    bullet2,
    jlam,
    naive,
    pair_names,
    simulation_check,
    star,
    star_bullet,
    translate,
    translate_derivation,
)

J = parse_term


def test_naive_map():
    assert show_es(naive(J("x(y, z.z)"))) == "z[z := x y]"


def test_star_map():
    assert show_es(star(J("x(y, z.z)"))) == "(z§1 z§2)[z§2 := y][z§1 := x]"
    # binder unused in the continuation: the meta-substitution is vacuous
    m = star(J(f"({DELTA})({DELTA}, y.r)"))
    d = show_es(star(J(DELTA)))
    assert show_es(m) == f"r[y§2 := {d}][y§1 := {d}]"


def test_fresh_pair_avoids_existing_names():
    assert pair_names("y", {"y§1"}) == ("y§3", "y§4")
    m = star(J("x(y§2, y.y)"))
    assert es_free_vars(m) == {"x", "y§2"}


def test_bullet_maps():
    assert alpha_eq(bullet(parse_es("m n")), J("m(n, x.x)"))
    assert alpha_eq(bullet(parse_es("m[x := n]")), J(r"(\z.z)(n, x.m)"))
    assert alpha_eq(bullet2(parse_es("m n")), J(r"(\z.z)(n, y.m(y, z.z))"))
    assert alpha_eq(bullet2(parse_es("m[x := n]")), J(r"(\z.z)(n, x.m)"))


def test_bullet2_avoids_capture():
    t = bullet2(parse_es("y n"))
    assert free_vars(t) == {"y", "n"}


def test_star_bullet_map():
    want = J(r"(\z.z)(x, a.(\z.z)(y, b.a(b, z.z)))")
    assert alpha_eq(star_bullet(J("x(y, z.z)")), want)


def test_jlam_map():
    assert show_es(jlam(J("x(y, z.z)"))) == r"(\z.z) (x y)"


def test_translate_by_name():
    assert set(MAPS) == {"naive", "star", "bullet", "bullet2", "sharp", "jlam", "star_sharp", "star_bullet"}
    assert show_es(translate("star_sharp", J("x(y, z.z)"))) == r"(\z§1.(\z§2.z§1 z§2) y) x"
    with pytest.raises(ValueError):
        translate("nope", J("x"))


@pytest.mark.parametrize("name,family", [(n, f) for n, (f, _, _) in MAPS.items()])
def test_maps_are_total(name, family):
    src = enumerate_terms(5) if family == "j" else enumerate_es_terms(4)
    for t in src:
        translate(name, t)


def test_derivation_round_trip_keeps_sequent():
    t = J(r"x(\a.a, b.b(y, c.c))")
    d = synthesize_quant(t)
    es = translate_derivation("j->es", d)
    assert es.env_preserved
    assert check_derivation_es(es.derivation)
    assert es_alpha_eq(es.derivation.term, star(t))
    back = translate_derivation("es->j", es.derivation)
    assert check_derivation_j(back.derivation)
    assert back.env_preserved and back.derivation.type == d.type
    assert alpha_eq(back.derivation.term, star_bullet(t))


def test_derivation_translation_may_grow_abstraction_domains():
    t = J(r"\a.x(a, b.x(b, c.b))")
    d = synthesize_quant(t)
    out = translate_derivation("j->es", d).derivation
    assert check_derivation_es(out)
    assert len(out.type.dom) > len(d.type.dom)


def test_unknown_direction():
    with pytest.raises(ValueError):
        translate_derivation("sideways", synthesize_quant(J("x")))


@settings(max_examples=60)
@given(j_terms())
def test_typability_transfers(t):
    d = synthesize_quant(t, fuel=20000)
    if not isinstance(d, Deriv):
        return
    assert check_derivation_j(d)
    out = translate_derivation("j->es", d).derivation
    assert check_derivation_es(out)
    assert check_relevance(out)
    assert sn_search(out.term, {"dB", "s"}, fuel=50000).sn is not False


@settings(max_examples=60)
@given(es_terms())
def test_es_derivations_come_back(m):
    d = synthesize_quant(bullet(m), fuel=20000)
    if not isinstance(d, Deriv):
        return
    out = translate_derivation("j->es", d).derivation
    back = translate_derivation("es->j", out)
    assert back.env_preserved
    assert check_derivation_j(back.derivation)


def test_jlam_simulates_distant_beta():
    rep = simulation_check("jlam", "dbeta", [J(r"(\x.x)(u, y.y)")])
    assert rep.steps_checked == 1 and rep.ok


@pytest.mark.parametrize(
    "map_name,rule,srcs",
    [
        ("star_sharp", "p2", [r"x(y, a.\b.b)", r"x(y, a.\b.a(b, c.c))"]),
        ("star_sharp", "beta", [r"(\a.a)(y, b.b)", r"(\a.a(a, c.c))(\d.d, b.b)"]),
        ("jlam", "dbeta", [r"x(y, a.\b.b)(z, c.c)", r"(\a.a)(\b.b, c.c)(y, d.d)"]),
        ("naive", "pi", ["x(y, a.z)(w, b.b)", "x(y, a.a)(w, b.b(b, c.c))"]),
        ("star", "pi", ["x(y, a.z)(w, b.b)", "x(y, a.a)(w, b.b(b, c.c))"]),
    ],
)
def test_j_side_simulations(map_name, rule, srcs):
    rep = simulation_check(map_name, rule, [J(s) for s in srcs])
    assert rep.steps_checked >= len(srcs)
    assert rep.ok and rep.unknown == 0


@pytest.mark.parametrize("rule,srcs", [("s", ["x[x := y]", "(x x)[x := y z]"]), ("B", [r"(\x.x) y", r"(\x.x x) (y z)"])])
def test_bullet2_simulations(rule, srcs):
    rep = simulation_check("bullet2", rule, [parse_es(s) for s in srcs])
    assert rep.steps_checked == len(srcs)
    assert rep.ok and rep.unknown == 0


def test_a_wrong_contract_is_reported():
    rep = simulation_check("star_sharp", "p2", [J(r"x(y, a.\b.b)")], expected=({"sigma2"}, 1))
    assert not rep.ok
