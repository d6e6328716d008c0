from hypothesis import given

from conftest import EX1, OMEGA, j_terms
from ljc.enumerate import enumerate_terms
from ljc.isn import (
    Fails,
    Holds,
    Unknown,
    admissible_rule_check,
    apply_args,
    betapi_rule,
    dbeta_rule,
    isn_betapi,
    isn_dbeta,
    isn_lambdaj_new,
    lambdaj_new_rule,
    replay_witness,
    spine,
)
from ljc.search import sn_search
from ljc.syntax import parse_term, show
from ljc.terms import CONT, HEAD, alpha_eq


def p(text):
    return parse_term(text)


def test_variable_holds():
    v = isn_dbeta(p("x"))
    assert isinstance(v, Holds) and v.witness.rule == "snvar"


def test_omega_never_resolves():
    for fuel in (10, 1000, 20000):
        assert isinstance(isn_dbeta(p(OMEGA), fuel), Unknown)
    assert isinstance(isn_betapi(p(OMEGA), 1000), Unknown)


def test_decomposition_example_recurses_through_the_restricted_redex():
    rule, path, premises = dbeta_rule(p(EX1))
    assert rule == "snbeta" and path == (HEAD, CONT)
    assert show(premises[0]) == r"x1(x2, y1.\a.a)(x3, y.(\a.a)(\a.a, b.b))"
    assert isinstance(isn_dbeta(p(EX1)), Holds)


def test_snapp_on_weak_head_normal_forms():
    rule, _, premises = dbeta_rule(p("x(u, y.y)"))
    assert rule == "snapp" and len(premises) == 3


def test_betapi_rules():
    assert betapi_rule(p("x(u, z.r)"))[0] == "hvar"
    assert betapi_rule(p(r"\x.x"))[0] == "lambda"
    rule, path, (premise,) = betapi_rule(p("x(u, y.r)(s, a.a)(q, b.b)"))
    assert rule == "pi" and path == (HEAD,)
    assert premise == p("x(u, y.r(s, a.a))(q, b.b)")
    rule, path, premises = betapi_rule(p(r"(\x.x)(u, y.y)(v, z.z)"))
    assert rule == "beta" and path == (HEAD,)
    assert premises[1:] == [p("x"), p("u")]


def test_spine():
    h, args = spine(p("x(u, y.r)(s, a.a)"))
    assert h == p("x") and len(args) == 2
    assert apply_args(h, args) == p("x(u, y.r)(s, a.a)")


def test_new_rules():
    rule, path, (premise,) = lambdaj_new_rule(p(r"x(u, y.\a.a)(s, b.b)"))
    assert rule == "isnredex1" and path == ()
    assert alpha_eq(premise, p(r"x(u, y.(\a.a)(s, b.b))"))
    rule, _, premises = lambdaj_new_rule(p(r"(\x.x)(u, y.y)"))
    assert rule == "isnredex2" and len(premises) == 3


def test_non_sn_term_fails_or_is_unknown_but_never_holds():
    t = p(r"(\x.x(x, w.w))(\x.x(x, w.w), y.y)")
    assert not isinstance(isn_dbeta(t, 2000), Holds)


def test_witness_replay_detects_tampering():
    v = isn_dbeta(p(r"(\a.a)(x, b.b)"))
    assert replay_witness(v.witness, "dbeta")
    forged = type(v.witness)("snvar", v.witness.term)
    assert not replay_witness(forged, "dbeta")


def test_admissible_rules():
    terms = [t for t in enumerate_terms(3)]
    rep = admissible_rule_check("I", [(u, r, "x", "y") for u in terms for r in terms])
    assert rep.ok and rep.checked == len(terms) ** 2
    rep = admissible_rule_check("II", [(p("y"), p("x"), p("z"), p("x(q, a.a)"), "x", "y", "z")])
    assert rep.ok
    rep = admissible_rule_check("prefix_pi", list(enumerate_terms(7)))
    assert rep.ok


@given(j_terms())
def test_inductive_predicates_agree_with_search(t):
    brute = sn_search(t, {"dbeta"}).sn
    for fn, system in ((isn_dbeta, "dbeta"), (isn_betapi, "betapi"), (isn_lambdaj_new, "new")):
        v = fn(t, 5000)
        if v.sn is not None and brute is not None:
            assert v.sn == brute
        if isinstance(v, Holds):
            assert replay_witness(v.witness, system)
        assert not isinstance(v, Fails) or v.obligation is not None
