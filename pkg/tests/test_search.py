import pytest

from conftest import OMEGA, STUCK
from ljc.search import (
    No,
    Unknown,
    Yes,
    as_budget,
    max_beta_in_betapi,
    max_nonerasing,
    normal_forms,
    reachable,
    sn_search,
)
from ljc.reduction import replay
from ljc.syntax import parse_es, parse_lam, parse_term
from ljc.terms import alpha_eq


def test_normalizing_term_reports_the_longest_reduction():
    v = sn_search(parse_term(r"(\a.a)((\b.b)(x, c.c), d.d)"), {"dbeta"})
    assert v == Yes(2)
    assert sn_search(parse_term("x"), {"dbeta"}) == Yes(0)


def test_omega_loops():
    v = sn_search(parse_term(OMEGA), {"beta"})
    assert isinstance(v, No) and v.sn is False
    assert replay(v.witness)
    terms = v.witness.terms()
    assert alpha_eq(terms[v.cycle_start], terms[-1])


def test_stuck_term():
    t = parse_term(STUCK)
    assert sn_search(t, {"beta"}) == Yes(0)
    assert isinstance(sn_search(t, {"dbeta"}), No)
    assert isinstance(sn_search(t, {"beta", "pi"}), No)


def test_budget_exhaustion_is_unknown():
    # Church two applied to itself keeps the graph large
    two = r"\f.\x.f(f(x, a.a), b.b)"
    t = parse_term(f"({two})({two}, c.c)({two}, d.d)(g, e.e)(z, h.h)")
    v = sn_search(t, {"dbeta", "pi"}, as_budget(50))
    assert isinstance(v, Unknown) and v.sn is None


def test_weights():
    t = parse_term(r"(\a.z)(x, b.b)")
    assert sn_search(t, {"dbeta"}) == Yes(1)
    assert max_nonerasing(t) == Yes(0)
    assert max_beta_in_betapi(parse_term(r"x(y, a.\b.b)(z, c.c)")) == Yes(1)


def test_es_and_lambda_families():
    assert sn_search(parse_es(r"(\x.x x)[y := z] w"), {"dB", "s"}) == Yes(3)
    omega = parse_lam(r"(\x.x x) (\x.x x)")
    assert isinstance(sn_search(omega, {"beta"}), No)
    with pytest.raises(ValueError):
        sn_search(parse_term("x"), {"wh"})


def test_reachability():
    om = parse_term(OMEGA)
    assert reachable(om, om, {"beta"}) == 1
    assert reachable(om, om, {"beta"}, exact=3) == 3
    t = parse_term(r"(\a.a)(x, b.b)")
    assert reachable(t, parse_term("x"), {"beta"}) == 1
    assert reachable(t, parse_term("y"), {"beta"}) is None
    assert reachable(t, parse_term("x"), {"beta"}, exact=2) is None


def test_normal_forms():
    nfs = normal_forms(parse_term(r"(\a.a)(x, b.b)"), {"beta"})
    assert len(nfs) == 1
