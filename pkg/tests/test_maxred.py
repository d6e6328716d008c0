from hypothesis import given

from conftest import OMEGA, j_terms
from ljc.maxred import maxred_dbeta, rb_maxred_betapi
from ljc.reduction import steps
from ljc.search import max_beta_in_betapi, sn_search
from ljc.syntax import parse_term


def p(text):
    return parse_term(text)


def test_variable():
    assert maxred_dbeta(p("x")) == 0
    assert rb_maxred_betapi(p("x")) == 0


def test_neutral_application_adds_up():
    t = p(r"x((\a.a)(y, b.b), c.(\d.d)(c, e.e))")
    assert maxred_dbeta(t) == maxred_dbeta(p("x")) + 1 + 1


def test_erasing_redex_counts_every_part():
    # y not free in r: 1 + maxred(r) + maxred(body) + maxred(u)
    t = p(r"(\x.(\a.a)(x, b.b))((\c.c)(z, d.d), y.w)")
    assert maxred_dbeta(t) == 1 + 0 + 1 + 1
    assert rb_maxred_betapi(t) == 1 + 0 + 1 + 1


def test_diverging_terms_have_no_value():
    assert maxred_dbeta(p(OMEGA)) is None
    assert rb_maxred_betapi(p(OMEGA)) is None


@given(j_terms())
def test_equations_match_the_longest_path(t):
    v = sn_search(t, {"dbeta"})
    if v.sn:
        assert maxred_dbeta(t) == v.maxred
    b = max_beta_in_betapi(t)
    if b.sn:
        assert rb_maxred_betapi(t) == b.maxred


@given(j_terms())
def test_rb_value_is_invariant_under_pi(t):
    rb = rb_maxred_betapi(t)
    if rb is None:
        return
    for s in steps({"pi"}, t):
        assert rb_maxred_betapi(s.result) == rb
