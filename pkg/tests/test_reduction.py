import pytest
from hypothesis import given

from conftest import EX1, OMEGA, STUCK, j_terms
from ljc.classify import classify, is_answer, is_dbeta_nf, is_m, is_mvar, is_neutral, is_whnf
from ljc.codec import NameTable, decode, encode, index_to_path, public_rule, rule_mask
from ljc import kernel
from ljc.reduction import (
    ReductionTrace,
    is_erasing,
    isn_strategy_step,
    leftmost_step,
    parse_rules,
    pi_normal_form,
    reduce_with,
    replay,
    step_root,
    steps,
    wh_decompositions,
    wh_redex,
    wh_step,
)
from ljc.syntax import parse_term, show
from ljc.terms import CONT, HEAD, alpha_eq, alpha_key, subterm


def p(text):
    return parse_term(text)


def test_beta_at_the_root():
    got = step_root("beta", p(r"(\x.x(x, a.a))(u, y.y(v, b.b))"))
    assert alpha_eq(got, p("u(u, a.a)(v, b.b)"))
    assert step_root("beta", p(r"w(u, y.\x.x)(v, z.z)")) is None


def test_pi_at_the_root():
    got = step_root("pi", p("t(u, y.r)(v, z.s)"))
    assert got == p("t(u, y.r(v, z.s))")


def test_pi_renames_the_inner_binder():
    got = step_root("pi", p("t(u, y.y)(y, z.z)"))
    assert alpha_eq(got, p("t(u, a.a(y, z.z))"))


def test_p2_at_the_root():
    got = step_root("p2", p(r"t(u, y.\x.x(y, a.a))"))
    assert got == p(r"\x.t(u, y.x(y, a.a))")


def test_distant_beta_through_a_continuation():
    got = step_root("dbeta", p(r"w(u, v.\x.s(x, a.a))(q, y.y(y, b.b))"))
    want = p("w(u, v.s(q, a.a))(w(u, v.s(q, a.a)), b.b)")
    assert alpha_eq(got, want)
    assert step_root("beta", p(r"w(u, v.\x.x)(q, y.y)")) is None


def test_distant_beta_avoids_capture_by_the_distant_binders():
    got = step_root("dbeta", p(r"w(u, v.\x.x)(v, y.y)"))
    assert alpha_eq(got, p("w(u, a.v)"))


def test_erasing_flags():
    assert is_erasing("dbeta", p(r"(\x.z)(u, y.y)"))
    assert is_erasing("dbeta", p(r"(\x.x)(u, y.z)"))
    assert not is_erasing("dbeta", p(r"(\x.x)(u, y.y)"))


def test_omega_steps_to_itself_under_beta():
    om = p(OMEGA)
    got = steps({"beta"}, om)
    assert len(got) == 1 and alpha_eq(got[0].result, om)


def test_stuck_term_has_a_pi_step_to_a_copy_of_omega():
    t = p(STUCK)
    assert steps({"beta"}, t) == []
    results = [alpha_key(s.result) for s in steps({"beta", "pi"}, t)]
    assert alpha_key(p(r"w(u, v.(\y.y(y, z.z))(\y.y(y, z.z), x.x))")) in results


def test_the_decomposition_example():
    t = p(EX1)
    assert step_root("dbeta", t) is not None
    assert wh_decompositions(t) == [(HEAD, CONT)]
    assert wh_redex(t) == (HEAD, CONT)
    assert show(subterm(t, wh_redex(t))) == r"(\a.a)(\a.a, z.\a.a)"
    ctx, red = wh_step(t)
    assert ctx.path == (HEAD, CONT)
    assert show(red) == r"x1(x2, y1.\a.a)(x3, y.(\a.a)(\a.a, b.b))"
    first = isn_strategy_step(t)
    assert first.path == (HEAD, CONT)


def test_classes():
    assert is_answer(p(r"x(u, y.\z.z)"))
    assert is_neutral(p("x(u, y.y(v, z.z))"))
    assert not is_neutral(p(r"x(u, y.\z.z)"))
    assert is_whnf(p(r"x((\a.a)(b, c.c), y.y)"))
    nf = p("w(u, v.x)(q, y.y)")
    assert is_m(nf) and is_mvar(nf)
    assert is_m(p(r"w(u, v.x)(q, y.\a.a)")) and not is_mvar(p(r"w(u, v.x)(q, y.\a.a)"))
    flags = classify(p(r"\x.x"))
    assert flags.is_answer_a and flags.is_m and not flags.is_neutral_n


def test_pi_normal_form():
    assert pi_normal_form(p("t(u, y.r)(v, z.s)")) == p("t(u, y.r(v, z.s))")
    t = p("a(b, c.c)(d, e.e)(f, g.g)")
    nf = pi_normal_form(t)
    assert steps({"pi"}, nf) == []


def test_leftmost_and_traces():
    t = p(r"(\x.x)((\a.a)(z, b.b), y.y)")
    trace, done = reduce_with(t, lambda s: leftmost_step({"beta"}, s), 10)
    assert done and trace.terms()[-1] == p("z")
    assert replay(trace)
    bad = ReductionTrace(t, trace.steps[1:])
    assert not replay(bad)
    assert "beta @" in trace.to_text(show)
    assert trace.to_json(show)["steps"][0]["rule"] == "beta"


def test_rule_parsing():
    assert parse_rules("beta,pi") == {"beta", "pi"}
    assert parse_rules("beta+p2") == {"beta", "p2"}
    with pytest.raises(ValueError):
        step_root("eta", p("x"))


@given(j_terms())
def test_named_steps_match_the_kernel(t):
    table = NameTable()
    code = encode(t, table)
    for rule in ("beta", "pi", "p2", "dbeta"):
        named = {alpha_key(s.result) for s in steps({rule}, t)}
        coded = {alpha_key(decode(c, table)) for _, _, _, c in kernel.reducts(code, rule_mask("j", {rule}))}
        assert named == coded


@given(j_terms())
def test_kernel_positions_and_flags_match(t):
    table = NameTable()
    code = encode(t, table)
    named = {(s.rule, s.path, s.erasing) for s in steps({"dbeta", "pi"}, t)}
    coded = {(public_rule("j", r), index_to_path(code, i), e) for r, i, e, _ in kernel.reducts(code, rule_mask("j", {"dbeta", "pi"}))}
    assert named <= coded


@given(j_terms())
def test_codec_round_trip(t):
    table = NameTable()
    assert alpha_eq(decode(encode(t, table), table), t)


@given(j_terms())
def test_weak_head_step_is_unique(t):
    decs = wh_decompositions(t)
    assert len(decs) <= 1
    assert (wh_step(t) is None) == is_whnf(t) == (not decs)


@given(j_terms())
def test_normal_form_classes_agree(t):
    assert is_m(t) == is_dbeta_nf(t) == (not steps({"dbeta"}, t))


@given(j_terms())
def test_every_step_replays(t):
    for s in steps({"beta", "pi", "p2", "dbeta"}, t):
        assert replay(ReductionTrace(t, [s]))
