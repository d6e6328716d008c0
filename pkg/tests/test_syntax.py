import pytest
from hypothesis import given

from conftest import es_terms, j_terms
from ljc.enumerate import enumerate_es_terms, enumerate_terms
from ljc.esterms import EApp, ESub, EVar, es_alpha_eq, es_free_vars, es_substitute
from ljc.syntax import ParseError, parse_es, parse_lam, parse_term, show, show_es
from ljc.terms import (
    Abs,
    GApp,
    HOLE,
    Var,
    abstraction_shape,
    alpha_eq,
    alpha_key,
    context_at,
    context_kind,
    free_vars,
    positions,
    replace_at,
    size,
    substitute,
    subterm,
)


# locally nameless conversion written independently of the library
def nameless(t, scope=()):
    if isinstance(t, Var):
        return ("bound", scope.index(t.name)) if t.name in scope else ("free", t.name)
    if isinstance(t, Abs):
        return ("abs", nameless(t.body, (t.binder,) + scope))
    return ("app", nameless(t.head, scope), nameless(t.arg, scope), nameless(t.cont, (t.binder,) + scope))


def naive_subst(u, x, t):
    """Substitution by full renaming of every binder to a fresh name."""
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"_{counter[0]}"

    def go(t, env):
        if isinstance(t, Var):
            return env.get(t.name, u if t.name == x else t)
        if isinstance(t, Abs):
            z = fresh()
            return Abs(z, go(t.body, {**env, t.binder: Var(z)}))
        z = fresh()
        return GApp(go(t.head, env), go(t.arg, env), z, go(t.cont, {**env, t.binder: Var(z)}))

    return go(t, {})


def test_parse_and_show():
    t = parse_term(r"\x.x(y, z.z(x, w.w))")
    assert show(t) == r"\x.x(y, z.z(x, w.w))"
    assert parse_term("λx.x") == Abs("x", Var("x"))
    assert show(parse_term("(x(y, a.a))(z, b.b)")) == "x(y, a.a)(z, b.b)"


def test_free_vars_of_generalized_application():
    assert free_vars(parse_term("w(y, x.x)")) == {"w", "y"}
    assert free_vars(GApp(Var("w"), Var("y"), "x", Var("x"))) == {"w", "y"}


def test_alpha_equivalence():
    assert alpha_eq(parse_term("w(u, x.x)"), parse_term("w(u, z.z)"))
    assert not alpha_eq(parse_term("w(u, x.x)"), parse_term("w(u, x.u)"))
    assert not alpha_eq(parse_term(r"\x.y"), parse_term(r"\y.y"))


def test_substitution_is_compositional():
    t = parse_term("t(s, y.r)")
    u = parse_term("u(v, a.a)")
    got = substitute(u, "t", t)
    assert got == GApp(u, Var("s"), "y", Var("r"))


def test_substitution_avoids_capture():
    t = parse_term(r"\y.x(y, z.x)")
    got = substitute(Var("y"), "x", t)
    assert nameless(got) == nameless(parse_term(r"\a.y(a, z.y)"))
    assert "y" in free_vars(got)


@given(j_terms(), j_terms(6))
def test_substitution_agrees_with_renaming_oracle(t, u):
    assert nameless(substitute(u, "x", t)) == nameless(naive_subst(u, "x", t))


@given(j_terms())
def test_alpha_key_matches_nameless_form(t):
    assert (alpha_key(t) == alpha_key(naive_subst(Var("x"), "x", t)))
    assert nameless(t) == nameless(naive_subst(Var("x"), "x", t))


@given(j_terms())
def test_show_parse_round_trip(t):
    assert parse_term(show(t)) == t


@given(es_terms())
def test_es_show_parse_round_trip(m):
    assert parse_es(show_es(m)) == m


@given(es_terms(subs=False))
def test_lambda_show_parse_round_trip(m):
    assert parse_lam(show_es(m)) == m


def test_es_syntax():
    m = parse_es(r"(\x.x y)[y := z] w")
    assert isinstance(m, EApp) and isinstance(m.fun, ESub)
    assert show_es(m) == r"(\x.x y)[y := z] w"
    assert es_free_vars(m) == {"z", "w"}
    assert es_alpha_eq(parse_es(r"x[x := y]"), parse_es(r"z[z := y]"))
    assert es_substitute(EVar("a"), "y", parse_es(r"\a.y")) != parse_es(r"\a.a")
    with pytest.raises(ParseError):
        parse_lam("x[y := z]")


@pytest.mark.parametrize(
    "text, pos",
    [("x(y, .z)", 5), ("\\.x", 1), ("x(y, a.a", 8), ("x y", 2), ("x $", 2)],
)
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as e:
        parse_term(text)
    assert e.value.pos == pos


def test_positions_and_replacement():
    t = parse_term(r"x(\a.a, b.b)")
    assert list(positions(t)) == [(), (0,), (1,), (1, 0), (2,)]
    assert subterm(t, (1, 0)) == Var("a")
    assert show(replace_at(t, (2,), Var("y"))) == r"x(\a.a, b.y)"


def test_abstraction_shape_through_continuations():
    ctx, x, body = abstraction_shape(parse_term(r"w(u, y.\x.x)"))
    assert x == "x" and body == Var("x")
    assert ctx.path == (2,)
    assert ctx.plug(Var("q")) == parse_term("w(u, y.q)")
    assert abstraction_shape(parse_term("w(u, y.y)")) is None


def test_context_kinds():
    t = parse_term(r"x(u, y.z(v, w.\a.a))")
    assert context_kind(context_at(t, (2, 2))) == "Dn"
    assert context_kind(HOLE) == "Dn"
    t2 = parse_term(r"(\b.b)(u, y.z(v, w.w))")
    assert context_kind(context_at(t2, (2,))) == "D"
    assert context_kind(context_at(t2, (0,))) == "W"
    assert context_kind(context_at(t2, (1,))) == "C"


def test_enumeration_of_size_two():
    assert [show(t) for t in enumerate_terms(2, ["x"])] == ["x", r"\a.x", r"\a.a"]


def _brute_force(max_size, pool):
    """Every named term over a fixed name supply, deduplicated up to alpha."""
    binders = ["a", "b", "c", "d", "e"]
    names = list(pool) + binders
    table = {1: [Var(n) for n in names]}
    for n in range(2, max_size + 1):
        out = [Abs(b, body) for b in binders for body in table[n - 1]]
        for hs in range(1, n - 1):
            for as_ in range(1, n - hs - 1):
                cs = n - 1 - hs - as_
                for h in table[hs]:
                    for a in table[as_]:
                        for b in binders:
                            out.extend(GApp(h, a, b, c) for c in table[cs])
        table[n] = out
    seen = set()
    for n in range(1, max_size + 1):
        for t in table[n]:
            if free_vars(t) <= set(pool):
                seen.add(nameless(t))
    return seen


@pytest.mark.parametrize("max_size, pool", [(4, []), (4, ["x"]), (5, ["x", "y"])])
def test_enumeration_matches_brute_force(max_size, pool):
    got = [nameless(t) for t in enumerate_terms(max_size, pool)]
    assert len(got) == len(set(got))
    assert set(got) == _brute_force(max_size, pool)


def test_enumeration_counts_are_frozen():
    # up to size 5 these agree with the brute-force generator above; the
    # larger counts and the ES counts guard against regressions
    assert len(list(enumerate_terms(4, []))) == 6
    assert [len(list(enumerate_terms(n))) for n in range(1, 8)] == [2, 5, 9, 26, 120, 491, 1907]
    assert [len(list(enumerate_es_terms(n))) for n in range(1, 6)] == [2, 5, 19, 74, 342]


def test_enumeration_is_by_size_and_closed():
    sizes = [size(t) for t in enumerate_terms(6)]
    assert sizes == sorted(sizes)
    assert all(free_vars(t) <= {"x", "y"} for t in enumerate_terms(6))
