import dataclasses

from hypothesis import given

from conftest import es_terms
from ljc.enumerate import enumerate_es_terms
from ljc.es import es_replay, es_step_root, es_steps, lam_step_root, lam_steps
from ljc.quant import Base, check_derivation_es, check_relevance, mk_many, mk_sub, mk_var
from ljc.reduction import ReductionTrace
from ljc.search import sn_search
from ljc.syntax import parse_es, parse_lam, show_es


def reducts(rules, src, lam=False):
    m = (parse_lam if lam else parse_es)(src)
    fn = lam_steps if lam else es_steps
    return [(s.rule, s.path, show_es(s.result)) for s in fn(rules, m)]


def test_syntax_round_trip():
    for src in [r"(\x.x)[z := w] u", "x y z", "x (y z)", r"\x.x[y := z]", "x[y := z][w := v]"]:
        assert show_es(parse_es(src)) == src


def test_distant_beta_crosses_substitutions():
    assert reducts({"dB"}, r"(\x.x)[z := w] u") == [("dB", (), "x[x := u][z := w]")]


def test_plain_beta_needs_an_adjacent_abstraction():
    assert reducts({"B"}, r"(\x.x)[z := w] u") == []
    assert reducts({"B"}, r"(\x.x y) u") == [("B", (), "(x y)[x := u]")]


def test_distant_beta_renames_a_capturing_substitution():
    (rule, _, out), = reducts({"dB"}, r"(\x.z)[z := w] z")
    assert out == "z'[x := z][z' := w]"


def test_substitution_step():
    assert reducts({"s"}, "(x x)[x := y]") == [("s", (), "y y")]
    (st,) = es_steps({"s"}, parse_es("u[x := y]"))
    assert st.erasing


def test_lambda_permutations():
    assert reducts({"sigma1"}, r"(\x.x) n p", lam=True) == [("sigma1", (), r"(\x.x p) n")]
    assert reducts({"sigma2"}, r"(\x.\y.y x) n", lam=True) == [("sigma2", (), r"\y.(\x.y x) n")]
    # the inner binder is free in the argument, so it gets renamed
    (_, _, out), = reducts({"sigma2"}, r"(\x.\y.y x) y", lam=True)
    assert not out.startswith(r"\y.")


def test_auxiliary_permutations():
    m = es_step_root("sigma1", parse_es("x[x := y] p"))
    assert show_es(m) == "(x p)[x := y]"
    m = es_step_root("sigma4", parse_es("r[x := t[y := u]]"))
    assert show_es(m) == "r[x := t][y := u]"


def test_lambda_beta():
    assert show_es(lam_step_root("beta", parse_lam(r"(\x.x x) y"))) == "y y"


def test_replay():
    m = parse_es(r"(\x.x)[z := w] u")
    path = []
    cur = m
    for rule in ("dB", "s", "s"):
        st = next(s for s in es_steps({rule}, cur))
        path.append(st)
        cur = st.result
    assert es_replay(ReductionTrace(m, path))
    assert show_es(cur) == "u"
    forged = ReductionTrace(m, [dataclasses.replace(path[0], rule="s")] + path[1:])
    assert not es_replay(forged)


def test_distant_and_plain_beta_agree_on_sn():
    disagreements = []
    for m in enumerate_es_terms(5):
        a = sn_search(m, {"dB", "s"}, fuel=20000).sn
        b = sn_search(m, {"B", "s"}, fuel=20000).sn
        if None not in (a, b) and a != b:
            disagreements.append(show_es(m))
    assert disagreements == []


@given(es_terms())
def test_sn_agreement_on_random_terms(m):
    a = sn_search(m, {"dB", "s"}, fuel=5000).sn
    b = sn_search(m, {"B", "s"}, fuel=5000).sn
    if a is not None and b is not None:
        assert a == b


def test_es_derivations():
    s = Base("s")
    ax = mk_var("x", s, es=True)
    assert check_derivation_es(ax)
    # the substituted variable is unused, so the argument is typed by the witness
    m = parse_es("x[y := z]")
    d = mk_sub(m, ax, mk_many([mk_var("z", s, es=True)]))
    assert check_derivation_es(d)
    assert check_relevance(d)
    assert d.witnesses == (None, s)
