import dataclasses

import pytest
from hypothesis import given

from conftest import DELTA, j_terms
from ljc.classify import is_m
from ljc.enumerate import enumerate_terms
from ljc.search import sn_search
from ljc.simple_types import (
    PreconditionError,
    SArrow,
    SBase,
    SimpleTypeError,
    check_simple,
    infer_simple,
    parse_simple,
    replay_simple,
    show_simple,
    subformula_audit,
)
from ljc.syntax import parse_term

a, b = SBase("a"), SBase("b")


def test_type_syntax():
    s = parse_simple("(a -> b) -> a -> b")
    assert s == SArrow(SArrow(a, b), SArrow(a, b))
    assert parse_simple(show_simple(s)) == s


def test_identity_applied_checks():
    sigma = parse_simple("s -> s")
    d = check_simple({"u": sigma}, parse_term(r"(\z.z)(u, y.y)"), sigma)
    assert d is not None and d.type == sigma
    replay_simple(d)


def test_check_rejects_wrong_types():
    assert check_simple({"u": a}, parse_term("u"), b) is None
    assert check_simple({}, parse_term("u"), a) is None


def test_self_application_is_untypable():
    assert infer_simple(parse_term(DELTA)) is None


def test_principal_typing_of_an_application():
    env, ty, d = infer_simple(parse_term("w(u, y.y)"))
    assert env == {"w": SArrow(a, b), "u": a}
    assert ty == b
    replay_simple(d)


def test_replay_catches_a_bad_node():
    _, _, d = infer_simple(parse_term(r"\x.x"))
    bad = dataclasses.replace(d, type=SArrow(a, b))
    with pytest.raises(SimpleTypeError):
        replay_simple(bad)


def test_audit_needs_a_normal_subject():
    _, _, d = infer_simple(parse_term(r"(\x.x)(z, y.y)"))
    with pytest.raises(PreconditionError):
        subformula_audit(d)


def test_subformula_property_on_normal_forms():
    audited = 0
    for t in enumerate_terms(7):
        if not is_m(t):
            continue
        res = infer_simple(t)
        if res is not None:
            audited += 1
            assert subformula_audit(res[2])
    assert audited > 500


@given(j_terms())
def test_typable_terms_normalize(t):
    res = infer_simple(t)
    if res is None:
        return
    env, ty, d = res
    replay_simple(d)
    assert check_simple(env, t, ty) is not None
    assert sn_search(t, {"dbeta"}).sn is not False
