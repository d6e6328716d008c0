"""Syntactic classes of terms: normal forms, neutral terms and answers."""

from __future__ import annotations

from dataclasses import dataclass

from .terms import Abs, GApp, Term, Var, abstraction_shape


def is_neutral(t: Term) -> bool:
    """n ::= x | n(u, x.n)"""
    while isinstance(t, GApp):
        if not is_neutral(t.head):
            return False
        t = t.cont
    return isinstance(t, Var)


def is_answer(t: Term) -> bool:
    """a ::= \\x.t | n(u, x.a)"""
    while isinstance(t, GApp):
        if not is_neutral(t.head):
            return False
        t = t.cont
    return isinstance(t, Abs)


def is_whnf(t: Term) -> bool:
    while isinstance(t, GApp):
        if not is_neutral(t.head):
            return False
        t = t.cont
    return True


def is_mvar(t: Term) -> bool:
    """m_var ::= x | m_var(m, x.m_var)"""
    while isinstance(t, GApp):
        if not (is_mvar(t.head) and is_m(t.arg)):
            return False
        t = t.cont
    return isinstance(t, Var)


def is_m(t: Term) -> bool:
    """m ::= x | \\x.m | m_var(m, x.m)"""
    if isinstance(t, Var):
        return True
    if isinstance(t, Abs):
        return is_m(t.body)
    return is_mvar(t.head) and is_m(t.arg) and is_m(t.cont)


def is_dbeta_nf(t: Term) -> bool:
    """No application anywhere has a head of abstraction shape."""
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Abs):
            stack.append(s.body)
        elif isinstance(s, GApp):
            if abstraction_shape(s.head) is not None:
                return False
            stack.extend((s.head, s.arg, s.cont))
    return True


@dataclass(frozen=True)
class Flags:
    is_m: bool
    is_mvar: bool
    is_neutral_n: bool
    is_answer_a: bool
    is_whnf: bool
    is_dbeta_nf: bool


def classify(t: Term) -> Flags:
    return Flags(
        is_m=is_m(t),
        is_mvar=is_mvar(t),
        is_neutral_n=is_neutral(t),
        is_answer_a=is_answer(t),
        is_whnf=is_whnf(t),
        is_dbeta_nf=is_dbeta_nf(t),
    )
