"""Explicit-substitution terms and plain lambda terms.

    x          EVar(name)
    \\x.M       EAbs(binder, body)
    M N        EApp(fun, arg)
    M[x:=N]    ESub(arg=N, binder=x, body=M)

Lambda terms are the ES terms without ``ESub``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import fresh_name


@dataclass(frozen=True, slots=True)
class EVar:
    name: str


@dataclass(frozen=True, slots=True)
class EAbs:
    binder: str
    body: "ESTerm"


@dataclass(frozen=True, slots=True)
class EApp:
    fun: "ESTerm"
    arg: "ESTerm"


@dataclass(frozen=True, slots=True)
class ESub:
    arg: "ESTerm"
    binder: str
    body: "ESTerm"


ESTerm = Union[EVar, EAbs, EApp, ESub]
LamTerm = ESTerm


def is_lambda_term(m: ESTerm) -> bool:
    if isinstance(m, EVar):
        return True
    if isinstance(m, EAbs):
        return is_lambda_term(m.body)
    if isinstance(m, EApp):
        return is_lambda_term(m.fun) and is_lambda_term(m.arg)
    return False


def es_size(m: ESTerm) -> int:
    if isinstance(m, EVar):
        return 1
    if isinstance(m, EAbs):
        return 1 + es_size(m.body)
    if isinstance(m, EApp):
        return 1 + es_size(m.fun) + es_size(m.arg)
    return 1 + es_size(m.arg) + es_size(m.body)


def es_free_vars(m: ESTerm) -> frozenset[str]:
    if isinstance(m, EVar):
        return frozenset((m.name,))
    if isinstance(m, EAbs):
        return es_free_vars(m.body) - {m.binder}
    if isinstance(m, EApp):
        return es_free_vars(m.fun) | es_free_vars(m.arg)
    return es_free_vars(m.arg) | (es_free_vars(m.body) - {m.binder})


def es_all_names(m: ESTerm) -> set[str]:
    out: set[str] = set()
    stack = [m]
    while stack:
        s = stack.pop()
        if isinstance(s, EVar):
            out.add(s.name)
        elif isinstance(s, EAbs):
            out.add(s.binder)
            stack.append(s.body)
        elif isinstance(s, EApp):
            stack.extend((s.fun, s.arg))
        else:
            out.add(s.binder)
            stack.extend((s.arg, s.body))
    return out


def es_children(m: ESTerm) -> tuple:
    if isinstance(m, EVar):
        return ()
    if isinstance(m, EAbs):
        return (m.body,)
    if isinstance(m, EApp):
        return (m.fun, m.arg)
    return (m.arg, m.body)


def es_with_child(m: ESTerm, i: int, c: ESTerm) -> ESTerm:
    if isinstance(m, EAbs) and i == 0:
        return EAbs(m.binder, c)
    if isinstance(m, EApp):
        return EApp(c, m.arg) if i == 0 else EApp(m.fun, c)
    if isinstance(m, ESub):
        return ESub(c, m.binder, m.body) if i == 0 else ESub(m.arg, m.binder, c)
    raise IndexError(f"no child {i} in {type(m).__name__}")


def es_substitute(n: ESTerm, x: str, m: ESTerm) -> ESTerm:
    """Capture-avoiding meta-substitution ``[n/x]m``."""
    return _subst(n, es_free_vars(n), x, m)


def _subst(n, fn, x, m):
    if isinstance(m, EVar):
        return n if m.name == x else m
    if x not in es_free_vars(m):
        return m
    if isinstance(m, EApp):
        return EApp(_subst(n, fn, x, m.fun), _subst(n, fn, x, m.arg))
    if isinstance(m, EAbs):
        y, body = _freshen(m.binder, m.body, fn, x)
        return EAbs(y, _subst(n, fn, x, body))
    arg = _subst(n, fn, x, m.arg)
    if m.binder == x:
        return ESub(arg, x, m.body)
    y, body = _freshen(m.binder, m.body, fn, x)
    return ESub(arg, y, _subst(n, fn, x, body))


def _freshen(y, body, fn, x):
    if y not in fn or x not in es_free_vars(body):
        return y, body
    y2 = fresh_name(y, fn | es_all_names(body) | {x})
    return y2, _subst(EVar(y2), frozenset((y2,)), y, body)


def es_alpha_key(m: ESTerm) -> tuple:
    return _key(m, ())


def _key(m, scope):
    if isinstance(m, EVar):
        for i in range(len(scope) - 1, -1, -1):
            if scope[i] == m.name:
                return ("b", len(scope) - 1 - i)
        return ("f", m.name)
    if isinstance(m, EAbs):
        return ("l", _key(m.body, scope + (m.binder,)))
    if isinstance(m, EApp):
        return ("a", _key(m.fun, scope), _key(m.arg, scope))
    return ("s", _key(m.arg, scope), _key(m.body, scope + (m.binder,)))


def es_alpha_eq(m1: ESTerm, m2: ESTerm) -> bool:
    return m1 == m2 or es_alpha_key(m1) == es_alpha_key(m2)
