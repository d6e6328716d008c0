"""Flat de Bruijn codes shared by the rewrite kernels.

A code is a tuple of ints in prefix order.  Non-negative entries are
bound-variable indices; negative entries are constructor tags or free
variables (``-5 - j`` for the ``j``-th name of a table).  Codes are
alpha-canonical, so equal codes mean alpha-equivalent terms.

Children and the binders they sit under::

    ABS   body*
    GAPP  head arg cont*
    APP   fun arg
    SUB   arg body*
"""

from __future__ import annotations

from typing import Sequence

from .enumerate import binder_names
from .esterms import EAbs, EApp, ESTerm, ESub, EVar
from .terms import Abs, GApp, Position, Term, Var

ABS, GAPP, APP, SUB = -1, -2, -3, -4
FREE0 = -5

RULES = ("beta", "pi", "p2", "dbeta", "dB", "B", "s", "lbeta", "sigma1", "sigma2", "es_sigma1", "es_sigma4")
RULE_ID = {name: i for i, name in enumerate(RULES)}
BETA = RULE_ID["beta"]

FAMILY_RULES = {
    "j": {"beta": "beta", "pi": "pi", "p2": "p2", "dbeta": "dbeta"},
    "es": {"dB": "dB", "B": "B", "s": "s", "sigma1": "es_sigma1", "sigma4": "es_sigma4"},
    "lam": {"beta": "lbeta", "sigma1": "sigma1", "sigma2": "sigma2"},
}


def rule_mask(family: str, rules) -> int:
    table = FAMILY_RULES[family]
    mask = 0
    for r in rules:
        if r not in table:
            raise ValueError(f"rule {r!r} does not apply to {family} terms")
        mask |= 1 << RULE_ID[table[r]]
    return mask


def public_rule(family: str, rid: int) -> str:
    kernel_name = RULES[rid]
    for k, v in FAMILY_RULES[family].items():
        if v == kernel_name:
            return k
    return kernel_name


class NameTable:
    def __init__(self, names: Sequence[str] = ()):
        self.names: list[str] = []
        self.ids: dict[str, int] = {}
        for n in names:
            self.intern(n)

    def intern(self, name: str) -> int:
        j = self.ids.get(name)
        if j is None:
            j = self.ids[name] = len(self.names)
            self.names.append(name)
        return FREE0 - j

    def name(self, tag: int) -> str:
        return self.names[FREE0 - tag]


def encode(t: Term | ESTerm, table: NameTable) -> tuple[int, ...]:
    out: list[int] = []
    _enc(t, (), table, out)
    return tuple(out)


def _enc(t, scope, table, out):
    if isinstance(t, (Var, EVar)):
        for i in range(len(scope) - 1, -1, -1):
            if scope[i] == t.name:
                out.append(len(scope) - 1 - i)
                return
        out.append(table.intern(t.name))
    elif isinstance(t, (Abs, EAbs)):
        out.append(ABS)
        _enc(t.body, scope + (t.binder,), table, out)
    elif isinstance(t, GApp):
        out.append(GAPP)
        _enc(t.head, scope, table, out)
        _enc(t.arg, scope, table, out)
        _enc(t.cont, scope + (t.binder,), table, out)
    elif isinstance(t, EApp):
        out.append(APP)
        _enc(t.fun, scope, table, out)
        _enc(t.arg, scope, table, out)
    elif isinstance(t, ESub):
        out.append(SUB)
        _enc(t.arg, scope, table, out)
        _enc(t.body, scope + (t.binder,), table, out)
    else:
        raise TypeError(f"cannot encode {t!r}")


def decode(code: Sequence[int], table: NameTable, family: str = "j"):
    """Rebuild a named term; binder names never clash with the free names."""
    nbind = sum(1 for c in code if c in (ABS, GAPP, SUB))
    names = binder_names(tuple(table.names), nbind + 1)
    es = family != "j"
    t, _ = _dec(code, 0, [], table, names, es)
    return t


def _dec(code, i, scope, table, names, es):
    tag = code[i]
    if tag >= 0 or tag <= FREE0:
        name = scope[len(scope) - 1 - tag] if tag >= 0 else table.name(tag)
        return (EVar if es else Var)(name), i + 1
    b = names[len(scope)]
    if tag == ABS:
        body, j = _dec(code, i + 1, scope + [b], table, names, es)
        return (EAbs if es else Abs)(b, body), j
    if tag == GAPP:
        h, j = _dec(code, i + 1, scope, table, names, es)
        a, j = _dec(code, j, scope, table, names, es)
        c, j = _dec(code, j, scope + [b], table, names, es)
        return GApp(h, a, b, c), j
    if tag == APP:
        f, j = _dec(code, i + 1, scope, table, names, es)
        a, j = _dec(code, j, scope, table, names, es)
        return EApp(f, a), j
    a, j = _dec(code, i + 1, scope, table, names, es)
    body, j = _dec(code, j, scope + [b], table, names, es)
    return ESub(a, b, body), j


ARITY = {ABS: 1, GAPP: 3, APP: 2, SUB: 2}


def index_to_path(code: Sequence[int], index: int) -> Position:
    """Child-index path of the node at preorder ``index``."""
    path: list[int] = []
    i = 0
    while i != index:
        n = ARITY.get(code[i], 0)
        j = i + 1
        for child in range(n):
            end = skip(code, j)
            if j <= index < end:
                path.append(child)
                break
            j = end
        i = j
    return tuple(path)


def skip(code: Sequence[int], i: int) -> int:
    need = 1
    while need:
        tag = code[i]
        i += 1
        need -= 1
        if tag < 0 and tag > FREE0:
            need += ARITY[tag]
    return i
