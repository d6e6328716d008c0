"""Exhaustive enumeration of terms up to alpha-equivalence.

Terms come out by size, then constructor (Var < Abs < GApp), then
children in order.  The binder introduced at nesting depth ``d`` always
gets the ``d``-th canonical name, so each alpha class appears once.
Inside a scope, variables are offered pool names first, then bound names
from the outermost binder inward.
"""

from __future__ import annotations

import string
from functools import lru_cache
from typing import Iterator, Sequence

from .esterms import EAbs, EApp, ESTerm, ESub, EVar
from .terms import Abs, GApp, Term, Var


def binder_names(pool: Sequence[str], count: int) -> list[str]:
    out: list[str] = []
    suffix = 0
    while len(out) < count:
        for c in string.ascii_lowercase:
            name = c if suffix == 0 else f"{c}{suffix}"
            if name not in pool:
                out.append(name)
                if len(out) == count:
                    break
        suffix += 1
    return out


def enumerate_terms(max_size: int, free_var_pool: Sequence[str] = ("x", "y")) -> Iterator[Term]:
    pool = tuple(free_var_pool)
    names = tuple(binder_names(pool, max_size))
    gen = _JGen(pool, names)
    for n in range(1, max_size + 1):
        yield from gen.of_size(n, 0)


class _JGen:
    def __init__(self, pool, names):
        self.pool = pool
        self.names = names
        self.of_size = lru_cache(maxsize=None)(self._of_size)

    def _of_size(self, n: int, depth: int) -> tuple[Term, ...]:
        out: list[Term] = []
        if n == 1:
            for v in self.pool + self.names[:depth]:
                out.append(Var(v))
            return tuple(out)
        b = self.names[depth]
        for body in self.of_size(n - 1, depth + 1):
            out.append(Abs(b, body))
        for hs in range(1, n - 1):
            for as_ in range(1, n - hs):
                cs = n - 1 - hs - as_
                if cs < 1:
                    continue
                for h in self.of_size(hs, depth):
                    for a in self.of_size(as_, depth):
                        for c in self.of_size(cs, depth + 1):
                            out.append(GApp(h, a, b, c))
        return tuple(out)


def enumerate_es_terms(max_size: int, free_var_pool: Sequence[str] = ("x", "y"), subs: bool = True) -> Iterator[ESTerm]:
    """ES terms (or lambda terms with ``subs=False``) in the same order scheme."""
    pool = tuple(free_var_pool)
    names = tuple(binder_names(pool, max_size))

    @lru_cache(maxsize=None)
    def of_size(n: int, depth: int) -> tuple[ESTerm, ...]:
        out: list[ESTerm] = []
        if n == 1:
            return tuple(EVar(v) for v in pool + names[:depth])
        b = names[depth]
        for body in of_size(n - 1, depth + 1):
            out.append(EAbs(b, body))
        for fs in range(1, n - 1):
            for f in of_size(fs, depth):
                for a in of_size(n - 1 - fs, depth):
                    out.append(EApp(f, a))
        if subs:
            for as_ in range(1, n - 1):
                for a in of_size(as_, depth):
                    for body in of_size(n - 1 - as_, depth + 1):
                        out.append(ESub(a, b, body))
        return tuple(out)

    for n in range(1, max_size + 1):
        yield from of_size(n, 0)
