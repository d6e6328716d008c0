"""Longest-reduction lengths through recursive equalities.

``maxred_dbeta`` follows the weak-head case split; ``rb_maxred_betapi``
counts beta steps in (beta, pi) sequences, collapsing nested heads by pi
first.  Both memoize on alpha-keys and give None when fuel runs out or the
term is not strongly normalizing (the recursion then never bottoms out).
"""

from __future__ import annotations

from typing import Callable, Optional

from .classify import is_neutral
from .reduction import _pi, hygienic_shape, plug_frames, wh_redex
from .terms import Abs, GApp, Term, Var, alpha_key, free_vars, replace_at, substitute, subterm

DEFAULT_FUEL = 100_000


class _OutOfFuel(Exception):
    pass


def _memoized(step: Callable, t: Term, fuel) -> Optional[int]:
    budget = [DEFAULT_FUEL if fuel is None else int(fuel)]
    memo: dict = {}
    active: set = set()

    def rec(s: Term) -> int:
        key = alpha_key(s)
        if key in memo:
            return memo[key]
        if key in active:
            # a term recurring under itself has no finite value
            raise _OutOfFuel()
        budget[0] -= 1
        if budget[0] < 0:
            raise _OutOfFuel()
        active.add(key)
        try:
            v = step(s, rec)
        finally:
            active.discard(key)
        memo[key] = v
        return v

    try:
        return rec(t)
    except (_OutOfFuel, RecursionError):
        return None


def _dbeta_eq(t: Term, rec) -> int:
    if isinstance(t, Var):
        return 0
    if isinstance(t, Abs):
        return rec(t.body)
    if is_neutral(t.head):
        return rec(t.head) + rec(t.arg) + rec(t.cont)
    path = wh_redex(t)
    redex = subterm(t, path)
    frames, x, s = hygienic_shape(redex.head, free_vars(redex.arg))
    u, y, r = redex.arg, redex.binder, redex.cont
    x_used = x in free_vars(s)
    if y not in free_vars(r):
        return 1 + rec(replace_at(t, path, r)) + rec(plug_frames(frames, s)) + rec(u)
    if x_used:
        return 1 + rec(replace_at(t, path, substitute(plug_frames(frames, substitute(u, x, s)), y, r)))
    return 1 + rec(replace_at(t, path, substitute(plug_frames(frames, s), y, r))) + rec(u)


def maxred_dbeta(t: Term, fuel=None) -> Optional[int]:
    """Length of the longest dbeta sequence from ``t``; None on fuel."""
    return _memoized(_dbeta_eq, t, fuel)


def _rb_eq(t: Term, rec) -> int:
    if isinstance(t, Var):
        return 0
    if isinstance(t, Abs):
        return rec(t.body)
    h = t.head
    if isinstance(h, Var):
        return rec(t.arg) + rec(t.cont)
    if isinstance(h, GApp):
        return rec(_pi(t))
    x, body = h.binder, h.body
    u, y, r = t.arg, t.binder, t.cont
    if y not in free_vars(r):
        return 1 + rec(r) + rec(body) + rec(u)
    if x in free_vars(body):
        return 1 + rec(substitute(substitute(u, x, body), y, r))
    return 1 + rec(substitute(body, y, r)) + rec(u)


def rb_maxred_betapi(t: Term, fuel=None) -> Optional[int]:
    """Largest number of beta steps over (beta, pi) sequences; None on fuel."""
    return _memoized(_rb_eq, t, fuel)
