"""Building quantitative derivations: normal forms, then any term whose
inductive SN proof exists, by expanding along weak-head steps.

``bound_check`` compares the derivation size against the longest
reductions found by exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .classify import is_m, is_mvar, is_whnf
from .isn import DEFAULT_DEPTH, DEFAULT_FUEL, Unknown
from .maxred import maxred_dbeta
from .quant import (
    EMPTY,
    O,
    Arrow,
    Deriv,
    MultiType,
    Type,
    check_derivation_j,
    derivation_size,
    merge,
    mk_abs,
    mk_app,
    mk_many,
    mk_var,
    retarget,
)
from .reduction import _dbeta, plug_frames, wh_redex
from .search import max_nonerasing
from .simple_types import PreconditionError
from .terms import HEAD, Abs, GApp, Position, Term, Var, free_vars, replace_at, substitute, subterm
from .transform import anti_substitute, open_shape, perml_pull


def type_normal_form(t: Term, target: Optional[Type] = None) -> Deriv:
    """A derivation for a dbeta-normal term.  ``target`` fixes the type of
    a neutral term; anything else gets the witness type ``o`` at its
    variable heads."""
    if not is_m(t):
        raise PreconditionError("subject is not a dbeta-normal form")
    if target is not None and not is_mvar(t):
        raise PreconditionError("a target type can only be requested for neutral terms")
    return _Synth(None, DEFAULT_DEPTH).run(t, target)


class _OutOfFuel(Exception):
    pass


class _Synth:
    def __init__(self, fuel: Optional[int], depth: int):
        self.fuel = fuel
        self.depth = depth
        self.spent = 0
        self.level = 0
        self.memo: dict = {}

    def run(self, t: Term, target: Optional[Type] = None) -> Deriv:
        key = (t, target)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.spent += 1
        if (self.fuel is not None and self.spent > self.fuel) or self.level > self.depth:
            raise _OutOfFuel()
        self.level += 1
        try:
            d = self._rule(t, target)
        finally:
            self.level -= 1
        self.memo[key] = d
        return d

    def _rule(self, t: Term, target: Optional[Type]) -> Deriv:
        if isinstance(t, Var):
            return mk_var(t.name, target or O)
        if isinstance(t, Abs):
            return mk_abs(t, self.run(t.body))
        if is_whnf(t):
            d_r = self.run(t.cont, target)
            zs = d_r.env.get(t.binder)
            if zs:
                head = mk_many(self.run(t.head, Arrow(EMPTY, tau)) for tau in zs)
                pairs = [(EMPTY, tau) for tau in zs]
            else:
                head = mk_many([self.run(t.head)])
                pairs = []
            return mk_app(t, head, mk_many([self.run(t.arg)]), d_r, pairs)
        path = wh_redex(t)
        if path is None:
            raise PreconditionError("no weak-head decomposition")
        reduct = replace_at(t, path, _dbeta(subterm(t, path)))
        return self.expand(t, path, self.run(reduct, target))

    # -- subject expansion along the weak-head context --

    def expand(self, t: Term, path: Position, d: Deriv) -> Deriv:
        if d.rule == "many":
            return mk_many(self.expand(t, path, c) for c in d.children)
        if not path:
            return retarget(self._expand_root(t, d), t)
        h, a, c = d.children
        if path[0] == HEAD:
            head = mk_many(self.expand(t.head, path[1:], hc) for hc in h.children)
            return mk_app(t, head, a, c, d.pairs)
        c = self.expand(t.cont, path[1:], c)
        znew = c.env.get(t.binder)
        if znew == MultiType(tau for _, tau in d.pairs):
            return mk_app(t, h, a, c, d.pairs)
        witness_arg = mk_many([a.children[0]])
        if znew:
            head = mk_many(self.run(t.head, Arrow(EMPTY, tau)) for tau in znew)
            return mk_app(t, head, witness_arg, c, [(EMPTY, tau) for tau in znew])
        return mk_app(t, mk_many([self.run(t.head)]), witness_arg, c, ())

    def _expand_root(self, t: GApp, d: Deriv) -> Deriv:
        u, y, r = t.arg, t.binder, t.cont
        frames, x, s = open_shape(t.head, free_vars(u))
        ds = plug_frames(frames, s)
        n = len(frames)
        head_term = plug_frames(frames, Abs(x, s))
        term = GApp(head_term, u, y, r)
        if y not in free_vars(r):
            lam = perml_pull(mk_abs(Abs(x, ds), self.run(ds)), n)
            arg = mk_many([self.run(u)])
            return mk_app(term, mk_many([lam]), arg, retarget(d, r), ())
        if x not in free_vars(s):
            d_r, d_p, _ = anti_substitute(d, r, y, ds)
            lams = [perml_pull(mk_abs(Abs(x, ds), c), n) for c in d_p.children]
            pairs = [(EMPTY, c.type) for c in d_p.children]
            return mk_app(term, mk_many(lams), mk_many([self.run(u)]), d_r, pairs)
        p = substitute(u, x, ds)
        d_r, d_p, _ = anti_substitute(d, r, y, p)
        lams, args, pairs = [], [], []
        for c in d_p.children:
            d_s, d_u, m = anti_substitute(c, ds, x, u)
            lams.append(perml_pull(mk_abs(Abs(x, ds), d_s), n))
            args.append(d_u)
            pairs.append((m, c.type))
        return mk_app(term, mk_many(lams), merge(args), d_r, pairs)


def synthesize_quant(t: Term, fuel: Optional[int] = None, target: Optional[Type] = None) -> Union[Deriv, Unknown]:
    """A derivation for ``t`` built along its inductive SN proof, or
    ``Unknown`` when the fuel or depth budget runs out first (always the
    case for terms that are not strongly normalizing)."""
    s = _Synth(DEFAULT_FUEL if fuel is None else int(fuel), DEFAULT_DEPTH)
    try:
        return s.run(t, target)
    except (_OutOfFuel, RecursionError):
        return Unknown(s.spent)


@dataclass(frozen=True)
class BoundReport:
    size: int
    max_nonerasing: Optional[int]
    maxred: Optional[int]
    valid: bool

    @property
    def ok(self) -> bool:
        return (
            self.valid
            and self.max_nonerasing is not None
            and self.max_nonerasing <= self.size
            and self.maxred is not None
            and self.maxred <= self.size
        )

    def __bool__(self) -> bool:
        return self.ok


def bound_check(t: Term, d: Deriv, fuel=None) -> BoundReport:
    """Whether the size of ``d`` bounds every dbeta reduction from ``t``
    (non-erasing steps, and all steps)."""
    valid = d.rule != "many" and d.term == t and bool(check_derivation_j(d))
    ne = max_nonerasing(t, fuel)
    return BoundReport(
        derivation_size(d),
        ne.maxred if ne.sn else None,
        maxred_dbeta(t, fuel),
        valid,
    )
