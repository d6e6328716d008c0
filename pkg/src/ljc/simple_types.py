"""Simple types for generalized applications.

Rules::

    var  Γ, x:σ ⊢ x:σ
    abs  Γ, x:σ ⊢ t:τ  gives  Γ ⊢ \\x.t : σ→τ
    app  Γ ⊢ t:ρ→τ,  Γ ⊢ u:ρ,  Γ, y:τ ⊢ r:σ  gives  Γ ⊢ t(u, y.r):σ

Inference is first-order unification; ``check_simple`` unifies against
the requested type with the environment's base types held rigid.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .classify import is_m
from .syntax import Lexer, ParseError, show
from .terms import Abs, GApp, Term, Var, free_vars


@dataclass(frozen=True, slots=True)
class SBase:
    name: str


@dataclass(frozen=True, slots=True)
class SArrow:
    dom: "SimpleType"
    cod: "SimpleType"


SimpleType = Union[SBase, SArrow]


def show_simple(s: SimpleType) -> str:
    if isinstance(s, SBase):
        return s.name
    return f"({show_simple(s.dom)} -> {show_simple(s.cod)})"


def parse_simple(text: str) -> SimpleType:
    lx = Lexer(text)
    s = _stype(lx)
    lx.done()
    return s


def _stype(lx: Lexer) -> SimpleType:
    kind, v, pos = lx.peek()
    if v == "(":
        lx.next()
        s = _stype(lx)
        lx.expect(")")
    elif kind == "id":
        lx.next()
        s = SBase(v)
    else:
        raise ParseError(f"expected type, found {v or 'end of input'!r}", pos, lx.text)
    if lx.peek()[1] == "->":
        lx.next()
        return SArrow(s, _stype(lx))
    return s


def subformulas(s: SimpleType) -> set[SimpleType]:
    out = {s}
    if isinstance(s, SArrow):
        out |= subformulas(s.dom) | subformulas(s.cod)
    return out


@dataclass(frozen=True)
class SimpleDerivation:
    rule: str
    env: tuple[tuple[str, SimpleType], ...]
    term: Term
    type: SimpleType
    children: tuple["SimpleDerivation", ...] = ()

    def env_dict(self) -> dict[str, SimpleType]:
        return dict(self.env)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()


class SimpleTypeError(ValueError):
    def __init__(self, msg: str, node: Optional[SimpleDerivation] = None):
        self.node = node
        where = f" at {show(node.term)}" if node is not None else ""
        super().__init__(msg + where)


def _env(d: Mapping[str, SimpleType]) -> tuple:
    return tuple(sorted(d.items()))


def replay_simple(d: SimpleDerivation) -> None:
    """Raise SimpleTypeError at the first node not instantiating its rule."""
    env = d.env_dict()
    t = d.term
    if d.rule == "var":
        if not isinstance(t, Var) or env.get(t.name) != d.type or d.children:
            raise SimpleTypeError("bad var axiom", d)
        return
    if d.rule == "abs":
        if not isinstance(t, Abs) or not isinstance(d.type, SArrow) or len(d.children) != 1:
            raise SimpleTypeError("bad abs node", d)
        c = d.children[0]
        want = dict(env)
        want[t.binder] = d.type.dom
        if c.term != t.body or c.env_dict() != want or c.type != d.type.cod:
            raise SimpleTypeError("abs premise mismatch", d)
        replay_simple(c)
        return
    if d.rule == "app":
        if not isinstance(t, GApp) or len(d.children) != 3:
            raise SimpleTypeError("bad app node", d)
        ct, cu, cr = d.children
        if ct.term != t.head or cu.term != t.arg or cr.term != t.cont:
            raise SimpleTypeError("app premises do not match the subterms", d)
        if not isinstance(ct.type, SArrow) or ct.type.dom != cu.type:
            raise SimpleTypeError("function and argument types disagree", d)
        want = dict(env)
        want[t.binder] = ct.type.cod
        if ct.env_dict() != env or cu.env_dict() != env or cr.env_dict() != want or cr.type != d.type:
            raise SimpleTypeError("app environments or result type mismatch", d)
        for c in d.children:
            replay_simple(c)
        return
    raise SimpleTypeError(f"unknown rule {d.rule!r}", d)


# -- unification ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class _Meta:
    id: int


class _Unifier:
    def __init__(self):
        self.subst: dict[int, object] = {}
        self.counter = itertools.count()

    def new(self) -> _Meta:
        return _Meta(next(self.counter))

    def walk(self, s):
        while isinstance(s, _Meta) and s.id in self.subst:
            s = self.subst[s.id]
        return s

    def occurs(self, m: _Meta, s) -> bool:
        s = self.walk(s)
        if isinstance(s, _Meta):
            return s == m
        if isinstance(s, SArrow):
            return self.occurs(m, s.dom) or self.occurs(m, s.cod)
        return False

    def unify(self, a, b) -> bool:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return True
        if isinstance(a, _Meta):
            if self.occurs(a, b):
                return False
            self.subst[a.id] = b
            return True
        if isinstance(b, _Meta):
            return self.unify(b, a)
        if isinstance(a, SArrow) and isinstance(b, SArrow):
            return self.unify(a.dom, b.dom) and self.unify(a.cod, b.cod)
        return False

    def resolve(self, s):
        s = self.walk(s)
        if isinstance(s, SArrow):
            return SArrow(self.resolve(s.dom), self.resolve(s.cod))
        return s


def _gen(u: _Unifier, env: dict, t: Term, target, out: list) -> bool:
    """Generate and solve constraints; records (rule, env, term, type) in
    pre-order into ``out`` for later derivation assembly."""
    out.append((t, dict(env), target))
    if isinstance(t, Var):
        return u.unify(env[t.name], target)
    if isinstance(t, Abs):
        a, b = u.new(), u.new()
        if not u.unify(target, SArrow(a, b)):
            return False
        inner = dict(env)
        inner[t.binder] = a
        return _gen(u, inner, t.body, b, out)
    rho, tau = u.new(), u.new()
    if not _gen(u, env, t.head, SArrow(rho, tau), out):
        return False
    if not _gen(u, env, t.arg, rho, out):
        return False
    inner = dict(env)
    inner[t.binder] = tau
    return _gen(u, inner, t.cont, target, out)


def _build(u: _Unifier, records: list, i: int, rename) -> tuple[SimpleDerivation, int]:
    t, env, target = records[i]
    env_r = _env({k: rename(u.resolve(v)) for k, v in env.items()})
    ty = rename(u.resolve(target))
    if isinstance(t, Var):
        return SimpleDerivation("var", env_r, t, ty), i + 1
    if isinstance(t, Abs):
        c, j = _build(u, records, i + 1, rename)
        return SimpleDerivation("abs", env_r, t, ty, (c,)), j
    ct, j = _build(u, records, i + 1, rename)
    cu, j = _build(u, records, j, rename)
    cr, j = _build(u, records, j, rename)
    return SimpleDerivation("app", env_r, t, ty, (ct, cu, cr)), j


def _base_names():
    for n in itertools.count():
        for c in string.ascii_lowercase:
            yield c if n == 0 else f"{c}{n}"


def _renamer(u: _Unifier, order: list, taken=()):
    """Map leftover metavariables to base names in first-use order."""
    names: dict[int, SBase] = {}
    supply = (n for n in _base_names() if n not in taken)

    def visit(s):
        s = u.walk(s)
        if isinstance(s, _Meta):
            if s.id not in names:
                names[s.id] = SBase(next(supply))
        elif isinstance(s, SArrow):
            visit(s.dom)
            visit(s.cod)

    for s in order:
        visit(s)

    def rename(s):
        if isinstance(s, _Meta):
            if s.id not in names:
                names[s.id] = SBase(next(supply))
            return names[s.id]
        if isinstance(s, SArrow):
            return SArrow(rename(s.dom), rename(s.cod))
        return s

    return rename


def _free_order(t: Term) -> list[str]:
    seen: list[str] = []
    fv = free_vars(t)

    def walk(s, bound):
        if isinstance(s, Var):
            if s.name in fv and s.name not in bound and s.name not in seen:
                seen.append(s.name)
        elif isinstance(s, Abs):
            walk(s.body, bound | {s.binder})
        else:
            walk(s.head, bound)
            walk(s.arg, bound)
            walk(s.cont, bound | {s.binder})

    walk(t, frozenset())
    return seen


def infer_simple(t: Term) -> Optional[tuple[dict[str, SimpleType], SimpleType, SimpleDerivation]]:
    """Principal typing; base types named a, b, c... by first use (free
    variables in order of occurrence, then the result type)."""
    u = _Unifier()
    order = _free_order(t)
    env = {x: u.new() for x in order}
    target = u.new()
    records: list = []
    if not _gen(u, env, t, target, records):
        return None
    rename = _renamer(u, [env[x] for x in order] + [target])
    d, _ = _build(u, records, 0, rename)
    return d.env_dict(), d.type, d


def check_simple(env: Mapping[str, SimpleType], t: Term, sigma: SimpleType) -> Optional[SimpleDerivation]:
    """A derivation of env ⊢ t : sigma, or None when none exists."""
    if not free_vars(t) <= set(env):
        return None
    u = _Unifier()
    records: list = []
    if not _gen(u, dict(env), t, sigma, records):
        return None
    taken = set()
    for s in list(env.values()) + [sigma]:
        taken |= {b.name for b in subformulas(s) if isinstance(b, SBase)}
    rename = _renamer(u, [], taken)
    d, _ = _build(u, records, 0, rename)
    replay_simple(d)
    return d


class PreconditionError(ValueError):
    pass


def subformula_audit(d: SimpleDerivation) -> bool:
    """Every type in ``d`` is a subformula of the conclusion or of the
    conclusion environment.  The subject must be a dbeta-normal form."""
    if not is_m(d.term):
        raise PreconditionError("subformula audit needs a dbeta-normal subject")
    allowed = subformulas(d.type)
    for _, s in d.env:
        allowed |= subformulas(s)
    for node in d.nodes():
        if node.type not in allowed:
            return False
        for _, s in node.env:
            if s not in allowed:
                return False
    return True
