"""Non-idempotent intersection types and typing derivations.

Types are ``Base(name)`` or ``Arrow(dom, cod)`` with ``dom`` a
``MultiType``; multisets are kept sorted so bag equality is tuple equality.
Derivation nodes carry their full sequent; builders recompute environments
from the children, so transformers only assemble trees and the checker
re-verifies every node against its rule.

The same node type serves both calculi: J terms use rules var, abs, app and
many; ES terms additionally use sub, and their app node has two children.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Union

from .esterms import EAbs, EApp, ESub, EVar, es_free_vars
from .syntax import Lexer, ParseError, parse_es, parse_term, show, show_es
from .terms import Abs, GApp, Var, free_vars

# -- types -----------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "MultiType"
    cod: "Type"

    def __str__(self) -> str:
        return f"{self.dom} -> {self.cod}"


Type = Union[Base, Arrow]


@lru_cache(maxsize=None)
def type_key(t: Type) -> tuple:
    if isinstance(t, Base):
        return (0, t.name)
    return (1, tuple(type_key(s) for s in t.dom.items), type_key(t.cod))


class MultiType:
    """A finite bag of types in canonical order."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[Type] = ()):
        self.items: tuple[Type, ...] = tuple(sorted(items, key=type_key))
        self._hash = hash(self.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiType) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __add__(self, other: "MultiType") -> "MultiType":
        return MultiType(self.items + other.items)

    def __repr__(self) -> str:
        return f"MultiType({list(self.items)!r})"

    def __str__(self) -> str:
        return "[" + ", ".join(str(t) for t in self.items) + "]"

    def includes(self, other: "MultiType") -> bool:
        """Whether ``other`` is a sub-multiset of ``self``."""
        pool = list(self.items)
        for t in other.items:
            try:
                pool.remove(t)
            except ValueError:
                return False
        return True


EMPTY = MultiType()
O = Base("o")  # default witness for the choice operator


def mset(*types: Type) -> MultiType:
    return MultiType(types)


def union(ms: Iterable[MultiType]) -> MultiType:
    out: list[Type] = []
    for m in ms:
        out.extend(m.items)
    return MultiType(out)


def choice(m: MultiType, witness: Type = O) -> MultiType:
    return m if m else MultiType([witness])


def show_type(t: Union[Type, MultiType]) -> str:
    return str(t)


def parse_type(text: str) -> Type:
    lx = Lexer(text)
    t = _type(lx)
    lx.done()
    return t


def parse_multitype(text: str) -> MultiType:
    lx = Lexer(text)
    m = _mset(lx)
    lx.done()
    return m


def _mset(lx: Lexer) -> MultiType:
    lx.expect("[")
    items = []
    if lx.peek()[1] != "]":
        items.append(_type(lx))
        while lx.peek()[1] == ",":
            lx.next()
            items.append(_type(lx))
    lx.expect("]")
    return MultiType(items)


def _type(lx: Lexer) -> Type:
    kind, v, pos = lx.peek()
    if v == "[":
        dom = _mset(lx)
        lx.expect("->")
        return Arrow(dom, _type(lx))
    if v == "(":
        lx.next()
        t = _type(lx)
        lx.expect(")")
        return t
    if kind == "id":
        lx.next()
        return Base(v)
    raise ParseError(f"expected type, found {v or 'end of input'!r}", pos, lx.text)


# -- environments ------------------------------------------------------------------


class TypeEnv:
    """Variables to nonempty multisets; absent means the empty multiset."""

    __slots__ = ("items", "_hash")

    def __init__(self, mapping: Union[Mapping[str, MultiType], Iterable[tuple[str, MultiType]]] = ()):
        pairs = mapping.items() if isinstance(mapping, Mapping) else mapping
        self.items: tuple[tuple[str, MultiType], ...] = tuple(sorted((k, m) for k, m in pairs if m))
        self._hash = hash(self.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, TypeEnv) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"TypeEnv({dict(self.items)!r})"

    def __str__(self) -> str:
        return ", ".join(f"{k}:{m}" for k, m in self.items) or "∅"

    def get(self, x: str) -> MultiType:
        for k, m in self.items:
            if k == x:
                return m
        return EMPTY

    def dom(self) -> frozenset[str]:
        return frozenset(k for k, _ in self.items)

    def __and__(self, other: "TypeEnv") -> "TypeEnv":
        out = dict(self.items)
        for k, m in other.items:
            out[k] = out[k] + m if k in out else m
        return TypeEnv(out)

    def without(self, x: str) -> "TypeEnv":
        return TypeEnv((k, m) for k, m in self.items if k != x)

    def rename(self, rho: Mapping[str, str]) -> "TypeEnv":
        return TypeEnv((rho.get(k, k), m) for k, m in self.items)

    def leq(self, other: "TypeEnv") -> bool:
        """Pointwise multiset inclusion of ``self`` in ``other``."""
        return all(other.get(k).includes(m) for k, m in self.items)


def meet(envs: Iterable[TypeEnv]) -> TypeEnv:
    out = TypeEnv()
    for e in envs:
        out = out & e
    return out


# -- derivations ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Deriv:
    rule: str
    env: TypeEnv
    term: object
    type: Union[Type, MultiType]
    children: tuple["Deriv", ...] = ()
    pairs: tuple[tuple[MultiType, Type], ...] = ()
    witnesses: tuple[Optional[Type], Optional[Type]] = (None, None)
    _size: int = field(default=-1, repr=False)

    @property
    def size(self) -> int:
        return derivation_size(self)

    def nodes(self):
        stack = [self]
        while stack:
            d = stack.pop()
            yield d
            stack.extend(reversed(d.children))


def derivation_size(d: Deriv) -> int:
    """Number of var, abs, app (and sub) nodes; many nodes are free."""
    if d._size >= 0:
        return d._size
    n = sum(derivation_size(c) for c in d.children) + (d.rule != "many")
    object.__setattr__(d, "_size", n)
    return n


def mk_var(x: str, sigma: Type, es: bool = False) -> Deriv:
    return Deriv("var", TypeEnv({x: mset(sigma)}), EVar(x) if es else Var(x), sigma)


def mk_abs(term, body: Deriv) -> Deriv:
    x = term.binder
    return Deriv("abs", body.env.without(x), term, Arrow(body.env.get(x), body.type), (body,))


def mk_many(children: Iterable[Deriv]) -> Deriv:
    cs = tuple(children)
    if not cs:
        raise ValueError("many needs at least one premise")
    return Deriv("many", meet(c.env for c in cs), cs[0].term, MultiType(c.type for c in cs), cs)


def _witness_of(many: Deriv) -> Type:
    return many.type.items[0]


def mk_app(term: GApp, head: Deriv, arg: Deriv, cont: Deriv, pairs: Iterable[tuple[MultiType, Type]]) -> Deriv:
    pairs = tuple(pairs)
    fun = None if pairs else _witness_of(head)
    argw = None if union(m for m, _ in pairs) else _witness_of(arg)
    env = head.env & arg.env & cont.env.without(term.binder)
    return Deriv("app", env, term, cont.type, (head, arg, cont), pairs, (fun, argw))


def mk_es_app(term: EApp, fun: Deriv, arg: Deriv) -> Deriv:
    dom = fun.type.dom
    w = None if dom else _witness_of(arg)
    return Deriv("app", fun.env & arg.env, term, fun.type.cod, (fun, arg), (), (None, w))


def mk_sub(term: ESub, body: Deriv, arg: Deriv) -> Deriv:
    m = body.env.get(term.binder)
    w = None if m else _witness_of(arg)
    return Deriv("sub", body.env.without(term.binder) & arg.env, term, body.type, (body, arg), (), (None, w))


# -- checking ---------------------------------------------------------------------------


@dataclass
class CheckReport:
    ok: bool = True
    errors: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, d: Deriv, msg: str) -> None:
        self.ok = False
        self.errors.append(f"{d.rule} node, {sequent(d)}: {msg}")


def sequent(d: Deriv) -> str:
    return f"{d.env} ⊢ {_show_any(d.term)} : {d.type}"


def _show_any(t) -> str:
    return show(t) if isinstance(t, (Var, Abs, GApp)) else show_es(t)


def check_derivation_j(d: Deriv) -> CheckReport:
    """Verify every node instantiates its rule of the J system."""
    rep = CheckReport()
    for node in d.nodes():
        _check_node(node, rep, es=False)
    return rep


def check_derivation_es(d: Deriv) -> CheckReport:
    """Verify every node instantiates its rule of the ES system."""
    rep = CheckReport()
    for node in d.nodes():
        _check_node(node, rep, es=True)
    return rep


def _is_type(x) -> bool:
    return isinstance(x, (Base, Arrow))


def _check_node(d: Deriv, rep: CheckReport, es: bool) -> None:
    t = d.term
    kinds = (EVar, EAbs, EApp, ESub) if es else (Var, Abs, GApp)
    if not isinstance(t, kinds):
        rep.fail(d, "subject belongs to the other calculus")
        return
    if d.rule == "many":
        if not d.children:
            rep.fail(d, "many with no premises")
            return
        for c in d.children:
            if c.rule == "many" or c.term != t:
                rep.fail(d, "many premises must type the same term at plain types")
                return
        if d.type != MultiType(c.type for c in d.children):
            rep.fail(d, "multiset does not collect the premise types")
        if d.env != meet(c.env for c in d.children):
            rep.fail(d, "environment is not the union of the premises")
        return
    if not _is_type(d.type):
        rep.fail(d, "conclusion type must be a plain type")
        return
    if d.rule == "var":
        if not isinstance(t, (Var, EVar)) or d.children:
            rep.fail(d, "var axiom must type a variable")
        elif d.env != TypeEnv({t.name: mset(d.type)}):
            rep.fail(d, f"axiom environment must be exactly {t.name}:[{d.type}]")
        return
    if d.rule == "abs":
        if not isinstance(t, (Abs, EAbs)) or len(d.children) != 1:
            rep.fail(d, "abs must type an abstraction with one premise")
            return
        (c,) = d.children
        if c.term != t.body or c.rule == "many":
            rep.fail(d, "premise must type the body")
            return
        if d.type != Arrow(c.env.get(t.binder), c.type):
            rep.fail(d, "type must discharge the binder's multiset")
        if d.env != c.env.without(t.binder):
            rep.fail(d, "environment must drop the binder")
        return
    if d.rule == "app" and not es:
        _check_japp(d, rep)
        return
    if d.rule == "app" and es:
        if not isinstance(t, EApp) or len(d.children) != 2:
            rep.fail(d, "app must type an application with two premises")
            return
        f, a = d.children
        if f.term != t.fun or a.term != t.arg or f.rule == "many" or a.rule != "many":
            rep.fail(d, "premises must type the function at a type and the argument at a multiset")
            return
        if not isinstance(f.type, Arrow) or f.type.cod != d.type:
            rep.fail(d, "function type must be an arrow to the conclusion type")
            return
        _check_choice(d, rep, f.type.dom, a.type, d.witnesses[1], "argument")
        if d.env != f.env & a.env:
            rep.fail(d, "environment is not the union of the premises")
        return
    if d.rule == "sub" and es:
        if not isinstance(t, ESub) or len(d.children) != 2:
            rep.fail(d, "sub must type an explicit substitution with two premises")
            return
        b, a = d.children
        if b.term != t.body or a.term != t.arg or b.rule == "many" or a.rule != "many":
            rep.fail(d, "premises must type the body at a type and the argument at a multiset")
            return
        if b.type != d.type:
            rep.fail(d, "body type must be the conclusion type")
        _check_choice(d, rep, b.env.get(t.binder), a.type, d.witnesses[1], "argument")
        if d.env != b.env.without(t.binder) & a.env:
            rep.fail(d, "environment is not the union of the premises")
        return
    rep.fail(d, f"unknown rule {d.rule!r}")


def _check_choice(d: Deriv, rep: CheckReport, wanted: MultiType, got, witness, what: str) -> None:
    if wanted:
        if witness is not None:
            rep.fail(d, f"{what} witness given for a nonempty multiset")
        if got != wanted:
            rep.fail(d, f"{what} typed {got}, expected {wanted}")
    else:
        if witness is None:
            rep.fail(d, f"{what} needs a choice witness")
        elif got != mset(witness):
            rep.fail(d, f"{what} typed {got}, expected the witness [{witness}]")


def _check_japp(d: Deriv, rep: CheckReport) -> None:
    t = d.term
    if not isinstance(t, GApp) or len(d.children) != 3:
        rep.fail(d, "app must type a generalized application with three premises")
        return
    h, a, c = d.children
    if h.term != t.head or a.term != t.arg or c.term != t.cont:
        rep.fail(d, "premises do not match the subterms")
        return
    if h.rule != "many" or a.rule != "many" or c.rule == "many":
        rep.fail(d, "head and argument premises must be many nodes")
        return
    fun_w, arg_w = d.witnesses
    arrows = MultiType(Arrow(m, tau) for m, tau in d.pairs)
    _check_choice(d, rep, arrows, h.type, fun_w, "head")
    _check_choice(d, rep, union(m for m, _ in d.pairs), a.type, arg_w, "argument")
    if c.type != d.type:
        rep.fail(d, "continuation type must be the conclusion type")
    if c.env.get(t.binder) != MultiType(tau for _, tau in d.pairs):
        rep.fail(d, f"continuation binder {t.binder} must have the multiset of the pair codomains")
    if d.env != h.env & a.env & c.env.without(t.binder):
        rep.fail(d, "environment is not the union of the premises")


def check_relevance(d: Deriv) -> bool:
    """The environment mentions exactly the free variables of the subject."""
    fv = free_vars(d.term) if isinstance(d.term, (Var, Abs, GApp)) else es_free_vars(d.term)
    return d.env.dom() == fv


# -- retargeting onto alpha-equivalent subjects ---------------------------------------------


def retarget(d: Deriv, target, rho: Optional[dict] = None) -> Deriv:
    """The same derivation over ``target``, an alpha-variant of ``d.term``.

    Bound names are mapped through ``rho`` so environments follow the
    renaming; the rule structure is unchanged.
    """
    if rho is None:
        if d.term == target:
            return d
        rho = {}
    env = d.env.rename(rho) if rho else d.env
    t = d.term
    if d.rule == "many":
        return Deriv("many", env, target, d.type, tuple(retarget(c, target, rho) for c in d.children))
    if isinstance(t, (Var, EVar)):
        if not isinstance(target, type(t)) or rho.get(t.name, t.name) != target.name:
            raise ValueError("retarget: subjects are not alpha-equivalent")
        return Deriv(d.rule, env, target, d.type)
    if isinstance(t, (Abs, EAbs)):
        _same_kind(t, target)
        inner = _bind(rho, t.binder, target.binder)
        return Deriv(d.rule, env, target, d.type, (retarget(d.children[0], target.body, inner),), d.pairs, d.witnesses)
    if isinstance(t, GApp):
        _same_kind(t, target)
        h, a, c = d.children
        kids = (
            retarget(h, target.head, rho),
            retarget(a, target.arg, rho),
            retarget(c, target.cont, _bind(rho, t.binder, target.binder)),
        )
        return Deriv(d.rule, env, target, d.type, kids, d.pairs, d.witnesses)
    if isinstance(t, EApp):
        _same_kind(t, target)
        f, a = d.children
        return Deriv(d.rule, env, target, d.type, (retarget(f, target.fun, rho), retarget(a, target.arg, rho)), d.pairs, d.witnesses)
    _same_kind(t, target)
    b, a = d.children
    kids = (retarget(b, target.body, _bind(rho, t.binder, target.binder)), retarget(a, target.arg, rho))
    return Deriv(d.rule, env, target, d.type, kids, d.pairs, d.witnesses)


def _same_kind(t, target) -> None:
    if type(t) is not type(target):
        raise ValueError("retarget: subjects are not alpha-equivalent")


def _bind(rho: dict, old: str, new: str) -> dict:
    if rho.get(old, old) == new and old == new and old not in rho:
        return rho
    out = dict(rho)
    out[old] = new
    return out


# -- multiset plumbing ----------------------------------------------------------------------


def take(pool: list[Deriv], wanted: MultiType) -> list[Deriv]:
    """Remove and return premises of ``pool`` whose types make up ``wanted``."""
    out = []
    for ty in wanted.items:
        for i, d in enumerate(pool):
            if d.type == ty:
                out.append(pool.pop(i))
                break
        else:
            raise ValueError(f"no premise of type {ty} left to split off")
    return out


def select(many: Deriv, wanted: MultiType) -> Deriv:
    """The sub-derivation of a many node typing exactly ``wanted``."""
    return mk_many(take(list(many.children), wanted))


def merge(manys: Iterable[Deriv]) -> Deriv:
    """Join many nodes over the same term into one."""
    kids: list[Deriv] = []
    for m in manys:
        kids.extend(m.children)
    return mk_many(kids)


# -- interchange ---------------------------------------------------------------------------


def to_json(d: Deriv) -> dict:
    obj = {
        "rule": d.rule,
        "env": {k: [str(t) for t in m] for k, m in d.env.items},
        "term": _show_any(d.term),
        "type": str(d.type),
    }
    if d.rule == "app" or d.rule == "sub":
        obj["pairs"] = [{"dom": [str(t) for t in m], "cod": str(tau)} for m, tau in d.pairs]
        fun, arg = d.witnesses
        obj["witnesses"] = {"fun": None if fun is None else str(fun), "arg": None if arg is None else str(arg)}
    obj["children"] = [to_json(c) for c in d.children]
    return obj


def from_json(obj: dict, calculus: str = "j") -> Deriv:
    parse = parse_term if calculus == "j" else parse_es
    return _from_json(obj, parse)


def _from_json(obj: dict, parse) -> Deriv:
    rule = obj["rule"]
    env = TypeEnv({k: MultiType(parse_type(s) for s in v) for k, v in obj["env"].items()})
    ty = parse_multitype(obj["type"]) if rule == "many" else parse_type(obj["type"])
    pairs = tuple((MultiType(parse_type(s) for s in p["dom"]), parse_type(p["cod"])) for p in obj.get("pairs", []))
    w = obj.get("witnesses") or {}
    witnesses = tuple(None if w.get(k) is None else parse_type(w[k]) for k in ("fun", "arg"))
    kids = tuple(_from_json(c, parse) for c in obj.get("children", []))
    return Deriv(rule, env, parse(obj["term"]), ty, kids, pairs, witnesses)


def dumps(d: Deriv) -> str:
    return json.dumps(to_json(d), ensure_ascii=False, indent=1)


def render(d: Deriv, indent: int = 0) -> str:
    """Indented text tree, conclusion first."""
    lines = []
    stack = [(d, indent)]
    while stack:
        n, k = stack.pop()
        lines.append("  " * k + f"({n.rule}) {sequent(n)}")
        stack.extend((c, k + 1) for c in reversed(n.children))
    return "\n".join(lines)
