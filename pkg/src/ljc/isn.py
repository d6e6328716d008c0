"""Inductive characterizations of strong normalization.

Three syntax-directed predicates, each built from exactly one applicable
rule per term:

* ``isn_dbeta``: rules snvar, snapp, snabs, snbeta over the weak-head
  decomposition.
* ``isn_betapi``: rules var, hvar, lambda, pi, beta over the spine
  ``h S1 ... Sn`` of generalized arguments.
* ``isn_lambdaj_new``: snvar, snapp, snabs plus isnredex1 (the pi case
  ``n(u, y.a)S``) and isnredex2 (beta) under weak-head contexts.

Fuel counts rule applications over the whole recursion; running out gives
``Unknown``, never ``Fails``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .classify import is_answer, is_neutral, is_whnf
from .reduction import _beta, _dbeta, _pi, hygienic_shape, plug_frames, steps, wh_redex
from .terms import (
    Abs,
    CONT,
    GApp,
    HEAD,
    Position,
    Term,
    Var,
    alpha_key,
    free_vars,
    fresh_name,
    replace_at,
    substitute,
    subterm,
)

DEFAULT_FUEL = 100_000
DEFAULT_DEPTH = 500


@dataclass(frozen=True)
class IsnNode:
    rule: str
    term: Term
    premises: tuple["IsnNode", ...] = ()
    path: Optional[Position] = None  # redex position for redex rules

    def render(self, printer, indent: int = 0) -> str:
        where = "" if self.path is None else f" @ {list(self.path)}"
        lines = ["  " * indent + f"({self.rule}){where} {printer(self.term)}"]
        for p in self.premises:
            lines.append(p.render(printer, indent + 1))
        return "\n".join(lines)

    def count(self) -> int:
        return 1 + sum(p.count() for p in self.premises)


@dataclass(frozen=True)
class Holds:
    witness: IsnNode

    @property
    def sn(self) -> Optional[bool]:
        return True


@dataclass(frozen=True)
class Fails:
    obligation: Term
    reason: str

    @property
    def sn(self) -> Optional[bool]:
        return False


@dataclass(frozen=True)
class Unknown:
    fuel_spent: int

    @property
    def sn(self) -> Optional[bool]:
        return None


IsnVerdict = Union[Holds, Fails, Unknown]


class _OutOfFuel(Exception):
    pass


class _Stuck(Exception):
    def __init__(self, term, reason):
        self.term = term
        self.reason = reason


@dataclass
class _Run:
    fuel: int
    depth: int
    spent: int = 0
    memo: dict = field(default_factory=dict)

    def tick(self, level: int) -> None:
        self.spent += 1
        if self.spent > self.fuel or level > self.depth:
            raise _OutOfFuel()


def _run(rules_fn, t: Term, fuel, depth) -> IsnVerdict:
    run = _Run(DEFAULT_FUEL if fuel is None else int(fuel), depth)
    try:
        return Holds(_prove(rules_fn, t, run, 0))
    except _OutOfFuel:
        return Unknown(run.spent)
    except _Stuck as e:
        return Fails(e.term, e.reason)
    except RecursionError:
        return Unknown(run.spent)


def _prove(rules_fn, t: Term, run: _Run, level: int) -> IsnNode:
    key = alpha_key(t)
    hit = run.memo.get(key)
    if hit is not None:
        return hit
    run.tick(level)
    rule, path, premises = rules_fn(t)
    node = IsnNode(rule, t, tuple(_prove(rules_fn, p, run, level + 1) for p in premises), path)
    run.memo[key] = node
    return node


# -- isn for dbeta ------------------------------------------------------------

def dbeta_rule(t: Term) -> tuple[str, Optional[Position], list[Term]]:
    """The unique applicable rule and its premises."""
    if isinstance(t, Var):
        return "snvar", None, []
    if isinstance(t, Abs):
        return "snabs", None, [t.body]
    if is_whnf(t):
        return "snapp", None, [t.head, t.arg, t.cont]
    path = wh_redex(t)
    if path is None:
        raise _Stuck(t, "no weak-head decomposition for a term outside n and a")
    redex = subterm(t, path)
    shape = hygienic_shape(redex.head, free_vars(redex.arg))
    frames, x, s = shape
    return "snbeta", path, [replace_at(t, path, _dbeta(redex)), plug_frames(frames, s), redex.arg]


def isn_dbeta(t: Term, fuel=None, depth: int = DEFAULT_DEPTH) -> IsnVerdict:
    return _run(dbeta_rule, t, fuel, depth)


# -- isn for (beta, pi) ---------------------------------------------------------

@dataclass(frozen=True)
class GenArg:
    arg: Term
    binder: str
    cont: Term


GenArgVector = tuple[GenArg, ...]


def spine(t: Term) -> tuple[Term, GenArgVector]:
    """Split ``t`` as ``h S1 ... Sn`` with ``h`` not an application."""
    args = []
    while isinstance(t, GApp):
        args.append(GenArg(t.arg, t.binder, t.cont))
        t = t.head
    return t, tuple(reversed(args))


def apply_args(h: Term, args: Iterable[GenArg]) -> Term:
    for s in args:
        h = GApp(h, s.arg, s.binder, s.cont)
    return h


def betapi_rule(t: Term) -> tuple[str, Optional[Position], list[Term]]:
    h, args = spine(t)
    n = len(args)
    if isinstance(h, Var):
        if n == 0:
            return "var", None, []
        if n == 1:
            return "hvar", None, [args[0].arg, args[0].cont]
        path = (HEAD,) * (n - 2)
        return "pi", path, [replace_at(t, path, _pi(subterm(t, path)))]
    if n == 0:
        return "lambda", None, [h.body]
    path = (HEAD,) * (n - 1)
    return "beta", path, [replace_at(t, path, _beta(subterm(t, path))), h.body, args[0].arg]


def isn_betapi(t: Term, fuel=None, depth: int = DEFAULT_DEPTH) -> IsnVerdict:
    return _run(betapi_rule, t, fuel, depth)


# -- new isn for (beta, pi) ------------------------------------------------------

def new_redex(t: Term) -> Optional[tuple[str, Position]]:
    """Weak-head position of the next beta redex or pi redex n(u, y.a)S."""
    path: list[int] = []
    while isinstance(t, GApp):
        if isinstance(t.head, Abs):
            return "isnredex2", tuple(path)
        if is_answer(t.head):
            return "isnredex1", tuple(path)
        if is_neutral(t.head):
            path.append(CONT)
            t = t.cont
        else:
            path.append(HEAD)
            t = t.head
    return None


def lambdaj_new_rule(t: Term) -> tuple[str, Optional[Position], list[Term]]:
    if isinstance(t, Var):
        return "snvar", None, []
    if isinstance(t, Abs):
        return "snabs", None, [t.body]
    if is_whnf(t):
        return "snapp", None, [t.head, t.arg, t.cont]
    found = new_redex(t)
    if found is None:
        raise _Stuck(t, "no redex under a weak-head context")
    rule, path = found
    redex = subterm(t, path)
    if rule == "isnredex1":
        return rule, path, [replace_at(t, path, _pi(redex))]
    return rule, path, [replace_at(t, path, _beta(redex)), redex.head.body, redex.arg]


def isn_lambdaj_new(t: Term, fuel=None, depth: int = DEFAULT_DEPTH) -> IsnVerdict:
    return _run(lambdaj_new_rule, t, fuel, depth)


# -- witness replay ------------------------------------------------------------------

RULE_FNS = {"dbeta": dbeta_rule, "betapi": betapi_rule, "new": lambdaj_new_rule}


def replay_witness(node: IsnNode, system: str) -> bool:
    """Re-derive every node's rule and premises from scratch."""
    fn = RULE_FNS[system]
    stack = [node]
    seen = set()
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        rule, path, premises = fn(n.term)
        if rule != n.rule or path != n.path or len(premises) != len(n.premises):
            return False
        if any(alpha_key(p) != alpha_key(q.term) for p, q in zip(premises, n.premises)):
            return False
        if rule == "snapp" and not (is_neutral(n.term.head) and is_whnf(n.term.cont)):
            return False
        stack.extend(n.premises)
    return True


# -- admissible rules ---------------------------------------------------------------------

@dataclass
class AdmissibleReport:
    rule: str
    checked: int = 0
    premises_hold: int = 0
    unknown: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _holds(t: Term, fuel) -> Optional[bool]:
    return isn_betapi(t, fuel).sn


def admissible_rule_check(rule: str, instances: Iterable, fuel=None) -> AdmissibleReport:
    """Check an admissible rule of the (beta, pi) predicate on instances.

    Instances are tuples:

    * ``I``: ``(u, r, x, y)``; premises u and r, conclusion ``[y(u, z.z)/x]r``.
    * ``II``: ``(t, u, r, v, x, y, z)`` with x not free in t, u, r; premises
      ``[[[u/y]t/z]r/x]v``, t and u; conclusion ``[(\\y.t)(u, z.r)/x]v``.
    * ``prefix_pi``: a term t; for every pi-reduct t' that holds, t holds.
    """
    rep = AdmissibleReport(rule)
    for inst in instances:
        rep.checked += 1
        if rule == "I":
            u, r, x, y = inst
            z = fresh_name("z", free_vars(u) | {y})
            premises = [u, r]
            conclusion = [substitute(GApp(Var(y), u, z, Var(z)), x, r)]
        elif rule == "II":
            t, u, r, v, x, y, z = inst
            if x in free_vars(t) | free_vars(u) | free_vars(r):
                rep.checked -= 1
                continue
            premises = [substitute(substitute(substitute(u, y, t), z, r), x, v), t, u]
            conclusion = [substitute(GApp(Abs(y, t), u, z, r), x, v)]
        elif rule == "prefix_pi":
            t = inst
            premises = None
            conclusion = [t]
            reds = [s.result for s in steps({"pi"}, t)]
            verdicts = [_holds(p, fuel) for p in reds]
            if any(v is None for v in verdicts):
                rep.unknown += 1
                continue
            if not any(verdicts):
                continue
            rep.premises_hold += 1
            c = _holds(t, fuel)
            if c is None:
                rep.unknown += 1
            elif not c:
                rep.counterexamples.append(inst)
            continue
        else:
            raise ValueError(f"unknown admissible rule {rule!r}")
        verdicts = [_holds(p, fuel) for p in premises]
        if any(v is None for v in verdicts):
            rep.unknown += 1
            continue
        if not all(verdicts):
            continue
        rep.premises_hold += 1
        c = _holds(conclusion[0], fuel)
        if c is None:
            rep.unknown += 1
        elif not c:
            rep.counterexamples.append(inst)
    return rep
