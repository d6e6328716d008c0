"""Reduction rules on named terms, contextual closure and the weak-head strategy.

Root rules::

    beta   (\\x.s)(u, y.r)          -> [[u/x]s/y]r
    pi     t(u, y.r)(u', y'.r')    -> t(u, y.r(u', y'.r'))
    p2     t(u', y'.\\x.s)          -> \\x.t(u', y'.s)
    dbeta  D[\\x.s](u, y.r)         -> [D[[u/x]s]/y]r      (D maximal)

``wh`` is the restriction of ``dbeta`` to neutral distant contexts, closed
under weak-head contexts only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .classify import is_answer, is_neutral
from .terms import (
    Abs,
    CONT,
    Context,
    GApp,
    HEAD,
    Position,
    Term,
    Var,
    abstraction_shape,
    all_names,
    alpha_key,
    children,
    context_at,
    fresh_name,
    free_vars,
    rename_free,
    replace_at,
    substitute,
    subterm,
    with_child,
)

J_RULES = ("beta", "pi", "p2", "dbeta")


def parse_rules(spec: str | Iterable[str]) -> frozenset[str]:
    if isinstance(spec, str):
        spec = [s for s in spec.replace("+", ",").split(",") if s.strip()]
    rules = frozenset(s.strip() for s in spec)
    return rules


# -- root steps --------------------------------------------------------------

def _beta(t: Term) -> Optional[Term]:
    if isinstance(t, GApp) and isinstance(t.head, Abs):
        lam = t.head
        return substitute(substitute(t.arg, lam.binder, lam.body), t.binder, t.cont)
    return None


def _pi(t: Term) -> Optional[Term]:
    if not (isinstance(t, GApp) and isinstance(t.head, GApp)):
        return None
    inner = t.head
    y, r = inner.binder, inner.cont
    outside = free_vars(t.arg) | (free_vars(t.cont) - {t.binder})
    if y in outside:
        y2 = fresh_name(y, outside | all_names(r) | all_names(t.cont) | {t.binder})
        r = rename_free(r, y, y2)
        y = y2
    return GApp(inner.head, inner.arg, y, GApp(r, t.arg, t.binder, t.cont))


def _p2(t: Term) -> Optional[Term]:
    if not (isinstance(t, GApp) and isinstance(t.cont, Abs)):
        return None
    lam = t.cont
    x, s = lam.binder, lam.body
    avoid = free_vars(t.head) | free_vars(t.arg) | {t.binder}
    if x in avoid:
        x2 = fresh_name(x, avoid | all_names(s))
        s = rename_free(s, x, x2)
        x = x2
    return Abs(x, GApp(t.head, t.arg, t.binder, s))


def hygienic_shape(h: Term, avoid: frozenset[str]):
    """Abstraction shape of ``h`` with D's binders renamed away from ``avoid``.

    Returns ``(frames, x, s)`` where ``frames`` lists ``(head, arg, binder)``
    from the outside in, such that plugging any term whose free variables
    lie in ``avoid`` cannot be captured by the D binders.  The lambda binder
    ``x`` is also kept distinct from the D binders.
    """
    frames = []
    while isinstance(h, GApp):
        z, cont = h.binder, h.cont
        if z in avoid:
            z2 = fresh_name(z, avoid | all_names(cont) | all_names(h.head) | all_names(h.arg))
            cont = rename_free(cont, z, z2)
            z = z2
        frames.append((h.head, h.arg, z))
        h = cont
    if not isinstance(h, Abs):
        return None
    x, s = h.binder, h.body
    dbinders = {z for _, _, z in frames}
    if x in dbinders or x in avoid:
        x2 = fresh_name(x, avoid | dbinders | all_names(s))
        s = rename_free(s, x, x2)
        x = x2
    return frames, x, s


def plug_frames(frames, t: Term) -> Term:
    for head, arg, z in reversed(frames):
        t = GApp(head, arg, z, t)
    return t


def _dbeta(t: Term) -> Optional[Term]:
    if not isinstance(t, GApp):
        return None
    shape = hygienic_shape(t.head, free_vars(t.arg))
    if shape is None:
        return None
    frames, x, s = shape
    return substitute(plug_frames(frames, substitute(t.arg, x, s)), t.binder, t.cont)


ROOT_STEPS: dict[str, Callable[[Term], Optional[Term]]] = {
    "beta": _beta,
    "pi": _pi,
    "p2": _p2,
    "dbeta": _dbeta,
}


def step_root(rule: str, t: Term) -> Optional[Term]:
    try:
        fn = ROOT_STEPS[rule]
    except KeyError:
        raise ValueError(f"unknown rule {rule!r}") from None
    return fn(t)


def is_erasing(rule: str, t: Term) -> bool:
    """Whether the root redex ``t`` of ``rule`` discards a subterm."""
    if rule == "beta" and isinstance(t, GApp) and isinstance(t.head, Abs):
        return t.head.binder not in free_vars(t.head.body) or t.binder not in free_vars(t.cont)
    if rule in ("dbeta", "wh") and isinstance(t, GApp):
        shape = abstraction_shape(t.head)
        if shape is not None:
            _, x, s = shape
            return x not in free_vars(s) or t.binder not in free_vars(t.cont)
    return False


# -- traces --------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    rule: str
    path: Position
    erasing: bool
    result: Term


@dataclass
class ReductionTrace:
    start: Term
    steps: list[Step] = field(default_factory=list)

    def terms(self) -> list[Term]:
        return [self.start] + [s.result for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self, printer) -> str:
        lines = [printer(self.start)]
        for s in self.steps:
            flag = "erasing" if s.erasing else "non-erasing"
            lines.append(f"{s.rule} @ {format_path(s.path)} [{flag}]")
            lines.append(printer(s.result))
        return "\n".join(lines)

    def to_json(self, printer) -> dict:
        return {
            "start": printer(self.start),
            "steps": [
                {"rule": s.rule, "path": list(s.path), "erasing": s.erasing, "term": printer(s.result)}
                for s in self.steps
            ],
        }


def format_path(path: Position) -> str:
    return "[" + ",".join(map(str, path)) + "]"


def replay(trace: ReductionTrace, key=alpha_key) -> bool:
    """Check each step follows from its predecessor by the named rule."""
    cur = trace.start
    for s in trace.steps:
        if s.rule == "wh":
            w = wh_step(cur)
            if w is None or w[0].path != s.path or key(w[1]) != key(s.result):
                return False
        else:
            red = step_root(s.rule, subterm(cur, s.path))
            if red is None or key(replace_at(cur, s.path, red)) != key(s.result):
                return False
        cur = s.result
    return True


# -- contextual closure ------------------------------------------------------------

def reducts(rules, t: Term) -> list[tuple[str, Position, Term]]:
    """All one-step reducts, leftmost-outermost, without alpha-duplicates."""
    return [(s.rule, s.path, s.result) for s in steps(rules, t)]


def _j_order(rules) -> list[str]:
    unknown = rules - set(J_RULES)
    if unknown:
        raise ValueError(f"unknown rules {sorted(unknown)}")
    return [r for r in J_RULES if r in rules]


def steps(rules, t: Term) -> list[Step]:
    rules = parse_rules(rules)
    if "wh" in rules:
        raise ValueError("wh is a strategy and cannot be closed under contexts")
    order = _j_order(rules)
    out: list[Step] = []
    seen: set = set()
    _collect(t, (), order, t, out, seen)
    return out


def _collect(s: Term, path: Position, order, root: Term, out: list[Step], seen: set) -> None:
    for rule in order:
        red = ROOT_STEPS[rule](s)
        if red is None:
            continue
        whole = replace_at(root, path, red)
        k = alpha_key(whole)
        if k not in seen:
            seen.add(k)
            out.append(Step(rule, path, is_erasing(rule, s), whole))
    for i, c in enumerate(children(s)):
        _collect(c, path + (i,), order, root, out, seen)


# -- weak head --------------------------------------------------------------------

def wh_redex(t: Term) -> Optional[Position]:
    """Position of the restricted weak-head redex, if any."""
    path: list[int] = []
    while isinstance(t, GApp):
        if is_answer(t.head):
            return tuple(path)
        if is_neutral(t.head):
            path.append(CONT)
            t = t.cont
        else:
            path.append(HEAD)
            t = t.head
    return None


def wh_step(t: Term) -> Optional[tuple[Context, Term]]:
    """The unique weak-head step, as the context W and the reduct."""
    path = wh_redex(t)
    if path is None:
        return None
    red = _dbeta(subterm(t, path))
    return context_at(t, path), replace_at(t, path, red)


def wh_decompositions(t: Term) -> list[Position]:
    """Every position p whose context is weak-head and whose subterm is a
    restricted redex; used to confirm determinism independently."""
    from .terms import is_weak_head, positions

    out = []
    for p in positions(t):
        s = subterm(t, p)
        if isinstance(s, GApp) and is_answer(s.head) and is_weak_head(context_at(t, p)):
            out.append(p)
    return out


# -- normal forms ------------------------------------------------------------------

def pi_normal_form(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, Abs):
        return Abs(t.binder, pi_normal_form(t.body))
    return _pi_append(pi_normal_form(t.head), pi_normal_form(t.arg), t.binder, pi_normal_form(t.cont))


def _pi_append(h: Term, u: Term, y: str, r: Term) -> Term:
    # h, u, r are pi-normal; returns the pi-nf of h(u, y.r)
    if not isinstance(h, GApp):
        return GApp(h, u, y, r)
    z, inner = h.binder, h.cont
    outside = free_vars(u) | (free_vars(r) - {y})
    if z in outside:
        z2 = fresh_name(z, outside | all_names(inner) | all_names(r) | {y})
        inner = rename_free(inner, z, z2)
        z = z2
    return GApp(h.head, h.arg, z, _pi_append(inner, u, y, r))


def isn_strategy_step(t: Term) -> Optional[Step]:
    """One step of the normalizing strategy behind the inductive predicate:
    weak-head first, then inside the head-normal parts from the left."""
    w = wh_step(t)
    if w is not None:
        ctx, red = w
        return Step("dbeta", ctx.path, is_erasing("dbeta", subterm(t, ctx.path)), red)
    for i, c in enumerate(children(t)):
        s = isn_strategy_step(c)
        if s is not None:
            return Step(s.rule, (i,) + s.path, s.erasing, with_child(t, i, s.result))
    return None


def leftmost_step(rules, t: Term) -> Optional[Step]:
    return _leftmost(t, _j_order(parse_rules(rules)))


def _leftmost(t: Term, order) -> Optional[Step]:
    for rule in order:
        red = ROOT_STEPS[rule](t)
        if red is not None:
            return Step(rule, (), is_erasing(rule, t), red)
    for i, c in enumerate(children(t)):
        s = _leftmost(c, order)
        if s is not None:
            return Step(s.rule, (i,) + s.path, s.erasing, with_child(t, i, s.result))
    return None


def reduce_with(t: Term, next_step: Callable[[Term], Optional[Step]], limit: int) -> tuple[ReductionTrace, bool]:
    """Follow a strategy for at most ``limit`` steps; the flag says whether a
    normal form was reached."""
    trace = ReductionTrace(t)
    cur = t
    for _ in range(limit):
        s = next_step(cur)
        if s is None:
            return trace, True
        trace.steps.append(s)
        cur = s.result
    return trace, next_step(cur) is None
