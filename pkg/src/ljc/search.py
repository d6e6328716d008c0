"""Exhaustive search over alpha-quotiented reduction graphs.

Works on de Bruijn codes through the rewrite kernel, for all three term
families.  The longest-path search is a depth-first traversal with a
memo of finished states; meeting a state that is still on the current
path is an alpha-cycle and proves non-termination.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import kernel
from .codec import BETA, NameTable, decode, encode, index_to_path, public_rule, rule_mask
from .esterms import EAbs, EApp, ESub, EVar, is_lambda_term
from .reduction import ReductionTrace, Step, parse_rules
from .terms import Abs, GApp, Var

DEFAULT_STATES = 100_000
DEFAULT_DEPTH = 500


@dataclass(frozen=True)
class Budget:
    states: int = DEFAULT_STATES
    depth: int = DEFAULT_DEPTH


def default_budget() -> Budget:
    env = os.environ.get("LJC_FUEL")
    if env:
        return Budget(states=int(env))
    return Budget()


def as_budget(fuel) -> Budget:
    if fuel is None:
        return default_budget()
    if isinstance(fuel, Budget):
        return fuel
    return Budget(states=int(fuel))


@dataclass(frozen=True)
class Yes:
    maxred: int

    @property
    def sn(self) -> Optional[bool]:
        return True


@dataclass(frozen=True)
class No:
    witness: ReductionTrace
    cycle_start: int  # index into witness.terms() where the loop begins

    @property
    def sn(self) -> Optional[bool]:
        return False


@dataclass(frozen=True)
class Unknown:
    fuel_spent: int

    @property
    def sn(self) -> Optional[bool]:
        return None


SnVerdict = Union[Yes, No, Unknown]


def family_of(t) -> str:
    if isinstance(t, (Var, Abs, GApp)):
        return "j"
    if isinstance(t, (EVar, EAbs, EApp, ESub)):
        return "lam" if is_lambda_term(t) else "es"
    raise TypeError(f"not a term: {t!r}")


def weight_steps(rule: int, erasing: bool) -> int:
    return 1


def weight_nonerasing(rule: int, erasing: bool) -> int:
    return 0 if erasing else 1


def weight_beta(rule: int, erasing: bool) -> int:
    return 1 if rule == BETA else 0


def longest_path(code: tuple, mask: int, weight: Callable[[int, bool], int], budget: Budget):
    """Maximum total edge weight over all maximal paths from ``code``.

    Returns ``("yes", value)``, ``("no", path, cycle_index)`` where ``path``
    is a list of ``(code, rule, index, erasing)`` edges ending back on the
    state at ``cycle_index``, or ``("unknown", states_visited)``.
    """
    reducts = kernel.reducts
    memo: dict[tuple, int] = {}
    on_path: dict[tuple, int] = {code: 0}
    # frame: [code, edges, next edge index, best so far, weight of incoming edge, incoming edge]
    stack = [[code, _edges(reducts(code, mask), weight), 0, 0, 0, None]]
    while stack:
        frame = stack[-1]
        edges = frame[1]
        if frame[2] < len(edges):
            child, w, info = edges[frame[2]]
            frame[2] += 1
            if child in memo:
                frame[3] = max(frame[3], w + memo[child])
                continue
            if child in on_path:
                path = [(f[0],) + f[5] for f in stack[1:]]
                path.append((child,) + info)
                return ("no", path, on_path[child])
            if len(memo) + len(on_path) >= budget.states or len(stack) >= budget.depth:
                return ("unknown", len(memo) + len(on_path))
            on_path[child] = len(stack)
            stack.append([child, _edges(reducts(child, mask), weight), 0, 0, w, info])
            continue
        stack.pop()
        del on_path[frame[0]]
        memo[frame[0]] = frame[3]
        if stack:
            parent = stack[-1]
            parent[3] = max(parent[3], frame[4] + frame[3])
    return ("yes", memo[code])


def _edges(raw, weight):
    # merge parallel edges to the same state, keeping the heaviest
    best: dict[tuple, tuple] = {}
    order = []
    for rule, idx, erasing, child in raw:
        w = weight(rule, erasing)
        cur = best.get(child)
        if cur is None:
            order.append(child)
            best[child] = (w, (rule, idx, erasing))
        elif w > cur[0]:
            best[child] = (w, (rule, idx, erasing))
    return [(c, best[c][0], best[c][1]) for c in order]


def _trace(family: str, table: NameTable, start, path) -> ReductionTrace:
    trace = ReductionTrace(start)
    prev = encode(start, table)
    for child, rule, idx, erasing in path:
        trace.steps.append(Step(public_rule(family, rule), index_to_path(prev, idx), erasing, decode(child, table, family)))
        prev = child
    return trace


def sn_search(t, rules, fuel=None, weight: Callable[[int, bool], int] = weight_steps) -> SnVerdict:
    """Brute-force strong normalization with the exact longest reduction."""
    rules = parse_rules(rules)
    if "wh" in rules:
        raise ValueError("wh is a strategy and cannot be closed under contexts")
    family = family_of(t)
    if family == "lam" and rules & {"dB", "B", "s"}:
        family = "es"
    table = NameTable()
    code = encode(t, table)
    res = longest_path(code, rule_mask(family, rules), weight, as_budget(fuel))
    if res[0] == "yes":
        return Yes(res[1])
    if res[0] == "no":
        return No(_trace(family, table, t, res[1]), res[2])
    return Unknown(res[1])


def max_nonerasing(t, fuel=None) -> SnVerdict:
    """Largest count of non-erasing steps along any dbeta sequence."""
    return sn_search(t, {"dbeta"}, fuel, weight_nonerasing)


def max_beta_in_betapi(t, fuel=None) -> SnVerdict:
    """Largest count of beta steps along any (beta, pi) sequence."""
    return sn_search(t, {"beta", "pi"}, fuel, weight_beta)


def reachable(source, target, rules, exact: Optional[int] = None, max_states: int = 20_000, max_depth: int = 64, family: Optional[str] = None):
    """Length of a shortest nonempty path from ``source`` to ``target`` (up
    to alpha), or with ``exact`` set, ``exact`` when a path of exactly that
    length exists.  None when no such path exists; ``Unknown`` when the
    state or depth budget ran out first."""
    if family is None:
        family = family_of(source)
        if "es" in (family, family_of(target)):
            family = "es"
    table = NameTable()
    src = encode(source, table)
    dst = encode(target, table)
    mask = rule_mask(family, parse_rules(rules))
    if exact is not None:
        layer = {src}
        for _ in range(exact):
            nxt = set()
            for c in layer:
                for _, _, _, child in kernel.reducts(c, mask):
                    nxt.add(child)
            layer = nxt
            if len(layer) > max_states:
                return Unknown(len(layer))
        return exact if dst in layer else None
    seen = {src: 0}
    queue = deque([src])
    cut = False
    while queue:
        c = queue.popleft()
        d = seen[c]
        if d >= max_depth:
            cut = True
            continue
        for _, _, _, child in kernel.reducts(c, mask):
            if child == dst:
                return d + 1
            if child not in seen:
                if len(seen) >= max_states:
                    return Unknown(len(seen))
                seen[child] = d + 1
                queue.append(child)
    return Unknown(len(seen)) if cut else None


def normal_forms(t, rules, max_states: int = 20_000) -> Optional[set]:
    """Codes of all normal forms reachable from ``t`` (None on budget)."""
    family = family_of(t)
    table = NameTable()
    mask = rule_mask(family, parse_rules(rules))
    start = encode(t, table)
    seen = {start}
    stack = [start]
    out = set()
    while stack:
        c = stack.pop()
        kids = kernel.reducts(c, mask)
        if not kids:
            out.add(c)
        for _, _, _, child in kids:
            if child not in seen:
                if len(seen) >= max_states:
                    return None
                seen.add(child)
                stack.append(child)
    return out
