"""Rewriting for explicit substitutions and plain lambda terms.

ES rules (L a list context of substitutions)::

    dB   L[\\x.M] N   ->  L[M[x:=N]]
    B    (\\x.M) N    ->  M[x:=N]
    s    M[x:=N]     ->  [N/x]M

Lambda rules::

    beta    (\\x.M) N       ->  [N/x]M
    sigma1  (\\x.M) N N'    ->  (\\x.M N') N
    sigma2  (\\x.\\y.M) N    ->  \\y.(\\x.M) N

``es_sigma1`` (M[x:=N] P -> (M P)[x:=N]) and ``es_sigma4``
(R[x:=T[y:=U]] -> R[x:=T][y:=U]) are auxiliary permutations used only
to check the simulation of pi steps.
"""

from __future__ import annotations

from typing import Callable, Optional

from .esterms import (
    EAbs,
    EApp,
    ESTerm,
    ESub,
    EVar,
    es_all_names,
    es_alpha_key,
    es_children,
    es_free_vars,
    es_substitute,
    es_with_child,
)
from .reduction import ReductionTrace, Step, parse_rules
from .terms import Position, fresh_name


def _rename(m: ESTerm, old: str, new: str) -> ESTerm:
    return es_substitute(EVar(new), old, m)


def _dB(m: ESTerm, distant: bool = True) -> Optional[ESTerm]:
    if not isinstance(m, EApp):
        return None
    n = m.arg
    fn = es_free_vars(n)
    subs = []
    f = m.fun
    while isinstance(f, ESub):
        if not distant:
            return None
        x, body = f.binder, f.body
        if x in fn:
            x2 = fresh_name(x, fn | es_all_names(body))
            body = _rename(body, x, x2)
            x = x2
        subs.append((f.arg, x))
        f = body
    if not isinstance(f, EAbs):
        return None
    out: ESTerm = ESub(n, f.binder, f.body)
    for arg, x in reversed(subs):
        out = ESub(arg, x, out)
    return out


def _B(m: ESTerm) -> Optional[ESTerm]:
    return _dB(m, distant=False)


def _s(m: ESTerm) -> Optional[ESTerm]:
    if isinstance(m, ESub):
        return es_substitute(m.arg, m.binder, m.body)
    return None


def _lbeta(m: ESTerm) -> Optional[ESTerm]:
    if isinstance(m, EApp) and isinstance(m.fun, EAbs):
        return es_substitute(m.arg, m.fun.binder, m.fun.body)
    return None


def _sigma1(m: ESTerm) -> Optional[ESTerm]:
    if not (isinstance(m, EApp) and isinstance(m.fun, EApp) and isinstance(m.fun.fun, EAbs)):
        return None
    lam, n, n2 = m.fun.fun, m.fun.arg, m.arg
    x, body = lam.binder, lam.body
    if x in es_free_vars(n2):
        x2 = fresh_name(x, es_free_vars(n2) | es_all_names(body))
        body = _rename(body, x, x2)
        x = x2
    return EApp(EAbs(x, EApp(body, n2)), n)


def _sigma2(m: ESTerm) -> Optional[ESTerm]:
    if not (isinstance(m, EApp) and isinstance(m.fun, EAbs) and isinstance(m.fun.body, EAbs)):
        return None
    x, inner, n = m.fun.binder, m.fun.body, m.arg
    y, body = inner.binder, inner.body
    fn = es_free_vars(n)
    if y in fn or y == x:
        y2 = fresh_name(y, fn | es_all_names(body) | {x})
        body = _rename(body, y, y2)
        y = y2
    return EAbs(y, EApp(EAbs(x, body), n))


def _es_sigma1(m: ESTerm) -> Optional[ESTerm]:
    if not (isinstance(m, EApp) and isinstance(m.fun, ESub)):
        return None
    sub, p = m.fun, m.arg
    x, body = sub.binder, sub.body
    fp = es_free_vars(p)
    if x in fp:
        x2 = fresh_name(x, fp | es_all_names(body))
        body = _rename(body, x, x2)
        x = x2
    return ESub(sub.arg, x, EApp(body, p))


def _es_sigma4(m: ESTerm) -> Optional[ESTerm]:
    if not (isinstance(m, ESub) and isinstance(m.arg, ESub)):
        return None
    inner = m.arg
    y, t = inner.binder, inner.body
    outside = es_free_vars(m.body) - {m.binder}
    if y in outside:
        y2 = fresh_name(y, outside | es_all_names(t) | {m.binder})
        t = _rename(t, y, y2)
        y = y2
    return ESub(inner.arg, y, ESub(t, m.binder, m.body))


ES_STEPS: dict[str, Callable[[ESTerm], Optional[ESTerm]]] = {
    "dB": _dB,
    "B": _B,
    "s": _s,
    "sigma4": _es_sigma4,
}
LAM_STEPS: dict[str, Callable[[ESTerm], Optional[ESTerm]]] = {
    "beta": _lbeta,
    "sigma1": _sigma1,
    "sigma2": _sigma2,
}
ES_ORDER = ("dB", "B", "s", "sigma1", "sigma4")
LAM_ORDER = ("beta", "sigma1", "sigma2")


def es_step_root(rule: str, m: ESTerm) -> Optional[ESTerm]:
    """Contractum of ``rule`` at the root of an ES term (dB, B, s)."""
    if rule == "sigma1":
        return _es_sigma1(m)
    try:
        return ES_STEPS[rule](m)
    except KeyError:
        raise ValueError(f"unknown ES rule {rule!r}") from None


def lam_step_root(rule: str, m: ESTerm) -> Optional[ESTerm]:
    """Contractum of ``rule`` at the root of a lambda term (beta, sigma1, sigma2)."""
    try:
        return LAM_STEPS[rule](m)
    except KeyError:
        raise ValueError(f"unknown lambda rule {rule!r}") from None


def es_subterm(m: ESTerm, path: Position) -> ESTerm:
    for i in path:
        m = es_children(m)[i]
    return m


def es_replace_at(m: ESTerm, path: Position, new: ESTerm) -> ESTerm:
    if not path:
        return new
    return es_with_child(m, path[0], es_replace_at(es_children(m)[path[0]], path[1:], new))


def _ordered(rules, order) -> list[str]:
    rules = parse_rules(rules)
    unknown = rules - set(order)
    if unknown:
        raise ValueError(f"unknown rules {sorted(unknown)}")
    return [r for r in order if r in rules]


def es_steps(rules, m: ESTerm) -> list[Step]:
    """One-step ES reducts, preorder positions, without alpha-duplicates."""
    return _steps(_ordered(rules, ES_ORDER), es_step_root, m)


def lam_steps(rules, m: ESTerm) -> list[Step]:
    return _steps(_ordered(rules, LAM_ORDER), lam_step_root, m)


def _steps(order, root_fn, m: ESTerm) -> list[Step]:
    out: list[Step] = []
    seen: set = set()
    stack: list[tuple[ESTerm, Position]] = [(m, ())]
    while stack:
        s, path = stack.pop()
        for rule in order:
            red = root_fn(rule, s)
            if red is None:
                continue
            whole = es_replace_at(m, path, red)
            k = es_alpha_key(whole)
            if k not in seen:
                seen.add(k)
                out.append(Step(rule, path, _es_erasing(rule, s), whole))
        kids = es_children(s)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((kids[i], path + (i,)))
    return out


def _es_erasing(rule: str, m: ESTerm) -> bool:
    if rule == "s":
        return m.binder not in es_free_vars(m.body)
    if rule == "beta" and isinstance(m, EApp) and isinstance(m.fun, EAbs):
        return m.fun.binder not in es_free_vars(m.fun.body)
    return False


def es_replay(trace: ReductionTrace, lam: bool = False) -> bool:
    root_fn = lam_step_root if lam else es_step_root
    cur = trace.start
    for s in trace.steps:
        red = root_fn(s.rule, es_subterm(cur, s.path))
        if red is None or es_alpha_key(es_replace_at(cur, s.path, red)) != es_alpha_key(s.result):
            return False
        cur = s.result
    return True
