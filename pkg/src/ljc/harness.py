"""Property sweeps over enumerated term families.

Each suite is a per-term check fanned out over ``enumerate_terms`` and
merged back in enumeration order, so reports are identical for any number
of worker processes.  Instances whose oracles ran out of fuel are counted
as unknown and never as passes or failures.
"""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Optional

from . import kernel
from .classify import is_m, is_whnf
from .codec import NameTable, encode, rule_mask
from .enumerate import enumerate_es_terms, enumerate_terms
from .isn import Holds, isn_betapi, isn_dbeta, isn_lambdaj_new, replay_witness
from .maxred import maxred_dbeta, rb_maxred_betapi
from .quant import (
    Arrow,
    Base,
    Deriv,
    check_derivation_es,
    check_derivation_j,
    derivation_size,
    mk_app,
    mk_many,
    mk_var,
    mset,
)
from .reduction import step_root, steps, wh_decompositions, wh_redex, wh_step
from .search import No, family_of, max_beta_in_betapi, reachable, sn_search
from .simple_types import infer_simple, replay_simple, subformula_audit
from .syntax import parse_term, show, show_es
from .synthesis import bound_check, synthesize_quant
from .terms import CONT, HEAD, GApp, Var, all_names, context_at, free_vars, fresh_name, is_weak_head, positions, replace_at, subterm
from .transform import (
    TransformError,
    anti_substitute,
    erasing_reduce,
    perml_pull,
    perml_push,
    pi_transform,
    subject_reduce,
    substitute_derivation,
)
from .translations import SIMULATIONS, naive, simulation_check, star, translate_derivation

VAR_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    max_size: int = 6
    var_pool: int = 2
    fuel: Optional[int] = None
    jobs: int = 1

    def pool(self) -> tuple[str, ...]:
        if not 0 <= self.var_pool <= len(VAR_NAMES):
            raise ValueError(f"var_pool must be between 0 and {len(VAR_NAMES)}")
        return VAR_NAMES[: self.var_pool]


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    resolved: int = 0
    unknown: int = 0
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        # wall time is left out so that reports compare byte for byte
        return {
            "suite": self.suite,
            "checked": self.checked,
            "resolved": self.resolved,
            "unknown": self.unknown,
            "violations": self.violations,
            "stats": dict(sorted(self.stats.items())),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def summary(self) -> str:
        verdict = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        rate = self.unknown / self.checked if self.checked else 0.0
        stats = ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        line = f"{self.suite}: {verdict}; checked {self.checked}, resolved {self.resolved}, unknown {self.unknown} ({rate:.1%})"
        return line + (f"; {stats}" if stats else "")


@dataclass
class Outcome:
    unknown: bool = False
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def bump(self, key: str, n: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + n

    def keep(self, key: str, value: int) -> None:
        # min_/max_ keys are merged by min/max, everything else is summed
        old = self.stats.get(key)
        if old is None:
            self.stats[key] = value
        else:
            self.stats[key] = min(old, value) if key.startswith("min_") else max(old, value)

    def fail(self, check: str, term: str, detail: str, replay: str, trace=None) -> None:
        v = {"check": check, "term": term, "detail": detail, "replay": replay}
        if trace is not None:
            v["trace"] = trace
        self.violations.append(v)


def _merge_stats(into: dict, stats: dict) -> None:
    for k, v in stats.items():
        if k not in into:
            into[k] = v
        elif k.startswith("min_"):
            into[k] = min(into[k], v)
        elif k.startswith("max_"):
            into[k] = max(into[k], v)
        else:
            into[k] += v


def _name(v) -> str:
    return {True: "yes", False: "no", None: "unknown"}[v.sn]


def _no_trace(v):
    if not isinstance(v, No):
        return None
    return v.witness.to_json(show if family_of(v.witness.start) == "j" else show_es)


# -- suites: strong normalization ------------------------------------------------------------


def check_isn(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    brute = sn_search(t, {"dbeta"}, fuel)
    betapi = sn_search(t, {"beta", "pi"}, fuel)
    for name, system, fn, oracle in (
        ("dbeta", "dbeta", isn_dbeta, brute),
        ("betapi", "betapi", isn_betapi, betapi),
        ("new", "new", isn_lambdaj_new, betapi),
    ):
        v = fn(t, fuel)
        if v.sn is None or oracle.sn is None:
            out.unknown = True
            out.bump(f"unknown_{name}")
            continue
        if v.sn != oracle.sn:
            out.fail(f"isn-{name}", s, f"inductive {_name(v)}, search {_name(oracle)}", f"ljc sn --method both '{s}'", _no_trace(oracle))
        elif isinstance(v, Holds):
            if not replay_witness(v.witness, system):
                out.fail(f"isn-{name}-witness", s, "witness does not replay", f"ljc sn --method isn --emit-witness '{s}'")
            out.keep(f"max_witness_{name}", v.witness.count())
        out.bump("sn" if v.sn else "not_sn")
    return out


def check_equivalence(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    verdicts = {r: sn_search(t, set(r.split("+")), fuel) for r in ("dbeta", "beta+pi", "beta+p2")}
    known = {r: v.sn for r, v in verdicts.items() if v.sn is not None}
    if len(known) < len(verdicts):
        out.unknown = True
    if len(set(known.values())) > 1:
        detail = ", ".join(f"{r}: {_name(v)}" for r, v in verdicts.items())
        out.fail("sn-equivalence", s, detail, f"ljc sn --method brute --rules dbeta '{s}'")
    return out


def check_faithfulness(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    src = sn_search(t, {"dbeta"}, fuel)
    img = star(t)
    dst = sn_search(img, {"dB", "s"}, fuel)
    if src.sn is None or dst.sn is None:
        out.unknown = True
    elif src.sn != dst.sn:
        out.fail("faithful-star", s, f"J {_name(src)}, image {_name(dst)}", f"ljc translate --map star '{s}'")
    # typability transfer along the same translation
    d = synthesize_quant(t, fuel)
    if not isinstance(d, Deriv):
        return out
    tr = translate_derivation("j->es", d)
    e = tr.derivation
    # an argument may need extra typings, which grows the environment and,
    # under an abstraction, the domain of the type; both only ever grow
    if not (check_derivation_es(e) and e.term == img and _grows(d.type, e.type) and d.env.leq(e.env)):
        out.fail("typing-j-es", s, "translated derivation rejected", f"ljc type --system quant --emit-derivation '{s}'")
    out.bump("typed")
    if not tr.env_preserved:
        out.bump("env_grown")
    if e.type != d.type:
        out.bump("type_grown")
    back = translate_derivation("es->j", e)
    if not (check_derivation_j(back.derivation) and back.env_preserved and back.derivation.type == e.type):
        out.fail("typing-es-j", s, "back-translated derivation rejected", f"ljc type --system quant --emit-derivation '{s}'")
    return out


def _grows(a, b) -> bool:
    if a == b:
        return True
    return isinstance(a, Arrow) and isinstance(b, Arrow) and b.dom.includes(a.dom) and _grows(a.cod, b.cod)


def naive_counterexample(fuel=None) -> Outcome:
    """``δ(δ, y.x)`` is SN, its naive image is not."""
    out = Outcome()
    t = parse_term(r"(\x.x(x, w.w))(\x.x(x, w.w), y.x)")
    src = sn_search(t, {"dbeta"}, fuel)
    dst = sn_search(naive(t), {"dB", "s"}, fuel)
    if src.sn is None or dst.sn is None:
        out.unknown = True
    elif not (src.sn and dst.sn is False):
        out.fail("naive-counterexample", show(t), f"J {_name(src)}, naive image {_name(dst)}", f"ljc translate --map naive '{show(t)}'")
    else:
        out.bump("naive_counterexample")
    return out


# -- suites: quantitative types ----------------------------------------------------------------


def check_bound(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    v = sn_search(t, {"dbeta"}, fuel)
    if v.sn is None:
        out.unknown = True
        return out
    d = synthesize_quant(t, fuel)
    typed = isinstance(d, Deriv)
    if v.sn is False:
        if typed:
            out.fail("non-sn-typed", s, "a derivation was built for a diverging term", f"ljc type --system quant '{s}'")
        return out
    if not typed:
        out.unknown = True
        return out
    rep = check_derivation_j(d)
    if not rep or d.term != t:
        out.fail("synth-check", s, "; ".join(rep.errors[:3]) or "wrong subject", f"ljc type --system quant --emit-derivation '{s}'")
        return out
    b = bound_check(t, d, fuel)
    if b.max_nonerasing is None or b.maxred is None:
        out.unknown = True
        return out
    if not b.ok:
        out.fail("bound", s, f"size {b.size}, non-erasing {b.max_nonerasing}, longest {b.maxred}", f"ljc type --system quant '{s}'")
    out.keep("min_margin", b.size - b.max_nonerasing)
    out.keep("max_margin", b.size - b.max_nonerasing)
    out.bump("total_margin", b.size - b.max_nonerasing)
    out.keep("max_size", b.size)
    betapi = sn_search(t, {"beta", "pi"}, fuel)
    if betapi.sn is False:
        out.fail("typed-not-sn-betapi", s, "typed term diverges under beta and pi", f"ljc sn --rules beta,pi '{s}'")
    return out


def _subterm_splits(t):
    """``(t', x, u)`` with ``[u/x]t' = t``, replacing one occurrence of a
    subterm whose free variables are not bound above it."""
    names = free_vars(t)
    for p in positions(t):
        if not p:
            continue
        u = subterm(t, p)
        bound = set()
        cur = t
        for i in p:
            if hasattr(cur, "binder") and (not isinstance(cur, GApp) or i == CONT):
                bound.add(cur.binder)
            cur = subterm(cur, (i,))
        if free_vars(u) & bound:
            continue
        x = fresh_name("v", names | bound | all_names(t))
        yield replace_at(t, p, Var(x)), x, u


def check_lemmas(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    d = synthesize_quant(t, fuel)
    if not isinstance(d, Deriv):
        out.unknown = True
        return out
    n = derivation_size(d)
    for t2, x, u in _subterm_splits(t):
        try:
            d_t, d_u, m = anti_substitute(d, t2, x, u)
            back = substitute_derivation(d_t, x, d_u)
        except TransformError as e:
            out.fail("substitution", s, f"{show(t2)} / {x}: {e}", f"ljc type --system quant '{s}'")
            continue
        out.bump("substitution")
        sizes = (derivation_size(d_t), derivation_size(d_u), len(m))
        if not (check_derivation_j(d_t) and derivation_size(back) == sizes[0] + sizes[1] - sizes[2] == n and back.term == t):
            out.fail("substitution-size", s, f"{show(t2)} / {x}: sizes {sizes}, whole {n}", f"ljc type --system quant '{s}'")
    for st in steps({"dbeta"}, t):
        if not st.erasing:
            try:
                d2 = subject_reduce(d, st.path)
            except TransformError as e:
                out.fail("subject-reduction", s, f"at {list(st.path)}: {e}", f"ljc reduce --rules dbeta --trace '{s}'")
                continue
            out.bump("subject_reduction")
            if not (check_derivation_j(d2) and d2.term == st.result and d2.env == d.env and derivation_size(d2) < n):
                out.fail("subject-reduction", s, f"at {list(st.path)}", f"ljc reduce --rules dbeta --trace '{s}'")
        elif _weak_head(t, st.path):
            e = erasing_reduce(d, st.path)
            out.bump("erasing")
            if not (check_derivation_j(e.derivation) and e.inequality_holds and e.derivation.env.leq(d.env)):
                out.fail("erasing-step", s, f"at {list(st.path)}: {e.size_before} vs {e.size_after}+{e.sides_size}", f"ljc reduce --rules dbeta --trace '{s}'")
    for st in steps({"pi"}, t):
        if _under_abs(t, st.path):
            continue
        d2 = pi_transform(d, st.path)
        out.bump("pi")
        if not (check_derivation_j(d2) and d2.term == st.result and d2.env.leq(d.env) and derivation_size(d2) <= n):
            out.fail("pi-transform", s, f"at {list(st.path)}", f"ljc reduce --rules pi --trace '{s}'")
    _perml(d, out, s)
    return out


def _weak_head(t, path) -> bool:
    return is_weak_head(context_at(t, path))


def _under_abs(t, path) -> bool:
    cur = t
    for i in path:
        if not isinstance(cur, GApp):
            return True
        cur = subterm(cur, (i,))
    return False


def _perml(d, out: Outcome, s: str) -> None:
    # every abstraction node whose body is an app chain: pull, then push back
    stack = [d]
    while stack:
        n = stack.pop()
        stack.extend(n.children)
        if n.rule != "abs" or n.children[0].rule != "app":
            continue
        try:
            pulled = perml_pull(n)
        except TransformError:
            continue
        pushed = perml_push(pulled)
        out.bump("perml")
        ok = check_derivation_j(pulled) and check_derivation_j(pushed)
        if not ok or not (derivation_size(pulled) == derivation_size(n) == derivation_size(pushed)) or pushed.term != n.term:
            out.fail("perml", s, f"at {show(n.term)}", f"ljc type --system quant --emit-derivation '{s}'")


# -- suites: classifiers, simulations, maxred, simple types ----------------------------------------


def check_classifiers(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    decs = wh_decompositions(t)
    if len(decs) > 1:
        out.fail("wh-unique", s, f"{len(decs)} decompositions", f"ljc reduce --rules dbeta --trace '{s}'")
    if (wh_step(t) is None) != is_whnf(t):
        out.fail("whnf", s, "whnf flag disagrees with the weak-head step", f"ljc parse '{s}'")
    if decs != ([wh_redex(t)] if wh_redex(t) is not None else []):
        out.fail("wh-position", s, "weak-head redex disagrees with the decomposition", f"ljc parse '{s}'")
    dsteps = steps({"dbeta"}, t)
    if is_m(t) == bool(dsteps):
        out.fail("normal-form", s, "normal-form flag disagrees with the reducts", f"ljc nf --rules dbeta '{s}'")
    pis = steps({"pi"}, t)
    if not dsteps:
        for st in pis:
            if steps({"dbeta"}, st.result):
                out.fail("pi-preserves-nf", s, f"pi at {list(st.path)} creates a dbeta redex", f"ljc reduce --rules pi --trace '{s}'")
    betas = steps({"beta"}, t)
    for b in betas:
        for p in pis:
            out.bump("peaks")
            verdict = _commutes(b.result, p.result)
            if verdict is None:
                out.unknown = True
            elif not verdict:
                out.fail("beta-pi-commute", s, f"beta at {list(b.path)}, pi at {list(p.path)}", f"ljc reduce --rules beta,pi --trace '{s}'")
    return out


def _closure(code, mask: int, limit: int = 5000) -> Optional[set]:
    seen = {code}
    stack = [code]
    while stack:
        for _, _, _, child in kernel.reducts(stack.pop(), mask):
            if child not in seen:
                if len(seen) >= limit:
                    return None
                seen.add(child)
                stack.append(child)
    return seen


def _commutes(t1, t2) -> Optional[bool]:
    """Is there s with t1 ->pi* s and t2 ->beta* s?"""
    table = NameTable()
    a = _closure(encode(t1, table), rule_mask("j", {"pi"}))
    b = _closure(encode(t2, table), rule_mask("j", {"beta"}))
    if a is None or b is None:
        return None
    return bool(a & b)


def check_simulations_j(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    for (m, rule) in SIMULATIONS:
        if m == "bullet2":
            continue
        rep = simulation_check(m, rule, [t])
        out.bump(f"{m}:{rule}", rep.steps_checked)
        if rep.unknown:
            out.unknown = True
        for _, path, _ in rep.counterexamples:
            out.fail(f"simulation-{m}-{rule}", s, f"step at {list(path)}", f"ljc translate --map {m} '{s}'")
    return out


def check_simulations_es(m, fuel=None) -> Outcome:
    out = Outcome()
    s = show_es(m)
    for (name, rule) in SIMULATIONS:
        if name != "bullet2":
            continue
        rep = simulation_check(name, rule, [m])
        out.bump(f"{name}:{rule}", rep.steps_checked)
        if rep.unknown:
            out.unknown = True
        for _, path, _ in rep.counterexamples:
            out.fail(f"simulation-{name}-{rule}", s, f"step at {list(path)}", f"ljc translate --calculus es --map {name} '{s}'")
    return out


def check_maxred(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    brute = sn_search(t, {"dbeta"}, fuel)
    eq = maxred_dbeta(t, fuel)
    if brute.sn is None or (eq is None and brute.sn):
        out.unknown = True
    elif (eq is None) != (brute.sn is False) or (eq is not None and eq != brute.maxred):
        out.fail("maxred-dbeta", s, f"equations {eq}, search {_name(brute)} {getattr(brute, 'maxred', '')}", f"ljc sn --method brute '{s}'")
    rb = rb_maxred_betapi(t, fuel)
    rbb = max_beta_in_betapi(t, fuel)
    if rbb.sn is None or (rb is None and rbb.sn):
        out.unknown = True
    elif (rb is None) != (rbb.sn is False) or (rb is not None and rb != rbb.maxred):
        out.fail("rbmaxred", s, f"equations {rb}, search {getattr(rbb, 'maxred', _name(rbb))}", f"ljc sn --method brute --rules beta,pi '{s}'")
    if rb is not None:
        for st in steps({"pi"}, t):
            rb2 = rb_maxred_betapi(st.result, fuel)
            if rb2 is None:
                out.unknown = True
            elif rb2 != rb:
                out.fail("rbmaxred-pi", s, f"pi at {list(st.path)}: {rb} becomes {rb2}", f"ljc reduce --rules pi --trace '{s}'")
        out.keep("max_rbmaxred", rb)
    if eq is not None:
        out.keep("max_maxred", eq)
    return out


def check_simple(t, fuel=None) -> Outcome:
    out = Outcome()
    s = show(t)
    res = infer_simple(t)
    if res is None:
        out.bump("untypable")
        return out
    out.bump("typable")
    _, _, d = res
    try:
        replay_simple(d)
    except ValueError as e:
        out.fail("simple-replay", s, str(e), f"ljc type --system simple '{s}'")
    v = sn_search(t, {"dbeta"}, fuel)
    if v.sn is None:
        out.unknown = True
    elif not v.sn:
        out.fail("simple-sn", s, "typable but diverging", f"ljc sn --method brute '{s}'", _no_trace(v))
    if is_m(t):
        out.bump("audited")
        if not subformula_audit(d):
            out.fail("subformula", s, "a type outside the subformulas of the conclusion", f"ljc type --system simple '{s}'")
    return out


# -- worked cases -------------------------------------------------------------------------------

DELTA = r"\y.y(y, z.z)"
DELTA_W = r"\y.y(y, w.w)"
OMEGA = f"({DELTA})({DELTA}, x.x)"
STUCK = f"w(u, v.{DELTA})({DELTA}, x.x)"
DECOMPOSITION = r"x1(x2, y1.(\a.a)(\a.a, z.\a.a))(x3, y.(\a.a)(\a.a, b.b))"
T0 = f"({DELTA_W})({DELTA_W}, x.z)"


def _case_omega(fuel) -> tuple[bool, str]:
    t = parse_term(OMEGA)
    loop = reachable(t, t, {"beta"})
    v = sn_search(t, {"beta"}, fuel)
    return isinstance(loop, int) and v.sn is False, f"back to itself in {loop} beta step(s); search {_name(v)}"


def _case_stuck(fuel) -> tuple[bool, str]:
    t = parse_term(STUCK)
    no_beta = not steps({"beta"}, t)
    vs = {r: sn_search(t, set(r.split("+")), fuel) for r in ("dbeta", "beta+pi", "beta+p2")}
    ok = no_beta and all(v.sn is False for v in vs.values())
    return ok, f"beta-normal {no_beta}; " + ", ".join(f"{r} {_name(v)}" for r, v in vs.items())


def _case_decomposition(fuel) -> tuple[bool, str]:
    t = parse_term(DECOMPOSITION)
    decs = wh_decompositions(t)
    root = step_root("dbeta", t) is not None
    ok = decs == [(HEAD, CONT)] and root and wh_redex(t) == (HEAD, CONT)
    return ok, f"unrestricted redex at the root {root}; restricted decompositions {[list(p) for p in decs]}"


def _case_pi_pair(fuel) -> tuple[bool, str]:
    b = Base
    s, s1, s2, tau = b("s"), b("s1"), b("s2"), b("t")
    rho = [Arrow(mset(s), tau), Arrow(mset(s), Arrow(mset(tau), tau))]
    t1 = parse_term("x(y, a.z)(w, b.b(b, c.c))")
    inner = t1.head

    def phi(r):
        return mk_app(inner, mk_many([mk_var("x", s1)]), mk_many([mk_var("y", s2)]), mk_var("z", r), ())

    c = t1.cont
    psi = mk_app(c, mk_many([mk_var("b", Arrow(mset(tau), tau))]), mk_many([mk_var("b", tau)]), mk_var("c", tau), [(mset(tau), tau)])
    d1 = mk_app(t1, mk_many([phi(r) for r in rho]), mk_many([mk_var("w", s), mk_var("w", s)]), psi, [(mset(s), r.cod) for r in rho])
    d2 = pi_transform(d1, ())
    g1, g2 = d1.env, d2.env
    ok = (
        bool(check_derivation_j(d1))
        and bool(check_derivation_j(d2))
        and g2.leq(g1)
        and g1 != g2
        and g1.get("x") == mset(s1, s1)
        and g2.get("x") == mset(s1)
    )
    return ok, f"x: {g1.get('x')} becomes {g2.get('x')}; sizes {derivation_size(d1)} -> {derivation_size(d2)}"


def _case_t0(fuel) -> tuple[bool, str]:
    t = parse_term(T0)
    d = synthesize_quant(t, fuel)
    if not isinstance(d, Deriv):
        return False, "no derivation within the fuel"
    ok = bool(check_derivation_j(d)) and d.env.dom() == {"z"} and d.env.get("z") == mset(d.type)
    return ok, f"z:{d.env.get('z')} |- {d.type}"


WORKED_CASES: dict[str, Callable] = {
    "omega-loops": _case_omega,
    "stuck-beta-normal": _case_stuck,
    "unique-decomposition": _case_decomposition,
    "pi-pair-shrinks": _case_pi_pair,
    "t0-types": _case_t0,
}


def worked_cases(fuel=None) -> SuiteReport:
    rep = SuiteReport("worked-cases")
    for name, case in WORKED_CASES.items():
        ok, detail = case(fuel)
        rep.checked += 1
        rep.resolved += 1
        if not ok:
            rep.violations.append({"check": name, "term": "", "detail": detail, "replay": "ljc verify --suite worked-cases"})
        rep.stats[name] = detail
    return rep


# -- driver ------------------------------------------------------------------------------------------

SUITES: dict[str, tuple[Callable, ...]] = {
    "isn": (check_isn,),
    "equivalence": (check_equivalence,),
    "faithfulness": (check_faithfulness,),
    "bound": (check_bound,),
    "classifiers": (check_classifiers,),
    "lemmas": (check_lemmas,),
    "simulations": (check_simulations_j, check_simulations_es),
    "maxred": (check_maxred,),
    "simple": (check_simple,),
}
SUITE_NAMES = tuple(SUITES) + ("worked-cases",)


def _run_one(fn, fuel, t) -> Outcome:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    return fn(t, fuel)


def _instances(config: SuiteConfig, fn) -> Iterable:
    if fn is check_simulations_es:
        return enumerate_es_terms(config.max_size, config.pool())
    return enumerate_terms(config.max_size, config.pool())


def run_suite(config: SuiteConfig) -> SuiteReport:
    start = time.perf_counter()
    if config.suite == "worked-cases":
        rep = worked_cases(config.fuel)
        rep.wall_time = time.perf_counter() - start
        return rep
    if config.suite not in SUITES:
        raise ValueError(f"unknown suite {config.suite!r}; expected one of {list(SUITE_NAMES)}")
    rep = SuiteReport(config.suite)
    extras = [naive_counterexample] if config.suite == "faithfulness" else []
    for fn in SUITES[config.suite]:
        terms = list(_instances(config, fn))
        work = partial(_run_one, fn, config.fuel)
        if config.jobs > 1:
            with ProcessPoolExecutor(config.jobs) as ex:
                outcomes = list(ex.map(work, terms, chunksize=max(1, len(terms) // (config.jobs * 8))))
        else:
            outcomes = [work(t) for t in terms]
        for o in outcomes:
            _absorb(rep, o)
    for extra in extras:
        _absorb(rep, extra(config.fuel))
    rep.wall_time = time.perf_counter() - start
    return rep


def _absorb(rep: SuiteReport, o: Outcome) -> None:
    rep.checked += 1
    if o.unknown:
        rep.unknown += 1
    else:
        rep.resolved += 1
    rep.violations.extend(o.violations)
    _merge_stats(rep.stats, o.stats)
