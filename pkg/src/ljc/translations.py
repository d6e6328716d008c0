"""Maps between generalized applications, explicit substitutions and
plain lambda terms, their action on quantitative derivations, and
step-simulation checks.

Term maps (J = generalized applications, ES = explicit substitutions)::

    naive        J -> ES   t(u, y.r)  =>  r[y := t u]
    star         J -> ES   t(u, y.r)  =>  ({y1 y2 / y} r)[y2 := u][y1 := t]
    bullet       ES -> J   M N => M(N, x.x);  M[x:=N] => I(N, x.M)
    bullet2      ES -> J   M N => I(N, y.M(y, z.z))
    sharp        ES -> lam M[x:=N] => (\\x.M) N
    jlam         J -> lam  t(u, y.r) => (\\y.r) (t u)
    star_sharp   J -> lam  sharp after star
    star_bullet  J -> J    bullet after star

``y1``/``y2`` are spelled ``y§1``/``y§2`` (numbers bumped on collision).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .es import es_steps
from .esterms import EAbs, EApp, ESTerm, ESub, EVar, es_all_names, es_free_vars, es_substitute
from .quant import (
    O,
    Arrow,
    Deriv,
    mk_abs,
    mk_app,
    mk_es_app,
    mk_many,
    mk_sub,
    mk_var,
    mset,
    retarget,
    take,
)
from .reduction import steps
from .search import Unknown, reachable
from .terms import Abs, GApp, I, Term, Var, free_vars, fresh_name

# -- term maps -------------------------------------------------------------------------


def pair_names(y: str, avoid) -> tuple[str, str]:
    k = 1
    while f"{y}§{k}" in avoid or f"{y}§{k + 1}" in avoid:
        k += 2
    return f"{y}§{k}", f"{y}§{k + 1}"


def naive(t: Term) -> ESTerm:
    if isinstance(t, Var):
        return EVar(t.name)
    if isinstance(t, Abs):
        return EAbs(t.binder, naive(t.body))
    return ESub(EApp(naive(t.head), naive(t.arg)), t.binder, naive(t.cont))


def _star_app(s: ESTerm, u: ESTerm, y: str, r: ESTerm) -> ESTerm:
    y1, y2 = pair_names(y, es_free_vars(u) | es_free_vars(r))
    body = es_substitute(EApp(EVar(y1), EVar(y2)), y, r)
    return ESub(s, y1, ESub(u, y2, body))


def star(t: Term) -> ESTerm:
    if isinstance(t, Var):
        return EVar(t.name)
    if isinstance(t, Abs):
        return EAbs(t.binder, star(t.body))
    return _star_app(star(t.head), star(t.arg), t.binder, star(t.cont))


def bullet(m: ESTerm) -> Term:
    if isinstance(m, EVar):
        return Var(m.name)
    if isinstance(m, EAbs):
        return Abs(m.binder, bullet(m.body))
    if isinstance(m, EApp):
        return GApp(bullet(m.fun), bullet(m.arg), "x", Var("x"))
    return GApp(I, bullet(m.arg), m.binder, bullet(m.body))


def bullet2(m: ESTerm) -> Term:
    if isinstance(m, EVar):
        return Var(m.name)
    if isinstance(m, EAbs):
        return Abs(m.binder, bullet2(m.body))
    if isinstance(m, EApp):
        f = bullet2(m.fun)
        fv = free_vars(f)
        y = "y" if "y" not in fv else fresh_name("y", fv)
        return GApp(I, bullet2(m.arg), y, GApp(f, Var(y), "z", Var("z")))
    return GApp(I, bullet2(m.arg), m.binder, bullet2(m.body))


def sharp(m: ESTerm) -> ESTerm:
    if isinstance(m, EVar):
        return m
    if isinstance(m, EAbs):
        return EAbs(m.binder, sharp(m.body))
    if isinstance(m, EApp):
        return EApp(sharp(m.fun), sharp(m.arg))
    return EApp(EAbs(m.binder, sharp(m.body)), sharp(m.arg))


def jlam(t: Term) -> ESTerm:
    if isinstance(t, Var):
        return EVar(t.name)
    if isinstance(t, Abs):
        return EAbs(t.binder, jlam(t.body))
    return EApp(EAbs(t.binder, jlam(t.cont)), EApp(jlam(t.head), jlam(t.arg)))


def star_sharp(t: Term) -> ESTerm:
    return sharp(star(t))


def star_bullet(t: Term) -> Term:
    return bullet(star(t))


MAPS: dict[str, tuple[str, str, Callable]] = {
    "naive": ("j", "es", naive),
    "star": ("j", "es", star),
    "bullet": ("es", "j", bullet),
    "bullet2": ("es", "j", bullet2),
    "sharp": ("es", "lam", sharp),
    "jlam": ("j", "lam", jlam),
    "star_sharp": ("j", "lam", star_sharp),
    "star_bullet": ("j", "j", star_bullet),
}


def translate(name: str, t):
    try:
        return MAPS[name][2](t)
    except KeyError:
        raise ValueError(f"unknown map {name!r}; expected one of {sorted(MAPS)}") from None


# -- derivations --------------------------------------------------------------------------


@dataclass
class TranslatedDerivation:
    derivation: Deriv
    env_preserved: bool


def translate_derivation(direction: str, d: Deriv) -> TranslatedDerivation:
    """Carry a checked derivation across ``star`` (``j->es``) or
    ``bullet`` (``es->j``).  ES->J keeps the environment and the type.
    J->ES may need extra typings of an argument when some but not all
    pairs of an app node have an empty domain; the environment then grows,
    and so does the domain of any abstraction binding that argument."""
    if direction in ("j->es", "J→ES", "j2es"):
        out = _jes(d)
    elif direction in ("es->j", "ES→J", "es2j"):
        out = _esj(d)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return TranslatedDerivation(out, out.env == d.env)


def _jes(d: Deriv) -> Deriv:
    if d.rule == "many":
        return mk_many(_jes(c) for c in d.children)
    t = d.term
    if d.rule == "var":
        return mk_var(t.name, d.type, es=True)
    if d.rule == "abs":
        body = _jes(d.children[0])
        return mk_abs(EAbs(t.binder, body.term), body)
    d_s, d_u, d_r = (_jes(c) for c in d.children)
    s, u, r = d_s.term, d_u.term, d_r.term
    y = t.binder
    y1, y2 = pair_names(y, es_free_vars(u) | es_free_vars(r))
    if not d.pairs:
        inner = mk_sub(ESub(u, y2, r), d_r, d_u)
        return mk_sub(ESub(s, y1, inner.term), inner, d_s)
    app_term = EApp(EVar(y1), EVar(y2))
    witness = d_u.children[0]
    apps, extra = [], 0
    for m, tau in d.pairs:
        fun = mk_var(y1, Arrow(m, tau), es=True)
        if m:
            arg = mk_many(mk_var(y2, a, es=True) for a in m)
        else:
            arg = mk_many([mk_var(y2, witness.type, es=True)])
            extra += 1
        apps.append(mk_es_app(app_term, fun, arg))
    phi = es_substitute_derivation(d_r, y, mk_many(apps))
    us = list(d_u.children) if any(m for m, _ in d.pairs) else []
    d_u2 = mk_many(us + [witness] * extra)
    inner = mk_sub(ESub(u, y2, phi.term), phi, d_u2)
    return mk_sub(ESub(s, y1, inner.term), inner, d_s)


def _identity_at(tau) -> Deriv:
    return mk_abs(I, mk_var("z", tau))


def _esj(d: Deriv) -> Deriv:
    if d.rule == "many":
        return mk_many(_esj(c) for c in d.children)
    m = d.term
    if d.rule == "var":
        return mk_var(m.name, d.type)
    if d.rule == "abs":
        body = _esj(d.children[0])
        return mk_abs(Abs(m.binder, body.term), body)
    if d.rule == "app":
        fun, arg = _esj(d.children[0]), _esj(d.children[1])
        term = GApp(fun.term, arg.term, "x", Var("x"))
        return mk_app(term, mk_many([fun]), arg, mk_var("x", d.type), [(fun.type.dom, fun.type.cod)])
    body, arg = _esj(d.children[0]), _esj(d.children[1])
    term = GApp(I, arg.term, m.binder, body.term)
    taus = body.env.get(m.binder)
    if taus:
        head = mk_many(_identity_at(tau) for tau in taus)
        return mk_app(term, head, arg, body, [(mset(tau), tau) for tau in taus])
    return mk_app(term, mk_many([_identity_at(O)]), arg, body, ())


# substitution of derivations on ES terms, mirroring the J version


def _es_avoid(m: ESTerm, avoid: frozenset) -> ESTerm:
    if isinstance(m, EVar):
        return m
    if isinstance(m, EApp):
        return EApp(_es_avoid(m.fun, avoid), _es_avoid(m.arg, avoid))
    x, body = m.binder, m.body
    if x in avoid:
        x2 = fresh_name(x, avoid | es_all_names(body))
        body = es_substitute(EVar(x2), x, body)
        x = x2
    body = _es_avoid(body, avoid)
    if isinstance(m, EAbs):
        return EAbs(x, body)
    return ESub(_es_avoid(m.arg, avoid), x, body)


def es_substitute_derivation(d_t: Deriv, x: str, d_u: Deriv) -> Deriv:
    u = d_u.term
    t2 = _es_avoid(d_t.term, frozenset(es_free_vars(u) | {x}))

    def sub(d: Deriv, us: list) -> Deriv:
        if not d.env.get(x):
            return d
        if d.rule == "var":
            return us[0]
        pool = list(us)
        kids = [sub(c, take(pool, c.env.get(x))) for c in d.children]
        if d.rule == "many":
            return mk_many(kids)
        t = d.term
        if d.rule == "abs":
            return mk_abs(EAbs(t.binder, kids[0].term), kids[0])
        if d.rule == "app":
            return mk_es_app(EApp(kids[0].term, kids[1].term), *kids)
        return mk_sub(ESub(kids[1].term, t.binder, kids[0].term), kids[0], kids[1])

    out = sub(retarget(d_t, t2), list(d_u.children))
    return retarget(out, es_substitute(u, x, d_t.term))


# -- simulations ------------------------------------------------------------------------------

SIMULATIONS = {
    # (map, source rule): (target rules, exact step count or None for "one or more")
    ("jlam", "dbeta"): ({"beta", "sigma1"}, None),
    ("star_sharp", "beta"): ({"beta"}, None),
    ("star_sharp", "p2"): ({"sigma2"}, 2),
    ("bullet2", "s"): ({"beta"}, 1),
    ("bullet2", "B"): ({"beta"}, 1),
    ("naive", "pi"): ({"sigma1", "sigma4"}, 2),
    ("star", "pi"): ({"sigma4"}, 2),
}


@dataclass
class SimulationReport:
    map: str
    source_rule: str
    steps_checked: int = 0
    unknown: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def simulation_check(map_name: str, source_rule: str, instances: Iterable, expected=None) -> SimulationReport:
    """For every ``source_rule`` step t1 -> t2 of each instance, check the
    images are related by the expected target steps."""
    rules, exact = expected if expected is not None else SIMULATIONS[(map_name, source_rule)]
    src_family, dst_family, fn = MAPS[map_name]
    rep = SimulationReport(map_name, source_rule)
    dst = "es" if dst_family == "es" or rules & {"sigma4", "dB", "B", "s"} else dst_family
    for t in instances:
        stepper = (lambda s: steps({source_rule}, s)) if src_family == "j" else (lambda s: es_steps({source_rule}, s))
        image = fn(t)
        for st in stepper(t):
            rep.steps_checked += 1
            target = fn(st.result)
            found = reachable(image, target, rules, exact=exact, family=dst)
            if isinstance(found, Unknown):
                rep.unknown += 1
            elif found is None:
                rep.counterexamples.append((t, st.path, st.result))
    return rep
