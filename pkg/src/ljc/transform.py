"""Constructive transformations of quantitative derivations.

Each function takes derivations and returns a new derivation over the
expected subject; callers re-check with ``check_derivation_j``.  Binders of
the subject are renamed first whenever the construction would otherwise
capture, and the result is finally retargeted onto the exact term the
reduction functions produce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .quant import (
    Arrow,
    Deriv,
    MultiType,
    derivation_size,
    merge,
    mk_abs,
    mk_app,
    mk_many,
    mk_var,
    retarget,
    select,
    take,
    union,
)
from .reduction import _dbeta, _pi, hygienic_shape, is_erasing, plug_frames
from .terms import (
    CONT,
    HEAD,
    Abs,
    GApp,
    Position,
    Term,
    Var,
    all_names,
    alpha_eq,
    context_at,
    free_vars,
    fresh_name,
    is_weak_head,
    rename_free,
    replace_at,
    substitute,
    subterm,
)


class TransformError(ValueError):
    pass


# -- renaming helpers ----------------------------------------------------------------


def avoid_binders(t: Term, avoid) -> Term:
    """An alpha-variant of ``t`` none of whose binders lie in ``avoid``."""
    avoid = frozenset(avoid)
    if isinstance(t, Var):
        return t
    if isinstance(t, Abs):
        x, body = t.binder, t.body
        if x in avoid:
            x2 = fresh_name(x, avoid | all_names(body))
            body = rename_free(body, x, x2)
            x = x2
        return Abs(x, avoid_binders(body, avoid))
    z, cont = t.binder, t.cont
    if z in avoid:
        z2 = fresh_name(z, avoid | all_names(cont))
        cont = rename_free(cont, z, z2)
        z = z2
    return GApp(avoid_binders(t.head, avoid), avoid_binders(t.arg, avoid), z, avoid_binders(cont, avoid))


def plain_subst(u: Term, x: str, t: Term) -> Term:
    """``[u/x]t`` without renaming; callers guarantee no capture."""
    if isinstance(t, Var):
        return u if t.name == x else t
    if isinstance(t, Abs):
        return t if t.binder == x else Abs(t.binder, plain_subst(u, x, t.body))
    cont = t.cont if t.binder == x else plain_subst(u, x, t.cont)
    return GApp(plain_subst(u, x, t.head), plain_subst(u, x, t.arg), t.binder, cont)


def open_shape(h: Term, avoid: frozenset[str]):
    """``hygienic_shape`` with the lambda binder also kept out of the free
    variables of the frames, so the abstraction can move across them."""
    shape = hygienic_shape(h, avoid)
    if shape is None:
        return None
    frames, x, s = shape
    outside = frozenset().union(*(free_vars(a) | free_vars(b) for a, b, _ in frames)) if frames else frozenset()
    if x in outside:
        x2 = fresh_name(x, avoid | outside | {z for _, _, z in frames} | all_names(s))
        s = rename_free(s, x, x2)
        x = x2
    return frames, x, s


def _frames_of(t: Term, depth: Optional[int] = None):
    frames = []
    while isinstance(t, GApp) and (depth is None or len(frames) < depth):
        frames.append((t.head, t.arg, t.binder))
        t = t.cont
    return frames, t


# -- substitution ------------------------------------------------------------------


def substitute_derivation(d_t: Deriv, x: str, d_u: Deriv) -> Deriv:
    """From ``Γ; x:M ⊢ t:σ`` and ``Δ ⊢ u:M`` build ``Γ ∧ Δ ⊢ [u/x]t : σ``.

    The size is ``size(d_t) + size(d_u) - |M|``.
    """
    t, u = d_t.term, d_u.term
    if x not in free_vars(t):
        raise TransformError(f"{x} is not free in the subject")
    if d_u.rule != "many" or d_t.env.get(x) != d_u.type:
        raise TransformError(f"argument typed {d_u.type}, substitution needs {d_t.env.get(x)}")
    t2 = avoid_binders(t, free_vars(u) | {x})
    out = _sub(retarget(d_t, t2), x, list(d_u.children))
    return retarget(out, substitute(u, x, t))


def _sub(d: Deriv, x: str, us: list[Deriv]) -> Deriv:
    # ``us`` types exactly d.env(x)
    if not d.env.get(x):
        return d
    if d.rule == "var":
        return us[0]
    pool = list(us)
    kids = [_sub(c, x, take(pool, c.env.get(x))) for c in d.children]
    if d.rule == "many":
        return mk_many(kids)
    if d.rule == "abs":
        return mk_abs(Abs(d.term.binder, kids[0].term), kids[0])
    t = d.term
    return mk_app(GApp(kids[0].term, kids[1].term, t.binder, kids[2].term), *kids, d.pairs)


def anti_substitute(d: Deriv, t: Term, x: str, u: Term) -> tuple[Deriv, Deriv, MultiType]:
    """Split a derivation of ``[u/x]t`` into ``Γ; x:M ⊢ t`` and ``Δ ⊢ u:M``."""
    if x not in free_vars(t):
        raise TransformError(f"{x} is not free in {t}")
    t2 = avoid_binders(t, free_vars(u) | {x})
    target = plain_subst(u, x, t2)
    if not alpha_eq(d.term, target):
        raise TransformError("derivation subject is not the substituted term")
    dt, us = _anti(retarget(d, target), t2, x, u)
    d_u = mk_many(us)
    return retarget(dt, t), d_u, d_u.type


def _anti(d: Deriv, t: Term, x: str, u: Term) -> tuple[Deriv, list[Deriv]]:
    if d.rule == "many":
        parts = [_anti(c, t, x, u) for c in d.children]
        return mk_many(p[0] for p in parts), [v for p in parts for v in p[1]]
    if x not in free_vars(t):
        return d, []
    if isinstance(t, Var):
        return mk_var(x, d.type), [d]
    if isinstance(t, Abs):
        body, us = _anti(d.children[0], t.body, x, u)
        return mk_abs(t, body), us
    h, hu = _anti(d.children[0], t.head, x, u)
    a, au = _anti(d.children[1], t.arg, x, u)
    if t.binder == x:
        c, cu = d.children[2], []
    else:
        c, cu = _anti(d.children[2], t.cont, x, u)
    return mk_app(t, h, a, c, d.pairs), hu + au + cu


# -- moving abstractions across distant contexts ------------------------------------------


def perml_push(d: Deriv) -> Deriv:
    """``D[\\x.t] : M→τ`` becomes ``\\x.D[t] : M→τ`` with the same size."""
    if d.rule == "many":
        return mk_many(perml_push(c) for c in d.children)
    frames, lam = _frames_of(d.term)
    if not isinstance(lam, Abs):
        raise TransformError("subject is not an abstraction under a distant context")
    x, s = lam.binder, lam.body
    outside = set()
    for h, a, z in frames:
        outside |= free_vars(h) | free_vars(a) | {z}
    if x in outside:
        x2 = fresh_name(x, outside | all_names(s))
        d = retarget(d, plug_frames(frames, Abs(x2, rename_free(s, x, x2))))
    return _push(d)


def _push(d: Deriv) -> Deriv:
    if d.rule == "abs":
        return d
    h, a, c = d.children
    inner = _push(c)
    body = inner.children[0]
    t = d.term
    app = mk_app(GApp(t.head, t.arg, t.binder, body.term), h, a, body, d.pairs)
    return mk_abs(Abs(inner.term.binder, app.term), app)


def perml_pull(d: Deriv, depth: Optional[int] = None) -> Deriv:
    """``\\x.D[t]`` becomes ``D[\\x.t]``, moving across ``depth`` frames
    (all continuation frames by default)."""
    if d.rule == "many":
        return mk_many(perml_pull(c, depth) for c in d.children)
    if d.rule != "abs":
        raise TransformError("pull needs an abstraction")
    x = d.term.binder
    frames, _ = _frames_of(d.term.body, depth)
    for h, a, z in frames:
        if x in free_vars(h) or x in free_vars(a) or x == z:
            raise TransformError(f"binder {x} would escape or be captured")
    return _pull(d, len(frames))


def _pull(d: Deriv, depth: int) -> Deriv:
    if depth == 0:
        return d
    x = d.term.binder
    app = d.children[0]
    h, a, c = app.children
    t = app.term
    moved = _pull(mk_abs(Abs(x, c.term), c), depth - 1)
    return mk_app(GApp(t.head, t.arg, t.binder, moved.term), h, a, moved, app.pairs)


# -- subject reduction -----------------------------------------------------------------


def subject_reduce(d: Deriv, path: Position) -> Deriv:
    """Type the reduct of a non-erasing dbeta step at ``path``."""
    t = d.term
    redex = subterm(t, path)
    red = _dbeta(redex)
    if red is None:
        raise TransformError("no dbeta redex at the given position")
    if is_erasing("dbeta", redex):
        raise TransformError("the step is erasing; use erasing_reduce")
    out = retarget(_sr(d, tuple(path)), replace_at(t, path, red))
    if derivation_size(out) >= derivation_size(d):
        raise TransformError("size did not decrease")
    return out


def _sr(d: Deriv, path: Position) -> Deriv:
    if d.rule == "many":
        return mk_many(_sr(c, path) for c in d.children)
    if not path:
        return _sr_root(d)
    return _rebuild(d, path[0], _sr(d.children[path[0]], path[1:]))


def _rebuild(d: Deriv, i: int, new: Deriv) -> Deriv:
    t = d.term
    if d.rule == "abs":
        return mk_abs(Abs(t.binder, new.term), new)
    kids = list(d.children)
    kids[i] = new
    return mk_app(GApp(kids[0].term, kids[1].term, t.binder, kids[2].term), *kids, d.pairs)


def _sr_root(d: Deriv) -> Deriv:
    t = d.term
    frames, x, s = open_shape(t.head, free_vars(t.arg))
    head = retarget(d.children[0], plug_frames(frames, Abs(x, s)))
    pool = list(d.children[1].children)
    parts = []
    for hc in head.children:
        body = perml_push(hc).children[0]
        us = take(pool, body.env.get(x))
        parts.append(substitute_derivation(body, x, mk_many(us)))
    return substitute_derivation(d.children[2], t.binder, mk_many(parts))


# -- erasing steps --------------------------------------------------------------------------


@dataclass
class ErasingResult:
    derivation: Deriv
    sides: list[Deriv]
    case: str  # "erase-cont" (y not free in r) or "erase-arg" (x not free in s)
    size_before: int
    size_after: int
    sides_size: int = field(init=False)

    def __post_init__(self):
        self.sides_size = sum(derivation_size(s) for s in self.sides)

    @property
    def inequality_holds(self) -> bool:
        return self.size_before > 1 + self.size_after + self.sides_size


def erasing_reduce(d: Deriv, path: Position) -> ErasingResult:
    """Type the reduct of an erasing dbeta step under a weak-head context,
    returning the derivations of the erased parts alongside."""
    t = d.term
    path = tuple(path)
    if not is_weak_head(context_at(t, path)):
        raise TransformError("erasing steps are handled under weak-head contexts only")
    redex = subterm(t, path)
    red = _dbeta(redex)
    if red is None or not is_erasing("dbeta", redex):
        raise TransformError("no erasing dbeta redex at the given position")
    out, sides, case = _er(d, path)
    out = retarget(out, replace_at(t, path, red))
    return ErasingResult(out, sides, case, derivation_size(d), derivation_size(out))


def _er(d: Deriv, path: Position):
    t = d.term
    if not path:
        frames, x, s = open_shape(t.head, free_vars(t.arg))
        head = retarget(d.children[0], plug_frames(frames, Abs(x, s)))
        h, a, c = head, d.children[1], d.children[2]
        if t.binder not in free_vars(t.cont):
            body = perml_push(h.children[0]).children[0]
            return c, [body, a.children[0]], "erase-cont"
        bodies = mk_many(perml_push(hc).children[0] for hc in h.children)
        return substitute_derivation(c, t.binder, bodies), [a.children[0]], "erase-arg"
    if path[0] == HEAD:
        parts = [_er(hc, path[1:]) for hc in d.children[0].children]
        head = mk_many(p[0] for p in parts)
        new = mk_app(GApp(head.term, t.arg, t.binder, t.cont), head, d.children[1], d.children[2], d.pairs)
        return new, parts[0][1], parts[0][2]
    if path[0] == CONT:
        c, sides, case = _er(d.children[2], path[1:])
        return reselect(d, c), sides, case
    raise TransformError("path leaves the weak-head context")


def reselect(d: Deriv, cont: Deriv) -> Deriv:
    """Rebuild an app node around a new continuation derivation whose
    binder multiset is included in the old one."""
    t = d.term
    h, a, _ = d.children
    term = GApp(t.head, t.arg, t.binder, cont.term)
    znew = cont.env.get(t.binder)
    zold = MultiType(tau for _, tau in d.pairs)
    if znew == zold:
        return mk_app(term, h, a, cont, d.pairs)
    if not znew:
        return mk_app(term, mk_many([h.children[0]]), mk_many([a.children[0]]), cont, ())
    pool = list(d.pairs)
    chosen = []
    for tau in znew.items:
        for i, (m, cod) in enumerate(pool):
            if cod == tau:
                chosen.append(pool.pop(i))
                break
        else:
            raise TransformError(f"no pair with codomain {tau} to keep")
    head = select(h, MultiType(Arrow(m, tau) for m, tau in chosen))
    args = union(m for m, _ in chosen)
    if not union(m for m, _ in d.pairs):
        arg = a
    elif not args:
        arg = mk_many([a.children[0]])
    else:
        arg = select(a, args)
    return mk_app(term, head, arg, cont, chosen)


# -- pi steps --------------------------------------------------------------------------------


def pi_transform(d: Deriv, path: Position) -> Deriv:
    """Type the reduct of a pi step.  The environment may shrink and the
    size does not grow.  Positions under an abstraction are not handled."""
    t = d.term
    redex = subterm(t, tuple(path))
    red = _pi(redex)
    if red is None:
        raise TransformError("no pi redex at the given position")
    out = _pt(d, tuple(path))
    return retarget(out, replace_at(t, path, red))


def _pt(d: Deriv, path: Position) -> Deriv:
    if d.rule == "many":
        return mk_many(_pt(c, path) for c in d.children)
    if not path:
        return _pt_root(d)
    if d.rule != "app":
        raise TransformError("pi positions under abstractions are not handled")
    i = path[0]
    new = _pt(d.children[i], path[1:])
    t = d.term
    if i == CONT:
        return reselect(d, new)
    kids = list(d.children)
    kids[i] = new
    return mk_app(GApp(kids[0].term, kids[1].term, t.binder, kids[2].term), *kids, d.pairs)


def _pt_root(d: Deriv) -> Deriv:
    outer = d.term
    red = _pi(outer)
    inner = outer.head
    x, r = red.binder, red.cont.head
    inner_term = GApp(inner.head, inner.arg, x, r)
    hm = retarget(d.children[0], inner_term)
    u2, c2 = d.children[1], d.children[2]
    psi_term = GApp(r, outer.arg, outer.binder, outer.cont)
    if d.pairs:
        ins = hm.children
        psi = mk_app(psi_term, mk_many(i.children[2] for i in ins), u2, c2, d.pairs)
        if x in free_vars(r):
            t_many = merge(i.children[0] for i in ins)
            pairs = [p for i in ins for p in i.pairs]
            real = [i.children[1] for i in ins if union(m for m, _ in i.pairs)]
            u_many = merge(real) if real else ins[0].children[1]
        else:
            t_many, u_many, pairs = ins[0].children[0], ins[0].children[1], ins[0].pairs
    else:
        (i,) = hm.children
        psi = mk_app(psi_term, mk_many([i.children[2]]), u2, c2, ())
        t_many, u_many, pairs = i.children[0], i.children[1], i.pairs
    return mk_app(GApp(inner.head, inner.arg, x, psi.term), t_many, u_many, psi, pairs)
