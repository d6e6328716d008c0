"""Terms with generalized application, binding and contexts.

A term is one of

    x            Var(name)
    \\x.t         Abs(binder, body)
    t(u, x.r)    GApp(head, arg, binder, cont)

Terms are immutable and compare syntactically with ``==``; use
:func:`alpha_eq` or :func:`alpha_key` for comparison up to renaming of
bound variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Abs:
    binder: str
    body: "Term"


@dataclass(frozen=True, slots=True)
class GApp:
    head: "Term"
    arg: "Term"
    binder: str
    cont: "Term"


Term = Union[Var, Abs, GApp]
Position = tuple[int, ...]

# child indices
HEAD, ARG, CONT = 0, 1, 2
BODY = 0


def identity() -> Abs:
    return Abs("z", Var("z"))


I = identity()


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, Abs):
        return 1 + size(t.body)
    return 1 + size(t.head) + size(t.arg) + size(t.cont)


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.binder}
    return free_vars(t.head) | free_vars(t.arg) | (free_vars(t.cont) - {t.binder})


def all_names(t: Term) -> set[str]:
    """Every name occurring in ``t``, free or bound."""
    out: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        elif isinstance(s, Abs):
            out.add(s.binder)
            stack.append(s.body)
        else:
            out.add(s.binder)
            stack.extend((s.head, s.arg, s.cont))
    return out


def fresh_name(base: str, avoid) -> str:
    """``base`` primed until it is not in ``avoid``."""
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Var):
        return ()
    if isinstance(t, Abs):
        return (t.body,)
    return (t.head, t.arg, t.cont)


def with_child(t: Term, i: int, c: Term) -> Term:
    if isinstance(t, Abs) and i == 0:
        return Abs(t.binder, c)
    if isinstance(t, GApp):
        if i == HEAD:
            return GApp(c, t.arg, t.binder, t.cont)
        if i == ARG:
            return GApp(t.head, c, t.binder, t.cont)
        if i == CONT:
            return GApp(t.head, t.arg, t.binder, c)
    raise IndexError(f"no child {i} in {type(t).__name__}")


def subterm(t: Term, path: Position) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def replace_at(t: Term, path: Position, new: Term) -> Term:
    """Replace the subterm at ``path``; binders above may capture."""
    if not path:
        return new
    return with_child(t, path[0], replace_at(children(t)[path[0]], path[1:], new))


def positions(t: Term) -> Iterator[Position]:
    """All positions in leftmost-outermost (preorder) order."""
    stack: list[tuple[Term, Position]] = [(t, ())]
    while stack:
        s, p = stack.pop()
        yield p
        kids = children(s)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((kids[i], p + (i,)))


def rename_free(t: Term, old: str, new: str) -> Term:
    return substitute(Var(new), old, t)


def substitute(u: Term, x: str, t: Term) -> Term:
    """Capture-avoiding ``[u/x]t``."""
    fu = free_vars(u)
    return _subst(u, fu, x, t)


def _subst(u: Term, fu: frozenset[str], x: str, t: Term) -> Term:
    if isinstance(t, Var):
        return u if t.name == x else t
    if x not in free_vars(t):
        return t
    if isinstance(t, Abs):
        y, body = _freshen(t.binder, t.body, fu, x)
        return Abs(y, _subst(u, fu, x, body))
    head = _subst(u, fu, x, t.head)
    arg = _subst(u, fu, x, t.arg)
    if t.binder == x:
        return GApp(head, arg, x, t.cont)
    y, cont = _freshen(t.binder, t.cont, fu, x)
    return GApp(head, arg, y, _subst(u, fu, x, cont))


def _freshen(y: str, body: Term, fu: frozenset[str], x: str) -> tuple[str, Term]:
    # rename binder y when it would capture a free variable of u
    if y not in fu or x not in free_vars(body):
        return y, body
    y2 = fresh_name(y, fu | all_names(body) | {x})
    return y2, _subst(Var(y2), frozenset((y2,)), y, body)


# -- alpha equivalence ----------------------------------------------------

def alpha_key(t: Term) -> tuple:
    """Locally nameless form: bound variables become indices, free ones keep names."""
    return _key(t, ())


def _key(t: Term, scope: tuple[str, ...]) -> tuple:
    if isinstance(t, Var):
        for i in range(len(scope) - 1, -1, -1):
            if scope[i] == t.name:
                return ("b", len(scope) - 1 - i)
        return ("f", t.name)
    if isinstance(t, Abs):
        return ("l", _key(t.body, scope + (t.binder,)))
    return ("g", _key(t.head, scope), _key(t.arg, scope), _key(t.cont, scope + (t.binder,)))


def alpha_eq(t1: Term, t2: Term) -> bool:
    return t1 == t2 or alpha_key(t1) == alpha_key(t2)


# -- contexts --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Frame:
    """One constructor layer with a hole at child ``index``.

    ``siblings`` holds the other children of the constructor, in order,
    with ``None`` at the hole.
    """

    kind: str  # "abs" | "gapp"
    index: int
    binder: str
    siblings: tuple

    def plug(self, t: Term) -> Term:
        if self.kind == "abs":
            return Abs(self.binder, t)
        kids = list(self.siblings)
        kids[self.index] = t
        return GApp(kids[0], kids[1], self.binder, kids[2])


def frame_of(t: Term, i: int) -> Frame:
    if isinstance(t, Abs):
        return Frame("abs", 0, t.binder, (None,))
    kids: list = [t.head, t.arg, t.cont]
    kids[i] = None
    return Frame("gapp", i, t.binder, tuple(kids))


@dataclass(frozen=True, slots=True)
class Context:
    """A term with one hole, stored as frames from the root down."""

    frames: tuple[Frame, ...] = ()

    def plug(self, t: Term) -> Term:
        for f in reversed(self.frames):
            t = f.plug(t)
        return t

    @property
    def path(self) -> Position:
        return tuple(f.index for f in self.frames)

    @property
    def binders(self) -> list[str]:
        """Binders whose scope contains the hole, outermost first."""
        out = []
        for f in self.frames:
            if f.kind == "abs" or f.index == CONT:
                out.append(f.binder)
        return out

    def extend(self, other: "Context") -> "Context":
        return Context(self.frames + other.frames)

    def __len__(self) -> int:
        return len(self.frames)


HOLE = Context()


def context_at(t: Term, path: Position) -> Context:
    frames = []
    for i in path:
        frames.append(frame_of(t, i))
        t = children(t)[i]
    return Context(tuple(frames))


def is_distant(c: Context) -> bool:
    """D ::= hole | t(u, x.D)"""
    return all(f.kind == "gapp" and f.index == CONT for f in c.frames)


def is_neutral_distant(c: Context) -> bool:
    """Dn ::= hole | n(u, x.Dn)"""
    from .classify import is_neutral

    return is_distant(c) and all(is_neutral(f.siblings[HEAD]) for f in c.frames)


def is_weak_head(c: Context) -> bool:
    """W ::= hole | W(u, x.r) | n(u, x.W)"""
    from .classify import is_neutral

    for f in c.frames:
        if f.kind != "gapp":
            return False
        if f.index == ARG:
            return False
        if f.index == CONT and not is_neutral(f.siblings[HEAD]):
            return False
    return True


def context_kind(c: Context) -> str:
    if is_neutral_distant(c):
        return "Dn"
    if is_distant(c):
        return "D"
    if is_weak_head(c):
        return "W"
    return "C"


def abstraction_shape(t: Term) -> Optional[tuple[Context, str, Term]]:
    """Split ``t`` as D[\\x.u] following continuations, if possible."""
    frames = []
    while isinstance(t, GApp):
        frames.append(frame_of(t, CONT))
        t = t.cont
    if isinstance(t, Abs):
        return Context(tuple(frames)), t.binder, t.body
    return None

