"""Concrete syntax: parsers and minimal-parenthesis printers.

J terms::

    term ::= atom | '\\' ident '.' term
    atom ::= ident | '(' term ')' | atom '(' term ',' ident '.' term ')'

ES and lambda terms::

    term    ::= '\\' ident '.' term | app
    app     ::= postfix+
    postfix ::= primary ('[' ident ':=' term ']')*
    primary ::= ident | '(' term ')'

``λ`` is accepted in place of the backslash.
"""

from __future__ import annotations

import re

from .esterms import EAbs, EApp, ESTerm, ESub, EVar
from .terms import Abs, GApp, Term, Var


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at offset {pos}")


_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_'§]*)|(?P<op>:=|->|[\\λ.(),\[\]]))")


class Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
            kind = "id" if m.group("id") else "op"
            val = m.group(kind)
            self.toks.append((kind, "\\" if val == "λ" else val, m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("eof", "", len(self.text))

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, val: str) -> None:
        kind, v, pos = self.next()
        if v != val or kind == "eof":
            raise ParseError(f"expected {val!r}, found {v or 'end of input'!r}", pos, self.text)

    def ident(self) -> str:
        kind, v, pos = self.next()
        if kind != "id":
            raise ParseError(f"expected identifier, found {v or 'end of input'!r}", pos, self.text)
        return v

    def done(self) -> None:
        kind, v, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {v!r}", pos, self.text)


# -- J terms ---------------------------------------------------------------

def parse_term(text: str) -> Term:
    lx = Lexer(text)
    t = _j_term(lx)
    lx.done()
    return t


def _j_term(lx: Lexer) -> Term:
    if lx.peek()[1] == "\\":
        lx.next()
        x = lx.ident()
        lx.expect(".")
        return Abs(x, _j_term(lx))
    return _j_atom(lx)


def _j_atom(lx: Lexer) -> Term:
    kind, v, pos = lx.next()
    if kind == "id":
        t: Term = Var(v)
    elif v == "(":
        t = _j_term(lx)
        lx.expect(")")
    else:
        raise ParseError(f"expected term, found {v or 'end of input'!r}", pos, lx.text)
    while lx.peek()[1] == "(":
        lx.next()
        u = _j_term(lx)
        lx.expect(",")
        x = lx.ident()
        lx.expect(".")
        r = _j_term(lx)
        lx.expect(")")
        t = GApp(t, u, x, r)
    return t


def show(t: Term) -> str:
    out: list[str] = []
    _show(t, out)
    return "".join(out)


def _show(t: Term, out: list[str]) -> None:
    # iterative along continuations keeps deep chains off the stack
    while True:
        if isinstance(t, Var):
            out.append(t.name)
            return
        if isinstance(t, Abs):
            out.append("\\" + t.binder + ".")
            t = t.body
            continue
        if isinstance(t.head, Abs):
            out.append("(")
            _show(t.head, out)
            out.append(")")
        else:
            _show(t.head, out)
        out.append("(")
        _show(t.arg, out)
        out.append(", " + t.binder + ".")
        _show(t.cont, out)
        out.append(")")
        return


# -- ES and lambda terms -----------------------------------------------------

def parse_es(text: str) -> ESTerm:
    lx = Lexer(text)
    m = _es_term(lx)
    lx.done()
    return m


def parse_lam(text: str) -> ESTerm:
    lx = Lexer(text)
    m = _es_term(lx, subs=False)
    lx.done()
    return m


def _es_term(lx: Lexer, subs: bool = True) -> ESTerm:
    if lx.peek()[1] == "\\":
        lx.next()
        x = lx.ident()
        lx.expect(".")
        return EAbs(x, _es_term(lx, subs))
    m = _es_postfix(lx, subs)
    while lx.peek()[0] == "id" or lx.peek()[1] == "(":
        m = EApp(m, _es_postfix(lx, subs))
    return m


def _es_postfix(lx: Lexer, subs: bool) -> ESTerm:
    kind, v, pos = lx.next()
    if kind == "id":
        m: ESTerm = EVar(v)
    elif v == "(":
        m = _es_term(lx, subs)
        lx.expect(")")
    else:
        raise ParseError(f"expected term, found {v or 'end of input'!r}", pos, lx.text)
    while lx.peek()[1] == "[":
        _, _, pos = lx.next()
        if not subs:
            raise ParseError("explicit substitution in a lambda term", pos, lx.text)
        x = lx.ident()
        lx.expect(":=")
        n = _es_term(lx, subs)
        lx.expect("]")
        m = ESub(n, x, m)
    return m


def show_es(m: ESTerm) -> str:
    if isinstance(m, EVar):
        return m.name
    if isinstance(m, EAbs):
        return "\\" + m.binder + "." + show_es(m.body)
    if isinstance(m, EApp):
        f = show_es(m.fun)
        if isinstance(m.fun, EAbs):
            f = "(" + f + ")"
        return f + " " + _es_postfix_show(m.arg)
    return _es_postfix_show(m.body) + "[" + m.binder + " := " + show_es(m.arg) + "]"


def _es_postfix_show(m: ESTerm) -> str:
    s = show_es(m)
    return "(" + s + ")" if isinstance(m, (EAbs, EApp)) else s


show_lam = show_es
