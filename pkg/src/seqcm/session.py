"""Parser and printer for the session language.

A session declares one ring followed by ideals, modules and parameter
systems::

    ring R = QQ[X,Y,Z];
    ideal I = (Z^2);
    module M = sum(R, R/I);
    sop q = (X^2, Y^2, Z);   # comments run to end of line

The printer emits the same grammar, so ``parse_session(format_session(s))``
gives back an equal session.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .poly import QQ, PolyRing, Polynomial, PrimeField, format_poly


class SessionError(ValueError):
    """Any error in session text; carries a 1-based line and column."""

    kind = "error"

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col, self.msg = line, col, msg
        where = f" at line {line}, column {col}" if line else ""
        super().__init__(f"{self.kind}{where}: {msg}")


class ParseError(SessionError):
    kind = "syntax error"


class UnknownName(SessionError):
    kind = "unknown name"


class ArityError(SessionError):
    kind = "wrong arity"


class ZeroParameter(SessionError):
    kind = "zero parameter"


# ---------------------------------------------------------------- model


@dataclass(frozen=True)
class Summand:
    """R/I; ``gens`` empty means the free summand R.  ``ideal`` names a
    declared ideal when the source referred to one."""

    gens: tuple = ()
    ideal: str | None = None

    @property
    def is_free(self) -> bool:
        return not self.gens and self.ideal is None


@dataclass
class Session:
    ring: PolyRing | None = None
    ring_name: str = "R"
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    sops: dict = field(default_factory=dict)
    statements: list = field(default_factory=list)  # (kind, name) in source order
    locations: dict = field(default_factory=dict)  # name -> (line, col)

    def __eq__(self, other):
        return (
            isinstance(other, Session)
            and self.ring == other.ring
            and self.ring_name == other.ring_name
            and self.ideals == other.ideals
            and self.modules == other.modules
            and self.sops == other.sops
            and self.statements == other.statements
        )

    def summand_ideal(self, s: Summand) -> tuple:
        return self.ideals[s.ideal] if s.ideal is not None else s.gens

    def module_ideals(self, name: str) -> list[tuple]:
        """Generators of I_k for each summand R/I_k of a declared module."""
        if name not in self.modules:
            raise UnknownName(f"no module named {name!r}")
        return [self.summand_ideal(s) for s in self.modules[name]]


# ---------------------------------------------------------------- lexer

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),;=\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str, ring: PolyRing | None = None, session: Session | None = None):
        self.toks = tokenize(text)
        self.i = 0
        self.session = session if session is not None else Session()
        if ring is not None:
            self.session.ring = ring

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        raise cls(msg, tok.line, tok.col)

    def accept(self, text: str) -> Token | None:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return t

    def expect_kind(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            self.error(f"expected {kind}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    # grammar
    def session_(self) -> Session:
        while self.tok.kind != "eof":
            self.statement()
        return self.session

    def statement(self):
        t = self.tok
        if t.kind != "name" or t.text not in ("ring", "ideal", "module", "sop"):
            self.error(f"expected a statement keyword, found {t.text!r}")
        self.i += 1
        if t.text != "ring" and self.session.ring is None:
            self.error("a ring must be declared first", t, UnknownName)
        name_tok = self.expect_kind("name")
        name = name_tok.text
        self.expect("=")
        s = self.session
        if t.text == "ring":
            if s.ring is not None:
                self.error("only one ring per session", t)
            s.ring, s.ring_name = self.ring_spec(), name
        elif t.text == "ideal":
            s.ideals[name] = tuple(self.poly_list())
        elif t.text == "module":
            s.modules[name] = self.module_spec()
        else:
            tok = self.tok
            xs = self.poly_list()
            if not xs:
                self.error("a parameter system needs at least one element", tok, ArityError)
            for k, x in enumerate(xs):
                if not x:
                    self.error(f"element {k + 1} of {name!r} is zero", tok, ZeroParameter)
            s.sops[name] = tuple(xs)
        s.statements.append((t.text, name))
        s.locations[name] = (name_tok.line, name_tok.col)
        self.expect(";")

    def ring_spec(self) -> PolyRing:
        t = self.expect_kind("name")
        if t.text == "QQ":
            fld = QQ
        elif t.text == "GF":
            self.expect("(")
            args = [self.expect_kind("int")]
            while self.accept(","):
                args.append(self.expect_kind("int"))
            self.expect(")")
            if len(args) != 1:
                self.error("GF takes exactly one argument", t, ArityError)
            try:
                fld = PrimeField(int(args[0].text))
            except ValueError as exc:
                self.error(str(exc), args[0])
        else:
            self.error(f"unknown coefficient field {t.text!r}", t)
        self.expect("[")
        names = [self.expect_kind("name").text]
        while self.accept(","):
            names.append(self.expect_kind("name").text)
        self.expect("]")
        if len(set(names)) != len(names):
            self.error("duplicate variable names", t)
        return PolyRing(names, fld)

    def module_spec(self) -> tuple:
        self.expect("sum")
        op = self.expect("(")
        parts = [self.summand()]
        while self.accept(","):
            parts.append(self.summand())
        self.expect(")")
        if not parts:
            self.error("sum needs at least one summand", op, ArityError)
        return tuple(parts)

    def summand(self) -> Summand:
        t = self.expect_kind("name")
        if t.text != self.session.ring_name:
            self.error(f"summands must be quotients of {self.session.ring_name!r}", t, UnknownName)
        if not self.accept("/"):
            return Summand()
        if self.tok.kind == "name":
            n = self.tok
            self.i += 1
            if n.text not in self.session.ideals:
                self.error(f"no ideal named {n.text!r}", n, UnknownName)
            return Summand(ideal=n.text)
        return Summand(gens=tuple(self.poly_list()))

    def poly_list(self) -> list:
        self.expect("(")
        out = []
        if self.accept(")"):
            return out
        out.append(self.poly())
        while self.accept(","):
            out.append(self.poly())
        self.expect(")")
        return out

    def poly(self) -> Polynomial:
        R = self.session.ring
        sign = self.accept("-") or self.accept("+")
        if sign:
            self.operand_follows(sign)
        neg = sign is not None and sign.text == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            op = self.accept("+") or self.accept("-")
            if op is None:
                return R(acc)
            self.operand_follows(op)
            acc = acc + self.term() if op.text == "+" else acc - self.term()

    def operand_follows(self, op: Token):
        t = self.tok
        if not (t.kind in ("int", "name") or t.text in ("(", "-", "+")):
            self.error(f"operator {op.text!r} is missing its right operand", op)

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            op = self.accept("*")
            if op:
                self.operand_follows(op)
                acc = acc * self.factor()
            elif self.tok.text == "/" and self.tok.kind == "op":
                t = self.tok
                self.i += 1
                d = self.factor()
                if not d.is_constant() or not d:
                    self.error("division only by nonzero constants", t)
                acc = acc.scale(self.session.ring.field.one / d.lc())
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            e = self.expect_kind("int")
            base = base ** int(e.text)
        return base

    def atom(self) -> Polynomial:
        R = self.session.ring
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return R.const(int(t.text))
        if t.kind == "name":
            self.i += 1
            if t.text not in R.names:
                self.error(f"unknown variable {t.text!r}", t, UnknownName)
            return R.var(t.text)
        if self.accept("("):
            p = self.poly()
            self.expect(")")
            return p
        if t.kind == "op" and t.text in "-+":
            # a sign inside a product, e.g. X*-Y
            self.i += 1
            inner = self.factor()
            return -inner if t.text == "-" else inner
        found = t.text or "end of input"
        self.error(f"unexpected {found!r}")


def parse_session(text: str) -> Session:
    return _Parser(text).session_()


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    p = _Parser(text, ring)
    f = p.poly()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return f


# ---------------------------------------------------------------- printer


def _field_text(ring: PolyRing) -> str:
    return "QQ" if ring.characteristic == 0 else f"GF({ring.characteristic})"


def _plist(fs) -> str:
    return "(" + ", ".join(format_poly(f) for f in fs) + ")"


def format_summand(s: Summand, ring_name: str) -> str:
    if s.ideal is not None:
        return f"{ring_name}/{s.ideal}"
    if not s.gens:
        return ring_name
    return f"{ring_name}/{_plist(s.gens)}"


def format_session(s: Session) -> str:
    R = s.ring
    lines = [f"ring {s.ring_name} = {_field_text(R)}[{','.join(R.names)}];"]
    for kind, name in s.statements:
        if kind == "ring":
            continue
        if kind == "ideal":
            lines.append(f"ideal {name} = {_plist(s.ideals[name])};")
        elif kind == "module":
            body = ", ".join(format_summand(x, s.ring_name) for x in s.modules[name])
            lines.append(f"module {name} = sum({body});")
        else:
            lines.append(f"sop {name} = {_plist(s.sops[name])};")
    return "\n".join(lines) + "\n"
