"""Exact coefficient fields, monomial orders, and multivariate polynomials."""

from __future__ import annotations

import operator
from functools import lru_cache
from typing import Iterable, Mapping

import gmpy2

Exps = tuple  # exponent vector


class RingMismatch(ValueError):
    pass


# ---------------------------------------------------------------- fields


class RationalField:
    """The rationals, backed by gmpy2.mpq (always in lowest terms)."""

    characteristic = 0

    def __init__(self):
        self.zero = gmpy2.mpq(0)
        self.one = gmpy2.mpq(1)

    def __call__(self, x) -> gmpy2.mpq:
        if isinstance(x, str):
            if "/" in x:
                a, b = x.split("/")
                return gmpy2.mpq(int(a), int(b))
            return gmpy2.mpq(int(x))
        return gmpy2.mpq(x)

    def to_python(self, c):
        if c.denominator == 1:
            return int(c.numerator)
        return f"{int(c.numerator)}/{int(c.denominator)}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class Mod:
    """Element of a prime field; least nonnegative residue."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, o):
        return o.v if isinstance(o, Mod) else o

    def __add__(self, o):
        return Mod(self.v + self._lift(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return Mod(self.v - self._lift(o), self.p)

    def __rsub__(self, o):
        return Mod(self._lift(o) - self.v, self.p)

    def __mul__(self, o):
        return Mod(self.v * self._lift(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __truediv__(self, o):
        o = self._lift(o) % self.p
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return Mod(self._lift(o), self.p) / self

    def __pow__(self, e):
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        return self.v == (self._lift(o) % self.p)

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField:
    def __init__(self, p: int = 32003):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.zero = Mod(0, p)
        self.one = Mod(1, p)

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            return Mod(x.v, self.characteristic)
        if isinstance(x, str):
            if "/" in x:
                a, b = x.split("/")
                return Mod(int(a), self.characteristic) / int(b)
            x = int(x)
        if isinstance(x, int):
            return Mod(x, self.characteristic)
        # rationals
        return Mod(int(x.numerator), self.characteristic) / int(x.denominator)

    def to_python(self, c):
        return c.v

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = RationalField()


# ---------------------------------------------------------------- orders


class MonomialOrder:
    """grevlex, lex, or an elimination order with a grevlex block on the
    first ``block`` variables followed by grevlex on the rest.

    ``key(e)`` is a sort key in which the *larger* monomial sorts first.
    """

    def __init__(self, kind: str = "grevlex", block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs block >= 1")
        self.kind = kind
        self.block = block if kind == "elim" else 0
        self.key = lru_cache(maxsize=None)(self._key)

    def _key(self, e: Exps) -> tuple:
        if self.kind == "grevlex":
            return (-sum(e),) + e[::-1]
        if self.kind == "lex":
            return tuple(-a for a in e)
        k = self.block
        head, tail = e[:k], e[k:]
        return (-sum(head),) + head[::-1] + (-sum(tail),) + tail[::-1]

    def compare(self, a: Exps, b: Exps) -> int:
        """-1, 0, 1 for a < b, a == b, a > b."""
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return 0
        return 1 if ka < kb else -1

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        return self.kind if self.kind != "elim" else f"elim({self.block})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def compare_monomials(order: MonomialOrder, a: Exps, b: Exps) -> str:
    return {-1: "LT", 0: "EQ", 1: "GT"}[order.compare(tuple(a), tuple(b))]


# ---------------------------------------------------------------- monomials


def mono_mul(a: Exps, b: Exps) -> Exps:
    return tuple(map(operator.add, a, b))


def mono_div(a: Exps, b: Exps) -> Exps:
    return tuple(map(operator.sub, a, b))


def mono_divides(b: Exps, a: Exps) -> bool:
    """b | a"""
    return all(map(operator.le, b, a))


def mono_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(map(max, a, b))


# ---------------------------------------------------------------- rings


class PolyRing:
    def __init__(self, names: Iterable[str], field=QQ, order: MonomialOrder = GREVLEX):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.field = field
        self.order = order
        self.nvars = len(self.names)
        self._index = {v: i for i, v in enumerate(self.names)}

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}]"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, self.field, order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero_exps(self) -> Exps:
        return (0,) * self.nvars

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.zero_exps(): c} if c else {})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, d: Mapping) -> "Polynomial":
        f = self.field
        return Polynomial(self, {tuple(e): f(c) for e, c in d.items() if f(c)})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                if x.ring.names == self.names and x.ring.field == self.field:
                    return Polynomial(self, x.terms)
                raise RingMismatch(f"{x.ring!r} vs {self!r}")
            return x
        if isinstance(x, str):
            from .session import parse_poly

            return parse_poly(x, self)
        return self.const(x)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero
    coefficients."""

    __slots__ = ("ring", "terms", "_hash", "_lt")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None
        self._lt = None

    # -- inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None or order == self.ring.order:
            if self._lt is None:
                key = self.ring.order.key
                e = min(self.terms, key=key)
                self._lt = (e, self.terms[e])
            return self._lt
        e = min(self.terms, key=order.key)
        return (e, self.terms[e])

    def lm(self, order=None) -> Exps:
        return self.leading_term(order)[0]

    def lc(self, order=None):
        return self.leading_term(order)[1]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def has_constant_term(self) -> bool:
        return self.ring.zero_exps() in self.terms

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    # -- arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def mul_monomial(self, m: Exps, c=None) -> "Polynomial":
        if c is None:
            return Polynomial(self.ring, {mono_mul(e, m): v for e, v in self.terms.items()})
        return Polynomial(self.ring, {mono_mul(e, m): c * v for e, v in self.terms.items()})

    def monic(self, order=None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.one / self.lc(order))

    def substitute(self, values: Mapping) -> "Polynomial":
        """Replace variables (by name or index) with polynomials or scalars."""
        R = self.ring
        subs = {}
        for k, v in values.items():
            i = k if isinstance(k, int) else R.index(k)
            subs[i] = v if isinstance(v, Polynomial) else R.const(v)
        result = R.zero()
        for e, c in self.terms.items():
            kept = tuple(0 if i in subs else a for i, a in enumerate(e))
            term = R.monomial(kept, c)
            for i, p in subs.items():
                if e[i]:
                    term = term * p ** e[i]
            result = result + term
        return result

    def homogeneous_component(self, deg: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if other does not divide self."""
        from .groebner import divide

        q, r = divide(self, [other])
        if r:
            raise ArithmeticError("division is not exact")
        return q[0]

    # -- equality, hashing, printing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


def format_poly(f: Polynomial) -> str:
    """Render in the session grammar, e.g. ``X^2 - 3/2*X*Y + 1``."""
    if not f.terms:
        return "0"
    R = f.ring
    out = []
    for e, c in f.sorted_terms():
        cp = R.field.to_python(c)
        if isinstance(cp, int):
            neg = cp < 0
            mag = str(abs(cp))
        else:
            neg = cp.startswith("-")
            mag = cp.lstrip("-")
        mono = "*".join(
            R.names[i] if a == 1 else f"{R.names[i]}^{a}" for i, a in enumerate(e) if a
        )
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def poly_arith(op: str, *operands):
    """Dispatcher over the basic ring operations (add, sub, mul, pow, substitute)."""
    if op == "add":
        a, b = operands
        return a + b
    if op == "sub":
        a, b = operands
        return a - b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "pow":
        a, n = operands
        return a**n
    if op == "substitute":
        a, mapping = operands
        return a.substitute(mapping)
    raise ValueError(f"unknown operation {op!r}")
