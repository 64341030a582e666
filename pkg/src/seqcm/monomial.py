"""Combinatorics of monomial ideals: decompositions, associated primes,
Hilbert series numerators, localization and the arithmetic-degree oracle.

Monomials are exponent tuples.  Nothing here touches a Groebner basis, which
is what makes these routines usable as an independent check of the
``groebner``/``filtration`` code paths.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .poly import mono_divides, mono_lcm

log = logging.getLogger(__name__)

INFINITE = float("inf")


# ---------------------------------------------------------------- integer polynomials in t


def tpoly_add(a: list, b: list, sign: int = 1) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0) for i in range(n)]
    return tpoly_trim(out)


def tpoly_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def tpoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tpoly_trim(out)


def tpoly_shift(a: list, k: int) -> list:
    return [0] * k + list(a) if a else []


def divide_one_minus_t(a: list):
    """(q, exact) with a = (1 - t) q when exact."""
    if not a:
        return [], True
    if sum(a) != 0:
        return None, False
    q, s = [], 0
    for x in a[:-1]:
        s += x
        q.append(s)
    return tpoly_trim(q), True


def pole_order_split(a: list, n: int):
    """Write a(t)/(1-t)^n as h(t)/(1-t)^k with h(1) != 0; returns (h, k).
    The zero series gives ([], -1)."""
    a = tpoly_trim(a)
    if not a:
        return [], -1
    k = n
    while k > 0:
        q, ok = divide_one_minus_t(a)
        if not ok:
            break
        a, k = q, k - 1
    return a, k


def series_value_at_one(a: list, n: int):
    """Value at t=1 of a(t)/(1-t)^n when it is a polynomial, else INFINITE."""
    h, k = pole_order_split(a, n)
    if k > 0:
        return INFINITE
    return sum(h)


# ---------------------------------------------------------------- monomial ideals


def minimalize(gens: Iterable[tuple]) -> frozenset:
    keep: list = []
    for g in sorted(set(gens), key=sum):
        if not any(mono_divides(k, g) for k in keep):
            keep.append(g)
    return frozenset(keep)


def _support(e) -> frozenset:
    return frozenset(i for i, a in enumerate(e) if a)


class MonomialIdeal:
    """Monomial ideal by its minimal generators (an antichain of exponent vectors)."""

    __slots__ = ("gens", "nvars", "_hash")

    def __init__(self, gens: Iterable, nvars: int):
        self.nvars = nvars
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != nvars:
                raise ValueError(f"exponent vector {g} has length != {nvars}")
        self.gens = minimalize(gens)
        self._hash = None

    @classmethod
    def from_polys(cls, polys, nvars: int | None = None) -> "MonomialIdeal":
        polys = list(polys)
        if nvars is None:
            nvars = polys[0].ring.nvars
        exps = []
        for f in polys:
            if f.is_zero():
                continue
            if not f.is_monomial():
                raise ValueError(f"{f} is not a monomial")
            exps.extend(f.terms)
        return cls(exps, nvars)

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls([(0,) * nvars], nvars)

    @classmethod
    def maximal(cls, nvars: int, support: Iterable[int] | None = None) -> "MonomialIdeal":
        S = range(nvars) if support is None else support
        return cls([tuple(1 if j == i else 0 for j in range(nvars)) for i in S], nvars)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, self.nvars))
        return self._hash

    def __repr__(self):
        return f"MonomialIdeal({sorted(self.gens)})"

    def sorted_gens(self) -> list:
        return sorted(self.gens, key=lambda e: (sum(e), tuple(-a for a in e)))

    # -- predicates

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def contains_monomial(self, e) -> bool:
        return any(mono_divides(g, e) for g in self.gens)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return all(other.contains_monomial(g) for g in self.gens)

    def is_artinian(self) -> bool:
        pure = {next(iter(_support(g))) for g in self.gens if len(_support(g)) == 1}
        return self.is_unit() or len(pure) == self.nvars

    def is_irreducible(self) -> bool:
        return all(len(_support(g)) == 1 for g in self.gens)

    def radical_support(self) -> frozenset:
        """Variable set of the radical, assuming the ideal is primary."""
        return frozenset().union(*(_support(g) for g in self.gens))

    # -- arithmetic

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.gens | other.gens, self.nvars)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal([tuple(a + b for a, b in zip(g, h)) for g in self.gens for h in other.gens], self.nvars)

    def power(self, k: int) -> "MonomialIdeal":
        if k < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal([mono_lcm(g, h) for g in self.gens for h in other.gens], self.nvars)

    def colon_monomial(self, m) -> "MonomialIdeal":
        return MonomialIdeal([tuple(max(a - b, 0) for a, b in zip(g, m)) for g in self.gens], self.nvars)

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.is_zero():
            return MonomialIdeal.unit(self.nvars)
        out = None
        for m in other.gens:
            c = self.colon_monomial(m)
            out = c if out is None else out.intersect(c)
        return out

    def saturate(self, other: "MonomialIdeal | None" = None) -> "MonomialIdeal":
        other = other if other is not None else MonomialIdeal.maximal(self.nvars)
        cur = self
        while True:
            nxt = cur.colon(other)
            if nxt == cur:
                return cur
            cur = nxt

    # -- dimension, Hilbert series, length

    def dim(self) -> int:
        if self.is_unit():
            return -1
        n = self.nvars
        sups = [_support(g) for g in self.gens]
        for k in range(n, -1, -1):
            for S in combinations(range(n), k):
                S = frozenset(S)
                if not any(s <= S for s in sups):
                    return k
        return 0

    def hilbert_numerator(self) -> list:
        """N(t) with HS(S/I) = N(t)/(1-t)^n, as a coefficient list."""
        return list(_numerator(self.gens))

    def quotient_length(self):
        if self.is_unit():
            return 0
        if not self.is_artinian():
            return INFINITE
        return series_value_at_one(self.hilbert_numerator(), self.nvars)

    def standard_monomials(self, max_count: int = 10**6) -> list:
        """Enumerate the standard monomials of an Artinian ideal (test oracle)."""
        if not self.is_artinian():
            raise ValueError("infinitely many standard monomials")
        bound = [0] * self.nvars
        for g in self.gens:
            s = _support(g)
            if len(s) == 1:
                i = next(iter(s))
                bound[i] = g[i]
        out = []

        def rec(i, cur):
            if i == self.nvars:
                if not self.contains_monomial(tuple(cur)):
                    out.append(tuple(cur))
                return
            for a in range(bound[i]):
                cur.append(a)
                rec(i + 1, cur)
                cur.pop()

        rec(0, [])
        return out

    # -- decompositions

    def irreducible_components(self) -> list["MonomialIdeal"]:
        if self.is_unit():
            raise ValueError("the unit ideal has no irreducible decomposition")
        comps = {MonomialIdeal(c, self.nvars) for c in _irreducible(self.gens)}
        comps = [c for c in comps if not any(o != c and o <= c for o in comps)]
        return sorted(comps, key=lambda c: c.sorted_gens())

    def primary_components(self) -> list["MonomialIdeal"]:
        groups: dict = {}
        for c in self.irreducible_components():
            groups.setdefault(c.radical_support(), []).append(c)
        out = []
        for S, cs in groups.items():
            acc = cs[0]
            for c in cs[1:]:
                acc = acc.intersect(c)
            out.append(acc)
        return sorted(out, key=lambda c: (-c.dim(), sorted(c.radical_support())))

    def associated_primes(self) -> list["MonomialPrime"]:
        sups = {c.radical_support() for c in self.irreducible_components()}
        return sorted((MonomialPrime(S, self.nvars) for S in sups), key=lambda p: (len(p.support), sorted(p.support)))

    def largest_of_dim_at_most(self, s: int) -> "MonomialIdeal":
        """J with J/I the largest submodule of R/I of dimension <= s."""
        if self.is_unit():
            return self
        big = [c for c in self.primary_components() if c.dim() > s]
        if not big:
            return MonomialIdeal.unit(self.nvars)
        acc = big[0]
        for c in big[1:]:
            acc = acc.intersect(c)
        return acc


class MonomialPrime:
    """Prime generated by the variables in ``support``."""

    __slots__ = ("support", "nvars")

    def __init__(self, support: Iterable[int], nvars: int):
        self.support = frozenset(support)
        self.nvars = nvars

    def dim(self) -> int:
        return self.nvars - len(self.support)

    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal.maximal(self.nvars, self.support)

    def __eq__(self, other):
        return isinstance(other, MonomialPrime) and self.support == other.support and self.nvars == other.nvars

    def __hash__(self):
        return hash((self.support, self.nvars))

    def __repr__(self):
        return f"MonomialPrime({sorted(self.support)})"


@lru_cache(maxsize=200_000)
def _numerator(gens: frozenset) -> tuple:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return ()
    if all(len(_support(g)) == 1 for g in gens):
        out = [1]
        for g in gens:
            a = sum(g)
            out = tpoly_mul(out, [1] + [0] * (a - 1) + [-1])
        return tuple(out)
    # pivot x_i^a: most frequent variable among non-pure generators, median exponent
    counts: dict = {}
    for g in gens:
        if len(_support(g)) > 1:
            for i, a in enumerate(g):
                if a:
                    counts.setdefault(i, []).append(a)
    i = max(sorted(counts), key=lambda k: len(counts[k]))
    exps = sorted(counts[i])
    a = exps[(len(exps) - 1) // 2]
    n = len(next(iter(gens)))
    p = tuple(a if j == i else 0 for j in range(n))
    plus = minimalize(list(gens) + [p])
    colon = minimalize(tuple(max(x - y, 0) for x, y in zip(g, p)) for g in gens)
    return tuple(tpoly_add(list(_numerator(plus)), tpoly_shift(list(_numerator(colon)), a)))


@lru_cache(maxsize=100_000)
def _irreducible(gens: frozenset) -> tuple:
    for g in sorted(gens, key=lambda e: (sum(e), e)):
        sup = sorted(_support(g))
        if len(sup) > 1:
            i = sup[0]
            u = tuple(g[i] if j == i else 0 for j in range(len(g)))
            v = tuple(0 if j == i else g[j] for j in range(len(g)))
            return _irreducible(minimalize(list(gens) + [u])) + _irreducible(minimalize(list(gens) + [v]))
    return (gens,)


# ---------------------------------------------------------------- ideal-level operations


def irreducible_decomposition(I: MonomialIdeal) -> list[MonomialIdeal]:
    return I.irreducible_components()


def assoc_primes_monomial(I: MonomialIdeal) -> list[MonomialPrime]:
    if I.is_unit():
        raise ValueError("the unit ideal has no associated primes")
    return I.associated_primes()


def hilbert_series_numerator(I: MonomialIdeal) -> list:
    return I.hilbert_numerator()


def localize_monomial(I: MonomialIdeal, p: MonomialPrime) -> MonomialIdeal:
    """Set the variables outside p to 1; the result lives in k[vars of p]."""
    S = sorted(p.support)
    return MonomialIdeal([tuple(g[i] for i in S) for g in I.gens], len(S))


def local_h0_length(I: MonomialIdeal, p: MonomialPrime) -> int:
    """Length of H^0 of (R/I)_p over R_p."""
    if p not in I.associated_primes():
        log.warning("%r is not associated to %r; local H^0 vanishes", p, I)
        return 0
    loc = localize_monomial(I, p)
    sat = loc.saturate()
    diff = tpoly_add(loc.hilbert_numerator(), sat.hilbert_numerator(), -1)
    val = series_value_at_one(diff, loc.nvars)
    if val == INFINITE:
        raise ArithmeticError("local H^0 length is not finite; inconsistent data")
    return val


def adeg_oracle(summands, q, j: int, ring) -> int:
    """Arithmetic degree of M = sum R/I_k straight from its definition:
    sum over associated primes p with dim R/p = j of length(H^0(M_p)) * e_0(q; R/p)."""
    from .hilbert import hilbert_coefficients
    from .ideals import Ideal
    from .modules import DirectSum

    n = ring.nvars
    ideals = [s if isinstance(s, MonomialIdeal) else MonomialIdeal.from_polys(s.gens, n) for s in summands]
    primes: dict = {}
    for I in ideals:
        if I.is_unit():
            continue
        for p in I.associated_primes():
            if p.dim() == j:
                primes.setdefault(p, []).append(I)
    total = 0
    for p in sorted(primes, key=lambda p: sorted(p.support)):
        mult = sum(local_h0_length(I, p) for I in primes[p])
        P = Ideal(ring, [ring.var(i) for i in sorted(p.support)])
        Rp = DirectSum.cyclic(ring, [P])
        try:
            e = hilbert_coefficients(Rp, q).e[0]
        except ValueError as exc:
            raise ValueError(f"q is not m-primary on R/{p!r}") from exc
        total += mult * e
    return total
