"""Ideal handles with cached Groebner bases and the usual ideal operations.

Monomial inputs are routed through :mod:`seqcm.monomial`; everything else
goes through Buchberger.  Intersections use one auxiliary variable and an
elimination order; colons divide the intersection by each generator.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable

from .groebner import INFINITE, GroebnerBasis, groebner_basis
from .monomial import MonomialIdeal, series_value_at_one, tpoly_add
from .poly import MonomialOrder, Polynomial, PolyRing, RingMismatch


class Ideal:
    """Immutable ideal of a polynomial ring, given by generators."""

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring(g)
            if g:
                gs.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(gs)
        self._gb: dict = {}

    # -- constructors

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, (ring.one(),))

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens())

    @classmethod
    def from_monomial(cls, ring: PolyRing, I: MonomialIdeal) -> "Ideal":
        return cls(ring, [ring.monomial(e) for e in I.sorted_gens()])

    # -- basis data

    def gb(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            if self.is_monomial:
                gb = groebner_basis([self.ring.monomial(e) for e in self.monomial.sorted_gens()],
                                    self.ring, order)
            else:
                gb = groebner_basis(self.gens, self.ring, order)
            self._gb[order] = gb
        return gb

    @cached_property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    @cached_property
    def monomial(self) -> MonomialIdeal:
        """Exact monomial ideal (only for monomial generators)."""
        if not self.is_monomial:
            raise ValueError("ideal is not monomial")
        return MonomialIdeal([e for g in self.gens for e in g.terms], self.ring.nvars)

    @cached_property
    def leading_ideal(self) -> MonomialIdeal:
        if self.is_monomial:
            return self.monomial
        return MonomialIdeal(self.gb().leading_module()[0], self.ring.nvars)

    def basis(self) -> list[Polynomial]:
        return self.gb().polys()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    # -- comparisons

    def _check(self, other: "Ideal"):
        if other.ring.names != self.ring.names or other.ring.field != self.ring.field:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def contains(self, x) -> bool:
        if isinstance(x, Ideal):
            self._check(x)
            return all(self.contains(g) for g in x.gens)
        f = self.ring(x)
        if not f:
            return True
        if self.is_monomial:
            return all(self.monomial.contains_monomial(e) for e in f.terms)
        return self.gb().contains(f)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __le__(self, other: "Ideal") -> bool:
        return other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        self._check(other)
        if self.is_monomial and other.is_monomial:
            return self.monomial == other.monomial
        return self.gb().elems == other.gb().elems

    def __hash__(self):
        return hash(tuple(sorted(map(hash, self.gb().polys()))))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if self.is_monomial:
            return self.monomial.is_unit()
        return any(g.is_constant() for g in self.gb().polys())

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    # -- arithmetic

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        if self.is_monomial and other.is_monomial:
            return Ideal.from_monomial(self.ring, self.monomial * other.monomial)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, n: int) -> "Ideal":
        if n < 1:
            raise ValueError("power must be >= 1")
        if self.is_monomial:
            return Ideal.from_monomial(self.ring, self.monomial.power(n))
        out = self
        for _ in range(n - 1):
            out = Ideal(self.ring, [f * g for f in out.basis() for g in self.gens])
        return out

    def intersect(self, other: "Ideal") -> "Ideal":
        self._check(other)
        if self.is_monomial and other.is_monomial:
            return Ideal.from_monomial(self.ring, self.monomial.intersect(other.monomial))
        if self.is_zero() or other.is_zero():
            return Ideal.zero(self.ring)
        R = self.ring
        S = PolyRing(("_t",) + R.names, R.field, MonomialOrder("elim", 1))

        def up(f):
            return Polynomial(S, {(0,) + e: c for e, c in f.terms.items()})

        t = S.var(0)
        gens = [t * up(f) for f in self.gens] + [(S.one() - t) * up(g) for g in other.gens]
        gb = groebner_basis(gens, S)
        keep = [Polynomial(R, {e[1:]: c for e, c in f.terms.items()}) for f in gb.polys() if f.lm()[0] == 0]
        return Ideal(R, keep)

    def colon_element(self, f: Polynomial) -> "Ideal":
        f = self.ring(f)
        if not f:
            return Ideal.unit(self.ring)
        if self.is_monomial and f.is_monomial():
            return Ideal.from_monomial(self.ring, self.monomial.colon_monomial(f.lm()))
        inter = self.intersect(Ideal(self.ring, [f]))
        return Ideal(self.ring, [g.exact_div(f) for g in inter.basis()])

    def colon(self, other: "Ideal") -> "Ideal":
        self._check(other)
        if self.is_monomial and other.is_monomial:
            return Ideal.from_monomial(self.ring, self.monomial.colon(other.monomial))
        out = Ideal.unit(self.ring)
        for g in other.gens:
            out = out.intersect(self.colon_element(g)) if not out.is_unit() else self.colon_element(g)
        return out

    def saturate(self, other: "Ideal | None" = None) -> "Ideal":
        other = other if other is not None else Ideal.maximal(self.ring)
        cur = self
        while True:
            nxt = cur.colon(other)
            if nxt == cur:
                return cur
            cur = nxt

    def eliminate(self, names: Iterable) -> "Ideal":
        """Intersection with the subring not involving the given variables."""
        R = self.ring
        idx = [v if isinstance(v, int) else R.index(v) for v in names]
        rest = [i for i in range(R.nvars) if i not in idx]
        perm = idx + rest
        S = PolyRing([R.names[i] for i in perm], R.field, MonomialOrder("elim", len(idx)))

        def to_s(f):
            return Polynomial(S, {tuple(e[i] for i in perm): c for e, c in f.terms.items()})

        def from_s(f):
            out = {}
            for e, c in f.terms.items():
                full = [0] * R.nvars
                for j, i in enumerate(perm):
                    full[i] = e[j]
                out[tuple(full)] = c
            return Polynomial(R, out)

        gb = groebner_basis([to_s(g) for g in self.gens], S)
        k = len(idx)
        return Ideal(R, [from_s(f) for f in gb.polys() if not any(f.lm()[:k])])

    # -- numerical invariants of R/I

    def dim(self) -> int:
        return self.leading_ideal.dim()

    def length(self):
        """dim_k R/I, or INFINITE."""
        return self.leading_ideal.quotient_length()

    def hilbert_numerator(self) -> list:
        """Numerator of the (affine) Hilbert series of R/I over (1-t)^n."""
        return self.leading_ideal.hilbert_numerator()


def colength(small: Ideal, big: Ideal):
    """Length of big/small for small <= big, via Hilbert series numerators.

    Valid for any degree-compatible order: the affine Hilbert function of R/I
    equals that of R/LT(I).
    """
    diff = tpoly_add(small.hilbert_numerator(), big.hilbert_numerator(), -1)
    return series_value_at_one(diff, small.ring.nvars)


def ideal_op(kind: str, a: Ideal, b=None) -> Ideal:
    """Dispatcher over sum, product, power, intersection, colon, saturation, eliminate."""
    if kind == "sum":
        return a + b
    if kind == "product":
        return a * b
    if kind == "power":
        return a.power(b)
    if kind == "intersection":
        return a.intersect(b)
    if kind == "colon":
        return a.colon(b)
    if kind == "saturation":
        return a.saturate(b)
    if kind == "eliminate":
        return a.eliminate(b)
    raise ValueError(f"unknown ideal operation {kind!r}")


__all__ = ["Ideal", "colength", "ideal_op", "INFINITE"]
