"""Hilbert-Samuel functions, fitted coefficients, arithmetic degrees and the
adjusted function and coefficients.

All values are exact integers.  The coefficient fit is certified: the fitted
polynomial must reproduce ``window`` further values past the point where the
(d+1)-st forward difference first vanishes.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .groebner import INFINITE
from .ideals import Ideal, colength
from .modules import DirectSum
from .poly import Polynomial

log = logging.getLogger(__name__)

DEFAULT_NCAP = 40
DEFAULT_WINDOW = 3


class NotMPrimary(ValueError):
    pass


class Unstable(RuntimeError):
    """No certified polynomial fit below the n cap."""


# ---------------------------------------------------------------- Hilbert-Samuel values


class _Chain:
    """Lengths of J/(I + q^n J) for n = 0, 1, ... computed incrementally."""

    def __init__(self, J: Ideal, I: Ideal, q: Ideal):
        self.J, self.I, self.q = J, I, q
        self.terms = [J]  # terms[n] = I + q^n J
        self.lengths: list = [0]

    def length(self, n: int):
        while len(self.terms) <= n:
            prev = self.terms[-1]
            if prev.is_monomial and self.q.is_monomial:
                nxt = self.I + self.q * prev
            else:
                gens = [f * g for f in self.q.gens for g in prev.basis()]
                nxt = self.I + Ideal(self.I.ring, gens)
            self.terms.append(nxt)
            self.lengths.append(colength(nxt, self.J))
        return self.lengths[n]


_CHAINS: dict = {}


def _chain(J: Ideal, I: Ideal, q: Ideal) -> _Chain:
    key = (J.ring, J.gens, I.gens, q.gens)
    ch = _CHAINS.get(key)
    if ch is None:
        ch = _CHAINS[key] = _Chain(J, I, q)
    return ch


def clear_cache():
    _CHAINS.clear()


def as_ideal(M: DirectSum, q) -> Ideal:
    if isinstance(q, Ideal):
        return q
    return Ideal(M.ring, list(q))


def hs_function(M: DirectSum, q, n: int, check: bool = True):
    """length(M / q^{n+1} M)."""
    q = as_ideal(M, q)
    if check and not is_m_primary_on(M, q):
        raise NotMPrimary("q is not a parameter ideal for M: M/qM has infinite length")
    total = 0
    for J, I in M.summands():
        if I.contains(J):
            continue
        total += _chain(J, I, q).length(n + 1)
    return total


def is_m_primary_on(M: DirectSum, q: Ideal) -> bool:
    return all(I.contains(J) or _chain(J, I, q).length(1) != INFINITE for J, I in M.summands())


def hs_values(M: DirectSum, q, upto: int) -> list:
    q = as_ideal(M, q)
    return [hs_function(M, q, n, check=(n == 0)) for n in range(upto + 1)]


# ---------------------------------------------------------------- fitting


def binomial_basis_values(n: int, d: int) -> list:
    """[binom(n+d-i, d-i) for i = 0..d]."""
    return [comb(n + d - i, d - i) for i in range(d + 1)]


def fit_coefficients(values: Sequence[int], start: int, d: int) -> tuple:
    """e_0..e_d with values[n] = sum (-1)^i e_i binom(n+d-i, d-i) for n = start..start+d."""
    rows = [[Fraction(x) for x in binomial_basis_values(start + k, d)] + [Fraction(values[start + k])]
            for k in range(d + 1)]
    m = d + 1
    for col in range(m):
        piv = next(r for r in range(col, m) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(m):
            if r != col and rows[r][col] != 0:
                f = rows[r][col] / rows[col][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    c = [rows[i][m] / rows[i][i] for i in range(m)]
    if any(x.denominator != 1 for x in c):
        raise ArithmeticError(f"non-integral Hilbert coefficients {c}")
    return tuple(int(x) * (-1) ** i for i, x in enumerate(c))


def hilbert_polynomial_value(e: Sequence[int], n: int) -> int:
    d = len(e) - 1
    return sum((-1) ** i * e[i] * b for i, b in enumerate(binomial_basis_values(n, d)))


def _forward_difference(values: Sequence[int], order: int, k: int) -> int:
    return sum((-1) ** (order - j) * comb(order, j) * values[k + j] for j in range(order + 1))


@dataclass
class HilbertFit:
    e: tuple
    start: int  # first n from which the polynomial agrees
    window: int
    values: list
    dim: int

    def certified_range(self) -> range:
        return range(self.start, self.start + self.dim + 1 + self.window)


def hilbert_coefficients(M: DirectSum, q, window: int = DEFAULT_WINDOW, ncap: int = DEFAULT_NCAP,
                         floor: int | None = None) -> HilbertFit:
    """Certified e_0..e_d of M with respect to q."""
    q = as_ideal(M, q)
    d = M.dim
    if d < 0:
        raise ValueError("zero module has no Hilbert coefficients")
    if not is_m_primary_on(M, q):
        raise NotMPrimary("q is not m-primary on M")
    if floor is None:
        floor = max((g.degree() for g in q.gens), default=1) * d
    values: list = []

    def value(n):
        while len(values) <= n:
            values.append(hs_function(M, q, len(values), check=False))
        return values[n]

    n0 = floor
    while n0 + d + window <= ncap:
        # need values up to n0 + d + window
        ok = True
        for k in range(n0, n0 + window):
            value(k + d + 1)
            if _forward_difference(values, d + 1, k) != 0:
                ok = False
                n0 = k + 1
                break
        if ok:
            e = fit_coefficients(values, n0, d)
            # shrink the start to the first n where the polynomial already agrees
            start = n0
            while start > 0 and hilbert_polynomial_value(e, start - 1) == value(start - 1):
                start -= 1
            return HilbertFit(e, start, window, list(values), d)
    raise Unstable(f"Hilbert-Samuel function not certified polynomial below n = {ncap}; raise the n cap")


# ---------------------------------------------------------------- arithmetic degree


def arithmetic_degree(M: DirectSum, q, j: int, F=None, window: int = DEFAULT_WINDOW,
                      ncap: int = DEFAULT_NCAP) -> int:
    """adeg_j(q; M) through a filtration in F(M): e_0(q; M_i) when d_i = j >= 1,
    length(H^0_m(M)) when j = 0, zero otherwise."""
    from .filtration import dimension_filtration

    q = as_ideal(M, q)
    D = dimension_filtration(M)
    F = F or D
    if j == 0:
        return D.terms[-1].length()
    for i in range(F.length):
        if F.dims[i] == j:
            return hilbert_coefficients(F.terms[i], q, window, ncap).e[0]
    return 0


def arithmetic_degrees(M: DirectSum, q, F=None, window: int = DEFAULT_WINDOW, ncap: int = DEFAULT_NCAP) -> list:
    """[adeg_0, ..., adeg_d]."""
    return [arithmetic_degree(M, q, j, F, window, ncap) for j in range(max(M.dim, 0) + 1)]


# ---------------------------------------------------------------- adjusted quantities


def adjusted_function(M: DirectSum, q, n: int, adeg: Sequence[int] | None = None) -> int:
    """length(M/q^{n+1}M) - sum_i adeg_i binom(n+i, i)."""
    q = as_ideal(M, q)
    adeg = adeg if adeg is not None else arithmetic_degrees(M, q)
    return hs_function(M, q, n) - sum(a * comb(n + i, i) for i, a in enumerate(adeg))


def adjusted_coefficients_from(e: Sequence[int], adeg: Sequence[int]) -> tuple:
    """a_i = (-1)^i e_i - adeg_{d-i}, i = 1..d."""
    d = len(e) - 1
    return tuple((-1) ** i * e[i] - adeg[d - i] for i in range(1, d + 1))


def adjusted_coefficients(M: DirectSum, q, window: int = DEFAULT_WINDOW, ncap: int = DEFAULT_NCAP) -> tuple:
    fit = hilbert_coefficients(M, q, window, ncap)
    return adjusted_coefficients_from(fit.e, arithmetic_degrees(M, q, None, window, ncap))


def adjusted_polynomial_value(a: Sequence[int], n: int) -> int:
    """P^ad(n) = sum_i a_i binom(n+d-i, d-i)."""
    d = len(a)
    return sum(a[i - 1] * comb(n + d - i, d - i) for i in range(1, d + 1))


def adjusted_polynomial_power_basis(a: Sequence[int]) -> list:
    """Coefficients c_0..c_k (Fractions) with P^ad(n) = sum c_j n^j."""
    d = len(a)
    out = [Fraction(0)] * (d + 1)
    for i in range(1, d + 1):
        k = d - i
        poly = [Fraction(1)]  # binom(n + k, k) = prod_{j=1..k} (n + j) / j
        for j in range(1, k + 1):
            poly = [Fraction(0)] + poly
            for t in range(len(poly) - 1):
                poly[t] += j * poly[t + 1]
            poly = [c / j for c in poly]
        for t, c in enumerate(poly):
            out[t] += a[i - 1] * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def adjusted_polynomial_nonnegative_from(a: Sequence[int], n0: int) -> bool:
    """P^ad(n) >= 0 for every integer n >= n0, decided exactly: beyond the
    Cauchy root bound the sign is that of the leading coefficient, and the
    integers below it are evaluated."""
    c = adjusted_polynomial_power_basis(a)
    lead = c[-1]
    if lead < 0:
        return False
    if len(c) == 1:
        return lead >= 0
    bound = 1 + max(abs(x / lead) for x in c[:-1])
    top = max(n0, int(bound) + 1)
    return all(adjusted_polynomial_value(a, n) >= 0 for n in range(n0, top + 1))


@dataclass
class HilbertReport:
    module: str
    q: list
    dim: int
    values: list
    e: tuple
    adeg: list
    a: tuple
    lambda_alt: tuple  # (-1)^i e_i - adeg_i, the other index convention
    window_start: int
    window: int
    h_ad: list
    p_ad: list
    flags: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "module": self.module,
            "q": self.q,
            "dim": self.dim,
            "hs_values": self.values,
            "e": list(self.e),
            "adeg": list(self.adeg),
            "a": list(self.a),
            "lambda_alt": list(self.lambda_alt),
            "window_start": self.window_start,
            "window": self.window,
            "h_ad": self.h_ad,
            "p_ad": self.p_ad,
            "flags": self.flags,
            "bounds": self.bounds,
        }


def hilbert_report(M: DirectSum, q, window: int = DEFAULT_WINDOW, ncap: int = DEFAULT_NCAP,
                   flags: bool = True, name: str = "M") -> HilbertReport:
    q = as_ideal(M, q)
    fit = hilbert_coefficients(M, q, window, ncap)
    adeg = arithmetic_degrees(M, q, None, window, ncap)
    a = adjusted_coefficients_from(fit.e, adeg)
    d = fit.dim
    alt = tuple((-1) ** i * fit.e[i] - adeg[i] for i in range(1, d + 1))
    upto = len(fit.values) - 1
    h_ad = [v - sum(x * comb(n + i, i) for i, x in enumerate(adeg)) for n, v in enumerate(fit.values)]
    p_ad = [adjusted_polynomial_value(a, n) for n in range(upto + 1)]
    rep = HilbertReport(name, [str(g) for g in q.gens], d, fit.values, fit.e, adeg, a, alt,
                        fit.start, window, h_ad, p_ad)
    if flags:
        from .parameters import is_distinguished, is_good, is_sop

        xs = list(q.gens)
        sop = len(xs) == d and is_sop(xs, M)
        rep.flags = {
            "sop": sop,
            "distinguished": sop and is_distinguished(xs, M),
            "good": sop and is_good(xs, M),
        }
    return rep


# ---------------------------------------------------------------- Lambda samples


@dataclass
class LambdaSample:
    index: int
    entries: list  # dicts: q, a_i, alt, distinguished
    caveat: str = "a finite sample cannot decide whether the full set is finite"

    @property
    def values(self) -> list:
        return [e["a"] for e in self.entries]

    def summary(self) -> dict:
        v = self.values
        return {"min": min(v), "max": max(v), "distinct": len(set(v)), "count": len(v)} if v else {}

    def as_dict(self) -> dict:
        return {"index": self.index, "entries": self.entries, "summary": self.summary(), "caveat": self.caveat}


def lambda_sample(M: DirectSum, i: int, sops: Sequence[Sequence[Polynomial]], allow_non_distinguished: bool = False,
                  window: int = DEFAULT_WINDOW, ncap: int = DEFAULT_NCAP) -> LambdaSample:
    """Values a_i(q; M) over the given parameter systems."""
    from .parameters import is_distinguished, is_sop

    d = M.dim
    if not 1 <= i <= d:
        raise ValueError(f"index {i} outside 1..{d}")
    entries = []
    for xs in sops:
        xs = list(xs)
        if not is_sop(xs, M):
            raise ValueError(f"{[str(x) for x in xs]} is not a system of parameters")
        dist = is_distinguished(xs, M)
        if not dist and not allow_non_distinguished:
            raise ValueError(f"{[str(x) for x in xs]} is not distinguished")
        q = Ideal(M.ring, xs)
        fit = hilbert_coefficients(M, q, window, ncap)
        adeg = arithmetic_degrees(M, q, None, window, ncap)
        a = adjusted_coefficients_from(fit.e, adeg)
        entries.append({
            "q": [str(x) for x in xs],
            "a": a[i - 1],
            "alt": (-1) ** i * fit.e[i] - adeg[i],
            "distinguished": dist,
        })
    return LambdaSample(i, entries)


def power_lattice(xs: Sequence[Polynomial], cap: int) -> list:
    """All x^n with n in {1..cap}^d."""
    from itertools import product

    return [[x**k for x, k in zip(xs, ks)] for ks in product(range(1, cap + 1), repeat=len(xs))]


def random_distinguished_family(M: DirectSum, count: int, seed: int = 0, degree_cap: int | None = None) -> list:
    from .parameters import random_distinguished_sop

    rng = random.Random(seed)
    return [random_distinguished_sop(M, seed=rng.randrange(2**31), degree_cap=degree_cap).elements
            for _ in range(count)]
