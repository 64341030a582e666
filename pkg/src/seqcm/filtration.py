"""Dimension filtrations, Cohen-Macaulay classification of the pieces, and
the invariants I(M), I(F, M) with the bounds built from them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

from .groebner import INFINITE
from .ideals import Ideal
from .modules import DirectSum, ext_module, free_resolution, local_cohomology_lengths, present, prune, depth

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- the filtration


def filtration_ideal(I: Ideal, s: int) -> Ideal:
    """J >= I such that J/I is the largest submodule of R/I of dimension <= s.

    Monomial ideals use their primary decomposition.  Otherwise J = I : a^oo
    where a is the product of the annihilators of Ext^{n-j}(R/I, R), j <= s.
    """
    R = I.ring
    if I.is_unit():
        return I
    if s < 0:
        return I
    if s >= I.dim():
        return Ideal.unit(R)
    if I.is_monomial:
        return Ideal.from_monomial(R, I.monomial.largest_of_dim_at_most(s))
    n = R.nvars
    P = prune(present(DirectSum.cyclic(R, [I])))
    res = free_resolution(P)
    a = Ideal.unit(R)
    for j in range(s + 1):
        E = ext_module(P, n - j, res)
        if E.rank:
            a = a * E.annihilator()
    return I.saturate(a)


def largest_submodule(M: DirectSum, s: int) -> DirectSum:
    """Largest submodule of M of dimension <= s (summand by summand)."""
    return DirectSum(
        M.ring,
        [J.intersect(filtration_ideal(I, s)) for J, I in M.summands()],
        M.bottoms,
        check=False,
    )


@dataclass
class Filtration:
    """A chain M = terms[0] >= terms[1] >= ... of diagonal submodules."""

    module: DirectSum
    terms: list
    dims: list = field(default_factory=list)

    def __post_init__(self):
        if not self.dims:
            self.dims = [T.dim for T in self.terms]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def __getitem__(self, i) -> DirectSum:
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    def pieces(self) -> list[DirectSum]:
        """Successive quotients terms[i] / terms[i+1]."""
        return [self.terms[i].quotient(self.terms[i + 1]) for i in range(self.length)]


def dimension_filtration(M: DirectSum) -> Filtration:
    """M = D_0 > D_1 > ... > D_t = H^0_m(M); D_t may be the zero module."""
    terms = [M]
    while terms[-1].dim >= 1:
        terms.append(largest_submodule(M, terms[-1].dim - 1))
    return Filtration(M, terms)


def check_dimension_condition(F: Filtration) -> bool:
    for a, b in zip(F.terms, F.terms[1:]):
        if not a.contains(b):
            raise ValueError("filtration terms are not nested")
    return all(x > y for x, y in zip(F.dims, F.dims[1:]))


def calF_defects(F: Filtration, M: DirectSum, D: Filtration | None = None) -> list[str]:
    """Reasons why F is not in F(M); empty when it is."""
    D = D or dimension_filtration(M)
    out = []
    if F.length != D.length:
        out.append(f"length {F.length} differs from the dimension filtration length {D.length}")
    for i in range(min(len(F.terms), len(D.terms))):
        Fi, Di = F.terms[i], D.terms[i]
        if not Di.contains(Fi):
            out.append(f"M_{i} is not contained in D_{i}")
        elif Di.quotient(Fi).length() == INFINITE:
            out.append(f"D_{i}/M_{i} has infinite length")
    return out


def in_calF(F: Filtration, M: DirectSum, D: Filtration | None = None) -> bool:
    defects = calF_defects(F, M, D)
    for msg in defects:
        log.info("filtration not in F(M): %s", msg)
    return not defects


def maximality_probe(D: Filtration) -> bool:
    """Enlarging any D_i (i >= 1) inside D_{i-1} by one generator must not keep dim < d_{i-1}."""
    M = D.module
    for i in range(1, len(D.terms)):
        prev, cur = D.terms[i - 1], D.terms[i]
        for k, (Jp, Jc) in enumerate(zip(prev.tops, cur.tops)):
            for g in Jp.basis():
                if Jc.contains(g):
                    continue
                tops = list(cur.tops)
                tops[k] = Jc + Ideal(M.ring, [g])
                bigger = DirectSum(M.ring, tops, M.bottoms, check=False)
                if bigger.dim < D.dims[i - 1]:
                    return False
    return True


# ---------------------------------------------------------------- classification


@dataclass
class PieceData:
    dim: int
    depth: int | None
    lc_lengths: list  # length of H^j_m for j < dim
    length: object  # module length (finite only in dim <= 0)

    @property
    def is_cm(self) -> bool:
        return self.dim <= 0 or self.depth == self.dim

    @property
    def is_gcm(self) -> bool:
        return all(v != INFINITE for v in self.lc_lengths)

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "depth": self.depth,
            "local_cohomology_lengths": [_json_len(v) for v in self.lc_lengths],
            "cm": self.is_cm,
            "gcm": self.is_gcm,
        }


def _json_len(v):
    return "inf" if v == INFINITE else v


def piece_data(C) -> PieceData:
    """dim, depth and lengths of the lower local cohomology of a graded module."""
    P = prune(present(C))
    dim = C.dim
    if dim <= 0:
        ln = P.length() if P.rank else 0
        return PieceData(dim, 0 if dim == 0 else None, [], ln)
    lc = local_cohomology_lengths(P)
    dp = depth(P)
    return PieceData(dim, dp, lc[:dim], INFINITE)


@dataclass
class FiltrationReport:
    filtration: Filtration
    pieces: list
    verdict: str
    I_pieces: list  # I(C_i) for the pieces above W, None if not gCM
    W_length: int
    I_total: int | None
    C_bound: int | None

    @property
    def is_sequentially_cm(self) -> bool:
        return self.verdict in ("CM", "sCM")

    @property
    def is_sequentially_gcm(self) -> bool:
        return self.verdict in ("CM", "gCM", "sCM", "sgCM")

    @property
    def t(self) -> int:
        return self.filtration.length

    def as_dict(self) -> dict:
        return {
            "dims": list(self.filtration.dims),
            "t": self.t,
            "pieces": [p.as_dict() for p in self.pieces],
            "verdict": self.verdict,
            "I_pieces": self.I_pieces,
            "W_length": self.W_length,
            "I_total": self.I_total,
            "C_bound": self.C_bound,
        }


def classify(M: DirectSum, D: Filtration | None = None) -> FiltrationReport:
    D = D or dimension_filtration(M)
    pieces = [piece_data(C) for C in D.pieces()]
    W = D.terms[-1]
    W_len = W.length()
    all_pieces = pieces + ([piece_data(W)] if not W.is_zero() else [])
    cm = all(p.is_cm for p in all_pieces)
    gcm = all(p.is_gcm for p in all_pieces)
    if len(all_pieces) <= 1:
        verdict = "CM" if cm else ("gCM" if gcm else "none")
    else:
        verdict = "sCM" if cm else ("sgCM" if gcm else "none")
    I_pieces = [stuckrad_vogel_I(p) if p.is_gcm else None for p in pieces]
    I_total = None
    C = None
    if all(v is not None for v in I_pieces):
        I_total = sum(I_pieces) + W_len
        C = regularity_bound_C(I_total, M.dim)
    return FiltrationReport(D, pieces, verdict, I_pieces, W_len, I_total, C)


# ---------------------------------------------------------------- invariants and bounds


def stuckrad_vogel_I(C) -> int:
    """I(C) for a generalized Cohen-Macaulay module, by the closed form
    sum_{j<d} binom(d-1, j) * length(H^j_m(C)); for d <= 0 it is length(C)."""
    p = C if isinstance(C, PieceData) else piece_data(C)
    if p.dim <= 0:
        return p.length if p.length != INFINITE else 0
    if not p.is_gcm:
        raise ValueError("module is not generalized Cohen-Macaulay; I(M) is infinite")
    return sum(comb(p.dim - 1, j) * v for j, v in enumerate(p.lc_lengths))


def I_of_filtration(F: Filtration, M: DirectSum | None = None) -> int:
    """sum_{i<t} I(M_i/M_{i+1}) + length(M_t)."""
    total = 0
    for C in F.pieces():
        total += stuckrad_vogel_I(C)
    last = F.terms[-1].length()
    if last == INFINITE:
        raise ValueError("last filtration term does not have finite length")
    return total + last


def regularity_bound_C(I: int, d: int) -> int:
    """(3I)^{d!} - 2I, clamped at 0."""
    if d < 0:
        return 0
    return max(0, (3 * I) ** factorial(d) - 2 * I)


def coefficient_bound(i: int, d: int, I_total: int, I_top: int, C: int | None = None) -> int:
    """Bound on |a_i|: I(M/M_1) for i = 1, otherwise
    2^{i-1} ((C+1)^{d-1} I + d + C + 2)^{i-1} I."""
    if not 1 <= i <= d:
        raise ValueError(f"coefficient index {i} outside 1..{d}")
    if i == 1:
        return I_top
    C = regularity_bound_C(I_total, d) if C is None else C
    return 2 ** (i - 1) * ((C + 1) ** (d - 1) * I_total + d + C + 2) ** (i - 1) * I_total


def filtration_coefficient_bound(F: Filtration, i: int) -> int:
    d = F.dims[0]
    I_total = I_of_filtration(F)
    I_top = stuckrad_vogel_I(F.pieces()[0]) if F.length else 0
    return coefficient_bound(i, d, I_total, I_top)


def adjusted_upper_bound(F: Filtration, n: int, W_length: int | None = None) -> int:
    """sum_{i<t} binom(n + d_i - 1, d_i - 1) I(M_i/M_{i+1}) + length(M_t) - length(W)."""
    if W_length is None:
        W_length = dimension_filtration(F.module).terms[-1].length()
    total = 0
    for i, C in enumerate(F.pieces()):
        di = F.dims[i]
        total += comb(n + di - 1, di - 1) * stuckrad_vogel_I(C)
    return total + F.terms[-1].length() - W_length


def nonnegativity_threshold(C: int, d: int, I_total: int) -> int:
    """C + binom(C + d - 1, d - 1) I + d."""
    return C + comb(C + d - 1, d - 1) * I_total + d
