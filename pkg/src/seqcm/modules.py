"""Finitely presented modules over a polynomial ring.

Two representations are used.  :class:`DirectSum` is a diagonal subquotient
``(+)_k J_k / I_k`` of a free module, which covers the input modules, every
term of their dimension filtrations, and their quotients by ideals.
:class:`PresentedModule` is a cokernel ``R^r / N`` and appears for general
subquotients and Ext modules.  Resolutions, Ext and local cohomology work on
presented modules; lengths and Hilbert-Samuel data stay diagonal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .groebner import (
    INFINITE,
    GroebnerBasis,
    buchberger,
    groebner_basis,
    syzygy_data,
    vec_to_vector,
    vector_to_vec,
)
from .ideals import Ideal, colength
from .poly import Polynomial, PolyRing

log = logging.getLogger(__name__)


class NotGraded(ValueError):
    """Raised where a computation needs a graded presentation."""


# ---------------------------------------------------------------- diagonal modules


class DirectSum:
    """The module ``(+)_k J_k / I_k`` with ideals ``I_k <= J_k``.

    With every ``J_k = R`` this is the direct sum of cyclic modules ``R/I_k``;
    submodules with the same ``I_k`` (e.g. dimension filtration terms) and
    quotients by ideals stay in this form.
    """

    def __init__(self, ring: PolyRing, tops: Sequence[Ideal], bottoms: Sequence[Ideal], check: bool = True):
        if len(tops) != len(bottoms):
            raise ValueError("tops and bottoms differ in length")
        self.ring = ring
        self.tops = tuple(tops)
        self.bottoms = tuple(bottoms)
        if check:
            for J, I in zip(self.tops, self.bottoms):
                if not J.contains(I):
                    raise ValueError(f"{I} is not contained in {J}")

    @classmethod
    def cyclic(cls, ring: PolyRing, ideals: Iterable) -> "DirectSum":
        ideals = [I if isinstance(I, Ideal) else Ideal(ring, I) for I in ideals]
        return cls(ring, [Ideal.unit(ring)] * len(ideals), ideals, check=False)

    @property
    def nsummands(self) -> int:
        return len(self.tops)

    def summands(self) -> list[tuple[Ideal, Ideal]]:
        return list(zip(self.tops, self.bottoms))

    @cached_property
    def is_monomial(self) -> bool:
        return all(J.is_monomial and I.is_monomial for J, I in self.summands())

    def is_graded(self) -> bool:
        return all(J.is_homogeneous() and I.is_homogeneous() for J, I in self.summands())

    def __repr__(self):
        parts = []
        for J, I in self.summands():
            if J.is_zero():
                parts.append("0")
                continue
            top = "R" if J.is_unit() else f"({', '.join(map(str, J.gens))})"
            parts.append(f"{top}/({', '.join(map(str, I.gens))})")
        return " + ".join(parts) or "0"

    def __eq__(self, other):
        return (
            isinstance(other, DirectSum)
            and self.nsummands == other.nsummands
            and all(a == b for a, b in zip(self.tops, other.tops))
            and all(a == b for a, b in zip(self.bottoms, other.bottoms))
        )

    def __hash__(self):
        return hash((self.tops, self.bottoms))

    # -- structure

    def ann_summand(self, k: int) -> Ideal:
        return self.bottoms[k].colon(self.tops[k])

    def is_zero(self) -> bool:
        return all(I.contains(J) for J, I in self.summands())

    def summand_dim(self, k: int) -> int:
        J, I = self.tops[k], self.bottoms[k]
        if I.contains(J):
            return -1
        if J.is_unit():
            return I.dim()
        return self.ann_summand(k).dim()

    @cached_property
    def dim(self) -> int:
        return max((self.summand_dim(k) for k in range(self.nsummands)), default=-1)

    def annihilator(self) -> Ideal:
        out = Ideal.unit(self.ring)
        for k in range(self.nsummands):
            out = out.intersect(self.ann_summand(k))
        return out

    def length(self):
        total = 0
        for J, I in self.summands():
            ln = colength(I, J)
            if ln == INFINITE:
                return INFINITE
            total += ln
        return total

    def contains(self, other: "DirectSum") -> bool:
        return all(a.contains(b) for a, b in zip(self.tops, other.tops))

    def submodule(self, tops: Sequence[Ideal]) -> "DirectSum":
        """Diagonal submodule with the same bottoms; tops are intersected with ours."""
        return DirectSum(self.ring, [J.intersect(T) for J, T in zip(self.tops, tops)], self.bottoms, check=False)

    def quotient(self, sub: "DirectSum") -> "DirectSum":
        """M / sub for a diagonal submodule sub (same bottoms)."""
        return DirectSum(self.ring, self.tops, sub.tops, check=False)

    def quotient_by_ideal(self, a: Ideal) -> "DirectSum":
        """M / aM."""
        return DirectSum(self.ring, self.tops, [I + a * J for J, I in self.summands()], check=False)

    def colon_element(self, x: Polynomial) -> "DirectSum":
        """The submodule (0 :_M x)."""
        return DirectSum(
            self.ring, [J.intersect(I.colon_element(x)) for J, I in self.summands()], self.bottoms, check=False
        )

    def torsion(self, a: Ideal) -> "DirectSum":
        """H^0_a(M) = union of (0 :_M a^t)."""
        return DirectSum(
            self.ring, [J.intersect(I.saturate(a)) for J, I in self.summands()], self.bottoms, check=False
        )

    def without_zero_summands(self) -> "DirectSum":
        keep = [k for k in range(self.nsummands) if not self.bottoms[k].contains(self.tops[k])]
        return DirectSum(self.ring, [self.tops[k] for k in keep], [self.bottoms[k] for k in keep], check=False)


DiagonalSubmodule = DirectSum


# ---------------------------------------------------------------- presented modules


def _zero_vec(ring: PolyRing, r: int) -> tuple:
    return tuple(ring.zero() for _ in range(r))


def _is_unit_poly(f: Polynomial) -> bool:
    return bool(f) and f.is_constant()


class PresentedModule:
    """Cokernel of ``R^m -> R^r``; ``relations`` are the columns (vectors in R^r).

    ``shifts`` are generator degrees when the presentation is graded.
    """

    def __init__(self, ring: PolyRing, rank: int, relations: Iterable, shifts: Sequence[int] | None = None,
                 kind: str = "quotient"):
        self.ring = ring
        self.rank = rank
        self.relations = tuple(tuple(ring(c) for c in v) for v in relations if any(v))
        for v in self.relations:
            if len(v) != rank:
                raise ValueError(f"relation of length {len(v)} in a rank-{rank} module")
        self.shifts = tuple(shifts) if shifts is not None else None
        self.kind = kind

    def __repr__(self):
        return f"PresentedModule(rank={self.rank}, relations={len(self.relations)}, kind={self.kind})"

    @cached_property
    def gb(self) -> GroebnerBasis:
        return groebner_basis(self.relations, self.ring, rank=self.rank)

    def length(self):
        if self.rank == 0:
            return 0
        return self.gb.length()

    @cached_property
    def dim(self) -> int:
        if self.rank == 0:
            return -1
        return self.gb.krull_dim()

    def is_zero(self) -> bool:
        return self.rank == 0 or self.length() == 0

    def column_degree(self, v) -> int | None:
        if self.shifts is None:
            return None
        degs = {f.degree() + self.shifts[p] for p, f in enumerate(v) if f}
        if len(degs) != 1 or not all(f.is_homogeneous() for f in v if f):
            return None
        return degs.pop()

    def is_graded(self) -> bool:
        return self.shifts is not None and all(self.column_degree(v) is not None for v in self.relations)

    def annihilator(self) -> Ideal:
        """Intersection over basis vectors e of (N : e)."""
        R = self.ring
        out = Ideal.unit(R)
        for i in range(self.rank):
            e = tuple(R.one() if j == i else R.zero() for j in range(self.rank))
            out = out.intersect(_colon_vector(R, self.rank, self.relations, e))
        return out

    def pruned(self) -> "PresentedModule":
        return prune(self)


def _colon_vector(ring: PolyRing, rank: int, rels: Sequence[tuple], e: tuple) -> Ideal:
    """{f : f e in N}."""
    vecs = [vector_to_vec(e)] + [vector_to_vec(v) for v in rels]
    _, syz = syzygy_data(vecs, rank, ring, ring.order)
    return Ideal(ring, [vec_to_vector(ring, s, len(vecs))[0] for s in syz])


def prune(P: PresentedModule) -> PresentedModule:
    """Remove generators killed by a relation with a unit entry."""
    R = P.ring
    rank = P.rank
    rels = [list(v) for v in P.relations]
    shifts = list(P.shifts) if P.shifts is not None else None
    alive = list(range(rank))
    while True:
        hit = None
        for ci, v in enumerate(rels):
            for pos in range(len(v)):
                if _is_unit_poly(v[pos]):
                    hit = (ci, pos)
                    break
            if hit:
                break
        if hit is None:
            break
        ci, pos = hit
        col = rels.pop(ci)
        c = col[pos]
        new = []
        for v in rels:
            if v[pos]:
                f = v[pos].scale(R.field.one / c.lc())
                v = [a - f * b for a, b in zip(v, col)]
            del v[pos]
            if any(v):
                new.append(v)
        rels = new
        del alive[pos]
        if shifts is not None:
            del shifts[pos]
    return PresentedModule(R, len(alive), rels, shifts, P.kind)


def subquotient(ring: PolyRing, rank: int, gens: Sequence[tuple], rels: Sequence[tuple],
                shifts: Sequence[int] | None = None, kind: str = "subquotient") -> PresentedModule:
    """Presentation of (<gens> + <rels>)/<rels> inside R^rank.

    Relations on the generators are the syzygies of gens together with rels,
    projected to the gens coordinates.
    """
    gens = [tuple(ring(c) for c in g) for g in gens]
    m = len(gens)
    vecs = [vector_to_vec(g) for g in gens] + [vector_to_vec(r) for r in rels if any(r)]
    if m == 0:
        return PresentedModule(ring, 0, [], [], kind)
    _, syz = syzygy_data(vecs, rank, ring, ring.order)
    relations = []
    for s in syz:
        v = vec_to_vector(ring, s, len(vecs))[:m]
        if any(v):
            relations.append(v)
    new_shifts = None
    if shifts is not None:
        new_shifts = []
        for g in gens:
            d = {f.degree() + shifts[p] for p, f in enumerate(g) if f}
            new_shifts.append(min(d) if d else 0)
    return prune(PresentedModule(ring, m, relations, new_shifts, kind))


def present(M) -> PresentedModule:
    """Presentation of a diagonal module (or pass-through for presented ones)."""
    if isinstance(M, PresentedModule):
        return M
    R = M.ring
    blocks = []
    for J, I in M.summands():
        if I.contains(J):
            continue
        if J.is_unit():
            blocks.append(PresentedModule(R, 1, [(g,) for g in I.basis()], [0], "cyclic"))
        else:
            Jg = J.basis()
            blocks.append(subquotient(R, 1, [(g,) for g in Jg], [(g,) for g in I.basis()], [0]))
    return direct_sum_presented(R, blocks, kind="direct-sum")


def direct_sum_presented(ring: PolyRing, blocks: Sequence[PresentedModule], kind: str = "direct-sum") -> PresentedModule:
    rank = sum(b.rank for b in blocks)
    rels, shifts, off = [], [], 0
    graded = all(b.shifts is not None for b in blocks)
    for b in blocks:
        for v in b.relations:
            rels.append(_zero_vec(ring, off) + v + _zero_vec(ring, rank - off - b.rank))
        if graded:
            shifts.extend(b.shifts)
        off += b.rank
    return PresentedModule(ring, rank, rels, shifts if graded else None, kind)


# ---------------------------------------------------------------- resolutions


def _submodule_gb(ring, vecs, rank):
    return buchberger([vector_to_vec(v) for v in vecs], ring.order, rank1=False)


def minimal_generators(ring: PolyRing, vecs: Sequence[tuple], rank: int, degree) -> list[tuple]:
    """Greedy minimal generating set of a graded submodule, scanning by degree."""
    from .groebner import GroebnerBasis

    vecs = sorted((v for v in vecs if any(v)), key=degree)
    kept: list = []
    gb = None
    for v in vecs:
        if gb is not None and gb.contains(v):
            continue
        kept.append(v)
        gb = GroebnerBasis(ring, _submodule_gb(ring, kept, rank), ring.order, rank)
    return kept


@dataclass
class Resolution:
    """Free resolution F_0 <- F_1 <- ... ; ``maps[j]`` lists the columns of d_{j+1}."""

    ring: PolyRing
    ranks: list
    maps: list
    shifts: list | None
    minimal: bool

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def pd(self) -> int:
        return self.length

    def betti(self) -> list[int]:
        return list(self.ranks)

    def graded_betti(self) -> list[dict]:
        out = []
        for sh in self.shifts or []:
            d: dict = {}
            for s in sh:
                d[s] = d.get(s, 0) + 1
            out.append(dict(sorted(d.items())))
        return out

    def is_complex(self) -> bool:
        """d_j o d_{j+1} = 0 for all j."""
        for j in range(len(self.maps) - 1):
            a, b = self.maps[j], self.maps[j + 1]
            for col in b:
                img = [sum((col[k] * a[k][p] for k in range(len(a))), self.ring.zero()) for p in range(self.ranks[j])]
                if any(img):
                    return False
        return True


def _degree_fn(shifts):
    def degree(v):
        for p, f in enumerate(v):
            if f:
                return f.degree() + shifts[p]
        return 0

    return degree


def free_resolution(M) -> Resolution:
    """Minimal graded free resolution when the presentation is graded,
    otherwise a (non-minimal) resolution by iterated syzygies."""
    P = prune(present(M))
    R = P.ring
    graded = P.is_graded() if P.shifts is not None else False
    ranks = [P.rank]
    maps: list = []
    shifts = [list(P.shifts)] if graded else None
    cols = list(P.relations)
    rank = P.rank
    while cols:
        if graded:
            cols = minimal_generators(R, cols, rank, _degree_fn(shifts[-1]))
            shifts.append([_degree_fn(shifts[-1])(v) for v in cols])
        maps.append(cols)
        ranks.append(len(cols))
        _, syz = syzygy_data([vector_to_vec(v) for v in cols], rank, R, R.order)
        rank = len(cols)
        cols = [vec_to_vector(R, s, rank) for s in syz]
        cols = [v for v in cols if any(v)]
        if len(maps) > R.nvars + 1:
            raise RuntimeError("resolution longer than the number of variables")
    return Resolution(R, ranks, maps, shifts, graded)


def minimal_free_resolution(M) -> Resolution:
    P = prune(present(M))
    if not P.is_graded():
        raise NotGraded("minimal resolutions need a graded presentation")
    return free_resolution(P)


def projective_dimension(M) -> int:
    return minimal_free_resolution(M).pd


def depth(M) -> int:
    """Auslander-Buchsbaum: n - pd for graded M."""
    P = prune(present(M))
    if P.is_zero():
        raise ValueError("depth of the zero module")
    return P.ring.nvars - minimal_free_resolution(P).pd


def ext_module(M, j: int, resolution: Resolution | None = None) -> PresentedModule:
    """Ext^j(M, R) as the cohomology of the dual of a free resolution."""
    R = M.ring
    if not 0 <= j <= R.nvars:
        raise ValueError(f"Ext index {j} outside 0..{R.nvars}")
    res = resolution or free_resolution(M)
    if j > res.length:
        return PresentedModule(R, 0, [], [], "ext")
    fj = res.ranks[j]
    # kernel of d_{j+1}^T: syzygies of the rows of d_{j+1}
    if j < res.length:
        cols = res.maps[j]
        rows = [tuple(col[p] for col in cols) for p in range(fj)]
        _, syz = syzygy_data([vector_to_vec(r) for r in rows], len(cols), R, R.order)
        ker = [vec_to_vector(R, s, fj) for s in syz]
    else:
        ker = [tuple(R.one() if q == p else R.zero() for q in range(fj)) for p in range(fj)]
    # image of d_j^T: rows of d_j
    if j >= 1:
        prev = res.maps[j - 1]
        im = [tuple(col[p] for col in prev) for p in range(res.ranks[j - 1])]
    else:
        im = []
    if not ker:
        return PresentedModule(R, 0, [], [], "ext")
    return subquotient(R, fj, ker, im, kind="ext")


def local_cohomology_length(M, i: int, resolution: Resolution | None = None):
    """length of H^i_m(M) via graded duality with Ext^{n-i}(M, R)."""
    R = M.ring
    n = R.nvars
    if i < 0 or i > n:
        return 0
    P = prune(present(M))
    if not P.is_graded():
        raise NotGraded("local cohomology via duality needs a graded module")
    E = ext_module(P, n - i, resolution or free_resolution(P))
    if E.rank == 0:
        return 0
    return E.length() if E.dim <= 0 else INFINITE


def local_cohomology_lengths(M) -> list:
    """[length H^i_m(M) for i = 0..n], sharing one resolution."""
    P = prune(present(M))
    if not P.is_graded():
        raise NotGraded("local cohomology via duality needs a graded module")
    res = free_resolution(P)
    return [local_cohomology_length(P, i, res) for i in range(P.ring.nvars + 1)]


def module_dim(M) -> int:
    return M.dim


def annihilator(M) -> Ideal:
    return M.annihilator()


def torsion_submodule(M: DirectSum, a: Ideal) -> DirectSum:
    return M.torsion(a)


__all__ = [
    "DirectSum",
    "DiagonalSubmodule",
    "PresentedModule",
    "Resolution",
    "NotGraded",
    "present",
    "prune",
    "subquotient",
    "free_resolution",
    "minimal_free_resolution",
    "projective_dimension",
    "depth",
    "ext_module",
    "local_cohomology_length",
    "local_cohomology_lengths",
    "module_dim",
    "annihilator",
    "torsion_submodule",
]
