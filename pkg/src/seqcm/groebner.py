"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a module element is a dict ``{(pos, exps): coeff}``; an ideal
element is the rank-1 case with ``pos == 0``.  Module orders are
position-over-term: a smaller position index is the larger term, with the
ring's monomial order inside each position.
"""

from __future__ import annotations

import heapq
import logging
from typing import Iterable, Sequence

from .poly import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

log = logging.getLogger(__name__)

INFINITE = float("inf")


class OrderMismatch(ValueError):
    pass


# ---------------------------------------------------------------- conversion


def poly_to_vec(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, e): c for e, c in f.terms.items()}


def vector_to_vec(v: Sequence[Polynomial]) -> dict:
    out = {}
    for pos, f in enumerate(v):
        for e, c in f.terms.items():
            out[(pos, e)] = c
    return out


def vec_to_poly(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


def vec_to_vector(ring: PolyRing, v: dict, rank: int) -> tuple:
    parts = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        parts[pos][e] = c
    return tuple(Polynomial(ring, p) for p in parts)


# ---------------------------------------------------------------- primitives


def _tkey(order: MonomialOrder):
    key = order.key

    def tkey(t):
        return (t[0], key(t[1]))

    return tkey


def leading(v: dict, tkey):
    t = min(v, key=tkey)
    return t, v[t]


def vec_scale_shift(v: dict, c, m) -> dict:
    return {(p, mono_mul(e, m)): c * a for (p, e), a in v.items()}


def vec_add(a: dict, b: dict, c=None) -> dict:
    """a + c*b"""
    out = dict(a)
    for t, x in b.items():
        if c is not None:
            x = c * x
        s = out.get(t)
        if s is None:
            out[t] = x
        else:
            s = s + x
            if s:
                out[t] = s
            else:
                del out[t]
    return out


def vec_mul_poly(v: dict, f: Polynomial) -> dict:
    out: dict = {}
    for (p, e), a in v.items():
        for m, c in f.terms.items():
            t = (p, mono_mul(e, m))
            s = out.get(t)
            out[t] = a * c if s is None else s + a * c
    return {t: c for t, c in out.items() if c}


def vec_degree(v: dict, shifts: Sequence[int] | None = None) -> int:
    t = next(iter(v))
    return sum(t[1]) + (shifts[t[0]] if shifts else 0)


class _Basis:
    """Mutable working basis: leading data indexed by position."""

    def __init__(self, tkey):
        self.tkey = tkey
        self.elems: list[dict] = []
        self.lts: list[tuple] = []
        self.lcs: list = []
        self.active: set[int] = set()

    def add(self, v: dict) -> int:
        t, c = leading(v, self.tkey)
        self.elems.append(v)
        self.lts.append(t)
        self.lcs.append(c)
        return len(self.elems) - 1

    def reducers(self, idx: Iterable[int]):
        return [(self.lts[i], self.lcs[i], self.elems[i]) for i in idx]


def _find_reducer(t, reducers):
    pos, e = t
    for lt, lc, g in reducers:
        if lt[0] == pos and mono_divides(lt[1], e):
            return lt, lc, g
    return None


def reduce_vec(v: dict, reducers, tkey, full: bool = True) -> dict:
    """Normal form of v modulo reducers [(lt, lc, vec), ...]."""
    f = dict(v)
    heap = [(tkey(t), t) for t in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.get(t)
        if c is None:
            continue
        hit = _find_reducer(t, reducers)
        if hit is None:
            if not full:
                rem.update(f)
                return rem
            rem[t] = c
            del f[t]
            continue
        lt, lc, g = hit
        q = c / lc
        m = mono_div(t[1], lt[1])
        for (gp, ge), gc in g.items():
            nt = (gp, mono_mul(ge, m))
            old = f.get(nt)
            if old is None:
                f[nt] = -q * gc
                heapq.heappush(heap, (tkey(nt), nt))
            else:
                s = old - q * gc
                if s:
                    f[nt] = s
                else:
                    del f[nt]
    return rem


def _monic(v: dict, tkey) -> dict:
    _, c = leading(v, tkey)
    if c == 1:
        return v
    inv = 1 / c
    return {t: inv * a for t, a in v.items()}


def _spoly(b: _Basis, i: int, j: int) -> dict:
    ti, tj = b.lts[i], b.lts[j]
    l = mono_lcm(ti[1], tj[1])
    a = vec_scale_shift(b.elems[i], 1 / b.lcs[i], mono_div(l, ti[1]))
    return vec_add(a, vec_scale_shift(b.elems[j], 1 / b.lcs[j], mono_div(l, tj[1])), -1)


# ---------------------------------------------------------------- Buchberger


class BuchbergerStats:
    def __init__(self):
        self.pairs = 0
        self.zero_reductions = 0
        self.skipped = 0

    def as_dict(self):
        return dict(pairs=self.pairs, zero_reductions=self.zero_reductions)


def buchberger(gens: Iterable[dict], order: MonomialOrder, rank1: bool = True, stats=None) -> list[dict]:
    """Reduced Groebner basis of the span of ``gens`` (internal vectors).

    Pair selection follows the normal strategy (smallest lcm first, ties by
    index) with Gebauer-Moeller criteria; the result is sorted decreasing.
    """
    tkey = _tkey(order)
    gens = [dict(g) for g in gens if g]
    # monomial generators need no S-pairs: minimalize directly
    if rank1 and gens and all(len(g) == 1 for g in gens):
        return _minimal_monomial_basis(gens, tkey, order)

    gens.sort(key=lambda g: tkey(leading(g, tkey)[0]), reverse=True)
    b = _Basis(tkey)
    pairs: set[tuple[int, int]] = set()
    G: set[int] = set()

    keys: dict = {}

    def lcm_key(p):
        k = keys.get(p)
        if k is None:
            i, j = p
            t = b.lts[i]
            k = keys[p] = (tkey((t[0], mono_lcm(t[1], b.lts[j][1]))), min(i, j), max(i, j))
        return k

    def update(G, B, ih):
        mh = b.lts[ih]

        def same(i):
            return b.lts[i][0] == mh[0]

        def coprime(m1, m2):
            return rank1 and not any(x and y for x, y in zip(m1, m2))

        C = sorted(i for i in G if same(i))
        D = []
        while C:
            ig = C.pop()
            mg = b.lts[ig][1]
            lhg = mono_lcm(mh[1], mg)

            def lcm_divides(ip):
                return mono_divides(mono_lcm(mh[1], b.lts[ip][1]), lhg)

            if coprime(mh[1], mg) or (
                not any(lcm_divides(ipx) for ipx in C)
                and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.append((ih, ig))
        E = set()
        for ih_, ig in D:
            if not coprime(mh[1], b.lts[ig][1]):
                E.add((ih_, ig))
            elif stats is not None:
                stats.skipped += 1
        B_new = set()
        for ig1, ig2 in B:
            m1, m2 = b.lts[ig1], b.lts[ig2]
            if m1[0] != mh[0]:
                B_new.add((ig1, ig2))
                continue
            l12 = mono_lcm(m1[1], m2[1])
            if (
                not mono_divides(mh[1], l12)
                or mono_lcm(m1[1], mh[1]) == l12
                or mono_lcm(m2[1], mh[1]) == l12
            ):
                B_new.add((ig1, ig2))
            elif stats is not None:
                stats.skipped += 1
        B_new |= E
        G_new = {ig for ig in G if not (b.lts[ig][0] == mh[0] and mono_divides(mh[1], b.lts[ig][1]))}
        G_new.add(ih)
        return G_new, B_new

    for g in gens:
        h = reduce_vec(g, b.reducers(sorted(G)), tkey)
        if h:
            ih = b.add(_monic(h, tkey))
            G, pairs = update(G, pairs, ih)

    while pairs:
        p = min(pairs, key=lcm_key)
        pairs.discard(p)
        if stats is not None:
            stats.pairs += 1
        s = _spoly(b, *p)
        h = reduce_vec(s, b.reducers(sorted(G)), tkey) if s else s
        if h:
            ih = b.add(_monic(h, tkey))
            G, pairs = update(G, pairs, ih)
        elif stats is not None:
            stats.zero_reductions += 1

    # reduced basis
    idx = sorted(G)
    minimal = [
        i
        for i in idx
        if not any(
            j != i
            and b.lts[j][0] == b.lts[i][0]
            and mono_divides(b.lts[j][1], b.lts[i][1])
            and (b.lts[j] != b.lts[i] or j < i)
            for j in idx
        )
    ]
    out = []
    for i in minimal:
        others = b.reducers([j for j in minimal if j != i])
        lt = b.lts[i]
        rest = {t: c for t, c in b.elems[i].items() if t != lt}
        r = reduce_vec(rest, others, tkey)
        r[lt] = b.lcs[i]
        out.append(_monic(r, tkey))
    out.sort(key=lambda v: tkey(leading(v, tkey)[0]))
    if stats is not None:
        log.debug("buchberger: %s", stats.as_dict())
    return out


def _minimal_monomial_basis(gens, tkey, order):
    terms = sorted({next(iter(g)) for g in gens}, key=lambda t: sum(t[1]))
    keep: list = []
    for t in terms:
        if not any(k[0] == t[0] and mono_divides(k[1], t[1]) for k in keep):
            keep.append(t)
    c = next(iter(gens[0].values()))
    one = c / c
    out = [{t: one} for t in keep]
    out.sort(key=lambda v: tkey(next(iter(v))))
    return out


# ---------------------------------------------------------------- public API


class GroebnerBasis:
    """Reduced Groebner basis of an ideal (rank None) or a submodule of R^rank."""

    def __init__(self, ring: PolyRing, elems: list[dict], order: MonomialOrder, rank: int | None):
        self.ring = ring
        self.order = order
        self.rank = rank
        self.elems = elems
        self.reduced = True
        self._tkey = _tkey(order)
        self._reducers = [(leading(v, self._tkey)) + (v,) for v in elems]

    @property
    def is_ideal(self) -> bool:
        return self.rank is None

    @property
    def free_rank(self) -> int:
        return 1 if self.rank is None else self.rank

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        if self.is_ideal:
            return iter(self.polys())
        return iter(self.vectors())

    def polys(self) -> list[Polynomial]:
        return [vec_to_poly(self.ring, v) for v in self.elems]

    def vectors(self) -> list[tuple]:
        return [vec_to_vector(self.ring, v, self.free_rank) for v in self.elems]

    def leading_terms(self) -> list[tuple]:
        return [r[0] for r in self._reducers]

    def leading_module(self) -> dict[int, list]:
        """Minimal generators of the leading monomial ideal, per position."""
        out: dict[int, list] = {p: [] for p in range(self.free_rank)}
        for pos, e in self.leading_terms():
            out[pos].append(e)
        return out

    def _as_vec(self, x) -> dict:
        if isinstance(x, dict):
            return x
        if isinstance(x, Polynomial):
            if x.ring.names != self.ring.names:
                raise OrderMismatch("element from a different ring")
            return poly_to_vec(x)
        return vector_to_vec(x)

    def reduce_internal(self, v: dict) -> dict:
        return reduce_vec(v, self._reducers, self._tkey)

    def normal_form(self, x):
        r = self.reduce_internal(self._as_vec(x))
        if self.is_ideal:
            return vec_to_poly(self.ring, r)
        return vec_to_vector(self.ring, r, self.free_rank)

    def contains(self, x) -> bool:
        return not self.reduce_internal(self._as_vec(x))

    def length(self):
        return length_of_quotient(self)

    def krull_dim(self) -> int:
        return krull_dim(self)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order == other.order
            and self.rank == other.rank
            and self.elems == other.elems
        )

    def __repr__(self):
        return f"GroebnerBasis({list(self)!r}, order={self.order!r})"


def groebner_basis(gens, ring: PolyRing | None = None, order: MonomialOrder | None = None,
                   rank: int | None = None, stats=None) -> GroebnerBasis:
    """Reduced Groebner basis of polynomials (ideal) or vectors (rank given)."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring if isinstance(gens[0], Polynomial) else gens[0][0].ring
    order = order or ring.order
    if rank is None:
        vecs = [poly_to_vec(ring(g)) for g in gens]
    else:
        vecs = []
        for g in gens:
            if isinstance(g, dict):
                vecs.append(g)
            else:
                if len(g) != rank:
                    raise ValueError(f"vector of length {len(g)} in a rank-{rank} module")
                vecs.append(vector_to_vec(g))
    elems = buchberger(vecs, order, rank1=rank is None, stats=stats)
    return GroebnerBasis(ring, elems, order, rank)


def normal_form(f, gb: GroebnerBasis, order: MonomialOrder | None = None):
    if order is not None and order != gb.order:
        raise OrderMismatch(f"basis computed for {gb.order!r}, asked for {order!r}")
    return gb.normal_form(f)


def divide(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder | None = None):
    """Multivariate division: f = sum q_i g_i + r (no term of r divisible by any LT(g_i))."""
    R = f.ring
    order = order or R.order
    key = order.key
    lts = [g.leading_term(order) for g in divisors]
    quots = [dict() for _ in divisors]
    p = dict(f.terms)
    rem = {}
    while p:
        e = min(p, key=key)
        c = p[e]
        for k, (le, lc) in enumerate(lts):
            if mono_divides(le, e):
                m = mono_div(e, le)
                q = c / lc
                quots[k][m] = quots[k].get(m, 0) + q
                for ge, gc in divisors[k].terms.items():
                    t = mono_mul(ge, m)
                    s = p.get(t, 0) - q * gc
                    if s:
                        p[t] = s
                    else:
                        p.pop(t, None)
                break
        else:
            rem[e] = c
            del p[e]
    return [Polynomial(R, {m: c for m, c in q.items() if c}) for q in quots], Polynomial(R, rem)


def spair_check(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-pair reduces to zero."""
    b = _Basis(gb._tkey)
    for v in gb.elems:
        b.add(v)
    n = len(gb.elems)
    for i in range(n):
        for j in range(i + 1, n):
            if b.lts[i][0] != b.lts[j][0]:
                continue
            s = _spoly(b, i, j)
            if s and gb.reduce_internal(s):
                return False
    return True


# ---------------------------------------------------------------- lengths and dimension


def length_of_quotient(gb: GroebnerBasis):
    """dim_k F/N by counting standard monomials; INFINITE if not finite."""
    from .monomial import MonomialIdeal

    n = gb.ring.nvars
    total = 0
    for pos, lms in gb.leading_module().items():
        I = MonomialIdeal(lms, n)
        ln = I.quotient_length()
        if ln == INFINITE:
            return INFINITE
        total += ln
    return total


def krull_dim(gb: GroebnerBasis) -> int:
    """Dimension of F/N: max over positions of dim R/LT_pos(N); -1 for the zero module."""
    from .monomial import MonomialIdeal

    n = gb.ring.nvars
    return max(
        (MonomialIdeal(lms, n).dim() for lms in gb.leading_module().values()),
        default=-1,
    )


# ---------------------------------------------------------------- syzygies and lifting


def syzygy_data(vecs: Sequence[dict], rank: int, ring: PolyRing, order: MonomialOrder):
    """GB of the extended vectors (v_i ; e_i) under POT.

    Returns (gb_elems, syz) where syz are generators of the syzygy module of
    ``vecs`` as internal vectors in R^len(vecs).
    """
    zero = ring.zero_exps()
    one = ring.field.one
    ext = []
    for i, v in enumerate(vecs):
        w = dict(v)
        w[(rank + i, zero)] = one
        ext.append(w)
    elems = buchberger(ext, order, rank1=False)
    tkey = _tkey(order)
    syz = []
    for w in elems:
        t, _ = leading(w, tkey)
        if t[0] >= rank:
            syz.append({(p - rank, e): c for (p, e), c in w.items()})
    return elems, syz


def syzygies(gens, ring: PolyRing, rank: int | None = None, order: MonomialOrder | None = None) -> list[tuple]:
    """Generators of the module of relations among ``gens`` (polynomials or vectors)."""
    order = order or ring.order
    if rank is None:
        vecs = [poly_to_vec(g) for g in gens]
        r = 1
    else:
        vecs = [g if isinstance(g, dict) else vector_to_vec(g) for g in gens]
        r = rank
    _, syz = syzygy_data(vecs, r, ring, order)
    return [vec_to_vector(ring, s, len(vecs)) for s in syz]


def lift(targets, gens, ring: PolyRing, rank: int | None = None, order: MonomialOrder | None = None):
    """Coefficient vectors a with sum a_i gens_i = target, or None if not a member."""
    order = order or ring.order
    r = 1 if rank is None else rank
    conv = poly_to_vec if rank is None else (lambda g: g if isinstance(g, dict) else vector_to_vec(g))
    vecs = [conv(g) for g in gens]
    elems, _ = syzygy_data(vecs, r, ring, order)
    tkey = _tkey(order)
    reducers = [leading(w, tkey) + (w,) for w in elems]
    out = []
    for t in targets:
        nf = reduce_vec(conv(t), reducers, tkey)
        if any(p < r for (p, _) in nf):
            out.append(None)
            continue
        coeffs = {(p - r, e): -c for (p, e), c in nf.items()}
        out.append(vec_to_vector(ring, coeffs, len(vecs)))
    return out
