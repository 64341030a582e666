"""Systems of parameters: sop, distinguished, good, filter-regular,
superficial (bounded), d- and dd-sequences (bounded), and N(x; M).

Conditions quantified over infinitely many exponents are checked on a box
and reported with the bound used.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Sequence

from .filtration import Filtration, dimension_filtration, largest_submodule
from .groebner import INFINITE
from .ideals import Ideal
from .modules import DirectSum
from .poly import Polynomial

log = logging.getLogger(__name__)


def _ideal(M: DirectSum, xs) -> Ideal:
    return Ideal(M.ring, list(xs))


def _in_max_ideal(x: Polynomial) -> bool:
    return bool(x) and not x.has_constant_term()


# ---------------------------------------------------------------- sop, distinguished, good


def is_sop(xs: Sequence[Polynomial], M: DirectSum) -> bool:
    xs = [M.ring(x) for x in xs]
    if len(xs) != max(M.dim, 0):
        raise ValueError(f"{len(xs)} elements given for a module of dimension {M.dim}")
    if not all(_in_max_ideal(x) for x in xs):
        return False
    return M.quotient_by_ideal(_ideal(M, xs)).length() != INFINITE


def is_distinguished(xs: Sequence[Polynomial], M: DirectSum, F: Filtration | None = None) -> bool:
    """(x_j : j > dim M_i) M_i = 0 for every term M_i, i >= 1."""
    F = F or dimension_filtration(M)
    xs = [M.ring(x) for x in xs]
    for i in range(1, len(F.terms)):
        Mi = F.terms[i]
        tail = xs[max(F.dims[i], 0):]
        if not tail or Mi.is_zero():
            continue
        ann = Mi.annihilator()
        if not all(ann.contains(x) for x in tail):
            return False
    return True


def is_good(xs: Sequence[Polynomial], M: DirectSum) -> bool:
    """(x_{d_i+1}, ..., x_d) M  intersected with D_i is zero for i = 1..t."""
    D = dimension_filtration(M)
    xs = [M.ring(x) for x in xs]
    for i in range(1, len(D.terms)):
        tail = xs[max(D.dims[i], 0):]
        if not tail:
            continue
        a = _ideal(M, tail)
        for (J, I), T in zip(M.summands(), D.terms[i].tops):
            if not I.contains((I + a * J).intersect(T)):
                return False
    return True


# ---------------------------------------------------------------- colon conditions


def _colon_tops(M: DirectSum, a: Ideal, f: Polynomial) -> list:
    """Tops of (aM :_M f)."""
    return [J.intersect((I + a * J).colon_element(f)) for J, I in M.summands()]


def d_sequence_failure(xs: Sequence[Polynomial], M: DirectSum):
    """First (i, k) (1-based) violating (x_<i)M : x_i x_k = (x_<i)M : x_k, or None."""
    R = M.ring
    xs = [R(x) for x in xs]
    for i in range(1, len(xs) + 1):
        a = _ideal(M, xs[: i - 1])
        for k in range(i, len(xs) + 1):
            lhs = _colon_tops(M, a, xs[i - 1] * xs[k - 1])
            rhs = _colon_tops(M, a, xs[k - 1])
            if any(p != q for p, q in zip(lhs, rhs)):
                return (i, k)
    return None


def is_d_sequence(xs: Sequence[Polynomial], M: DirectSum) -> bool:
    return d_sequence_failure(xs, M) is None


def dd_sequence_failure(xs: Sequence[Polynomial], M: DirectSum, B: int = 3):
    """First exponent tuple in {1..B}^s (with the failing truncation level) breaking
    the dd-sequence conditions, or None."""
    if B < 1:
        raise ValueError("B must be positive")
    R = M.ring
    xs = [R(x) for x in xs]
    s = len(xs)
    for ns in product(range(1, B + 1), repeat=s):
        ys = [x**k for x, k in zip(xs, ns)]
        if not is_d_sequence(ys, M):
            return ns, s
        for i in range(1, s):
            Mi = M.quotient_by_ideal(_ideal(M, ys[i:]))
            if not is_d_sequence(ys[:i], Mi):
                return ns, i
    return None


def is_dd_sequence_bounded(xs: Sequence[Polynomial], M: DirectSum, B: int = 3) -> bool:
    return dd_sequence_failure(xs, M, B) is None


# ---------------------------------------------------------------- N(x; M)


def N_failure_stage(xs: Sequence[Polynomial], ns: Sequence[int], M: DirectSum):
    """Smallest i in 0..d-1 where x_{i+1}^{n_{i+1}}, ..., x_d^{n_d} is not a
    distinguished sop of M/(x_1^{n_1}, ..., x_i^{n_i})M; None if none fails."""
    R = M.ring
    ys = [R(x) ** k for x, k in zip(xs, ns)]
    d = len(ys)
    for i in range(d):
        Q = M.quotient_by_ideal(_ideal(M, ys[:i])) if i else M
        rest = ys[i:]
        if Q.dim != len(rest) or not is_sop(rest, Q) or not is_distinguished(rest, Q):
            return i
    return None


def in_N_bounded(xs: Sequence[Polynomial], ns: Sequence[int], M: DirectSum) -> bool:
    return N_failure_stage(xs, ns, M) is None


# ---------------------------------------------------------------- filter-regular, superficial


def is_filter_regular(x: Polynomial, M: DirectSum) -> bool:
    """length(0 :_M x) finite."""
    return M.colon_element(M.ring(x)).length() != INFINITE


def is_superficial_bounded(x: Polynomial, q, M: DirectSum, c: int = 2, w: int = 3) -> bool:
    """(q^{n+1} M : x) intersected with q^c M equals q^n M for n = c..c+w."""
    R = M.ring
    x = R(x)
    q = q if isinstance(q, Ideal) else Ideal(R, list(q))
    if not q.contains(x):
        return False
    powers = {}

    def qp(k):
        if k not in powers:
            powers[k] = q.power(k)
        return powers[k]

    for n in range(c, c + w + 1):
        for J, I in M.summands():
            top = I + qp(n + 1) * J
            lhs = J.intersect(top.colon_element(x)).intersect(I + qp(c) * J)
            if lhs != I + qp(n) * J:
                return False
    return True


# ---------------------------------------------------------------- random distinguished systems


@dataclass
class ParameterSystem:
    elements: list
    seed: int | None = None
    degree_cap: int | None = None
    attempts: int = 0
    flags: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "elements": [str(x) for x in self.elements],
            "seed": self.seed,
            "degree_cap": self.degree_cap,
            "attempts": self.attempts,
            "flags": self.flags,
        }


class SamplerExhausted(RuntimeError):
    pass


def _monomials_of_degree(n: int, e: int):
    for combo in combinations_with_replacement(range(n), e):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def _degree_piece(target: Ideal | None, n: int, e: int) -> list:
    """Monomials of degree e spanning target in degree e (target monomial or maximal)."""
    monos = list(_monomials_of_degree(n, e))
    if target is None:
        return monos
    L = target.monomial
    return [m for m in monos if L.contains_monomial(m)]


def random_distinguished_sop(M: DirectSum, F: Filtration | None = None, seed: int = 0,
                             degree_cap: int | None = None, budget: int = 200) -> ParameterSystem:
    """Random homogeneous distinguished sop; x_j is drawn from the annihilator
    of the terms of dimension < j.  Each x_j first takes the lowest degree
    its target ideal offers; after a failed round the cap escalates and
    degrees are drawn up to the cap."""
    F = F or dimension_filtration(M)
    R = M.ring
    n, d = R.nvars, max(M.dim, 0)
    rng = random.Random(seed)
    targets = []
    for j in range(1, d + 1):
        below = [i for i in range(1, len(F.terms)) if F.dims[i] < j and not F.terms[i].is_zero()]
        if below:
            ann = F.terms[below[0]].annihilator()
            if not ann.is_monomial:
                raise ValueError("random sampling needs monomial annihilators")
            targets.append(ann)
        else:
            targets.append(None)
    cap = degree_cap or 1
    mixed = degree_cap is not None  # lowest degrees first unless a cap is given
    attempts = 0
    while True:
        lows = []
        for T in targets:
            e = next((e for e in range(1, cap + 1) if _degree_piece(T, n, e)), None)
            lows.append(e)
        if all(e is not None for e in lows):
            for _ in range(budget):
                attempts += 1
                xs = []
                for T, e in zip(targets, lows):
                    deg = rng.randint(e, cap) if mixed else e
                    monos = _degree_piece(T, n, deg)
                    coeffs = {}
                    for m in monos:
                        c = rng.randint(-10, 10)
                        if c:
                            coeffs[m] = c
                    if not coeffs:
                        coeffs[monos[0]] = 1
                    xs.append(R.from_dict(coeffs))
                if is_sop(xs, M) and is_distinguished(xs, M, F):
                    return ParameterSystem(xs, seed, cap, attempts, {"sop": True, "distinguished": True})
            mixed = True
        if cap >= 8:
            raise SamplerExhausted(f"no distinguished sop found after {attempts} attempts (degree cap {cap})")
        log.info("escalating degree cap from %d to %d", cap, cap + 1)
        cap += 1
