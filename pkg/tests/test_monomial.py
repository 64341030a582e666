from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from seqcm import INFINITE, MonomialIdeal, MonomialPrime, PolyRing
from seqcm.ideals import Ideal
from seqcm.monomial import (
    adeg_oracle,
    assoc_primes_monomial,
    hilbert_series_numerator,
    irreducible_decomposition,
    local_h0_length,
    localize_monomial,
    tpoly_mul,
)

from strategies import exps


def M2(*gens):
    return MonomialIdeal(gens, 2)


def M4(*gens):
    return MonomialIdeal(gens, 4)


def test_decompositions():
    assert set(irreducible_decomposition(M2((2, 0), (1, 1)))) == {M2((1, 0)), M2((2, 0), (0, 1))}
    assert set(irreducible_decomposition(M2((1, 1)))) == {M2((1, 0)), M2((0, 1))}
    assert irreducible_decomposition(M2((2, 0))) == [M2((2, 0))]


def test_associated_primes():
    assert set(assoc_primes_monomial(M2((2, 0), (1, 1)))) == {MonomialPrime({0}, 2), MonomialPrime({0, 1}, 2)}
    square = M4((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))
    assert set(assoc_primes_monomial(square)) == {MonomialPrime({0, 1}, 4), MonomialPrime({2, 3}, 4)}
    assert assoc_primes_monomial(MonomialIdeal([(0, 0, 2)], 3)) == [MonomialPrime({2}, 3)]


def test_hilbert_numerators():
    assert hilbert_series_numerator(M2((1, 0))) == [1, -1]
    assert hilbert_series_numerator(M2((2, 0), (1, 1))) == [1, 0, -2, 1]
    assert hilbert_series_numerator(MonomialIdeal.unit(2)) == []


def test_localizations():
    assert localize_monomial(MonomialIdeal([(0, 0, 2)], 3), MonomialPrime({2}, 3)) == MonomialIdeal([(2,)], 1)
    square = M4((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))
    assert localize_monomial(square, MonomialPrime({0, 1}, 4)) == M2((1, 0), (0, 1))
    assert localize_monomial(M2((2, 0), (1, 1)), MonomialPrime({0}, 2)) == MonomialIdeal([(1,)], 1)


def test_local_h0_lengths():
    assert local_h0_length(MonomialIdeal([(0, 0, 2)], 3), MonomialPrime({2}, 3)) == 2
    assert local_h0_length(M2((2, 0), (1, 1)), MonomialPrime({0, 1}, 2)) == 1
    assert local_h0_length(M2((1, 0)), MonomialPrime({0}, 2)) == 1
    assert local_h0_length(M2((1, 0)), MonomialPrime({1}, 2)) == 0


def test_adeg_oracle_on_worked_example():
    R = PolyRing(("X", "Y", "Z"))
    X, Y, Z = R.gens()
    summands = [Ideal.zero(R), Ideal(R, [Z**2])]
    q = Ideal(R, [X**2, Y**2, Z])
    assert [adeg_oracle(summands, q, j, R) for j in (3, 2, 1, 0)] == [4, 8, 0, 0]


def test_colon_saturation_power():
    I = M2((2, 0), (1, 1))
    assert I.colon_monomial((1, 0)) == M2((1, 0), (0, 1))
    assert I.saturate() == M2((1, 0))
    assert MonomialIdeal.maximal(2).power(2) == M2((2, 0), (1, 1), (0, 2))
    assert I.dim() == 1
    assert I.quotient_length() == INFINITE


# ---------------------------------------------------------------- properties


@st.composite
def small_monomial_ideals(draw):
    n = draw(st.sampled_from((2, 3)))
    gens = draw(st.lists(exps(n, 4).filter(any), min_size=1, max_size=4))
    return MonomialIdeal(gens, n)


def _in(e, gens):
    return any(all(a >= b for a, b in zip(e, g)) for g in gens)


def _standard_by_degree(I: MonomialIdeal, top: int) -> list:
    counts = [0] * (top + 1)
    for e in product(range(top + 1), repeat=I.nvars):
        if sum(e) <= top and not _in(e, I.gens):
            counts[sum(e)] += 1
    return counts


def _series_coeffs(num: list, n: int, top: int) -> list:
    """Coefficients of num(t) / (1 - t)^n up to t^top."""
    out = list(num) + [0] * (top + 1)
    for _ in range(n):
        for i in range(1, len(out)):
            out[i] += out[i - 1]
    return out[: top + 1]


@settings(max_examples=60, deadline=None, derandomize=True)
@given(small_monomial_ideals())
def test_hilbert_numerator_matches_enumeration(I):
    top = 9
    assert _series_coeffs(I.hilbert_numerator(), I.nvars, top) == _standard_by_degree(I, top)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(small_monomial_ideals())
def test_decomposition_is_correct(I):
    comps = irreducible_decomposition(I)
    acc = comps[0]
    for c in comps[1:]:
        acc = acc.intersect(c)
    assert acc == I
    for c in comps:
        assert c.is_irreducible()
    primes = {MonomialPrime(c.radical_support(), I.nvars) for c in comps}
    assert primes == set(assoc_primes_monomial(I))


@settings(max_examples=40, deadline=None, derandomize=True)
@given(small_monomial_ideals(), small_monomial_ideals())
def test_intersection_by_enumeration(a, b):
    if a.nvars != b.nvars:
        return
    c = a.intersect(b)
    for e in product(range(6), repeat=a.nvars):
        assert _in(e, c.gens) == (_in(e, a.gens) and _in(e, b.gens))


def test_tpoly_mul():
    assert tpoly_mul([1, -1], [1, 1]) == [1, 0, -1]
