from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from seqcm import Ideal, PolyRing
from seqcm.corpus import BY_NAME, CORPUS
from seqcm.filtration import (
    Filtration,
    I_of_filtration,
    check_dimension_condition,
    classify,
    coefficient_bound,
    dimension_filtration,
    filtration_coefficient_bound,
    in_calF,
    maximality_probe,
    regularity_bound_C,
    stuckrad_vogel_I,
)
from seqcm.hilbert import hilbert_coefficients
from seqcm.modules import DirectSum

from strategies import monomial_modules

R3 = PolyRing(("X", "Y", "Z"))
X, Y, Z = R3.gens()
R2 = PolyRing(("x", "y"))
x, y = R2.gens()
EX1 = DirectSum.cyclic(R3, [Ideal.zero(R3), Ideal(R3, [Z**2])])
EMB = DirectSum.cyclic(R2, [Ideal(R2, [x**2, x * y])])
SQUARE = BY_NAME["square"].module()


def test_filtration_of_worked_example():
    D = dimension_filtration(EX1)
    assert D.dims == [3, 2, -1]
    assert D.terms[1].tops[0].is_zero() and D.terms[1].tops[1].is_unit()
    assert D.terms[2].is_zero()


def test_filtration_with_embedded_point():
    D = dimension_filtration(EMB)
    assert D.dims == [1, 0]
    assert D.terms[1].tops[0] == Ideal(R2, [x])


def test_filtration_of_domain():
    R = DirectSum.cyclic(R2, [Ideal.zero(R2)])
    D = dimension_filtration(R)
    assert D.length == 1 and D.terms[1].is_zero()


def test_dimension_condition():
    assert check_dimension_condition(dimension_filtration(EX1))
    assert not check_dimension_condition(Filtration(EX1, [EX1, EX1]))
    zero = DirectSum(R3, EX1.bottoms, EX1.bottoms)
    assert check_dimension_condition(Filtration(EX1, [EX1, zero]))


def test_in_calF():
    D = dimension_filtration(EX1)
    assert in_calF(D, EX1, D)
    thin = DirectSum(R3, [Ideal.zero(R3), Ideal(R3, [Z])], EX1.bottoms, check=False)
    assert not in_calF(Filtration(EX1, [EX1, thin, D.terms[2]]), EX1, D)
    zero = DirectSum(R2, EMB.bottoms, EMB.bottoms)
    assert in_calF(Filtration(EMB, [EMB, zero]), EMB)


def test_verdicts():
    assert classify(EX1).verdict == "sCM"
    assert classify(SQUARE).verdict == "gCM"
    assert classify(EMB).verdict == "sCM"


def test_corpus_verdicts():
    for e in CORPUS:
        if "large" in e.tags:
            continue
        assert classify(e.module()).verdict == e.verdict, e.name


def test_stuckrad_vogel_I():
    assert stuckrad_vogel_I(DirectSum.cyclic(R2, [Ideal.zero(R2)])) == 0
    assert stuckrad_vogel_I(SQUARE) == 1
    # oracle: length(M/qM) - e_0(q; M) for the parameter ideal q = (x - z, y - w)
    q = BY_NAME["square"].ideal("q")
    assert SQUARE.quotient_by_ideal(q).length() - hilbert_coefficients(SQUARE, q).e[0] == 1
    pt = DirectSum.cyclic(R2, [Ideal(R2, [x**2, x * y, y**2])])
    assert stuckrad_vogel_I(pt) == 3


def test_I_of_filtration():
    assert I_of_filtration(dimension_filtration(EX1)) == 0
    assert I_of_filtration(dimension_filtration(EMB)) == 1
    assert I_of_filtration(dimension_filtration(SQUARE)) == 1


def test_regularity_bound():
    assert regularity_bound_C(0, 3) == 0
    assert regularity_bound_C(1, 2) == 7
    assert regularity_bound_C(1, 3) == 727


def test_coefficient_bounds():
    assert coefficient_bound(2, 3, 1, 1, 727) == 2 * (728**2 + 732)
    assert coefficient_bound(1, 2, 1, 1) == 1
    D = dimension_filtration(EX1)
    assert all(filtration_coefficient_bound(D, i) == 0 for i in (1, 2, 3))
    assert filtration_coefficient_bound(dimension_filtration(SQUARE), 1) == 1
    with pytest.raises(ValueError):
        coefficient_bound(4, 3, 1, 1)


def test_maximality_on_corpus():
    for e in CORPUS:
        if "large" not in e.tags:
            assert maximality_probe(dimension_filtration(e.module())), e.name


# ---------------------------------------------------------------- properties


@settings(max_examples=50, deadline=None, derandomize=True)
@given(monomial_modules(max_summands=3), st.randoms(use_true_random=False))
def test_verdict_stable_under_permutation(M, rnd):
    order = list(range(M.nsummands))
    rnd.shuffle(order)
    P = DirectSum.cyclic(M.ring, [M.bottoms[k] for k in order])
    a, b = classify(M), classify(P)
    assert a.verdict == b.verdict
    assert a.filtration.dims == b.filtration.dims
    assert a.I_total == b.I_total


@settings(max_examples=40, deadline=None, derandomize=True)
@given(monomial_modules(max_summands=2))
def test_adding_a_free_summand_of_full_dimension(M):
    """R + M is sequentially CM exactly when M is."""
    R = M.ring
    F = DirectSum.cyclic(R, [Ideal.zero(R)] + list(M.bottoms))
    assert dimension_filtration(F).dims[0] == R.nvars
    assert classify(F).is_sequentially_cm == classify(M).is_sequentially_cm


@settings(max_examples=40, deadline=None, derandomize=True)
@given(monomial_modules(max_summands=3))
def test_pieces_have_the_filtration_dimensions(M):
    D = dimension_filtration(M)
    for i, C in enumerate(D.pieces()):
        assert C.dim == D.dims[i]
