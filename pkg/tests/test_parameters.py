from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from seqcm import INFINITE, Ideal, PolyRing
from seqcm.corpus import BY_NAME
from seqcm.filtration import dimension_filtration
from seqcm.modules import DirectSum
from seqcm.parameters import (
    N_failure_stage,
    SamplerExhausted,
    d_sequence_failure,
    dd_sequence_failure,
    in_N_bounded,
    is_d_sequence,
    is_dd_sequence_bounded,
    is_distinguished,
    is_filter_regular,
    is_good,
    is_sop,
    is_superficial_bounded,
    random_distinguished_sop,
)

R3 = PolyRing(("X", "Y", "Z"))
X, Y, Z = R3.gens()
EX1 = DirectSum.cyclic(R3, [Ideal.zero(R3), Ideal(R3, [Z**2])])
R2 = PolyRing(("x", "y"))
x, y = R2.gens()
EMB = DirectSum.cyclic(R2, [Ideal(R2, [x**2, x * y])])
CROSS = DirectSum.cyclic(R2, [Ideal(R2, [x * y])])
FREE2 = DirectSum.cyclic(R2, [Ideal.zero(R2)])


def test_is_sop():
    assert is_sop([X**2, Y**2, Z], EX1)
    assert not is_sop([x], CROSS)
    assert is_sop([x + y], CROSS)
    assert not is_sop([x + 1], CROSS)
    with pytest.raises(ValueError):
        is_sop([x, y], CROSS)


def test_is_distinguished():
    D = dimension_filtration(EX1)
    assert is_distinguished([X, Y, Z**2], EX1, D)
    for m in range(1, 4):
        assert not is_distinguished([X**m, Y**m, Z], EX1, D)
    assert is_distinguished([y], EMB)


def test_is_good():
    assert is_good([y], EMB)
    assert is_good([X, Y, Z**2], EX1)
    assert not is_good([X, Y, Z], EX1)


def test_d_sequences():
    assert is_d_sequence([x, y], FREE2)
    assert is_d_sequence([y], EMB)
    sq = BY_NAME["square"]
    assert is_d_sequence(sq.parameters(), sq.module())


def test_dd_sequences():
    assert is_dd_sequence_bounded([x, y], FREE2, B=3)
    assert is_dd_sequence_bounded([y], EMB, B=3)
    # on k[x,y]/(x^2): (0 : x) = (x) but (0 : x^2) is everything
    S = DirectSum.cyclic(R2, [Ideal(R2, [x**2])])
    assert d_sequence_failure([x, y], S) == (1, 1)
    ns, level = dd_sequence_failure([x, y], S, B=2)
    assert len(ns) == 2 and 1 <= level <= 2
    with pytest.raises(ValueError):
        dd_sequence_failure([y], EMB, B=0)


def test_N_membership():
    assert in_N_bounded([X, Y, Z**2], [1, 1, 1], EX1)
    assert in_N_bounded([x, y], [7, 1], FREE2)
    # Z is not distinguished on the worked example: fails at stage 0
    assert N_failure_stage([X, Y, Z], [1, 1, 1], EX1) == 0


def test_filter_regular():
    assert is_filter_regular(x, FREE2)
    # (0 :_M Z) = 0 + (Z)/(Z^2), a copy of k[X,Y]: infinite length, (Z) is associated
    assert EX1.colon_element(Z).length() == INFINITE
    assert not is_filter_regular(Z, EX1)
    assert is_filter_regular(X + Z, EX1)
    S = DirectSum.cyclic(R2, [Ideal(R2, [x])])
    assert not is_filter_regular(x, S)


def test_superficial():
    m = Ideal(R3, [X, Y, Z])
    CM = DirectSum.cyclic(R3, [Ideal(R3, [X * Y * Z])])
    assert is_superficial_bounded(X + 2 * Y + 3 * Z, m, CM)
    assert is_superficial_bounded(X**2, Ideal(R3, [X**2, Y**2, Z]), DirectSum.cyclic(R3, [Ideal.zero(R3)]))
    assert not is_superficial_bounded(x**2, Ideal(R2, [x, y]), FREE2)
    assert not is_superficial_bounded(X**2, m.power(3), CM)


def test_sampler_escalates_past_degree_one():
    # ann of D_1 is (Z^2): no degree-one element, so the cap must rise
    ps = random_distinguished_sop(EX1, seed=0)
    assert ps.degree_cap >= 2
    assert is_sop(ps.elements, EX1) and is_distinguished(ps.elements, EX1)
    assert Ideal(R3, [Z**2]).contains(ps.elements[2])


def test_sampler_linear_on_cm():
    CM = DirectSum.cyclic(R3, [Ideal(R3, [X * Y * Z])])
    ps = random_distinguished_sop(CM, seed=3, degree_cap=1)
    assert all(f.degree() == 1 for f in ps.elements)


def test_sampler_exhausted():
    # no attempts per round: the cap climbs to 8 and the sampler gives up
    with pytest.raises(SamplerExhausted):
        random_distinguished_sop(EX1, seed=0, degree_cap=8, budget=0)


# ---------------------------------------------------------------- properties

SMALL = ("ex1", "plane_line", "three_strata", "plane_point", "thick_line", "free_torsion",
         "coordinate_cross", "embedded")


@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_sampler_output_verifies_and_replays(name, seed):
    M = BY_NAME[name].module()
    D = dimension_filtration(M)
    a = random_distinguished_sop(M, D, seed=seed)
    b = random_distinguished_sop(M, D, seed=seed)
    assert a.as_dict() == b.as_dict()
    assert is_sop(a.elements, M) and is_distinguished(a.elements, M, D)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_good_implies_distinguished(name, seed):
    M = BY_NAME[name].module()
    xs = random_distinguished_sop(M, seed=seed).elements
    ys = [f**2 for f in xs]
    for cand in (xs, ys):
        if is_sop(cand, M) and is_good(cand, M):
            assert is_distinguished(cand, M)


@settings(max_examples=30, deadline=None, derandomize=True)
@given(st.sampled_from(("ex1", "plane_line", "three_strata", "free_torsion", "coordinate_cross")),
       st.integers(0, 10**6), st.lists(st.integers(1, 2), min_size=3, max_size=3))
def test_tuples_in_N_give_d_sequences(name, seed, ns):
    M = BY_NAME[name].module()
    if M.dim < 2:
        return
    xs = random_distinguished_sop(M, seed=seed).elements
    ns = ns[: len(xs)]
    if in_N_bounded(xs, ns, M):
        assert is_d_sequence([f**k for f, k in zip(xs, ns)], M)


@settings(max_examples=20, deadline=None, derandomize=True)
@given(st.sampled_from(("ex1", "plane_line", "free_torsion")), st.integers(0, 10**6),
       st.lists(st.integers(1, 2), min_size=3, max_size=3), st.lists(st.integers(1, 2), min_size=2, max_size=2))
def test_N_closure_under_residual_tuples(name, seed, ns, ms):
    M = BY_NAME[name].module()
    xs = random_distinguished_sop(M, seed=seed).elements
    d = len(xs)
    ns, ms = ns[:d], ms[: d - 1]
    if not in_N_bounded(xs, ns, M):
        return
    Q = M.quotient_by_ideal(Ideal(M.ring, [xs[0] ** ns[0]]))
    rest = [f ** k for f, k in zip(xs[1:], ns[1:])]
    if in_N_bounded(rest, ms, Q):
        merged = [ns[0]] + [n * m for n, m in zip(ns[1:], ms)]
        assert in_N_bounded(xs, merged, M)
