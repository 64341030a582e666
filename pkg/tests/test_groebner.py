from itertools import product

import pytest

from seqcm import GREVLEX, INFINITE, LEX, Ideal, PolyRing, groebner_basis, ideal_op, normal_form, syzygies
from seqcm.groebner import OrderMismatch, divide, krull_dim, length_of_quotient, lift, spair_check

R2 = PolyRing(("x", "y"))
x, y = R2.gens()
R3 = PolyRing(("x", "y", "z"))
X, Y, Z = R3.gens()


def test_principal_basis():
    S = PolyRing(("x",))
    gb = groebner_basis([S.var(0)], S)
    assert gb.polys() == [S.var(0)]


def test_basis_with_linear_element():
    gb = groebner_basis([x**2 - 1, x * y - 1], R2, GREVLEX)
    # x (y - x) = (xy - 1) - (x^2 - 1)
    assert x * (y - x) == (x * y - 1) - (x**2 - 1)
    monic = {g.monic() for g in gb.polys()}
    assert (y - x).monic() in monic or (x - y).monic() in monic
    # x^2 - 1 reduces to y^2 - 1 modulo x - y, so the reduced basis holds the latter
    assert gb.contains(x**2 - 1)
    assert monic == {x - y, y**2 - 1}
    assert spair_check(gb)


def test_monomial_input_is_its_own_basis():
    gb = groebner_basis([x**2, x * y], R2)
    assert set(gb.polys()) == {x**2, x * y}


def test_lex_basis_is_triangular():
    gb = groebner_basis([x**2 - 1, x * y - 1], R2, LEX)
    assert {g.monic() for g in gb.polys()} == {(x - y).monic(), (y**2 - 1).monic()}


def test_normal_forms():
    S = PolyRing(("x",))
    assert normal_form(S.var(0) ** 2, groebner_basis([S.var(0)], S)).is_zero()
    assert normal_form(y, groebner_basis([x], R2)) == y
    gb = groebner_basis([X**2 - Z, Y**2], R3, GREVLEX)
    assert normal_form(X**2 * Y, gb) == Y * Z
    with pytest.raises(OrderMismatch):
        normal_form(X, gb, LEX)


def test_division_identity():
    f = X**2 * Y + X * Y**2 + Y**2
    gs = [X * Y - 1, Y**2 - 1]
    qs, r = divide(f, gs)
    assert sum((q * g for q, g in zip(qs, gs)), R3.zero()) + r == f
    assert r == X + Y + 1


def test_ideal_operations():
    a = Ideal(R2, [x**2, x * y])
    m = Ideal(R2, [x, y])
    assert ideal_op("colon", a, Ideal(R2, [x])) == m
    assert ideal_op("saturation", a, m) == Ideal(R2, [x])
    assert ideal_op("power", m, 2) == Ideal(R2, [x**2, x * y, y**2])
    assert ideal_op("intersection", Ideal(R2, [x]), Ideal(R2, [y])) == Ideal(R2, [x * y])
    assert ideal_op("product", Ideal(R2, [x]), Ideal(R2, [x, y])) == Ideal(R2, [x**2, x * y])
    assert ideal_op("sum", Ideal(R2, [x]), Ideal(R2, [y])) == m
    with pytest.raises(ValueError):
        ideal_op("radical", a)


def test_elimination():
    S = PolyRing(("t", "u", "v"))
    t, u, v = S.gens()
    J = ideal_op("eliminate", Ideal(S, [u - t, v - t**2]), ["t"])
    assert J == Ideal(S, [v - u**2])


def test_nonmonomial_colon_and_intersection():
    a = Ideal(R2, [x**2 - y**2])
    b = Ideal(R2, [x - y])
    assert a.colon(b) == Ideal(R2, [x + y])
    assert a.intersect(b) == a


def _count_standard(gens, box):
    """Monomials in the box avoided by every generator."""
    return sum(
        1
        for e in product(*(range(b) for b in box))
        if not any(all(ei >= gi for ei, gi in zip(e, g)) for g in gens)
    )


def test_lengths():
    assert Ideal(R2, [x**2, x * y, y**2]).length() == 3
    assert Ideal(R2, [x**2, x * y]).length() == INFINITE
    q2 = Ideal(R3, [X**2, Y**2, Z])
    I = q2.power(2) + Ideal(R3, [Z**2])
    got = I.length()
    gens = [e for g in I.gens for e in g.terms]
    assert got == _count_standard(gens, (8, 8, 8)) == 16


def test_length_of_points():
    # two reduced points (1, 1) and (-1, -1)
    assert length_of_quotient(groebner_basis([x**2 - 1, x * y - 1], R2)) == 2


def test_krull_dim():
    assert krull_dim(groebner_basis([], R3)) == 3
    assert krull_dim(groebner_basis([x**2, x * y], R2)) == 1
    assert krull_dim(groebner_basis([R2.one()], R2)) == -1


def _same_module(a, b, rank):
    ga = groebner_basis(a, R2, rank=rank)
    gb = groebner_basis(b, R2, rank=rank)
    return all(gb.contains(v) for v in a) and all(ga.contains(v) for v in b)


def test_syzygies():
    syz = syzygies([x**2, x * y], R2)
    for s in syz:
        assert s[0] * x**2 + s[1] * x * y == 0
    assert _same_module(syz, [(y, -x)], 2)
    assert syzygies([x], R2) == []
    assert _same_module(syzygies([x, y], R2), [(y, -x)], 2)


def test_lift():
    (coeffs,) = lift([x**2 * y + y**2], [x**2, y], R2)
    assert coeffs[0] * x**2 + coeffs[1] * y == x**2 * y + y**2
    assert lift([x], [x**2, y], R2) == [None]


def test_module_basis_membership():
    gb = groebner_basis([(x, y), (y, R2.zero())], R2, rank=2)
    assert gb.contains((x * y, y**2))
    assert not gb.contains((R2.one(), R2.zero()))
    assert spair_check(gb)
