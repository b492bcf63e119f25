import random
from fractions import Fraction

import pytest

from k3auto.cyclotomic import cyclotomic_field
from k3auto.polyring import (
    INF,
    MultiPoly,
    PlacePoly,
    RationalFunction,
    UniPoly,
    ZeroInputError,
    gcd_free_basis,
    multi_gcd,
    squarefree_part,
    uni_gcd,
    vanishing_order,
)

F = cyclotomic_field(16)
T = UniPoly.gen(F, "t")


def upoly(*int_coeffs):
    return UniPoly.from_int_coeffs(F, int_coeffs)


def test_unipoly_basic_arithmetic():
    p = T ** 2 - 1
    q = T + 1
    assert p == (T - 1) * (T + 1)
    assert divmod(p, q) == (T - 1, UniPoly.zero(F, "t"))
    assert (p * q).degree() == 3
    assert (p - p).is_zero()


def test_uni_gcd_examples():
    assert uni_gcd(T ** 2 - 1, T ** 3 - 1) == T - 1
    assert uni_gcd(T ** 4 - 1, T) == upoly(1)
    p = upoly(2, 0, 4)  # 2 + 4t^2, monic form t^2 + 1/2
    assert uni_gcd(p, UniPoly.zero(F, "t")) == p.monic()
    assert uni_gcd(UniPoly.zero(F, "t"), UniPoly.zero(F, "t")).is_zero()


def test_gcd_divides_and_is_maximal():
    rng = random.Random(7)
    for _ in range(15):
        a = upoly(*[rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        b = upoly(*[rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        c = upoly(*[rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        g = uni_gcd(a * c, b * c)
        assert (a * c % g).is_zero()
        assert (b * c % g).is_zero()
        # any common divisor divides it: c is a common divisor
        assert (g % c.monic()).is_zero()


def test_squarefree_part():
    p = (T ** 2) * (T ** 4 - 1)
    assert squarefree_part(p) == (T * (T ** 4 - 1)).monic()


def test_vanishing_order_examples():
    p = T ** 7 - T ** 3  # t^3 (t^4 - 1)
    assert vanishing_order(p, T) == 3
    assert vanishing_order(p, T ** 4 - 1) == 1
    assert vanishing_order(UniPoly.zero(F, "t"), T) == INF


def test_vanishing_order_additivity():
    f = T ** 2 + 1
    p = f ** 3 * (T - 1)
    q = f * T
    assert vanishing_order(p * q, f) == vanishing_order(p, f) + vanishing_order(q, f)


def test_gcd_free_basis_model_discriminant():
    # Inputs built by explicit multiplication: t^9 (t^4-1)^3 and t^3 (t^4-1).
    big = T ** 9 * (T ** 4 - 1) ** 3
    small = T ** 3 * (T ** 4 - 1)
    basis = gcd_free_basis([big, small])
    as_dict = {str(place): exps for place, exps in basis}
    assert as_dict == {"t": (9, 3), "t^4 - 1": (3, 1)}


def test_gcd_free_basis_simple_cases():
    basis = gcd_free_basis([T ** 2])
    assert [(str(p), e) for p, e in basis] == [("t", (2,))]
    basis = gcd_free_basis([T ** 2 - 1, T - 1])
    assert {str(p): e for p, e in basis} == {"t - 1": (1, 1), "t + 1": (1, 0)}
    with pytest.raises(ZeroInputError):
        gcd_free_basis([UniPoly.zero(F, "t")])


def test_gcd_free_basis_reconstruction_random():
    rng = random.Random(2024)
    atoms = [T, T - 1, T + 1, T ** 2 + 1, T ** 2 + T + 1]
    for _ in range(10):
        inputs = []
        for _ in range(rng.randint(1, 3)):
            poly = upoly(rng.choice([1, 2, -1]))
            for atom in atoms:
                poly = poly * atom ** rng.randint(0, 3)
            if poly.is_constant():
                poly = poly * atoms[0]
            inputs.append(poly)
        basis = gcd_free_basis(inputs)
        # pairwise coprime and squarefree
        polys = [place.poly for place, _ in basis]
        for i in range(len(polys)):
            assert uni_gcd(polys[i], polys[i].derivative()).is_constant()
            for j in range(i + 1, len(polys)):
                assert uni_gcd(polys[i], polys[j]).is_constant()
        # reconstruction: unit * prod f_i^{e_ij} == P_j
        for j, poly in enumerate(inputs):
            rebuilt = UniPoly.constant(F, 1, "t")
            for (place, exps) in basis:
                rebuilt = rebuilt * place.poly ** exps[j]
            ratio = divmod(poly, rebuilt)
            assert ratio[1].is_zero()
            assert ratio[0].is_constant()


def test_place_poly_invariants():
    place = PlacePoly(2 * (T - 1))
    assert str(place) == "t - 1"
    assert place.degree() == 1
    with pytest.raises(ValueError):
        PlacePoly(UniPoly.constant(F, 3, "t"))


def test_multipoly_arithmetic_and_views():
    x = MultiPoly.gen(F, "x")
    y = MultiPoly.gen(F, "y")
    t = MultiPoly.gen(F, "t")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.degree_in("x") == 2
    q = x ** 2 * t + x * t ** 2 + 1
    views = q.coeffs_in("x")
    assert views[2] == t
    assert views[1] == t ** 2
    assert views[0] == MultiPoly.constant(F, 1)


def test_multipoly_exact_div():
    x = MultiPoly.gen(F, "x")
    t = MultiPoly.gen(F, "t")
    a = (x + t) ** 2 * (x - t)
    quo = a.exact_div(x + t)
    assert quo == (x + t) * (x - t)
    with pytest.raises(ArithmeticError):
        (x + 1).exact_div(t)


def test_multi_gcd():
    x = MultiPoly.gen(F, "x")
    y = MultiPoly.gen(F, "y")
    t = MultiPoly.gen(F, "t")
    g = multi_gcd((x + t) * (y - 1), (x + t) * (y + 1))
    assert g == x + t
    g = multi_gcd(x * y * t, x ** 2 * t ** 3)
    assert g == x * t
    assert multi_gcd(x + 1, t + 1).is_constant()


def test_rational_function_reduction_and_equality():
    x = MultiPoly.gen(F, "x")
    t = MultiPoly.gen(F, "t")
    r = RationalFunction((x ** 2 - t ** 2), (x - t))
    assert r.is_polynomial()
    assert r.as_poly() == x + t
    a = RationalFunction(x, t)
    b = RationalFunction(x * (x + 1), t * (x + 1))
    assert a == b
    assert a + a == RationalFunction(x * 2, t)
    assert (a - a).is_zero()
    assert a * RationalFunction(t, x) == RationalFunction.constant(F, 1)


def test_rational_function_derivative_leibniz():
    rng = random.Random(5)
    x = MultiPoly.gen(F, "x")
    t = MultiPoly.gen(F, "t")
    pool = [RationalFunction(x + 1, t), RationalFunction(t ** 2, x), RationalFunction(x * t + 1)]
    for _ in range(6):
        f = rng.choice(pool)
        g = rng.choice(pool)
        for var in ("x", "t"):
            lhs = (f * g).derivative(var)
            rhs = f.derivative(var) * g + f * g.derivative(var)
            assert lhs == rhs
