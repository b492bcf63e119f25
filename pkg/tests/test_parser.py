import random

import pytest

from k3auto.cyclotomic import cyclotomic_field, zeta_pow
from k3auto.parser import (
    ExpressionSyntaxError,
    UnknownVariableError,
    ZeroDenominatorError,
    parse_expression,
    parse_univariate,
)
from k3auto.polyring import MultiPoly, RationalFunction, UniPoly

F = cyclotomic_field(16)
XYT = {"x", "y", "t"}


def test_parse_base_polynomial():
    p = parse_univariate("t^3*(t^4-1)", "t", F)
    t = UniPoly.gen(F, "t")
    assert p == t ** 7 - t ** 3


def test_parse_scaled_monomial():
    p = parse_expression("z^6*x", XYT, F)
    assert isinstance(p, MultiPoly)
    assert p == MultiPoly.gen(F, "x") * zeta_pow(F, 6)


def test_parse_rational_function():
    r = parse_expression("(y^2-x^3)/x^2", XYT, F)
    assert isinstance(r, RationalFunction)
    x = MultiPoly.gen(F, "x")
    y = MultiPoly.gen(F, "y")
    assert r == RationalFunction(y ** 2 - x ** 3, x ** 2)


def test_parse_zero_and_constants():
    assert parse_expression("0", XYT, F).is_zero()
    assert parse_expression("-3", XYT, F) == MultiPoly.constant(F, -3)
    from fractions import Fraction

    assert parse_expression("1/2", XYT, F) == MultiPoly.constant(F, Fraction(1, 2))


def test_unary_minus_and_precedence():
    p = parse_expression("-t^2 + 2*t - 1", {"t"}, F)
    t = MultiPoly.gen(F, "t")
    assert p == -(t ** 2) + 2 * t - 1
    assert parse_expression("2*t^2", {"t"}, F) == 2 * t * t
    assert parse_expression("-64*t^9", {"t"}, F) == t ** 9 * (-64)


def test_position_annotated_errors():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_expression("t^3*(t^4-1", {"t"}, F)
    assert "position" in str(err.value)
    with pytest.raises(UnknownVariableError) as err:
        parse_expression("t + s", {"t"}, F)
    assert err.value.name == "s"
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("t^-2", {"t"}, F)
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("", {"t"}, F)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominatorError):
        parse_expression("x/(t-t)", XYT, F)


def _random_multipoly(rng):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        e = (rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 4))
        c = F.element([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
        if not c.is_zero():
            terms[e] = c
    return MultiPoly(F, terms)


def test_print_parse_roundtrip():
    rng = random.Random(99)
    for _ in range(25):
        p = _random_multipoly(rng)
        assert parse_expression(str(p), XYT, F) == p
    for _ in range(10):
        num = _random_multipoly(rng)
        den = _random_multipoly(rng)
        if den.is_zero():
            continue
        r = RationalFunction(num, den)
        reparsed = parse_expression(str(r), XYT, F)
        if isinstance(reparsed, MultiPoly):
            reparsed = RationalFunction(reparsed)
        assert reparsed == r
