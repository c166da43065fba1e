"""Field axioms, ordering and rounding for the quadratic extension type.

Comparisons are cross-checked against 60-digit decimal evaluation; the
decimal side only ever confirms, never decides, so disagreements point at
the exact code.
"""

import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from orbicert.quadext import (
    CrossFieldError,
    NoPositiveRootError,
    NoRealRootError,
    QuadExt,
    compare_cross,
    min_root_quadratic,
    rational_above,
    rational_below,
)

getcontext().prec = 60


def approx(x: QuadExt) -> Decimal:
    root = Decimal(x.delta).sqrt() if x.delta else Decimal(0)
    return (
        Decimal(x.a.numerator) / Decimal(x.a.denominator)
        + Decimal(x.b.numerator) / Decimal(x.b.denominator) * root
    )


def random_value(rng: random.Random, delta: int) -> QuadExt:
    a = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
    b = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
    return QuadExt(a, b, delta)


def test_canonical_form():
    x = QuadExt(Fraction(1, 2), Fraction(3), 12)
    assert (x.a, x.b, x.delta) == (Fraction(1, 2), Fraction(6), 3)
    y = QuadExt(Fraction(1), Fraction(2), 9)
    assert y.is_rational and y.as_fraction() == 7
    z = QuadExt(Fraction(5), Fraction(0), 7)
    assert z.delta == 0
    w = QuadExt(Fraction(0), Fraction(1), Fraction(1, 2))
    assert (w.b, w.delta) == (Fraction(1, 2), 2)


def test_negative_radicand_rejected():
    with pytest.raises(NoRealRootError):
        QuadExt(Fraction(0), Fraction(1), -3)


def test_field_axioms_random():
    rng = random.Random(20260814)
    for _ in range(4000):
        delta = rng.choice([2, 3, 5, 7])
        x = random_value(rng, delta)
        y = random_value(rng, delta)
        z = random_value(rng, delta)
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert x - x == QuadExt(Fraction(0))
        if y.sign() != 0:
            assert (x / y) * y == x
            assert 1 / (1 / y) == y
        assert x ** 3 == x * x * x
        if x.sign() != 0:
            assert x ** -2 == 1 / (x * x)


def test_scalar_coercion():
    x = QuadExt(Fraction(1), Fraction(1), 3)
    assert 2 + x == x + 2
    assert 2 * x == x * 2
    assert 5 - x == -(x - 5)
    assert (6 / x) * x == QuadExt(Fraction(6))
    assert x + Fraction(1, 2) == QuadExt(Fraction(3, 2), Fraction(1), 3)


def test_cross_field_arithmetic_rejected():
    with pytest.raises(CrossFieldError):
        QuadExt(Fraction(0), Fraction(1), 2) + QuadExt(Fraction(0), Fraction(1), 3)
    with pytest.raises(CrossFieldError):
        QuadExt(Fraction(1), Fraction(1), 2) * QuadExt(Fraction(1), Fraction(1), 5)


def test_sign_tight_cases():
    assert QuadExt(Fraction(-7), Fraction(4), 3).sign() == -1
    assert QuadExt(Fraction(7), Fraction(-4), 3).sign() == 1
    # 26/15 is within 4e-5 of sqrt(3)
    assert QuadExt(Fraction(-26, 15), Fraction(1), 3).sign() == -1
    assert QuadExt(Fraction(26, 15), Fraction(-1), 3).sign() == 1
    assert QuadExt(Fraction(0)).sign() == 0
    assert QuadExt(Fraction(0), Fraction(-2), 5).sign() == -1


def test_sign_matches_decimal():
    rng = random.Random(7)
    for _ in range(4000):
        x = random_value(rng, rng.choice([2, 3, 5, 6, 7, 10]))
        got = x.sign()
        num = approx(x)
        if abs(num) > Decimal("1e-45"):
            assert got == (num > 0) - (num < 0), x


def test_compare_cross_distinct_fields():
    assert compare_cross(QuadExt(Fraction(0), Fraction(1), 2), QuadExt(Fraction(0), Fraction(1), 3)) < 0
    assert compare_cross(QuadExt(Fraction(1), Fraction(1), 2), QuadExt(Fraction(0), Fraction(1), 6)) < 0
    assert compare_cross(QuadExt(Fraction(0), Fraction(2), 3), QuadExt(Fraction(0), Fraction(1), 12)) == 0
    rng = random.Random(11)
    for _ in range(3000):
        x = random_value(rng, rng.choice([2, 3, 5, 7]))
        y = random_value(rng, rng.choice([2, 3, 5, 7]))
        got = compare_cross(x, y)
        num = approx(x) - approx(y)
        if abs(num) > Decimal("1e-45"):
            assert got == (num > 0) - (num < 0), (x, y)
        assert got == -compare_cross(y, x)


def test_order_operators_and_equality():
    x = QuadExt(Fraction(15), Fraction(-4), 3)
    assert x > 8 and x < 9
    assert x <= x and x >= x and x == x
    assert QuadExt(Fraction(7)) == Fraction(7) == QuadExt(Fraction(7), Fraction(0), 3)
    assert hash(QuadExt(Fraction(7))) == hash(Fraction(7))
    assert QuadExt(Fraction(0), Fraction(1), 2) != QuadExt(Fraction(0), Fraction(1), 3)


def test_floor():
    import math

    assert math.floor(QuadExt(Fraction(0), Fraction(1), 3)) == 1
    assert math.floor(QuadExt(Fraction(0), Fraction(-1), 3)) == -2
    assert math.floor(QuadExt(Fraction(15), Fraction(-4), 3)) == 8
    assert math.floor(QuadExt(Fraction(7, 2))) == 3
    assert math.floor(QuadExt(Fraction(-7, 2))) == -4
    rng = random.Random(13)
    for _ in range(2000):
        x = random_value(rng, rng.choice([2, 3, 5, 7]))
        n = math.floor(x)
        assert compare_cross(x, n) >= 0
        assert compare_cross(x, n + 1) < 0


def test_min_root_quadratic():
    assert min_root_quadratic(1, 3, 9) == QuadExt(Fraction(3))
    assert min_root_quadratic(1, 15, 177) == QuadExt(Fraction(15), Fraction(-4), 3)
    assert min_root_quadratic(0, 2, 10) == QuadExt(Fraction(5, 2))
    assert min_root_quadratic(-1, -1, 3) == QuadExt(Fraction(3))
    with pytest.raises(NoRealRootError):
        min_root_quadratic(1, 1, 2)
    with pytest.raises(NoPositiveRootError):
        min_root_quadratic(0, -1, 4)
    with pytest.raises(NoPositiveRootError):
        min_root_quadratic(1, -1, 1)


def test_min_root_is_least_positive_root():
    rng = random.Random(17)
    hits = 0
    while hits < 800:
        a = rng.randint(-6, 6)
        b = rng.randint(-12, 12)
        c = rng.randint(-12, 12)
        try:
            root = min_root_quadratic(a, b, c)
        except (NoRealRootError, NoPositiveRootError, ZeroDivisionError):
            continue
        hits += 1
        assert root.sign() > 0
        value = a * root * root - 2 * b * root + c
        assert value.sign() == 0, (a, b, c, root)
        if a != 0:
            other = QuadExt(Fraction(2 * b, a)) - root
            if other.sign() > 0:
                assert compare_cross(root, other) <= 0


def test_rational_bounds():
    sqrt3 = QuadExt(Fraction(0), Fraction(1), 3)
    for k in (4, 10, 30, 48):
        gap = Fraction(1, 2 ** k)
        lo = rational_below(sqrt3, gap)
        hi = rational_above(sqrt3, gap)
        assert compare_cross(QuadExt(lo), sqrt3) < 0
        assert compare_cross(sqrt3 - QuadExt(lo), gap) < 0
        assert compare_cross(QuadExt(hi), sqrt3) > 0
        assert compare_cross(QuadExt(hi) - sqrt3, gap) < 0
    r = rational_below(QuadExt(Fraction(5, 3)), Fraction(1, 100))
    assert r == Fraction(5, 3) - Fraction(1, 200)
    with pytest.raises(ValueError):
        rational_below(sqrt3, 0)


def test_rational_bounds_random():
    rng = random.Random(19)
    for _ in range(400):
        x = random_value(rng, rng.choice([2, 3, 5, 7]))
        gap = Fraction(1, 2 ** rng.randint(3, 40))
        lo = rational_below(x, gap)
        hi = rational_above(x, gap)
        assert compare_cross(QuadExt(lo), x) < 0 < compare_cross(QuadExt(hi), x)
        assert compare_cross(x - QuadExt(lo), gap) < 0
        assert compare_cross(QuadExt(hi) - x, gap) < 0


def test_str_repr():
    assert str(QuadExt(Fraction(15), Fraction(-4), 3)) == "15 - 4*sqrt(3)"
    assert str(QuadExt(Fraction(0), Fraction(1), 2)) == "sqrt(2)"
    assert str(QuadExt(Fraction(-3, 2))) == "-3/2"
    x = QuadExt(Fraction(1, 3), Fraction(-1), 5)
    assert eval(repr(x), {"QuadExt": QuadExt, "Fraction": Fraction}) == x
