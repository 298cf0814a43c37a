from __future__ import annotations

import random
from fractions import Fraction

import pytest

from helpers import dyadics
from surreal.core.errors import DivByZero, EmptyInterval, ParseError
from surreal.core.numeric import (
    BoundedInterval,
    Dyadic,
    dyadic_arith,
    format_scalar,
    is_dyadic,
    parse_dyadic,
    parse_scalar,
    simplest_dyadic,
)
from surreal.core.signexp import from_dyadic


F = Fraction


def test_dyadic_normalizes():
    assert Dyadic(4, 3) == Dyadic(1, 1)
    assert Dyadic(4, 3).numerator == 1
    assert Dyadic(4, 3).exponent == 1
    assert Dyadic(0, 5).exponent == 0
    assert Dyadic(6, 0).exponent == 0


def test_dyadic_rejects_negative_exponent():
    with pytest.raises(ValueError):
        Dyadic(1, -1)


def test_from_fraction():
    assert Dyadic.from_fraction(F(3, 8)) == Dyadic(3, 3)
    with pytest.raises(ValueError):
        Dyadic.from_fraction(F(1, 3))


@pytest.mark.parametrize(
    "d, expected",
    [
        (Dyadic(0), 0),
        (Dyadic(3), 3),
        (Dyadic(-2), 2),
        (Dyadic(1, 1), 2),
        (Dyadic(3, 2), 3),
        (Dyadic(-3, 2), 3),
        (Dyadic(5, 1), 4),
    ],
)
def test_birthday(d, expected):
    assert d.birthday == expected


def test_birthday_matches_sign_expansion_length():
    for q in dyadics(6):
        assert Dyadic.from_fraction(q).birthday == len(from_dyadic(q))


def test_arithmetic_stays_dyadic():
    assert Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2)
    assert Dyadic(3, 2) * Dyadic(1, 1) == Dyadic(3, 3)
    assert Dyadic(1) - Dyadic(1, 1) == Dyadic(1, 1)
    assert -Dyadic(3, 2) == Dyadic(-3, 2)
    assert isinstance(Dyadic(1, 1) + 1, Dyadic)


def test_mixed_arithmetic_goes_rational():
    assert Dyadic(1, 1) + F(1, 3) == F(5, 6)
    assert Dyadic(1, 1) * F(2, 3) == F(1, 3)
    assert Dyadic(1) / Dyadic(3) == F(1, 3)


def test_oracle_agrees_with_fractions():
    rng = random.Random(7)
    pool = dyadics(6)
    for _ in range(10_000):
        a, b = rng.choice(pool), rng.choice(pool)
        da, db = Dyadic.from_fraction(a), Dyadic.from_fraction(b)
        assert dyadic_arith(da, db, "+") == a + b
        assert dyadic_arith(da, db, "-") == a - b
        assert dyadic_arith(da, db, "*") == a * b
        assert isinstance(dyadic_arith(da, db, "*"), Dyadic)


def test_oracle_division():
    assert dyadic_arith(Dyadic(1), Dyadic(3), "/") == F(1, 3)
    with pytest.raises(DivByZero):
        dyadic_arith(Dyadic(1), Dyadic(0), "/")
    with pytest.raises(ZeroDivisionError):
        dyadic_arith(Dyadic(1), 0, "/")
    with pytest.raises(ValueError):
        dyadic_arith(Dyadic(1), Dyadic(1), "%")


def test_ordering_and_hash():
    assert Dyadic(1, 1) < Dyadic(3, 2)
    assert Dyadic(1, 1) == F(1, 2)
    assert hash(Dyadic(1, 1)) == hash(F(1, 2))
    assert sorted([Dyadic(1), Dyadic(-1, 1), Dyadic(0)]) == [Dyadic(-1, 1), Dyadic(0), Dyadic(1)]


def test_is_dyadic():
    assert is_dyadic(F(3, 16))
    assert is_dyadic(5)
    assert not is_dyadic(F(1, 3))
    assert not is_dyadic(F(1, 6))


@pytest.mark.parametrize(
    "lo, hi, expected",
    [
        (None, None, F(0)),
        (F(0), None, F(1)),
        (None, F(0), F(-1)),
        (F(-1), F(1), F(0)),
        (F(2), F(3), F(5, 2)),
        (F(1, 2), F(1), F(3, 4)),
        (F(1, 3), F(1, 2), F(3, 8)),
        (F(-3, 2), F(-1, 2), F(-1)),
        (F(3), None, F(4)),
        (F(0), F(1), F(1, 2)),
    ],
)
def test_simplest_dyadic(lo, hi, expected):
    assert simplest_dyadic(BoundedInterval(lo, hi)) == expected


def test_simplest_dyadic_has_minimal_birthday():
    pool = dyadics(6)
    rng = random.Random(3)
    for _ in range(100):
        lo, hi = sorted(rng.sample(pool, 2))
        best = simplest_dyadic(BoundedInterval(lo, hi))
        inside = [q for q in pool if lo < q < hi]
        assert lo < best.to_fraction() < hi
        assert all(best.birthday <= Dyadic.from_fraction(q).birthday for q in inside)


def test_simplest_dyadic_is_stable_under_refinement():
    pool = dyadics(6)
    rng = random.Random(4)
    for _ in range(1000):
        lo, hi = sorted(rng.sample(pool, 2))
        best = simplest_dyadic(BoundedInterval(lo, hi)).to_fraction()
        inner_lo = rng.choice([q for q in pool if lo <= q < best])
        inner_hi = rng.choice([q for q in pool if best < q <= hi])
        assert simplest_dyadic(BoundedInterval(inner_lo, inner_hi)) == best


def test_empty_interval():
    with pytest.raises(EmptyInterval):
        BoundedInterval(F(1), F(1))
    with pytest.raises(ValueError):
        BoundedInterval(F(2), F(1))


def test_interval_contains_and_negated():
    b = BoundedInterval(F(0), F(1))
    assert b.contains(F(1, 2))
    assert not b.contains(0)
    assert not b.contains(1)
    n = b.negated()
    assert (n.lower, n.upper) == (F(-1), F(0))
    assert str(BoundedInterval(None, F(1, 2))) == "(-inf, 1/2)"


def test_parse_and_format_scalar():
    assert parse_scalar("3/4") == F(3, 4)
    assert parse_scalar(" -2 ") == F(-2)
    assert parse_dyadic("6/8") == Dyadic(3, 2)
    assert format_scalar(F(-3, 4)) == "-3/4"
    assert format_scalar(Dyadic(4)) == "4"
    assert format_scalar(7) == "7"


def test_parse_scalar_errors():
    with pytest.raises(DivByZero):
        parse_scalar("1/0")
    with pytest.raises(ParseError):
        parse_scalar("abc")
    with pytest.raises(ParseError):
        parse_dyadic("1/3")
