from __future__ import annotations

import random

import pytest

from surreal.core.errors import ParseError
from surreal.core.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    format_ordinal,
    ord_add,
    ord_cmp,
    ord_nat_sum,
    parse_ordinal,
)
from surreal.core.types import Ordering


def w(e, c: int = 1) -> Ordinal:
    e = Ordinal.from_int(e) if isinstance(e, int) else e
    return Ordinal.omega_power(e, c)


def random_ordinal(rng: random.Random, depth: int = 2) -> Ordinal:
    acc = ZERO
    for _ in range(rng.randint(0, 3)):
        e = random_ordinal(rng, depth - 1) if depth > 0 and rng.random() < 0.3 else Ordinal.from_int(rng.randint(0, 3))
        acc = ord_nat_sum(acc, Ordinal.omega_power(e, rng.randint(1, 3)))
    return acc


def test_constants():
    assert ZERO.is_zero()
    assert ONE == 1
    assert OMEGA == w(1)
    assert not OMEGA.is_finite()
    assert Ordinal.from_int(5).to_int() == 5


def test_invalid_terms():
    with pytest.raises(ValueError):
        Ordinal(((ZERO, 0),))
    with pytest.raises(ValueError):
        Ordinal(((ZERO, 1), (ONE, 1)))
    with pytest.raises(ValueError):
        Ordinal.from_int(-1)
    with pytest.raises(ValueError):
        OMEGA.to_int()


def test_cmp():
    assert ord_cmp(OMEGA, Ordinal.from_int(100)) is Ordering.GT
    assert ord_cmp(w(1, 2), ord_add(OMEGA, Ordinal.from_int(7))) is Ordering.GT
    assert ord_cmp(w(OMEGA), w(5, 9)) is Ordering.GT
    assert ord_cmp(w(2), w(2)) is Ordering.EQ
    assert Ordinal.from_int(3) < OMEGA


def test_standard_sum_absorbs():
    one = Ordinal.from_int(1)
    assert ord_add(one, OMEGA) == OMEGA
    assert ord_add(OMEGA, one) == Ordinal(((ONE, 1), (ZERO, 1)))
    assert ord_add(OMEGA, OMEGA) == w(1, 2)
    assert ord_add(ord_add(OMEGA, one), OMEGA) == w(1, 2)
    assert ord_add(w(1, 3), w(2)) == w(2)


def test_natural_sum_is_commutative():
    one = Ordinal.from_int(1)
    assert ord_nat_sum(one, OMEGA) == ord_nat_sum(OMEGA, one)
    assert ord_nat_sum(w(1, 3), w(2)) == Ordinal(((Ordinal.from_int(2), 1), (ONE, 3)))


def test_natural_sum_properties():
    rng = random.Random(11)
    for _ in range(1000):
        a, b, c = random_ordinal(rng), random_ordinal(rng), random_ordinal(rng)
        assert ord_nat_sum(a, b) == ord_nat_sum(b, a)
        assert ord_nat_sum(ord_nat_sum(a, b), c) == ord_nat_sum(a, ord_nat_sum(b, c))
        assert ord_nat_sum(a, ZERO) == a
        # a ⊕ b ≥ a + b
        assert ord_cmp(ord_nat_sum(a, b), ord_add(a, b)) is not Ordering.LT
        if not b.is_zero():
            assert a < ord_nat_sum(a, b)


def test_standard_sum_associative():
    rng = random.Random(5)
    for _ in range(1000):
        a, b, c = random_ordinal(rng), random_ordinal(rng), random_ordinal(rng)
        assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", ZERO),
        ("7", Ordinal.from_int(7)),
        ("w", OMEGA),
        ("w*2 + 3", Ordinal(((ONE, 2), (ZERO, 3)))),
        ("w^2*3 + 1", Ordinal(((Ordinal.from_int(2), 3), (ZERO, 1)))),
        ("w^w", w(OMEGA)),
        ("w^(w + 1)", w(ord_add(OMEGA, Ordinal.from_int(1)))),
        ("1 + w", OMEGA),
    ],
)
def test_parse(text, expected):
    assert parse_ordinal(text) == expected


def test_format_round_trip():
    rng = random.Random(2)
    for _ in range(100):
        a = random_ordinal(rng)
        assert parse_ordinal(format_ordinal(a)) == a


def test_format():
    assert format_ordinal(Ordinal(((Ordinal.from_int(2), 3), (ZERO, 1)))) == "w^2*3 + 1"
    assert format_ordinal(w(OMEGA)) == "w^(w*1)*1"


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_ordinal("w^")
    assert exc.value.column == 3
    with pytest.raises(ParseError):
        parse_ordinal("w + x")
    with pytest.raises(ParseError):
        parse_ordinal("3 3")
