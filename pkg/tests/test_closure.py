from __future__ import annotations

from fractions import Fraction

import pytest

from surreal.core.closure import (
    INV_STEPS_CAP,
    SQRT_STEPS_CAP,
    CutApprox,
    closure_to_data,
    inv_iterate,
    inverse,
    inverse_rep,
    rational_sqrt,
    sqrt,
    sqrt_iterate,
)
from surreal.core.embed import s_D
from surreal.core.errors import (
    DivByZero,
    InvalidSeed,
    NegativeOperand,
    NotPositive,
    SeedNotRational,
)
from surreal.core.gameform import FormArena, GameForm, equiv, mul, value


F = Fraction


# -----------------------------
# Обратный элемент
# -----------------------------


def test_inverse_of_five_trace(arena):
    c = inv_iterate(s_D(5, arena), 3)
    assert c.left_values == (F(0), F(3, 16), F(51, 256))
    assert c.right_values == (F(1, 4), F(13, 64), F(205, 1024))
    assert c.steps == 3
    assert not c.fixpoint
    b = c.interval()
    assert (b.lower, b.upper) == (F(51, 256), F(205, 1024))
    assert b.contains(F(1, 5))
    assert c.certificate_holds()
    assert not c.exact
    assert c.extract() == F(409, 2048)


def test_inverse_brackets_shrink(arena):
    x = s_D(5, arena)
    widths = []
    for k in range(2, 9):
        b = inv_iterate(x, k).interval()
        assert b.contains(F(1, 5))
        widths.append(b.upper - b.lower)
    assert all(w2 < w1 for w1, w2 in zip(widths, widths[1:]))


def test_inverse_of_two_reaches_fixpoint(arena):
    c = inv_iterate(s_D(2, arena), 10)
    assert c.fixpoint
    assert c.steps == 2
    assert c.left_values == (F(0),)
    assert c.right_values == (F(1),)
    assert c.exact
    assert inverse(s_D(2, arena), 10) is s_D(F(1, 2), arena)


def test_inverse_of_one(arena):
    assert inverse(s_D(1, arena)) is s_D(1, arena)


def test_inverse_of_negative(arena):
    assert inverse(s_D(-2, arena)) is s_D(F(-1, 2), arena)
    c = inverse(s_D(-5, arena), 3)
    assert isinstance(c, CutApprox)
    b = c.interval()
    assert (b.lower, b.upper) == (F(-205, 1024), F(-51, 256))
    assert c.target == F(-1, 5)
    assert c.certificate_holds()


def test_inverse_errors(arena):
    with pytest.raises(DivByZero):
        inverse(arena.zero)
    with pytest.raises(NotPositive):
        inv_iterate(s_D(-1, arena), 2)
    with pytest.raises(ValueError):
        inv_iterate(s_D(3, arena), INV_STEPS_CAP + 1)
    with pytest.raises(ValueError):
        inv_iterate(s_D(3, arena), -1)


def test_inverse_rep_is_equivalent(arena):
    x = arena.make([s_D(-1, arena), s_D(1, arena)], [s_D(4, arena)])
    p = inverse_rep(x)
    assert equiv(p, x)
    assert all(value(l) >= 0 for l in p.left)


def test_scaled_bracket(arena):
    c = inv_iterate(s_D(5, arena), 3).scaled(3)
    b = c.interval()
    assert (b.lower, b.upper) == (F(153, 256), F(615, 1024))
    assert c.target == F(3, 5)
    assert c.certificate_holds()
    with pytest.raises(ValueError):
        c.scaled(0)


def test_to_form_and_data(arena):
    c = inv_iterate(s_D(5, arena), 3)
    f = c.to_form(arena)
    assert value(f) == c.extract()
    data = c.to_data()
    assert data["kind"] == "inverse"
    assert data["operand"] == "5"
    assert data["target"] == "1/5"
    assert data["left"] == ["0", "3/16", "51/256"]
    assert data["interval"] == ["51/256", "205/1024"]
    assert data["exact"] is False
    assert closure_to_data(s_D(F(1, 2), arena)) == {
        "value": "1/2",
        "interval": ["1/2", "1/2"],
        "exact": True,
    }


# -----------------------------
# Квадратный корень
# -----------------------------


def test_rational_sqrt():
    assert rational_sqrt(F(9, 4)) == F(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-4) is None
    assert rational_sqrt(0) == 0


def test_sqrt_of_four_with_seeds():
    c = sqrt_iterate(F(4), 2, seeds=([0, 1], []))
    b = c.interval()
    assert (b.lower, b.upper) == (F(13, 7), F(41, 20))
    assert c.right_values == (F(5, 2), F(4), F(41, 20), F(28, 13))
    assert c.certificate_holds()
    assert c.exact
    assert c.extract() == 2


def test_sqrt_brackets_shrink_strictly():
    widths = []
    for k in range(1, 5):
        b = sqrt_iterate(F(4), k, seeds=([0, 1], [])).interval()
        assert b.contains(2)
        widths.append(b.upper - b.lower)
    assert all(w2 < w1 for w1, w2 in zip(widths, widths[1:]))


def test_sqrt_of_two_is_approximate():
    c = sqrt_iterate(F(2), 1, seeds=([1], [2]))
    assert c.left_values == (F(1), F(4, 3))
    assert c.right_values == (F(2), F(3, 2))
    assert c.target is None
    assert not c.exact
    assert c.certificate_holds()
    with pytest.raises(ValueError):
        c.to_form()


def test_sqrt_form_without_seeds(arena):
    assert sqrt(s_D(1, arena)) is s_D(1, arena)
    with pytest.raises(SeedNotRational):
        sqrt(s_D(4, arena))
    r = sqrt(s_D(4, arena), steps=2, seeds=([0, 1], []))
    assert isinstance(r, GameForm)
    assert r is s_D(2, arena)


def test_sqrt_errors(arena):
    with pytest.raises(NegativeOperand):
        sqrt(s_D(-1, arena))
    with pytest.raises(InvalidSeed):
        sqrt_iterate(F(4), 2, seeds=([3], []))
    with pytest.raises(InvalidSeed):
        sqrt_iterate(F(4), 2, seeds=([], [1]))
    with pytest.raises(InvalidSeed):
        sqrt_iterate(F(4), 2)
    with pytest.raises(ValueError):
        sqrt_iterate(F(4), SQRT_STEPS_CAP + 1, seeds=([0], []))


def test_fixpoints_square_back(arena):
    four = s_D(4, arena)
    root = sqrt(four, steps=2, seeds=([0, 1], []))
    assert equiv(mul(root, root), four)
    one = s_D(1, arena)
    assert equiv(mul(sqrt(one), sqrt(one)), one)
    half = inverse(s_D(2, arena))
    assert equiv(mul(half, s_D(2, arena)), one)


def test_fixpoint_with_poor_seeds_is_not_exact(arena):
    c = sqrt_iterate(F(4), 3, seeds=([0], []))
    assert c.fixpoint
    assert c.steps == 1
    assert c.extract() == 1
    assert c.target == 2
    assert not c.exact
    r = sqrt(s_D(4, arena), seeds=([0], []))
    assert isinstance(r, CutApprox)
    assert r.interval().contains(2)


def test_iterations_are_deterministic():
    runs = []
    for _ in range(2):
        fresh = FormArena()
        runs.append(
            (
                inv_iterate(s_D(5, fresh), 6),
                inv_iterate(s_D(F(3, 4), fresh), 6),
                sqrt_iterate(s_D(F(9, 4), fresh), 3, seeds=([1], [2])),
                sqrt_iterate(F(2), 3, seeds=([1], [2])),
            )
        )
    assert runs[0] == runs[1]
    for a, b in zip(*runs):
        assert a.left_values == b.left_values
        assert a.right_values == b.right_values
        assert a.extract() == b.extract()
