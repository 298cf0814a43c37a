from __future__ import annotations

from fractions import Fraction

import pytest

from surreal.core.embed import s_D
from surreal.core.errors import ParseError
from surreal.core.gameform import is_canonical, value
from surreal.core.signexp import (
    SignExpansion,
    all_expansions,
    birthday,
    format_signs,
    from_dyadic,
    from_form,
    lex_cmp,
    negate,
    parse_signs,
    to_canonical_form,
    to_dyadic,
)
from surreal.core.types import Ordering


F = Fraction


@pytest.mark.parametrize(
    "signs, expected",
    [
        ("", F(0)),
        ("+", F(1)),
        ("-", F(-1)),
        ("++", F(2)),
        ("+-", F(1, 2)),
        ("-+", F(-1, 2)),
        ("+-+", F(3, 4)),
        ("+--", F(1, 4)),
        ("++-", F(3, 2)),
        ("+++-+", F(11, 4)),
    ],
)
def test_to_dyadic(signs, expected):
    assert to_dyadic(parse_signs(signs)) == expected
    assert format_signs(from_dyadic(expected)) == signs


def test_bijection_on_short_expansions():
    seen = set()
    for n in range(13):
        for s in all_expansions(n):
            d = to_dyadic(s)
            assert from_dyadic(d) == s
            assert birthday(s) == n == d.birthday
            seen.add(d)
    assert len(seen) == 2**13 - 1


def test_lex_order_matches_values():
    expansions = [s for n in range(9) for s in all_expansions(n)]
    values = {s: to_dyadic(s) for s in expansions}
    for x in expansions:
        vx = values[x]
        for y in expansions:
            assert lex_cmp(x, y) is Ordering.of(vx, values[y])


def test_lex_cmp_undefined_sits_between():
    assert lex_cmp(parse_signs("+"), parse_signs("+-")) is Ordering.GT
    assert lex_cmp(parse_signs("+"), parse_signs("++")) is Ordering.LT
    assert lex_cmp(parse_signs(""), parse_signs("")) is Ordering.EQ


def test_negate():
    for n in range(6):
        for s in all_expansions(n):
            assert to_dyadic(negate(s)) == -to_dyadic(s)
            assert negate(negate(s)) == s


def test_canonical_form_bridge(arena):
    for n in range(11):
        for s in all_expansions(n):
            f = to_canonical_form(s, arena)
            assert is_canonical(f)
            assert f is s_D(to_dyadic(s), arena)
            assert from_form(f) == s
            assert value(f) == to_dyadic(s)


def test_from_form_non_canonical(arena):
    x = arena.make([s_D(-1, arena)], [s_D(1, arena)])
    assert from_form(x) == SignExpansion(())


def test_all_expansions_count():
    assert [len(list(all_expansions(n))) for n in range(6)] == [1, 2, 4, 8, 16, 32]


def test_parse_signs_accepts_unicode_minus():
    assert parse_signs("+−") == parse_signs("+-")
    with pytest.raises(ParseError) as exc:
        parse_signs("+x")
    assert exc.value.column == 2


def test_from_dyadic_rejects_non_dyadic():
    with pytest.raises(ValueError):
        from_dyadic(F(1, 3))
