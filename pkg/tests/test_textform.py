import random

import pytest

from conftest import rand_elem
from charp import towers as tw
from charp.textform import (ParseError, format_elem, format_expr,
                            format_symbol, format_tower, parse_element,
                            parse_expr, parse_symbol, parse_tower)


def test_element_examples(f2t):
    assert format_elem(parse_element("(t^2+1)/(t+1)", f2t)) == "t+1"
    assert format_elem(parse_element("0", f2t)) == "0"
    with pytest.raises(ParseError) as err:
        parse_element("1/(t-t)", f2t)
    assert "division by zero" in str(err.value)
    assert err.value.pos > 0


def test_unknown_variable_and_syntax_errors(f2t):
    with pytest.raises(ParseError, match="unknown variable"):
        parse_element("x+1", f2t)
    with pytest.raises(ParseError):
        parse_element("(t+1", f2t)
    with pytest.raises(ParseError):
        parse_element("t ** 2", f2t)


def test_subtraction_and_unary_minus(f3t):
    x = parse_element("2*t-t", f3t)
    assert format_elem(x) == "t"
    y = parse_element("-t", f3t)
    assert format_elem(y) == "2*t"


def test_element_round_trip_random():
    rng = random.Random(13)
    T = parse_tower("GF(4)(t) ; AS i: i^2+i = g ; ROOT s: s^2 = t")
    base = tw.truncate(T, 0)
    for _ in range(25):
        x = tw.lift(tw.rebind(rand_elem(rng, base, 2), T), 2)
        for lvl in (1, 2):
            x = tw.add(x, tw.mul(tw.lift(tw.gen_elem(T, lvl), 2),
                                 tw.lift(tw.rebind(rand_elem(rng, base, 1), T), 2)))
        text = format_elem(x)
        assert parse_element(text, T, 2) == x
        assert format_elem(parse_element(text, T, 2)) == text


def test_symbol_and_expr_round_trip(f2t):
    sym, is_op = parse_symbol("[1/t, t)_2", f2t)
    assert not is_op
    assert format_symbol(sym) == "[1/t, t)_2"
    expr = parse_expr("[1, t)_2 * [t, t+1)_2^op", f2t)
    assert expr.length() == 2
    text = format_expr(expr)
    assert parse_expr(text, f2t).entries == expr.entries
    assert parse_expr("1", f2t).is_empty()


def test_symbol_prime_mismatch(f2t):
    with pytest.raises(ParseError):
        parse_symbol("[1, t)_3", f2t)
    with pytest.raises(ParseError):
        parse_symbol("[1, 0)_2", f2t)


def test_tower_round_trips():
    texts = [
        "GF(2)(t) ; AS i: i^2+i = 1/t ; ROOT s: s^2 = t",
        "GF(3)(t) ; AS i: i^3+2*i = 1/t",
        "GF(4)(t) ; ROOT s: s^2 = t^3+g",
        "GF(2)(t1,t2) ; ROOT r: r^2 = t1",
        "GF(2)(t) ; EXT j: j^2+(t)*j+(t^2) = 0",
    ]
    for text in texts:
        T = parse_tower(text)
        assert format_tower(T) == text
        assert format_tower(parse_tower(format_tower(T))) == text


def test_tower_rejects_wrong_left_side():
    with pytest.raises(ParseError):
        parse_tower("GF(2)(t) ; AS i: i^2+1 = 1/t")
    with pytest.raises(ParseError):
        parse_tower("GF(2)(t) ; ROOT s: s^3 = t")
    with pytest.raises(ParseError):
        parse_tower("GF(6)(t)")
