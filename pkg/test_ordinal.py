#!/usr/bin/env python3
"""
Tests for ordinal arithmetic in Cantor normal form
"""

import itertools
from typing import List

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import OrdinalError, ParseError
from ordinal import OMEGA, ONE, ZERO, Ordinal, max_ordinal

EXPONENTS = [ZERO, ONE, Ordinal.from_int(2), OMEGA, OMEGA + 1, Ordinal.omega_power(2)]


@st.composite
def ordinals(draw):
    chosen = draw(st.sets(st.sampled_from(range(len(EXPONENTS))), max_size=4))
    terms = [(EXPONENTS[i], draw(st.integers(1, 3))) for i in sorted(chosen, reverse=True)]
    return Ordinal(terms)


def omega_times(b: Ordinal) -> Ordinal:
    """omega * b, term by term: omega * omega^e = omega^(1 + e)"""
    terms = []
    for exponent, coefficient in b.terms:
        terms.append((exponent + 1 if exponent.is_finite() else exponent, coefficient))
    return Ordinal(terms)


def test_parse_and_render():
    assert str(Ordinal.parse("w^2*3 + w + 4")) == "w^2*3 + w + 4"
    assert str(Ordinal.parse("w^(w+1)")) == "w^(w + 1)"
    assert str(Ordinal.parse("ω^ω")) == "w^w"
    assert Ordinal.parse("7") == 7
    assert Ordinal.parse("w*0") == ZERO
    assert str(ZERO) == "0"


@pytest.mark.parametrize("text", ["", "w^", "w +", "w^(2", "x"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        Ordinal.parse(text)


def test_parse_reports_position():
    with pytest.raises(ParseError) as info:
        Ordinal.parse("w + 1 )")
    assert info.value.position == 6


def test_absorption_on_addition():
    assert 1 + OMEGA == OMEGA
    assert OMEGA + 1 != OMEGA
    assert Ordinal.from_int(3) + OMEGA == OMEGA
    assert OMEGA + OMEGA == Ordinal.omega_power(1, 2)
    assert Ordinal.parse("w*2 + 3") + Ordinal.parse("w^2") == Ordinal.parse("w^2")


def test_successor_and_predecessor():
    assert OMEGA.succ() == Ordinal.parse("w + 1")
    assert Ordinal.parse("w + 2").predecessor() == Ordinal.parse("w + 1")
    assert ONE.predecessor() == ZERO
    with pytest.raises(OrdinalError):
        OMEGA.predecessor()
    with pytest.raises(OrdinalError):
        ZERO.predecessor()


def test_classification():
    assert ZERO.is_zero() and not ZERO.is_successor() and not ZERO.is_limit()
    assert Ordinal.parse("w + 1").is_successor()
    assert Ordinal.parse("w^2 + w").is_limit()
    assert Ordinal.from_int(5).finite_value() == 5
    with pytest.raises(OrdinalError):
        OMEGA.finite_value()


def test_divide_by_omega_examples():
    assert Ordinal.parse("w^2 + w*3 + 5").divide_by_omega() == Ordinal.parse("w + 3")
    assert Ordinal.parse("w^w + w").divide_by_omega() == Ordinal.parse("w^w + 1")
    assert Ordinal.from_int(4).divide_by_omega() == ZERO
    with pytest.raises(OrdinalError):
        ZERO.divide_by_omega()


def test_ordinal_error_is_arithmetic():
    with pytest.raises(ArithmeticError):
        Ordinal.from_int(-1)


def test_max_ordinal_ignores_none():
    assert max_ordinal(None, ONE, OMEGA, None) == OMEGA
    assert max_ordinal() == ZERO


@pytest.mark.property_based
@given(ordinals())
@settings(max_examples=200)
def test_divide_by_omega_brackets(a):
    if a.is_zero():
        return
    b = a.divide_by_omega()
    assert omega_times(b) <= a < omega_times(b.succ())


@pytest.mark.property_based
@given(ordinals(), ordinals(), ordinals())
@settings(max_examples=200)
def test_addition_is_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@pytest.mark.property_based
@given(ordinals(), ordinals())
@settings(max_examples=200)
def test_addition_is_monotone_on_the_right(a, b):
    assert a + b >= b
    assert a + b >= a
    if not b.is_zero():
        assert a + b > a


@pytest.mark.property_based
@given(ordinals())
@settings(max_examples=200)
def test_text_round_trip(a):
    assert Ordinal.parse(str(a)) == a


@pytest.mark.property_based
@given(ordinals(), ordinals())
@settings(max_examples=200)
def test_order_is_total_and_consistent_with_hash(a, b):
    assert (a < b) + (a == b) + (a > b) == 1
    if a == b:
        assert hash(a) == hash(b)


@pytest.mark.property_based
@given(ordinals())
@settings(max_examples=100)
def test_successor_then_predecessor(a):
    assert a.succ().predecessor() == a
    assert a < a.succ()


def cnf_terms(max_height: int) -> List[Ordinal]:
    """Ordinals of height at most max_height with at most two terms and coefficients 1 or 2"""
    pool = [ZERO]
    for _ in range(max_height):
        level = {ZERO}
        for exponent in pool:
            level.update(Ordinal([(exponent, c)]) for c in (1, 2))
        for high, low in itertools.permutations(pool, 2):
            for c1, c2 in itertools.product((1, 2), repeat=2):
                try:
                    level.add(Ordinal([(high, c1), (low, c2)]))
                except OrdinalError:
                    continue
        pool = sorted(level, key=str)
    return pool


def test_cnf_term_pools():
    assert len(cnf_terms(1)) == 3
    assert len(cnf_terms(2)) == 19
    assert Ordinal.parse("w^w*2 + w^2") in cnf_terms(3)


def test_order_is_antisymmetric_and_transitive_on_all_triples():
    pool = cnf_terms(2)
    for a, b in itertools.product(pool, repeat=2):
        assert a.compare(b) == -b.compare(a)
        if a <= b and b <= a:
            assert a == b
    for a, b, c in itertools.product(pool, repeat=3):
        if a <= b and b <= c:
            assert a <= c, (a, b, c)


@pytest.mark.slow
def test_order_is_linear_on_height_three():
    pool = sorted(cnf_terms(3))
    assert len(pool) == 723
    # agreeing with one sorted sequence on every pair makes the order transitive
    for i, a in enumerate(pool):
        for b in pool[i + 1:]:
            assert a < b, (a, b)
            assert a.compare(b) == -1 and b.compare(a) == 1


@pytest.mark.property_based
@given(ordinals(), ordinals(), ordinals())
@settings(max_examples=300)
def test_order_is_transitive(a, b, c):
    if a <= b and b <= c:
        assert a <= c
    if a <= b and b <= a:
        assert a == b
