#!/usr/bin/env python3
"""
Tests for exact plane geometry over Q(sqrt 2)
"""

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from errors import GeometryError, LatticeHitError
from planegeom import (
    SQRT2, PLLoop, PLPath, QuadNum, cancel_edges, certify_avoids, chain_winding, on_segment, point,
    rational_between, segment_avoids_lattice, winding_number, winding_profile,
)

UNIT_SQUARE = PLLoop((point(0, 0), point(1, 0), point(1, 1), point(0, 1)))
IRRATIONAL_SQUARE = PLLoop((point(-SQRT2, -SQRT2), point(SQRT2, -SQRT2), point(SQRT2, SQRT2), point(-SQRT2, SQRT2)))

quadnums = st.builds(QuadNum, st.integers(-2, 2), st.integers(-1, 1))
points = st.builds(point, quadnums, quadnums)


def lattice_points_on(p, q, denominator):
    """Brute force: rationals of bounded denominator on the closed segment pq"""
    lo_x, hi_x = min(p.x, q.x), max(p.x, q.x)
    lo_y, hi_y = min(p.y, q.y), max(p.y, q.y)
    xs = {Fraction(k, d) for d in range(1, denominator + 1)
          for k in range(lo_x.floor() * d, (hi_x.ceil() * d) + 1)}
    ys = {Fraction(k, d) for d in range(1, denominator + 1)
          for k in range(lo_y.floor() * d, (hi_y.ceil() * d) + 1)}
    return [(x, y) for x in xs for y in ys if on_segment(point(x, y), p, q)]


def test_quadnum_sign_is_exact():
    assert QuadNum(3, -2).sign() == 1
    assert QuadNum(-3, 2).sign() == -1
    assert QuadNum(1, -1).sign() == -1
    assert QuadNum(0, 0).sign() == 0
    assert QuadNum(Fraction(1393, 985), -1).sign() == -1


def test_quadnum_arithmetic():
    assert SQRT2 * SQRT2 == 2
    assert (1 + SQRT2) * (SQRT2 - 1) == 1
    assert (1 + SQRT2).inverse() == SQRT2 - 1
    assert SQRT2 / 2 == QuadNum(0, Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        QuadNum(0).inverse()


def test_quadnum_rounding_and_text():
    assert SQRT2.floor() == 1
    assert (-SQRT2).floor() == -2
    assert SQRT2.ceil() == 2
    assert str(QuadNum(1, 1)) == "1+sqrt2"
    assert str(-SQRT2) == "-sqrt2"
    assert str(QuadNum(1, -2)) == "1-2*sqrt2"
    assert str(QuadNum(Fraction(1, 2))) == "1/2"


def test_quadnum_parse():
    assert QuadNum.parse(["1/2", 3]) == QuadNum(Fraction(1, 2), 3)
    assert QuadNum.parse("7/3") == QuadNum(Fraction(7, 3))
    for raw in ([1, 2, 3], 0.5, "abc", True):
        with pytest.raises(GeometryError):
            QuadNum.parse(raw)


def test_rational_between():
    assert rational_between(QuadNum(1), SQRT2) == Fraction(4, 3)
    with pytest.raises(GeometryError):
        rational_between(SQRT2, QuadNum(1))


def test_segments_on_irrational_lines_avoid_the_lattice():
    assert segment_avoids_lattice(point(SQRT2, 0), point(SQRT2, 1)).avoids
    assert segment_avoids_lattice(point(SQRT2, 0), point(0, SQRT2)).avoids
    certify_avoids(IRRATIONAL_SQUARE)


def test_diagonal_through_the_origin_is_caught():
    check = segment_avoids_lattice(point(-SQRT2, -SQRT2), point(SQRT2, SQRT2))
    assert check.witness == (0, 0)
    assert check.t == Fraction(1, 2)
    path = PLPath((point(-SQRT2, -SQRT2), point(SQRT2, SQRT2), point(SQRT2, 3)))
    with pytest.raises(LatticeHitError) as info:
        certify_avoids(path)
    assert info.value.witness == (0, 0)


def test_degenerate_segment():
    with pytest.raises(GeometryError):
        segment_avoids_lattice(point(SQRT2, 0), point(SQRT2, 0))


@pytest.mark.property_based
@given(points, points)
@settings(max_examples=60, deadline=None)
def test_lattice_check_agrees_with_brute_force(p, q):
    assume(p != q)
    check = segment_avoids_lattice(p, q)
    if check.avoids:
        assert lattice_points_on(p, q, 4) == []
    else:
        assert on_segment(point(*check.witness), p, q)


@pytest.mark.property_based
@given(st.integers(-30, 30), st.integers(-30, 30))
@settings(max_examples=200)
def test_sign_matches_floating_point(a, b):
    value = a + b * math.sqrt(2)
    assert QuadNum(a, b).sign() == (value > 0) - (value < 0)


def test_winding_number_of_a_square():
    assert winding_number(UNIT_SQUARE, (Fraction(1, 2), Fraction(1, 2))) == 1
    assert winding_number(UNIT_SQUARE.reversed(), (Fraction(1, 2), Fraction(1, 2))) == -1
    assert winding_number(UNIT_SQUARE, (2, 2)) == 0
    with pytest.raises(GeometryError):
        winding_number(UNIT_SQUARE, (1, Fraction(1, 2)))


def test_loop_validation():
    with pytest.raises(GeometryError):
        PLLoop((point(0, 0),))
    with pytest.raises(GeometryError):
        PLLoop((point(0, 0), point(0, 0), point(1, 1)))
    with pytest.raises(GeometryError):
        PLLoop.from_path(PLPath((point(0, 0), point(1, 1))))


def test_loop_parse_allows_two_vertices():
    loop = PLLoop.parse([[[0, 1], 0], [1, [0, 1]]])
    assert loop.vertices == (point(SQRT2, 0), point(1, SQRT2))
    assert len(loop.edges()) == 2


def test_cancel_edges_and_chain_winding():
    a, b, c = point(0, 0), point(2, 0), point(0, 2)
    assert cancel_edges([(a, b), (b, a)]) == []
    triangle = [(a, b), (b, c), (c, a)]
    assert chain_winding(triangle + [(a, b), (b, a)], (Fraction(1, 2), Fraction(1, 2))) == 1


def test_profile_of_the_unit_square():
    profile = winding_profile(UNIT_SQUARE, 2)
    assert list(profile) == [(Fraction(1, 2), Fraction(1, 2))]
    assert profile[(Fraction(1, 2), Fraction(1, 2))] == 1
    assert profile.nonzero_point() == (Fraction(1, 2), Fraction(1, 2))
    assert not profile.is_zero()
    with pytest.raises(KeyError):
        profile[(0, 0)]


def test_loop_followed_by_its_reverse_has_zero_profile():
    there_and_back = UNIT_SQUARE.concat(UNIT_SQUARE.reversed())
    assert winding_profile(there_and_back, 6).is_zero()


def test_profiles_compare_on_the_union_box():
    shifted = UNIT_SQUARE.translated(2, 0)
    profile = winding_profile(UNIT_SQUARE, 3)
    assert profile.agrees_with(winding_profile(UNIT_SQUARE, 3))
    assert profile.disagreement(winding_profile(shifted, 3)) is not None
    with pytest.raises(GeometryError):
        profile.disagreement(winding_profile(UNIT_SQUARE, 4))


def test_profile_rejects_bad_denominator():
    with pytest.raises(GeometryError):
        winding_profile(UNIT_SQUARE, 0)
