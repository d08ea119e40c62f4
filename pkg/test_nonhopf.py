#!/usr/bin/env python3
"""
Tests for lifting loops through the folding map
"""

from fractions import Fraction

import pytest

from errors import GeometryError
from nonhopf import (
    BASEPOINT, LoopSampler, apply_f, decompose_case3, kernel_witness, lift_left_of_one, lift_loop, lift_suite,
    map_f, refine,
)
from planegeom import SQRT2, PLLoop, PLPath, point, winding_number

HALF_ROOT = SQRT2 / 2

# rectilinear loops on irrational lines avoid the lattice
ACROSS_ONE = PLLoop((
    BASEPOINT, point(SQRT2, SQRT2), point(SQRT2, 2 * SQRT2), point(-HALF_ROOT, 2 * SQRT2), point(-HALF_ROOT, SQRT2),
))
LEFT_HALF = PLLoop((BASEPOINT, point(-HALF_ROOT, SQRT2), point(-HALF_ROOT, 2 * SQRT2)))


def test_map_f_folds_and_shifts():
    y = SQRT2
    assert map_f(point(Fraction(-1, 2), y)) == point(Fraction(-1, 2), y)
    assert map_f(point(Fraction(1, 2), y)) == point(Fraction(-1, 2), y)
    assert map_f(point(1, y)) == point(-1, y)
    assert map_f(point(3, y)) == point(1, y)


def test_refine_inserts_seam_crossings():
    path = PLPath((point(-2, SQRT2), point(2, SQRT2)))
    assert [p.x for p in refine(path).vertices] == [-2, -1, 0, 1, 2]


def test_apply_f_refuses_lattice_hits():
    with pytest.raises(GeometryError):
        apply_f(PLPath((point(0, 0), point(1, SQRT2))))


def test_loop_left_of_the_axis_lifts_to_itself():
    report = lift_loop(LEFT_HALF)
    assert report.case == "case1"
    assert report.lifted == LEFT_HALF
    assert report.match


def test_loop_reaching_past_one_is_a_single_block():
    report = lift_loop(ACROSS_ONE, 12)
    assert report.case == "case2"
    assert [kind for kind, _ in report.case_trace] == ["I", "J", "I"]
    assert report.match
    assert report.lifted.basepoint == BASEPOINT
    assert winding_number(ACROSS_ONE, (1, 2)) == 1


def test_decomposition_covers_the_loop():
    decomposition = decompose_case3(ACROSS_ONE)
    assert decomposition.j_intervals == ((0, 1),)
    trace = decomposition.trace()
    assert trace[0][1][0] == 0
    assert trace[-1][1][1] == 1


def test_loops_must_start_on_the_axis():
    off_axis = PLLoop((point(HALF_ROOT, SQRT2), point(-HALF_ROOT, SQRT2), point(-HALF_ROOT, 2 * SQRT2)))
    with pytest.raises(GeometryError):
        lift_loop(off_axis)
    with pytest.raises(GeometryError):
        decompose_case3(off_axis)


def test_lift_left_of_one_keeps_endpoints():
    path = PLPath((BASEPOINT, point(HALF_ROOT, SQRT2), point(HALF_ROOT, 2 * SQRT2), point(0, 2 * SQRT2)))
    lifted = lift_left_of_one(path)
    assert lifted.start == path.start
    assert lifted.end == path.end
    assert lifted.vertices[1] == point(2, SQRT2)


def test_lift_left_of_one_rejects_paths_reaching_one():
    path = PLPath((BASEPOINT, point(SQRT2, SQRT2), point(0, 2 * SQRT2)))
    with pytest.raises(GeometryError):
        lift_left_of_one(path)


def test_kernel_witness():
    witness = kernel_witness()
    data = witness.to_dict(40)
    assert data["winding"] == 1
    assert data["imageProfileZero"] is True
    assert data["enclosed"] == ["1/4", "3/2"]


def test_sampler_is_deterministic():
    first = LoopSampler(seed=7).loops(5)
    assert first == LoopSampler(seed=7).loops(5)
    assert all(loop.basepoint == BASEPOINT for loop in first)
    assert all(2 <= len(loop.vertices) <= 6 for loop in first)


def test_report_dict_shape():
    data = lift_loop(LEFT_HALF, 8).to_dict()
    assert data["case"] == "case1"
    assert data["profileD"] == 8
    assert data["match"] is True
    assert data["caseTrace"] == [{"kind": "I", "from": "0", "to": "1"}]
    assert "disagreement" not in data


@pytest.mark.slow
def test_random_suite_lifts_every_loop():
    report = lift_suite(100, 40, seed=0)
    assert report["matches"] == 100
    assert report["failures"] == []
    assert sum(report["cases"].values()) == 100
