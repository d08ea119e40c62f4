#!/usr/bin/env python3
"""
Tests for end-space terms: derivatives, ranks, planar normalization,
canonical forms and comparison
"""

import logging

import pytest
from hypothesis import given, settings

from endspace import (
    EMPTY, PERFECT, Cantor, Conv, Label, PlanarKind, Pt, RewriteStep, Scat, Sum, Verdict, canonicalize,
    derivative, designated_rank, equivalent, fingerprint, planar_kind, planar_trace, rank,
    remove_countable_planar, restrict_at_least, validate_expr,
)
from errors import ExpressionError
from ordinal import OMEGA, Ordinal
from term_helpers import PERF, degree, enumerate_terms, height, point_ranks, scat, shifted, terms

P, NP, NO = Label.P, Label.NP, Label.NO


def o(n: int) -> Ordinal:
    return Ordinal.from_int(n)


@pytest.fixture(scope="module")
def every_small_term():
    return enumerate_terms()


# -- validation -------------------------------------------------------------

def test_validate_examples():
    violation = validate_expr(Conv(Pt(NP), Pt(P)))
    assert violation is not None and violation.path == "root"
    assert validate_expr(Conv(Cantor(P), Pt(NO))) is None
    violation = validate_expr(Sum(Pt(P), EMPTY))
    assert violation.path == "root.parts[1]"


def test_validation_errors_carry_the_path():
    with pytest.raises(ExpressionError) as info:
        rank(Sum(Pt(P), Conv(Pt(NO), Pt(NP))))
    assert info.value.path == "root.parts[1]"
    assert validate_expr(Sum(Pt(P))) is not None
    assert validate_expr(Scat(o(1), 0, P)) is not None


# -- derivative and rank ----------------------------------------------------

def test_derivative_examples():
    assert derivative(Pt(P)) == EMPTY
    assert derivative(Conv(Pt(P), Pt(NP))) == Pt(NP)
    assert derivative(scat(2, 1, P)) == scat(1, 1, P)
    assert derivative(scat(1, 3, P)) == scat(0, 2, P)
    assert derivative(scat(1, 1, P)) == Pt(P)
    assert derivative(Scat(OMEGA, 2, NP)) == Scat(OMEGA, 2, NP)


def test_rank_examples():
    result = rank(Cantor(P))
    assert result.rank == 0 and result.kernel == Cantor(P)
    result = rank(Conv(Pt(P), Pt(P)))
    assert result.rank == 2 and result.kernel == EMPTY
    result = rank(Scat(OMEGA, 1, NP))
    assert result.rank == OMEGA + 1 and result.kernel == EMPTY


def test_designated_rank_examples():
    assert designated_rank(Pt(NP)) == 0
    assert designated_rank(scat(3, 1, NP)) == 3
    assert designated_rank(Conv(Cantor(P), Pt(NP))) is PERFECT
    with pytest.raises(ExpressionError):
        designated_rank(EMPTY)


def check_derivatives(e):
    current = e
    counts, _ = point_ranks(e)
    for _ in range(5):
        current = derivative(current)
        counts = shifted(counts)
        assert point_ranks(current)[0] == counts, e


def check_rank(e):
    counts, top = point_ranks(e)
    result = rank(e)
    assert result.rank == o(height(counts)), e
    assert result.kernel.is_empty() == (PERF not in counts), e
    expected = PERFECT if top == PERF else o(top)
    assert designated_rank(e) == expected, e


def check_stabilization(e):
    r = rank(e).rank.finite_value()
    current = e
    for _ in range(r):
        following = derivative(current)
        assert point_ranks(following)[0] != point_ranks(current)[0], e
        current = following
    assert point_ranks(derivative(current))[0] == point_ranks(current)[0], e


def check_label_ranks(e):
    fp = fingerprint(e)
    for label, (rank_of, kernel_of, degree_of) in (
        (P, (fp.rank_e, fp.kernel_e, fp.degree_e)),
        (NP, (fp.rank_np, fp.kernel_np, fp.degree_np)),
        (NO, (fp.rank_no, fp.kernel_no, fp.degree_no)),
    ):
        counts, _ = point_ranks(e, label)
        result = rank(restrict_at_least(e, label))
        assert result.rank == rank_of == o(height(counts)), (e, label)
        assert (not result.kernel.is_empty()) == kernel_of == (PERF in counts), (e, label)
        assert degree_of == degree(counts), (e, label)


@pytest.mark.property_based
@given(terms())
@settings(max_examples=300)
def test_derivative_matches_point_ranks(e):
    check_derivatives(e)


@pytest.mark.property_based
@given(terms())
@settings(max_examples=300)
def test_rank_matches_point_ranks(e):
    check_rank(e)


@pytest.mark.property_based
@given(terms())
@settings(max_examples=200)
def test_rank_is_where_derivatives_stabilize(e):
    check_stabilization(e)


@pytest.mark.property_based
@given(terms())
@settings(max_examples=300)
def test_labelled_ranks_match_point_ranks(e):
    check_label_ranks(e)


def test_labelled_point_ranks_examples():
    e = Conv(Cantor(P), scat(2, 1, NP))
    assert point_ranks(e, NP) == ({0: float("inf"), 1: float("inf"), 2: 1}, 2)
    check_label_ranks(e)
    # the designated point is planar, so no non-planar point is a limit of the copies
    e = Conv(Pt(P), Sum(Pt(P), Pt(NO)))
    assert point_ranks(e, NP) == ({0: 1}, None)
    check_label_ranks(e)
    assert fingerprint(Sum(scat(1, 2, NP), Pt(NO))).degree_np == 2


@pytest.mark.slow
def test_every_small_term_matches_point_ranks(every_small_term):
    for e in every_small_term:
        check_derivatives(e)
        check_rank(e)
        check_stabilization(e)
        check_label_ranks(e)


# -- restriction and planar part -------------------------------------------

def test_restrict_examples():
    assert restrict_at_least(Conv(Cantor(P), Pt(NP)), NP) == Pt(NP)
    assert restrict_at_least(Sum(Pt(P), Pt(NP)), NP) == Pt(NP)
    assert restrict_at_least(Cantor(NO), NP) == Cantor(NO)


@pytest.mark.property_based
@given(terms())
@settings(max_examples=200)
def test_restriction_is_identity_at_p_and_nested(e):
    assert restrict_at_least(e, P) == e
    non_planar = restrict_at_least(e, NP)
    expected = restrict_at_least(e, NO)
    assert (EMPTY if non_planar.is_empty() else restrict_at_least(non_planar, NO)) == expected


def test_remove_countable_planar_examples():
    assert remove_countable_planar(Pt(P)) == EMPTY
    assert remove_countable_planar(Conv(Pt(P), Pt(NP))) == Pt(NP)
    assert remove_countable_planar(Conv(Cantor(P), Pt(NP))) == Conv(Cantor(P), Pt(NP))
    # an apex that is a limit of planar Cantor sets stays
    assert remove_countable_planar(Conv(Cantor(P), Pt(P))) == Conv(Cantor(P), Pt(P))


def test_planar_kind_examples():
    assert planar_kind(EMPTY) is PlanarKind.NONE
    assert planar_kind(Sum(Cantor(P), scat(2, 1, NP))) is PlanarKind.CANTOR_COMPACT
    assert planar_kind(Conv(Cantor(P), Pt(NP))) is PlanarKind.CANTOR_MINUS_POINT


def test_planar_kind_requires_normalized_terms():
    with pytest.raises(ExpressionError):
        planar_kind(Sum(Pt(P), Cantor(P)))


def test_planar_trace_examples():
    assert planar_trace(Conv(Cantor(P), scat(3, 1, NP))) == {o(3)}
    assert planar_trace(Sum(Cantor(P), Pt(NP))) == frozenset()
    both = Sum(Conv(Cantor(P), scat(1, 1, NP)), Conv(Cantor(P), scat(2, 1, NP)))
    assert planar_trace(both) == {o(1), o(2)}


# -- fingerprints -----------------------------------------------------------

def test_fingerprint_of_empty():
    fp = fingerprint(EMPTY)
    assert fp.rank_e == 0 and not fp.kernel_e
    assert fp.rank_np == 0 and fp.rank_no == 0
    assert fp.planar_kind is PlanarKind.NONE
    assert fp.planar_trace == frozenset()


def test_fingerprint_examples():
    fp = fingerprint(Conv(Cantor(P), scat(2, 1, NP)))
    assert fp.rank_np == 3
    assert fp.planar_kind is PlanarKind.CANTOR_MINUS_POINT
    assert fp.planar_trace == {o(2)}
    assert fp.kernel_e
    fp = fingerprint(Sum(Cantor(NO), Pt(NP)))
    assert fp.rank_no == 0 and fp.kernel_no


def test_fingerprint_dict_uses_text_ordinals():
    data = fingerprint(Scat(OMEGA, 1, NP)).to_dict()
    assert data["rankE"] == "w + 1"
    assert data["kernelE"] == "Empty"
    assert data["degreeE"] == 1
    assert data["planarKind"] == "None"


def test_degrees_separate_finite_sets():
    assert fingerprint(scat(0, 1, NP)).degree_np == 2
    assert equivalent(scat(0, 1, NP), scat(0, 2, NP)) is Verdict.DISTINCT


# -- canonical forms --------------------------------------------------------

@pytest.mark.parametrize("before, after", [
    (Sum(Cantor(P), Cantor(P)), Cantor(P)),
    (Conv(scat(1, 1, NP), Pt(NP)), scat(2, 1, NP)),
    (Sum(scat(2, 1, P), scat(1, 5, P)), scat(2, 1, P)),
    (Conv(Pt(P), Pt(P)), scat(1, 1, P)),
    (Conv(Cantor(NP), Pt(NP)), Cantor(NP)),
    (Sum(scat(0, 1, P), scat(0, 2, P)), scat(0, 4, P)),
    (Sum(scat(3, 1, NP), scat(3, 2, NP)), scat(3, 3, NP)),
])
def test_canonicalize_examples(before, after):
    assert canonicalize(before) == after


def test_canonicalize_records_rewrites():
    trace = []
    canonicalize(Conv(Pt(P), Pt(P)), trace=trace)
    assert [step.rule for step in trace] == ["scattered-limit"]
    assert trace[0] == RewriteStep("scattered-limit", Conv(Pt(P), Pt(P)), scat(1, 1, P))


def test_canonicalize_warns_when_pass_cap_is_hit(caplog):
    with caplog.at_level(logging.WARNING, logger="perforate.endspace"):
        canonicalize(Sum(Cantor(P), Sum(Cantor(P), Cantor(P))), max_passes=1)
    assert "stopped after 1 passes" in caplog.text


# rules a term without empty pieces can fire within five nodes
RULES_SEEN_IN_SMALL_TERMS = {
    "flatten", "sort", "cantor-merge", "scattered-merge", "body-units",
    "apex-merge", "apex-split", "cantor-limit", "scattered-limit",
}


def check_rewrites(e):
    trace = []
    canonical = canonicalize(e, trace=trace)
    for step in trace:
        assert fingerprint(step.before) == fingerprint(step.after), (e, step.rule)
    assert canonicalize(canonical) == canonical, e
    assert fingerprint(canonical) == fingerprint(e), e
    return {step.rule for step in trace}


@pytest.mark.property_based
@given(terms())
@settings(max_examples=300)
def test_rewrites_keep_the_fingerprint_and_canonicalize_is_idempotent(e):
    check_rewrites(e)


@pytest.mark.slow
def test_every_small_term_canonicalizes_soundly(every_small_term):
    rules = set()
    for e in every_small_term:
        rules |= check_rewrites(e)
    assert rules >= RULES_SEEN_IN_SMALL_TERMS


# -- comparison -------------------------------------------------------------

def test_equivalent_examples():
    assert equivalent(Sum(Cantor(P), Cantor(P)), Cantor(P)) is Verdict.EQUAL
    first = Conv(Cantor(P), scat(1, 1, NP))
    second = Conv(Cantor(P), scat(2, 1, NP))
    assert equivalent(first, second) is Verdict.DISTINCT


def test_raw_comparison_keeps_countable_planar_parts():
    assert equivalent(Pt(P), EMPTY) is Verdict.EQUAL
    assert equivalent(Pt(P), EMPTY, perforated=False) is Verdict.DISTINCT


@pytest.mark.property_based
@given(terms(), terms())
@settings(max_examples=200)
def test_equivalent_is_reflexive_and_symmetric(a, b):
    assert equivalent(a, a) is Verdict.EQUAL
    assert equivalent(a, b) is equivalent(b, a)
    assert equivalent(a, canonicalize(a), perforated=False) is Verdict.EQUAL
