#!/usr/bin/env python3
"""
Reference models for end-space tests

A point-rank model that counts the points of each Cantor-Bendixson rank
directly from a term, a hypothesis strategy for valid terms, and an
enumerator of every valid term up to a size.
"""

import math
import os
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from hypothesis import strategies as st

from endspace import EMPTY, Cantor, Conv, Label, Pt, Scat, SpaceExpr, Sum, designated_label, validate_expr
from ordinal import Ordinal

PERF = "perfect"
INF = math.inf

# largest term size the slow tier enumerates; PERFORATE_TERM_SIZE=7 covers the full family
EXHAUSTIVE_SIZE = int(os.getenv("PERFORATE_TERM_SIZE", "5"))

Rank = Union[int, str]
Counts = Dict[Rank, float]


def scat(alpha: int, n: int, label: Label) -> Scat:
    return Scat(Ordinal.from_int(alpha), n, label)


def point_ranks(e: SpaceExpr, bound: Label = Label.P) -> Tuple[Counts, Optional[Rank]]:
    """Points of each rank in the subspace labelled bound or higher

    Also returns the rank of the designated point in that subspace, or None
    when the designated point is outside it.
    """
    if e == EMPTY:
        return {}, None
    if isinstance(e, (Pt, Cantor, Scat)) and e.label < bound:
        return {}, None
    if isinstance(e, Pt):
        return {0: 1}, 0
    if isinstance(e, Cantor):
        return {PERF: INF}, PERF
    if isinstance(e, Scat):
        a = e.alpha.finite_value()
        if a == 0:
            return {0: e.n + 1}, 0
        counts = {r: INF for r in range(a)}
        counts[a] = e.n
        return counts, a
    if isinstance(e, Sum):
        counts: Counts = {}
        for part in e.parts:
            for r, c in point_ranks(part, bound)[0].items():
                counts[r] = counts.get(r, 0) + c
        return counts, point_ranks(e.parts[0], bound)[1]
    body, _ = point_ranks(e.body, bound)
    counts, top = point_ranks(e.apex, bound)
    if top is None:
        # copies are labelled no higher than the designated point, so none survive either
        return counts, None
    counts = dict(counts)
    for r in body:
        counts[r] = INF
    finite = [r + 1 for r in body if r != PERF]
    if top == PERF or PERF in body:
        new_top = PERF
    else:
        new_top = max([top] + finite)
    counts[top] -= 1
    if counts[top] == 0:
        del counts[top]
    counts[new_top] = counts.get(new_top, 0) + 1
    return counts, new_top


def shifted(counts: Counts) -> Counts:
    """Point counts after removing the isolated points"""
    return {(r if r == PERF else r - 1): c for r, c in counts.items() if r != 0}


def height(counts: Counts) -> int:
    return max([r + 1 for r in counts if r != PERF], default=0)


def degree(counts: Counts) -> Optional[int]:
    """Number of top-rank points of a scattered space"""
    if not counts:
        return 0
    if PERF in counts:
        return None
    return int(counts[height(counts) - 1])


@st.composite
def terms(draw, depth: int = 2, bound: Label = Label.NO):
    """Valid terms over Pt, Cantor and finite Scat atoms"""
    kinds = ["pt", "cantor", "scat"] + (["sum", "conv"] if depth > 0 else [])
    kind = draw(st.sampled_from(kinds))
    labels = st.sampled_from([label for label in Label if label <= bound])
    if kind == "pt":
        return Pt(draw(labels))
    if kind == "cantor":
        return Cantor(draw(labels))
    if kind == "scat":
        return scat(draw(st.integers(0, 3)), draw(st.integers(1, 2)), draw(labels))
    if kind == "sum":
        return Sum(*[draw(terms(depth - 1, bound)) for _ in range(draw(st.integers(2, 3)))])
    apex = draw(terms(depth - 1, bound))
    return Conv(draw(terms(depth - 1, designated_label(apex))), apex)


def small_atoms() -> List[SpaceExpr]:
    """Pt, Cantor and Scat with exponent at most 3 and coefficient at most 2, in every label"""
    found: List[SpaceExpr] = []
    for label in Label:
        found += [Pt(label), Cantor(label)]
        found += [scat(alpha, n, label) for alpha in range(4) for n in (1, 2)]
    return found


@lru_cache(maxsize=None)
def terms_by_size(size: int) -> Tuple[SpaceExpr, ...]:
    """Every valid term with exactly size nodes, built from binary sums and conv"""
    if size == 1:
        return tuple(small_atoms())
    found = []
    for left in range(1, size - 1):
        right = size - 1 - left
        for first in terms_by_size(left):
            for second in terms_by_size(right):
                for candidate in (Sum(first, second), Conv(first, second)):
                    if validate_expr(candidate) is None:
                        found.append(candidate)
    return tuple(found)


def enumerate_terms(max_size: int = EXHAUSTIVE_SIZE) -> List[SpaceExpr]:
    """Every valid term of at most max_size nodes, smallest first"""
    return [e for size in range(1, max_size + 1) for e in terms_by_size(size)]
