#!/usr/bin/env python3
"""
End-space terms for perforated surfaces

A SpaceExpr denotes a closed subset of the Cantor set whose points carry a
label P (planar), NP (non-planar) or NO (non-orientable). The labelled set is
the nested triple of ends of a surface. This module computes Cantor-Bendixson
derivatives and ranks of such terms, strips the countable open planar part,
canonicalizes terms by sound rewriting, and compares them.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Any, Dict, FrozenSet, List, Optional, Tuple, Union

from errors import ExpressionError
from ordinal import ONE, ZERO, Ordinal

log = logging.getLogger('perforate.endspace')

DEFAULT_MAX_PASSES = 200


class Label(IntEnum):
    """Kind of an end, ordered P < NP < NO"""
    P = 0
    NP = 1
    NO = 2

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Label":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ExpressionError(f"unknown label {text!r}")


# -- terms ------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceExpr:
    """Base class of end-space terms"""

    def is_empty(self) -> bool:
        return False


@dataclass(frozen=True)
class Empty(SpaceExpr):
    def is_empty(self) -> bool:
        return True

    def __str__(self) -> str:
        return "empty"


@dataclass(frozen=True)
class Pt(SpaceExpr):
    label: Label

    def __str__(self) -> str:
        return f"pt({self.label})"


@dataclass(frozen=True)
class Cantor(SpaceExpr):
    label: Label

    def __str__(self) -> str:
        return f"cantor({self.label})"


@dataclass(frozen=True)
class Scat(SpaceExpr):
    """The ordinal space omega^alpha * n + 1, every point labelled alike"""
    alpha: Ordinal
    n: int
    label: Label

    def __str__(self) -> str:
        return f"scat({self.alpha}, {self.n}, {self.label})"


@dataclass(frozen=True, init=False)
class Sum(SpaceExpr):
    """Finite disjoint union of clopen pieces"""
    parts: Tuple[SpaceExpr, ...]

    def __init__(self, *parts: SpaceExpr) -> None:
        object.__setattr__(self, "parts", tuple(parts))

    def __str__(self) -> str:
        return "sum(" + ", ".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Conv(SpaceExpr):
    """Apex plus a sequence of clopen copies of body converging to the apex's designated point"""
    body: SpaceExpr
    apex: SpaceExpr

    def __str__(self) -> str:
        return f"conv({self.body}, {self.apex})"


EMPTY = Empty()

ATOMS = (Pt, Cantor, Scat)


class _PerfectType:
    """Rank of a point that survives every derivative"""

    def __repr__(self) -> str:
        return "Perfect"

    def __str__(self) -> str:
        return "perfect"


PERFECT = _PerfectType()

PointRank = Union[Ordinal, _PerfectType]


class PlanarKind(Enum):
    NONE = "None"
    CANTOR_COMPACT = "CantorCompact"
    CANTOR_MINUS_POINT = "CantorMinusPoint"


class Verdict(Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Violation:
    """First invariant violation found in a term"""
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.message} (at {self.path})"


@dataclass(frozen=True)
class RankResult:
    rank: Ordinal
    kernel: SpaceExpr


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    before: SpaceExpr
    after: SpaceExpr


# -- structural helpers -----------------------------------------------------

def designated_label(e: SpaceExpr) -> Label:
    """Label of the designated point"""
    while True:
        if isinstance(e, ATOMS):
            return e.label
        if isinstance(e, Sum):
            e = e.parts[0]
        elif isinstance(e, Conv):
            e = e.apex
        else:
            raise ExpressionError("empty term has no designated point")


def labels_in(e: SpaceExpr) -> FrozenSet[Label]:
    if isinstance(e, ATOMS):
        return frozenset((e.label,))
    if isinstance(e, Sum):
        return frozenset().union(*(labels_in(p) for p in e.parts))
    if isinstance(e, Conv):
        return labels_in(e.body) | labels_in(e.apex)
    return frozenset()


def has_cantor(e: SpaceExpr) -> bool:
    """True when the term has a non-empty perfect kernel"""
    if isinstance(e, Cantor):
        return True
    if isinstance(e, Sum):
        return any(has_cantor(p) for p in e.parts)
    if isinstance(e, Conv):
        return has_cantor(e.body) or has_cantor(e.apex)
    return False


def expr_size(e: SpaceExpr) -> int:
    """Number of nodes in the term"""
    if isinstance(e, Sum):
        return 1 + sum(expr_size(p) for p in e.parts)
    if isinstance(e, Conv):
        return 1 + expr_size(e.body) + expr_size(e.apex)
    return 1


def _collapse(parts: List[SpaceExpr]) -> SpaceExpr:
    parts = [p for p in parts if not p.is_empty()]
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Sum(*parts)


def _conv_or_apex(body: SpaceExpr, apex: SpaceExpr) -> SpaceExpr:
    return apex if body.is_empty() else Conv(body, apex)


# -- validation -------------------------------------------------------------

def validate_expr(e: SpaceExpr, path: str = "root") -> Optional[Violation]:
    """Return the first structural or label-closure violation, or None"""
    if isinstance(e, Empty):
        return None
    if isinstance(e, (Pt, Cantor)):
        if not isinstance(e.label, Label):
            return Violation(path, f"bad label {e.label!r}")
        return None
    if isinstance(e, Scat):
        if not isinstance(e.label, Label):
            return Violation(path, f"bad label {e.label!r}")
        if not isinstance(e.alpha, Ordinal):
            return Violation(path, f"scat exponent {e.alpha!r} is not an ordinal")
        if not isinstance(e.n, int) or isinstance(e.n, bool) or e.n < 1:
            return Violation(path, f"scat coefficient must be >= 1, got {e.n!r}")
        return None
    if isinstance(e, Sum):
        if len(e.parts) < 2:
            return Violation(path, "sum needs at least two summands")
        for index, part in enumerate(e.parts):
            child = f"{path}.parts[{index}]"
            if not isinstance(part, SpaceExpr):
                return Violation(child, f"not a term: {part!r}")
            if part.is_empty():
                return Violation(child, "empty summand")
            found = validate_expr(part, child)
            if found:
                return found
        return None
    if isinstance(e, Conv):
        for name, child in (("body", e.body), ("apex", e.apex)):
            if not isinstance(child, SpaceExpr):
                return Violation(f"{path}.{name}", f"not a term: {child!r}")
            if child.is_empty():
                return Violation(f"{path}.{name}", f"empty {name}")
            found = validate_expr(child, f"{path}.{name}")
            if found:
                return found
        apex_label = designated_label(e.apex)
        body_max = max(labels_in(e.body))
        if apex_label < body_max:
            return Violation(path, f"apex label {apex_label} is below body label {body_max}")
        return None
    return Violation(path, f"not a term: {e!r}")


def ensure_valid(e: SpaceExpr) -> SpaceExpr:
    """Raise ExpressionError unless the term is valid"""
    violation = validate_expr(e)
    if violation:
        raise ExpressionError(violation.message, violation.path)
    return e


# -- derivative -------------------------------------------------------------

def _scat_derivative(e: Scat) -> SpaceExpr:
    if e.alpha.is_zero():
        return EMPTY
    if not e.alpha.is_finite():
        # homeomorphic to its own derivative
        return e
    if e.alpha == ONE:
        return Pt(e.label) if e.n == 1 else Scat(ZERO, e.n - 1, e.label)
    return Scat(e.alpha.predecessor(), e.n, e.label)


def _derivative(e: SpaceExpr) -> SpaceExpr:
    if isinstance(e, (Empty, Pt)):
        return EMPTY
    if isinstance(e, Cantor):
        return e
    if isinstance(e, Scat):
        return _scat_derivative(e)
    if isinstance(e, Sum):
        return _collapse([_derivative(p) for p in e.parts])
    return _conv_or_apex(_derivative(e.body), _derivative_keep(e.apex))


def _derivative_keep(e: SpaceExpr) -> SpaceExpr:
    """Derivative that always retains the designated point"""
    if isinstance(e, (Pt, Cantor)):
        return e
    if isinstance(e, Scat):
        return Pt(e.label) if e.alpha.is_zero() else _scat_derivative(e)
    if isinstance(e, Sum):
        head = _derivative_keep(e.parts[0])
        return _collapse([head] + [_derivative(p) for p in e.parts[1:]])
    return _derivative(e)


def derivative(e: SpaceExpr) -> SpaceExpr:
    """Cantor-Bendixson derivative: the set of limit points"""
    return _derivative(ensure_valid(e))


# -- ranks ------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _heights(e: SpaceExpr) -> Tuple[Ordinal, PointRank]:
    """(sup of rank+1 over scattered points other than the designated one, rank of the designated point)"""
    if isinstance(e, Pt):
        return ZERO, ZERO
    if isinstance(e, Cantor):
        return ZERO, PERFECT
    if isinstance(e, Scat):
        if e.n >= 2:
            return e.alpha.succ(), e.alpha
        return (ONE if e.alpha.is_zero() else e.alpha), e.alpha
    if isinstance(e, Sum):
        other, top = _heights(e.parts[0])
        return max([other] + [_height(p) for p in e.parts[1:]]), top
    if isinstance(e, Conv):
        body_height = _height(e.body)
        other, top = _heights(e.apex)
        other = max(other, body_height)
        if top is PERFECT or has_cantor(e.body):
            return other, PERFECT
        return other, max(top, body_height)
    raise ExpressionError("empty term has no designated point")


def _height(e: SpaceExpr) -> Ordinal:
    if e.is_empty():
        return ZERO
    other, top = _heights(e)
    if top is PERFECT:
        return other
    return max(other, top.succ())


def _kernel(e: SpaceExpr) -> SpaceExpr:
    if isinstance(e, Cantor):
        return e
    if isinstance(e, Sum):
        return _collapse([_kernel(p) for p in e.parts])
    if isinstance(e, Conv):
        body = _kernel(e.body)
        return _kernel(e.apex) if body.is_empty() else Conv(body, _kernel_keep(e.apex))
    return EMPTY


def _kernel_keep(e: SpaceExpr) -> SpaceExpr:
    """Perfect kernel together with the designated point"""
    if isinstance(e, (Pt, Cantor)):
        return e
    if isinstance(e, Scat):
        return Pt(e.label)
    if isinstance(e, Sum):
        return _collapse([_kernel_keep(e.parts[0])] + [_kernel(p) for p in e.parts[1:]])
    body = _kernel(e.body)
    return _kernel_keep(e.apex) if body.is_empty() else Conv(body, _kernel_keep(e.apex))


def rank(e: SpaceExpr) -> RankResult:
    """Least lambda with X^(lambda) = X^(lambda+1), and the perfect kernel left there"""
    ensure_valid(e)
    return RankResult(_height(e), _kernel(e))


def designated_rank(e: SpaceExpr) -> PointRank:
    """How many derivatives the designated point survives, or PERFECT"""
    ensure_valid(e)
    if e.is_empty():
        raise ExpressionError("empty term has no designated point")
    return _heights(e)[1]


def _count_at(e: SpaceExpr, level: Ordinal) -> int:
    """Number of points of rank exactly level, for level at or above every point rank"""
    if isinstance(e, Pt):
        return 1 if level == ZERO else 0
    if isinstance(e, Scat):
        if e.alpha != level:
            return 0
        return e.n + 1 if e.alpha.is_zero() else e.n
    if isinstance(e, Sum):
        return sum(_count_at(p, level) for p in e.parts)
    if isinstance(e, Conv):
        count = _count_at(e.apex, level)
        count -= _heights(e.apex)[1] == level
        count += _heights(e)[1] == level
        return count
    return 0


def _degree(e: SpaceExpr) -> Optional[int]:
    """Number of top-rank points of a scattered space"""
    if e.is_empty():
        return 0
    if has_cantor(e):
        return None
    height = _height(e)
    if not height.is_successor():
        return None
    return _count_at(e, height.predecessor())


# -- restriction and planar normalization ----------------------------------

def _restrict(e: SpaceExpr, label: Label) -> SpaceExpr:
    if isinstance(e, ATOMS):
        return e if e.label >= label else EMPTY
    if isinstance(e, Sum):
        return _collapse([_restrict(p, label) for p in e.parts])
    if isinstance(e, Conv):
        apex = _restrict(e.apex, label)
        if apex.is_empty():
            return EMPTY
        return _conv_or_apex(_restrict(e.body, label), apex)
    return EMPTY


def restrict_at_least(e: SpaceExpr, label: Label) -> SpaceExpr:
    """Subspace of points labelled label or higher"""
    return _restrict(ensure_valid(e), label)


def _rcp(e: SpaceExpr) -> SpaceExpr:
    if isinstance(e, (Pt, Scat)):
        return EMPTY if e.label == Label.P else e
    if isinstance(e, Cantor):
        return e
    if isinstance(e, Sum):
        return _collapse([_rcp(p) for p in e.parts])
    if isinstance(e, Conv):
        body = _rcp(e.body)
        return _rcp(e.apex) if body.is_empty() else Conv(body, _rcp_keep(e.apex))
    return EMPTY


def _rcp_keep(e: SpaceExpr) -> SpaceExpr:
    """Planar normalization retaining the designated point, which is a limit of surviving copies"""
    if isinstance(e, (Pt, Cantor)):
        return e
    if isinstance(e, Scat):
        return Pt(e.label) if e.label == Label.P else e
    if isinstance(e, Sum):
        return _collapse([_rcp_keep(e.parts[0])] + [_rcp(p) for p in e.parts[1:]])
    body = _rcp(e.body)
    return _rcp_keep(e.apex) if body.is_empty() else Conv(body, _rcp_keep(e.apex))


def remove_countable_planar(e: SpaceExpr) -> SpaceExpr:
    """Delete the largest countable open subset of the planar ends

    The planar ends that survive are exactly the planar points of the
    perfect kernel.
    """
    return _rcp(ensure_valid(e))


def _ensure_planar_normalized(e: SpaceExpr) -> None:
    if _rcp(e) != e:
        raise ExpressionError("term still has a countable open planar part; apply remove_countable_planar first")


def _planar_kind(e: SpaceExpr) -> PlanarKind:
    if Label.P not in labels_in(e):
        return PlanarKind.NONE
    return PlanarKind.CANTOR_MINUS_POINT if _planar_accumulates(e) else PlanarKind.CANTOR_COMPACT


def _planar_accumulates(e: SpaceExpr) -> bool:
    if isinstance(e, Sum):
        return any(_planar_accumulates(p) for p in e.parts)
    if isinstance(e, Conv):
        if Label.P in labels_in(e.body) and designated_label(e.apex) > Label.P:
            return True
        return _planar_accumulates(e.body) or _planar_accumulates(e.apex)
    return False


def planar_kind(e: SpaceExpr) -> PlanarKind:
    """Whether the (perfect) planar ends are empty, a Cantor set, or a Cantor set minus a point"""
    ensure_valid(e)
    _ensure_planar_normalized(e)
    return _planar_kind(e)


def _planar_trace(e: SpaceExpr) -> FrozenSet[PointRank]:
    found = set()

    def walk(node: SpaceExpr, top: SpaceExpr) -> None:
        # top is the largest subterm sharing node's designated point; it is clopen around that point
        if isinstance(node, Sum):
            walk(node.parts[0], top)
            for part in node.parts[1:]:
                walk(part, part)
        elif isinstance(node, Conv):
            if Label.P in labels_in(node.body) and designated_label(node.apex) >= Label.NP:
                found.add(_heights(_restrict(top, Label.NP))[1])
            walk(node.body, node.body)
            walk(node.apex, top)

    walk(e, e)
    return frozenset(found)


def planar_trace(e: SpaceExpr) -> FrozenSet[PointRank]:
    """Non-planar ranks of the non-planar ends lying in the closure of the planar ends"""
    ensure_valid(e)
    _ensure_planar_normalized(e)
    return _planar_trace(e)


# -- fingerprint ------------------------------------------------------------

def _rank_sort_key(value: PointRank) -> Tuple[int, Any]:
    return (1, None) if value is PERFECT else (0, value)


@dataclass(frozen=True)
class Fingerprint:
    """Homeomorphism invariants of a labelled end space"""
    rank_e: Ordinal
    kernel_e: bool
    rank_np: Ordinal
    kernel_np: bool
    rank_no: Ordinal
    kernel_no: bool
    planar_kind: PlanarKind
    planar_trace: FrozenSet[PointRank] = field(default_factory=frozenset)
    degree_e: Optional[int] = None
    degree_np: Optional[int] = None
    degree_no: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form with ordinals in CNF text"""
        def kernel(flag: bool) -> str:
            return "NonEmpty" if flag else "Empty"
        return {
            "rankE": str(self.rank_e),
            "kernelE": kernel(self.kernel_e),
            "degreeE": self.degree_e,
            "rankNP": str(self.rank_np),
            "kernelNP": kernel(self.kernel_np),
            "degreeNP": self.degree_np,
            "rankNO": str(self.rank_no),
            "kernelNO": kernel(self.kernel_no),
            "degreeNO": self.degree_no,
            "planarKind": self.planar_kind.value,
            "planarTrace": [str(v) for v in sorted(self.planar_trace, key=_rank_sort_key)],
        }


def _fingerprint(e: SpaceExpr) -> Fingerprint:
    parts = {}
    for name, label in (("e", Label.P), ("np", Label.NP), ("no", Label.NO)):
        sub = _restrict(e, label)
        parts[f"rank_{name}"] = _height(sub)
        parts[f"kernel_{name}"] = has_cantor(sub)
        parts[f"degree_{name}"] = _degree(sub)
    normalized = _rcp(e)
    return Fingerprint(planar_kind=_planar_kind(normalized), planar_trace=_planar_trace(normalized), **parts)


def fingerprint(e: SpaceExpr) -> Fingerprint:
    return _fingerprint(ensure_valid(e))


# -- canonicalization -------------------------------------------------------

def _sort_key(e: SpaceExpr) -> Tuple:
    if isinstance(e, Pt):
        return (1, e.label)
    if isinstance(e, Scat):
        return (2, e.label, e.alpha, e.n)
    if isinstance(e, Cantor):
        return (3, e.label)
    if isinstance(e, Sum):
        return (4, tuple(_sort_key(p) for p in e.parts))
    if isinstance(e, Conv):
        return (5, _sort_key(e.body), _sort_key(e.apex))
    return (0,)


def _scattered_shape(e: SpaceExpr) -> Tuple[Ordinal, int]:
    """(exponent, number of top-rank points) of a Pt or Scat atom"""
    if isinstance(e, Pt):
        return ZERO, 1
    return e.alpha, (e.n + 1 if e.alpha.is_zero() else e.n)


def _scattered_atom(alpha: Ordinal, count: int, label: Label) -> SpaceExpr:
    """Atom with count top points of rank alpha"""
    if alpha.is_zero():
        return Pt(label) if count == 1 else Scat(ZERO, count - 1, label)
    return Scat(alpha, count, label)


def _is_scattered_atom(e: SpaceExpr) -> bool:
    return isinstance(e, (Pt, Scat))


class _Canonicalizer:
    """One bottom-up rewrite pass; pinned positions must keep their designated point"""

    def __init__(self, trace: Optional[List[RewriteStep]]) -> None:
        self.trace = trace

    def record(self, rule: str, before: SpaceExpr, after: SpaceExpr) -> SpaceExpr:
        if before != after:
            log.debug("rewrite %s: %s -> %s", rule, before, after)
            if self.trace is not None:
                self.trace.append(RewriteStep(rule, before, after))
        return after

    def visit(self, e: SpaceExpr, pinned: bool) -> SpaceExpr:
        if isinstance(e, Sum):
            parts = [self.visit(p, pinned and i == 0) for i, p in enumerate(e.parts)]
            return self.rewrite_sum(parts, pinned)
        if isinstance(e, Conv):
            apex = self.visit(e.apex, True)
            body = self.visit(e.body, False)
            units = self.body_units(body)
            self.record("body-units", Conv(body, apex), Conv(units, apex))
            return self.rewrite_conv(units, apex)
        return e

    def rewrite_sum(self, parts: List[SpaceExpr], pinned: bool) -> SpaceExpr:
        node = Sum(*parts)
        flat: List[SpaceExpr] = []
        for part in parts:
            flat.extend(part.parts if isinstance(part, Sum) else [part])
        node = self.record("flatten", node, Sum(*flat))
        kept = [p for p in flat if not p.is_empty()]
        node = self.record("drop-empty", node, _collapse(kept))
        if not isinstance(node, Sum):
            return node

        head, movable = (kept[0], kept[1:]) if pinned else (None, kept)
        for label in sorted(set(p.label for p in kept if isinstance(p, ATOMS))):
            before = _collapse(([head] if head else []) + movable)
            head, movable = self.merge_cantors(head, movable, label)
            node = self.record("cantor-merge", before, _collapse(([head] if head else []) + movable))
            before = node
            head, movable = self.merge_scattered(head, movable, label)
            node = self.record("scattered-merge", before, _collapse(([head] if head else []) + movable))

        ordered = sorted(movable, key=_sort_key)
        return self.record("sort", node, _collapse(([head] if head else []) + ordered))

    @staticmethod
    def merge_cantors(head, movable, label):
        cantor = Cantor(label)
        if head == cantor:
            return head, [p for p in movable if p != cantor]
        if movable.count(cantor) > 1:
            first = movable.index(cantor)
            return head, [p for i, p in enumerate(movable) if p != cantor or i == first]
        return head, movable

    @staticmethod
    def merge_scattered(head, movable, label):
        group = [p for p in movable if _is_scattered_atom(p) and p.label == label]
        rest = [p for p in movable if not (_is_scattered_atom(p) and p.label == label)]
        if not group:
            return head, movable
        shapes = [_scattered_shape(p) for p in group]
        top = max(alpha for alpha, _ in shapes)
        top_count = sum(count for alpha, count in shapes if alpha == top)
        if head is not None and _is_scattered_atom(head) and head.label == label:
            head_alpha, head_count = _scattered_shape(head)
            if top <= head_alpha:
                extra = top_count if top == head_alpha else 0
                return _scattered_atom(head_alpha, head_count + extra, label), rest
            # the designated point keeps its lower rank; one such point suffices
            head = _scattered_atom(head_alpha, 1, label)
        return head, rest + [_scattered_atom(top, top_count, label)]

    def body_units(self, body: SpaceExpr) -> SpaceExpr:
        """Copies of a body only matter up to the set of their clopen unit pieces"""
        parts = body.parts if isinstance(body, Sum) else (body,)
        units = []
        for part in parts:
            if _is_scattered_atom(part):
                alpha, _ = _scattered_shape(part)
                part = _scattered_atom(alpha, 1, part.label)
            if part not in units:
                units.append(part)
        return _collapse(sorted(units, key=_sort_key))

    def rewrite_conv(self, body: SpaceExpr, apex: SpaceExpr) -> SpaceExpr:
        node = Conv(body, apex)
        if isinstance(apex, Conv):
            return self.record("apex-merge", node, Conv(Sum(body, apex.body), apex.apex))
        if isinstance(apex, Sum):
            return self.record("apex-split", node, Sum(Conv(body, apex.parts[0]), *apex.parts[1:]))
        if isinstance(body, Cantor) and isinstance(apex, (Pt, Cantor)) and apex.label == body.label:
            return self.record("cantor-limit", node, Cantor(body.label))
        if _is_scattered_atom(body) and _is_scattered_atom(apex) and body.label == apex.label:
            body_alpha, _ = _scattered_shape(body)
            apex_alpha, _ = _scattered_shape(apex)
            if apex_alpha > body_alpha:
                return self.record("scattered-limit", node, apex)
            return self.record("scattered-limit", node, _scattered_atom(body_alpha.succ(), 1, body.label))
        return node


def canonicalize(e: SpaceExpr, max_passes: int = DEFAULT_MAX_PASSES,
                 trace: Optional[List[RewriteStep]] = None) -> SpaceExpr:
    """Rewrite to a fixpoint with homeomorphism-preserving rules, sorting sums

    When trace is given, every node-level rewrite is appended to it.
    """
    ensure_valid(e)
    canonicalizer = _Canonicalizer(trace)
    current = e
    for passes in range(max_passes):
        rewritten = canonicalizer.visit(current, False)
        if rewritten == current:
            log.debug("canonical after %d passes: %s", passes, current)
            return current
        current = rewritten
    log.warning("canonicalize stopped after %d passes on %s", max_passes, e)
    return current


def equivalent(e1: SpaceExpr, e2: SpaceExpr, perforated: bool = True,
               max_passes: int = DEFAULT_MAX_PASSES) -> Verdict:
    """Equal, Distinct or Unknown

    With perforated=True the countable open planar parts are removed first,
    which is the comparison of perforated surfaces; otherwise the raw triples
    are compared.
    """
    ensure_valid(e1)
    ensure_valid(e2)
    if perforated:
        e1, e2 = _rcp(e1), _rcp(e2)
    equal = canonicalize(e1, max_passes) == canonicalize(e2, max_passes)
    distinct = _fingerprint(e1) != _fingerprint(e2)
    if equal and distinct:
        raise ExpressionError(f"canonical forms agree but fingerprints differ for {e1} and {e2}")
    if equal:
        return Verdict.EQUAL
    if distinct:
        return Verdict.DISTINCT
    return Verdict.UNKNOWN
