#!/usr/bin/env python3
"""
Surface descriptors and perforated surfaces

A surface is classified by its genus, its orientation class and its nested
triple of ends. Perforating a surface (removing a countable dense set) only
leaves the perfect part of the planar ends visible; this module normalizes
descriptors to that class and compares them.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Union

from endspace import (
    DEFAULT_MAX_PASSES, EMPTY, Cantor, Conv, Fingerprint, Label, PlanarKind, Pt, Scat, SpaceExpr, Sum, Verdict,
    canonicalize, fingerprint, planar_kind, remove_countable_planar, restrict_at_least, validate_expr,
)
from errors import DescriptorError
from expression_parser import parse_expr
from ordinal import Ordinal

log = logging.getLogger('perforate.surface')

INFINITE = "inf"

Genus = Union[int, str]


class Orientation(Enum):
    O = "O"
    NOFIN = "NOfin"
    NOE = "NOe"
    NOO = "NOo"
    NOINF = "NOinf"

    @classmethod
    def parse(cls, text: str) -> "Orientation":
        for member in cls:
            if member.value.lower() == str(text).lower():
                return member
        raise DescriptorError(f"unknown orientation class {text!r}", "descriptor-format")


FINITE_GENUS_ORIENTATIONS = (Orientation.O, Orientation.NOFIN)


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Genus, orientation class and end triple of a surface"""
    genus: Genus
    orient: Orientation
    ends: SpaceExpr

    @property
    def genus_is_finite(self) -> bool:
        return self.genus != INFINITE

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SurfaceDescriptor":
        """Build from {"genus": "inf" | int, "orient": ..., "ends": "<expression>"}"""
        missing = [key for key in ("genus", "orient", "ends") if key not in data]
        if missing:
            raise DescriptorError(f"missing fields {', '.join(missing)}", "descriptor-format")
        genus = data["genus"]
        if isinstance(genus, str) and genus.strip().lower() in (INFINITE, "infinite"):
            genus = INFINITE
        elif isinstance(genus, bool) or not isinstance(genus, int) or genus < 0:
            raise DescriptorError(f"genus must be a natural number or 'inf', got {genus!r}", "descriptor-format")
        ends = data["ends"]
        if isinstance(ends, str):
            ends = parse_expr(ends)
        return cls(genus, Orientation.parse(data["orient"]), ends)

    def to_dict(self) -> Dict[str, Any]:
        return {"genus": self.genus, "orient": self.orient.value, "ends": str(self.ends)}


@dataclass(frozen=True)
class DescriptorViolation:
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


@dataclass(frozen=True)
class PerforationClass:
    """Normalized representative of a perforated surface"""
    genus: Genus
    orient: Orientation
    canonical_ends: SpaceExpr
    planar_kind: PlanarKind
    fingerprint: Fingerprint

    def to_dict(self) -> Dict[str, Any]:
        return {
            "genus": self.genus,
            "orient": self.orient.value,
            "canonicalEnds": str(self.canonical_ends),
            "planarKind": self.planar_kind.value,
            "fingerprint": self.fingerprint.to_dict(),
        }


def validate_descriptor(d: SurfaceDescriptor) -> Optional[DescriptorViolation]:
    """Check the admissible combinations of genus, orientation class and ends"""
    violation = validate_expr(d.ends)
    if violation:
        return DescriptorViolation("ends-valid", str(violation))
    non_planar = restrict_at_least(d.ends, Label.NP)
    non_orientable = restrict_at_least(d.ends, Label.NO)

    if d.genus_is_finite:
        if d.orient not in FINITE_GENUS_ORIENTATIONS:
            return DescriptorViolation("finite-genus",
                                       f"finite genus allows orientation O or NOfin, not {d.orient.value}")
        if not non_planar.is_empty():
            return DescriptorViolation("finite-genus", "finite genus requires every end to be planar")
        if d.orient is Orientation.NOFIN and d.genus < 1:
            return DescriptorViolation("finite-genus", "a non-orientable surface has at least one crosscap")
        return None

    if d.ends.is_empty():
        return DescriptorViolation("compact", "a surface without ends is compact and has finite genus")
    if d.orient is Orientation.NOFIN:
        return DescriptorViolation("infinite-genus", "NOfin requires finite genus")
    if d.orient is Orientation.NOINF:
        if non_orientable.is_empty():
            return DescriptorViolation("non-orientable-ends", "NOinf requires non-orientable ends")
        return None
    if not non_orientable.is_empty():
        return DescriptorViolation("non-orientable-ends",
                                   f"non-orientable ends force orientation NOinf, not {d.orient.value}")
    if non_planar.is_empty():
        return DescriptorViolation("infinite-genus", "infinite genus requires a non-planar end")
    return None


def ensure_descriptor(d: SurfaceDescriptor) -> SurfaceDescriptor:
    violation = validate_descriptor(d)
    if violation:
        raise DescriptorError(violation.message, violation.rule)
    return d


def normalize_perforation(d: SurfaceDescriptor, max_passes: int = DEFAULT_MAX_PASSES) -> PerforationClass:
    """Class of the perforated surface: planar part made perfect, compact planar Cantor set detached"""
    ensure_descriptor(d)
    ends = remove_countable_planar(d.ends)
    kind = planar_kind(ends)
    if kind is PlanarKind.CANTOR_COMPACT:
        rest = restrict_at_least(ends, Label.NP)
        ends = Cantor(Label.P) if rest.is_empty() else Sum(Cantor(Label.P), rest)
    canonical = canonicalize(ends, max_passes)
    log.debug("normalized %s to %s (%s)", d.ends, canonical, kind.value)
    return PerforationClass(d.genus, d.orient, canonical, kind, fingerprint(canonical))


def perforation_eq(d1: SurfaceDescriptor, d2: SurfaceDescriptor, max_passes: int = DEFAULT_MAX_PASSES) -> Verdict:
    c1 = normalize_perforation(d1, max_passes)
    c2 = normalize_perforation(d2, max_passes)
    if c1.genus != c2.genus or c1.orient is not c2.orient or c1.fingerprint != c2.fingerprint:
        return Verdict.DISTINCT
    if c1.canonical_ends == c2.canonical_ends:
        return Verdict.EQUAL
    return Verdict.UNKNOWN


def generate_ep_family(m: int, members: Iterable[int]) -> SurfaceDescriptor:
    """Infinite-genus surface with planar Cantor streams attached at non-planar ends of the given ranks"""
    chosen = sorted(set(members))
    if m < 1:
        raise DescriptorError(f"m must be positive, got {m}", "family")
    if not chosen:
        raise DescriptorError("the rank set must be non-empty", "family")
    if chosen[0] < 1 or chosen[-1] > m:
        raise DescriptorError(f"ranks {chosen} are not within 1..{m}", "family")
    streams = [Conv(Cantor(Label.P), Scat(Ordinal.from_int(n), 1, Label.NP)) for n in chosen]
    ends = Sum(Scat(Ordinal.from_int(m), 1, Label.NP), *streams)
    return SurfaceDescriptor(INFINITE, Orientation.O, ends)


def family_subsets(m: int) -> List[List[int]]:
    """All non-empty subsets of 1..m, ordered by size then lexicographically"""
    ranks = range(1, m + 1)
    return [list(c) for size in ranks for c in itertools.combinations(ranks, size)]


def family_report(m: int, max_passes: int = DEFAULT_MAX_PASSES) -> Dict[str, int]:
    """Compare every pair of family members and count the verdicts"""
    subsets = family_subsets(m)
    classes = [normalize_perforation(generate_ep_family(m, j), max_passes) for j in subsets]
    counts = {"descriptors": len(subsets), "pairs": 0, "distinct": 0, "equal": 0, "unknown": 0}
    for (i, c1), (_, c2) in itertools.combinations(enumerate(classes), 2):
        counts["pairs"] += 1
        if c1.fingerprint != c2.fingerprint:
            counts["distinct"] += 1
        elif c1.canonical_ends == c2.canonical_ends:
            counts["equal"] += 1
        else:
            counts["unknown"] += 1
            log.warning("no verdict for family member %s against another", subsets[i])
    log.info("family m=%d: %s", m, counts)
    return counts


def euler_characteristic(d: SurfaceDescriptor) -> int:
    """Euler characteristic of a closed surface"""
    ensure_descriptor(d)
    if not d.ends.is_empty():
        raise DescriptorError("Euler characteristic is only defined here for compact surfaces", "compact")
    if d.orient is Orientation.O:
        return 2 - 2 * d.genus
    return 2 - d.genus


PRESETS: Dict[str, SurfaceDescriptor] = {
    "sphere": SurfaceDescriptor(0, Orientation.O, EMPTY),
    "plane": SurfaceDescriptor(0, Orientation.O, Pt(Label.P)),
    "annulus": SurfaceDescriptor(0, Orientation.O, Sum(Pt(Label.P), Pt(Label.P))),
    "loch_ness_monster": SurfaceDescriptor(INFINITE, Orientation.O, Pt(Label.NP)),
    "jacobs_ladder": SurfaceDescriptor(INFINITE, Orientation.O, Sum(Pt(Label.NP), Pt(Label.NP))),
    "cantor_tree": SurfaceDescriptor(0, Orientation.O, Cantor(Label.P)),
    "blooming_cantor_tree": SurfaceDescriptor(INFINITE, Orientation.O, Cantor(Label.NP)),
    "flute": SurfaceDescriptor(0, Orientation.O, Scat(Ordinal.from_int(1), 1, Label.P)),
    "spotted_loch_ness_monster": SurfaceDescriptor(INFINITE, Orientation.O, Conv(Pt(Label.P), Pt(Label.NP))),
}


def preset(name: str) -> SurfaceDescriptor:
    try:
        return PRESETS[name.replace("-", "_")]
    except KeyError:
        raise DescriptorError(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}", "preset")
