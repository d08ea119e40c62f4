#!/usr/bin/env python3
"""
Non-Hopf endomorphism of the plane minus the rational lattice

F folds the strip 0 <= x <= 1 onto -1 <= x <= 0 and shifts x >= 1 left by 2.
It induces a surjection on fundamental groups that is not injective. This
module lifts loops through F and certifies every lift with winding profiles.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from errors import GeometryError
from planegeom import (
    SQRT2, PLLoop, PLPath, PlanePoint, QuadNum, WindingProfile, certify_avoids,
    segment_avoids_lattice, winding_number,
)

log = logging.getLogger('perforate.nonhopf')

BASEPOINT = PlanePoint(QuadNum(0), SQRT2)
SEAMS = (-1, 0, 1)

Path = Union[PLPath, PLLoop]
Interval = Tuple[QuadNum, QuadNum]


def map_f(p: PlanePoint) -> PlanePoint:
    if p.x <= 0:
        return p
    if p.x <= 1:
        return PlanePoint(-p.x, p.y)
    return PlanePoint(p.x - 2, p.y)


def _split(vertices: Sequence[PlanePoint], seams: Sequence[int]) -> List[Tuple[PlanePoint, QuadNum]]:
    """Vertices of an open polyline with every transversal seam crossing inserted, tagged by parameter"""
    refined = [(vertices[0], QuadNum(0))]
    for index, (a, b) in enumerate(zip(vertices, vertices[1:])):
        cuts = []
        for seam in seams:
            if min(a.x, b.x) < seam < max(a.x, b.x):
                s = (seam - a.x) / (b.x - a.x)
                cuts.append((s, PlanePoint(QuadNum(seam), a.y + s * (b.y - a.y))))
        for s, p in sorted(cuts, key=lambda c: c[0]):
            refined.append((p, index + s))
        refined.append((b, QuadNum(index + 1)))
    return refined


def refine(path: Path, seams: Sequence[int] = SEAMS) -> Path:
    """Same path with vertices added where edges cross the given vertical lines"""
    if isinstance(path, PLLoop):
        points = [p for p, _ in _split(path.as_path().vertices, seams)]
        return PLLoop(tuple(points[:-1]))
    return PLPath(tuple(p for p, _ in _split(path.vertices, seams)))


def apply_f(path: Path) -> Path:
    """Image of a lattice-avoiding path under F, split at x = 0 and x = 1 first"""
    certify_avoids(path)
    refined = refine(path, (0, 1))
    image = tuple(map_f(p) for p in refined.vertices)
    return PLLoop(image) if isinstance(path, PLLoop) else PLPath(image)


# -- decomposition ----------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Parameter intervals of a loop, normalized to [0, 1]"""
    j_intervals: Tuple[Interval, ...]
    complements: Tuple[Interval, ...]

    def trace(self) -> List[Tuple[str, Interval]]:
        """Complements and J intervals in parameter order, alternating and starting with a complement"""
        merged: List[Tuple[str, Interval]] = [("I", self.complements[0])]
        for j, i in zip(self.j_intervals, self.complements[1:]):
            merged.extend([("J", j), ("I", i)])
        return merged


def _walk(loop: PLLoop) -> List[Tuple[PlanePoint, QuadNum]]:
    """Closed walk of the refined loop from the basepoint back to it, with parameters in [0, n]"""
    return _split(loop.as_path().vertices, SEAMS)


def _events(walk: Sequence[Tuple[PlanePoint, QuadNum]], level: int) -> List[int]:
    return [i for i, (p, _) in enumerate(walk) if p.x == level]


def _j_index_intervals(walk: Sequence[Tuple[PlanePoint, QuadNum]]) -> List[Tuple[int, int]]:
    last = len(walk) - 1
    bounds = [0] + _events(walk, -1) + [last]
    zeros = set(_events(walk, 0))
    ones = set(_events(walk, 1))
    found = []
    for start, end in zip(bounds, bounds[1:]):
        inside = [i for i in range(start, end + 1) if i in zeros]
        if len(inside) >= 2 and any(inside[0] < i < inside[-1] for i in ones):
            found.append((inside[0], inside[-1]))
    return found


def _check_based_on_axis(loop: PLLoop) -> None:
    if loop.basepoint.x != 0:
        raise GeometryError(f"loop must be based on the line x = 0, not at {loop.basepoint}")
    certify_avoids(loop)


def decompose_case3(loop: PLLoop) -> Decomposition:
    """Maximal intervals that start and end on x = 0, stay right of x = -1 and reach x = 1"""
    _check_based_on_axis(loop)
    walk = _walk(loop)
    n = len(loop.edges())
    spans = _j_index_intervals(walk)
    marks = [0] + [i for span in spans for i in span] + [len(walk) - 1]
    params = [walk[i][1] / n for i in marks]
    j_intervals = tuple((params[k], params[k + 1]) for k in range(1, len(params) - 1, 2))
    complements = tuple((params[k], params[k + 1]) for k in range(0, len(params), 2))
    log.debug("decomposed %d-edge loop: J=%s", n, [(str(a), str(b)) for a, b in j_intervals])
    return Decomposition(j_intervals, complements)


# -- lifting ----------------------------------------------------------------

def _shifted_block(vertices: Sequence[PlanePoint]) -> List[PlanePoint]:
    """sigma . (xi + 2) . tau^-1 with horizontal connectors of length 2 at the end heights"""
    return [vertices[0]] + [v.translated(2) for v in vertices] + [vertices[-1]]


def _join(pieces: Sequence[Sequence[PlanePoint]]) -> List[PlanePoint]:
    joined: List[PlanePoint] = list(pieces[0])
    for piece in pieces[1:]:
        if joined[-1] != piece[0]:
            raise GeometryError(f"internal: pieces do not meet at {joined[-1]}")
        joined.extend(piece[1:])
    return joined


def _lift_left_of_one(vertices: Sequence[PlanePoint]) -> List[PlanePoint]:
    """Rewrite a refined path with ends on x = 0 and x < 1 throughout"""
    zeros = [i for i, p in enumerate(vertices) if p.x == 0]
    minus = {i for i, p in enumerate(vertices) if p.x == -1}
    pieces: List[List[PlanePoint]] = []
    run_start: Optional[int] = None
    for a, b in zip(zeros, zeros[1:]):
        dips = any(a < i < b for i in minus)
        if dips:
            if run_start is not None:
                pieces.append(_shifted_block(vertices[run_start:a + 1]))
                run_start = None
            pieces.append(list(vertices[a:b + 1]))
        elif run_start is None:
            run_start = a
    if run_start is not None:
        pieces.append(_shifted_block(vertices[run_start:zeros[-1] + 1]))
    return _join(pieces) if pieces else list(vertices)


def _check_left_of_one(vertices: Sequence[PlanePoint]) -> None:
    if vertices[0].x != 0 or vertices[-1].x != 0:
        raise GeometryError("path must start and end on the line x = 0")
    if any(p.x >= 1 for p in vertices):
        raise GeometryError("path must stay strictly left of x = 1")


def lift_left_of_one(path: PLPath) -> PLPath:
    """A path xi' with F(xi') homotopic to xi rel endpoints, for xi left of x = 1"""
    certify_avoids(path)
    vertices = refine(path).vertices
    _check_left_of_one(vertices)
    lifted = PLPath(tuple(_lift_left_of_one(vertices)))
    certify_avoids(lifted)
    return lifted


@dataclass(frozen=True)
class LiftReport:
    input: PLLoop
    lifted: PLLoop
    case_trace: Tuple[Tuple[str, Interval], ...]
    profile_d: int
    match: bool
    case: str
    disagreement: Optional[Tuple[Fraction, Fraction]] = None

    def to_dict(self) -> Dict[str, Any]:
        report = {
            "case": self.case,
            "input": self.input.to_json(),
            "lifted": self.lifted.to_json(),
            "caseTrace": [{"kind": kind, "from": str(a), "to": str(b)} for kind, (a, b) in self.case_trace],
            "profileD": self.profile_d,
            "match": self.match,
        }
        if self.disagreement is not None:
            report["disagreement"] = [str(c) for c in self.disagreement]
        return report


def _whole_loop_trace() -> Tuple[Tuple[str, Interval], ...]:
    return (("I", (QuadNum(0), QuadNum(1))),)


def lift_loop(loop: PLLoop, denominator: int = 40) -> LiftReport:
    """Loop whose image under F has the same winding profile as the input"""
    _check_based_on_axis(loop)
    walk = _walk(loop)
    vertices = [p for p, _ in walk]

    if all(p.x <= 0 for p in vertices):
        case, lifted, trace = "case1", loop, _whole_loop_trace()
    else:
        decomposition = decompose_case3(loop)
        spans = _j_index_intervals(walk)
        if not spans:
            case, trace = "left_of_one", _whole_loop_trace()
            closed = _lift_left_of_one(vertices)
        else:
            case = "case2" if spans == [(0, len(walk) - 1)] else "case3"
            trace = tuple(decomposition.trace())
            marks = [0] + [i for span in spans for i in span] + [len(walk) - 1]
            pieces: List[List[PlanePoint]] = []
            for k in range(len(marks) - 1):
                start, end = marks[k], marks[k + 1]
                if k % 2:
                    pieces.append(_shifted_block(vertices[start:end + 1]))
                elif end > start:
                    pieces.append(_lift_left_of_one(vertices[start:end + 1]))
            closed = _join(pieces)
        lifted = PLLoop(tuple(closed[:-1]))
    certify_avoids(lifted)

    image = WindingProfile(refine(apply_f(lifted)), denominator)
    original = WindingProfile(refine(loop), denominator)
    witness = image.disagreement(original)
    match = witness is None
    if not match:
        log.warning("lift of %s fails its winding certificate at %s", loop.to_json(), witness)
    log.debug("lifted %d-vertex loop (%s) to %d vertices", len(loop.vertices), case, len(lifted.vertices))
    return LiftReport(loop, lifted, tuple(trace), denominator, match, case, witness)


# -- kernel witness ---------------------------------------------------------

@dataclass(frozen=True)
class KernelWitness:
    loop: PLLoop
    enclosed: Tuple[Fraction, Fraction]

    def to_dict(self, denominator: int) -> Dict[str, Any]:
        return {
            "loop": self.loop.to_json(),
            "enclosed": [str(c) for c in self.enclosed],
            "winding": winding_number(self.loop, self.enclosed),
            "imageProfileZero": WindingProfile(apply_f(self.loop), denominator).is_zero(),
            "profileD": denominator,
        }


def kernel_witness() -> KernelWitness:
    """A diamond around a rational point that F folds onto a null-homotopic loop"""
    half = Fraction(1, 2)
    diamond = PLLoop((
        PlanePoint(QuadNum(-half), SQRT2),
        PlanePoint(QuadNum(0), SQRT2 - half),
        PlanePoint(QuadNum(half), SQRT2),
        PlanePoint(QuadNum(0), SQRT2 + half),
    ))
    certify_avoids(diamond)
    return KernelWitness(diamond, (Fraction(1, 4), Fraction(3, 2)))


# -- sampling ---------------------------------------------------------------

@dataclass
class LoopSampler:
    """Seeded random lattice-avoiding loops based at (0, sqrt2)"""
    seed: int = 0
    box: int = 4
    max_vertices: int = 6
    quarter_steps: int = 4
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed)

    def _coordinate(self) -> QuadNum:
        while True:
            steps = self.quarter_steps
            value = QuadNum(Fraction(self.rng.randint(-self.box * steps, self.box * steps), steps),
                            Fraction(self.rng.randint(-steps, steps), steps))
            if -self.box <= value <= self.box:
                return value

    def sample(self) -> PLLoop:
        while True:
            count = self.rng.randint(2, self.max_vertices)
            vertices = [BASEPOINT] + [PlanePoint(self._coordinate(), self._coordinate()) for _ in range(count - 1)]
            try:
                loop = PLLoop(tuple(vertices))
            except GeometryError:
                continue
            if all(segment_avoids_lattice(a, b).avoids for a, b in loop.edges()):
                return loop

    def loops(self, count: int) -> List[PLLoop]:
        return [self.sample() for _ in range(count)]


def lift_suite(count: int = 100, denominator: int = 40, seed: int = 0, box: int = 4,
               max_vertices: int = 6) -> Dict[str, Any]:
    """Lift a seeded batch of random loops and count certified matches"""
    sampler = LoopSampler(seed=seed, box=box, max_vertices=max_vertices)
    reports = [lift_loop(loop, denominator) for loop in sampler.loops(count)]
    cases: Dict[str, int] = {}
    for report in reports:
        cases[report.case] = cases.get(report.case, 0) + 1
    failures = [report.input.to_json() for report in reports if not report.match]
    return {"loops": count, "matches": count - len(failures), "cases": dict(sorted(cases.items())),
            "failures": failures, "profileD": denominator, "seed": seed}
