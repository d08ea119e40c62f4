#!/usr/bin/env python3
"""
Sierpinski carpet, gasket and Menger cube

Exact membership by eventually periodic digit expansions, the explicit
retractions onto a corner cell, and witness loops whose retracted images
have zero winding around every removed cell.
"""

import itertools
import logging
import math
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Type

from errors import FractalError
from planegeom import PLLoop, PlanePoint, QuadNum, cancel_edges, chain_winding, on_segment, winding_number

log = logging.getLogger('perforate.fractal')

Expansion = Tuple[Tuple[int, ...], Tuple[int, ...]]
Point = Tuple[Fraction, ...]

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)
HALF = Fraction(1, 2)


def _rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise FractalError(f"{value!r} is not a rational")
    try:
        return value if isinstance(value, Fraction) else Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise FractalError(f"{value!r} is not a rational")


def expansions(t: Fraction, base: int) -> List[Expansion]:
    """Every base-b expansion of t in [0, 1] as (prefix digits, repeating digits)"""
    if not 0 <= t <= 1:
        raise FractalError(f"{t} is outside [0, 1]")
    if t == 1:
        return [((), (base - 1,))]
    if t == 0:
        return [((), (0,))]
    digits: List[int] = []
    seen: Dict[int, int] = {}
    remainder, denominator = t.numerator, t.denominator
    while remainder and remainder not in seen:
        seen[remainder] = len(digits)
        remainder *= base
        digits.append(remainder // denominator)
        remainder %= denominator
    if remainder == 0:
        finite = tuple(digits)
        return [(finite, (0,)), (finite[:-1] + (finite[-1] - 1,), (base - 1,))]
    start = seen[remainder]
    return [(tuple(digits[:start]), tuple(digits[start:]))]


def _digit(expansion: Expansion, position: int) -> int:
    prefix, cycle = expansion
    if position < len(prefix):
        return prefix[position]
    return cycle[(position - len(prefix)) % len(cycle)]


def _columns(choice: Sequence[Expansion]) -> List[Tuple[int, ...]]:
    """Digit columns up to the point where the joint expansion repeats"""
    horizon = max(len(p) for p, _ in choice) + math.lcm(*(len(c) for _, c in choice))
    return [tuple(_digit(e, i) for e in choice) for i in range(horizon)]


def _value(prefix: Sequence[int], cycle: Sequence[int], base: int) -> Fraction:
    head = sum(Fraction(d, base ** (i + 1)) for i, d in enumerate(prefix))
    repeat = sum(d * base ** (len(cycle) - 1 - i) for i, d in enumerate(cycle))
    return head + Fraction(repeat, base ** len(prefix) * (base ** len(cycle) - 1))


def rho(t: Any) -> Fraction:
    """Fold [0, 1] onto [0, 1/3]: identity, then 2/3 - t, then t - 2/3"""
    t = _rational(t)
    if not 0 <= t <= 1:
        raise FractalError(f"{t} is outside [0, 1]")
    if t <= THIRD:
        return t
    if t <= TWO_THIRDS:
        return TWO_THIRDS - t
    return t - TWO_THIRDS


# gasket vertices in the right-triangle model
U0, U1, U2 = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
V0, V1, V2 = (HALF, HALF), (Fraction(0), HALF), (HALF, Fraction(0))

# each subdivision triangle with the images of its vertices
GASKET_PIECES = (
    ("T0", (U0, V2, V1), (U0, V2, V1)),
    ("T1", (U1, V0, V2), (V1, U0, V2)),
    ("T2", (U2, V1, V0), (V2, V1, U0)),
    ("M", (V0, V1, V2), (U0, V1, V2)),
)


def _gasket_piece(p: Point) -> int:
    x, y = p
    if x + y <= HALF:
        return 0
    if x >= HALF:
        return 1
    if y >= HALF:
        return 2
    return 3


def _affine(p: Point, source, target) -> Point:
    (ax, ay), (bx, by), (cx, cy) = source
    det = (bx - ax) * (cy - ay) - (cx - ax) * (by - ay)
    s = ((p[0] - ax) * (cy - ay) - (cx - ax) * (p[1] - ay)) / det
    t = ((bx - ax) * (p[1] - ay) - (p[0] - ax) * (by - ay)) / det
    (a2x, a2y), (b2x, b2y), (c2x, c2y) = target
    return (a2x + s * (b2x - a2x) + t * (c2x - a2x), a2y + s * (b2y - a2y) + t * (c2y - a2y))


class FractalSpace(ABC):
    """Strategy for one self-similar fractal in the unit cube"""

    base: int = 3
    dimension: int = 2

    @abstractmethod
    def get_name(self) -> str:
        """Get the name of the space"""

    @abstractmethod
    def column_allowed(self, column: Tuple[int, ...]) -> bool:
        """Whether one digit position of a joint expansion keeps the point in the space"""

    @abstractmethod
    def retract(self, p: Sequence[Any], check_member: bool = True) -> Point:
        """Retraction onto the corner cell"""

    @abstractmethod
    def in_corner(self, p: Point) -> bool:
        """Whether p lies in the cell the retraction fixes"""

    @abstractmethod
    def shrink_to_corner(self, p: Point) -> Point:
        """Self-similarity carrying the space into its corner cell"""

    def coords(self, p: Sequence[Any]) -> Point:
        if len(p) != self.dimension:
            raise FractalError(f"{self.get_name()} points have {self.dimension} coordinates, got {len(p)}")
        point = tuple(_rational(c) for c in p)
        for c in point:
            if not 0 <= c <= 1:
                raise FractalError(f"coordinate {c} is outside [0, 1]")
        return point

    def extra_condition(self, p: Point) -> bool:
        return True

    def member(self, p: Sequence[Any]) -> bool:
        """True if some choice of expansions avoids every removed cell"""
        point = self.coords(p)
        if not self.extra_condition(point):
            return False
        options = [expansions(c, self.base) for c in point]
        return any(all(self.column_allowed(col) for col in _columns(choice))
                   for choice in itertools.product(*options))

    def allowed_columns(self) -> List[Tuple[int, ...]]:
        return [col for col in itertools.product(range(self.base), repeat=self.dimension)
                if self.column_allowed(col)]

    def sample_member(self, rng: random.Random, max_prefix: int = 4, max_cycle: int = 3) -> Point:
        """A member built from a random eventually periodic joint expansion"""
        columns = self.allowed_columns()
        prefix = [rng.choice(columns) for _ in range(rng.randint(0, max_prefix))]
        cycle = [rng.choice(columns) for _ in range(rng.randint(1, max_cycle))]
        return tuple(_value([c[k] for c in prefix], [c[k] for c in cycle], self.base)
                     for k in range(self.dimension))

    def _checked(self, p: Sequence[Any], check_member: bool) -> Point:
        point = self.coords(p)
        if check_member and not self.member(point):
            raise FractalError(f"{tuple(str(c) for c in point)} is not in the {self.get_name()}")
        return point


class CarpetSpace(FractalSpace):
    """Sierpinski carpet: no digit position with both ternary digits equal to 1"""

    def get_name(self) -> str:
        return "carpet"

    def column_allowed(self, column: Tuple[int, ...]) -> bool:
        return column.count(1) < 2

    def retract(self, p: Sequence[Any], check_member: bool = True) -> Point:
        return tuple(rho(c) for c in self._checked(p, check_member))

    def in_corner(self, p: Point) -> bool:
        return all(c <= THIRD for c in p)

    def shrink_to_corner(self, p: Point) -> Point:
        return tuple(c * THIRD for c in p)


class MengerSpace(CarpetSpace):
    """Menger cube: at most one ternary digit equal to 1 at every position"""

    dimension = 3

    def get_name(self) -> str:
        return "menger"


class GasketSpace(FractalSpace):
    """Sierpinski gasket on the triangle (0,0), (1,0), (0,1): binary digits never both 1"""

    base = 2

    def get_name(self) -> str:
        return "gasket"

    def column_allowed(self, column: Tuple[int, ...]) -> bool:
        return column != (1, 1)

    def extra_condition(self, p: Point) -> bool:
        return p[0] + p[1] <= 1

    def retract(self, p: Sequence[Any], check_member: bool = True) -> Point:
        point = self._checked(p, check_member)
        if not self.extra_condition(point):
            raise FractalError("point lies outside the triangle")
        _, source, target = GASKET_PIECES[_gasket_piece(point)]
        return _affine(point, source, target)

    def in_corner(self, p: Point) -> bool:
        return p[0] + p[1] <= HALF

    def shrink_to_corner(self, p: Point) -> Point:
        return tuple(c * HALF for c in p)


class FractalFactory:
    """Factory for creating fractal space strategies"""

    SPACES: Dict[str, Type[FractalSpace]] = {
        "carpet": CarpetSpace,
        "gasket": GasketSpace,
        "menger": MengerSpace,
    }

    @staticmethod
    def create(which: str) -> FractalSpace:
        """Create a space by name"""
        space = FractalFactory.SPACES.get(which.lower())
        if space is None:
            raise FractalError(f"Unsupported fractal: {which}")
        return space()


def member(which: str, p: Sequence[Any]) -> bool:
    return FractalFactory.create(which).member(p)


def retract(which: str, p: Sequence[Any], check_member: bool = True) -> Point:
    return FractalFactory.create(which).retract(p, check_member)


def retract_gasket(p: Sequence[Any], check_member: bool = True) -> Point:
    """Simplicial retraction of the gasket onto its corner copy at the origin"""
    return GasketSpace().retract(p, check_member)


# -- removed cells ----------------------------------------------------------

def removed_centers(which: str, level: int) -> List[Tuple[Fraction, Fraction]]:
    """Centres of the cells removed at stages 1..level, stage by stage"""
    centers: List[Tuple[Fraction, Fraction]] = []
    if which == "carpet":
        cells = [(Fraction(0), Fraction(0))]
        for stage in range(1, level + 1):
            size = THIRD ** (stage - 1)
            step = size * THIRD
            centers.extend((a + size / 2, b + size / 2) for a, b in cells)
            cells = [(a + i * step, b + j * step) for a, b in cells
                     for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    elif which == "gasket":
        cells = [(Fraction(0), Fraction(0))]
        for stage in range(1, level + 1):
            size = HALF ** (stage - 1)
            centers.extend((a + size / 3, b + size / 3) for a, b in cells)
            half = size / 2
            cells = [(a + i, b + j) for a, b in cells for i, j in ((0, 0), (half, 0), (0, half))]
    else:
        raise FractalError(f"no removed cells are listed for {which}")
    return centers


# -- witness loops ----------------------------------------------------------

def _as_loop(vertices: Sequence[Tuple[Fraction, Fraction]]) -> PLLoop:
    return PLLoop(tuple(PlanePoint(QuadNum(x), QuadNum(y)) for x, y in vertices))


def _split_edges(vertices: Sequence[Tuple[Fraction, Fraction]],
                 lines: Sequence[Tuple[int, int, Fraction]]) -> List[Tuple[Fraction, Fraction]]:
    """Closed polygon with a vertex added wherever an edge crosses some line cx*x + cy*y = c"""
    refined: List[Tuple[Fraction, Fraction]] = []
    for a, b in zip(vertices, list(vertices[1:]) + [vertices[0]]):
        refined.append(a)
        cuts = []
        for cx, cy, c in lines:
            fa, fb = cx * a[0] + cy * a[1], cx * b[0] + cy * b[1]
            if min(fa, fb) < c < max(fa, fb):
                s = (c - fa) / (fb - fa)
                cuts.append((s, (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))))
        refined.extend(p for _, p in sorted(cuts))
    return refined


CARPET_LINES = ((1, 0, THIRD), (1, 0, TWO_THIRDS), (0, 1, THIRD), (0, 1, TWO_THIRDS))
GASKET_LINES = ((1, 0, HALF), (0, 1, HALF), (1, 1, HALF))


class FractalWitness:
    """Loop in a fractal winding around removed cells whose retracted image winds around none"""

    def __init__(self, which: str, vertices: Sequence[Tuple[Fraction, Fraction]],
                 holes: Sequence[Tuple[Fraction, Fraction]], level: int) -> None:
        self.which = which
        self.space = FractalFactory.create(which)
        self.loop = _as_loop(vertices)
        self.holes = list(holes)
        self.level = level
        lines = CARPET_LINES if which == "carpet" else GASKET_LINES
        image = [self.space.retract(p) for p in _split_edges(vertices, lines)]
        self.retracted = _as_loop(image)

    def hole_windings(self) -> List[int]:
        return [winding_number(self.loop, hole) for hole in self.holes]

    def retracted_windings(self) -> Dict[Tuple[Fraction, Fraction], int]:
        """Winding of the retracted loop around every removed-cell centre off the loop"""
        chain = cancel_edges(self.retracted.edges())
        edges = self.retracted.edges()
        windings = {}
        for center in removed_centers(self.which, self.level):
            q = PlanePoint(QuadNum(center[0]), QuadNum(center[1]))
            if any(on_segment(q, a, b) for a, b in edges):
                continue
            windings[center] = chain_winding(chain, q) if chain else 0
        return windings

    def retracted_profile_zero(self) -> bool:
        nonzero = [c for c, w in self.retracted_windings().items() if w]
        if nonzero:
            log.warning("retracted %s witness winds around %d removed cells", self.which, len(nonzero))
        return not nonzero

    def to_dict(self) -> Dict[str, Any]:
        return {
            "which": self.which,
            "loop": [[str(x), str(y)] for x, y in ((v.x.a, v.y.a) for v in self.loop.vertices)],
            "holes": [{"point": [str(c) for c in hole], "winding": w}
                      for hole, w in zip(self.holes, self.hole_windings())],
            "retracted": [[str(v.x.a), str(v.y.a)] for v in self.retracted.vertices],
            "level": self.level,
            "retractedProfileZero": self.retracted_profile_zero(),
        }


def witness_loops(which: str, level: int = 6) -> FractalWitness:
    if which == "carpet":
        sigma = [(Fraction(0), Fraction(0)), (THIRD, Fraction(0)), (THIRD, TWO_THIRDS), (Fraction(0), TWO_THIRDS)]
        return FractalWitness(which, sigma, [(Fraction(1, 6), HALF)], level)
    if which == "gasket":
        # boundary of the triangle at (1,0) followed by the reversed boundary of the corner triangle
        loop = [V2, U1, V0, V2, U0, V1]
        return FractalWitness(which, loop, [(TWO_THIRDS, Fraction(1, 6)), (Fraction(1, 6), Fraction(1, 6))], level)
    raise FractalError(f"no witness loop for {which}")


# -- sweeps -----------------------------------------------------------------

def retraction_sweep(which: str, count: int, seed: int = 0) -> Dict[str, Any]:
    """Check idempotence, membership preservation and corner fixing on seeded members"""
    space = FractalFactory.create(which)
    rng = random.Random(seed)
    counts = {"samples": count, "idempotent": 0, "memberPreserved": 0, "inCorner": 0, "cornerFixed": 0}
    for _ in range(count):
        p = space.sample_member(rng)
        image = space.retract(p)
        counts["idempotent"] += space.retract(image) == image
        counts["memberPreserved"] += space.member(image)
        counts["inCorner"] += space.in_corner(image)
        corner = space.shrink_to_corner(p)
        counts["cornerFixed"] += space.retract(corner) == corner
    log.debug("%s sweep: %s", which, counts)
    return {"which": which, "seed": seed, **counts}
