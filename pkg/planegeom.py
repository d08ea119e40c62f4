#!/usr/bin/env python3
"""
Exact plane geometry over Q(sqrt 2)

Points have coordinates a + b*sqrt(2) with rational a, b, so every sign test
is exact. Piecewise-linear paths are certified to avoid the rational lattice
and winding numbers around rational points serve as homotopy certificates.
"""

import logging
import math
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from more_itertools import pairwise

from errors import GeometryError, LatticeHitError

log = logging.getLogger('perforate.planegeom')

Rational = Union[int, Fraction]


def _fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise GeometryError(f"{value!r} is not an exact rational")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise GeometryError(f"{value!r} is not a rational")


@total_ordering
@dataclass(frozen=True, eq=False)
class QuadNum:
    """a + b*sqrt(2) with rational a and b"""
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _fraction(self.a))
        object.__setattr__(self, "b", _fraction(self.b))

    @classmethod
    def of(cls, value: Union["QuadNum", Rational, str]) -> "QuadNum":
        return value if isinstance(value, QuadNum) else cls(_fraction(value))

    @classmethod
    def parse(cls, raw: Any) -> "QuadNum":
        """From a rational or a pair [a, b]; entries may be ints or strings like "1/2\""""
        if isinstance(raw, (list, tuple)):
            if len(raw) != 2:
                raise GeometryError(f"expected [a, b] for a + b*sqrt(2), got {raw!r}")
            return cls(_fraction(raw[0]), _fraction(raw[1]))
        return cls(_fraction(raw))

    def to_json(self) -> List[str]:
        return [str(self.a), str(self.b)]

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0 or a == 0:
            return (a > 0) - (a < 0) if b == 0 else (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs; a*a == 2*b*b has no rational solution
        dominant = 1 if a > 0 else -1
        return dominant if a * a > 2 * b * b else -dominant

    def floor(self) -> int:
        guess = math.floor(float(self))
        while QuadNum(guess) > self:
            guess -= 1
        while QuadNum(guess + 1) <= self:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -(-self).floor()

    def inverse(self) -> "QuadNum":
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        return QuadNum(self.a / norm, -self.b / norm)

    def __add__(self, other):
        other = QuadNum.of(other)
        return QuadNum(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadNum.of(other))

    def __rsub__(self, other):
        return QuadNum.of(other) - self

    def __mul__(self, other):
        other = QuadNum.of(other)
        return QuadNum(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * QuadNum.of(other).inverse()

    def __rtruediv__(self, other):
        return QuadNum.of(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = QuadNum(other)
        if not isinstance(other, QuadNum):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = QuadNum(other)
        if not isinstance(other, QuadNum):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = "sqrt2" if self.b == 1 else f"-sqrt2" if self.b == -1 else f"{self.b}*sqrt2"
        if self.a == 0:
            return root
        return f"{self.a}{'' if root.startswith('-') else '+'}{root}"


ZERO = QuadNum(0)
SQRT2 = QuadNum(0, 1)


def rational_between(lo: QuadNum, hi: QuadNum) -> Fraction:
    """Some rational strictly between lo and hi, smallest denominator first"""
    if not lo < hi:
        raise GeometryError(f"empty interval ({lo}, {hi})")
    denominator = 1
    while True:
        k = (lo * denominator).floor() + 1
        if QuadNum(Fraction(k, denominator)) < hi:
            return Fraction(k, denominator)
        denominator += 1


@dataclass(frozen=True)
class PlanePoint:
    x: QuadNum
    y: QuadNum

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", QuadNum.of(self.x))
        object.__setattr__(self, "y", QuadNum.of(self.y))

    @classmethod
    def parse(cls, raw: Any) -> "PlanePoint":
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise GeometryError(f"expected a vertex [x, y], got {raw!r}")
        return cls(QuadNum.parse(raw[0]), QuadNum.parse(raw[1]))

    def to_json(self) -> List[List[str]]:
        return [self.x.to_json(), self.y.to_json()]

    def is_rational(self) -> bool:
        return self.x.is_rational() and self.y.is_rational()

    def translated(self, dx: Union[QuadNum, Rational], dy: Union[QuadNum, Rational] = 0) -> "PlanePoint":
        return PlanePoint(self.x + dx, self.y + dy)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def point(x: Union[QuadNum, Rational, str], y: Union[QuadNum, Rational, str]) -> PlanePoint:
    return PlanePoint(QuadNum.of(x), QuadNum.of(y))


@dataclass(frozen=True)
class BoundingBox:
    xmin: QuadNum
    xmax: QuadNum
    ymin: QuadNum
    ymax: QuadNum

    @classmethod
    def around(cls, points: Iterable[PlanePoint]) -> "BoundingBox":
        points = list(points)
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        return cls(min(xs), max(xs), min(ys), max(ys))

    def union(self, other: "BoundingBox") -> "BoundingBox":
        return BoundingBox(min(self.xmin, other.xmin), max(self.xmax, other.xmax),
                           min(self.ymin, other.ymin), max(self.ymax, other.ymax))

    def contains(self, p: PlanePoint) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax


# -- paths and loops --------------------------------------------------------

class _Polyline:
    vertices: Tuple[PlanePoint, ...]

    def _check_vertices(self, minimum: int) -> None:
        if len(self.vertices) < minimum:
            raise GeometryError(f"{type(self).__name__} needs at least {minimum} vertices")
        for p, q in self.edges():
            if p == q:
                raise GeometryError(f"repeated consecutive vertex {p}")

    def edges(self) -> List[Tuple[PlanePoint, PlanePoint]]:
        raise NotImplementedError

    def bounding_box(self) -> BoundingBox:
        return BoundingBox.around(self.vertices)

    def to_json(self) -> List[List[List[str]]]:
        return [v.to_json() for v in self.vertices]


@dataclass(frozen=True)
class PLPath(_Polyline):
    """Open piecewise-linear path"""
    vertices: Tuple[PlanePoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        self._check_vertices(2)

    @property
    def start(self) -> PlanePoint:
        return self.vertices[0]

    @property
    def end(self) -> PlanePoint:
        return self.vertices[-1]

    def edges(self) -> List[Tuple[PlanePoint, PlanePoint]]:
        return list(pairwise(self.vertices))

    def reversed(self) -> "PLPath":
        return PLPath(self.vertices[::-1])

    def translated(self, dx, dy=0) -> "PLPath":
        return PLPath(tuple(v.translated(dx, dy) for v in self.vertices))

    def concat(self, other: "PLPath") -> "PLPath":
        if self.end != other.start:
            raise GeometryError(f"cannot join a path ending at {self.end} to one starting at {other.start}")
        return PLPath(self.vertices + other.vertices[1:])


@dataclass(frozen=True)
class PLLoop(_Polyline):
    """Closed piecewise-linear loop based at its first vertex"""
    vertices: Tuple[PlanePoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        self._check_vertices(2)

    @classmethod
    def parse(cls, raw: Sequence[Any]) -> "PLLoop":
        """From a JSON array of vertices [[a, b], [c, d]] denoting (a + b*sqrt2, c + d*sqrt2)"""
        if not isinstance(raw, (list, tuple)):
            raise GeometryError("a loop is a list of vertices")
        return cls(tuple(PlanePoint.parse(v) for v in raw))

    @classmethod
    def from_path(cls, path: PLPath) -> "PLLoop":
        if path.start != path.end:
            raise GeometryError("path does not close up")
        return cls(path.vertices[:-1])

    @property
    def basepoint(self) -> PlanePoint:
        return self.vertices[0]

    def edges(self) -> List[Tuple[PlanePoint, PlanePoint]]:
        return list(pairwise(self.vertices + self.vertices[:1]))

    def as_path(self) -> PLPath:
        return PLPath(self.vertices + self.vertices[:1])

    def reversed(self) -> "PLLoop":
        return PLLoop(self.vertices[:1] + self.vertices[:0:-1])

    def translated(self, dx, dy=0) -> "PLLoop":
        return PLLoop(tuple(v.translated(dx, dy) for v in self.vertices))

    def concat(self, other: "PLLoop") -> "PLLoop":
        if self.basepoint != other.basepoint:
            raise GeometryError("loops must share a basepoint to be concatenated")
        return PLLoop(self.vertices + other.vertices)


# -- lattice avoidance ------------------------------------------------------

@dataclass(frozen=True)
class LatticeCheck:
    """Outcome of a lattice test; witness and t are set on a hit"""
    witness: Optional[Tuple[Fraction, Fraction]] = None
    t: Optional[QuadNum] = None

    @property
    def avoids(self) -> bool:
        return self.witness is None


AVOIDS = LatticeCheck()


def _segment_point(p: PlanePoint, q: PlanePoint, t: QuadNum) -> PlanePoint:
    return PlanePoint(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def _hit(p: PlanePoint, q: PlanePoint, t: QuadNum) -> LatticeCheck:
    hit = _segment_point(p, q, t)
    if not hit.is_rational():
        raise GeometryError(f"internal: lattice candidate {hit} is not rational")
    return LatticeCheck((hit.x.a, hit.y.a), t)


def segment_avoids_lattice(p: PlanePoint, q: PlanePoint) -> LatticeCheck:
    """Decide whether the closed segment pq meets Q^2

    With t = s + u*sqrt2, both coordinates of p + t*(q - p) are rational iff
    the sqrt2 parts vanish, which is a 2x2 rational linear system in (s, u).
    """
    if p == q:
        raise GeometryError(f"degenerate segment at {p}")
    dx, dy = q.x - p.x, q.y - p.y
    # rows: sqrt2-part of x and of y, as coefficients of (s, u) and right-hand side
    rows = [(dx.b, dx.a, -p.x.b), (dy.b, dy.a, -p.y.b)]
    (a1, b1, c1), (a2, b2, c2) = rows
    det = a1 * b2 - b1 * a2
    if det != 0:
        s = (c1 * b2 - b1 * c2) / det
        u = (a1 * c2 - c1 * a2) / det
        t = QuadNum(s, u)
        return _hit(p, q, t) if ZERO <= t <= 1 else AVOIDS
    if a1 * c2 - c1 * a2 != 0 or b1 * c2 - c1 * b2 != 0:
        return AVOIDS
    alpha, beta, gamma = next(row for row in rows if row[0] != 0 or row[1] != 0)
    particular = QuadNum(gamma / alpha, 0) if alpha != 0 else QuadNum(0, gamma / beta)
    # t(lam) = particular + lam * step runs over every solution
    step = QuadNum(-beta, alpha)
    ends = sorted([(ZERO - particular) / step, (QuadNum(1) - particular) / step])
    lam = rational_between(ends[0], ends[1])
    return _hit(p, q, particular + lam * step)


def certify_avoids(path: _Polyline) -> None:
    """Raise LatticeHitError unless every edge avoids Q^2"""
    for p, q in path.edges():
        check = segment_avoids_lattice(p, q)
        if not check.avoids:
            raise LatticeHitError(f"edge {p} -> {q} meets the rational lattice", check.witness)


# -- winding numbers --------------------------------------------------------

def is_left(q: PlanePoint, a: PlanePoint, b: PlanePoint) -> int:
    """Sign of q relative to the directed line a -> b: +1 left, -1 right, 0 on it"""
    return ((b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y)).sign()


def on_segment(q: PlanePoint, a: PlanePoint, b: PlanePoint) -> bool:
    if is_left(q, a, b) != 0:
        return False
    return min(a.x, b.x) <= q.x <= max(a.x, b.x) and min(a.y, b.y) <= q.y <= max(a.y, b.y)


def _as_point(q: Union[PlanePoint, Tuple[Rational, Rational]]) -> PlanePoint:
    return q if isinstance(q, PlanePoint) else point(q[0], q[1])


def _edge_crossing(q: PlanePoint, a: PlanePoint, b: PlanePoint) -> int:
    """Contribution of one directed edge under the half-open upward/downward rule"""
    if a.y <= q.y:
        if b.y > q.y and is_left(q, a, b) > 0:
            return 1
    elif b.y <= q.y and is_left(q, a, b) < 0:
        return -1
    return 0


def winding_number(loop: PLLoop, q: Union[PlanePoint, Tuple[Rational, Rational]]) -> int:
    q = _as_point(q)
    edges = loop.edges()
    for a, b in edges:
        if on_segment(q, a, b):
            raise GeometryError(f"{q} lies on the loop")
    return sum(_edge_crossing(q, a, b) for a, b in edges)


Edge = Tuple[PlanePoint, PlanePoint]


def cancel_edges(edges: Iterable[Edge]) -> List[Edge]:
    """Net directed edges of a 1-chain after cancelling each edge against its reverse"""
    counts: Counter = Counter(edges)
    net: List[Edge] = []
    for (a, b), count in sorted(counts.items(), key=lambda item: _edge_key(item[0])):
        remaining = count - counts.get((b, a), 0)
        net.extend([(a, b)] * max(remaining, 0))
    return net


def chain_winding(edges: Iterable[Edge], q: Union[PlanePoint, Tuple[Rational, Rational]]) -> int:
    """Winding number of a closed 1-chain around a point off its support"""
    q = _as_point(q)
    return sum(_edge_crossing(q, a, b) for a, b in edges)


def _edge_key(edge: Edge) -> Tuple:
    a, b = edge
    return (a.y, a.x, b.y, b.x)


def _rationals_in(lo: QuadNum, hi: QuadNum, denominator: int) -> List[Fraction]:
    """Sorted rationals in [lo, hi] with denominator at most the bound"""
    found = set()
    for d in range(1, denominator + 1):
        for k in range((lo * d).ceil(), (hi * d).floor() + 1):
            found.add(Fraction(k, d))
    return sorted(found)


def _first_rational(lo: QuadNum, hi: QuadNum, denominator: int,
                    xmin: QuadNum, xmax: QuadNum) -> Optional[Fraction]:
    """A rational of bounded denominator in the open (lo, hi) intersected with the closed [xmin, xmax]"""
    lower, lower_open = (lo, True) if lo >= xmin else (xmin, False)
    upper, upper_open = (hi, True) if hi <= xmax else (xmax, False)
    for d in range(1, denominator + 1):
        k = (lower * d).floor() + 1 if lower_open else (lower * d).ceil()
        candidate = QuadNum(Fraction(k, d))
        if candidate < upper or (not upper_open and candidate == upper):
            return Fraction(k, d)
    return None


def _x_at(a: PlanePoint, b: PlanePoint, y: QuadNum) -> QuadNum:
    return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)


def first_nonzero_point(edges: Sequence[Edge], blocking: Sequence[Edge],
                        box: BoundingBox, denominator: int) -> Optional[Tuple[Fraction, Fraction]]:
    """First rational point (row-major) of bounded denominator in box, off every blocking edge,
    where the chain of edges has nonzero winding; None if there is none"""
    if not edges:
        return None
    ylo = max(min(min(a.y, b.y) for a, b in edges), box.ymin)
    yhi = min(max(max(a.y, b.y) for a, b in edges), box.ymax)
    if ylo > yhi:
        return None
    for y in _rationals_in(ylo, yhi, denominator):
        row = QuadNum(y)
        crossings = []
        for a, b in edges:
            if a.y <= row < b.y:
                crossings.append((_x_at(a, b, row), 1))
            elif b.y <= row < a.y:
                crossings.append((_x_at(a, b, row), -1))
        if not crossings:
            continue
        crossings.sort(key=lambda c: c[0])
        cuts, spans = _row_blockers(blocking, row)
        # winding at x counts crossings strictly to the right of x
        right = sum(sign for _, sign in crossings)
        for (x0, sign), (x1, _) in pairwise(crossings):
            right -= sign
            if right == 0 or not x0 < x1:
                continue
            found = _first_free_rational(x0, x1, cuts, spans, box, denominator)
            if found is not None:
                return found, y
    return None


def _row_blockers(blocking: Sequence[Edge], row: QuadNum) -> Tuple[List[QuadNum], List[Tuple[QuadNum, QuadNum]]]:
    cuts, spans = [], []
    for a, b in blocking:
        if a.y == row and b.y == row:
            spans.append((min(a.x, b.x), max(a.x, b.x)))
            cuts.extend([a.x, b.x])
        elif min(a.y, b.y) <= row <= max(a.y, b.y):
            cuts.append(_x_at(a, b, row))
    return cuts, spans


def _first_free_rational(x0: QuadNum, x1: QuadNum, cuts: List[QuadNum],
                         spans: List[Tuple[QuadNum, QuadNum]], box: BoundingBox,
                         denominator: int) -> Optional[Fraction]:
    inner = sorted(set(c for c in cuts if x0 < c < x1))
    for lo, hi in pairwise([x0] + inner + [x1]):
        middle = (lo + hi) * Fraction(1, 2)
        if any(s0 <= middle <= s1 for s0, s1 in spans):
            continue
        found = _first_rational(lo, hi, denominator, box.xmin, box.xmax)
        if found is not None:
            return found
    return None


class WindingProfile(Mapping):
    """Winding numbers of a loop around rational points of bounded denominator in a box

    Points on the loop are excluded. Iteration is row-major, bottom to top.
    """

    def __init__(self, loop: PLLoop, denominator: int, box: Optional[BoundingBox] = None):
        if denominator < 1:
            raise GeometryError(f"denominator bound must be positive, got {denominator}")
        self.loop = loop
        self.denominator = denominator
        self.box = box or loop.bounding_box()
        self._edges = loop.edges()
        self._points: Optional[List[PlanePoint]] = None

    def _domain(self) -> List[PlanePoint]:
        if self._points is None:
            xs = _rationals_in(self.box.xmin, self.box.xmax, self.denominator)
            ys = _rationals_in(self.box.ymin, self.box.ymax, self.denominator)
            self._points = [p for p in (point(x, y) for y in ys for x in xs)
                            if not any(on_segment(p, a, b) for a, b in self._edges)]
        return self._points

    def _admissible(self, p: PlanePoint) -> bool:
        if not p.is_rational() or not self.box.contains(p):
            return False
        if max(p.x.a.denominator, p.y.a.denominator) > self.denominator:
            return False
        return not any(on_segment(p, a, b) for a, b in self._edges)

    def __getitem__(self, key) -> int:
        p = _as_point(key)
        if not self._admissible(p):
            raise KeyError(key)
        return sum(_edge_crossing(p, a, b) for a, b in self._edges)

    def __iter__(self) -> Iterator[Tuple[Fraction, Fraction]]:
        return ((p.x.a, p.y.a) for p in self._domain())

    def __len__(self) -> int:
        return len(self._domain())

    def nonzero_point(self) -> Optional[Tuple[Fraction, Fraction]]:
        return first_nonzero_point(cancel_edges(self._edges), self._edges, self.box, self.denominator)

    def is_zero(self) -> bool:
        return self.nonzero_point() is None

    def disagreement(self, other: "WindingProfile") -> Optional[Tuple[Fraction, Fraction]]:
        """A point of the union box, off both loops, where the two winding numbers differ"""
        if self.denominator != other.denominator:
            raise GeometryError("profiles with different denominator bounds are not comparable")
        chain = cancel_edges(self._edges + [(b, a) for a, b in other._edges])
        return first_nonzero_point(chain, self._edges + other._edges,
                                   self.box.union(other.box), self.denominator)

    def agrees_with(self, other: "WindingProfile") -> bool:
        found = self.disagreement(other)
        if found is not None:
            log.debug("profiles differ at (%s, %s)", *found)
        return found is None


def winding_profile(loop: PLLoop, denominator: int) -> WindingProfile:
    return WindingProfile(loop, denominator)
