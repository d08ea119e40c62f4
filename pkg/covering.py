#!/usr/bin/env python3
"""
Covering Graphs

Coverings of a wedge of circles realized as Cayley and Schreier graphs, their
deck groups, regularity checks, and the index-p obstruction for the Hawaiian
earring.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import MultiDiGraphMatcher
from sympy import isprime

from errors import CoverError

log = logging.getLogger('perforate.covering')

DEFAULT_ELEMENT_CAP = 5000

TABLE = "table"
PERMUTATIONS = "permutations"
TRANSLATIONS = "translations"

Edge = Tuple[int, int, int]


def compose_perm(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    """p after q, so r[i] = p[q[i]]"""
    if len(p) != len(q):
        raise CoverError("permutation lengths must match")
    return tuple(p[q[i]] for i in range(len(q)))


def perm_inverse(p: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _check_perm(p: Any, degree: int) -> Tuple[int, ...]:
    if not isinstance(p, (list, tuple)) or sorted(p) != list(range(degree)):
        raise CoverError(f"{p!r} is not a permutation of 0..{degree - 1}")
    return tuple(p)


@dataclass
class GroupSpec:
    """A group given by a multiplication table, permutation generators or translations of Z^k"""
    kind: str
    generators: List[Any]
    table: Optional[List[List[int]]] = None
    radius: Optional[int] = None
    name: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind == TABLE:
            self._check_table()
        elif self.kind == PERMUTATIONS:
            if not self.generators:
                raise CoverError("a permutation group needs at least one generator")
            degree = len(self.generators[0])
            self.generators = [_check_perm(p, degree) for p in self.generators]
        elif self.kind == TRANSLATIONS:
            if not self.generators:
                raise CoverError("a translation group needs at least one generator")
            rank = len(self.generators[0])
            if rank == 0 or any(len(v) != rank or not all(isinstance(c, int) for c in v) for v in self.generators):
                raise CoverError("translation generators must be integer vectors of one length")
            self.generators = [tuple(v) for v in self.generators]
            if not isinstance(self.radius, int) or self.radius < 1:
                raise CoverError(f"radius must be a positive integer, got {self.radius!r}")
        else:
            raise CoverError(f"Unsupported group type: {self.kind}")

    def _check_table(self) -> None:
        table = self.table
        n = len(table or [])
        if n == 0 or any(len(row) != n for row in table):
            raise CoverError("the multiplication table must be square and non-empty")
        elements = list(range(n))
        for row in table:
            if sorted(row) != elements:
                raise CoverError("every row of the table must be a permutation of the elements")
        for col in range(n):
            if sorted(table[row][col] for row in range(n)) != elements:
                raise CoverError("every column of the table must be a permutation of the elements")
        if table[0] != elements or [row[0] for row in table] != elements:
            raise CoverError("element 0 must be the identity")
        for a, b, c in itertools.product(elements, repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise CoverError(f"the table is not associative at ({a}, {b}, {c})")
        for g in self.generators:
            if not isinstance(g, int) or not 0 <= g < n:
                raise CoverError(f"generator {g!r} is not an element")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GroupSpec":
        kind = data.get("type")
        if kind is None:
            raise CoverError("group spec needs a 'type'")
        return cls(kind, list(data.get("generators", [])), data.get("table"), data.get("radius"), data.get("name"))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"type": self.kind, "generators": [list(g) if isinstance(g, tuple) else g
                                                                 for g in self.generators]}
        if self.table is not None:
            data["table"] = self.table
        if self.radius is not None:
            data["radius"] = self.radius
        if self.name:
            data["name"] = self.name
        return data

    @property
    def identity(self) -> Any:
        if self.kind == TABLE:
            return 0
        if self.kind == PERMUTATIONS:
            return tuple(range(len(self.generators[0])))
        return tuple(0 for _ in self.generators[0])

    def multiply(self, a: Any, b: Any) -> Any:
        if self.kind == TABLE:
            return self.table[a][b]
        if self.kind == PERMUTATIONS:
            return compose_perm(a, b)
        return tuple(x + y for x, y in zip(a, b))

    def negate(self, a: Any) -> Any:
        return tuple(-x for x in a)


@dataclass
class CoveringGraph:
    """Edge-labelled graph covering the rose with one circle per generator"""
    elements: List[Any]
    edges: List[Edge]
    labels: int
    truncated: bool = False
    basepoint: int = 0
    depth: List[int] = field(default_factory=list)
    radius: Optional[int] = None
    multiply: Optional[Callable[[Any, Any], Any]] = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from((v, {"base": v == self.basepoint}) for v in range(self.order))
        g.add_edges_from((s, t, {"label": label}) for s, label, t in self.edges)
        return g

    def interior(self) -> List[int]:
        if not self.truncated:
            return list(range(self.order))
        return [v for v in range(self.order) if self.depth[v] < self.radius]

    def out_map(self) -> List[Dict[int, int]]:
        out: List[Dict[int, int]] = [{} for _ in range(self.order)]
        for s, label, t in self.edges:
            out[s][label] = t
        return out

    def in_map(self) -> List[Dict[int, int]]:
        incoming: List[Dict[int, int]] = [{} for _ in range(self.order)]
        for s, label, t in self.edges:
            incoming[t][label] = s
        return incoming

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [list(e) if isinstance(e, tuple) else e for e in self.elements],
            "edges": [list(e) for e in self.edges],
            "labels": self.labels,
            "basepoint": self.basepoint,
            "truncated": self.truncated,
        }


def build_cover(spec: GroupSpec, element_cap: int = DEFAULT_ELEMENT_CAP) -> CoveringGraph:
    """Cayley graph of the generated group; for translations the ball of the given radius"""
    if spec.kind == TRANSLATIONS:
        return _build_ball(spec, element_cap)
    identity = spec.identity
    elements = [identity]
    index = {identity: 0}
    edges: List[Edge] = []
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for label, s in enumerate(spec.generators):
            h = spec.multiply(g, s)
            if h not in index:
                if len(elements) >= element_cap:
                    raise CoverError(f"group closure exceeds the element cap of {element_cap}")
                index[h] = len(elements)
                elements.append(h)
                queue.append(h)
            edges.append((index[g], label, index[h]))
    log.debug("closure of %d generators has %d elements", len(spec.generators), len(elements))
    return CoveringGraph(elements, edges, len(spec.generators), multiply=spec.multiply)


def _build_ball(spec: GroupSpec, element_cap: int) -> CoveringGraph:
    identity = spec.identity
    elements = [identity]
    index = {identity: 0}
    depth = [0]
    queue = deque([identity])
    steps = list(spec.generators) + [spec.negate(s) for s in spec.generators]
    while queue:
        g = queue.popleft()
        d = depth[index[g]]
        if d == spec.radius:
            continue
        for s in steps:
            h = spec.multiply(g, s)
            if h not in index:
                if len(elements) >= element_cap:
                    raise CoverError(f"ball of radius {spec.radius} exceeds the element cap of {element_cap}")
                index[h] = len(elements)
                elements.append(h)
                depth.append(d + 1)
                queue.append(h)
    edges = [(index[g], label, index[h]) for g in elements for label, s in enumerate(spec.generators)
             if (h := spec.multiply(g, s)) in index]
    return CoveringGraph(elements, edges, len(spec.generators), truncated=True, depth=depth,
                         radius=spec.radius, multiply=spec.multiply)


def build_action_cover(permutations: Sequence[Sequence[int]]) -> CoveringGraph:
    """Schreier graph of a transitive permutation action, point 0 as basepoint"""
    if not permutations:
        raise CoverError("an action needs at least one permutation")
    degree = len(permutations[0])
    perms = [_check_perm(p, degree) for p in permutations]
    edges = [(i, label, p[i]) for i in range(degree) for label, p in enumerate(perms)]
    cover = CoveringGraph(list(range(degree)), edges, len(perms))
    if not nx.is_strongly_connected(cover.graph()):
        raise CoverError("the action is not transitive")
    return cover


def covering_defects(cover: CoveringGraph) -> List[Dict[str, int]]:
    """Vertices and labels where the local picture is not one edge in and one edge out"""
    g = cover.graph()
    defects = []
    for v in cover.interior():
        outs = [label for _, _, label in g.out_edges(v, data="label")]
        ins = [label for _, _, label in g.in_edges(v, data="label")]
        for label in range(cover.labels):
            if outs.count(label) != 1 or ins.count(label) != 1:
                defects.append({"vertex": v, "label": label, "out": outs.count(label), "in": ins.count(label)})
    return defects


def _automorphism_from(cover: CoveringGraph, target: int, out_map, in_map) -> Optional[List[int]]:
    """Extend basepoint -> target along labelled edges; None if it fails to be an automorphism"""
    mapping = {cover.basepoint: target}
    queue = deque([cover.basepoint])
    while queue:
        u = queue.popleft()
        mu = mapping[u]
        for step, image in ((out_map, out_map), (in_map, in_map)):
            for label, v in step[u].items():
                expected = image[mu].get(label)
                if expected is None:
                    return None
                if v in mapping:
                    if mapping[v] != expected:
                        return None
                else:
                    mapping[v] = expected
                    queue.append(v)
    if len(mapping) < cover.order or len(set(mapping.values())) < cover.order:
        return None
    return [mapping[v] for v in range(cover.order)]


@dataclass
class DeckGroup:
    """Label-preserving automorphisms, indexed by the image of the basepoint"""
    automorphisms: List[List[int]]
    table: List[List[int]]
    isomorphism_verified: Optional[bool]

    @property
    def order(self) -> int:
        return len(self.automorphisms)

    def as_spec(self) -> GroupSpec:
        return GroupSpec(TABLE, list(range(1, self.order)), self.table, name="deck")

    def to_dict(self) -> Dict[str, Any]:
        return {"order": self.order, "table": self.table, "isomorphismVerified": self.isomorphism_verified}


def deck_group(cover: CoveringGraph) -> DeckGroup:
    if cover.truncated:
        raise CoverError("deck groups are computed for complete covers only")
    out_map, in_map = cover.out_map(), cover.in_map()
    automorphisms = [a for a in (_automorphism_from(cover, t, out_map, in_map) for t in range(cover.order)) if a]
    # identity first since the basepoint maps to itself
    index = {tuple(a): i for i, a in enumerate(automorphisms)}
    table = [[index[compose_perm(a, b)] for b in automorphisms] for a in automorphisms]
    log.debug("cover of order %d has %d deck transformations", cover.order, len(automorphisms))
    return DeckGroup(automorphisms, table, _left_regular(cover, automorphisms))


def _left_regular(cover: CoveringGraph, automorphisms: List[List[int]]) -> Optional[bool]:
    """Whether each automorphism is left multiplication and composing them multiplies the group"""
    if cover.multiply is None:
        return None
    if len(automorphisms) != cover.order:
        return False
    index = {g: i for i, g in enumerate(cover.elements)}
    by_image = {a[cover.basepoint]: a for a in automorphisms}
    for h, a in zip(cover.elements, (by_image[i] for i in range(cover.order))):
        if any(a[index[g]] != index[cover.multiply(h, g)] for g in cover.elements):
            return False
    for (i, h), (j, k) in itertools.product(enumerate(cover.elements), repeat=2):
        if compose_perm(by_image[i], by_image[j]) != tuple(by_image[index[cover.multiply(h, k)]]):
            return False
    return True


def is_regular(cover: CoveringGraph) -> bool:
    """Deck group acts transitively on the fibre"""
    if cover.truncated:
        raise CoverError("regularity is decided for complete covers only")
    images = {a[cover.basepoint] for a in deck_group(cover).automorphisms}
    return len(images) == cover.order


def covers_equivalent(c1: CoveringGraph, c2: CoveringGraph) -> bool:
    """Based isomorphism of covers preserving edge labels"""
    if c1.labels != c2.labels or c1.order != c2.order:
        return False
    matcher = MultiDiGraphMatcher(
        c1.graph(), c2.graph(),
        node_match=lambda a, b: a["base"] == b["base"],
        edge_match=lambda a, b: sorted(e["label"] for e in a.values()) == sorted(e["label"] for e in b.values()),
    )
    return matcher.is_isomorphic()


def cyclic_group(n: int) -> GroupSpec:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupSpec(TABLE, [1] if n > 1 else [], table, name=f"Z/{n}")


def group_catalog() -> Dict[str, GroupSpec]:
    catalog = {f"Z/{n}": cyclic_group(n) for n in range(1, 13)}
    catalog["S3"] = GroupSpec(PERMUTATIONS, [[1, 0, 2], [1, 2, 0]], name="S3")
    catalog["D4"] = GroupSpec(PERMUTATIONS, [[1, 2, 3, 0], [0, 3, 2, 1]], name="D4")
    catalog["A4"] = GroupSpec(PERMUTATIONS, [[1, 2, 0, 3], [1, 0, 3, 2]], name="A4")
    catalog["Q8"] = GroupSpec(PERMUTATIONS, [[2, 3, 1, 0, 6, 7, 5, 4], [4, 5, 7, 6, 1, 0, 2, 3]], name="Q8")
    return catalog


def cover_report(spec: GroupSpec, element_cap: int = DEFAULT_ELEMENT_CAP) -> Dict[str, Any]:
    """Cover plus its verification: covering condition, deck group and regularity"""
    cover = build_cover(spec, element_cap)
    defects = covering_defects(cover)
    report: Dict[str, Any] = {"group": spec.to_dict(), "cover": cover.to_dict(), "order": cover.order,
                              "defects": defects, "coveringCondition": not defects}
    if cover.truncated:
        report["interior"] = len(cover.interior())
    else:
        deck = deck_group(cover)
        report["deck"] = deck.to_dict()
        report["regular"] = is_regular(cover)
    if defects:
        log.warning("covering condition fails at %d vertex labels", len(defects))
    return report


@dataclass(frozen=True)
class Obstruction:
    p: int
    m: int
    k: int
    value: int

    def to_dict(self) -> Dict[str, int]:
        return {"p": self.p, "m": self.m, "k": self.k, "value": self.value}


def hawaiian_obstruction(p: int, m: int) -> Obstruction:
    """Witness that the index-p subgroup ker(eta) of the Hawaiian earring group is not a covering subgroup

    eta sends the loop around every circle to 1 in Z/p. A covering subgroup
    would contain the loops of all circles of index at least some m, so for
    each m the first such circle k with eta(k) != 0 is reported. The answer is
    always k = m with value 1.
    """
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise CoverError(f"p must be prime, got {p!r}")
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise CoverError(f"m must be a positive integer, got {m!r}")
    # the homomorphism takes the value 1 on every generator
    eta = [1] * (2 * m)
    for k in range(m, len(eta) + 1):
        value = eta[k - 1] % p
        if value:
            return Obstruction(p, m, k, value)
    raise CoverError(f"no generator of index at least {m} escapes the kernel")
