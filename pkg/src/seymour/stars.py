"""Missing-graph structure: star decompositions and orientation plans."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

from .digraph import Arc, Digraph, VertexSet
from .errors import NotDisjointStarsError

Edge = frozenset  # frozenset({u, v}) naming a missing edge


def edge(u: int, v: int) -> Edge:
    return frozenset((u, v))


def edge_pair(e: Edge) -> tuple[int, int]:
    u, v = sorted(e)
    return u, v


@dataclass(frozen=True)
class Star:
    """One star of the missing graph: a center and its leaves."""

    center: int
    leaves: VertexSet

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge(self.center, a) for a in self.leaves)

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted((self.center, *self.leaves)))


@dataclass(frozen=True)
class StarDecomposition:
    """Missing graph split into >=2-leaf stars and single-edge components.

    Single missing edges go to `matching`; their center choice is ambiguous,
    so they are kept as plain pairs (u < v).
    """

    stars: tuple[Star, ...]
    matching: tuple[tuple[int, int], ...]

    @property
    def all_edges(self) -> tuple[Edge, ...]:
        edges = [e for s in self.stars for e in s.edges]
        edges.extend(edge(u, v) for u, v in self.matching)
        return tuple(edges)

    @property
    def is_matching(self) -> bool:
        return not self.stars

    def component_count(self) -> int:
        return len(self.stars) + len(self.matching)


def decompose(d: Digraph) -> StarDecomposition:
    """Split the missing graph into disjoint stars; raise if impossible."""
    pairs = d.missing_pairs()
    adjacency: dict[int, list[int]] = {}
    for u, v in pairs:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)

    seen: set[int] = set()
    stars: list[Star] = []
    matching: list[tuple[int, int]] = []
    for root in sorted(adjacency):
        if root in seen:
            continue
        component = []
        stack = [root]
        seen.add(root)
        while stack:
            x = stack.pop()
            component.append(x)
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        component.sort()
        edges_in = sum(len(adjacency[x]) for x in component) // 2
        if edges_in != len(component) - 1:
            raise NotDisjointStarsError(
                f"missing-graph component {component} has {edges_in} edges; a star needs {len(component) - 1}"
            )
        if len(component) == 2:
            matching.append((component[0], component[1]))
            continue
        centers = [x for x in component if len(adjacency[x]) == len(component) - 1]
        if len(centers) != 1:
            raise NotDisjointStarsError(
                f"missing-graph component {component} is not a star"
            )
        center = centers[0]
        leaves = tuple(x for x in component if x != center)
        if any(len(adjacency[x]) != 1 for x in leaves):
            raise NotDisjointStarsError(
                f"missing-graph component {component} is not a star"
            )
        stars.append(Star(center, leaves))
    return StarDecomposition(tuple(stars), tuple(matching))


def center_assignments(
    dec: StarDecomposition, limit: int = 256
) -> Iterator[tuple[Star, ...]]:
    """All readings of the decomposition as a tuple of stars.

    Multi-leaf stars have a forced center; each matching edge yields two
    candidate readings.  The enumeration is capped to avoid blowups.
    """
    choices = [(Star(u, (v,)), Star(v, (u,))) for u, v in dec.matching]
    count = 0
    for combo in product(*choices):
        count += 1
        if count > limit:
            return
        yield dec.stars + tuple(combo)


def canonical_stars(dec: StarDecomposition) -> tuple[Star, ...]:
    """Deterministic star reading: matching edges centered at the smaller id."""
    return dec.stars + tuple(Star(u, (v,)) for u, v in dec.matching)


@dataclass(frozen=True)
class OrientationPlan:
    """One arc per missing edge, with a provenance note per edge."""

    arcs: tuple[Arc, ...]
    provenance: Mapping[Edge, str] = field(default_factory=dict)

    def arc_for(self, e: Edge) -> Arc:
        for a in self.arcs:
            if frozenset(a) == e:
                return a
        raise KeyError(f"no arc planned for {sorted(e)}")


def orient_toward_centers(
    stars: tuple[Star, ...], note: str = "toward-center"
) -> OrientationPlan:
    """Plan orienting every star edge from leaf to center."""
    arcs = []
    provenance = {}
    for s in stars:
        for a in s.leaves:
            arcs.append((a, s.center))
            provenance[edge(a, s.center)] = note
    return OrientationPlan(tuple(arcs), provenance)


def is_convenient(d: Digraph, a: int, b: int) -> bool:
    """True when every in-neighbor of a reaches b within two steps.

    The orientation (a, b) of a missing edge is convenient when for every
    vertex v outside {a, b}: v -> a implies b in N+(v) or N++(v).
    """
    for v in range(d.n):
        if v in (a, b):
            continue
        if d.has_arc(v, a):
            if not (d.has_arc(v, b) or d.second_mask(v) >> b & 1):
                return False
    return True


def convenient_orientations(d: Digraph, e: Edge | tuple[int, int]) -> tuple[Arc, ...]:
    """The convenient orientations of a missing edge, in (min,max) order first."""
    u, v = edge_pair(frozenset(e))
    if d.has_arc(u, v) or d.has_arc(v, u):
        raise ValueError(f"({u}, {v}) is not a missing edge")
    result = []
    if is_convenient(d, u, v):
        result.append((u, v))
    if is_convenient(d, v, u):
        result.append((v, u))
    return tuple(result)
