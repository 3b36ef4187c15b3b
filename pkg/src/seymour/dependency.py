"""The losing relation between missing edges and its derived structure.

Missing edge x1y1 loses to missing edge x2y2 when, for some labeling of the
endpoints, x1 -> x2 with y2 outside N+(x1) and N++(x1), and y1 -> y2 with
x2 outside N+(y1) and N++(y1).  The dependency digraph has the missing edges
as vertices and one arc per losing pair (digons allowed there).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .digraph import Digraph, VertexSet
from .stars import Edge, edge, edge_pair


@dataclass(frozen=True)
class LosingWitness:
    """Role assignment certifying that {x1,y1} loses to {x2,y2}."""

    x1: int
    y1: int
    x2: int
    y2: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x1, self.y1, self.x2, self.y2)


def loses_to(d: Digraph, e1, e2) -> LosingWitness | None:
    """First role assignment making e1 lose to e2, or None.

    Role assignments are tried with each edge's endpoints in (min,max) order
    first, so the returned witness is deterministic.
    """
    e1 = frozenset(e1)
    e2 = frozenset(e2)
    if e1 == e2:
        return None
    p, q = edge_pair(e1)
    r, s = edge_pair(e2)
    for x1, y1 in ((p, q), (q, p)):
        reach_x1 = d.out_mask(x1) | d.second_mask(x1)
        reach_y1 = d.out_mask(y1) | d.second_mask(y1)
        for x2, y2 in ((r, s), (s, r)):
            if (
                d.has_arc(x1, x2)
                and not reach_x1 >> y2 & 1
                and d.has_arc(y1, y2)
                and not reach_y1 >> x2 & 1
            ):
                return LosingWitness(x1, y1, x2, y2)
    return None


@dataclass(frozen=True)
class DependencyDigraph:
    """Losing relation over the missing edges of one digraph."""

    edges: tuple[Edge, ...]
    arcs: tuple[tuple[Edge, Edge], ...]
    witnesses: dict

    def index(self, e) -> int:
        return self.edges.index(frozenset(e))

    def out_degree(self, e) -> int:
        e = frozenset(e)
        return sum(1 for a, _ in self.arcs if a == e)

    def in_degree(self, e) -> int:
        e = frozenset(e)
        return sum(1 for _, b in self.arcs if b == e)

    @property
    def min_out_degree(self) -> int | None:
        if not self.edges:
            return None
        return min(self.out_degree(e) for e in self.edges)

    @property
    def min_in_degree(self) -> int | None:
        if not self.edges:
            return None
        return min(self.in_degree(e) for e in self.edges)

    @property
    def min_degree(self) -> int | None:
        """min(delta+, delta-), None when there are no missing edges."""
        if not self.edges:
            return None
        return min(self.min_out_degree, self.min_in_degree)

    def successors(self, e) -> tuple[Edge, ...]:
        e = frozenset(e)
        return tuple(b for a, b in self.arcs if a == e)

    def predecessors(self, e) -> tuple[Edge, ...]:
        e = frozenset(e)
        return tuple(a for a, b in self.arcs if b == e)


def dependency_digraph(d: Digraph) -> DependencyDigraph:
    edges = tuple(edge(u, v) for u, v in d.missing_pairs())
    arcs = []
    witnesses = {}
    for e1 in edges:
        for e2 in edges:
            if e1 == e2:
                continue
            w = loses_to(d, e1, e2)
            if w is not None:
                arcs.append((e1, e2))
                witnesses[(e1, e2)] = w
    return DependencyDigraph(edges, tuple(arcs), witnesses)


def good_edges(d: Digraph, dd: DependencyDigraph | None = None) -> tuple[Edge, ...]:
    """Missing edges no edge loses to (in-degree 0 in the dependency digraph)."""
    if dd is None:
        dd = dependency_digraph(d)
    return tuple(e for e in dd.edges if dd.in_degree(e) == 0)


def _weak_components(dd: DependencyDigraph) -> tuple[tuple[Edge, ...], ...]:
    parent = {e: e for e in dd.edges}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in dd.arcs:
        ra, rb = find(a), find(b)
        if ra is not rb:
            parent[ra] = rb
    groups: dict[Edge, list[Edge]] = {}
    for e in dd.edges:
        groups.setdefault(find(e), []).append(e)
    comps = [tuple(sorted(g, key=edge_pair)) for g in groups.values()]
    comps.sort(key=lambda c: edge_pair(c[0]))
    return tuple(comps)


def strongly_connected_components(
    vertices: Sequence, successors
) -> tuple[tuple, ...]:
    """Iterative Tarjan SCC over an arbitrary finite vertex set."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs: list[tuple] = []
    counter = [0]

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter[0]
                    counter[0] += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(successors(u))))
                    advanced = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent_v = work[-1][0]
                low[parent_v] = min(low[parent_v], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.append(u)
                    if u == v:
                        break
                sccs.append(tuple(comp))
    return tuple(sccs)


@dataclass(frozen=True)
class ComponentIndex:
    """Weak components of the dependency digraph and their vertex footprint.

    components: weak components of the losing relation, each a tuple of edges.
    k_sets:     K(C) per component (the endpoints of its edges).
    xi_groups:  connected components of the interval graph (components are
                adjacent when their K-sets intersect), as tuples of component
                indices.
    k_of_xi:    K(xi) per group: the union of the member K-sets.
    """

    dd: DependencyDigraph
    components: tuple[tuple[Edge, ...], ...]
    k_sets: tuple[VertexSet, ...]
    xi_groups: tuple[tuple[int, ...], ...]
    k_of_xi: tuple[VertexSet, ...]

    def xi_of_vertex(self, v: int) -> int | None:
        for i, k in enumerate(self.k_of_xi):
            if v in k:
                return i
        return None

    def component_is_path(self, ci: int) -> bool:
        """True when weak component ci is a directed path (isolated edge included)."""
        comp = set(self.components[ci])
        outs = {e: [b for a, b in self.dd.arcs if a == e] for e in comp}
        ins = {e: [a for a, b in self.dd.arcs if b == e] for e in comp}
        if any(len(outs[e]) > 1 or len(ins[e]) > 1 for e in comp):
            return False
        starts = [e for e in comp if not ins[e]]
        if len(starts) != 1:
            return False  # a 1-in/1-out weak component with no start is a cycle
        # walk the chain and make sure it covers the component
        seen = 0
        e = starts[0]
        while True:
            seen += 1
            nxt = outs[e]
            if not nxt:
                break
            e = nxt[0]
        return seen == len(comp)

    def path_chain(self, ci: int) -> tuple[Edge, ...]:
        comp = set(self.components[ci])
        ins = {e: [a for a, b in self.dd.arcs if b == e] for e in comp}
        outs = {e: [b for a, b in self.dd.arcs if a == e] for e in comp}
        (start,) = [e for e in comp if not ins[e]]
        chain = [start]
        while outs[chain[-1]]:
            chain.append(outs[chain[-1]][0])
        return tuple(chain)

    def component_is_nontrivial_scc(self, ci: int) -> bool:
        comp = self.components[ci]
        if len(comp) == 1:
            e = comp[0]
            return (e, e) in self.dd.witnesses  # impossible; a lone edge is trivial
        comp_set = set(comp)

        def succ(e):
            return [b for a, b in self.dd.arcs if a == e and b in comp_set]

        sccs = strongly_connected_components(comp, succ)
        return len(sccs) == 1


def component_index(d: Digraph, dd: DependencyDigraph | None = None) -> ComponentIndex:
    if dd is None:
        dd = dependency_digraph(d)
    components = _weak_components(dd)
    k_sets = tuple(
        tuple(sorted({v for e in comp for v in e})) for comp in components
    )
    # interval graph: components adjacent when K-sets intersect
    parent = list(range(len(components)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            if set(k_sets[i]) & set(k_sets[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(len(components)):
        groups.setdefault(find(i), []).append(i)
    xi_groups = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    k_of_xi = tuple(
        tuple(sorted({v for ci in g for v in k_sets[ci]})) for g in xi_groups
    )
    return ComponentIndex(dd, components, k_sets, xi_groups, k_of_xi)


def j_of(d: Digraph, v: int, ci: ComponentIndex | None = None) -> VertexSet:
    """J(v): {v} for whole vertices, else the K(xi) containing v."""
    if d.is_whole(v):
        return (v,)
    if ci is None:
        ci = component_index(d)
    xi = ci.xi_of_vertex(v)
    if xi is None:
        # non-whole vertex outside every K(xi): its missing edges never appear
        # in the dependency digraph vertex set only if there are none, which
        # cannot happen; guard anyway.
        return (v,)
    return ci.k_of_xi[xi]


@dataclass(frozen=True)
class GoodnessReport:
    is_good: bool
    verdicts: tuple[tuple[VertexSet, bool], ...]  # (K(xi), is_interval)


def goodness(d: Digraph, ci: ComponentIndex | None = None) -> GoodnessReport:
    if ci is None:
        ci = component_index(d)
    verdicts = tuple((k, d.is_interval(k)) for k in ci.k_of_xi)
    return GoodnessReport(all(ok for _, ok in verdicts), verdicts)


def is_good_digraph(d: Digraph) -> bool:
    """True when every K(xi) is an interval of d."""
    return goodness(d).is_good


@dataclass(frozen=True)
class StrongDependencyReport:
    """Disjoint-star missing graph + all components non-trivially strong => good."""

    hypothesis_holds: bool
    detail: str
    is_good: bool


def strong_dependency_check(d: Digraph) -> StrongDependencyReport:
    from .stars import decompose  # local import to avoid cycle at module load
    from .errors import NotDisjointStarsError

    try:
        decompose(d)
    except NotDisjointStarsError as exc:
        return StrongDependencyReport(False, f"not disjoint stars: {exc}", is_good_digraph(d))
    ci = component_index(d)
    bad = [
        ci.components[i]
        for i in range(len(ci.components))
        if not ci.component_is_nontrivial_scc(i)
    ]
    if bad:
        sample = [tuple(sorted(map(edge_pair, c))) for c in bad[:3]]
        return StrongDependencyReport(
            False,
            f"{len(bad)} dependency component(s) not non-trivial strongly connected, e.g. {sample}",
            is_good_digraph(d),
        )
    return StrongDependencyReport(True, "all dependency components non-trivial strongly connected", is_good_digraph(d))
