"""Brute-force reference implementations used to validate the fast paths."""

from fractions import Fraction
from itertools import permutations

from seymour.digraph import Digraph, Weighting, resolve_weights


def brute_second_out(d: Digraph, v: int) -> tuple[int, ...]:
    """Vertices at directed distance exactly two from v, by BFS."""
    first = set(d.neighbors(v, "out"))
    second = set()
    for u in first:
        second.update(d.neighbors(u, "out"))
    return tuple(sorted(second - first - {v}))


def brute_forward_weight(d: Digraph, order, w: Weighting | None = None) -> Fraction:
    ws = resolve_weights(d, w)
    pos = {v: i for i, v in enumerate(order)}
    total = Fraction(0)
    for u, v in d.arcs:
        if pos[u] < pos[v]:
            total += ws[u] * ws[v]
    return total


def brute_median_value(d: Digraph, w: Weighting | None = None) -> Fraction:
    return max(
        brute_forward_weight(d, order, w) for order in permutations(range(d.n))
    )


def brute_has_snp(d: Digraph, v: int, w: Weighting | None = None) -> bool:
    ws = resolve_weights(d, w)
    first = d.neighbors(v, "out")
    second = brute_second_out(d, v)
    return sum(ws[u] for u in first) <= sum(ws[u] for u in second)


def brute_snp_set(d: Digraph, w: Weighting | None = None) -> tuple[int, ...]:
    return tuple(v for v in range(d.n) if brute_has_snp(d, v, w))


def brute_convenient(d: Digraph, a: int, b: int) -> bool:
    """Definition check: (a, b) convenient iff every in-neighbor of a
    reaches b within two steps."""
    for v in range(d.n):
        if v in (a, b):
            continue
        if d.has_arc(v, a):
            if b not in d.neighbors(v, "out") and b not in brute_second_out(d, v):
                return False
    return True


def brute_is_king(t: Digraph, v: int) -> bool:
    reach = {v} | set(t.neighbors(v, "out")) | set(brute_second_out(t, v))
    return len(reach) == t.n
