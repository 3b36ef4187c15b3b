"""Median orders, the feedback property, and the sedimentation process.

Forward weight of a linear order is the sum over forward arcs (u before v,
u -> v) of w(u) * w(v); with unit weights this is the number of forward
arcs.  A weighted median order maximizes it.  Under this arc weighting,
optimality of an order is equivalent (for positive weights) to the
interval feedback property:

    for all 1 <= i <= j <= n:
        w(N+_[i,j](v_i)) >= w(N-_[i,j](v_i))   and
        w(N-_[i,j](v_j)) >= w(N+_[i,j](v_j))

where neighborhood weights are vertex-set weights inside the interval.

The exact solver additionally optimizes an epsilon-augmented weight
(w + eps, compared lexicographically) so its output satisfies the feedback
property even when some vertex weights are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dependency import ComponentIndex, component_index, goodness, j_of
from .digraph import Digraph, VertexSet, Weighting, mask_to_set, resolve_weights
from .errors import ConsistencyError, ExactBoundExceededError, NotGoodDigraphError

LinearOrder = tuple[int, ...]

DEFAULT_EXACT_CAP = 15


def _check_order(d: Digraph, order: Sequence[int]) -> LinearOrder:
    order = tuple(order)
    if sorted(order) != list(range(d.n)):
        raise ValueError(f"order {order} is not a permutation of 0..{d.n - 1}")
    return order


def forward_weight(d: Digraph, order: Sequence[int], w: Weighting | None = None) -> Fraction:
    """Total weight of forward arcs; arc (u, v) weighs w(u) * w(v)."""
    order = _check_order(d, order)
    ws = resolve_weights(d, w)
    total = Fraction(0)
    for i, u in enumerate(order):
        for v in order[i + 1 :]:
            if d.has_arc(u, v):
                total += ws[u] * ws[v]
    return total


def _scaled_int_weights(ws: Weighting) -> list[int]:
    scale = math.lcm(*(f.denominator for f in ws.values)) if len(ws) else 1
    return [int(f * scale) for f in ws.values], scale


@dataclass(frozen=True)
class MedianResult:
    order: LinearOrder
    value: Fraction
    tie_score: int | None = None


def exact_median_order(
    d: Digraph,
    w: Weighting | None = None,
    tiebreak: Sequence[int] | None = None,
    cap: int = DEFAULT_EXACT_CAP,
) -> MedianResult:
    """Optimal order by subset DP; deterministic among ties.

    tiebreak, when given, is a set of vertices whose total (1-based) index
    is maximized among all maximum-weight orders: a single vertex realizes
    the max-index rule, several realize the max-index-sum rule.
    """
    n = d.n
    if n > cap:
        raise ExactBoundExceededError(f"exact solver capped at {cap} vertices, got {n}")
    ws = resolve_weights(d, w)
    if n == 0:
        return MedianResult((), Fraction(0), 0 if tiebreak is not None else None)
    weights, scale = _scaled_int_weights(ws)
    in_masks = [d.in_mask(v) for v in range(n)]
    tie_mask = 0
    if tiebreak:
        for v in tiebreak:
            d._check(v)
            tie_mask |= 1 << v

    size = 1 << n
    parent = [0] * size
    uniform = len(set(weights)) == 1 and weights[0] > 0

    if uniform and not tie_mask:
        # unit-like weights: value reduces to the forward arc count
        unit = weights[0]
        value = [0] * size
        for s in range(1, size):
            best = -1
            best_v = -1
            m = s
            while m:
                low = m & -m
                m ^= low
                v = low.bit_length() - 1
                cand = value[s ^ low] + (((s ^ low) & in_masks[v]).bit_count())
                if cand >= best:
                    best = cand
                    best_v = v
            value[s] = best
            parent[s] = best_v
        total = Fraction(value[size - 1] * unit * unit, scale * scale)
        tie_score = None
    else:
        zero = (0, 0, 0, 0)
        value = [zero] * size
        for s in range(1, size):
            pos = s.bit_count()
            best = None
            best_v = -1
            m = s
            while m:
                low = m & -m
                m ^= low
                v = low.bit_length() - 1
                prev = s ^ low
                inter = prev & in_masks[v]
                sw = 0
                cnt = 0
                mm = inter
                while mm:
                    l2 = mm & -mm
                    mm ^= l2
                    sw += weights[l2.bit_length() - 1]
                    cnt += 1
                pv = value[prev]
                cand = (
                    pv[0] + weights[v] * sw,
                    pv[1] + (pos if tie_mask >> v & 1 else 0),
                    pv[2] + sw + cnt * weights[v],
                    pv[3] + cnt,
                )
                if best is None or cand >= best:
                    best = cand
                    best_v = v
            value[s] = best
            parent[s] = best_v
        final = value[size - 1]
        total = Fraction(final[0], scale * scale)
        tie_score = final[1] if tie_mask else None

    order = []
    s = size - 1
    while s:
        v = parent[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return MedianResult(tuple(order), total, tie_score)


@dataclass(frozen=True)
class FeedbackReport:
    ok: bool
    violation: tuple[int, int] | None  # 1-based (i, j), first by (i asc, j desc)


def satisfies_feedback(
    d: Digraph, order: Sequence[int], w: Weighting | None = None
) -> FeedbackReport:
    """Check the interval feedback property of an order."""
    order = _check_order(d, order)
    ws = resolve_weights(d, w)
    n = len(order)
    violations = []
    for i in range(n):
        vi = order[i]
        out_s = Fraction(0)
        in_s = Fraction(0)
        for j in range(i, n):
            u = order[j]
            if d.has_arc(vi, u):
                out_s += ws[u]
            elif d.has_arc(u, vi):
                in_s += ws[u]
            if out_s < in_s:
                violations.append((i + 1, j + 1))
    for j in range(n):
        vj = order[j]
        out_s = Fraction(0)
        in_s = Fraction(0)
        for i in range(j, -1, -1):
            u = order[i]
            if d.has_arc(vj, u):
                out_s += ws[u]
            elif d.has_arc(u, vj):
                in_s += ws[u]
            if in_s < out_s:
                violations.append((i + 1, j + 1))
    if not violations:
        return FeedbackReport(True, None)
    first = min(violations, key=lambda ij: (ij[0], -ij[1]))
    return FeedbackReport(False, first)


def _eps_triple(d: Digraph, order: Sequence[int], weights: Sequence[int]):
    w0 = 0
    w1 = 0
    w2 = 0
    for i, u in enumerate(order):
        for v in order[i + 1 :]:
            if d.has_arc(u, v):
                w0 += weights[u] * weights[v]
                w1 += weights[u] + weights[v]
                w2 += 1
    return (w0, w1, w2)


def local_median_order(
    d: Digraph, init: Sequence[int], w: Weighting | None = None
) -> LinearOrder:
    """Repair feedback violations by reinsertion moves until none remain.

    Each move strictly increases the epsilon-augmented forward weight (and
    never decreases the plain forward weight), so the loop terminates and
    the result satisfies the feedback property.
    """
    order = list(_check_order(d, init))
    ws = resolve_weights(d, w)
    weights, _ = _scaled_int_weights(ws)
    current = _eps_triple(d, order, weights)
    while True:
        move = _first_violation_move(d, order, ws)
        if move is None:
            return tuple(order)
        kind, i, j = move
        if kind == "head":
            v = order.pop(i)
            order.insert(j, v)
        else:
            v = order.pop(j)
            order.insert(i, v)
        new = _eps_triple(d, order, weights)
        if not new > current:
            raise ConsistencyError("repair move failed to increase forward weight")
        current = new


def _first_violation_move(d: Digraph, order: Sequence[int], ws: Weighting):
    n = len(order)
    moves = []
    for i in range(n):
        vi = order[i]
        out_s = Fraction(0)
        in_s = Fraction(0)
        for j in range(i, n):
            u = order[j]
            if d.has_arc(vi, u):
                out_s += ws[u]
            elif d.has_arc(u, vi):
                in_s += ws[u]
            if out_s < in_s:
                moves.append((i, -j, "head"))
    for j in range(n):
        vj = order[j]
        out_s = Fraction(0)
        in_s = Fraction(0)
        for i in range(j, -1, -1):
            u = order[i]
            if d.has_arc(vj, u):
                out_s += ws[u]
            elif d.has_arc(u, vj):
                in_s += ws[u]
            if in_s < out_s:
                moves.append((i, -j, "tail"))
    if not moves:
        return None
    i, nj, kind = min(moves, key=lambda m: (m[0], m[1], m[2]))
    return kind, i, -nj


@dataclass(frozen=True)
class OrderAnalysis:
    """Feed-centric view of an order: good/bad split of the non-out vertices.

    A vertex v_j outside N+(feed) is good when some out-neighbor v_i of the
    feed with i <= j has an arc to v_j; good vertices land in N++(feed).
    """

    order: LinearOrder
    forward_weight: Fraction
    feed: int
    out_of_feed: VertexSet
    good: VertexSet
    bad: VertexSet


def analyze(d: Digraph, order: Sequence[int], w: Weighting | None = None) -> OrderAnalysis:
    order = _check_order(d, order)
    if not order:
        raise ValueError("cannot analyze an empty order")
    f = order[-1]
    out_mask = d.out_mask(f)
    reach = 0
    good = []
    bad = []
    for u in order[:-1]:
        if out_mask >> u & 1:
            reach |= d.out_mask(u)
        elif reach >> u & 1:
            good.append(u)
        else:
            bad.append(u)
    return OrderAnalysis(
        order=order,
        forward_weight=forward_weight(d, order, w),
        feed=f,
        out_of_feed=mask_to_set(out_mask),
        good=tuple(sorted(good)),
        bad=tuple(sorted(bad)),
    )


def sed(
    d: Digraph,
    order: Sequence[int],
    w: Weighting | None = None,
    ci: ComponentIndex | None = None,
) -> LinearOrder:
    """One sedimentation step of a good median order.

    With feed f and J = J(f): if w(N+(f) \\ J) < w(G_L \\ J) the order is
    returned unchanged (stable step); on equality the bad vertices outside J
    move to the front, J follows, and the rest keep their relative order.
    """
    order = _check_order(d, order)
    ws = resolve_weights(d, w)
    ana = analyze(d, order, ws)
    f = ana.feed
    jset = set(j_of(d, f, ci))
    out_side = ws.total(v for v in ana.out_of_feed if v not in jset)
    good_side = ws.total(v for v in ana.good if v not in jset)
    if out_side < good_side:
        return order
    if out_side > good_side:
        raise ConsistencyError(
            "w(N+(feed) \\ J) exceeds w(good \\ J); the input is not a good median order"
        )
    bad = set(ana.bad) - jset
    front = [v for v in order if v in bad]
    block = [v for v in order if v in jset]
    rest = [v for v in order if v not in bad and v not in jset]
    return tuple(front + block + rest)


@dataclass(frozen=True)
class SedOutcome:
    kind: str  # "stable" | "periodic" | "budget-exceeded"
    rank: int | None = None  # stable: first q with a strict inequality
    cycle_start: int | None = None
    cycle_length: int | None = None


@dataclass(frozen=True)
class SedimentationTrace:
    orders: tuple[LinearOrder, ...]
    outcome: SedOutcome

    @property
    def final(self) -> LinearOrder:
        return self.orders[-1]


def default_sediment_budget(n: int) -> int:
    return min(10 * math.factorial(max(n, 1)), 10**6)


def sediment(
    d: Digraph,
    order: Sequence[int],
    w: Weighting | None = None,
    budget: int | None = None,
) -> SedimentationTrace:
    """Iterate sed until a strict inequality (stable) or a repeat (periodic)."""
    order = _check_order(d, order)
    ws = resolve_weights(d, w)
    ci = component_index(d)
    if budget is None:
        budget = default_sediment_budget(d.n)
    orders = [order]
    seen = {order: 0}
    for q in range(budget):
        cur = orders[-1]
        nxt = sed(d, cur, ws, ci)
        if nxt == cur:
            ana = analyze(d, cur, ws)
            jset = set(j_of(d, ana.feed, ci))
            out_side = ws.total(v for v in ana.out_of_feed if v not in jset)
            good_side = ws.total(v for v in ana.good if v not in jset)
            if out_side < good_side:
                return SedimentationTrace(tuple(orders), SedOutcome("stable", rank=q))
            # equality with a fixed order: period 1
            return SedimentationTrace(
                tuple(orders), SedOutcome("periodic", cycle_start=q, cycle_length=1)
            )
        if nxt in seen:
            return SedimentationTrace(
                tuple(orders),
                SedOutcome(
                    "periodic", cycle_start=seen[nxt], cycle_length=q + 1 - seen[nxt]
                ),
            )
        seen[nxt] = q + 1
        orders.append(nxt)
    return SedimentationTrace(tuple(orders), SedOutcome("budget-exceeded"))


def good_median_order(
    d: Digraph,
    w: Weighting | None = None,
    exactness: str = "exact",
    cap: int = DEFAULT_EXACT_CAP,
) -> LinearOrder:
    """Median order of a good digraph with every K(xi) contiguous.

    Exact mode orders the quotient (one block per K(xi), singleton blocks for
    the remaining vertices) optimally and each block internally optimally;
    the result's forward weight is checked against the unconstrained optimum.
    Local mode applies local_median_order at both levels.
    """
    if exactness not in ("exact", "local"):
        raise ValueError(f"exactness must be 'exact' or 'local', got {exactness!r}")
    ws = resolve_weights(d, w)
    ci = component_index(d)
    report = goodness(d, ci)
    if not report.is_good:
        bad = [k for k, ok in report.verdicts if not ok]
        raise NotGoodDigraphError(f"K(xi) sets are not intervals: {bad}")
    in_block = set()
    blocks: list[VertexSet] = []
    for k in ci.k_of_xi:
        blocks.append(k)
        in_block.update(k)
    for v in range(d.n):
        if v not in in_block:
            blocks.append((v,))
    blocks.sort(key=lambda b: b[0])

    # quotient digraph over blocks (cross pairs are uniform for good digraphs)
    reps = [b[0] for b in blocks]
    q_arcs = []
    for i, p in enumerate(reps):
        for j, q in enumerate(reps):
            if i != j and d.has_arc(p, q):
                q_arcs.append((i, j))
    if len(q_arcs) != len(blocks) * (len(blocks) - 1) // 2:
        raise ConsistencyError("quotient of a good digraph should be a tournament")
    quotient = Digraph(len(blocks), q_arcs)
    q_weights = Weighting([ws.total(b) for b in blocks])

    if exactness == "exact":
        if len(blocks) > cap:
            raise ExactBoundExceededError(
                f"quotient has {len(blocks)} blocks, exact cap is {cap}"
            )
        block_order = exact_median_order(quotient, q_weights, cap=cap).order
    else:
        block_order = local_median_order(quotient, tuple(range(len(blocks))), q_weights)

    result: list[int] = []
    for bi in block_order:
        members = blocks[bi]
        if len(members) == 1:
            result.append(members[0])
            continue
        sub, mapping = d.induced(members)
        sub_w = Weighting([ws[v] for v in mapping])
        if exactness == "exact":
            if sub.n > cap:
                raise ExactBoundExceededError(
                    f"block of size {sub.n} exceeds exact cap {cap}"
                )
            inner = exact_median_order(sub, sub_w, cap=cap).order
        else:
            inner = local_median_order(sub, tuple(range(sub.n)), sub_w)
        result.extend(mapping[i] for i in inner)

    order = tuple(result)
    if exactness == "exact" and d.n <= cap:
        unconstrained = exact_median_order(d, ws, cap=cap).value
        if forward_weight(d, order, ws) != unconstrained:
            raise ConsistencyError(
                "contiguous-block optimum differs from the unconstrained optimum"
            )
    return order
