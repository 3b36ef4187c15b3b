"""SNP oracle, king tests, hypothesis gates, and witness procedures.

Every procedure follows the same shape: check the hypotheses of its theorem
(raising HypothesisFailedError when they do not hold), run the constructive
argument, and return an SnpCertificate whose witnesses have been re-checked
against the brute-force second-neighborhood oracle.  A witness that fails the
oracle raises ConsistencyError: a bug in the construction must never produce
a quietly wrong certificate.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

from .digraph import Digraph, Weighting, resolve_weights, VertexSet
from .stars import (
    Edge,
    Star,
    StarDecomposition,
    canonical_stars,
    center_assignments,
    convenient_orientations,
    decompose,
    edge,
    edge_pair,
    orient_toward_centers,
)
from .dependency import (
    ComponentIndex,
    DependencyDigraph,
    component_index,
    dependency_digraph,
    goodness,
    j_of,
)
from .orders import (
    DEFAULT_EXACT_CAP,
    analyze,
    exact_median_order,
    good_median_order,
    sediment,
)
from .errors import (
    ConsistencyError,
    GoodnessViolationError,
    HypothesisFailedError,
    NotDisjointStarsError,
)


# ---------------------------------------------------------------------------
# oracle


def has_snp(d: Digraph, v: int, w: Weighting | None = None) -> bool:
    """True when the second out-neighborhood is at least as heavy as the first."""
    if w is None:
        return d.degree(v) <= d.second_degree(v)
    ws = resolve_weights(d, w)
    return ws.total(d.neighbors(v)) <= ws.total(d.second_neighborhood(v))


def snp_set(d: Digraph, w: Weighting | None = None) -> VertexSet:
    return tuple(v for v in range(d.n) if has_snp(d, v, w))


def is_king(t: Digraph, v: int) -> bool:
    """In a tournament: every other vertex is reached in at most two steps."""
    if not t.is_tournament():
        raise ValueError("is_king is defined for tournaments")
    reach = (1 << v) | t.out_mask(v) | t.second_mask(v)
    return reach == (1 << t.n) - 1


def all_kings(t: Digraph) -> bool:
    return all(is_king(t, v) for v in range(t.n))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class OracleVerdict:
    vertex: int
    out_degree: int
    second_degree: int

    @property
    def ok(self) -> bool:
        return self.out_degree <= self.second_degree


@dataclass(frozen=True)
class HypothesisCheck:
    clause: str
    ok: bool
    evidence: str = ""


@dataclass(frozen=True)
class GateResult:
    theorem_id: str
    applicable: bool
    checks: tuple[HypothesisCheck, ...]

    def failing(self) -> tuple[HypothesisCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


@dataclass(frozen=True)
class SnpCertificate:
    theorem_id: str
    hypotheses: tuple[HypothesisCheck, ...]
    witnesses: VertexSet
    verdicts: tuple[OracleVerdict, ...]
    trace: tuple[str, ...] = ()
    findings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return bool(self.witnesses) and all(v.ok for v in self.verdicts)


def _certify(
    d: Digraph,
    theorem_id: str,
    gate: GateResult,
    witnesses: Sequence[int],
    trace: Sequence[str],
    findings: Sequence[str] = (),
) -> SnpCertificate:
    verdicts = tuple(
        OracleVerdict(w, d.degree(w), d.second_degree(w)) for w in witnesses
    )
    for v in verdicts:
        if not v.ok:
            raise ConsistencyError(
                f"{theorem_id}: witness {v.vertex} fails the oracle "
                f"(d+={v.out_degree}, d++={v.second_degree})"
            )
    return SnpCertificate(
        theorem_id=theorem_id,
        hypotheses=gate.checks,
        witnesses=tuple(witnesses),
        verdicts=verdicts,
        trace=tuple(trace),
        findings=tuple(findings),
    )


# ---------------------------------------------------------------------------
# hypothesis gates

THEOREM_IDS = (
    "havet-thomasse",
    "kings-stars",
    "star+matching",
    "matching-F-empty-no-sink",
    "single-star",
    "two-stars",
    "two-stars-two",
    "three-stars",
    "three-stars-two",
)


def _decomposition(d: Digraph):
    try:
        return decompose(d), None
    except NotDisjointStarsError as exc:
        return None, str(exc)


def _stars_check(dec, err) -> HypothesisCheck:
    if dec is None:
        return HypothesisCheck("missing graph is disjoint stars", False, err)
    return HypothesisCheck(
        "missing graph is disjoint stars",
        True,
        f"{len(dec.stars)} star(s), {len(dec.matching)} single edge(s)",
    )


def _delta_check(clause: str, value: int | None, required: bool = True) -> HypothesisCheck:
    if value is None:
        return HypothesisCheck(clause, True, "no missing edges: vacuous")
    return HypothesisCheck(clause, value > 0, f"value {value}")


def _no_sink_check(d: Digraph) -> HypothesisCheck:
    sinks = d.sinks()
    return HypothesisCheck(
        "no sink", not sinks, f"sinks {list(sinks)}" if sinks else "no sink"
    )


def _star_count_check(dec, count: int) -> HypothesisCheck:
    ok = dec is not None and dec.component_count() == count
    return HypothesisCheck(
        f"missing graph is exactly {count} disjoint star(s)",
        ok,
        "" if dec is None else f"{dec.component_count()} component(s)",
    )


def gate_havet_thomasse(d: Digraph) -> GateResult:
    checks = (
        HypothesisCheck(
            "digraph is a tournament",
            d.is_tournament(),
            f"{len(d.missing_pairs())} missing pair(s)",
        ),
    )
    return GateResult("havet-thomasse", all(c.ok for c in checks), checks)


def gate_kings_stars(d: Digraph, dd: DependencyDigraph | None = None) -> GateResult:
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err)]
    if dec is None:
        return GateResult("kings-stars", False, tuple(checks))
    if dd is None:
        dd = dependency_digraph(d)
    kings_ok = False
    evidence = "no missing edges: vacuous"
    if dec.component_count() == 0:
        kings_ok = True
    else:
        for stars in center_assignments(dec):
            centers = [s.center for s in stars]
            sub, _ = d.induced(centers)
            if sub.is_tournament() and all_kings(sub):
                kings_ok = True
                evidence = f"centers {centers} induce an all-kings tournament"
                break
        else:
            evidence = "no center assignment induces an all-kings tournament"
    checks.append(HypothesisCheck("centers induce an all-kings tournament", kings_ok, evidence))
    checks.append(_delta_check("delta-_Delta > 0", dd.min_in_degree))
    return GateResult("kings-stars", all(c.ok for c in checks), tuple(checks))


def gate_star_matching(d: Digraph, dd: DependencyDigraph | None = None) -> GateResult:
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err)]
    shape_ok = dec is not None and len(dec.stars) <= 1
    checks.append(
        HypothesisCheck(
            "missing graph is one star plus a matching",
            shape_ok,
            "" if dec is None else f"{len(dec.stars)} multi-leaf star(s)",
        )
    )
    if not shape_ok:
        return GateResult("star+matching", False, tuple(checks))
    if dd is None:
        dd = dependency_digraph(d)
    ci = component_index(d, dd)
    star_edges = set(dec.stars[0].edges) if dec.stars else set()
    bad = []
    for comp in ci.components:
        if not star_edges & set(comp):
            continue
        bad.extend(
            e for e in comp if dd.out_degree(e) == 0 or dd.in_degree(e) == 0
        )
    checks.append(
        HypothesisCheck(
            "components holding a star edge have min in/out degree > 0",
            not bad,
            f"degree-deficient edges {sorted(map(edge_pair, bad))}" if bad else "",
        )
    )
    return GateResult("star+matching", all(c.ok for c in checks), tuple(checks))


def _path_component_ids(ci: ComponentIndex) -> list[int]:
    return [i for i in range(len(ci.components)) if ci.component_is_path(i)]


def gate_matching_f_empty(d: Digraph, ci: ComponentIndex | None = None) -> GateResult:
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err)]
    matching_ok = dec is not None and not dec.stars
    checks.append(
        HypothesisCheck(
            "missing graph is a matching",
            matching_ok,
            "" if dec is None else f"{len(dec.stars)} multi-leaf star(s)",
        )
    )
    if not matching_ok:
        return GateResult("matching-F-empty-no-sink", False, tuple(checks))
    if ci is None:
        ci = component_index(d)
    paths = _path_component_ids(ci)
    checks.append(
        HypothesisCheck(
            "F is empty (no path component in the dependency digraph)",
            not paths,
            f"{len(paths)} path component(s)" if paths else "all components are cycles",
        )
    )
    checks.append(_no_sink_check(d))
    return GateResult("matching-F-empty-no-sink", all(c.ok for c in checks), tuple(checks))


def gate_single_star(d: Digraph) -> GateResult:
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err)]
    ok = dec is not None and dec.component_count() <= 1
    checks.append(
        HypothesisCheck(
            "missing graph is a single star (possibly empty)",
            ok,
            "" if dec is None else f"{dec.component_count()} component(s)",
        )
    )
    return GateResult("single-star", all(c.ok for c in checks), tuple(checks))


def gate_two_stars(d: Digraph, dd: DependencyDigraph | None = None) -> GateResult:
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err), _star_count_check(dec, 2)]
    if dec is None or dec.component_count() != 2:
        return GateResult("two-stars", False, tuple(checks))
    if dd is None:
        dd = dependency_digraph(d)
    checks.append(_delta_check("delta_Delta > 0", dd.min_degree))
    return GateResult("two-stars", all(c.ok for c in checks), tuple(checks))


def gate_two_stars_two(d: Digraph, dd: DependencyDigraph | None = None) -> GateResult:
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err), _star_count_check(dec, 2)]
    if dec is None or dec.component_count() != 2:
        return GateResult("two-stars-two", False, tuple(checks))
    if dd is None:
        dd = dependency_digraph(d)
    checks.append(_delta_check("delta+_Delta > 0", dd.min_out_degree))
    checks.append(_delta_check("delta-_Delta > 0", dd.min_in_degree))
    checks.append(_no_sink_check(d))
    return GateResult("two-stars-two", all(c.ok for c in checks), tuple(checks))


def _directed_triangle_roles(d: Digraph, dec: StarDecomposition) -> tuple[Star, Star, Star] | None:
    """A (S_x, S_y, S_z) reading with x -> y -> z -> x, if one exists."""
    for stars in center_assignments(dec):
        s1, s2, s3 = sorted(stars, key=lambda s: s.center)
        c1, c2, c3 = s1.center, s2.center, s3.center
        if d.has_arc(c1, c2) and d.has_arc(c2, c3) and d.has_arc(c3, c1):
            return (s1, s2, s3)
        if d.has_arc(c1, c3) and d.has_arc(c3, c2) and d.has_arc(c2, c1):
            return (s1, s3, s2)
    return None


def _gate_three_common(d: Digraph, theorem_id: str, dd: DependencyDigraph | None):
    dec, err = _decomposition(d)
    checks = [_stars_check(dec, err), _star_count_check(dec, 3)]
    if dec is None or dec.component_count() != 3:
        return None, None, checks
    roles = _directed_triangle_roles(d, dec)
    checks.append(
        HypothesisCheck(
            "centers form a directed triangle",
            roles is not None,
            "" if roles else "every center reading induces a transitive triangle",
        )
    )
    if dd is None:
        dd = dependency_digraph(d)
    return roles, dd, checks


def gate_three_stars(d: Digraph, dd: DependencyDigraph | None = None) -> GateResult:
    roles, dd, checks = _gate_three_common(d, "three-stars", dd)
    if dd is not None:
        checks.append(_delta_check("delta_Delta > 0", dd.min_degree))
    return GateResult("three-stars", all(c.ok for c in checks), tuple(checks))


def gate_three_stars_two(d: Digraph, dd: DependencyDigraph | None = None) -> GateResult:
    roles, dd, checks = _gate_three_common(d, "three-stars-two", dd)
    if dd is not None:
        checks.append(_delta_check("delta+_Delta > 0", dd.min_out_degree))
        checks.append(_delta_check("delta-_Delta > 0", dd.min_in_degree))
    checks.append(_no_sink_check(d))
    return GateResult("three-stars-two", all(c.ok for c in checks), tuple(checks))


_GATES: dict[str, Callable[[Digraph], GateResult]] = {
    "havet-thomasse": gate_havet_thomasse,
    "kings-stars": gate_kings_stars,
    "star+matching": gate_star_matching,
    "matching-F-empty-no-sink": gate_matching_f_empty,
    "single-star": gate_single_star,
    "two-stars": gate_two_stars,
    "two-stars-two": gate_two_stars_two,
    "three-stars": gate_three_stars,
    "three-stars-two": gate_three_stars_two,
}


def check_hypotheses(d: Digraph) -> tuple[GateResult, ...]:
    """Every theorem gate evaluated on one digraph, in THEOREM_IDS order."""
    return tuple(_GATES[tid](d) for tid in THEOREM_IDS)


def _require(gate: GateResult) -> GateResult:
    if not gate.applicable:
        first = gate.failing()[0]
        raise HypothesisFailedError(gate.theorem_id, first.clause, first.evidence)
    return gate


# ---------------------------------------------------------------------------
# role helpers


def _two_star_claim_holds(d: Digraph, x: int, a_set, y: int, b_set) -> bool:
    return all(d.has_arc(y, a) for a in a_set) and all(d.has_arc(b, x) for b in b_set)


def _two_star_roles(d: Digraph, dec: StarDecomposition, prefer_claim: bool = False):
    """(x, A, y, B) with x -> y; optionally prefer a claim-satisfying reading."""
    best = None
    for stars in center_assignments(dec):
        s1, s2 = stars
        if d.has_arc(s1.center, s2.center):
            sx, sy = s1, s2
        else:
            sx, sy = s2, s1
        roles = (sx.center, sx.leaves, sy.center, sy.leaves)
        if best is None:
            best = roles
        if not prefer_claim or _two_star_claim_holds(d, *roles):
            return roles
    return best


def _three_star_claim_holds(d, x, a_set, y, b_set, z, c_set) -> bool:
    return (
        all(d.has_arc(b, x) for b in b_set)
        and all(d.has_arc(x, c) for c in c_set)
        and all(d.has_arc(c, y) for c in c_set)
        and all(d.has_arc(y, a) for a in a_set)
        and all(d.has_arc(a, z) for a in a_set)
        and all(d.has_arc(z, b) for b in b_set)
    )


def _three_star_roles(d: Digraph, dec: StarDecomposition, prefer_claim: bool = False):
    """(x, A, y, B, z, C) with x -> y -> z -> x."""
    best = None
    for stars in center_assignments(dec):
        s1, s2, s3 = sorted(stars, key=lambda s: s.center)
        for sx, sy, sz in ((s1, s2, s3), (s1, s3, s2)):
            if not (
                d.has_arc(sx.center, sy.center)
                and d.has_arc(sy.center, sz.center)
                and d.has_arc(sz.center, sx.center)
            ):
                continue
            roles = (sx.center, sx.leaves, sy.center, sy.leaves, sz.center, sz.leaves)
            if best is None:
                best = roles
            if not prefer_claim or _three_star_claim_holds(d, *roles):
                return roles
    return best


def _role_with_tail(d: Digraph, e1: Edge, e2: Edge, tail: int) -> tuple[int, int] | None:
    """Roles (x2, y2) of e2 for which e1 loses to e2 with x1 = tail."""
    y1 = next(iter(e1 - {tail}))
    reach_tail = d.out_mask(tail) | d.second_mask(tail)
    reach_y1 = d.out_mask(y1) | d.second_mask(y1)
    r, s = edge_pair(e2)
    for x2, y2 in ((r, s), (s, r)):
        if (
            d.has_arc(tail, x2)
            and not reach_tail >> y2 & 1
            and d.has_arc(y1, y2)
            and not reach_y1 >> x2 & 1
        ):
            return (x2, y2)
    return None


def _next_roles(d: Digraph, e1: Edge, e2: Edge, u: int, v: int) -> tuple[int, int] | None:
    """Continue the (u, v) role labeling of e1 along the arc e1 -> e2."""
    r = _role_with_tail(d, e1, e2, u)
    if r is not None:
        return r
    r = _role_with_tail(d, e1, e2, v)
    if r is not None:
        return (r[1], r[0])
    return None


# ---------------------------------------------------------------------------
# orientation helpers


def _orient_missing_edges(d: Digraph, stars: Sequence[Star], dd: DependencyDigraph):
    """Good edges conveniently, every other edge toward its star center.

    Returns (arcs, notes).  Good edges (dependency in-degree zero) always
    admit a convenient orientation; its absence is a consistency failure.
    """
    center_of = {}
    for s in stars:
        for a in s.leaves:
            center_of[edge(a, s.center)] = s.center
    arcs = []
    notes = []
    for e in dd.edges:
        if dd.in_degree(e) == 0:
            cos = convenient_orientations(d, e)
            if not cos:
                raise ConsistencyError(
                    f"good edge {edge_pair(e)} has no convenient orientation"
                )
            arcs.append(cos[0])
            notes.append(f"{edge_pair(e)} convenient {cos[0]}")
        else:
            c = center_of[e]
            leaf = next(iter(e - {c}))
            arcs.append((leaf, c))
            notes.append(f"{edge_pair(e)} toward center {c}")
    return arcs, notes


# ---------------------------------------------------------------------------
# the shared sedimentation argument for second witnesses

CandidateFn = Callable[[VertexSet, int], list[int]]


def _default_candidates(jset: VertexSet, feed: int) -> list[int]:
    return [feed] + [v for v in jset if v != feed]


def _second_witness(
    d: Digraph,
    order: Sequence[int],
    first: int,
    candidates: CandidateFn = _default_candidates,
    budget: int | None = None,
) -> tuple[int, list[str]]:
    """Second SNP vertex from sedimenting the prefix of a good median order.

    order is a good median order of d whose feed (the first witness) is a
    whole vertex.  The prefix is sedimented inside d minus the feed; the
    stable branch uses the settled order, the periodic branch an order in
    the cycle where some out-neighbor of the feed is bad.  candidates maps
    (J(feed'), feed') of the chosen order to an ordered list of contenders;
    the first oracle-verified one distinct from `first` wins.
    """
    trace: list[str] = []
    prefix = tuple(v for v in order if v != first)
    sub, mapping = d.induced(prefix)
    inv = {v: i for i, v in enumerate(mapping)}
    sub_order = tuple(inv[v] for v in prefix)
    run = sediment(sub, sub_order, budget=budget)
    outcome = run.outcome
    if outcome.kind == "stable":
        chosen = run.final
        trace.append(f"prefix stable after {outcome.rank} step(s)")
    elif outcome.kind == "periodic":
        cycle = run.orders[outcome.cycle_start :]
        outs = [u for u in d.neighbors(first) if u in inv]
        chosen = None
        for q, cand in enumerate(cycle):
            bad = set(analyze(sub, cand).bad)
            hit = [u for u in outs if inv[u] in bad]
            if hit:
                chosen = cand
                trace.append(
                    f"prefix periodic (cycle length {outcome.cycle_length}); "
                    f"out-neighbor {hit[0]} of {first} is bad at cycle step {q}"
                )
                break
        if chosen is None:
            raise ConsistencyError(
                "periodic sedimentation cycle has no order where an "
                f"out-neighbor of {first} is bad"
            )
    else:
        raise ConsistencyError(f"sedimentation exhausted its budget on {sub.n} vertices")
    feed_sub = chosen[-1]
    feed_orig = mapping[feed_sub]
    jset = tuple(mapping[i] for i in j_of(sub, feed_sub))
    for w in candidates(jset, feed_orig):
        if w != first and has_snp(d, w):
            trace.append(f"second witness {w} from J {list(jset)}")
            return w, trace
    raise ConsistencyError(
        f"no oracle-verified second witness among candidates in J {list(jset)}"
    )


def _tournament_witnesses(t: Digraph, cap: int) -> tuple[list[int], list[str]]:
    """One or (without a sink) two SNP vertices of a tournament."""
    res = exact_median_order(t, cap=cap)
    feed = res.order[-1]
    trace = [f"median order {list(res.order)}"]
    if t.has_sink():
        return [feed], trace
    second, extra = _second_witness(t, res.order, feed)
    return [feed, second], trace + extra


# ---------------------------------------------------------------------------
# witness procedures


def havet_thomasse_witnesses(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    """Feed of an exact median order; a second vertex when there is no sink."""
    gate = _require(gate_havet_thomasse(d))
    witnesses, trace = _tournament_witnesses(d, cap)
    if d.has_sink():
        trace.append("tournament has a sink: single witness")
    return _certify(d, "havet-thomasse", gate, witnesses, trace)


def kings_stars_witness(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    """Orient toward the all-kings centers; the median-order feed is the witness."""
    dd = dependency_digraph(d)
    gate = _require(gate_kings_stars(d, dd))
    dec = decompose(d)
    chosen = None
    for stars in center_assignments(dec):
        centers = [s.center for s in stars]
        sub, _ = d.induced(centers)
        if sub.is_tournament() and all_kings(sub):
            chosen = stars
            break
    if chosen is None and dec.component_count() == 0:
        chosen = ()
    plan = orient_toward_centers(tuple(chosen))
    t = d.complete(plan.arcs)
    res = exact_median_order(t, cap=cap)
    f = res.order[-1]
    trace = [f"median order {list(res.order)}"]
    centers = {s.center for s in chosen}
    leaves = {a: s.center for s in chosen for a in s.leaves}
    if d.is_whole(f):
        case = "whole-feed"
    elif f in centers:
        case = "center-feed"
    else:
        x = leaves[f]
        if dd.out_degree(edge(f, x)) > 0:
            case = "leaf-feed-losing"
        else:
            case = "leaf-feed-reoriented"
            trace.append(f"edge ({f}, {x}) loses to nothing; reoriented toward {f}")
    trace.append(f"case {case}")
    return _certify(d, "kings-stars", gate, [f], trace)


def single_star_witness(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    """Orient the star toward its center, maximize the center's index, take the feed."""
    gate = _require(gate_single_star(d))
    dec = decompose(d)
    if dec.component_count() == 0:
        res = exact_median_order(d, cap=cap)
        f = res.order[-1]
        return _certify(
            d, "single-star", gate, [f],
            [f"median order {list(res.order)}", "case tournament"],
        )
    star = canonical_stars(dec)[0]
    x = star.center
    plan = orient_toward_centers((star,))
    t = d.complete(plan.arcs)
    res = exact_median_order(t, tiebreak=[x], cap=cap)
    f = res.order[-1]
    trace = [f"median order {list(res.order)} (index of {x} maximal)"]
    findings = []
    if f == x:
        case = "center-feed"
    elif d.is_whole(f):
        case = "whole-feed"
    else:
        case = "leaf-feed-reoriented"
        ana = analyze(t, res.order)
        if x in ana.good and t.degree(f) == len(ana.good):
            findings.append(
                "sed(L) would raise the center's index past an index-maximal "
                "order; exact solver invariant violated"
            )
    trace.append(f"case {case}")
    return _certify(d, "single-star", gate, [f], trace, findings)


def _build_f_arcs(d: Digraph, ci: ComponentIndex) -> tuple[list[tuple[int, int]], list[str]]:
    """Orientations of the path components of the dependency digraph.

    Each path chain is role-labeled from its first (good) edge; the whole
    chain is oriented the way the first edge's convenient orientation points.
    """
    arcs: list[tuple[int, int]] = []
    notes: list[str] = []
    for i in _path_component_ids(ci):
        chain = ci.path_chain(i)
        first = chain[0]
        # role labels along the chain
        if len(chain) == 1:
            u, v = edge_pair(first)
            labels = [(u, v)]
        else:
            w = ci.dd.witnesses[(chain[0], chain[1])]
            labels = [(w.x1, w.y1), (w.x2, w.y2)]
            for k in range(1, len(chain) - 1):
                nxt = _next_roles(d, chain[k], chain[k + 1], *labels[k])
                if nxt is None:
                    raise ConsistencyError(
                        f"role labeling breaks between {edge_pair(chain[k])} "
                        f"and {edge_pair(chain[k + 1])}"
                    )
                labels.append(nxt)
        a1, b1 = labels[0]
        cos = convenient_orientations(d, first)
        if not cos:
            raise ConsistencyError(
                f"path start {edge_pair(first)} has no convenient orientation"
            )
        if (a1, b1) in cos:
            arcs.extend(labels)
            notes.append(f"path {[edge_pair(e) for e in chain]} oriented a->b")
        else:
            arcs.extend((b, a) for a, b in labels)
            notes.append(f"path {[edge_pair(e) for e in chain]} oriented b->a")
    return arcs, notes


def _star_interval_witness(
    d: Digraph, ci: ComponentIndex, star: Star, kset: VertexSet, cap: int
) -> tuple[int, list[str], list[str]]:
    """SNP vertex of D[K(xi)]: orient star edges inward, matching edges along
    shortest dependency paths, and take the feed of a center-index-maximal
    median order of the completed tournament."""
    x = star.center
    dd = ci.dd
    roles: dict[Edge, tuple[int, int]] = {}
    queue: list[Edge] = []
    for a in star.leaves:
        e = edge(a, x)
        roles[e] = (a, x)
        queue.append(e)
    # breadth-first role propagation along the losing relation
    head = 0
    while head < len(queue):
        e = queue[head]
        head += 1
        for e2 in dd.successors(e):
            if e2 in roles:
                continue
            nxt = _next_roles(d, e, e2, *roles[e])
            if nxt is None:
                continue
            roles[e2] = nxt
            queue.append(e2)
    kmask = set(kset)
    sub, mapping = d.induced(kset)
    inv = {v: i for i, v in enumerate(mapping)}
    orientation = []
    for u, v in sub.missing_pairs():
        e = edge(mapping[u], mapping[v])
        if e not in roles:
            raise ConsistencyError(
                f"missing edge {edge_pair(e)} in K(xi) unreachable from the star"
            )
        un, vn = roles[e]
        orientation.append((inv[un], inv[vn]))
    t = sub.complete(orientation)
    res = exact_median_order(t, tiebreak=[inv[x]], cap=cap)
    g = mapping[res.order[-1]]
    trace = [
        f"K(xi) {list(kset)}; interval median order "
        f"{[mapping[i] for i in res.order]} (index of {x} maximal)"
    ]
    findings: list[str] = []
    ana = analyze(t, res.order)
    if g != x and inv[x] in ana.good and t.degree(res.order[-1]) == len(ana.good):
        findings.append(
            "interval feed could sediment the center higher despite an "
            "index-maximal order; exact solver invariant violated"
        )
    return g, trace, findings


def star_matching_witness(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    """Add F along path components, take a good median order of D+F, and pick
    the witness inside the feed's interval."""
    gate = _require(gate_star_matching(d))
    dec = decompose(d)
    if dec.component_count() == 0:
        res = exact_median_order(d, cap=cap)
        f = res.order[-1]
        return _certify(
            d, "star+matching", gate, [f],
            [f"median order {list(res.order)}", "case tournament"],
        )
    ci = component_index(d)
    f_arcs, trace = _build_f_arcs(d, ci)
    d_prime = d.with_arcs(add=f_arcs)
    trace.append(f"F has {len(f_arcs)} arc(s)")
    ci_prime = component_index(d_prime)
    report = goodness(d_prime, ci_prime)
    if not report.is_good:
        bad = [k for k, ok in report.verdicts if not ok]
        raise GoodnessViolationError(f"D+F is not good: non-interval K(xi) {bad}")
    order = good_median_order(d_prime, cap=cap)
    f = order[-1]
    trace.append(f"good median order of D+F: {list(order)}")
    findings: list[str] = []
    if d_prime.is_whole(f):
        case = "whole-feed"
        witness = f
    else:
        jset = j_of(d_prime, f, ci_prime)
        star = dec.stars[0] if dec.stars else None
        if star is not None and star.center in jset:
            case = "star-interval"
            witness, extra, findings = _star_interval_witness(d, ci, star, jset, cap)
            trace.extend(extra)
        else:
            case = "cycle-interval"
            witness = f
    trace.append(f"case {case}")
    return _certify(d, "star+matching", gate, [witness], trace, findings)


def matching_two_witnesses(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    """Two SNP vertices of a sinkless digraph missing a matching with F empty."""
    ci = component_index(d)
    gate = _require(gate_matching_f_empty(d, ci))
    order = good_median_order(d, cap=cap)
    xn = order[-1]
    trace = [f"good median order {list(order)}"]
    jset = j_of(d, xn, ci)
    if len(jset) > 1:
        trace.append(f"feed interval K {list(jset)}: every member qualifies")
        found = [v for v in (xn, *[u for u in jset if u != xn]) if has_snp(d, v)]
        if len(found) < 2:
            raise ConsistencyError(
                f"interval {list(jset)} yields fewer than two oracle-verified vertices"
            )
        return _certify(d, "matching-F-empty-no-sink", gate, found[:2], trace)
    second, extra = _second_witness(d, order, xn)
    return _certify(d, "matching-F-empty-no-sink", gate, [xn, second], trace + extra)


def two_stars_witness(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    """Median order maximizing the index of the dominant center; feed wins."""
    dd = dependency_digraph(d)
    gate = _require(gate_two_stars(d, dd))
    dec = decompose(d)
    x, a_set, y, b_set = _two_star_roles(d, dec)
    stars = (Star(x, a_set), Star(y, b_set))
    arcs, notes = _orient_missing_edges(d, stars, dd)
    t = d.complete(arcs)
    res = exact_median_order(t, tiebreak=[x], cap=cap)
    f = res.order[-1]
    trace = notes + [f"median order {list(res.order)} (index of {x} maximal)"]
    if d.is_whole(f):
        case = "whole-feed"
    elif f == x:
        case = "center-x"
    elif f == y:
        case = "center-y"
    elif f in b_set:
        case = "leaf-B"
    else:
        case = "leaf-A"
    trace.append(f"case {case}")
    return _certify(d, "two-stars", gate, [f], trace)


def _two_star_interval_candidates(d: Digraph, x: int, y: int, cap: int) -> CandidateFn:
    def candidates(jset: VertexSet, feed: int) -> list[int]:
        cands = []
        if x in jset and y in jset:
            cands.append(x)
            rest = [v for v in jset if v not in (x, y)]
            if rest:
                sub, mapping = d.induced(rest)
                if sub.is_tournament():
                    g = exact_median_order(sub, cap=cap).order[-1]
                    cands.append(mapping[g])
        for v in (feed, *jset):
            if v not in cands:
                cands.append(v)
        return cands

    return candidates


def two_stars_two_witnesses(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    dd = dependency_digraph(d)
    gate = _require(gate_two_stars_two(d, dd))
    dec = decompose(d)
    x, a_set, y, b_set = _two_star_roles(d, dec, prefer_claim=True)
    if not _two_star_claim_holds(d, x, a_set, y, b_set):
        raise ConsistencyError(
            "two-stars-two: positive dependency degrees must force "
            f"{y}->A and B->{x}, but they do not"
        )
    trace = [f"roles x={x} A={list(a_set)} y={y} B={list(b_set)}"]
    kset = tuple(sorted({x, y, *a_set, *b_set}))
    inner = _two_star_interval_candidates(d, x, y, cap)
    if len(kset) == d.n:
        trace.append("K = V(D): center + sub-tournament witness")
        rest = [v for v in range(d.n) if v not in (x, y)]
        sub, mapping = d.induced(rest)
        g = mapping[exact_median_order(sub, cap=cap).order[-1]]
        found = [v for v in (x, g) if has_snp(d, v)]
        for v in range(d.n):
            if len(found) >= 2:
                break
            if v not in found and has_snp(d, v):
                found.append(v)
        if len(found) < 2:
            raise ConsistencyError("two-stars-two: K = V branch found fewer than 2 witnesses")
        return _certify(d, "two-stars-two", gate, found[:2], trace)
    report = goodness(d)
    if not report.is_good:
        bad = [k for k, ok in report.verdicts if not ok]
        raise GoodnessViolationError(f"two-stars-two: D should be good, K(xi) {bad}")
    order = good_median_order(d, cap=cap)
    xn = order[-1]
    trace.append(f"good median order {list(order)}")
    jset = j_of(d, xn)
    if len(jset) > 1:
        trace.append(f"feed interval K {list(jset)}")
        found = []
        for v in inner(jset, xn):
            if v not in found and has_snp(d, v):
                found.append(v)
            if len(found) >= 2:
                break
        if len(found) < 2:
            raise ConsistencyError("two-stars-two: interval branch found fewer than 2 witnesses")
        return _certify(d, "two-stars-two", gate, found, trace)
    second, extra = _second_witness(d, order, xn, inner)
    return _certify(d, "two-stars-two", gate, [xn, second], trace + extra)


def _three_star_shape_check(d: Digraph, dd: DependencyDigraph, x, a_set, y, b_set, z, c_set):
    """Arcs of the dependency digraph may only run S_x->S_y->S_z->S_x."""
    star_of = {}
    for c, leaves in ((x, a_set), (y, b_set), (z, c_set)):
        for a in leaves:
            star_of[edge(a, c)] = c
    allowed = {(x, y), (y, z), (z, x)}
    for e1, e2 in dd.arcs:
        if (star_of[e1], star_of[e2]) not in allowed:
            raise ConsistencyError(
                f"dependency arc {edge_pair(e1)} -> {edge_pair(e2)} leaves the "
                "cyclic star pattern"
            )


def three_stars_witness(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    dd = dependency_digraph(d)
    gate = _require(gate_three_stars(d, dd))
    dec = decompose(d)
    x, a_set, y, b_set, z, c_set = _three_star_roles(d, dec)
    _three_star_shape_check(d, dd, x, a_set, y, b_set, z, c_set)
    stars = (Star(x, a_set), Star(y, b_set), Star(z, c_set))
    arcs, notes = _orient_missing_edges(d, stars, dd)
    t = d.complete(arcs)
    res = exact_median_order(t, tiebreak=[x, y, z], cap=cap)
    f = res.order[-1]
    trace = notes + [
        f"median order {list(res.order)} (index sum of {x},{y},{z} maximal)"
    ]
    if d.is_whole(f):
        case = "whole-feed"
    elif f in (x, y, z):
        case = "center-feed"
    else:
        case = "leaf-feed"
    trace.append(f"case {case}")
    return _certify(d, "three-stars", gate, [f], trace)


def _three_star_qualifying_center(x, a_set, y, b_set, z, c_set) -> int:
    """The center whose second neighborhood arithmetic works under the
    cyclic leaf-to-center arc pattern."""
    if len(a_set) >= len(c_set):
        return x
    if len(b_set) >= len(a_set):
        return y
    return z


def _three_star_interval_candidates(d: Digraph, centers: tuple[int, int, int], cap: int) -> CandidateFn:
    def candidates(jset: VertexSet, feed: int) -> list[int]:
        cands = []
        if all(c in jset for c in centers):
            rest = [v for v in jset if v not in centers]
            if rest:
                sub, mapping = d.induced(rest)
                if sub.is_tournament():
                    ws, _ = _tournament_witnesses(sub, cap)
                    cands.extend(mapping[w] for w in ws)
        for v in (feed, *jset):
            if v not in cands:
                cands.append(v)
        return cands

    return candidates


def three_stars_two_witnesses(d: Digraph, cap: int = DEFAULT_EXACT_CAP) -> SnpCertificate:
    dd = dependency_digraph(d)
    gate = _require(gate_three_stars_two(d, dd))
    dec = decompose(d)
    x, a_set, y, b_set, z, c_set = _three_star_roles(d, dec, prefer_claim=True)
    if not _three_star_claim_holds(d, x, a_set, y, b_set, z, c_set):
        raise ConsistencyError(
            "three-stars-two: positive dependency degrees must force the "
            "cyclic pattern B->x->C->y->A->z->B, but they do not"
        )
    trace = [
        f"roles x={x} A={list(a_set)} y={y} B={list(b_set)} z={z} C={list(c_set)}"
    ]
    findings: list[str] = []
    kset = tuple(sorted({x, y, z, *a_set, *b_set, *c_set}))
    inner = _three_star_interval_candidates(d, (x, y, z), cap)
    if len(kset) == d.n:
        trace.append("K = V(D): sub-tournament pair + qualifying center")
        rest = [v for v in range(d.n) if v not in (x, y, z)]
        sub, mapping = d.induced(rest)
        if sub.has_sink():
            findings.append("H = D - centers has a sink, contrary to the expected shape")
        ws, _ = _tournament_witnesses(sub, cap)
        center = _three_star_qualifying_center(x, a_set, y, b_set, z, c_set)
        found = []
        for v in (*[mapping[w] for w in ws], center):
            if v not in found and has_snp(d, v):
                found.append(v)
        for v in range(d.n):
            if len(found) >= 2:
                break
            if v not in found and has_snp(d, v):
                found.append(v)
        if len(found) < 2:
            raise ConsistencyError("three-stars-two: K = V branch found fewer than 2 witnesses")
        return _certify(d, "three-stars-two", gate, found, trace, findings)
    report = goodness(d)
    if not report.is_good:
        bad = [k for k, ok in report.verdicts if not ok]
        raise GoodnessViolationError(f"three-stars-two: D should be good, K(xi) {bad}")
    order = good_median_order(d, cap=cap)
    xn = order[-1]
    trace.append(f"good median order {list(order)}")
    jset = j_of(d, xn)
    if len(jset) > 1:
        trace.append(f"feed interval K {list(jset)}")
        found = []
        for v in inner(jset, xn):
            if v not in found and has_snp(d, v):
                found.append(v)
            if len(found) >= 2:
                break
        if len(found) < 2:
            raise ConsistencyError("three-stars-two: interval branch found fewer than 2 witnesses")
        return _certify(d, "three-stars-two", gate, found, trace, findings)
    second, extra = _second_witness(d, order, xn, inner)
    return _certify(d, "three-stars-two", gate, [xn, second], trace + extra, findings)


THEOREMS: dict[str, Callable[..., SnpCertificate]] = {
    "havet-thomasse": havet_thomasse_witnesses,
    "kings-stars": kings_stars_witness,
    "star+matching": star_matching_witness,
    "matching-F-empty-no-sink": matching_two_witnesses,
    "single-star": single_star_witness,
    "two-stars": two_stars_witness,
    "two-stars-two": two_stars_two_witnesses,
    "three-stars": three_stars_witness,
    "three-stars-two": three_stars_two_witnesses,
}
