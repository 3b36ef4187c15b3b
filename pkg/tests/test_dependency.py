from hypothesis import given, settings, strategies as st

from seymour.dependency import (
    component_index,
    dependency_digraph,
    good_edges,
    goodness,
    is_good_digraph,
    j_of,
    loses_to,
    strong_dependency_check,
    strongly_connected_components,
)
from seymour.digraph import Digraph
from seymour.forge import fixture, random_star_deleted, random_tournament
from seymour.stars import convenient_orientations, edge


def test_loses_to_c4x_examples():
    c4x = fixture("C4X")
    w = loses_to(c4x, edge(0, 2), edge(1, 3))
    assert w is not None
    assert (w.x1, w.y1, w.x2, w.y2) == (0, 2, 1, 3)
    assert loses_to(c4x, edge(1, 3), edge(0, 2)) is not None


def test_loses_to_lc3_negative_example():
    lc3 = fixture("LC3")
    assert loses_to(lc3, edge(0, 1), edge(4, 5)) is None


def test_dependency_digraph_examples():
    assert dependency_digraph(fixture("C3")).edges == ()

    dd = dependency_digraph(fixture("C4X"))
    assert set(dd.edges) == {edge(0, 2), edge(1, 3)}
    assert set(dd.arcs) == {
        (edge(0, 2), edge(1, 3)),
        (edge(1, 3), edge(0, 2)),
    }
    assert dd.min_degree == 1

    dd = dependency_digraph(fixture("LC3"))
    e = [edge(0, 1), edge(2, 3), edge(4, 5)]
    assert set(dd.arcs) == {(e[0], e[1]), (e[1], e[2]), (e[2], e[0])}
    assert dd.min_out_degree == 1 and dd.min_in_degree == 1


def test_witnesses_replay():
    for name in ("C4X", "LC3"):
        d = fixture(name)
        dd = dependency_digraph(d)
        for (e1, e2), w in dd.witnesses.items():
            assert d.has_arc(w.x1, w.x2) and d.has_arc(w.y1, w.y2)
            assert not (d.out_mask(w.x1) | d.second_mask(w.x1)) >> w.y2 & 1
            assert not (d.out_mask(w.y1) | d.second_mask(w.y1)) >> w.x2 & 1


def test_good_edges_examples():
    assert good_edges(fixture("C4X")) == ()
    assert good_edges(fixture("LC3")) == ()
    t = random_tournament(5, 1)
    d = t.with_arcs(remove=[t.arcs[0]])
    (e,) = d.missing_pairs()
    assert good_edges(d) == (edge(*e),)


def test_component_index_examples():
    ci = component_index(fixture("C4X"))
    assert len(ci.components) == 1 and ci.k_sets == ((0, 1, 2, 3),)
    assert len(ci.xi_groups) == 1 and ci.k_of_xi == ((0, 1, 2, 3),)

    ci = component_index(fixture("LC3"))
    assert ci.k_sets == ((0, 1, 2, 3, 4, 5),)


def test_two_disjoint_blocks_give_two_xi():
    c4x = fixture("C4X")
    arcs = list(c4x.arcs)
    arcs += [(u + 4, v + 4) for u, v in c4x.arcs]
    arcs += [(u, v) for u in range(4) for v in range(4, 8)]
    d = Digraph(8, arcs)
    ci = component_index(d)
    assert len(ci.xi_groups) == 2
    assert sorted(ci.k_of_xi) == [(0, 1, 2, 3), (4, 5, 6, 7)]


def test_j_of_examples():
    assert j_of(fixture("C3"), 0) == (0,)
    assert j_of(fixture("C4X"), 0) == (0, 1, 2, 3)
    # LC3 plus a whole vertex dominating everything
    lc3 = fixture("LC3")
    d = Digraph(7, list(lc3.arcs) + [(6, v) for v in range(6)])
    assert j_of(d, 6) == (6,)


def test_is_good_digraph_examples():
    assert is_good_digraph(fixture("C3"))
    assert is_good_digraph(fixture("C4X"))
    assert is_good_digraph(fixture("LC3"))
    # splitter vertex sees K(xi) non-uniformly
    lc3 = fixture("LC3")
    arcs = list(lc3.arcs) + [(6, 0), (6, 2), (6, 4), (1, 6), (3, 6), (5, 6)]
    assert not is_good_digraph(Digraph(7, arcs))


def test_goodness_reports_per_xi_verdicts():
    report = goodness(fixture("C4X"))
    assert report.is_good and report.verdicts == (((0, 1, 2, 3), True),)


def test_strongly_connected_components():
    dd = dependency_digraph(fixture("LC3"))
    sccs = strongly_connected_components(dd.edges, dd.successors)
    assert len(sccs) == 1 and len(sccs[0]) == 3


def test_strong_dependency_check_examples():
    for name in ("C4X", "LC3"):
        rep = strong_dependency_check(fixture(name))
        assert rep.hypothesis_holds and rep.is_good


@given(st.integers(0, 400), st.integers(4, 12))
@settings(max_examples=150, deadline=None)
def test_good_edge_iff_delta_in_degree_zero(seed, n):
    d = random_star_deleted(n, seed)
    dd = dependency_digraph(d)
    goods = set(good_edges(d, dd))
    for e in dd.edges:
        has_convenient = bool(convenient_orientations(d, e))
        assert (e in goods) == (dd.in_degree(e) == 0) == has_convenient


@given(st.integers(0, 400), st.integers(4, 12))
@settings(max_examples=100, deadline=None)
def test_distinct_k_xi_are_disjoint(seed, n):
    d = random_star_deleted(n, seed)
    ci = component_index(d)
    seen = set()
    for k in ci.k_of_xi:
        assert not seen & set(k)
        seen |= set(k)
