from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seymour.digraph import Weighting
from seymour.errors import ExactBoundExceededError
from seymour.forge import fixture, random_digraph, random_star_deleted, random_tournament
from seymour.orders import (
    analyze,
    exact_median_order,
    forward_weight,
    good_median_order,
    local_median_order,
    satisfies_feedback,
    sed,
    sediment,
)

from oracles import brute_forward_weight, brute_median_value


def test_forward_weight_examples():
    assert forward_weight(fixture("TT3"), (0, 1, 2)) == 3
    assert forward_weight(fixture("C3"), (0, 1, 2)) == 2
    assert forward_weight(fixture("TT3"), (0, 1, 2), Weighting((1, 1, 5))) == 11


def test_forward_weight_rejects_non_permutations():
    with pytest.raises(ValueError):
        forward_weight(fixture("C3"), (0, 1))


def test_exact_median_examples():
    res = exact_median_order(fixture("TT3"))
    assert res.order == (0, 1, 2) and res.value == 3
    assert exact_median_order(fixture("C3")).value == 2
    assert exact_median_order(fixture("C4X")).value == 3


def test_exact_median_respects_cap():
    with pytest.raises(ExactBoundExceededError):
        exact_median_order(random_tournament(6, 0), cap=5)


def test_feedback_examples():
    assert satisfies_feedback(fixture("TT3"), (0, 1, 2)).ok
    rep = satisfies_feedback(fixture("TT3"), (2, 1, 0))
    assert not rep.ok and rep.violation == (1, 3)
    assert satisfies_feedback(fixture("C3"), (0, 1, 2)).ok


def test_local_median_examples():
    assert local_median_order(fixture("C3"), (0, 1, 2)) == (0, 1, 2)
    assert local_median_order(fixture("TT3"), (2, 1, 0)) == (0, 1, 2)
    for init in ((0, 1, 2, 3), (3, 2, 1, 0), (1, 3, 0, 2)):
        out = local_median_order(fixture("C4X"), init)
        assert satisfies_feedback(fixture("C4X"), out).ok
        assert forward_weight(fixture("C4X"), out) >= 3


def test_analyze_examples():
    ana = analyze(fixture("C3"), (0, 1, 2))
    assert ana.feed == 2 and ana.out_of_feed == (0,)
    assert ana.good == (1,) and ana.bad == ()

    ana = analyze(fixture("TT3"), (0, 1, 2))
    assert ana.feed == 2 and ana.out_of_feed == ()
    assert ana.good == () and ana.bad == (0, 1)


def test_sed_examples():
    assert sed(fixture("C3"), (0, 1, 2)) == (2, 0, 1)
    assert forward_weight(fixture("C3"), sed(fixture("C3"), (0, 1, 2))) == 2
    assert sed(fixture("TT3"), (0, 1, 2)) == (0, 1, 2)


def test_sediment_examples():
    trace = sediment(fixture("C3"), (0, 1, 2))
    assert trace.outcome.kind == "periodic" and trace.outcome.cycle_length == 3

    trace = sediment(fixture("TT3"), (0, 1, 2))
    assert trace.outcome.kind == "periodic" and trace.outcome.cycle_length == 1


def test_good_median_order_examples():
    order = good_median_order(fixture("C4X"))
    assert forward_weight(fixture("C4X"), order) == 3
    t = random_tournament(6, 4)
    assert forward_weight(t, good_median_order(t)) == exact_median_order(t).value


def test_tiebreak_maximizes_index_without_losing_weight():
    for name in ("C4X", "LC3", "ST1"):
        d = fixture(name)
        base = exact_median_order(d).value
        for v in range(d.n):
            res = exact_median_order(d, tiebreak=[v])
            assert res.value == base
            # no optimal order places v strictly later
            from itertools import permutations
            best = max(
                order.index(v)
                for order in permutations(range(d.n))
                if forward_weight(d, order) == base
            )
            assert res.order.index(v) == best


@st.composite
def weighted_instance(draw):
    n = draw(st.integers(3, 6))
    seed = draw(st.integers(0, 300))
    d = random_digraph(n, seed, draw(st.sampled_from([0.5, 1.0])))
    nums = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    dens = draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    w = Weighting([Fraction(a, b) for a, b in zip(nums, dens)])
    return d, w


@given(weighted_instance())
@settings(max_examples=120, deadline=None)
def test_exact_median_matches_brute_force(dw):
    d, w = dw
    res = exact_median_order(d, w)
    assert res.value == brute_median_value(d, w)
    assert forward_weight(d, res.order, w) == res.value
    assert brute_forward_weight(d, res.order, w) == res.value


@given(st.integers(0, 500), st.integers(2, 9))
@settings(max_examples=150, deadline=None)
def test_exact_median_satisfies_feedback(seed, n):
    d = random_digraph(n, seed, 0.6)
    res = exact_median_order(d)
    assert satisfies_feedback(d, res.order).ok


@given(st.integers(0, 300), st.integers(2, 9))
@settings(max_examples=100, deadline=None)
def test_local_median_satisfies_feedback(seed, n):
    d = random_digraph(n, seed, 0.5)
    out = local_median_order(d, tuple(range(n)))
    rep = satisfies_feedback(d, out)
    assert rep.ok
    assert forward_weight(d, out) >= forward_weight(d, tuple(range(n)))


@given(st.integers(0, 300), st.integers(3, 8))
@settings(max_examples=100, deadline=None)
def test_sed_of_median_preserves_weight(seed, n):
    d = random_star_deleted(n, seed)
    from seymour.dependency import is_good_digraph
    if not is_good_digraph(d):
        return
    order = good_median_order(d)
    value = forward_weight(d, order)
    out = sed(d, order)
    assert forward_weight(d, out) == value
    assert satisfies_feedback(d, out).ok


@given(st.integers(0, 200), st.integers(3, 8))
@settings(max_examples=80, deadline=None)
def test_lemma1_style_inequality_on_good_instances(seed, n):
    d = random_star_deleted(n, seed)
    from seymour.dependency import is_good_digraph, j_of
    from seymour.digraph import resolve_weights
    if not is_good_digraph(d):
        return
    order = good_median_order(d)
    ana = analyze(d, order)
    ws = resolve_weights(d, None)
    jset = set(j_of(d, ana.feed))
    bound = ws.total(set(ana.good) - jset)
    for x in jset:
        assert ws.total(set(d.neighbors(x, "out")) - jset) <= bound
