from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seymour.digraph import Weighting
from seymour.errors import ParseError
from seymour.forge import fixture, random_digraph
from seymour.instfile import emit_instance, parse_instance


def test_parse_c3():
    d, w = parse_instance("3 3\n0 1\n1 2\n2 0\n")
    assert d == fixture("C3") and w is None


def test_parse_digon_reports_line_number():
    with pytest.raises(ParseError) as exc:
        parse_instance("3 2\n0 1\n1 0\n")
    assert exc.value.lineno == 3 and "digon" in str(exc.value)


def test_parse_weight_line():
    d, w = parse_instance("3 3\n0 1\n1 2\n2 0\nw 0 3/2\n")
    assert w is not None and w[0] == Fraction(3, 2) and w[1] == 1


def test_parse_comments_and_blank_lines():
    text = "# a digraph\n\n3 1  # header\n0 1\n"
    d, w = parse_instance(text)
    assert d.arcs == ((0, 1),) and w is None


def test_parse_errors():
    cases = [
        ("", "header"),
        ("3\n", "header"),
        ("3 1\n0 0\n", "loop"),
        ("3 1\n0 5\n", "range"),
        ("3 2\n0 1\n0 1\n", "duplicate"),
        ("3 1\n", "expected 1 arcs"),
        ("3 1\n0 1\n2 0\n", "unexpected line"),
        ("3 1\n0 1\nw 9 1/2\n", "range"),
        ("3 1\n0 1\nw 0 0\n", "positive"),
        ("3 1\nw 0 1/2\n0 1\n", "before all"),
    ]
    for text, hint in cases:
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert hint in str(exc.value), (text, str(exc.value))


@given(st.integers(0, 300), st.integers(1, 10), st.booleans())
@settings(max_examples=120, deadline=None)
def test_round_trip(seed, n, weighted):
    d = random_digraph(n, seed, 0.6)
    w = None
    if weighted:
        w = Weighting([Fraction(1 + (seed + i) % 4, 1 + i % 3) for i in range(n)])
    text = emit_instance(d, w)
    assert parse_instance(text) == (d, w)
    assert emit_instance(*parse_instance(text)) == text
