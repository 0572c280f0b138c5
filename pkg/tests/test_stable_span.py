import random
from fractions import Fraction

import pytest

from borderbasis.io import parse_polynomial
from borderbasis.linalg import rank
from borderbasis.poly import Universe
from borderbasis.stable_span import (DegreeCapExceeded, is_l_stabilized, l_stable_span, plus,
                                     terminal_span)
from conftest import row

ROWS = ["row1", "row2", "row3", "row4", "row5", "row7"]


def p(s, names):
    return parse_polynomial(s, names)


def same_space(a, b, u):
    cols = u.monomials()
    ra, rb = rank(a, cols), rank(b, cols)
    return ra == rb == rank(a + b, cols)


def test_plus_examples():
    assert set(plus([p("x", ["x", "y"])])) == {p(s, ["x", "y"]) for s in ("x", "x^2", "x*y")}
    assert plus([]) == []
    assert plus([p("x^2 - 1", ["x"])]) == [p("x^2 - 1", ["x"]), p("x^3 - x", ["x"])]


def test_span_examples():
    sp = l_stable_span([p("x^2 - 1", ["x"])], Universe(1, 2))
    assert sp.polynomials() == [p("x^2 - 1", ["x"])]
    sp = l_stable_span([p("x^2", ["x"]), p("x", ["x"])], Universe(1, 2))
    assert len(sp) == 2 and is_l_stabilized(sp)


def test_is_l_stabilized_examples():
    from borderbasis.linalg import ReducedSet
    from borderbasis.stable_span import SpanBasis
    v = ReducedSet(1)
    v.insert({(1,): Fraction(1)})
    assert not is_l_stabilized(SpanBasis(v, Universe(1, 2)))
    assert is_l_stabilized(SpanBasis(ReducedSet(1), Universe(1, 2)))


def test_support_outside_universe():
    with pytest.raises(ValueError):
        l_stable_span([p("x^3", ["x"])], Universe(1, 2))


def test_degree_cap():
    # a positive-dimensional ideal never covers the top degree
    with pytest.raises(DegreeCapExceeded):
        terminal_span([p("x*y", ["x", "y"])], 2, degree_cap=6)


def test_row3_codimension():
    s, span, cf = row("row3")
    assert len(span.universe) - len(span) == 10


@pytest.mark.parametrize("name", ROWS)
def test_spans_are_stabilized(name):
    _, span, _ = row(name)
    assert is_l_stabilized(span)
    assert span.covers_top_degree()


@pytest.mark.parametrize("name", ["row1", "row2", "row3", "row7"])
def test_basis_independence(name):
    s, span, _ = row(name)
    rng = random.Random(11)
    f = s.polynomials
    u = span.universe
    # an invertible recombination: unit lower-triangular plus a permutation
    g = []
    for k, q in enumerate(f):
        acc = q
        for j in range(k):
            acc = acc + f[j] * Fraction(rng.randint(-3, 3))
        g.append(acc * Fraction(rng.choice([1, 2, -3])))
    rng.shuffle(g)
    other = l_stable_span(g, u)
    assert same_space(span.polynomials(), other.polynomials(), u)


@pytest.mark.parametrize("name", ROWS)
def test_ideal_truncation_and_monotonicity(name):
    s, span, _ = row(name)
    u = span.universe
    bigger = l_stable_span(span.polynomials(), Universe(u.n, u.d + 1))
    low = [q for q in bigger.polynomials() if q.degree() <= u.d]
    # the degree <= d part of the larger span is the same space
    assert same_space(low, span.polynomials(), u)
    assert len(low) == len(span)
