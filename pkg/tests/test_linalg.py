from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from borderbasis.linalg import ReducedSet, canonical_form, gauss_el, matrix_rank, rank
from borderbasis.poly import DEGLEX, DEGREVLEX, Polynomial, Universe
from borderbasis.io import parse_polynomial

XY = ["x", "y"]


def p(s, names=XY):
    return parse_polynomial(s, names)


def stacked_rank(polys, n, d):
    return rank(polys, Universe(n, d).monomials())


def test_gauss_el_example():
    v = ReducedSet.for_ordering(2, DEGLEX)
    ext, w = gauss_el(v, [p("x^2 + y"), p("x^2")])
    assert len(w) == 2
    assert {DEGLEX.leading_term(q) for q in w} == {(2, 0), (0, 1)}
    assert all(q.coefficient(DEGLEX.leading_term(q)) == 1 for q in w)
    # same span as the forward-only answer {x^2 + y, y}
    assert stacked_rank(w + [p("x^2 + y"), p("y")], 2, 2) == 2
    assert len(v) == 0


def test_gauss_el_discards_zero_and_dependent():
    v = ReducedSet(2)
    _, w = gauss_el(v, [Polynomial({}, 2)])
    assert w == []
    v.insert(p("x").terms)
    _, w = gauss_el(v, [p("x")])
    assert w == []


def test_canonical_form_examples():
    x = ["x"]
    cf = canonical_form([p("x^2 - 1", x), p("x^2 + x", x)], Universe(1, 2))
    assert cf.pivots(2) == [(2,)] and cf.pivots(1) == [(1,)]
    rows = cf.polynomials()
    assert stacked_rank(rows + [p("x^2 - 1", x), p("x^2 + x", x)], 1, 2) == 2
    for r in rows:
        others = [q for q in rows if q is not r]
        assert all(q.coefficient(DEGREVLEX.leading_term(r)) == 0 for q in others)
    cf2 = canonical_form([p("x + y"), p("x - y")], Universe(2, 1))
    assert [q.terms for q in cf2.block(1)] == [{(1, 0): 1}, {(0, 1): 1}]


def test_canonical_form_idempotent():
    rows = [p("x^2 + x*y - 3"), p("y^2 - x"), p("x*y + 2*y")]
    cf = canonical_form(rows, Universe(2, 2))
    again = canonical_form(cf.polynomials(), Universe(2, 2))
    assert again.polynomials() == cf.polynomials()


def test_canonical_form_support_check():
    with pytest.raises(ValueError):
        canonical_form([p("x^3")], Universe(2, 2))


def test_rank_examples():
    assert rank([p("x + y"), p("x - y")], [(1, 0), (0, 1)]) == 2
    assert rank([p("x + y")], [(1, 0)], induced=True) == 1
    assert rank([p("x^3"), p("x*y^2 + y^3")], [(2, 1), (0, 3)], induced=True) == 1
    with pytest.raises(ValueError):
        rank([p("x + y")], [(1, 0)])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_matrix_rank_matches_sympy(mat):
    want = sympy.Matrix(mat).rank()
    assert matrix_rank([[Fraction(x) for x in row] for row in mat]) == want


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.sampled_from(Universe(2, 2).monomials()), st.integers(-3, 3),
                                max_size=4), min_size=1, max_size=5),
       st.lists(st.dictionaries(st.sampled_from(Universe(2, 2).monomials()), st.integers(-3, 3),
                                max_size=4), max_size=4))
def test_gauss_el_preserves_span(vrows, grows):
    v = ReducedSet(2)
    vpolys = [Polynomial(r, 2) for r in vrows]
    v.extend(vpolys)
    g = [Polynomial(r, 2) for r in grows]
    ext, w = gauss_el(v, g)
    pivs = list(ext.rows)
    assert len(pivs) == len(set(pivs))
    assert all(q.coefficient(DEGREVLEX.leading_term(q)) == 1 for q in w)
    cols = Universe(2, 2).monomials()
    assert rank(ext.polynomials(), cols) == rank(vpolys + g, cols) == len(ext)
