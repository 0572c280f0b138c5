import random
from fractions import Fraction

import pytest

from borderbasis import hardness
from borderbasis.border_basis import (BorderBasis, InadmissibleOrderIdeal, basis_transformation,
                                      bbasis_classic, bbasis_general, degree_signature, degrevlex_selector,
                                      final_red, fixed_selector, verify_border_basis)
from borderbasis.io import PointSet, parse_polynomial, vanishing_ideal
from borderbasis.linalg import canonical_form
from borderbasis.optimize import enumerate_order_ideals, preference_selector
from borderbasis.poly import OrderIdeal, Polynomial, Universe, binomial_block_size, border
from borderbasis.stable_span import l_stable_span, terminal_span
from conftest import row
from oracles import closed_sets_with_signature


def p(s, names):
    return parse_polynomial(s, names)


X12 = ["x1", "x2"]
SECOND = ["x2^2 + x1*x2 + x1^2", "x1*x2^2", "x2^4"]
FIRST = ["x1^3 + x1*x2", "x1^2*x2", "x1*x2^2", "x2^3"]


def O(mons, n):
    return OrderIdeal(frozenset(mons), n)


def test_final_red_univariate():
    f = [p("x^2 - 1", ["x"])]
    sp = l_stable_span(f, Universe(1, 2))
    g = final_red(sp, O([(0,), (1,)], 1))
    assert g.polynomials == (f[0],)
    assert g.coefficients == [[0, 1]]


def test_final_red_rejects_bad_order_ideal():
    sp = l_stable_span([p("x^2 - 1", ["x"])], Universe(1, 2))
    with pytest.raises(ValueError):
        final_red(sp, O([(0,), (1,), (2,)], 1))
    full = l_stable_span([p("x", ["x"]), p("1", ["x"])], Universe(1, 1))
    with pytest.raises(ValueError):
        final_red(full, O([(0,)], 1))


def test_classic_univariate():
    g = bbasis_classic([p("x^2 - 1", ["x"])])
    assert g.order_ideal.monomials == {(0,), (1,)}
    assert g.polynomials == (p("x^2 - 1", ["x"]),)
    assert verify_border_basis(g, [p("x^2 - 1", ["x"])], Universe(1, 2))


@pytest.mark.parametrize("name,sig", [("row3", (1, 4, 5)), ("row2", (1, 4, 2))])
def test_classic_signatures(name, sig):
    s, span, _ = row(name)
    g = bbasis_classic(s.polynomials, nvars=s.nvars)
    assert g.order_ideal.signature() == sig
    for b, q in zip(g.border, g.polynomials):
        assert q.coefficient(b) == 1
        assert set(q.terms) <= {b} | set(g.order_ideal.monomials)
    assert len(g) == len(border(g.order_ideal))


def test_general_matches_classic_row3():
    s, span, _ = row("row3")
    a = bbasis_classic(s.polynomials, nvars=s.nvars)
    b = bbasis_general(s.polynomials, degrevlex_selector, nvars=s.nvars)
    assert a.order_ideal == b.order_ideal and a.border == b.border
    assert a.polynomials == b.polynomials


def test_second_example_not_from_term_ordering():
    f = [p(t, X12) for t in SECOND]
    o = O([(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (0, 3)], 2)
    g = bbasis_general(f, fixed_selector(o))
    span = terminal_span(f)
    assert g.order_ideal == o
    assert verify_border_basis(g, f, span.universe)


def test_fnk_selector_prefers_requested_variables():
    f = hardness.gen_fnk(3, 2)
    c = {(0, 1, 0): 1, (0, 0, 1): 1}
    g = bbasis_general(f, preference_selector(c), nvars=3)
    assert set(g.order_ideal.slice(1)) == {(0, 1, 0), (0, 0, 1)}
    assert verify_border_basis(g, f, terminal_span(f).universe)


def test_inadmissible_selection_rejected():
    f = [p(t, X12) for t in SECOND]
    # x1*x2^2 is itself a generator, so it cannot sit in a complement
    bad = O([(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)], 2)
    assert bad.signature() == (1, 2, 2, 1)
    with pytest.raises(InadmissibleOrderIdeal):
        bbasis_general(f, fixed_selector(bad))


def test_basis_transformation_agrees_with_final_red():
    for name in ("row2", "row3", "row7"):
        s, span, _ = row(name)
        o = degrevlex_selector(span.canonical())
        a = final_red(span, o)
        b = basis_transformation(span, o)
        assert a.coefficients == b.coefficients and a.border == b.border


def test_basis_transformation_row3_sample():
    s, span, cf = row("row3")
    ideals = list(enumerate_order_ideals(cf))
    rng = random.Random(3)
    for o in rng.sample(ideals, 10) + [ideals[0], ideals[-1]]:
        g = basis_transformation(span, o)
        assert verify_border_basis(g, s.polynomials, span.universe)


def test_basis_transformation_detects_inadmissible():
    s, span, cf = row("row3")
    # x and x^2 together: x^2 - x is in the ideal
    ideal = next(iter(enumerate_order_ideals(cf, relaxed=True)))
    with pytest.raises(InadmissibleOrderIdeal):
        basis_transformation(span, ideal)


def test_verify_detects_perturbation():
    f = [p("x^2 - 1", ["x"])]
    g = bbasis_classic(f)
    bad = BorderBasis(g.order_ideal, g.border, (g.polynomials[0] + Polynomial.constant(1, 1),))
    res = verify_border_basis(bad, f, Universe(1, 2))
    assert not res and "stable span" in res.reason


def test_first_example_order_ideal_is_a_vector_space_complement():
    f = [p(t, X12) for t in FIRST]
    o = O([(0, 0), (1, 0), (0, 1), (2, 0), (3, 0), (0, 2)], 2)
    u = Universe(2, 4)
    span = l_stable_span(f, u)
    g = basis_transformation(span, o)
    assert verify_border_basis(g, f, u)


def test_degree_signature_requires_flag():
    cf = canonical_form([p("x^2 - 1", ["x"])], Universe(1, 2))
    with pytest.raises(ValueError):
        degree_signature(cf)


@pytest.mark.parametrize("name", ["row2", "row3", "row4", "row5", "row7"])
def test_uniqueness_and_direct_sum(name):
    s, span, cf = row(name)
    ideals = list(enumerate_order_ideals(cf, limit=5))
    for o in ideals[:3]:
        g = basis_transformation(span, o)
        assert verify_border_basis(g, s.polynomials, span.universe)
    o = degrevlex_selector(cf)
    assert final_red(span, o).coefficients == basis_transformation(span, o).coefficients
    sig = degree_signature(cf)
    for i in range(cf.d + 1):
        assert len(cf.block(i)) + sig[i] == binomial_block_size(cf.n, i)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_generic_points_every_order_ideal_is_admissible(k):
    rng = random.Random(100 + k)
    pts = set()
    while len(pts) < k:
        pts.add((Fraction(rng.randint(-50, 50), rng.randint(1, 9)), Fraction(rng.randint(-50, 50), rng.randint(1, 9))))
    f = vanishing_ideal(PointSet(sorted(pts)))
    cf = terminal_span(f, 2).canonical()
    sig = degree_signature(cf)
    found = {o.monomials for o in enumerate_order_ideals(cf)}
    assert found == set(closed_sets_with_signature(2, list(sig)))
