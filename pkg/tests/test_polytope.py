import itertools
import random

import pytest

from borderbasis import hardness
from borderbasis.border_basis import degrevlex_selector
from borderbasis.io import parse_polynomial
from borderbasis.linalg import rank
from borderbasis.optimize import enumerate_order_ideals
from borderbasis.poly import OrderIdeal, Universe
from borderbasis.polytope import (LP_LINE_WIDTH, RankOracle, build_model, characteristic_vector, export_lp,
                                  is_admissible, lp_name, order_ideal_of)
from borderbasis.stable_span import terminal_span
from conftest import row
from oracles import all_downward_closed

X12 = ["x1", "x2"]


def canon(polys, n=None):
    return terminal_span(polys, n).canonical()


def univariate_model():
    return build_model(canon([parse_polynomial("x^2", ["x"])]))


def test_univariate_chain_model():
    m = univariate_model()
    assert m.variables == ((0,), (1,))
    assert m.divisibility == [((0,), (1,))]
    assert m.cardinality == {1: 1}
    points = [z for z in itertools.product((0, 1), repeat=2) if m.is_feasible(z)]
    assert points == [(1, 1)]


def test_cardinalities():
    m = build_model(hardness.fnk_canonical(3, 2))
    assert m.cardinality[1] == 2 and m.cardinality[2] == 3
    m3 = build_model(row("row3")[2])
    assert m3.cardinality == {1: 4, 2: 5}
    assert max(sum(v) for v in m3.variables) == m3.d - 1


def test_build_model_requires_stabilized():
    from borderbasis.linalg import canonical_form
    with pytest.raises(ValueError):
        build_model(canonical_form([parse_polynomial("x^2", ["x"])], Universe(1, 2)))


def test_worked_examples_admissibility():
    first = canon([parse_polynomial(t, X12) for t in ["x1^3 + x1*x2", "x1^2*x2", "x1*x2^2", "x2^3"]])
    alt = OrderIdeal.of([(0, 0), (1, 0), (0, 1), (2, 0), (3, 0), (0, 2)], 2)
    assert not is_admissible(alt, RankOracle.from_canonical(first))
    second = canon([parse_polynomial(t, X12) for t in ["x2^2 + x1*x2 + x1^2", "x1*x2^2", "x2^4"]])
    alt2 = OrderIdeal.of([(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (0, 3)], 2)
    assert is_admissible(alt2, RankOracle.from_canonical(second))
    for name in ("row1", "row2", "row3", "row4", "row5", "row7"):
        cf = row(name)[2]
        assert is_admissible(degrevlex_selector(cf), RankOracle.from_canonical(cf))


def test_is_admissible_rejects_non_closed():
    cf = row("row3")[2]
    assert not is_admissible([(1, 0, 0, 0, 0)], RankOracle.from_canonical(cf))


def test_characteristic_vector_roundtrip():
    m = build_model(row("row2")[2])
    assert characteristic_vector(OrderIdeal.of([(0,) * 4], 4), m) == (1,) + (0,) * (len(m.variables) - 1)
    rng = random.Random(7)
    closed = all_downward_closed(Universe(4, 1).monomials())
    u2 = list(Universe(4, 2).monomials())
    for _ in range(100):
        base = set(rng.choice(closed))
        if len(base) == 5:
            base |= set(rng.sample([t for t in u2 if sum(t) == 2], rng.randint(0, 4)))
        base = {t for t in base if all(s in base for s in [tuple(e - (k == j) for k, e in enumerate(t))
                                                             for j in range(4) if t[j]])}
        o = OrderIdeal(frozenset(base), 4)
        assert order_ideal_of(characteristic_vector(o, m), m) == o


def test_fnk_vectors_are_subsets():
    cf = hardness.fnk_canonical(3, 2)
    m = build_model(cf)
    vecs = {characteristic_vector(o, m) for o in enumerate_order_ideals(cf)}
    subsets = {frozenset(order_ideal_of(z, m).slice(1)) for z in vecs}
    assert subsets == {frozenset({(1, 0, 0), (0, 1, 0)}), frozenset({(1, 0, 0), (0, 0, 1)}),
                       frozenset({(0, 1, 0), (0, 0, 1)})}


@pytest.mark.parametrize("source", ["f32", "f31", "row2"])
def test_integral_points_equal_enumeration(source):
    cf = {"f32": lambda: hardness.fnk_canonical(3, 2), "f31": lambda: hardness.fnk_canonical(3, 1),
          "row2": lambda: row("row2")[2]}[source]()
    m = build_model(cf)
    feasible = {z for z in itertools.product((0, 1), repeat=len(m.variables)) if m.is_feasible(z)}
    enumerated = {characteristic_vector(o, m) for o in enumerate_order_ideals(cf)}
    assert feasible == enumerated


def small_systems():
    yield "f32", hardness.fnk_canonical(3, 2)
    yield "f31", hardness.fnk_canonical(3, 1)
    yield "row1", row("row1")[2]
    yield "second", canon([parse_polynomial(t, X12) for t in ["x2^2 + x1*x2 + x1^2", "x1*x2^2", "x2^4"]])


@pytest.mark.parametrize("name,cf", list(small_systems()))
def test_constraint_forms_agree(name, cf):
    """Upper-bound rows on |O^{=i}|-subsets versus lower-bound rows on |M_i|-subsets."""
    oracle = RankOracle.from_canonical(cf)
    sig = oracle.signature
    for i in range(cf.d):
        cols = oracle.columns[i]
        assert len(cols) <= 8
        lf = oracle.leading[i]
        k = len(lf)
        upper = [(set(u), rank(lf + [{t: 1} for t in u], cols) - k)
                 for u in itertools.combinations(cols, sig[i])]
        lower = [(set(u), k - rank(lf, u, induced=True)) for u in itertools.combinations(cols, k)]
        for z in itertools.product((0, 1), repeat=len(cols)):
            chosen = {t for t, v in zip(cols, z) if v}
            if len(chosen) != sig[i]:
                continue
            a = all(len(u & chosen) <= r for u, r in upper)
            b = all(len(u & chosen) >= r for u, r in lower)
            assert a == b == oracle.slice_independent(i, chosen)


def test_determinant_and_rank_criteria_agree():
    cf = row("row3")[2]
    oracle = RankOracle.from_canonical(cf)
    for o in enumerate_order_ideals(cf, relaxed=True):
        for i, sl in o.slices.items():
            assert oracle.slice_independent(i, sl) == oracle.slice_independent_by_rank(i, sl)


def test_lp_univariate_file():
    text = export_lp(univariate_model(), {(1,): 1})
    lines = text.splitlines()
    for sec in ("Maximize", "Subject To", "Bounds", "Binary", "End"):
        assert sec in lines
    body = lines[lines.index("Subject To") + 1:lines.index("Bounds")]
    assert sum(">=" in ln for ln in body) == 1 and sum("=" in ln and ">=" not in ln for ln in body) == 1
    assert lines[lines.index("Binary") + 1].split() == ["z_1", "z_x1"]
    assert "RELAXATION" not in text


def test_lp_names_and_width():
    assert lp_name((0, 0)) == "z_1"
    assert lp_name((2, 1)) == "z_x1_2.x2"
    text = export_lp(build_model(row("row7")[2]), subset_budget=5)
    assert "RELAXATION" in text
    assert max(len(ln) for ln in text.splitlines()) <= LP_LINE_WIDTH
    assert all(ln.startswith("\\") for ln in text.splitlines()[:4])


def test_lp_solver_optimum_fnk_path():
    pyscipopt = pytest.importorskip("pyscipopt")
    g = hardness.Graph.of(3, [(0, 1), (1, 2)])
    m = build_model(hardness.fnk_canonical(3, 2))
    text = export_lp(m, hardness.clique_preference(g).weights, subset_budget=None)
    import tempfile, os
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "f32.lp")
        open(path, "w").write(text)
        model = pyscipopt.Model()
        model.hideOutput()
        model.readProblem(path)
        model.optimize()
        assert round(model.getObjVal()) == 1
