"""
From points to an integer program
=================================

Seven points in four dimensions give a zero-dimensional ideal.  We compute
it, pick a preferred border basis and write the order ideal polytope in
CPLEX LP format for an external solver.
"""
import tempfile
from pathlib import Path

from borderbasis import (Preference, bbasis_general, build_model, export_lp, format_polynomial, optimize_preference,
                         preference_selector, terminal_span, vanishing_ideal, verify_border_basis)
from borderbasis.fixtures import data_text
from borderbasis.io import loads_points, monomial_key

pts = loads_points(data_text("row2.points"))
F = vanishing_ideal(pts)
print(len(F), "generators, for example", format_polynomial(F[0]))

span = terminal_span(F, pts.n)
cf = span.canonical()

# prefer monomials in x3 and x4
c = Preference({(0, 0, 1, 0): 3, (0, 0, 0, 1): 3, (0, 0, 2, 0): 1, (0, 0, 1, 1): 2})
O, score = optimize_preference(cf, c)
print("best score", score, [monomial_key(m) for m in O.sorted()])

G = bbasis_general(F, preference_selector(c), nvars=pts.n)
print("verified:", bool(verify_border_basis(G, F, span.universe)))

text = export_lp(build_model(cf), c.weights, subset_budget=None)
out = Path(tempfile.gettempdir()) / "row2.lp"
out.write_text(text)
print(f"wrote {out} ({len(text.splitlines())} lines)")
