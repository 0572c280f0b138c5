"""
Counting degree-compatible order ideals
=======================================

Two numbers per benchmark system: order ideals that support a border basis
(the rank condition holds in every degree), and order ideals that merely
have the right number of monomials in each degree.  The second count grows
much faster; only the first one is in bijection with border bases.
"""
import time

from borderbasis import count_order_ideals, degree_signature, terminal_span
from borderbasis.fixtures import load_row

for name in ["row1", "row2", "row3", "row4", "row5", "row7"]:
    s = load_row(name)
    cf = terminal_span(s.polynomials, s.nvars).canonical()
    t = time.perf_counter()
    admissible = count_order_ideals(cf).count
    relaxed = count_order_ideals(cf, relaxed=True).count
    print(f"{name}: signature {tuple(degree_signature(cf))}  admissible {admissible:>5}  "
          f"size-only {relaxed:>7}  ({time.perf_counter() - t:.2f}s)")

# In row 3 every square x^2, y^2, ..., v^2 is the degree-2 leading form of an
# ideal element, so no admissible order ideal contains a square.  504 of the
# 1260 size-only candidates do.
