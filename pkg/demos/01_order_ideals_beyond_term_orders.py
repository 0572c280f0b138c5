"""
Border bases that no term ordering produces
===========================================

The ideal generated by x2^2 + x1*x2 + x1^2, x1*x2^2 and x2^4 has a quotient
of dimension six.  Degrevlex picks one order ideal, but the border basis
algorithm accepts any admissible degree-compatible one.
"""
from borderbasis import (OrderIdeal, RankOracle, bbasis_classic, bbasis_general, enumerate_order_ideals,
                         fixed_selector, format_polynomial, parse_polynomial, terminal_span, verify_border_basis)
from borderbasis.io import format_monomial

names = ["x1", "x2"]
F = [parse_polynomial(t, names) for t in ["x2^2 + x1*x2 + x1^2", "x1*x2^2", "x2^4"]]

span = terminal_span(F)
cf = span.canonical()
print("universe degree", span.universe.d)

# every admissible choice, as lists of monomials
for o in enumerate_order_ideals(cf):
    print("  ", [format_monomial(m, names) for m in o.sorted()])

# the classical algorithm: degrevlex
g = bbasis_classic(F)
print("degrevlex order ideal signature", g.order_ideal.signature())

# a staircase that is invisible to term orderings: x2^3 is in, x1*x2 is out
O = OrderIdeal.of([(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (0, 3)], 2)
print("admissible:", RankOracle.from_canonical(cf).is_admissible(O))

G = bbasis_general(F, fixed_selector(O))
for b, p in zip(G.border, G.polynomials):
    print(f"  border {format_polynomial(p, names)}")
print("verified:", bool(verify_border_basis(G, F, span.universe)))
