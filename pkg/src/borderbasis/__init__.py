"""Border bases for arbitrary degree-compatible order ideals."""
from .border_basis import (BorderBasis, DegreeSignature, InadmissibleOrderIdeal, basis_transformation,
                           bbasis_classic, bbasis_general, degree_signature, degrevlex_selector,
                           final_red, fixed_selector, verify_border_basis)
from .hardness import Graph, admissible_structure_check, clique_preference, gen_fnk, k_clique_decide
from .io import (ParseError, PointSet, SystemFile, format_polynomial, load_points, load_system,
                 parse_polynomial, vanishing_ideal)
from .linalg import CanonicalForm, ReducedSet, canonical_form, gauss_el, rank
from .optimize import (FlowNetwork, Preference, count_order_ideals, enumerate_order_ideals, max_flow,
                       min_cut_closure, optimize_preference, preference_selector)
from .poly import (DEGLEX, DEGREVLEX, Monomial, OrderIdeal, Polynomial, TermOrdering, Universe, border,
                   divides, is_order_ideal, leading_parts)
from .polytope import PolytopeModel, RankOracle, build_model, characteristic_vector, export_lp, is_admissible, order_ideal_of
from .stable_span import DegreeCapExceeded, SpanBasis, is_l_stabilized, l_stable_span, plus, terminal_span

__version__ = "0.1.0"
