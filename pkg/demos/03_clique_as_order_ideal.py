"""
Finding cliques with order ideals
=================================

F_{n,k} pins the first-degree slice to k variables and forces all their
products into the second degree.  Rewarding x_u*x_v for each edge uv makes
the optimal score k(k-1)/2 exactly when the graph has a k-clique.
"""
from borderbasis import Graph, k_clique_decide
from borderbasis.hardness import fnk_canonical
from borderbasis.optimize import count_order_ideals

# a 5-cycle with one chord: triangles exist, 4-cliques do not
g = Graph.of(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])

for k in (2, 3, 4):
    print(f"F_(5,{k}) has {count_order_ideals(fnk_canonical(5, k)).count} admissible order ideals")
    d = k_clique_decide(g, k)
    print(f"  k={k}: score {d.score} of {k * (k - 1) // 2}, clique={d.clique}, vertices {d.vertices()}")
