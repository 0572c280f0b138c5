"""Clique instances encoded as order ideal optimization problems.

The system ``F_{n,k}`` has ``n-k`` Vandermonde linear forms and every cubic
monomial.  Its degree-compatible order ideals pick ``k`` variables in degree
one and all their pairwise products in degree two, so a preference that
rewards products along graph edges reaches ``k(k-1)/2`` exactly when the
graph has a ``k``-clique.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import FrozenSet, Iterable, List, Tuple, Union

from .optimize import Preference, enumerate_order_ideals, optimize_preference
from .poly import OrderIdeal, Polynomial, monomials_of_degree, variable
from .stable_span import terminal_span


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def of(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        edges = list(edges)
        seen = {(min(u, v), max(u, v)) for u, v in edges}
        if len(seen) != len(edges):
            raise ValueError("multi-edge in edge list")
        return cls(n, frozenset(seen))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


def parse_edge_list(text: str) -> Graph:
    """First line ``n m``, then ``m`` lines ``u v`` with 1-based vertices."""
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with a line 'n m'")
    n, m = map(int, rows[0])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"expected {m} edges, found {len(body)}")
    edges = []
    for r in body:
        if len(r) != 2:
            raise ValueError(f"bad edge line {' '.join(r)!r}")
        edges.append((int(r[0]) - 1, int(r[1]) - 1))
    return Graph.of(n, edges)


def load_edge_list(path: Union[str, Path]) -> Graph:
    return parse_edge_list(Path(path).read_text())


def vandermonde_forms(n: int, k: int) -> List[Polynomial]:
    """``v_j = sum_i i^j x_i`` for ``j = 1..n-k``."""
    return [Polynomial({variable(i, n): Fraction((i + 1) ** j) for i in range(n)}, n)
            for j in range(1, n - k + 1)]


def gen_fnk(n: int, k: int) -> List[Polynomial]:
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    cubes = [Polynomial.monomial(m, n) for m in monomials_of_degree(n, 3)]
    return vandermonde_forms(n, k) + cubes


def clique_preference(g: Graph) -> Preference:
    """Weight 1 on ``x_u x_v`` for every edge; squares and everything else weigh 0."""
    w = {}
    for u, v in g.edges:
        m = [0] * g.n
        m[u] += 1
        m[v] += 1
        w[tuple(m)] = 1
    return Preference(w)


def fnk_canonical(n: int, k: int):
    return terminal_span(gen_fnk(n, k), n).canonical()


def expected_fnk_ideals(n: int, k: int) -> List[OrderIdeal]:
    """The order ideals predicted for ``F_{n,k}``: one per ``k``-subset of variables."""
    out = []
    for sub in combinations(range(n), k):
        mons = {tuple([0] * n)}
        for i in sub:
            mons.add(variable(i, n))
        for i, j in combinations(sub, 2):
            m = [0] * n
            m[i] += 1
            m[j] += 1
            mons.add(tuple(m))
        for i in sub:
            m = [0] * n
            m[i] = 2
            mons.add(tuple(m))
        out.append(OrderIdeal(frozenset(mons), n))
    return out


def admissible_structure_check(n: int, k: int) -> bool:
    """Enumerated order ideals of ``F_{n,k}`` are exactly the subset-shaped ones."""
    found = list(enumerate_order_ideals(fnk_canonical(n, k)))
    want = expected_fnk_ideals(n, k)
    if len(found) != comb(n, k) or set(found) != set(want):
        return False
    return all(len(o.slice(2)) == k * (k + 1) // 2 for o in found)


@dataclass(frozen=True)
class CliqueDecision:
    clique: bool
    score: int
    order_ideal: OrderIdeal

    def vertices(self) -> List[int]:
        """Vertices selected in degree one (a clique when ``clique`` is true)."""
        return sorted(m.index(1) for m in self.order_ideal.slice(1))


def k_clique_decide(g: Graph, k: int) -> CliqueDecision:
    if not (1 <= k <= g.n):
        raise ValueError(f"need 1 <= k <= {g.n}, got k={k}")
    o, score = optimize_preference(fnk_canonical(g.n, k), clique_preference(g))
    return CliqueDecision(score == k * (k - 1) // 2, score, o)
