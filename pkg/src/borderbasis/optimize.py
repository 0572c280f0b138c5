"""Enumeration, counting and preference optimization over admissible order
ideals, and the min-cut solution of the unconstrained closure problem.

Admissible order ideals are built degree by degree.  The slice ``O^{=i}``
must consist of monomials whose degree ``i-1`` divisors all lie in
``O^{=i-1}`` and must map to a basis of ``<T_i> / <LF(M_i)>``.  The choices
for degree ``i`` depend on ``O^{=i-1}`` only through that candidate pool,
which makes counting and optimization memoizable on ``(degree, pool)``.
"""
from __future__ import annotations

import random as _random
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd, inf
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .linalg import CanonicalForm
from .poly import Monomial, OrderIdeal, Universe, lower_neighbours, unit
from .polytope import RankOracle

Slice = Tuple[Monomial, ...]


@dataclass
class Preference:
    """Integer weights on monomials; unlisted monomials weigh 0."""

    weights: Dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        self.weights = {tuple(m): int(w) for m, w in self.weights.items() if w}

    def __getitem__(self, m: Monomial) -> int:
        return self.weights.get(tuple(m), 0)

    def score(self, monomials: Iterable[Monomial]) -> int:
        return sum(self.weights.get(m, 0) for m in monomials)

    @classmethod
    def random(cls, monomials: Iterable[Monomial], seed: int, low: int = -10, high: int = 10) -> "Preference":
        rng = _random.Random(seed)
        return cls({m: rng.randint(low, high) for m in monomials})


def _as_preference(c) -> Preference:
    if c is None:
        return Preference()
    return c if isinstance(c, Preference) else Preference(dict(c))


class _Timeout(Exception):
    pass


def _reduce(v: Sequence[int], basis: List[Tuple[int, Tuple[int, ...]]]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Fraction-free reduction of ``v`` against an echelon basis; ``None`` if dependent."""
    for p, r in basis:
        b = v[p]
        if b:
            a = r[p]
            v = [a * x - b * y for x, y in zip(v, r)]
            g = 0
            for x in v:
                g = gcd(g, x)
            if g > 1:
                v = [x // g for x in v]
    for k, x in enumerate(v):
        if x:
            return k, tuple(v)
    return None


class SliceSearch:
    """Degree-by-degree generator of admissible slices for one canonical form.

    With ``relaxed=True`` the rank condition is dropped and every
    ``sig[i]``-subset of the pool is a slice, i.e. the search runs over integral
    points of the divisibility and cardinality rows alone.
    """

    def __init__(self, source: Union[CanonicalForm, RankOracle], relaxed: bool = False):
        self.relaxed = relaxed
        oracle = source if isinstance(source, RankOracle) else RankOracle.from_canonical(source)
        self.oracle = oracle
        self.n = oracle.n
        self.d = oracle.d
        self.sig = oracle.signature
        self.blocks = {i: oracle.columns[i] for i in range(self.d)}
        self.qvec = {i: oracle.quotient_vectors(i) for i in range(self.d)}
        self._slices: Dict[Tuple[int, Slice], List[Slice]] = {}
        self.deadline: Optional[float] = None
        self._ticks = 0

    def pool(self, i: int, prev: Optional[Iterable[Monomial]]) -> Slice:
        if i == 0:
            return (unit(self.n),)
        prev = set(prev)
        return tuple(m for m in self.blocks[i] if all(t in prev for t in lower_neighbours(m)))

    def slices(self, i: int, pool: Slice) -> Sequence[Slice]:
        """All bases of size ``sig[i]`` inside ``pool``, in lexicographic pool order.

        Relaxed slices are produced lazily and not cached; there are too many.
        """
        if self.relaxed:
            return self._relaxed_slices(i, pool)
        key = (i, pool)
        hit = self._slices.get(key)
        if hit is not None:
            return hit
        s = self.sig[i]
        vecs = [self.qvec[i][m] for m in pool]
        out: List[Slice] = []
        if s == 0:
            out.append(())
        elif len(pool) >= s:
            chosen: List[int] = []

            def rec(start: int, basis):
                need = s - len(chosen)
                if need == 0:
                    out.append(tuple(pool[k] for k in chosen))
                    self._tick()
                    return
                for k in range(start, len(pool) - need + 1):
                    red = _reduce(vecs[k], basis)
                    if red is None:
                        continue
                    chosen.append(k)
                    rec(k + 1, basis + [red])
                    chosen.pop()

            rec(0, [])
        self._slices[key] = out
        return out

    def _relaxed_slices(self, i: int, pool: Slice) -> Iterator[Slice]:
        for sub in combinations(pool, self.sig[i]):
            self._tick()
            yield sub

    def slice_count(self, i: int, pool: Slice) -> int:
        if self.relaxed:
            return comb(len(pool), self.sig[i])
        return len(self.slices(i, pool))

    def _tick(self):
        self._ticks += 1
        if self.deadline is not None and not self._ticks & 1023 and time.monotonic() > self.deadline:
            raise _Timeout

    def chains(self, i: int = 0, prev: Optional[Slice] = None) -> Iterator[List[Slice]]:
        """All admissible slice sequences ``(O^{=i}, ..., O^{=d-1})``."""
        if i >= self.d:
            yield []
            return
        for s in self.slices(i, self.pool(i, prev)):
            for rest in self.chains(i + 1, s):
                yield [s] + rest

    def to_order_ideal(self, chain: Sequence[Slice]) -> OrderIdeal:
        return OrderIdeal(frozenset(m for s in chain for m in s), self.n)


def _searcher(m, relaxed: bool = False) -> SliceSearch:
    if isinstance(m, SliceSearch):
        if m.relaxed != relaxed:
            raise ValueError("search object was built with a different relaxed flag")
        return m
    if isinstance(m, CanonicalForm) and not m.stabilized:
        raise ValueError("canonical form is not marked as stabilized with full top degree")
    return SliceSearch(m, relaxed)


class Enumeration:
    """Iterable over admissible order ideals; ``count`` and ``truncated`` are set as it runs."""

    def __init__(self, m, limit: Optional[int] = None, relaxed: bool = False):
        self.search = _searcher(m, relaxed)
        self.limit = limit
        self.count = 0
        self.truncated = False

    def __iter__(self) -> Iterator[OrderIdeal]:
        self.count = 0
        self.truncated = False
        for chain in self.search.chains():
            if self.limit is not None and self.count >= self.limit:
                self.truncated = True
                return
            self.count += 1
            yield self.search.to_order_ideal(chain)


def enumerate_order_ideals(m, limit: Optional[int] = None, relaxed: bool = False) -> Enumeration:
    return Enumeration(m, limit, relaxed)


@dataclass
class CountResult:
    count: int
    complete: bool
    seconds: float

    @property
    def truncated(self) -> bool:
        return not self.complete


def _count_from(search: SliceSearch, i: int, pool: Slice, memo: dict, partial: List[int]) -> int:
    if i >= search.d:
        return 1
    key = (i, pool)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if i == search.d - 1:
        total = memo[key] = search.slice_count(i, pool)
        return total
    slot = len(partial)
    partial.append(0)
    for s in search.slices(i, pool):
        partial[slot] += _count_from(search, i + 1, search.pool(i + 1, s), memo, partial)
        search._tick()
    total = partial.pop()
    memo[key] = total
    return total


def _count_subtree(args):
    search, i, pool, deadline = args
    search.deadline = deadline
    partial: List[int] = []
    try:
        return _count_from(search, i, pool, {}, partial), True
    except _Timeout:
        return sum(partial), False


def count_order_ideals(m, time_cap: Optional[float] = None, workers: int = 1,
                       relaxed: bool = False) -> CountResult:
    """Number of admissible order ideals.

    When ``time_cap`` seconds elapse the count of fully explored subtrees is
    returned with ``complete=False``; it is a lower bound on the total.
    ``relaxed=True`` counts order ideals meeting only the per-degree sizes.
    """
    search = _searcher(m, relaxed)
    start = time.monotonic()
    deadline = None if time_cap is None else start + time_cap
    if search.d == 0:
        return CountResult(1, True, 0.0)
    if workers > 1 and search.d > 2:
        tasks = [(search, 2, search.pool(2, s1), deadline)
                 for s0 in search.slices(0, search.pool(0, None))
                 for s1 in search.slices(1, search.pool(1, s0))]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_count_subtree, tasks))
        total = sum(c for c, _ in results)
        return CountResult(total, all(ok for _, ok in results), time.monotonic() - start)
    search.deadline = deadline
    partial: List[int] = []
    try:
        total = _count_from(search, 0, search.pool(0, None), {}, partial)
        complete = True
    except _Timeout:
        total, complete = sum(partial), False
    finally:
        search.deadline = None
    return CountResult(total, complete, time.monotonic() - start)


def optimize_preference(m, c) -> Tuple[OrderIdeal, int]:
    """An admissible order ideal of maximum score.

    Ties go to the first order ideal in enumeration order.
    """
    search = _searcher(m)
    pref = _as_preference(c)
    memo: Dict[Tuple[int, Slice], Optional[Tuple[int, List[Slice]]]] = {}

    def best(i: int, pool: Slice):
        if i >= search.d:
            return 0, []
        key = (i, pool)
        if key in memo:
            return memo[key]
        top = None
        for s in search.slices(i, pool):
            rest = best(i + 1, search.pool(i + 1, s)) if i + 1 < search.d else (0, [])
            if rest is None:
                continue
            score = pref.score(s) + rest[0]
            if top is None or score > top[0]:
                top = (score, [s] + rest[1])
        memo[key] = top
        return top

    res = best(0, search.pool(0, None))
    if res is None:
        raise RuntimeError("no admissible order ideal; the span is not stabilized correctly")
    score, chain = res
    return search.to_order_ideal(chain), score


def preference_selector(c):
    """Selector for the generalized border basis algorithm maximizing ``c``."""
    return lambda cf: optimize_preference(cf, c)[0]


# -- max flow / min cut ----------------------------------------------------

@dataclass
class FlowNetwork:
    """Directed network with non-negative capacities; parallel arcs are summed."""

    source: Hashable = "s"
    sink: Hashable = "t"
    capacity: Dict[Tuple[Hashable, Hashable], float] = field(default_factory=dict)

    def add_arc(self, u, v, cap):
        if cap < 0:
            raise ValueError("capacities must be non-negative")
        self.capacity[(u, v)] = self.capacity.get((u, v), 0) + cap

    def nodes(self) -> set:
        out = {self.source, self.sink}
        for u, v in self.capacity:
            out.add(u)
            out.add(v)
        return out

    def cut_capacity(self, side: set) -> float:
        return sum(c for (u, v), c in self.capacity.items() if u in side and v not in side)


@dataclass
class FlowResult:
    value: float
    source_side: set
    flow: Dict[Tuple[Hashable, Hashable], float]


def max_flow(net: FlowNetwork) -> FlowResult:
    """Dinic's algorithm; the source side is the residual reachable set."""
    nodes = list(net.nodes())
    idx = {v: k for k, v in enumerate(nodes)}
    graph: List[List[int]] = [[] for _ in nodes]
    to: List[int] = []
    cap: List[float] = []
    for (u, v), c in net.capacity.items():
        a, b = idx[u], idx[v]
        graph[a].append(len(to)); to.append(b); cap.append(c)
        graph[b].append(len(to)); to.append(a); cap.append(0)
    orig = list(cap)
    s, t = idx[net.source], idx[net.sink]

    def bfs():
        level = [-1] * len(nodes)
        level[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for e in graph[x]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[x] + 1
                    q.append(to[e])
        return level

    value = 0
    while True:
        level = bfs()
        if level[t] < 0:
            break
        it = [0] * len(nodes)

        def dfs(x, pushed):
            if x == t:
                return pushed
            while it[x] < len(graph[x]):
                e = graph[x][it[x]]
                y = to[e]
                if cap[e] > 0 and level[y] == level[x] + 1:
                    got = dfs(y, min(pushed, cap[e]))
                    if got > 0:
                        cap[e] -= got
                        cap[e ^ 1] += got
                        return got
                it[x] += 1
            return 0

        while True:
            f = dfs(s, inf)
            if f <= 0:
                break
            value += f
    level = bfs()
    side = {nodes[k] for k, lv in enumerate(level) if lv >= 0}
    flow = {}
    for e in range(0, len(to), 2):
        if orig[e] - cap[e] > 0:
            key = (nodes[to[e ^ 1]], nodes[to[e]])
            flow[key] = flow.get(key, 0) + orig[e] - cap[e]
    return FlowResult(value, side, flow)


def closure_network(monomials: Sequence[Monomial], c: Preference) -> FlowNetwork:
    """Arcs ``u -> v`` of infinite capacity for covering divisors ``v | u``."""
    mons = set(monomials)
    big = 1 + sum(w for m, w in c.weights.items() if w > 0 and m in mons)
    net = FlowNetwork()
    for m in monomials:
        for low in lower_neighbours(m):
            if low in mons:
                net.add_arc(("m", m), ("m", low), big)
        w = c[m]
        if w > 0:
            net.add_arc(net.source, ("m", m), w)
        elif w < 0:
            net.add_arc(("m", m), net.sink, -w)
    return net


def min_cut_closure(u, c) -> Tuple[OrderIdeal, int]:
    """Maximum-score order ideal inside ``u`` with no further constraints."""
    pref = _as_preference(c)
    if isinstance(u, (Universe, OrderIdeal)):
        mons = list(u)
        n = u.n if isinstance(u, Universe) else u.nvars
    else:
        mons = [tuple(m) for m in u]
        n = len(mons[0])
    net = closure_network(mons, pref)
    res = max_flow(net)
    positive = sum(w for m, w in pref.weights.items() if w > 0 and m in set(mons))
    chosen = frozenset(x[1] for x in res.source_side if isinstance(x, tuple) and x[0] == "m")
    return OrderIdeal(chosen, n), positive - int(res.value)
