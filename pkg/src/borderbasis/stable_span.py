"""Neighbourhood extension and L-stable spans for ``L = T^n_{<=d}``."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from .linalg import CanonicalForm, ReducedSet, _canonical_from_reduced
from .poly import DEGREVLEX, Polynomial, TermOrdering, Universe, variable

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 20


class DegreeCapExceeded(RuntimeError):
    """The universe degree passed the cap; the ideal is likely not zero-dimensional."""


def plus(f: Iterable[Polynomial]) -> List[Polynomial]:
    """``F ∪ F·x1 ∪ ... ∪ F·xn`` with duplicates removed, order preserved."""
    out, seen = [], set()
    f = list(f)
    if not f:
        return out
    n = f[0].nvars
    shifts = [None] + [variable(j, n) for j in range(n)]
    for s in shifts:
        for p in f:
            q = p if s is None else p.shift(s)
            if q not in seen:
                seen.add(q)
                out.append(q)
    return out


@dataclass
class SpanBasis:
    """A basis with pairwise distinct leading terms of a space inside ``universe``."""

    rows: ReducedSet
    universe: Universe
    ordering: TermOrdering = DEGREVLEX
    stabilized: bool = False

    def polynomials(self) -> List[Polynomial]:
        return self.rows.polynomials()

    def leading_terms(self) -> set:
        return set(self.rows.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def covers_top_degree(self) -> bool:
        """True iff every monomial of degree ``d`` is a leading term."""
        lts = self.rows.rows
        return all(m in lts for m in self.universe.block(self.universe.d))

    def canonical(self) -> CanonicalForm:
        """The rows as a canonical form (only meaningful for degree-compatible orderings)."""
        red = self.rows
        if self.ordering != DEGREVLEX:
            red = ReducedSet.for_ordering(self.universe.n, DEGREVLEX)
            red.extend(self.rows.rows.values())
        return _canonical_from_reduced(red, self.universe,
                                       self.stabilized and self.covers_top_degree())


def _check_support(f: Sequence[Polynomial], u: Universe):
    for p in f:
        if not u.contains_support(p):
            raise ValueError(f"support of {p} is outside the universe of degree {u.d}")


def l_stable_span(f: Iterable[Polynomial], u: Universe,
                  ordering: TermOrdering = DEGREVLEX) -> SpanBasis:
    """Basis of the L-stable span of ``f`` for ``L = u``.

    Products leaving the universe are kept as pivots while the fixpoint is
    computed, so that combinations whose top-degree parts cancel are found.
    Only freshly added in-universe rows are multiplied again.
    """
    f = list(f)
    _check_support(f, u)
    n, d = u.n, u.d
    red = ReducedSet.for_ordering(n, ordering)
    queue = deque()
    for p in f:
        piv = red.insert(p.terms)
        if piv is not None and sum(piv) <= d:
            queue.append(piv)
    shifts = [variable(j, n) for j in range(n)]
    while queue:
        piv = queue.popleft()
        row = list(red.rows[piv].items())
        for s in shifts:
            prod = {tuple(a + b for a, b in zip(m, s)): c for m, c in row}
            new = red.insert(prod)
            if new is not None and sum(new) <= d:
                queue.append(new)
    inside = ReducedSet(n, red._key_fn)
    inside._keys = red._keys
    for piv, r in red.rows.items():
        if sum(piv) <= d:
            inside.rows[piv] = r
            for t in r:
                if t != piv:
                    inside._occurs.setdefault(t, set()).add(piv)
    return SpanBasis(inside, u, ordering, stabilized=True)


def is_l_stabilized(v: SpanBasis) -> bool:
    """Recheck ``<V+> ∩ <L> = <V>`` directly, ignoring the recorded flag."""
    d = v.universe.d
    n = v.universe.n
    ext = v.rows.copy()
    for r in list(v.rows.rows.values()):
        for j in range(n):
            s = variable(j, n)
            piv = ext.insert({tuple(a + b for a, b in zip(m, s)): c for m, c in r.items()})
            if piv is not None and sum(piv) <= d:
                return False
    return True


def terminal_span(f: Sequence[Polynomial], nvars: Optional[int] = None,
                  degree_cap: int = DEFAULT_DEGREE_CAP,
                  ordering: TermOrdering = DEGREVLEX) -> SpanBasis:
    """Raise the universe degree until every degree-``d`` monomial is a leading term.

    This is the stopping test of the generalized border basis algorithm; the
    returned span contains every degree-compatible border basis of ``<f>``.
    """
    f = [p for p in f if not p.is_zero()]
    if nvars is None:
        if not f:
            raise ValueError("variable count required for an empty system")
        nvars = f[0].nvars
    d = max((p.degree() for p in f), default=0)
    rows = f
    while True:
        if d > degree_cap:
            raise DegreeCapExceeded(
                f"degree cap {degree_cap} reached; the ideal is likely not zero-dimensional")
        span = l_stable_span(rows, Universe(nvars, d), ordering)
        log.debug("universe degree %d: %d rows", d, len(span))
        if span.covers_top_degree():
            return span
        rows = span.polynomials()
        d += 1
