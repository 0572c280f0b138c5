"""Exact Gaussian elimination on sparse polynomial rows.

Rows are plain ``dict`` objects mapping monomials to :class:`Fraction`
coefficients.  A :class:`ReducedSet` keeps its rows fully reduced: every row
is monic in its pivot, and no pivot occurs in any other row.  With a
degree-compatible term ordering as the pivot rule this is exactly the
canonical form of a degree-blocked generating set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .poly import DEGREVLEX, Monomial, Polynomial, TermOrdering, Universe

Row = Dict[Monomial, Fraction]


class ReducedSet:
    """A basis in reduced row echelon form under a pivot rule.

    ``key`` ranks monomials; the pivot of a row is its key-maximal monomial.
    For the term-ordering mode this is ``ordering.key``; for the head mode
    (left-most column) pass the negated column position, see :func:`head_key`.
    """

    def __init__(self, nvars: int, key: Callable[[Monomial], object] = DEGREVLEX.key):
        self.nvars = nvars
        self._key_fn = key
        self._keys: Dict[Monomial, object] = {}
        self.rows: Dict[Monomial, Row] = {}
        # monomial -> pivots of the rows containing it off the pivot
        self._occurs: Dict[Monomial, set] = {}

    @classmethod
    def for_ordering(cls, nvars: int, ordering: TermOrdering = DEGREVLEX) -> "ReducedSet":
        return cls(nvars, ordering.key)

    def key(self, m: Monomial):
        k = self._keys.get(m)
        if k is None:
            k = self._keys[m] = self._key_fn(m)
        return k

    def copy(self) -> "ReducedSet":
        other = ReducedSet(self.nvars, self._key_fn)
        other._keys = self._keys
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        other._occurs = {m: set(s) for m, s in self._occurs.items()}
        return other

    def __len__(self) -> int:
        return len(self.rows)

    def __contains__(self, pivot) -> bool:
        return pivot in self.rows

    def pivots(self) -> List[Monomial]:
        return sorted(self.rows, key=self.key)

    def reduce(self, terms: Mapping[Monomial, Fraction]) -> Row:
        """Remainder of ``terms`` after eliminating every pivot."""
        out = dict(terms)
        rows = self.rows
        for m in [m for m in out if m in rows]:
            c = out.pop(m)
            for t, a in rows[m].items():
                if t == m:
                    continue
                v = out.get(t, 0) - c * a
                if v:
                    out[t] = v
                else:
                    del out[t]
        return out

    def insert(self, terms: Mapping[Monomial, Fraction]) -> Optional[Monomial]:
        """Add a vector to the span; return the new pivot, or ``None`` if dependent."""
        r = self.reduce(terms)
        if not r:
            return None
        return self._insert_reduced(r)

    def _insert_reduced(self, r: Row) -> Monomial:
        p = max(r, key=self.key)
        lc = r[p]
        if lc != 1:
            inv = 1 / lc
            r = {m: c * inv for m, c in r.items()}
        # eliminate p from every row that contains it
        for q in list(self._occurs.pop(p, ())):
            row = self.rows[q]
            c = row.pop(p)
            for t, a in r.items():
                if t == p:
                    continue
                v = row.get(t, 0) - c * a
                if v:
                    if t not in row:
                        self._occurs.setdefault(t, set()).add(q)
                    row[t] = v
                elif t in row:
                    del row[t]
                    self._occurs[t].discard(q)
        for t in r:
            if t != p:
                self._occurs.setdefault(t, set()).add(p)
        self.rows[p] = r
        return p

    def extend(self, polys: Iterable) -> List[Monomial]:
        """Insert several vectors; return the new pivots in insertion order."""
        out = []
        for f in polys:
            terms = f.terms if isinstance(f, Polynomial) else f
            p = self.insert(terms)
            if p is not None:
                out.append(p)
        return out

    def contains_vector(self, terms: Mapping[Monomial, Fraction]) -> bool:
        return not self.reduce(terms)

    def polynomial(self, pivot: Monomial) -> Polynomial:
        return Polynomial._raw(dict(self.rows[pivot]), self.nvars)

    def polynomials(self) -> List[Polynomial]:
        """Rows sorted by pivot, largest first."""
        return [self.polynomial(p) for p in sorted(self.rows, key=self.key, reverse=True)]


def head_key(columns: Sequence[Monomial]) -> Callable[[Monomial], int]:
    """Pivot rule picking the left-most monomial in ``columns``."""
    pos = {m: -i for i, m in enumerate(columns)}
    return pos.__getitem__


def gauss_el(v: ReducedSet, g: Iterable[Polynomial]) -> Tuple[ReducedSet, List[Polynomial]]:
    """Extend ``v`` by ``g``; return the extended set and the new rows ``W``.

    ``v`` itself is left untouched.
    """
    out = v.copy()
    new = out.extend(g)
    return out, [out.polynomial(p) for p in new]


@dataclass
class CanonicalForm:
    """Degree-blocked, fully interreduced generating set of a vector space.

    ``blocks[i]`` lists the elements of degree exactly ``i``.  ``stabilized``
    records whether the space is known to be stable under neighbourhood
    extension truncated to ``universe`` with every monomial of top degree
    covered by a leading term.
    """

    blocks: Dict[int, List[Polynomial]]
    universe: Universe
    reduced: ReducedSet
    stabilized: bool = False

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def d(self) -> int:
        return self.universe.d

    def block(self, i: int) -> List[Polynomial]:
        return self.blocks.get(i, [])

    def leading_forms(self, i: int) -> List[Polynomial]:
        return [p.homogeneous_part(i) for p in self.block(i)]

    def pivots(self, i: int) -> List[Monomial]:
        return [DEGREVLEX.leading_term(p) for p in self.block(i)]

    def polynomials(self) -> List[Polynomial]:
        out = []
        for i in sorted(self.blocks, reverse=True):
            out.extend(self.blocks[i])
        return out

    def __len__(self) -> int:
        return sum(len(b) for b in self.blocks.values())


def canonical_form(rows: Iterable[Polynomial], u: Universe, stabilized: bool = False) -> CanonicalForm:
    """Bring a finite set of polynomials into canonical form inside ``u``."""
    red = ReducedSet.for_ordering(u.n, DEGREVLEX)
    for f in rows:
        if not u.contains_support(f):
            raise ValueError(f"support of {f} is outside the universe of degree {u.d}")
        red.insert(f.terms)
    return _canonical_from_reduced(red, u, stabilized)


def _canonical_from_reduced(red: ReducedSet, u: Universe, stabilized: bool) -> CanonicalForm:
    blocks: Dict[int, List[Polynomial]] = {}
    for p in sorted(red.rows, key=DEGREVLEX.key, reverse=True):
        blocks.setdefault(sum(p), []).append(red.polynomial(p))
    return CanonicalForm(blocks, u, red, stabilized)


def _matrix(rows, columns: Sequence[Monomial], induced: bool) -> List[List[Fraction]]:
    pos = {m: j for j, m in enumerate(columns)}
    mat = []
    for f in rows:
        terms = f.terms if isinstance(f, Polynomial) else f
        row = [Fraction(0)] * len(columns)
        for m, c in terms.items():
            j = pos.get(m)
            if j is None:
                if induced:
                    continue
                raise ValueError(f"monomial {m} is missing from the column list")
            row[j] = Fraction(c)
        mat.append(row)
    return mat


def matrix_rank(mat: List[List[Fraction]]) -> int:
    """Exact rank of a dense rational matrix (the input is consumed)."""
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][j]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pr = mat[r]
        inv = 1 / pr[j]
        for i in range(r + 1, len(mat)):
            c = mat[i][j]
            if c:
                f = c * inv
                row = mat[i]
                for k in range(j, ncols):
                    if pr[k]:
                        row[k] -= f * pr[k]
        r += 1
        if r == len(mat):
            break
    return r


def rank(rows, columns: Sequence[Monomial], *, induced: bool = False) -> int:
    """Exact rank of the coefficient matrix of ``rows`` on ``columns``.

    With ``induced=True`` coefficients outside ``columns`` are dropped (the
    induced sub-matrix); otherwise they are an error.
    """
    return matrix_rank(_matrix(rows, columns, induced))
