"""Border bases: final reduction, the classical and generalized algorithms,
basis transformation and a rank-based verifier."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .linalg import CanonicalForm, ReducedSet, head_key, rank
from .poly import (DEGREVLEX, Monomial, OrderIdeal, Polynomial, TermOrdering, Universe,
                   binomial_block_size, border)
from .stable_span import DEFAULT_DEGREE_CAP, DegreeCapExceeded, SpanBasis, l_stable_span, terminal_span


class InadmissibleOrderIdeal(ValueError):
    """The order ideal does not support a border basis of the ideal."""


@dataclass(frozen=True)
class DegreeSignature:
    """Per-degree sizes ``|O^{=i}|`` shared by all degree-compatible order ideals."""

    sizes: Tuple[int, ...]

    def __post_init__(self):
        s = list(self.sizes)
        while s and s[-1] == 0:
            s.pop()
        if any(x < 0 for x in s):
            raise ValueError("signature entries must be non-negative")
        object.__setattr__(self, "sizes", tuple(s))

    def __getitem__(self, i: int) -> int:
        return self.sizes[i] if 0 <= i < len(self.sizes) else 0

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def __str__(self):
        return "(" + ",".join(map(str, self.sizes)) + ")"


@dataclass(frozen=True)
class BorderBasis:
    """``g_j = b_j - sum_i alpha_ij t_i`` for the border terms ``b_j`` of ``order_ideal``."""

    order_ideal: OrderIdeal
    border: Tuple[Monomial, ...]
    polynomials: Tuple[Polynomial, ...]

    @property
    def nvars(self) -> int:
        return self.order_ideal.nvars

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)

    def polynomial_for(self, b: Monomial) -> Polynomial:
        return self.polynomials[self.border.index(tuple(b))]

    @property
    def coefficients(self) -> List[List[Fraction]]:
        """The ``nu x mu`` matrix: row ``j`` holds ``alpha_ij`` over the sorted order ideal."""
        ts = self.order_ideal.sorted()
        return [[-g.coefficient(t) for t in ts] for g in self.polynomials]


def _make_basis(o: OrderIdeal, rows: dict) -> BorderBasis:
    bd = DEGREVLEX.sorted(border(o))
    return BorderBasis(o, tuple(bd), tuple(Polynomial._raw(dict(rows[b]), o.nvars) for b in bd))


def final_red(v: SpanBasis, o: OrderIdeal) -> BorderBasis:
    """Interreduce ``v`` so that non-leading terms lie in ``o``; keep the border rows."""
    u = v.universe
    lts = v.leading_terms()
    if lts & o.monomials:
        raise ValueError("order ideal intersects the leading terms of the span")
    if set(u.monomials()) - lts != set(o.monomials):
        raise ValueError("order ideal is not the complement of the leading terms")
    bd = border(o)
    if any(m not in u for m in bd):
        raise ValueError("border of the order ideal is not contained in the universe")
    key = v.rows.key
    done: dict = {}
    for lt in sorted(lts, key=key):
        row = dict(v.rows.rows[lt])
        for h in [m for m in row if m != lt and m not in o.monomials]:
            c = row.get(h)
            if not c:
                continue
            for t, a in done[h].items():
                val = row.get(t, 0) - c * a
                if val:
                    row[t] = val
                else:
                    row.pop(t, None)
        lc = row[lt]
        if lc != 1:
            row = {m: c / lc for m, c in row.items()}
        done[lt] = row
    return _make_basis(o, {b: done[b] for b in bd})


def bbasis_classic(f: Sequence[Polynomial], ordering: TermOrdering = DEGREVLEX,
                   degree_cap: int = DEFAULT_DEGREE_CAP, nvars: Optional[int] = None) -> BorderBasis:
    """Classical border basis algorithm for the order ideal induced by ``ordering``."""
    f = [p for p in f if not p.is_zero()]
    n = nvars if nvars is not None else f[0].nvars
    d = max((p.degree() for p in f), default=0)
    rows = f
    while d <= degree_cap:
        u = Universe(n, d)
        span = l_stable_span(rows, u, ordering)
        o = OrderIdeal(frozenset(u.monomials()) - span.leading_terms(), n)
        if all(m in u for m in border(o)):
            return final_red(span, o)
        rows = span.polynomials()
        d += 1
    raise DegreeCapExceeded(
        f"degree cap {degree_cap} reached; the ideal is likely not zero-dimensional")


Selector = Callable[[CanonicalForm], OrderIdeal]


def degrevlex_selector(cf: CanonicalForm) -> OrderIdeal:
    """The order ideal of non-leading terms of the canonical form."""
    lts = set(cf.reduced.rows)
    return OrderIdeal(frozenset(m for m in cf.universe.monomials() if m not in lts), cf.n)


def fixed_selector(o: OrderIdeal) -> Selector:
    return lambda cf: o


def basis_transformation(v: SpanBasis, o: OrderIdeal) -> BorderBasis:
    """Row-reduce ``v`` with every column of ``o`` moved to the right; keep border heads."""
    u = v.universe
    if not isinstance(o, OrderIdeal):
        raise TypeError("an OrderIdeal is required")
    if o.nvars != u.n:
        raise ValueError("order ideal and span have different variable counts")
    bd = border(o)
    if any(m not in u for m in bd):
        raise ValueError("border of the order ideal is not contained in the universe")
    cols = [m for m in u.monomials() if m not in o.monomials] + o.sorted()
    red = ReducedSet(u.n, head_key(cols))
    red.extend(v.rows.rows.values())
    bad = [m for m in red.rows if m in o.monomials]
    if bad:
        raise InadmissibleOrderIdeal(f"head {bad[0]} lies inside the order ideal")
    missing = [b for b in bd if b not in red.rows]
    if missing or len(red) + len(o) != len(u):
        raise InadmissibleOrderIdeal("span and order ideal are not complementary")
    return _make_basis(o, red.rows)


def bbasis_general(f: Sequence[Polynomial], selector: Selector = degrevlex_selector,
                   degree_cap: int = DEFAULT_DEGREE_CAP, nvars: Optional[int] = None) -> BorderBasis:
    """Generalized border basis algorithm: terminal span, choose ``O``, transform."""
    from .polytope import RankOracle

    span = terminal_span(f, nvars, degree_cap)
    cf = span.canonical()
    o = selector(cf)
    oracle = RankOracle.from_canonical(cf)
    if not oracle.is_admissible(o):
        raise InadmissibleOrderIdeal("selected order ideal is not degree-compatible for the ideal")
    return basis_transformation(span, o)


def degree_signature(m: CanonicalForm) -> DegreeSignature:
    """``|O^{=i}| = |T^n_{=i}| - |M_i|`` for ``i < d``, zero from ``d`` on."""
    if not m.stabilized:
        raise ValueError("canonical form is not marked as stabilized with full top degree")
    return DegreeSignature(tuple(binomial_block_size(m.n, i) - len(m.block(i)) for i in range(m.d)))


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_border_basis(g: BorderBasis, f: Sequence[Polynomial], u: Universe) -> Verification:
    """Check shape, membership in the L-stable span, and ``<L> = F_L ⊕ <O>``."""
    o = g.order_ideal
    bd = border(o)
    if set(g.border) != bd or len(g.polynomials) != len(bd):
        return Verification(False, "border terms do not match the border of the order ideal")
    if any(m not in u for m in bd):
        return Verification(False, "border is not contained in the universe")
    for b, p in zip(g.border, g.polynomials):
        if p.coefficient(b) != 1:
            return Verification(False, f"border term {b} does not have coefficient 1")
        stray = [m for m in p.terms if m != b and m not in o.monomials]
        if stray:
            return Verification(False, f"polynomial for {b} has support outside O: {stray[0]}")
    span = l_stable_span(f, u)
    for b, p in zip(g.border, g.polynomials):
        if not span.rows.contains_vector(p.terms):
            return Verification(False, f"polynomial for {b} is not in the L-stable span")
    dim_span = len(span)
    if dim_span + len(o) != len(u):
        return Verification(False, f"dimensions {dim_span} + {len(o)} != {len(u)}")
    units = [{t: Fraction(1)} for t in o.monomials]
    if rank(span.polynomials() + units, u.monomials()) != len(u):
        return Verification(False, "span and order ideal intersect")
    return Verification(True)
