"""The order ideal polytope of a stabilized canonical form.

Integral points are checked with an exact rank oracle instead of the
exponential family of rank inequalities; the LP exporter writes the
divisibility and cardinality rows plus a bounded set of rank rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, lcm
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .border_basis import DegreeSignature, degree_signature
from .linalg import CanonicalForm, rank
from .poly import DEGREVLEX, Monomial, OrderIdeal, Polynomial, is_order_ideal, lower_neighbours

LP_LINE_WIDTH = 255


@dataclass
class RankOracle:
    """Per-degree leading-form blocks ``LF(M_i)`` and their column layouts."""

    n: int
    d: int
    columns: Dict[int, Tuple[Monomial, ...]]
    leading: Dict[int, List[Polynomial]]
    signature: DegreeSignature
    _qvec: Dict[int, Dict[Monomial, Tuple[int, ...]]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_canonical(cls, cf: CanonicalForm) -> "RankOracle":
        sig = degree_signature(cf)
        cols = {i: cf.universe.block(i) for i in range(cf.d + 1)}
        lead = {i: cf.leading_forms(i) for i in range(cf.d + 1)}
        return cls(cf.n, cf.d, cols, lead, sig)

    def slice_independent(self, i: int, chosen: Iterable[Monomial]) -> bool:
        """Determinant test: ``LF(M_i)`` on the complement columns is invertible."""
        chosen = set(chosen)
        if len(chosen) != self.signature[i]:
            return False
        lf = self.leading.get(i, [])
        rest = [m for m in self.columns.get(i, ()) if m not in chosen]
        if len(rest) != len(lf):
            return False
        return rank(lf, rest, induced=True) == len(lf)

    def slice_independent_by_rank(self, i: int, chosen: Iterable[Monomial]) -> bool:
        """Direct test ``rk[LF(M_i); units of chosen] = |M_i| + |chosen|``."""
        chosen = list(chosen)
        lf = self.leading.get(i, [])
        units = [{m: Fraction(1)} for m in chosen]
        return rank(lf + units, self.columns.get(i, ())) == len(lf) + len(chosen)

    def is_admissible(self, o) -> bool:
        return is_admissible(o, self)

    def quotient_vectors(self, i: int) -> Dict[Monomial, Tuple[int, ...]]:
        """Images of the degree-``i`` monomials in ``<T_i> / <LF(M_i)>`` as primitive integer vectors."""
        if i in self._qvec:
            return self._qvec[i]
        lf = self.leading.get(i, [])
        pivots = {DEGREVLEX.leading_term(p): p for p in lf}
        free = [m for m in self.columns.get(i, ()) if m not in pivots]
        pos = {m: k for k, m in enumerate(free)}
        out = {}
        for m in self.columns.get(i, ()):
            vec = [Fraction(0)] * len(free)
            if m in pos:
                vec[pos[m]] = Fraction(1)
            else:
                for t, c in pivots[m].terms.items():
                    if t != m:
                        vec[pos[t]] = -c
            out[m] = _primitive(vec)
        self._qvec[i] = out
        return out


def _primitive(vec: Sequence[Fraction]) -> Tuple[int, ...]:
    den = lcm(*(v.denominator for v in vec)) if vec else 1
    ints = [int(v * den) for v in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def is_admissible(o, oracle: RankOracle, sig: Optional[DegreeSignature] = None) -> bool:
    """Closed under division, per-degree sizes equal ``sig``, and every slice independent."""
    sig = oracle.signature if sig is None else sig
    mons = o.monomials if isinstance(o, OrderIdeal) else frozenset(tuple(m) for m in o)
    if any(len(m) != oracle.n for m in mons) or not is_order_ideal(mons):
        return False
    slices: Dict[int, list] = {}
    for m in mons:
        slices.setdefault(sum(m), []).append(m)
    top = max(len(sig) - 1, max(slices, default=0))
    for i in range(top + 1):
        if len(slices.get(i, ())) != sig[i]:
            return False
    return all(oracle.slice_independent(i, s) for i, s in slices.items())


@dataclass(frozen=True)
class RankConstraint:
    """``sum_{m in U} z_m >= |U| - rk U~``."""

    degree: int
    subset: Tuple[Monomial, ...]
    rhs: int


@dataclass
class PolytopeModel:
    """Divisibility, cardinality and (lazily) rank rows over ``z_m, m in T_{<=d-1}``."""

    variables: Tuple[Monomial, ...]
    divisibility: List[Tuple[Monomial, Monomial]]
    cardinality: Dict[int, int]
    oracle: RankOracle

    @property
    def n(self) -> int:
        return self.oracle.n

    @property
    def d(self) -> int:
        return self.oracle.d

    def rank_constraints(self, i: int, limit: Optional[int] = None,
                         scan_limit: Optional[int] = None) -> Iterator[RankConstraint]:
        """Non-trivial rank rows of degree ``i`` in lexicographic subset order."""
        lf = self.oracle.leading.get(i, [])
        cols = self.oracle.columns.get(i, ())
        k = len(lf)
        if k == 0 or i >= self.d:
            return
        emitted = scanned = 0
        for sub in combinations(cols, k):
            if scan_limit is not None and scanned >= scan_limit:
                return
            scanned += 1
            rhs = k - rank(lf, sub, induced=True)
            if rhs > 0:
                yield RankConstraint(i, sub, rhs)
                emitted += 1
                if limit is not None and emitted >= limit:
                    return

    def is_feasible(self, z: Sequence[int]) -> bool:
        """Integral feasibility: divisibility, cardinality and the rank oracle."""
        vals = dict(zip(self.variables, z))
        if any(v not in (0, 1) for v in vals.values()):
            return False
        if any(vals[a] < vals[b] for a, b in self.divisibility):
            return False
        for i in range(self.d):
            if sum(vals[m] for m in self.oracle.columns[i]) != self.oracle.signature[i]:
                return False
        o = [m for m, v in vals.items() if v]
        return is_admissible(o, self.oracle)


def build_model(m: CanonicalForm) -> PolytopeModel:
    if not m.stabilized:
        raise ValueError("canonical form is not marked as stabilized with full top degree")
    oracle = RankOracle.from_canonical(m)
    d = m.d
    variables = []
    for i in range(d):
        variables.extend(m.universe.block(i))
    var_set = set(variables)
    div = [(low, high) for high in variables for low in lower_neighbours(high) if low in var_set]
    sig = oracle.signature
    card = {i: sig[i] for i in range(1, d)}
    # the degree-0 row is implied by divisibility unless nothing above it is chosen
    if d >= 1 and not any(card.values()):
        card = {0: sig[0], **card}
    return PolytopeModel(tuple(variables), div, card, oracle)


def characteristic_vector(o: OrderIdeal, model: PolytopeModel) -> Tuple[int, ...]:
    extra = set(o.monomials) - set(model.variables)
    if extra:
        raise ValueError(f"monomial {next(iter(extra))} is not a model variable")
    return tuple(int(m in o.monomials) for m in model.variables)


def order_ideal_of(z: Sequence[int], model: PolytopeModel) -> OrderIdeal:
    """Inverse of :func:`characteristic_vector`."""
    if len(z) != len(model.variables):
        raise ValueError("vector length does not match the model")
    return OrderIdeal(frozenset(m for m, v in zip(model.variables, z) if v), model.n)


# -- CPLEX LP export ------------------------------------------------------

def lp_name(m: Monomial) -> str:
    if not any(m):
        return "z_1"
    parts = []
    for j, e in enumerate(m):
        if e == 1:
            parts.append(f"x{j + 1}")
        elif e > 1:
            parts.append(f"x{j + 1}_{e}")
    return "z_" + ".".join(parts)


def _coef_term(c: int, name: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    body = name if a == 1 else f"{a} {name}"
    if first:
        return ("- " if c < 0 else "") + body
    return f"{sign} {body}"


def _wrap(head: str, pieces: List[str], tail: str = "") -> List[str]:
    lines, cur = [], head
    for p in pieces + ([tail] if tail else []):
        if len(cur) + 1 + len(p) > LP_LINE_WIDTH:
            lines.append(cur)
            cur = "   " + p
        else:
            cur = f"{cur} {p}" if cur else p
    lines.append(cur)
    return lines


def export_lp(model: PolytopeModel, c: Optional[Mapping[Monomial, int]] = None,
              subset_budget: Optional[int] = 50, scan_limit: Optional[int] = 100_000) -> str:
    """Write the model in CPLEX LP format.

    At most ``subset_budget`` non-trivial rank rows are emitted per degree
    (``None`` emits all of them); when rows were left out the file is marked
    as a relaxation in its header.
    """
    weights = dict(c or {})
    names = {m: lp_name(m) for m in model.variables}
    rank_rows: List[RankConstraint] = []
    truncated = False
    for i in range(model.d):
        k = len(model.oracle.leading.get(i, []))
        cols = len(model.oracle.columns.get(i, ()))
        limit = None if subset_budget is None else subset_budget + 1
        got = list(model.rank_constraints(i, limit, scan_limit))
        if subset_budget is not None and len(got) > subset_budget:
            got = got[:subset_budget]
            truncated = True
        if k and scan_limit is not None and comb(cols, k) > scan_limit:
            truncated = True
        rank_rows.extend(got)

    out = [
        "\\ Order ideal polytope: 0/1 points are the degree-compatible order ideals",
        f"\\ variables: {len(model.variables)}, universe degree {model.d}, "
        f"signature {model.oracle.signature}",
        "\\ rank rows: subsets U of degree-i monomials with |U| = |M_i| and rank deficit > 0,",
        f"\\ scanned in lexicographic order, at most {subset_budget} per degree",
    ]
    if truncated:
        out.append("\\ RELAXATION: not every rank constraint was emitted; "
                   "integral points may include inadmissible order ideals")
    out.append("Maximize")
    obj = [_coef_term(weights.get(m, 0) or 0, names[m], k == 0)
           for k, m in enumerate(v for v in model.variables if weights.get(v))]
    if not obj:
        obj = [f"0 {names[model.variables[0]]}"] if model.variables else []
    out.extend(_wrap(" obj:", obj))
    out.append("Subject To")
    for k, (low, high) in enumerate(model.divisibility):
        out.append(f" div{k}: {names[low]} - {names[high]} >= 0")
    for i, rhs in sorted(model.cardinality.items()):
        cols = [names[m] for m in model.oracle.columns[i]]
        pieces = [cols[0]] + [f"+ {x}" for x in cols[1:]]
        out.extend(_wrap(f" card{i}:", pieces, f"= {rhs}"))
    for k, rc in enumerate(rank_rows):
        cols = [names[m] for m in rc.subset]
        pieces = [cols[0]] + [f"+ {x}" for x in cols[1:]]
        out.extend(_wrap(f" rank{rc.degree}_{k}:", pieces, f">= {rc.rhs}"))
    out.append("Bounds")
    for m in model.variables:
        out.append(f" 0 <= {names[m]} <= 1")
    out.append("Binary")
    out.extend(_wrap("", [names[m] for m in model.variables]))
    out.append("End")
    return "\n".join(out) + "\n"
