"""Monomials, exact rational polynomials, term orderings and order ideals.

Monomials are plain tuples of non-negative exponents, ``(2, 0, 1)`` being
``x1^2*x3``.  Coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]


def unit(n: int) -> Monomial:
    return (0,) * n


def variable(j: int, n: int) -> Monomial:
    """The monomial ``x_{j+1}`` (0-based index ``j``)."""
    e = [0] * n
    e[j] = 1
    return tuple(e)


def degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)} variables")
    return all(x <= y for x, y in zip(a, b))


def lower_neighbours(m: Monomial) -> Iterator[Monomial]:
    """Divisors of ``m`` of degree ``deg(m) - 1``."""
    for j, e in enumerate(m):
        if e:
            yield m[:j] + (e - 1,) + m[j + 1:]


def upper_neighbours(m: Monomial) -> Iterator[Monomial]:
    for j in range(len(m)):
        yield m[:j] + (m[j] + 1,) + m[j + 1:]


def mono_str(m: Monomial, names: Optional[Sequence[str]] = None, sep: str = "*") -> str:
    """Render a monomial, e.g. ``x1^2*x3``; the unit renders as ``1``."""
    if names is None:
        names = [f"x{j + 1}" for j in range(len(m))]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return sep.join(parts) if parts else "1"


# -- term orderings ---------------------------------------------------------

@dataclass(frozen=True)
class TermOrdering:
    """A degree-compatible term ordering.

    ``priority`` lists variable indices from most to least significant; the
    default is ``x1 > x2 > ... > xn``.
    """

    kind: str = "degrevlex"
    priority: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "deglex"):
            raise ValueError(f"unknown term ordering {self.kind!r}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))
            if sorted(self.priority) != list(range(len(self.priority))):
                raise ValueError("variable priority must be a permutation")

    def key(self, m: Monomial):
        """Sort key; larger keys are larger monomials."""
        if self.priority is not None:
            m = tuple(m[p] for p in self.priority)
        if self.kind == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        return (sum(m), m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def sorted(self, monomials: Iterable[Monomial], descending: bool = True) -> list:
        return sorted(monomials, key=self.key, reverse=descending)

    def leading_term(self, p: "Polynomial") -> Monomial:
        if p.is_zero():
            raise ValueError("the zero polynomial has no leading term")
        return max(p.terms, key=self.key)


DEGREVLEX = TermOrdering("degrevlex")
DEGLEX = TermOrdering("deglex")


# -- polynomials ------------------------------------------------------------

class Polynomial:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "nvars")

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None,
                 nvars: Optional[int] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[tuple(m)] = Fraction(c)
        if nvars is None:
            if not clean:
                raise ValueError("nvars is required for the zero polynomial")
            nvars = len(next(iter(clean)))
        for m in clean:
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            if min(m, default=0) < 0:
                raise ValueError(f"negative exponent in {m}")
        self._terms = clean
        self.nvars = nvars

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], nvars: int) -> "Polynomial":
        # trusted constructor: no zero coefficients, tuple keys
        p = cls.__new__(cls)
        p._terms = terms
        p.nvars = nvars
        return p

    @classmethod
    def monomial(cls, m: Monomial, c: Coefficient = 1) -> "Polynomial":
        return cls({tuple(m): c}, len(m))

    @classmethod
    def constant(cls, c: Coefficient, nvars: int) -> "Polynomial":
        return cls({unit(nvars): c}, nvars)

    @classmethod
    def var(cls, j: int, nvars: int) -> "Polynomial":
        return cls({variable(j, nvars): 1}, nvars)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(map(sum, self._terms))

    def homogeneous_part(self, i: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if sum(m) == i}, self.nvars)

    def leading_form(self) -> "Polynomial":
        return self.homogeneous_part(self.degree())

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            out: Dict[Monomial, Fraction] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = mono_mul(m1, m2)
                    v = out.get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
            return Polynomial._raw(out, self.nvars)
        c = Fraction(other)
        if not c:
            return Polynomial._raw({}, self.nvars)
        return Polynomial._raw({m: a * c for m, a in self._terms.items()}, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, k: int):
        out = Polynomial.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, m: Monomial) -> "Polynomial":
        """Multiply by the monomial ``m``."""
        return Polynomial._raw({mono_mul(t, m): c for t, c in self._terms.items()}, self.nvars)

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def to_string(self, names: Optional[Sequence[str]] = None,
                  ordering: TermOrdering = DEGREVLEX) -> str:
        if not self._terms:
            return "0"
        out = []
        for m in ordering.sorted(self._terms):
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono_str(m, names)
            if body == "1":
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            out.append((sign, text))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, text in out[1:]:
            s += f" {sign} {text}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def leading_parts(p: Polynomial, ordering: TermOrdering = DEGREVLEX):
    """``(LT, LC, LF)`` of a nonzero polynomial."""
    lt = ordering.leading_term(p)
    return lt, p.terms[lt], p.leading_form()


# -- universes and order ideals --------------------------------------------

@lru_cache(maxsize=None)
def monomials_of_degree(n: int, i: int) -> Tuple[Monomial, ...]:
    """All monomials of degree ``i`` in ``n`` variables, degrevlex-descending."""
    if n == 0:
        return ((),) if i == 0 else ()

    def gen(k, rest):
        if k == 1:
            yield (rest,)
            return
        for e in range(rest, -1, -1):
            for tail in gen(k - 1, rest - e):
                yield (e,) + tail

    return tuple(DEGREVLEX.sorted(gen(n, i)))


@dataclass(frozen=True)
class Universe:
    """The computational universe of all monomials of degree at most ``d``."""

    n: int
    d: int

    def block(self, i: int) -> Tuple[Monomial, ...]:
        if i < 0 or i > self.d:
            return ()
        return monomials_of_degree(self.n, i)

    def monomials(self) -> Tuple[Monomial, ...]:
        """Column order: degree-descending blocks, degrevlex inside a block."""
        out = []
        for i in range(self.d, -1, -1):
            out.extend(self.block(i))
        return tuple(out)

    def __contains__(self, m) -> bool:
        return len(m) == self.n and sum(m) <= self.d

    def __len__(self) -> int:
        return comb(self.n + self.d, self.d)

    def __iter__(self):
        return iter(self.monomials())

    def contains_support(self, p: Polynomial) -> bool:
        return p.nvars == self.n and all(sum(m) <= self.d for m in p.terms)


def is_order_ideal(monomials: Iterable[Monomial]) -> bool:
    s = set(monomials)
    return all(t in s for m in s for t in lower_neighbours(m))


@dataclass(frozen=True)
class OrderIdeal:
    """A finite set of monomials closed under taking divisors."""

    monomials: frozenset
    nvars: int
    _slices: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        mons = frozenset(tuple(m) for m in self.monomials)
        object.__setattr__(self, "monomials", mons)
        for m in mons:
            if len(m) != self.nvars:
                raise ValueError(f"monomial {m} does not have {self.nvars} exponents")
        if not is_order_ideal(mons):
            raise ValueError("set of monomials is not closed under division")
        slices: Dict[int, list] = {}
        for m in mons:
            slices.setdefault(sum(m), []).append(m)
        object.__setattr__(self, "_slices",
                           {i: tuple(DEGREVLEX.sorted(v)) for i, v in sorted(slices.items())})

    @classmethod
    def of(cls, monomials: Iterable[Monomial], nvars: int) -> "OrderIdeal":
        return cls(frozenset(monomials), nvars)

    @property
    def slices(self) -> Dict[int, Tuple[Monomial, ...]]:
        return dict(self._slices)

    def slice(self, i: int) -> Tuple[Monomial, ...]:
        return self._slices.get(i, ())

    @property
    def max_degree(self) -> int:
        return max(self._slices, default=-1)

    def signature(self) -> Tuple[int, ...]:
        return tuple(len(self.slice(i)) for i in range(self.max_degree + 1))

    def sorted(self) -> list:
        """Members in column order (degree-descending, degrevlex)."""
        out = []
        for i in sorted(self._slices, reverse=True):
            out.extend(self._slices[i])
        return out

    def border(self) -> frozenset:
        return border(self)

    def __contains__(self, m) -> bool:
        return tuple(m) in self.monomials

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.monomials)


def border(o: Union[OrderIdeal, Iterable[Monomial]], n: Optional[int] = None) -> frozenset:
    """The border ``{x_j t : t in O} - O``; the border of the empty ideal is ``{1}``."""
    if isinstance(o, OrderIdeal):
        mons, n = o.monomials, o.nvars
    else:
        mons = frozenset(tuple(m) for m in o)
        if n is None:
            raise ValueError("variable count required")
        if not is_order_ideal(mons):
            raise ValueError("set of monomials is not closed under division")
    if not mons:
        return frozenset([unit(n)])
    return frozenset(u for m in mons for u in upper_neighbours(m)) - mons


def binomial_block_size(n: int, i: int) -> int:
    """``|T^n_{=i}|``."""
    return comb(n + i - 1, i) if i >= 0 else 0
