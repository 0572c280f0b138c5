"""Text formats: polynomials, system files, point files, preferences, JSON.

Also home of :func:`vanishing_ideal`, which turns a point file into a
polynomial system.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import ReducedSet
from .poly import DEGREVLEX, Monomial, OrderIdeal, Polynomial, monomials_of_degree, unit

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None, line: Optional[int] = None):
        self.message = message
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"column {position + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


def default_names(n: int) -> List[str]:
    return [f"x{j + 1}" for j in range(n)]


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            k = pos
            while text[k].isspace():
                k += 1
            raise ParseError(f"unexpected character {text[k]!r}", k)
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, index: Mapping[str, int], n: int):
        self.toks = _tokens(text)
        self.k = 0
        self.index = index
        self.n = n

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_int(self) -> int:
        kind, val, pos = self.take()
        if kind != "num":
            raise ParseError("expected an integer", pos)
        return int(val)

    def poly(self) -> Dict[Monomial, Fraction]:
        terms: Dict[Monomial, Fraction] = {}
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            c, m = self.term()
            v = terms.get(m, 0) + sign * c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
            kind, val, pos = self.peek()
            if kind == "end":
                return terms
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            raise ParseError(f"unexpected {val!r}", pos)

    def term(self) -> Tuple[Fraction, Monomial]:
        coef = Fraction(1)
        exps = [0] * self.n
        while True:
            kind, val, pos = self.take()
            if kind == "num":
                num = int(val)
                if self.peek()[:2] == ("op", "/"):
                    self.take()
                    den = self.expect_int()
                    if den == 0:
                        raise ParseError("zero denominator", self.toks[self.k - 1][2])
                    coef *= Fraction(num, den)
                else:
                    coef *= num
            elif kind == "name":
                j = self.index.get(val)
                if j is None:
                    raise ParseError(f"unknown variable {val!r}", pos)
                e = 1
                if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
                    self.take()
                    e = self.expect_int()
                exps[j] += e
            else:
                raise ParseError("expected a coefficient or a variable" if kind != "end"
                                 else "unexpected end of input", pos)
            if self.peek()[:2] == ("op", "*"):
                self.take()
                continue
            if self.peek()[0] == "name":  # juxtaposition, as in 2x or 3 x y
                continue
            return coef, tuple(exps)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse a signed sum of products such as ``3/2*x^2*y - z + 1``.

    Both ``^`` and ``**`` denote powers; whitespace is ignored.  The
    positional names ``x1..xn`` are accepted unless they clash with a
    declared name.
    """
    names = list(variables)
    index = {v: j for j, v in enumerate(names)}
    for j in range(len(names)):
        index.setdefault(f"x{j + 1}", j)
    return Polynomial._raw(_Parser(text, index, len(names)).poly(), len(names))


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, names: Sequence[str], sep: str = "*") -> str:
    parts = [names[j] if e == 1 else f"{names[j]}^{e}" for j, e in enumerate(m) if e]
    return sep.join(parts) if parts else "1"


def format_polynomial(p: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """Canonical text: terms in descending degrevlex order."""
    names = list(names) if names is not None else default_names(p.nvars)
    if p.is_zero():
        return "0"
    out = []
    for m in DEGREVLEX.sorted(p.terms):
        c = p.terms[m]
        a = abs(c)
        if any(m):
            body = format_monomial(m, names) if a == 1 else f"{_format_coef(a)}*{format_monomial(m, names)}"
        else:
            body = _format_coef(a)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


# -- monomial strings of the JSON / preference formats ----------------------

def monomial_key(m: Monomial, names: Optional[Sequence[str]] = None) -> str:
    """``x1^2.x2`` style; ``1`` for the unit."""
    names = list(names) if names is not None else default_names(len(m))
    return format_monomial(m, names, sep=".")


def parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    """Inverse of :func:`monomial_key`; also accepts ``*`` and ``x1..xn`` names."""
    n = len(names)
    text = text.strip()
    if text == "1":
        return unit(n)
    index = {v: j for j, v in enumerate(names)}
    for j in range(n):
        index.setdefault(f"x{j + 1}", j)
    exps = [0] * n
    for part in re.split(r"[.*]", text.replace("**", "^")):
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*", part)
        if not m:
            raise ParseError(f"bad monomial {text!r}")
        j = index.get(m.group(1))
        if j is None:
            raise ParseError(f"unknown variable {m.group(1)!r} in monomial {text!r}")
        exps[j] += int(m.group(2) or 1)
    return tuple(exps)


# -- files -----------------------------------------------------------------

@dataclass
class SystemFile:
    variables: List[str]
    polynomials: List[Polynomial]

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def dumps(self) -> str:
        lines = ["vars " + " ".join(self.variables)]
        lines += [format_polynomial(p, self.variables) for p in self.polynomials]
        return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for k, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def loads_system(text: str) -> SystemFile:
    lines = list(_content_lines(text))
    if not lines or not lines[0][1].startswith("vars"):
        raise ParseError("system file must start with a 'vars' line", line=lines[0][0] if lines else 1)
    names = lines[0][1].split()[1:]
    if not names:
        raise ParseError("no variables declared", line=lines[0][0])
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", line=lines[0][0])
    polys = []
    for k, line in lines[1:]:
        try:
            polys.append(parse_polynomial(line, names))
        except ParseError as e:
            raise ParseError(e.message, e.position, k) from None
    return SystemFile(names, polys)


def load_system(path: PathLike) -> SystemFile:
    return loads_system(Path(path).read_text())


@dataclass
class PointSet:
    points: List[Tuple[Fraction, ...]]

    def __post_init__(self):
        pts = [tuple(Fraction(x) for x in p) for p in self.points]
        if pts and len({len(p) for p in pts}) != 1:
            raise ValueError("points have different dimensions")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)


def _rational(tok: str, line: int) -> Fraction:
    try:
        val = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coordinate {tok!r}", line=line) from None
    return val


def loads_points(text: str) -> PointSet:
    """One point per line; coordinates separated by commas or whitespace,
    optionally wrapped in parentheses."""
    pts = []
    for k, line in _content_lines(text):
        body = line.strip().strip("()")
        toks = [t for t in re.split(r"[,\s]+", body) if t]
        pts.append(tuple(_rational(t, k) for t in toks))
    try:
        return PointSet(pts)
    except ValueError as e:
        raise ParseError(str(e)) from None


def load_points(path: PathLike) -> PointSet:
    return loads_points(Path(path).read_text())


def loads_preference(text: str, names: Sequence[str]) -> Dict[Monomial, int]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos) from None
    if not isinstance(raw, dict):
        raise ParseError("preference file must be a JSON object")
    out: Dict[Monomial, int] = {}
    for key, w in raw.items():
        if not isinstance(w, int) or isinstance(w, bool):
            raise ParseError(f"weight of {key!r} is not an integer")
        m = parse_monomial(key, names)
        out[m] = out.get(m, 0) + w
    return out


def load_preference(path: PathLike, names: Sequence[str]) -> Dict[Monomial, int]:
    return loads_preference(Path(path).read_text(), names)


def loads_order_ideal(text: str, names: Sequence[str]) -> OrderIdeal:
    """A JSON list of monomial strings, or an object with an ``order_ideal`` list."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos) from None
    if isinstance(raw, dict):
        raw = raw.get("order_ideal")
    if not isinstance(raw, list):
        raise ParseError("expected a list of monomial strings")
    return OrderIdeal(frozenset(parse_monomial(s, names) for s in raw), len(names))


# -- vanishing ideal ----------------------------------------------------------

class VanishingCapExceeded(RuntimeError):
    pass


def _evaluate(m: Monomial, pt: Sequence[Fraction]) -> Fraction:
    v = Fraction(1)
    for x, e in zip(pt, m):
        if e:
            v *= x ** e
    return v


def vanishing_ideal(points: PointSet, degree_cap: int = 20) -> List[Polynomial]:
    """Generators of the ideal of polynomials vanishing on ``points``.

    Degree by degree the kernel of the evaluation map on ``T_{<=i}`` is
    computed with the smallest monomials as pivots.  Kernel elements that are
    not combinations of multiples of earlier generators are new generators.
    Once the evaluation rank reaches the number of points at degree ``D`` the
    ideal is generated in degree ``D + 1``, and the search stops there.
    """
    n = points.n
    npts = len(points)
    if npts == 0:
        return [Polynomial.constant(1, n)]
    gens: List[Polynomial] = []
    ideal = ReducedSet(n)
    cols: List[Monomial] = []
    full_at = None
    for i in range(degree_cap + 1):
        cols.extend(monomials_of_degree(n, i))
        # grow the span of generator multiples to degree i
        for g in gens:
            for t in monomials_of_degree(n, i - g.degree()) if i >= g.degree() else ():
                ideal.insert(g.shift(t).terms)
        # reduced evaluation matrix, small monomials first so they become pivots
        asc = sorted(cols, key=DEGREVLEX.key)
        kernel = _kernel(asc, points.points)
        rank = len(asc) - len(kernel)
        for vec in sorted(kernel, key=lambda f: DEGREVLEX.key(DEGREVLEX.leading_term(f))):
            if ideal.insert(vec.terms) is not None:
                gens.append(vec)
        if full_at is None and rank == npts:
            full_at = i
        if full_at is not None and i == full_at + 1:
            return gens
    raise VanishingCapExceeded(f"degree cap {degree_cap} reached before the quotient dimension stabilized")


def _kernel(cols: Sequence[Monomial], pts) -> List[Polynomial]:
    """Kernel of the evaluation matrix; pivots are taken from the left of ``cols``."""
    n = len(cols[0])
    mat = [[_evaluate(m, p) for m in cols] for p in pts]
    pivots = []
    r = 0
    for j in range(len(cols)):
        piv = next((k for k in range(r, len(mat)) if mat[k][j]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][j]
        mat[r] = [x * inv for x in mat[r]]
        for k in range(len(mat)):
            if k != r and mat[k][j]:
                c = mat[k][j]
                mat[k] = [a - c * b for a, b in zip(mat[k], mat[r])]
        pivots.append(j)
        r += 1
        if r == len(mat):
            break
    pset = set(pivots)
    out = []
    for f in range(len(cols)):
        if f in pset:
            continue
        terms = {cols[f]: Fraction(1)}
        for row, pj in enumerate(pivots):
            c = mat[row][f]
            if c:
                terms[cols[pj]] = -c
        out.append(Polynomial._raw(terms, n))
    return out


# -- JSON ----------------------------------------------------------------------

def fraction_str(c: Fraction) -> str:
    return _format_coef(Fraction(c))


def order_ideal_json(o: OrderIdeal, names: Sequence[str]) -> List[str]:
    return [monomial_key(m, names) for m in o.sorted()]


def border_basis_json(g, names: Sequence[str]) -> dict:
    ts = g.order_ideal.sorted()
    return {
        "order_ideal": [monomial_key(m, names) for m in ts],
        "border": [
            {
                "term": monomial_key(b, names),
                "coefficients": [fraction_str(-p.coefficient(t)) for t in ts],
                "polynomial": format_polynomial(p, names),
            }
            for b, p in zip(g.border, g.polynomials)
        ],
    }
