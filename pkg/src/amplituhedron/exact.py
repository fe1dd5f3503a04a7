"""Exact rational scalars, dense rational matrices and small polynomials.

Scalars are :class:`fractions.Fraction`.  Matrices are reduced by
fraction-free (Bareiss) elimination on integer rows, so intermediate
entries stay integral and every answer is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


def primitive(vec: Sequence) -> tuple[Fraction, ...]:
    """Scale a rational vector to a primitive integer vector.

    The first nonzero entry keeps its sign, so the result only depends on
    the projective point and its orientation.
    """
    vec = [rat(v) for v in vec]
    if not any(vec):
        return tuple(vec)
    den = reduce(lcm, (v.denominator for v in vec), 1)
    ints = [int(v * den) for v in vec]
    g = reduce(gcd, ints, 0)
    return tuple(Fraction(v // g) for v in ints)


# ---------------------------------------------------------------------------
# dense rational matrices


def _integer_rows(rows):
    """Clear denominators row by row; returns integer rows and row scales."""
    out, scales = [], []
    for row in rows:
        den = reduce(lcm, (v.denominator for v in row), 1)
        out.append([int(v * den) for v in row])
        scales.append(den)
    return out, scales


def _bareiss(rows: list[list[int]], ncols: int):
    """In-place fraction-free row echelon form.

    Returns (pivot columns, number of row swaps).  After the call the first
    ``len(pivots)`` rows hold the echelon form; each entry is a minor of the
    input, so the divisions below are exact.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    swaps = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            swaps += 1
        piv_row = rows[r]
        pv = piv_row[c]
        for k in range(r + 1, nrows):
            row = rows[k]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - a * piv_row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots, swaps


class QMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(rat(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> "QMatrix":
        return cls(len(values), 1, values)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column_values(j) for j in range(other.cols)]
        return QMatrix(self.rows, other.cols,
                       (sum(a * b for a, b in zip(self.row(i), col))
                        for i in range(self.rows) for col in ocols))

    def column_values(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self[i, j] for i in range(self.rows))

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "QMatrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return QMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(rat_str(v) for v in self.row(i)) for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: {body})"

    def rank(self) -> int:
        return rank(self)

    def det(self) -> Fraction:
        return det(self)


def _echelon(m: QMatrix):
    rows, scales = _integer_rows(m.to_rows())
    pivots, swaps = _bareiss(rows, m.cols)
    return rows, scales, pivots, swaps


def rank(m: QMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_echelon(m)[2])


def det(m: QMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    if m.rows == 0:
        return Fraction(1)
    rows, scales, pivots, swaps = _echelon(m)
    if len(pivots) < m.rows:
        return Fraction(0)
    d = Fraction(rows[-1][-1], reduce(lambda a, b: a * b, scales, 1))
    return -d if swaps % 2 else d


def det4(m: QMatrix) -> Fraction:
    if m.shape != (4, 4):
        raise ValueError(f"det4 needs a 4x4 matrix, got {m.shape}")
    return det(m)


def kernel(m: QMatrix) -> list[QMatrix]:
    """Basis of the right null space as column vectors.

    Each basis vector is scaled to a primitive integer vector; one vector per
    free column, in increasing free-column order.
    """
    if m.rows == 0:
        return [QMatrix.column([int(i == f) for i in range(m.cols)]) for f in range(m.cols)]
    rows, _, pivots, _ = _echelon(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * m.cols
        x[free] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = rows[r]
            s = sum(row[j] * x[j] for j in range(c + 1, m.cols) if x[j])
            x[c] = Fraction(-s, row[c])
        basis.append(QMatrix.column(primitive(x)))
    return basis


def solve(m: QMatrix, rhs: Sequence) -> tuple[Fraction, ...]:
    """A particular solution of ``m x = rhs``; raises if inconsistent."""
    aug = QMatrix.from_rows([list(m.row(i)) + [-rat(rhs[i])] for i in range(m.rows)], m.cols + 1)
    for vec in kernel(aug):
        v = vec.column_values(0)
        if v[-1]:
            return tuple(x / v[-1] for x in v[:-1])
    raise ValueError("inconsistent linear system")


def matvec(m: QMatrix, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(sum(a * b for a, b in zip(m.row(i), v)) for i in range(m.rows))


# ---------------------------------------------------------------------------
# multivariate polynomials


class PolyQ:
    """Sparse polynomial over Q in at most six variables.

    Terms are a dict from dense exponent tuples to nonzero Fractions.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if not 0 <= nvars <= 6:
            raise ValueError("PolyQ supports 0..6 variables")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            c = rat(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def const(cls, nvars: int, c) -> "PolyQ":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int) -> "PolyQ":
        return cls(nvars, {tuple(int(i == k) for i in range(nvars)): 1})

    @classmethod
    def gens(cls, nvars: int) -> list["PolyQ"]:
        return [cls.var(nvars, k) for k in range(nvars)]

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> "PolyQ":
        n = len(coeffs)
        terms = {tuple(int(i == k) for i in range(n)): c for k, c in enumerate(coeffs)}
        terms[(0,) * n] = rat(constant) + terms.get((0,) * n, 0)
        return cls(n, terms)

    def _coerce(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return PolyQ.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return PolyQ(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return PolyQ(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = PolyQ.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == PolyQ.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def subs(self, images: Sequence["PolyQ"]) -> "PolyQ":
        """Compose: substitute polynomial ``images[k]`` for variable k."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        cache: dict = {}

        def power(k, e):
            if (k, e) not in cache:
                cache[k, e] = images[k] ** e
            return cache[k, e]

        out = PolyQ(target)
        for exp, c in self.terms.items():
            term = PolyQ.const(target, c)
            for k, e in enumerate(exp):
                if e:
                    term = term * power(k, e)
            out = out + term
        return out

    def diff(self, k: int) -> "PolyQ":
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                terms[tuple(f)] = c * e[k]
        return PolyQ(self.nvars, terms)

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{k}" for k in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{names[k]}^{v}" if v > 1 else names[k] for k, v in enumerate(e) if v)
            parts.append(f"{rat_str(c)}*{mono}" if mono else rat_str(c))
        return " + ".join(parts)

    def __repr__(self):
        return self.format()

    # univariate helpers -------------------------------------------------

    def coeffs(self) -> list[Fraction]:
        """Dense coefficient list (lowest degree first) of a univariate poly."""
        if self.nvars != 1:
            raise ValueError("coeffs() is for univariate polynomials")
        d = self.degree()
        out = [Fraction(0)] * (d + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "PolyQ":
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})


def _udivmod(a: PolyQ, b: PolyQ) -> tuple[PolyQ, PolyQ]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = a.coeffs() if a else []
    bc = b.coeffs()
    db = len(bc) - 1
    q = [Fraction(0)] * max(len(r) - db, 1)
    while len(r) - 1 >= db and any(r):
        shift = len(r) - 1 - db
        f = r[-1] / bc[-1]
        q[shift] = f
        for k, c in enumerate(bc):
            r[k + shift] -= f * c
        r.pop()
        while r and not r[-1]:
            r.pop()
    return PolyQ.from_coeffs(q), PolyQ.from_coeffs(r)


def _ugcd(a: PolyQ, b: PolyQ) -> PolyQ:
    while b:
        a, b = b, _udivmod(a, b)[1]
    if not a:
        return a
    return a * (1 / a.coeffs()[-1])


class RatFun1:
    """Univariate rational function with coprime numerator and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyQ, den: PolyQ):
        if num.nvars != 1 or den.nvars != 1:
            raise ValueError("RatFun1 needs univariate polynomials")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = _ugcd(num, den) if num else den
        num = _udivmod(num, g)[0]
        den = _udivmod(den, g)[0]
        lead = den.coeffs()[-1]
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    def __eq__(self, other):
        return isinstance(other, RatFun1) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, t):
        return self.num.eval((t,)) / self.den.eval((t,))

    def __mul__(self, other):
        if isinstance(other, RatFun1):
            return RatFun1(self.num * other.num, self.den * other.den)
        return RatFun1(self.num * rat(other), self.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RatFun1(-self.num, self.den)

    def poles(self) -> list:
        """Rational roots of the denominator (by the rational root theorem)."""
        return rational_roots(self.den)

    def format(self, var: str = "t") -> str:
        return f"({self.num.format([var])}) / ({self.den.format([var])})"

    def __repr__(self):
        return self.format()


def rational_roots(p: PolyQ) -> list[Fraction]:
    """Distinct rational roots of a univariate polynomial, sorted."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    cs = p.coeffs()
    den = reduce(lcm, (c.denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints.pop(0)
    if len(ints) <= 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(k):
        return [d for d in range(1, k + 1) if k % d == 0]

    q = PolyQ.from_coeffs(ints)
    for num, den_ in product(divisors(a0), divisors(an)):
        for s in (1, -1):
            t = Fraction(s * num, den_)
            if q.eval((t,)) == 0:
                roots.add(t)
    return sorted(roots)


def residue_at(f: RatFun1, t0) -> Fraction:
    """Residue of ``f(t) dt`` at a simple pole ``t0``."""
    t0 = rat(t0)
    if f.den.eval((t0,)) != 0:
        raise ValueError(f"{rat_str(t0)} is not a pole")
    dden = f.den.diff(0).eval((t0,))
    if dden == 0:
        raise ValueError(f"pole at {rat_str(t0)} is not simple")
    return f.num.eval((t0,)) / dden
