"""Lines in P^3 as points of Gr(2,4) in Pluecker coordinates.

Pluecker vectors are ordered (p12, p13, p14, p23, p24, p34).  Brackets,
incidence conditions and joins/meets are written as exact linear algebra on
these six coordinates, so every Schubert condition is a list of coefficient
rows acting on the unknown line.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DegenerateError, ValidationError
from .exact import PolyQ, QMatrix, rat, rat_str, primitive

PAIRS: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
PAIR_INDEX = {pair: k for k, pair in enumerate(PAIRS)}


def projectively_equal(a: Sequence, b: Sequence) -> bool:
    """a ~ b iff all cross products a_i b_j - a_j b_i vanish (and both nonzero)."""
    if len(a) != len(b) or not any(a) or not any(b):
        return False
    return all(a[i] * b[j] == a[j] * b[i] for i, j in combinations(range(len(a)), 2))


def _normal_key(v: tuple) -> tuple:
    # projective class representative: primitive integers, first nonzero > 0
    v = primitive(v)
    lead = next(x for x in v if x)
    return tuple(-x for x in v) if lead < 0 else v


class _Projective:
    __slots__ = ("coords",)
    size = 0

    def __init__(self, coords: Sequence):
        coords = tuple(rat(c) for c in coords)
        if len(coords) != self.size:
            raise ValueError(f"{type(self).__name__} needs {self.size} coordinates")
        if not any(coords):
            raise ValueError(f"{type(self).__name__} cannot be the zero vector")
        self.coords = coords

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return projectively_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((type(self).__name__, _normal_key(self.coords)))

    def normalized(self):
        """Primitive integer representative with first nonzero entry positive."""
        return type(self)(_normal_key(self.coords))

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coords]

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(rat_str(c) for c in self.coords)})"


class PointP3(_Projective):
    size = 4


class PlaneP3(_Projective):
    """A plane given by its covector h: the points x with h.x = 0."""

    size = 4

    def contains(self, z: Sequence) -> bool:
        return sum(a * b for a, b in zip(self.coords, z)) == 0


def pluecker_relation(p: Sequence) -> Fraction:
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


class Pluecker(_Projective):
    size = 6

    def __init__(self, coords: Sequence):
        super().__init__(coords)
        if pluecker_relation(self.coords):
            raise ValueError(f"{self!r} violates the Pluecker relation")

    def __getitem__(self, key):
        if isinstance(key, tuple):
            return self.coords[PAIR_INDEX[key]]
        return self.coords[key]

    @classmethod
    def from_json(cls, data) -> "Pluecker":
        try:
            return cls([rat(x) for x in data])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad Pluecker vector: {exc}") from exc


def minors2(a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    return tuple(rat(a[i - 1]) * rat(b[j - 1]) - rat(a[j - 1]) * rat(b[i - 1]) for i, j in PAIRS)


def pluecker_from_matrix(x: QMatrix) -> Pluecker:
    if x.shape != (2, 4):
        raise ValueError(f"need a 2x4 matrix, got {x.shape}")
    p = minors2(x.row(0), x.row(1))
    if not any(p):
        raise DegenerateError("matrix has rank < 2")
    return Pluecker(p)


# ---------------------------------------------------------------------------
# linear conditions on the unknown line, as coefficient rows over PAIRS


def bracket_row(zi: Sequence, zj: Sequence) -> tuple[Fraction, ...]:
    """Coefficients c with <AB ij> = c . p(AB).

    Laplace expansion of det(A|B|Zi|Zj) along the first two columns.
    """
    q = minors2(zi, zj)
    return (q[5], -q[4], q[3], q[2], -q[1], q[0])


def pairing(p: Sequence, q: Sequence) -> Fraction:
    """Bilinear form with pairing(p, q) = det(A|B|C|D) for p = AB, q = CD."""
    return (p[0] * q[5] - p[1] * q[4] + p[2] * q[3]
            + p[3] * q[2] - p[4] * q[1] + p[5] * q[0])


def bracket(ab: Sequence, zi: Sequence, zj: Sequence) -> Fraction:
    return pairing(ab, minors2(zi, zj))


def _levi(*idx) -> int:
    if len(set(idx)) < len(idx):
        return 0
    perm = list(idx)
    s = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                s = -s
    return s


# _DUAL[k, l] lists (pair index, sign) with dual P*_{kl} = sum sign * p_pair,
# sign = eps(i, j, k, l) for pair (i, j).
_DUAL = {(k, l): [(PAIR_INDEX[(i, j)], _levi(i, j, k, l)) for (i, j) in PAIRS if _levi(i, j, k, l)]
         for k in range(1, 5) for l in range(1, 5) if k != l}


def point_conditions(z: Sequence) -> list[tuple[Fraction, ...]]:
    """Three independent rows expressing 'the line contains z' (P* z = 0)."""
    z = [rat(c) for c in z]
    rows = []
    for k in range(1, 5):
        row = [Fraction(0)] * 6
        for l in range(1, 5):
            if l != k and z[l - 1]:
                for idx, s in _DUAL[(k, l)]:
                    row[idx] += s * z[l - 1]
        rows.append(tuple(row))
    # z . (P* z) vanishes identically, so one row with z_k != 0 is redundant
    drop = next(k for k in range(4) if z[k])
    return [r for k, r in enumerate(rows) if k != drop]


def plane_conditions(h: Sequence) -> list[tuple[Fraction, ...]]:
    """Three independent rows expressing 'the line lies in plane h' (P h = 0)."""
    h = [rat(c) for c in h]
    rows = []
    for a in range(1, 5):
        row = [Fraction(0)] * 6
        for b in range(1, 5):
            if a < b:
                row[PAIR_INDEX[(a, b)]] += h[b - 1]
            elif a > b:
                row[PAIR_INDEX[(b, a)]] -= h[b - 1]
        rows.append(tuple(row))
    drop = next(a for a in range(4) if h[a])
    return [r for k, r in enumerate(rows) if k != drop]


def _apply(rows, p) -> list[Fraction]:
    return [sum(c * x for c, x in zip(r, p)) for r in rows]


def line_contains_point(ab: Sequence, z: Sequence) -> tuple[list[tuple[Fraction, ...]], bool]:
    rows = point_conditions(z)
    return rows, not any(_apply(rows, ab))


def line_in_plane(ab: Sequence, h: Sequence) -> tuple[list[tuple[Fraction, ...]], bool]:
    rows = plane_conditions(h)
    return rows, not any(_apply(rows, ab))


# ---------------------------------------------------------------------------
# joins and meets


def join_points(a: Sequence, b: Sequence) -> Pluecker:
    p = minors2(a, b)
    if not any(p):
        raise DegenerateError("points coincide")
    return Pluecker(p)


def join_line_point(ab: Sequence, z: Sequence) -> PlaneP3:
    e = [[int(m == k) for k in range(4)] for m in range(4)]
    h = [bracket(ab, z, e[m]) for m in range(4)]
    if not any(h):
        raise DegenerateError("point lies on the line")
    return PlaneP3(h)


def plane_through(a: Sequence, b: Sequence, c: Sequence) -> PlaneP3:
    return join_line_point(join_points(a, b), c)


def meet_planes(h: Sequence, g: Sequence) -> Pluecker:
    pi = {(k, l): rat(h[k - 1]) * rat(g[l - 1]) - rat(h[l - 1]) * rat(g[k - 1]) for k, l in PAIRS}
    p = (pi[3, 4], -pi[2, 4], pi[2, 3], pi[1, 4], -pi[1, 3], pi[1, 2])
    if not any(p):
        raise DegenerateError("planes coincide")
    return Pluecker(p)


def primal_matrix(ab: Sequence) -> list[list[Fraction]]:
    """Antisymmetric 4x4 matrix P with P[a][b] = p_ab."""
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for (a, b), v in zip(PAIRS, ab):
        m[a - 1][b - 1] = rat(v)
        m[b - 1][a - 1] = -rat(v)
    return m


def meet_line_plane(ab: Sequence, h: Sequence) -> PointP3:
    m = primal_matrix(ab)
    z = [sum(m[a][b] * rat(h[b]) for b in range(4)) for a in range(4)]
    if not any(z):
        raise DegenerateError("line lies in the plane")
    return PointP3(z)


def line_representative(ab: Sequence) -> QMatrix:
    """A 2x4 matrix whose Pluecker vector is a positive multiple of ab.

    Rows a and b of the primal matrix for the first pair with p_ab != 0;
    their wedge is p_ab * ab, so the rows are reordered when p_ab < 0.
    """
    m = primal_matrix(ab)
    k = next(k for k, v in enumerate(ab) if v)
    a, b = PAIRS[k]
    r1, r2 = m[a - 1], m[b - 1]
    if ab[k] < 0:
        r1, r2 = r2, r1
    return QMatrix.from_rows([r1, r2])


# ---------------------------------------------------------------------------
# affine charts p_ij = 1

_COMPLEMENT = {(1, 2): (3, 4), (3, 4): (1, 2), (1, 3): (2, 4), (2, 4): (1, 3), (1, 4): (2, 3), (2, 3): (1, 4)}
# Q = p12 p34 - p13 p24 + p14 p23 pairs each index pair with its complement
_PAIR_SIGN = {(1, 2): 1, (3, 4): 1, (1, 4): 1, (2, 3): 1, (1, 3): -1, (2, 4): -1}


class Chart:
    """Standard affine chart {p_pivot = 1} with four free Pluecker coordinates.

    The coordinate complementary to the pivot is eliminated through the
    Pluecker relation, e.g. on chart (1,2) p34 = p13 p24 - p14 p23.
    """

    __slots__ = ("pivot", "eliminated", "free")

    def __init__(self, pivot: tuple[int, int]):
        pivot = tuple(pivot)
        if pivot not in PAIR_INDEX:
            raise ValueError(f"invalid chart pivot {pivot}")
        self.pivot = pivot
        self.eliminated = _COMPLEMENT[pivot]
        self.free = tuple(p for p in PAIRS if p not in (pivot, self.eliminated))

    def __eq__(self, other):
        return isinstance(other, Chart) and self.pivot == other.pivot

    def __hash__(self):
        return hash(self.pivot)

    def __repr__(self):
        return f"Chart({self.pivot[0]}{self.pivot[1]})"

    @property
    def name(self) -> str:
        return f"{self.pivot[0]}{self.pivot[1]}"

    def contains(self, ab: Sequence) -> bool:
        return ab[PAIR_INDEX[self.pivot]] != 0

    def coords(self, ab: Sequence) -> tuple[Fraction, ...]:
        return chart_coords(ab, self)

    def _eliminated_value(self, vals: dict) -> Fraction:
        # s * p_e * 1 + (sum over the other two complementary pairs) = 0
        rest = 0
        for pair in ((1, 2), (1, 3), (1, 4)):
            comp = _COMPLEMENT[pair]
            if pair in (self.pivot, self.eliminated):
                continue
            rest += _PAIR_SIGN[pair] * vals[pair] * vals[comp]
        return -rest * _PAIR_SIGN[self.pivot]

    def point(self, coords: Sequence) -> Pluecker:
        """Inverse of :func:`chart_coords`."""
        if len(coords) != 4:
            raise ValueError("a chart point has 4 coordinates")
        vals = dict(zip(self.free, (rat(c) for c in coords)))
        vals[self.pivot] = Fraction(1)
        vals[self.eliminated] = self._eliminated_value(vals)
        return Pluecker([vals[p] for p in PAIRS])

    def embedding(self) -> list[PolyQ]:
        """The six Pluecker coordinates as polynomials in the chart variables."""
        xs = PolyQ.gens(4)
        vals = dict(zip(self.free, xs))
        vals[self.pivot] = PolyQ.const(4, 1)
        vals[self.eliminated] = self._eliminated_value(vals)
        return [vals[p] for p in PAIRS]


STANDARD_CHARTS = tuple(Chart(p) for p in PAIRS)


def chart_coords(ab: Sequence, chart: Chart) -> tuple[Fraction, ...]:
    if not isinstance(ab, Pluecker):
        ab = Pluecker(ab)
    piv = ab[PAIR_INDEX[chart.pivot]]
    if piv == 0:
        raise ValueError(f"{ab!r} is not in chart {chart.name}")
    return tuple(ab[PAIR_INDEX[p]] / piv for p in chart.free)
