"""The fourteen stratum types of the algebraic boundary and their geometry.

Indices are cyclic in 1..n.  An edge is named by its first index: edge j is
the line Z_j Z_{j+1}.  Canonical index tuples per type:

========  =======================================================
3I 2I     (i,)
2II 1I    (i,)
2III      (i, j) sorted edges, disjoint
1II       (i, j) point i, edge j, i not on the edge
1III      (i, j) plane i, edge j disjoint from {i-1, i, i+1}
1IV       (i, j, k) sorted pairwise disjoint edges
0I        (i, j) sorted points
0II       (i, j) sorted planes, cyclic distance >= 3
0III      (i, j) like 1III
0IV       (i, j, k) point i, sorted disjoint edges j, k avoiding i
0V        (i, j, k) plane i, sorted disjoint edges avoiding the plane
0VI       (i, j, k, l) sorted pairwise disjoint edges
========  =======================================================
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import ClaimFailure, DegenerateError, ValidationError
from .exact import PolyQ, QMatrix, det, kernel, rank, rat_str
from .grassmann import (
    Pluecker, bracket_row, join_points, meet_line_plane, plane_conditions,
    plane_through, pluecker_relation, point_conditions, projectively_equal,
)
from .zinput import ZMatrix, cyclic_bracket_rows

TYPES = ("3I", "2I", "2II", "2III", "1I", "1II", "1III", "1IV", "0I", "0II", "0III", "0IV", "0V", "0VI")
RESIDUAL_TYPES = frozenset({"1III", "1IV", "0II", "0III", "0IV", "0V", "0VI"})
DEGREE = {t: 2 if t in ("2III", "1IV", "0VI") else 1 for t in TYPES}
ARITY = {"3I": 1, "2I": 1, "2II": 1, "2III": 2, "1I": 1, "1II": 2, "1III": 2, "1IV": 3,
         "0I": 2, "0II": 2, "0III": 2, "0IV": 3, "0V": 3, "0VI": 4}


def cyc(i: int, n: int) -> int:
    """Reduce an index into 1..n."""
    return (i - 1) % n + 1


def cyclic_distance(a: int, b: int, n: int) -> int:
    d = (a - b) % n
    return min(d, n - d)


def edges_disjoint(a: int, b: int, n: int) -> bool:
    return cyclic_distance(a, b, n) >= 2


def edge_avoids_plane(j: int, i: int, n: int) -> bool:
    """{j, j+1} misses {i-1, i, i+1}."""
    return cyc(j - i, n) not in (n - 2, n - 1, n, 1)


@dataclass(frozen=True, order=True)
class StratumId:
    dim: int
    type_tag: str
    indices: tuple[int, ...]

    @property
    def roman(self) -> str:
        return self.type_tag[1:]

    def __str__(self):
        return f"({self.dim},{self.roman},{','.join(map(str, self.indices))})"

    @property
    def residual(self) -> bool:
        return classify_residual(self)

    def to_json(self) -> str:
        return str(self)


def parse_stratum(text: str, n: int) -> StratumId:
    """Inverse of ``str(StratumId)``, e.g. ``"(0,IV,1,3,5)"``."""
    parts = text.strip().strip("()").split(",")
    if len(parts) < 3:
        raise ValidationError(f"cannot parse stratum {text!r}")
    try:
        return stratum(parts[0] + parts[1], [int(p) for p in parts[2:]], n)
    except ValueError as exc:
        raise ValidationError(f"cannot parse stratum {text!r}: {exc}") from exc


def _valid(tag: str, idx: tuple[int, ...], n: int) -> bool:
    if len(idx) != ARITY[tag] or any(not 1 <= a <= n for a in idx):
        return False
    if tag in ("3I", "2I", "2II", "1I"):
        return True
    if tag == "0I":
        return idx[0] < idx[1]
    if tag in ("2III", "1IV", "0VI"):
        return list(idx) == sorted(set(idx)) and all(edges_disjoint(a, b, n) for a, b in combinations(idx, 2))
    if tag == "1II":
        i, j = idx
        return i not in (j, cyc(j + 1, n))
    if tag in ("1III", "0III"):
        i, j = idx
        return edge_avoids_plane(j, i, n)
    if tag == "0II":
        i, j = idx
        return i < j and cyclic_distance(i, j, n) >= 3
    if tag == "0IV":
        i, j, k = idx
        return (j < k and edges_disjoint(j, k, n)
                and i not in (j, cyc(j + 1, n), k, cyc(k + 1, n)))
    if tag == "0V":
        i, j, k = idx
        return (j < k and edges_disjoint(j, k, n)
                and edge_avoids_plane(j, i, n) and edge_avoids_plane(k, i, n))
    raise ValueError(f"unknown type {tag}")


def stratum(tag: str, indices: Sequence[int], n: int) -> StratumId:
    """Build a validated StratumId, reducing indices mod n and sorting unordered slots."""
    if tag not in ARITY:
        raise ValidationError(f"unknown stratum type {tag!r}")
    idx = [cyc(a, n) for a in indices]
    if tag in ("2III", "1IV", "0VI", "0I", "0II"):
        idx = sorted(idx)
    elif tag in ("0IV", "0V"):
        idx = idx[:1] + sorted(idx[1:])
    idx = tuple(idx)
    if not _valid(tag, idx, n):
        raise ValidationError(f"invalid indices {idx} for type {tag} at n={n}")
    return StratumId(int(tag[0]), tag, idx)


def _candidates(tag: str, n: int):
    r = range(1, n + 1)
    k = ARITY[tag]
    if tag in ("2III", "1IV", "0VI", "0I", "0II"):
        yield from combinations(r, k)
    elif tag in ("0IV", "0V"):
        for i in r:
            for jk in combinations(r, 2):
                yield (i,) + jk
    elif k == 2:
        for i in r:
            for j in r:
                yield (i, j)
    else:
        for i in r:
            yield (i,)


def strata_of_type(tag: str, n: int) -> list[StratumId]:
    return [StratumId(int(tag[0]), tag, idx) for idx in _candidates(tag, n) if _valid(tag, idx, n)]


@dataclass(frozen=True)
class StratumInfo:
    id: StratumId
    schubert: tuple[tuple, ...]
    degree: int
    residual: bool
    kind: str | None

    def to_json(self) -> dict:
        out = {
            "id": str(self.id),
            "schubert": [condition_label(c) for c in self.schubert],
            "degree": self.degree,
            "residual": self.residual,
        }
        if self.kind is not None:
            out["kind"] = self.kind
        return out


def enumerate_strata(n: int) -> list[StratumInfo]:
    if n < 4:
        raise ValueError("n must be at least 4")
    out = []
    for tag in TYPES:
        for sid in strata_of_type(tag, n):
            kind = residual_kind(sid, n) if tag in ("1III", "1IV") else None
            out.append(StratumInfo(sid, schubert_conditions(sid, n), DEGREE[tag], tag in RESIDUAL_TYPES, kind))
    return out


def stratum_counts(n: int) -> dict[str, int]:
    counts = Counter(s.id.type_tag for s in enumerate_strata(n))
    return {t: counts.get(t, 0) for t in TYPES}


def _binom(m: int, k: int) -> Fraction:
    # polynomial binomial m(m-1)...(m-k+1)/k!, equal to math.comb for m >= 0
    out = Fraction(1)
    for a in range(k):
        out = out * (m - a) / (a + 1)
    return out


def formula_counts(n: int) -> dict[str, Fraction]:
    """The closed-form multiplicities of each type, evaluated literally.

    They count strata for n >= 5.  At n = 4 the expressions for (0,II),
    (0,V) and (0,VI) evaluate to -2, 4 and -1 while no such strata exist.
    """
    return {
        "3I": Fraction(n), "2I": Fraction(n), "2II": Fraction(n), "2III": _binom(n, 2) - n,
        "1I": Fraction(n), "1II": Fraction(n * (n - 2)), "1III": Fraction(n * (n - 4)),
        "1IV": _binom(n, 3) - n * (n - 3),
        "0I": _binom(n, 2), "0II": Fraction(n, 2) * (n - 5), "0III": Fraction(n * (n - 4)),
        "0IV": n * _binom(n - 3, 2), "0V": n * _binom(n - 5, 2),
        "0VI": Fraction(n, 24) * (n - 5) * (n - 6) * (n - 7),
    }


def classify_residual(sid: StratumId) -> bool:
    return sid.type_tag in RESIDUAL_TYPES


# ---------------------------------------------------------------------------
# Schubert conditions: ("L", a, b) line meets Z_a Z_b; ("V", a) contains Z_a;
# ("P", a) lies in the plane Z_{a-1} Z_a Z_{a+1}.


def _edge(j: int, n: int) -> tuple:
    return ("L", cyc(j, n), cyc(j + 1, n))


def schubert_conditions(sid: StratumId, n: int) -> tuple[tuple, ...]:
    t, x = sid.type_tag, sid.indices
    if t == "3I":
        return (_edge(x[0], n),)
    if t == "2I":
        return (("V", x[0]),)
    if t == "2II":
        return (("P", x[0]),)
    if t in ("2III", "1IV", "0VI"):
        return tuple(_edge(j, n) for j in x)
    if t == "1I":
        return (("V", x[0]), ("L", cyc(x[0] - 1, n), cyc(x[0] + 1, n)))
    if t == "1II":
        return (("V", x[0]), _edge(x[1], n))
    if t == "1III":
        return (("P", x[0]), _edge(x[1], n))
    if t == "0I":
        return (("V", x[0]), ("V", x[1]))
    if t == "0II":
        return (("P", x[0]), ("P", x[1]))
    if t == "0III":
        return (("V", x[0]), ("L", cyc(x[0] - 1, n), cyc(x[0] + 1, n)), _edge(x[1], n))
    if t == "0IV":
        return (("V", x[0]), _edge(x[1], n), _edge(x[2], n))
    if t == "0V":
        return (("P", x[0]), _edge(x[1], n), _edge(x[2], n))
    raise ValueError(t)


def condition_label(cond: tuple) -> str:
    if cond[0] == "L":
        return f"L_{cond[1]},{cond[2]}"
    return f"{cond[0]}_{cond[1]}"


def condition_rows(cond: tuple, z: ZMatrix) -> list[tuple[Fraction, ...]]:
    if cond[0] == "L":
        return [bracket_row(z.point(cond[1]), z.point(cond[2]))]
    a = cond[1]
    if cond[0] == "V":
        return point_conditions(z.point(a))
    return plane_conditions(plane_through(z.point(a - 1), z.point(a), z.point(a + 1)))


def stratum_rows(sid: StratumId, z: ZMatrix) -> list[tuple[Fraction, ...]]:
    return [r for c in schubert_conditions(sid, z.n) for r in condition_rows(c, z)]


def satisfies(p: Sequence, cond: tuple, z: ZMatrix) -> bool:
    return all(sum(a * b for a, b in zip(row, p)) == 0 for row in condition_rows(cond, z))


def on_stratum(p: Sequence, sid: StratumId, z: ZMatrix) -> bool:
    return pluecker_relation(p) == 0 and all(satisfies(p, c, z) for c in schubert_conditions(sid, z.n))


# ---------------------------------------------------------------------------
# incidence of vertices in curves


def incidence_vertices(sid: StratumId, n: int) -> list[StratumId]:
    """The 1-dimensional strata containing a 0-dimensional stratum.

    For (0,IV,ijk) with an edge adjacent to the point's edges, a (1,IV)
    triple would repeat an edge; the line through Z_i meeting the edge
    Z_{i+1}Z_{i+2} (or Z_{i-2}Z_{i-1}) lies in the plane of the neighbour, so
    the incident curve is the corresponding (1,III) line instead.
    """
    t, x = sid.type_tag, sid.indices
    if sid.dim != 0:
        raise ValueError(f"{sid} is not a vertex")

    def s(tag, *idx):
        return stratum(tag, idx, n)

    if t == "0I":
        i, j = x
        if cyc(j - i, n) == n - 1:  # written as (1, n): the consecutive pair is (n, 1)
            i, j = j, i
        if cyc(j - i, n) == 1:
            return [s("1I", i), s("1I", i + 1), s("1II", i, i + 1), s("1II", i + 1, i - 1)]
        return [s("1II", i, j), s("1II", i, j - 1), s("1II", j, i), s("1II", j, i - 1)]
    if t == "0II":
        i, j = x
        return [s("1III", i, j), s("1III", i, j - 1), s("1III", j, i), s("1III", j, i - 1)]
    if t == "0III":
        i, j = x
        return [s("1I", i), s("1II", i, j), s("1III", i, j)]
    if t == "0IV":
        i, j, k = x
        out = [s("1II", i, j), s("1II", i, k)]
        for a, b in ((j, k), (k, j)):
            if a == cyc(i - 2, n):
                out.append(s("1III", i - 1, b))
                break
        else:
            out.append(s("1IV", i - 1, j, k))
        for a, b in ((j, k), (k, j)):
            if a == cyc(i + 1, n):
                out.append(s("1III", i + 1, b))
                break
        else:
            out.append(s("1IV", i, j, k))
        return out
    if t == "0V":
        i, j, k = x
        return [s("1III", i, j), s("1III", i, k), s("1IV", i - 1, j, k), s("1IV", i, j, k)]
    if t == "0VI":
        return [s("1IV", *trip) for trip in combinations(x, 3)]
    raise ValueError(t)


def curve_vertices(curve: StratumId, n: int) -> list[StratumId]:
    """All 0-dimensional strata whose incidence list contains ``curve``."""
    out = []
    for tag in ("0I", "0II", "0III", "0IV", "0V", "0VI"):
        for v in strata_of_type(tag, n):
            if curve in incidence_vertices(v, n):
                out.append(v)
    return out


def residual_kind(sid: StratumId, n: int) -> str:
    if sid.type_tag == "1III":
        i, j = sid.indices
        return "first" if cyc(j - i, n) in (2, n - 3) else "second"
    if sid.type_tag == "1IV":
        close = sum(cyclic_distance(a, b, n) == 2 for a, b in combinations(sid.indices, 2))
        return "first" if close >= 2 else ("second" if close == 1 else "third")
    raise ValueError(f"{sid} has no kind")


def expected_census(sid: StratumId, n: int) -> dict[str, int]:
    """Vertex census of a residual curve by kind, counting (0,VI) strata (not points)."""
    kind = residual_kind(sid, n)
    if sid.type_tag == "1III":
        if n == 5:
            # the marked edge is at distance one from the plane on both sides
            return {"0III": 1, "0IV": 2}
        if kind == "first":
            return {"0III": 1, "0IV": 2, "0II": 1, "0V": n - 6}
        return {"0III": 1, "0IV": 2, "0II": 2, "0V": n - 7}
    close = sum(cyclic_distance(a, b, n) == 2 for a, b in combinations(sid.indices, 2))
    return {"0IV": 6, "0V": 6 - 2 * close, "0VI": n - 9 + close}


def residual_count(n: int) -> int:
    by_formula = Fraction(n ** 4, 12) - Fraction(n ** 3, 2) + Fraction(17 * n ** 2, 12) - 3 * n
    c = stratum_counts(n)
    by_types = c["0II"] + c["0III"] + c["0IV"] + c["0V"] + 2 * c["0VI"]
    if by_formula != by_types:
        raise ClaimFailure(f"residual count mismatch at n={n}: {by_formula} vs {by_types}")
    return by_types


def one_skeleton(n: int) -> tuple[dict[tuple[int, int], set], bool]:
    """Graph on the (0,I) vertices joined by the boundary segments of (1,I) and (1,II)."""
    verts = {tuple(sorted(p)): set() for p in combinations(range(1, n + 1), 2)}

    def link(a, b):
        a, b = tuple(sorted(a)), tuple(sorted(b))
        verts[a].add(b)
        verts[b].add(a)

    for i in range(1, n + 1):
        link((cyc(i - 1, n), i), (i, cyc(i + 1, n)))
    for sid in strata_of_type("1II", n):
        i, j = sid.indices
        link((i, j), (i, cyc(j + 1, n)))
    start = next(iter(verts))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in verts[v] - seen:
            seen.add(w)
            queue.append(w)
    return verts, len(seen) == len(verts)


# ---------------------------------------------------------------------------
# exact vertex points


@dataclass(frozen=True)
class QuadraticPair:
    """The two lines of a (0,VI) stratum: su + tv with a s^2 + b st + c t^2 = 0."""

    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    a: Fraction
    b: Fraction
    c: Fraction

    @property
    def discriminant(self) -> Fraction:
        return self.b * self.b - 4 * self.a * self.c

    def to_json(self) -> dict:
        return {
            "u": [rat_str(x) for x in self.u],
            "v": [rat_str(x) for x in self.v],
            "quadratic": [rat_str(self.a), rat_str(self.b), rat_str(self.c)],
            "discriminant": rat_str(self.discriminant),
        }


def _kernel_vectors(rows) -> list[tuple[Fraction, ...]]:
    return [k.column_values(0) for k in kernel(QMatrix.from_rows(rows, 6))]


def vertex_point(sid: StratumId, z: ZMatrix) -> Pluecker | QuadraticPair:
    if sid.dim != 0:
        raise ValueError(f"{sid} is not a vertex")
    basis = _kernel_vectors(stratum_rows(sid, z))
    if sid.type_tag == "0VI":
        if len(basis) != 2:
            raise DegenerateError(f"{sid}: expected a pencil, kernel has dimension {len(basis)}")
        u, v = basis
        a, c = pluecker_relation(u), pluecker_relation(v)
        b = pluecker_relation([x + y for x, y in zip(u, v)]) - a - c
        return QuadraticPair(u, v, a, b, c)
    if len(basis) != 1:
        raise DegenerateError(f"{sid}: kernel has dimension {len(basis)}, Z not generic")
    if pluecker_relation(basis[0]):
        raise DegenerateError(f"{sid}: kernel point is not a line")
    return Pluecker(basis[0]).normalized()


# ---------------------------------------------------------------------------
# residual curves


def _pminors(a: Sequence[PolyQ], b: Sequence[PolyQ]) -> list[PolyQ]:
    return [a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1] for i, j in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))]


@dataclass(frozen=True)
class CurveParam:
    """Rational curve t -> Pluecker vector with polynomial coordinates."""

    stratum: StratumId
    component_degree: int
    pluecker_polys: tuple[PolyQ, ...]

    def at(self, t) -> Pluecker | None:
        vals = [p.eval((Fraction(t),)) for p in self.pluecker_polys]
        return Pluecker(vals) if any(vals) else None

    def at_infinity(self) -> Pluecker | None:
        d = self.component_degree
        vals = [p.coeffs()[d] if p.degree() == d else Fraction(0) for p in self.pluecker_polys]
        return Pluecker(vals) if any(vals) else None

    def restrict(self, row: Sequence) -> PolyQ:
        """A linear form on P^5 restricted to the curve."""
        out = PolyQ(1)
        for c, p in zip(row, self.pluecker_polys):
            if c:
                out = out + p * c
        return out

    def restrict_poly(self, f: PolyQ) -> PolyQ:
        return f.subs(list(self.pluecker_polys))

    def samples(self, count: int, start: int = 1) -> list[Pluecker]:
        """Points at t = start, start+1, ... skipping degenerate parameters."""
        out, t = [], start
        while len(out) < count:
            p = self.at(t)
            if p is not None and not any(projectively_equal(p.coords, q.coords) for q in out):
                out.append(p)
            t += 1
            if t > start + 10 * count + 20:
                raise DegenerateError(f"{self.stratum}: not enough admissible sample parameters")
        return out

    def parameter_of(self, point: Sequence) -> Fraction | None:
        """t with at(t) ~ point for a line parametrization; None if not on the line."""
        if self.component_degree != 1:
            raise ValueError("parameter_of is implemented for lines only")
        p0 = [p.eval((Fraction(0),)) for p in self.pluecker_polys]
        p1 = [p.eval((Fraction(1),)) - a for p, a in zip(self.pluecker_polys, p0)]
        for k, l in combinations(range(6), 2):
            # point_k (p0_l + t p1_l) = point_l (p0_k + t p1_k)
            coef = point[k] * p1[l] - point[l] * p1[k]
            if coef:
                t = (point[l] * p0[k] - point[k] * p0[l]) / coef
                q = self.at(t)
                return t if q is not None and projectively_equal(q.coords, point) else None
        return None


def residual_line_param(sid: StratumId, z: ZMatrix) -> CurveParam:
    if sid.type_tag != "1III":
        raise ValueError(f"{sid} is not a residual line")
    i, j = sid.indices
    plane = plane_through(z.point(i - 1), z.point(i), z.point(i + 1))
    try:
        q = meet_line_plane(join_points(z.point(j), z.point(j + 1)), plane).coords
    except DegenerateError as exc:
        raise DegenerateError(f"{sid}: edge lies in the plane") from exc
    pts = [z.point(i - 1), z.point(i), z.point(i + 1)]
    for r0, r1 in combinations(pts, 2):
        if rank(QMatrix.from_rows([q, r0, r1])) == 3:
            break
    else:
        raise DegenerateError(f"{sid}: no pencil basis")
    qs = [PolyQ.const(1, x) for x in q]
    r = [PolyQ.from_coeffs([a, b]) for a, b in zip(r0, r1)]
    return CurveParam(sid, 1, tuple(_pminors(qs, r)))


def residual_conic_param(sid: StratumId, z: ZMatrix) -> CurveParam:
    if sid.type_tag != "1IV":
        raise ValueError(f"{sid} is not a residual conic")
    i, j, k = sid.indices
    p = [PolyQ.from_coeffs([a, b]) for a, b in zip(z.point(i), z.point(i + 1))]
    planes = []
    for e in (j, k):
        # plane through p(t) and the edge: h_m = <Z_e Z_{e+1} p(t) e_m>
        row = bracket_row(z.point(e), z.point(e + 1))
        h = []
        for m in range(4):
            wedge = _pminors(p, [PolyQ.const(1, int(m == c)) for c in range(4)])
            h.append(sum((w * c for w, c in zip(wedge, row) if c), PolyQ(1)))
        planes.append(h)
    h1, h2 = planes
    pi = {(a, b): h1[a - 1] * h2[b - 1] - h1[b - 1] * h2[a - 1] for a, b in combinations(range(1, 5), 2)}
    polys = (pi[3, 4], -pi[2, 4], pi[2, 3], pi[1, 4], -pi[1, 3], pi[1, 2])
    if not any(polys):
        raise DegenerateError(f"{sid}: degenerate conic")
    return CurveParam(sid, 2, polys)


def residual_param(sid: StratumId, z: ZMatrix) -> CurveParam:
    if sid.type_tag == "1III":
        return residual_line_param(sid, z)
    return residual_conic_param(sid, z)


def residual_curves(n: int) -> list[StratumId]:
    return strata_of_type("1III", n) + strata_of_type("1IV", n)


def _binary_resultant(f: Sequence, g: Sequence) -> Fraction:
    """Resultant of two binary quadratics given as (c0, c1, c2)."""
    f0, f1, f2 = f
    g0, g1, g2 = g
    m = QMatrix.from_rows([[f2, f1, f0, 0], [0, f2, f1, f0], [g2, g1, g0, 0], [0, g2, g1, g0]])
    return det(m)


def _padded(p: PolyQ, d: int) -> list[Fraction]:
    cs = p.coeffs() if p else []
    return cs + [Fraction(0)] * (d + 1 - len(cs))


def unmarked_brackets(cp: CurveParam, z: ZMatrix) -> list[tuple[int, PolyQ]]:
    """(facet index, restriction) for the cyclic brackets not vanishing on the curve."""
    out = []
    for i, row in enumerate(cyclic_bracket_rows(z), start=1):
        r = cp.restrict(row)
        if not r.is_zero():
            out.append((i, r))
    return out


def line_vertex_points(sid: StratumId, z: ZMatrix) -> list[Pluecker]:
    """Residual vertices on a (1,III) line: one projective root per unmarked
    cyclic bracket, plus the (0,III) vertex; duplicates removed."""
    cp = residual_line_param(sid, z)
    pts = []
    for _, r in unmarked_brackets(cp, z):
        c0, c1 = _padded(r, 1)
        p = cp.at(-c0 / c1) if c1 else cp.at_infinity()
        pts.append(p)
    pts.append(vertex_point(stratum("0III", sid.indices, z.n), z))
    out = []
    for p in pts:
        if not any(projectively_equal(p.coords, q.coords) for q in out):
            out.append(p)
    return out


def conic_vertex_count(sid: StratumId, z: ZMatrix) -> int:
    """Number of distinct residual vertices on a (1,IV) conic.

    Each unmarked bracket restricts to a binary quadratic; with nonzero
    discriminants and pairwise resultants the roots are 2 per bracket and
    all distinct.  Returns -1 when that genericity fails.
    """
    cp = residual_conic_param(sid, z)
    quads = [_padded(r, 2) for _, r in unmarked_brackets(cp, z)]
    for q in quads:
        if q[1] ** 2 - 4 * q[0] * q[2] == 0:
            return -1
    for f, g in combinations(quads, 2):
        if _binary_resultant(f, g) == 0:
            return -1
    return 2 * len(quads)
