"""The adjoint polynomial: interpolation in the coordinate ring of Gr(2,4).

Elements of R_d are stored on the normal-form basis of degree-d monomials in
(p12, p13, p14, p23, p24, p34) not divisible by p13*p24; the Pluecker
relation rewrites p13*p24 -> p12*p34 + p14*p23.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import ClaimFailure, ValidationError
from .exact import PolyQ, QMatrix, kernel, primitive, rat, rat_str, solve
from .grassmann import Pluecker, minors2
from .strata import residual_curves, residual_param, strata_of_type, vertex_point
from .zinput import ZMatrix, validate_z

I13, I24 = 1, 4


@dataclass(frozen=True)
class GrBasis:
    degree: int
    monomials: tuple[tuple[int, ...], ...]
    index: dict = field(compare=False, hash=False, repr=False)

    def __len__(self):
        return len(self.monomials)


@lru_cache(maxsize=None)
def gr_basis(d: int) -> GrBasis:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    monos = set()
    for combo in combinations_with_replacement(range(6), d):
        e = [0] * 6
        for k in combo:
            e[k] += 1
        if not (e[I13] and e[I24]):
            monos.add(tuple(e))
    ordered = tuple(sorted(monos, reverse=True))
    return GrBasis(d, ordered, {m: k for k, m in enumerate(ordered)})


def reduce_mod_pluecker(p: PolyQ, degree: int | None = None) -> tuple[Fraction, ...]:
    """Coefficient vector over ``gr_basis`` of the normal form of p."""
    if p.nvars != 6:
        raise ValueError("expected a polynomial in the six Pluecker coordinates")
    degs = {sum(e) for e in p.terms}
    if len(degs) > 1:
        raise ValueError("inhomogeneous polynomial")
    d = degs.pop() if degs else (degree or 0)
    if degree is not None and degree != d:
        raise ValueError(f"polynomial has degree {d}, expected {degree}")
    work = dict(p.terms)
    done: dict = {}
    while work:
        e, c = work.popitem()
        if e[I13] and e[I24]:
            f = list(e)
            f[I13] -= 1
            f[I24] -= 1
            for add in ((0, 5), (2, 3)):  # p12 p34 and p14 p23
                g = list(f)
                g[add[0]] += 1
                g[add[1]] += 1
                g = tuple(g)
                work[g] = work.get(g, 0) + c
                if work[g] == 0:
                    del work[g]
        else:
            done[e] = done.get(e, 0) + c
    basis = gr_basis(d)
    vec = [Fraction(0)] * len(basis)
    for e, c in done.items():
        vec[basis.index[e]] += c
    return tuple(vec)


def monomial_row(basis: GrBasis, p: Sequence) -> list:
    """All basis monomials evaluated at the point p."""
    d = basis.degree
    powers = [[1] * (d + 1) for _ in range(6)]
    for k in range(6):
        for e in range(1, d + 1):
            powers[k][e] = powers[k][e - 1] * p[k]
    out = []
    for m in basis.monomials:
        v = 1
        for k, e in enumerate(m):
            if e:
                v *= powers[k][e]
        out.append(v)
    return out


@dataclass(frozen=True)
class AdjointPoly:
    basis: GrBasis
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return self.basis.degree

    def eval(self, p: Sequence) -> Fraction:
        return sum((c * m for c, m in zip(self.coeffs, monomial_row(self.basis, p)) if c), Fraction(0))

    __call__ = eval

    def to_poly(self) -> PolyQ:
        return PolyQ(6, dict(zip(self.basis.monomials, self.coeffs)))

    def normalized(self) -> "AdjointPoly":
        lead = next((c for c in self.coeffs if c), None)
        if lead is None:
            raise ValueError("zero adjoint")
        return AdjointPoly(self.basis, tuple(c / lead for c in self.coeffs))

    def is_proportional(self, other: "AdjointPoly") -> bool:
        return self.basis == other.basis and self.normalized().coeffs == other.normalized().coeffs

    def perturbed(self, k: int, delta=1) -> "AdjointPoly":
        coeffs = list(self.coeffs)
        coeffs[k] += rat(delta)
        return AdjointPoly(self.basis, tuple(coeffs))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"monomial": list(m), "coeff": rat_str(c)}
                      for m, c in zip(self.basis.monomials, self.coeffs) if c],
        }

    @classmethod
    def from_json(cls, data) -> "AdjointPoly":
        try:
            basis = gr_basis(int(data["degree"]))
            coeffs = [Fraction(0)] * len(basis)
            for term in data["terms"]:
                coeffs[basis.index[tuple(term["monomial"])]] += rat(term["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed adjoint JSON: {exc}") from exc
        return cls(basis, tuple(coeffs))


# ---------------------------------------------------------------------------
# interpolation over the residual arrangement


def samples_per_curve(sid, n: int) -> int:
    return n - 3 if sid.type_tag == "1III" else 2 * n - 7


def _integer_point(p: Pluecker) -> list[int]:
    return [int(x) for x in primitive(p.coords)]


def sample_points(z: ZMatrix, extra: int = 0, fresh: bool = False) -> list[tuple[object, list[int]]]:
    """(curve, primitive integer point) pairs: the interpolation schedule.

    With ``fresh`` the points continue the parameter sequence past the
    schedule, ``extra`` points per curve.
    """
    out = []
    for sid in residual_curves(z.n):
        cp = residual_param(sid, z)
        need = samples_per_curve(sid, z.n)
        pts = cp.samples(need + extra)
        chosen = pts[need:] if fresh else pts[:need + extra]
        out.extend((sid, _integer_point(p)) for p in chosen)
    return out


def assemble_constraints(z: ZMatrix) -> QMatrix:
    basis = gr_basis(z.n - 4)
    rows = [monomial_row(basis, p) for _, p in sample_points(z)]
    return QMatrix(len(rows), len(basis), (v for r in rows for v in r))


_PRIME = (1 << 61) - 1


def _independent_rows_mod_p(rows: list[list[int]], p: int = _PRIME) -> list[int]:
    """Indices of a maximal set of rows independent modulo p (greedy, in order)."""
    basis: dict[int, list[int]] = {}  # pivot column -> reduced row, pivot entry 1
    chosen = []
    for idx, row in enumerate(rows):
        r = [v % p for v in row]
        for c, b in basis.items():
            if r[c]:
                f = r[c]
                r = [(x - f * y) % p for x, y in zip(r, b)]
        piv = next((c for c, v in enumerate(r) if v), None)
        if piv is None:
            continue
        inv = pow(r[piv], p - 2, p)
        r = [(v * inv) % p for v in r]
        for c, b in basis.items():
            if b[piv]:
                f = b[piv]
                basis[c] = [(x - f * y) % p for x, y in zip(b, r)]
        basis[piv] = r
        chosen.append(idx)
    return chosen


@dataclass(frozen=True)
class AdjointSystem:
    rows: int
    cols: int
    rank: int
    kernel_dim: int
    generator: tuple[Fraction, ...] | None


def solve_system(m: QMatrix) -> AdjointSystem:
    """Exact rank and kernel of the interpolation matrix.

    Rows independent modulo a large prime are independent over Q, so a
    modular pass picks a candidate row subset; when it has corank one the
    exact kernel of that subset is checked against every row, which pins the
    exact rank.  Otherwise the full matrix is reduced exactly.
    """
    if m.rows == 0:
        gen = tuple(Fraction(int(k == 0)) for k in range(m.cols)) if m.cols == 1 else None
        return AdjointSystem(0, m.cols, 0, m.cols, gen)
    int_rows = [[int(v) for v in m.row(i)] if all(v.denominator == 1 for v in m.row(i)) else None
                for i in range(m.rows)]
    if all(r is not None for r in int_rows):
        chosen = _independent_rows_mod_p(int_rows)
        if len(chosen) == m.cols - 1:
            vec = kernel(m.select(chosen))[0].column_values(0)
            if all(sum(a * b for a, b in zip(m.row(i), vec)) == 0 for i in range(m.rows)):
                return AdjointSystem(m.rows, m.cols, m.cols - 1, 1, vec)
            return AdjointSystem(m.rows, m.cols, m.cols, 0, None)
    basis = kernel(m)
    gen = basis[0].column_values(0) if len(basis) == 1 else None
    return AdjointSystem(m.rows, m.cols, m.cols - len(basis), len(basis), gen)


@dataclass(frozen=True)
class AdjointResult:
    adjoint: AdjointPoly
    system: AdjointSystem


def adjoint_system(z: ZMatrix) -> AdjointSystem:
    return solve_system(assemble_constraints(z))


def verify_adjoint(a: AdjointPoly, z: ZMatrix, fresh: int = 3) -> list[str]:
    """Failures of the post-hoc checks (empty when all pass)."""
    problems = []
    for sid, p in sample_points(z, extra=fresh, fresh=True):
        if a.eval(p) != 0:
            problems.append(f"nonzero at a fresh sample of {sid}")
    poly = a.to_poly()
    for sid in residual_curves(z.n):
        if not residual_param(sid, z).restrict_poly(poly).is_zero():
            problems.append(f"restriction to {sid} is not identically zero")
    for v in strata_of_type("0I", z.n):
        if a.eval(vertex_point(v, z).coords) == 0:
            problems.append(f"vanishes at boundary vertex {v}")
    return problems


def solve_adjoint(z: ZMatrix, verify: bool = True) -> AdjointPoly:
    return solve_adjoint_full(z, verify).adjoint


def solve_adjoint_full(z: ZMatrix, verify: bool = True) -> AdjointResult:
    validate_z(z)
    system = adjoint_system(z)
    if system.kernel_dim != 1:
        raise ClaimFailure(f"interpolation kernel has dimension {system.kernel_dim}, expected 1")
    a = AdjointPoly(gr_basis(z.n - 4), system.generator).normalized()
    if verify:
        problems = verify_adjoint(a, z)
        if problems:
            raise ClaimFailure("; ".join(problems[:5]))
    return AdjointResult(a, system)


def wedge2(z: ZMatrix) -> QMatrix:
    """Second compound: row ij (i<j), column kl holds the minor on rows i,j, columns k,l."""
    rows = [minors2(z.point(i), z.point(j)) for i, j in ((i, j) for i in range(1, z.n + 1) for j in range(i + 1, z.n + 1))]
    return QMatrix.from_rows(rows, 6)


def adjoint_n5_closed_form(z: ZMatrix) -> AdjointPoly:
    if z.n != 5:
        raise ValidationError("the closed form applies to n = 5")
    hat = {k: z.m.select([r for r in range(5) if r != k - 1]).det() for k in range(1, 6)}
    c = []
    for i in range(1, 6):
        for j in range(i + 1, 6):
            prod = Fraction(1)
            for k in range(1, 6):
                if k not in (i, j):
                    prod *= hat[k]
            c.append(prod)
    try:
        d = solve(wedge2(z), c)
    except ValueError as exc:
        raise ClaimFailure("wedge^2 Z . d = c is inconsistent") from exc
    # gr_basis(1) lists p12, p13, ..., p34 in order
    return AdjointPoly(gr_basis(1), tuple(d))


# ---------------------------------------------------------------------------
# planar polygons


@dataclass(frozen=True)
class PolygonAdjoint:
    """Adjoint curve of a convex polygon.

    ``edges`` are (a, b, c) with a x + b y + c > 0 inside; ``residual_points``
    are homogeneous (x : y : w) intersections of non-adjacent edge lines.
    """

    vertices: tuple[tuple[Fraction, Fraction], ...]
    edges: tuple[tuple[Fraction, Fraction, Fraction], ...]
    residual_points: tuple[tuple[Fraction, Fraction, Fraction], ...]
    homogeneous: PolyQ  # in x, y, w

    @property
    def affine(self) -> PolyQ:
        x, y = PolyQ.gens(2)
        return self.homogeneous.subs([x, y, PolyQ.const(2, 1)])


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def polygon_edges(vertices) -> list[tuple[Fraction, Fraction, Fraction]]:
    verts = [(rat(x), rat(y)) for x, y in vertices]
    k = len(verts)
    cx = sum(v[0] for v in verts) / k
    cy = sum(v[1] for v in verts) / k
    edges = []
    for a in range(k):
        p, q = verts[a], verts[(a + 1) % k]
        line = _cross((p[0], p[1], 1), (q[0], q[1], 1))
        if not any(line[:2]):
            raise ValidationError("repeated polygon vertex")
        val = line[0] * cx + line[1] * cy + line[2]
        if val == 0:
            raise ValidationError("degenerate polygon")
        if val < 0:
            line = tuple(-c for c in line)
        edges.append(line)
    for e in edges:
        if any(e[0] * x + e[1] * y + e[2] < 0 for x, y in verts):
            raise ValidationError("polygon is not convex")
    return edges


def polygon_adjoint_2d(vertices) -> PolygonAdjoint:
    verts = tuple((rat(x), rat(y)) for x, y in vertices)
    if len(verts) < 3:
        raise ValidationError("a polygon needs at least 3 vertices")
    edges = polygon_edges(verts)
    k = len(edges)
    resid = []
    for a in range(k):
        for b in range(a + 2, k):
            if a == 0 and b == k - 1:
                continue
            resid.append(_cross(edges[a], edges[b]))
    d = k - 3
    monos = []
    for combo in combinations_with_replacement(range(3), d):
        e = [0, 0, 0]
        for c in combo:
            e[c] += 1
        monos.append(tuple(e))
    monos.sort(reverse=True)
    if resid:
        m = QMatrix.from_rows([[pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2] for e in monos] for pt in resid],
                              len(monos))
        basis = kernel(m)
    else:
        basis = [QMatrix.column([1])]
    if len(basis) != 1:
        raise ClaimFailure(f"planar adjoint kernel has dimension {len(basis)}")
    coeffs = basis[0].column_values(0)
    return PolygonAdjoint(verts, tuple(edges), tuple(resid), PolyQ(3, dict(zip(monos, coeffs))))
