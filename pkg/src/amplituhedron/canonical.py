"""The canonical 4-form alpha / prod <AB i(i+1)> in an affine chart, and its residues."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import partial
from fractions import Fraction
from typing import Sequence

from ._parallel import pmap
from .adjoint import AdjointPoly, polygon_adjoint_2d
from .errors import DegenerateError, ValidationError
from .exact import PolyQ, QMatrix, RatFun1, det, rat, rat_str, residue_at
from .grassmann import STANDARD_CHARTS, Chart, chart_coords
from .membership import amplituhedron_map, cell_sample
from .strata import StratumId, cyc, residual_param, strata_of_type, vertex_point
from .zinput import ZMatrix, cyclic_bracket_rows


@dataclass(frozen=True)
class TopForm:
    chart: Chart
    numerator: PolyQ
    denominator_factors: tuple[PolyQ, ...]
    scale: Fraction = Fraction(1)

    @property
    def n(self) -> int:
        return len(self.denominator_factors)

    def coords(self, ab: Sequence) -> tuple[Fraction, ...]:
        return chart_coords(ab, self.chart)

    def with_scale(self, scale) -> "TopForm":
        return replace(self, scale=rat(scale))

    def factor_values(self, x: Sequence) -> list[Fraction]:
        return [g.eval(x) for g in self.denominator_factors]


def build_form(z: ZMatrix, a: AdjointPoly, chart: Chart) -> TopForm:
    emb = chart.embedding()
    num = a.to_poly().subs(emb)
    factors = []
    for row in cyclic_bracket_rows(z):
        g = PolyQ(4)
        for c, e in zip(row, emb):
            if c:
                g = g + e * c
        factors.append(g)
    return TopForm(chart, num, tuple(factors))


def simple_vertices(n: int) -> list[StratumId]:
    """(0,I,ij) with i, j not cyclically adjacent."""
    return [v for v in strata_of_type("0I", n) if cyc(v.indices[1] - v.indices[0], n) not in (1, n - 1)]


def vertex_flag(v: StratumId, n: int) -> tuple[int, ...]:
    """The four facets through a simple vertex, sorted."""
    i, j = v.indices
    return tuple(sorted({cyc(i - 1, n), i, cyc(j - 1, n), j}))


def choose_chart(points: Sequence[Sequence]) -> Chart:
    for chart in STANDARD_CHARTS:
        if all(chart.contains(p) for p in points):
            return chart
    raise DegenerateError("no standard chart contains all points")


def jacobian(polys: Sequence[PolyQ], x: Sequence) -> QMatrix:
    return QMatrix.from_rows([[g.diff(k).eval(x) for k in range(4)] for g in polys])


def vertex_residue(form: TopForm, v: Sequence, flag: Sequence[int]) -> Fraction:
    """Iterated residue at the transverse point v of the facets in ``flag``.

    ``v`` is a Pluecker point; facets are 1-based cyclic bracket indices.
    """
    x = form.coords(v)
    vals = form.factor_values(x)
    if any(vals[m - 1] for m in flag):
        raise DegenerateError("vertex is not on every flagged facet")
    rest = Fraction(1)
    for m, g in enumerate(vals, start=1):
        if m not in flag:
            if g == 0:
                raise DegenerateError(f"facet {m} also passes through the vertex")
            rest *= g
    jac = det(jacobian([form.denominator_factors[m - 1] for m in flag], x))
    if jac == 0:
        raise DegenerateError("flagged facets are not transverse at the vertex")
    return form.scale * form.numerator.eval(x) / (rest * jac)


@dataclass(frozen=True)
class ResidueReport:
    vertex: StratumId
    flag: tuple[int, ...]
    value: Fraction
    chart_used: Chart

    def to_json(self) -> dict:
        return {"vertex": str(self.vertex), "flag": list(self.flag),
                "value": rat_str(self.value), "chart": self.chart_used.name}


@dataclass(frozen=True)
class Normalization:
    scale: Fraction
    reports: tuple[ResidueReport, ...]
    verified: bool
    form: TopForm


def canonical_form(z: ZMatrix, a: AdjointPoly) -> TopForm:
    """The form on a chart containing every simple vertex."""
    pts = [vertex_point(v, z).coords for v in simple_vertices(z.n)]
    return build_form(z, a, choose_chart(pts))


def _raw_residue(form: TopForm, z: ZMatrix, v: StratumId):
    flag = vertex_flag(v, z.n)
    return v, flag, vertex_residue(form.with_scale(1), vertex_point(v, z).coords, flag)


def normalize(form: TopForm, z: ZMatrix, jobs: int | None = None) -> Normalization:
    verts = simple_vertices(z.n)
    if not verts:
        raise DegenerateError("no simple vertex")
    raw = pmap(partial(_raw_residue, form, z), verts, jobs)
    first = raw[0][2]
    if first == 0:
        return Normalization(Fraction(0), tuple(ResidueReport(v, f, r, form.chart) for v, f, r in raw),
                             False, form)
    scale = 1 / first
    reports = tuple(ResidueReport(v, f, r * scale, form.chart) for v, f, r in raw)
    verified = all(abs(r.value) == 1 for r in reports)
    return Normalization(scale, reports, verified, form.with_scale(scale))


def simple_poles(form: TopForm) -> bool:
    """No two denominator factors are proportional (so no factor repeats)."""
    gs = form.denominator_factors
    for a in range(len(gs)):
        for b in range(a + 1, len(gs)):
            ga, gb = gs[a], gs[b]
            if set(ga.terms) == set(gb.terms):
                e = next(iter(ga.terms))
                ratio = gb.terms[e] / ga.terms[e]
                if all(gb.terms[k] == ratio * c for k, c in ga.terms.items()):
                    return False
    return True


# ---------------------------------------------------------------------------
# facet structure


@dataclass
class FacetReport:
    facet: int
    boundary: list[tuple[str, bool]] = field(default_factory=list)
    residual: list[tuple[str, bool]] = field(default_factory=list)
    interior: list[tuple[str, Fraction | None]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (all(ok for _, ok in self.boundary) and all(ok for _, ok in self.residual)
                and all(v not in (None, 0) for _, v in self.interior) and bool(self.boundary)
                and bool(self.interior))

    def to_json(self) -> dict:
        return {
            "facet": self.facet,
            "boundary_surfaces": [{"sample": s, "pole": ok} for s, ok in self.boundary],
            "residual_curves": [{"sample": s, "zero": ok} for s, ok in self.residual],
            "interior": [{"sample": s, "density": None if v is None else rat_str(v)} for s, v in self.interior],
            "ok": self.ok,
        }


_PARAM_SETS = ((1, 1), (2, 3), (5, 2), (3, 7), (7, 4), (11, 5))
_FACET_PARAMS = ((1, 1, 1), (2, 1, 3), (1, 3, 2), (4, 5, 7), (3, 2, 9), (6, 1, 5))


def boundary_surfaces(i: int, n: int) -> list[tuple[str, tuple[int, ...]]]:
    """The n+1 boundary surfaces of facet i as witness-cell tags."""
    out = [("plane-I", (i,)), ("plane-I", (cyc(i + 1, n),)), ("plane-II", (i,)), ("plane-II", (cyc(i + 1, n),))]
    for j in range(1, n + 1):
        if j not in (cyc(i - 1, n), i, cyc(i + 1, n)):
            out.append(("quadric-III", (i, j)))
    return out


def facet_residual_curves(i: int, n: int) -> list[StratumId]:
    """Residual curves lying on the facet <AB i(i+1)> = 0."""
    out = []
    for s in strata_of_type("1III", n):
        a, b = s.indices
        if i in (cyc(a - 1, n), a, b):
            out.append(s)
    for s in strata_of_type("1IV", n):
        if i in s.indices:
            out.append(s)
    return out


def _in_chart_samples(form: TopForm, tag, idx, n, z, param_sets, count):
    pts = []
    for params in param_sets:
        ab = amplituhedron_map(cell_sample(tag, idx, params, n).x, z)
        if form.chart.contains(ab):
            pts.append((params, ab))
        if len(pts) == count:
            break
    return pts


def leray_density(form: TopForm, i: int, x: Sequence) -> Fraction | None:
    """numerator / (prod_{j != i} g_j * dg_i/dx_k) at a point of {g_i = 0}.

    k is the first chart variable with dg_i/dx_k != 0; None if the other
    factors vanish there.
    """
    g = form.denominator_factors[i - 1]
    k = next((k for k in range(4) if g.diff(k).eval(x)), None)
    if k is None:
        raise DegenerateError("facet is singular at the sample; switch chart")
    rest = Fraction(1)
    for m, val in enumerate(form.factor_values(x), start=1):
        if m != i:
            if val == 0:
                return None
            rest *= val
    return form.scale * form.numerator.eval(x) / (rest * g.diff(k).eval(x))


def facet_residue_check(form: TopForm, i: int, z: ZMatrix, samples: int = 2) -> FacetReport:
    n = z.n
    rep = FacetReport(i)
    for tag, idx in boundary_surfaces(i, n):
        for params, ab in _in_chart_samples(form, tag, idx, n, z, _PARAM_SETS, samples):
            x = form.coords(ab)
            vals = form.factor_values(x)
            others = [m for m, v in enumerate(vals, start=1) if m != i and v == 0]
            pole = vals[i - 1] == 0 and len(others) == 1 and form.numerator.eval(x) != 0
            rep.boundary.append((f"{tag}({','.join(map(str, idx))}) at {params}", pole))
    for sid in facet_residual_curves(i, n):
        cp = residual_param(sid, z)
        for p in cp.samples(3):
            if not form.chart.contains(p):
                continue
            x = form.coords(p)
            zero = form.factor_values(x)[i - 1] == 0 and form.numerator.eval(x) == 0
            rep.residual.append((str(sid), zero))
    for params, ab in _in_chart_samples(form, "facet", (i,), n, z, _FACET_PARAMS, samples + 1):
        x = form.coords(ab)
        if form.factor_values(x)[i - 1] != 0:
            rep.interior.append((f"facet({i}) at {params}", None))
            continue
        rep.interior.append((f"facet({i}) at {params}", leray_density(form, i, x)))
    return rep


# ---------------------------------------------------------------------------
# planar polygons


@dataclass(frozen=True)
class EdgeResidue:
    edge: tuple[Fraction, Fraction, Fraction]
    variable: str  # "x" or "y": the coordinate parametrizing the edge
    form: RatFun1
    vertex_residues: tuple[tuple[tuple[Fraction, Fraction], Fraction], ...]


@dataclass(frozen=True)
class PolygonCanonical:
    scale: Fraction
    numerator: PolyQ  # scaled adjoint in x, y
    edges: tuple[EdgeResidue, ...]

    @property
    def verified(self) -> bool:
        return all(abs(r) == 1 for e in self.edges for _, r in e.vertex_residues)


def _edge_residue(num: PolyQ, edges, k: int, verts_on_edge) -> EdgeResidue:
    """Residue of num / prod(l_m) dx^dy along l_k = 0.

    Writing dx^dy = -(1/b) dl^dx when b != 0 gives -(F/b) dx; for a
    vertical edge dx^dy = (1/a) dl^dy gives (F/a) dy.
    """
    a, b, c = edges[k]
    t = PolyQ.from_coeffs([0, 1])
    if b:
        sub = [t, PolyQ.from_coeffs([-c / b, -a / b])]
        factor, var = -1 / b, "x"
    else:
        sub = [PolyQ.const(1, -c / a), t]
        factor, var = 1 / a, "y"
    top = num.subs(sub) * factor
    bottom = PolyQ.const(1, 1)
    for m, (am, bm, cm) in enumerate(edges):
        if m != k:
            bottom = bottom * (sub[0] * am + sub[1] * bm + cm)
    f = RatFun1(top, bottom)
    res = tuple((v, residue_at(f, v[0] if var == "x" else v[1])) for v in verts_on_edge)
    return EdgeResidue(edges[k], var, f, res)


def polygon_canonical_demo(vertices) -> PolygonCanonical:
    pa = polygon_adjoint_2d(vertices)
    verts, edges = pa.vertices, pa.edges
    k = len(edges)
    on_edge = [(verts[m], verts[(m + 1) % k]) for m in range(k)]
    raw = [_edge_residue(pa.affine, edges, m, on_edge[m]) for m in range(k)]
    first = raw[0].vertex_residues[0][1]
    if first == 0:
        raise ValidationError("adjoint vanishes at a polygon vertex")
    scale = 1 / first
    num = pa.affine * scale
    return PolygonCanonical(scale, num, tuple(_edge_residue(num, edges, m, on_edge[m]) for m in range(k)))
