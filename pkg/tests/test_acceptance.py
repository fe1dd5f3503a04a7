"""Acceptance criteria 1-10.  Each test carries a ``criterion`` marker; the
terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from amplituhedron.adjoint import adjoint_n5_closed_form, polygon_adjoint_2d, solve_adjoint, solve_adjoint_full
from amplituhedron.canonical import canonical_form, facet_residue_check, normalize, polygon_canonical_demo
from amplituhedron.exact import PolyQ, QMatrix, RatFun1
from amplituhedron.grassmann import bracket, pluecker_from_matrix, pluecker_relation
from amplituhedron.membership import (
    TAG_PARAMS,
    amplituhedron_map,
    cell_sample,
    cyclic_brackets,
    membership_open,
    projection_constant,
    rank_one_certificate,
    sign_flip_count,
)
from amplituhedron.strata import (
    TYPES,
    formula_counts,
    incidence_vertices,
    residual_count,
    residual_curves,
    residual_param,
    stratum,
    stratum_counts,
    strata_of_type,
    vertex_point,
)
from amplituhedron.zinput import moment_curve_z
from oracles import condition_holds, curve_conditions, exact_det, flips_oracle, oracle_counts, plucker_of_rows

crit = pytest.mark.criterion


def random_nodes(n, seed):
    rng = random.Random(seed)
    return sorted(Fraction(rng.randint(1, 60), rng.randint(1, 4)) for _ in range(n))


def z_family(n):
    """Moment curve on 1..n and three seeded random increasing node sets."""
    zs = [moment_curve_z(range(1, n + 1))]
    seed = 1000 * n
    while len(zs) < 4:
        nodes = random_nodes(n, seed)
        seed += 1
        if len(set(nodes)) == n:
            zs.append(moment_curve_z(nodes))
    return zs


# --- 1 -------------------------------------------------------------------------

@crit(1)
@pytest.mark.parametrize("n", range(4, 13))
def test_c1_counts_match_closed_forms(n):
    counts = stratum_counts(n)
    assert counts == oracle_counts(n)
    assert all(counts[t] == formula_counts(n)[t] for t in TYPES), (
        f"closed forms {dict(formula_counts(n))} vs enumeration {counts}")
    if n == 5:
        assert tuple(counts[t] for t in TYPES) == (5, 5, 5, 5, 5, 15, 5, 0, 10, 0, 5, 5, 0, 0)


# --- 2 -------------------------------------------------------------------------

@crit(2)
@pytest.mark.parametrize("n", range(4, 13))
def test_c2_residual_count_identity(n):
    c = stratum_counts(n)
    eq = Fraction(n ** 4, 12) - Fraction(n ** 3, 2) + Fraction(17 * n ** 2, 12) - 3 * n
    assert eq == c["0II"] + c["0III"] + c["0IV"] + c["0V"] + 2 * c["0VI"] == residual_count(n)
    assert {5: 10, 6: 33, 8: 152}.get(n, eq) == eq


# --- 3 -------------------------------------------------------------------------

def table_row(v, n):
    """The incidence table entry for a vertex, written out literally."""
    def s(tag, *idx):
        return stratum(tag, idx, n)

    def conic(a, j, k, near, hub):
        # a triple whose edges touch is no conic: the table entry degenerates to
        # the line through Z_hub meeting the remaining edge
        for b, c in ((j, k), (k, j)):
            if (b - near) % n == 0:
                return s("1III", hub, c)
        return s("1IV", a, j, k)

    t, x = v.type_tag, v.indices
    if t == "0I":
        i, j = x
        if (j - i) % n == n - 1:
            i, j = j, i
        if (j - i) % n == 1:
            return {s("1I", i), s("1I", i + 1), s("1II", i, i + 1), s("1II", i + 1, i - 1)}
        return {s("1II", i, j), s("1II", i, j - 1), s("1II", j, i), s("1II", j, i - 1)}
    if t == "0II":
        i, j = x
        return {s("1III", i, j), s("1III", i, j - 1), s("1III", j, i), s("1III", j, i - 1)}
    if t == "0III":
        i, j = x
        return {s("1I", i), s("1II", i, j), s("1III", i, j)}
    if t == "0IV":
        i, j, k = x
        return {s("1II", i, j), s("1II", i, k),
                conic(i - 1, j, k, i - 2, i - 1), conic(i, j, k, i + 1, i + 1)}
    if t == "0V":
        i, j, k = x
        return {s("1III", i, j), s("1III", i, k), s("1IV", i - 1, j, k), s("1IV", i, j, k)}
    return {s("1IV", *trip) for trip in itertools.combinations(x, 3)}


@crit(3)
@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_c3_incidence(n):
    z = moment_curve_z(range(1, n + 1))
    conds = {}
    for t in ("0I", "0II", "0III", "0IV", "0V", "0VI"):
        for v in strata_of_type(t, n):
            inc = incidence_vertices(v, n)
            assert set(inc) == table_row(v, n), v
            p = vertex_point(v, z)
            pts = [p.u, p.v] if t == "0VI" else [p.coords]
            for c in inc:
                if c not in conds:
                    conds[c] = curve_conditions(c.type_tag, c.indices, n)
                assert all(condition_holds(q, k, z) for q in pts for k in conds[c]), (v, c)


# --- 4 -------------------------------------------------------------------------

BOUNDARY_CELLS = [  # tag, indices, edges whose cyclic bracket must vanish
    ("facet", lambda i, j: (i,), lambda i, j: {i}),
    ("plane-I", lambda i, j: (i,), lambda i, j: {i - 1, i}),
    ("plane-II", lambda i, j: (i,), lambda i, j: {i - 1, i}),
    ("line-I", lambda i, j: (i,), lambda i, j: {i - 1, i}),
    ("quadric-III", lambda i, j: (i, j), lambda i, j: {i, j}),
    ("line-II", lambda i, j: (i, j), lambda i, j: {i - 1, i, j}),
]


@crit(4)
@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_c4_membership_verdicts(n):
    z = moment_curve_z(range(1, n + 1))
    rng = random.Random(n)
    for _ in range(10):
        s = cell_sample("interior", (), [rng.randint(1, 9) for _ in range(n)], n)
        assert membership_open(amplituhedron_map(s.x, z).coords, z).certificate == "strict_member"
    for tag, idx, zeros in BOUNDARY_CELLS:
        for i in range(1, n + 1):
            j = (i + 2) % n + 1
            params = [rng.randint(1, 9) for _ in range(TAG_PARAMS[tag])]
            ab = amplituhedron_map(cell_sample(tag, idx(i, j), params, n).x, z).coords
            want = {(e - 1) % n + 1 for e in zeros(i, j)}
            got = {k + 1 for k, c in enumerate(cyclic_brackets(ab, z)) if c == 0}
            assert want <= got, (tag, i)
            assert membership_open(ab, z).certificate != "strict_member"
    for sid in residual_curves(n):
        for p in residual_param(sid, z).samples(10):
            assert membership_open(p.coords, z).certificate != "strict_member", sid


# --- 5 -------------------------------------------------------------------------

@crit(5)
@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_c5_adjoint_kernel_is_one_dimensional(n):
    for z in z_family(n):
        res = solve_adjoint_full(z)
        assert res.system.kernel_dim == 1 and res.adjoint.degree == n - 4


@crit(5)
def test_c5_n4_constant_adjoint():
    a = solve_adjoint(moment_curve_z(range(1, 5)))
    assert a.degree == 0 and a.coeffs == (1,)


# --- 6 -------------------------------------------------------------------------

@crit(6)
@pytest.mark.parametrize("nodes", [range(1, 6), [1, 3, 4, 7, 12]])
def test_c6_n5_closed_form(nodes):
    z = moment_curve_z(nodes)
    cf, a = adjoint_n5_closed_form(z), solve_adjoint(z)
    k = next(i for i, c in enumerate(a.coeffs) if c)
    scaled = tuple(c * a.coeffs[k] / cf.coeffs[k] for c in cf.coeffs)
    assert cf.basis == a.basis and scaled == a.coeffs


# --- 7 -------------------------------------------------------------------------

@crit(7)
def test_c7_pentagon():
    verts = [(1, 0), (3, 0), (4, 2), (2, 4), (0, 2)]
    x, y = PolyQ.gens(2)
    golden = x * x * -4 + x * 16 - y * y * 2 + y * 28 + 48
    aff = polygon_adjoint_2d(verts).affine
    assert aff == golden * (aff.terms[(2, 0)] / -4)
    pc = polygon_canonical_demo(verts)
    (edge,) = [e for e in pc.edges if e.edge[0] == 0 and e.edge[2] == 0]  # the line y = 0
    (t,) = PolyQ.gens(1)
    assert edge.form == RatFun1(PolyQ.const(1, 2), (t - 1) * (t * -1 + 3))
    vals = {v: r for e in pc.edges for v, r in e.vertex_residues}
    assert len(vals) == 5 and all(abs(r) == 1 for r in vals.values()) and pc.verified


# --- 8 -------------------------------------------------------------------------

@crit(8)
@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_c8_simple_vertex_residues(n):
    z = moment_curve_z(range(1, n + 1))
    a = solve_adjoint(z)
    norm = normalize(canonical_form(z, a), z)
    assert norm.verified and len(norm.reports) == n * (n - 3) // 2
    assert all(r.value in (1, -1) for r in norm.reports)
    if n >= 5:  # at n = 4 the adjoint is a constant and any change is a rescaling
        bad = a.perturbed(len(a.coeffs) // 2)
        assert not normalize(canonical_form(z, bad), z).verified


# --- 9 -------------------------------------------------------------------------

@crit(9)
@pytest.mark.parametrize("n", [5, 6, 7])
def test_c9_facet_trichotomy(n):
    z = moment_curve_z(range(1, n + 1))
    form = normalize(canonical_form(z, solve_adjoint(z)), z).form
    for i in range(1, n + 1):
        rep = facet_residue_check(form, i, z)
        assert rep.ok, (i, rep)
        assert rep.boundary and all(pole for _, pole in rep.boundary)
        assert all(zero for _, zero in rep.residual)
        assert rep.interior and all(v not in (None, 0) for _, v in rep.interior)


# --- 10 ------------------------------------------------------------------------

vec4 = st.lists(st.integers(-20, 20), min_size=4, max_size=4)


@crit(10)
@settings(max_examples=500, deadline=None)
@given(vec4, vec4)
def test_c10_pluecker_relation(a, b):
    assume(sympy.Matrix([a, b]).rank() == 2)
    p = pluecker_from_matrix(QMatrix.from_rows([a, b]))
    assert pluecker_relation(p.coords) == 0
    assert p.coords[0] * p.coords[5] - p.coords[1] * p.coords[4] + p.coords[2] * p.coords[3] == 0


@crit(10)
@settings(max_examples=100, deadline=None)
@given(vec4, vec4, st.integers(5, 8))
def test_c10_projection_identity(a, b, n):  # [DERIVED] sympy nullspace and 4x4 determinants
    ab = plucker_of_rows(a, b)
    assume(any(ab))
    z = moment_curve_z(range(1, n + 1))
    perp = sympy.Matrix([a, b]).nullspace()
    m = sympy.Matrix.hstack(*perp).T * sympy.Matrix(z.rows).T
    ratios = set()
    for i, j in itertools.combinations(range(n), 2):
        lhs = m[:, [i, j]].det()
        rhs = exact_det([a, b, z.rows[i], z.rows[j]])
        assert (lhs == 0) == (rhs == 0)
        if rhs:
            ratios.add(Fraction(int(sympy.fraction(lhs / rhs)[0]), int(sympy.fraction(lhs / rhs)[1])))
        assert bracket(ab, z.rows[i], z.rows[j]) == rhs
    assert len(ratios) == 1
    assert projection_constant(ab, z) is not None


@crit(10)
@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_c10_rank_one_on_facet_samples(n):
    for i in range(1, n + 1):
        for params in itertools.product((1, 2), (1, 3), (1, 5)):
            s = cell_sample("facet", (i,), params, n)
            assert rank_one_certificate(s.x, i)


@crit(10)
@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-5, 5), max_size=14), st.integers(0, 14), st.integers(1, 5))
def test_c10_sign_flip_invariances(vals, pos, c):
    k = sign_flip_count(vals)
    assert k == flips_oracle(vals)
    assert sign_flip_count([-v for v in vals]) == k
    assert sign_flip_count([c * v for v in vals]) == k
    assert sign_flip_count(vals[:pos] + [0] + vals[pos:]) == k
