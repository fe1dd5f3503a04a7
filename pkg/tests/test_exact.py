from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amplituhedron.exact import (
    PolyQ,
    QMatrix,
    RatFun1,
    det,
    kernel,
    matvec,
    primitive,
    rank,
    rat,
    rat_str,
    rational_roots,
    residue_at,
    sign,
    solve,
)
from oracles import exact_det, exact_nullity, exact_rank

small = st.integers(-6, 6)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(fracs, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rat_parsing_and_printing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(" -4 ") == -4
    assert rat_str(Fraction(-2, 4)) == "-1/2"
    assert rat_str(Fraction(5)) == "5"
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(ValueError):
        rat("abc")


def test_sign_and_primitive():
    assert [sign(x) for x in (-3, 0, Fraction(1, 9))] == [-1, 0, 1]
    assert primitive([Fraction(2, 3), Fraction(-4, 3), 0]) == (1, -2, 0)
    assert primitive([0, -6, 9]) == (0, -2, 3)  # orientation is kept


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):  # [DERIVED] sympy rank
    assert rank(QMatrix.from_rows(rows)) == exact_rank(rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda k: st.lists(st.lists(fracs, min_size=k, max_size=k), min_size=k, max_size=k)))
def test_det_matches_sympy(rows):  # [DERIVED] sympy determinant
    assert det(QMatrix.from_rows(rows)) == exact_det(rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_a_basis_of_the_null_space(rows):
    m = QMatrix.from_rows(rows)
    ker = kernel(m)
    assert len(ker) == exact_nullity(rows)
    for k in ker:
        v = k.column_values(0)
        assert all(x == 0 for x in matvec(m, v))
        assert all(x.denominator == 1 for x in v)
    if ker:
        stacked = QMatrix.from_rows([k.column_values(0) for k in ker])
        assert rank(stacked) == len(ker)


def test_solve_unique_system():
    m = QMatrix.from_rows([[2, 1], [1, 3]])
    assert solve(m, [3, 5]) == (Fraction(4, 5), Fraction(7, 5))
    with pytest.raises(ValueError):
        solve(QMatrix.from_rows([[1, 1], [2, 2]]), [1, 3])


def test_matrix_product_and_transpose():
    a = QMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    b = a.T
    assert [list(r) for r in (a @ b).to_rows()] == [[14, 32], [32, 77]]
    assert a.shape == (2, 3) and b.shape == (3, 2)


def test_poly_arithmetic_and_substitution():
    x, y = PolyQ.gens(2)
    p = (x + y) ** 2 - x * y * 2
    assert p == x * x + y * y
    assert p.eval((Fraction(1, 2), 3)) == Fraction(37, 4)
    assert p.is_homogeneous() and p.degree() == 2
    t = PolyQ.gens(1)[0]
    q = p.subs([t + 1, t - 1])
    assert q.coeffs() == [2, 0, 2]
    assert p.diff(0) == x * 2


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4), fracs)
def test_poly_eval_is_a_ring_map(a, b, t):
    p, q = PolyQ.from_coeffs(a), PolyQ.from_coeffs(b)
    assert (p * q).eval((t,)) == p.eval((t,)) * q.eval((t,))
    assert (p - q).eval((t,)) == p.eval((t,)) - q.eval((t,))


def test_rational_roots():
    t = PolyQ.gens(1)[0]
    p = (t * 2 - 1) * (t + 3) * (t * t + 1)
    assert rational_roots(p) == [-3, Fraction(1, 2)]
    assert rational_roots(PolyQ.const(1, 5)) == []


def test_ratfun_reduces_and_residues():
    t = PolyQ.gens(1)[0]
    f = RatFun1((t - 2) * 3, (t - 2) * (t - 1) * (t - 3))
    assert f.den.degree() == 2  # common factor cancelled
    # 3 / ((t-1)(t-3)): residues -3/2 at 1 and +3/2 at 3
    assert residue_at(f, 1) == Fraction(-3, 2)
    assert residue_at(f, 3) == Fraction(3, 2)
    with pytest.raises(ValueError):
        residue_at(f, 0)
