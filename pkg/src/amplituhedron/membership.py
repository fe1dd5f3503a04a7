"""The amplituhedron map, sign-flip membership certificates and cell witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DegenerateError, ValidationError
from .exact import QMatrix, kernel, rat, rat_str, sign
from .grassmann import Pluecker, bracket, line_representative, pluecker_from_matrix
from .zinput import ZMatrix, cyclic_pair

CERTIFICATES = ("strict_member", "opposite_sign_certificate", "flip_violation", "inconclusive_boundary")


def amplituhedron_map(x: QMatrix, z: ZMatrix) -> Pluecker:
    if x.shape != (2, z.n):
        raise ValidationError(f"X must be 2x{z.n}, got {x.shape[0]}x{x.shape[1]}")
    try:
        return pluecker_from_matrix(x @ z.m)
    except DegenerateError as exc:
        raise DegenerateError("X.Z has rank < 2") from exc


def sign_flip_count(values: Sequence) -> int:
    signs = [sign(v) for v in values if v]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def cyclic_brackets(ab: Sequence, z: ZMatrix) -> list[Fraction]:
    """<AB i(i+1)> for i = 1..n, with <AB n(n+1)> read as <AB 1n>."""
    out = []
    for i in range(1, z.n + 1):
        a, b = cyclic_pair(i, z.n)
        out.append(bracket(ab, z.point(a), z.point(b)))
    return out


def flip_sequence(ab: Sequence, z: ZMatrix) -> list[Fraction]:
    """(<AB12>, <AB13>, ..., <AB1n>)."""
    return [bracket(ab, z.point(1), z.point(j)) for j in range(2, z.n + 1)]


@dataclass(frozen=True)
class MembershipVerdict:
    in_open_part: bool
    cyclic_signs: tuple[int, ...]
    flip_count: int
    certificate: str

    def to_json(self) -> dict:
        return {
            "in_open_part": self.in_open_part,
            "cyclic_signs": list(self.cyclic_signs),
            "flip_count": self.flip_count,
            "certificate": self.certificate,
        }


def membership_open(ab: Sequence, z: ZMatrix) -> MembershipVerdict:
    cyc = [sign(v) for v in cyclic_brackets(ab, z)]
    flips = flip_sequence(ab, z)
    lead = next((s for s in cyc if s), 1)
    cyc = tuple(s * lead for s in cyc)
    nflips = sign_flip_count(flips)
    common = all(s > 0 for s in cyc)
    if common and nflips == 2:
        cert = "strict_member"
    elif 1 in cyc and -1 in cyc:
        cert = "opposite_sign_certificate"
    elif all(flips) and nflips != 2:
        cert = "flip_violation"
    else:
        cert = "inconclusive_boundary"
    return MembershipVerdict(cert == "strict_member", cyc, nflips, cert)


# ---------------------------------------------------------------------------
# witness cells of Gr(2, n)>=0

TAG_PARAMS = {
    "interior": None,  # n parameters
    "facet": 3,
    "plane-I": 2,
    "plane-II": 2,
    "quadric-III": 2,
    "line-I": 1,
    "line-II": 1,
}


@dataclass(frozen=True)
class CellSample:
    x: QMatrix
    cell_tag: str
    indices: tuple[int, ...]
    params: tuple[Fraction, ...]

    @property
    def label(self) -> str:
        if not self.indices:
            return self.cell_tag
        return f"{self.cell_tag}({','.join(map(str, self.indices))})"

    def to_json(self) -> dict:
        return {
            "tag": self.cell_tag,
            "indices": list(self.indices),
            "params": [rat_str(p) for p in self.params],
            "x": [[rat_str(v) for v in self.x.row(r)] for r in range(2)],
        }


def sigma(cols: list[tuple], k: int = 1) -> list[tuple]:
    """Apply k times: cyclic shift right, negating the column that wraps."""
    for _ in range(k):
        last = cols[-1]
        cols = [tuple(-v for v in last)] + cols[:-1]
    return cols


def _unit_rows(n: int, entries: dict) -> list[list[Fraction]]:
    rows = [[Fraction(0)] * n, [Fraction(0)] * n]
    for (r, c), v in entries.items():
        rows[r][c - 1] = rat(v)
    return rows


def _shifted(rows: list[list], i: int) -> QMatrix:
    n = len(rows[0])
    cols = sigma([(rows[0][c], rows[1][c]) for c in range(n)], i - 1)
    return QMatrix.from_rows([[c[0] for c in cols], [c[1] for c in cols]])


def _offset(i: int, j: int, n: int) -> int:
    return (j - i) % n + 1


def cell_sample(tag: str, indices: Sequence[int], params: Sequence, n: int) -> CellSample:
    if tag not in TAG_PARAMS:
        raise ValidationError(f"unknown cell tag {tag!r}")
    if n < 4:
        raise ValidationError("n must be at least 4")
    params = tuple(rat(p) for p in params)
    need = n if tag == "interior" else TAG_PARAMS[tag]
    if len(params) != need:
        raise ValidationError(f"{tag} needs {need} parameters, got {len(params)}")
    if any(p <= 0 for p in params):
        raise ValidationError("cell parameters must be positive")
    indices = tuple(indices)
    nidx = {"interior": 0, "quadric-III": 2, "line-II": 2}.get(tag, 1)
    if len(indices) != nidx or any(not 1 <= a <= n for a in indices):
        raise ValidationError(f"{tag} needs {nidx} indices in 1..{n}")

    if tag == "interior":
        s, acc = [], Fraction(0)
        for p in params:
            acc += p
            s.append(acc)
        x = QMatrix.from_rows([[1] * n, s])
        return CellSample(x, tag, (), params)

    i = indices[0]
    if tag == "facet":
        x1, y1, y2 = params
        rows = _unit_rows(n, {(0, 1): 1, (0, 2): x1, (1, 2): y1, (1, 3): y2, (1, 4): 1})
    elif tag == "plane-I":
        x1, x2 = params
        rows = _unit_rows(n, {(0, 2): 1, (0, 3): x1, (0, 4): x2, (1, 1): -1})
    elif tag == "plane-II":
        a, b = params
        rows = _unit_rows(n, {(0, 1): a, (0, n): -1, (1, 1): b, (1, 2): 1})
    elif tag == "line-I":
        (a,) = params
        rows = _unit_rows(n, {(0, 1): 1, (1, 2): a, (1, n): 1})
    elif tag == "quadric-III":
        j = indices[1]
        if j in {(i - 2) % n + 1, i, i % n + 1}:
            raise ValidationError(f"quadric-III({i},{j}): edges must be disjoint")
        j0 = _offset(i, j, n)
        a, b = params
        rows = _unit_rows(n, {(0, 1): 1, (0, 2): a, (1, j0): b, (1, j0 + 1): 1})
    else:  # line-II
        j = indices[1]
        if i in {j, j % n + 1}:
            raise ValidationError(f"line-II({i},{j}): point must avoid the edge")
        j0 = _offset(i, j, n)
        (b,) = params
        rows = _unit_rows(n, {(0, 1): 1, (1, j0): 1, (1, j0 + 1): b})
    return CellSample(_shifted(rows, i), tag, indices, params)


def is_totally_nonnegative(x: QMatrix) -> bool:
    minors = [x[0, a] * x[1, b] - x[0, b] * x[1, a] for a, b in combinations(range(x.cols), 2)]
    return all(m >= 0 for m in minors) and any(minors)


# ---------------------------------------------------------------------------
# certificates


def projection_constant(ab: Sequence, z: ZMatrix, perp_scale=1) -> Fraction | None:
    """The constant c with det(M_ij) = c <ABij> for all i < j, or None.

    M = Yperp . Z^T where Yperp is an exact kernel basis of a representative
    Y of the line (optionally rescaled by ``perp_scale``).
    """
    y = line_representative(ab)
    perp = [[rat(perp_scale) * v for v in vec.column_values(0)] for vec in kernel(y)]
    cols = [(sum(a * b for a, b in zip(perp[0], zi)), sum(a * b for a, b in zip(perp[1], zi)))
            for zi in z.rows]
    c = None
    for i, j in combinations(range(z.n), 2):
        lhs = cols[i][0] * cols[j][1] - cols[j][0] * cols[i][1]
        rhs = bracket(ab, z.rows[i], z.rows[j])
        if rhs == 0:
            if lhs != 0:
                return None
            continue
        ratio = lhs / rhs
        if ratio == 0 or (c is not None and ratio != c):
            return None
        c = ratio
    return c


def projection_identity_check(ab: Sequence, z: ZMatrix, perp_scale=1) -> bool:
    return projection_constant(ab, z, perp_scale) is not None


def rank_one_certificate(x: QMatrix, i: int) -> bool:
    n = x.cols
    skip = {i, i % n + 1}
    keep = [c for c in range(1, n + 1) if c not in skip]
    return all(x[0, a - 1] * x[1, b - 1] == x[0, b - 1] * x[1, a - 1] for a, b in combinations(keep, 2))

