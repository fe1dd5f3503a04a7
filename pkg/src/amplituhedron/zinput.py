"""Totally positive matrices Z: construction, validation, genericity, JSON I/O."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import ValidationError
from .exact import QMatrix, det, kernel, rat, rat_str
from .grassmann import bracket_row, pluecker_relation


class ZMatrix:
    """An n x 4 rational matrix whose rows are the points Z_1..Z_n of P^3.

    Total positivity and genericity are computed on first access and cached;
    use :func:`validate_z` to reject unsuitable input up front.
    """

    def __init__(self, m: QMatrix):
        if m.cols != 4:
            raise ValidationError(f"Z must have 4 columns, got {m.cols}")
        if m.rows < 4:
            raise ValidationError(f"Z must have at least 4 rows, got {m.rows}")
        self.m = m
        self.n = m.rows
        self.rows = tuple(m.row(i) for i in range(m.rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ZMatrix":
        try:
            return cls(QMatrix.from_rows(rows, 4))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"malformed Z: {exc}") from exc

    def point(self, i: int) -> tuple[Fraction, ...]:
        """Z_i with cyclic 1-based indexing (Z_{n+1} = Z_1)."""
        return self.rows[(i - 1) % self.n]

    __call__ = point

    @cached_property
    def totally_positive(self) -> bool:
        return check_totally_positive(self)

    @cached_property
    def generic(self) -> bool:
        return check_genericity(self)

    def four_bracket(self, i: int, j: int, k: int, l: int) -> Fraction:
        """<ijkl>: the 4x4 minor on rows i, j, k, l (in the given order)."""
        return det(QMatrix.from_rows([self.point(a) for a in (i, j, k, l)]))

    def rescaled(self, factors: Sequence) -> "ZMatrix":
        return ZMatrix.from_rows([[rat(f) * x for x in row] for f, row in zip(factors, self.rows)])

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[rat_str(x) for x in row] for row in self.rows]}

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def __eq__(self, other):
        return isinstance(other, ZMatrix) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"ZMatrix(n={self.n})"


def cyclic_pair(i: int, n: int) -> tuple[int, int]:
    """Index pair of the i-th cyclic bracket: (i, i+1), and (1, n) for i = n."""
    if not 1 <= i <= n:
        raise ValueError(f"facet index {i} out of range 1..{n}")
    return (i, i + 1) if i < n else (1, n)


def cyclic_bracket_rows(z: ZMatrix) -> list[tuple[Fraction, ...]]:
    """Rows c_i with <AB i(i+1)> = c_i . p(AB), i = 1..n (last one is <AB 1n>)."""
    return [bracket_row(z.point(a), z.point(b)) for a, b in (cyclic_pair(i, z.n) for i in range(1, z.n + 1))]


def moment_curve_z(nodes: Sequence) -> ZMatrix:
    nodes = [rat(t) for t in nodes]
    if len(nodes) < 4:
        raise ValidationError("need at least 4 nodes")
    if any(t <= 0 for t in nodes):
        raise ValidationError("nodes must be positive")
    if any(a >= b for a, b in zip(nodes, nodes[1:])):
        raise ValidationError("nodes must be strictly increasing")
    return ZMatrix.from_rows([[1, t, t * t, t ** 3] for t in nodes])


def check_totally_positive(z: ZMatrix) -> bool:
    m = z.m
    for k in range(1, 5):
        for cols in combinations(range(4), k):
            for rows in combinations(range(m.rows), k):
                if det(m.select(rows, cols)) <= 0:
                    return False
    return True


def _subset_degenerate(rows) -> bool:
    basis = kernel(QMatrix.from_rows(rows))
    if len(basis) >= 2:
        # a projective line (or more) in P^5 always meets the quadric over C
        return True
    return pluecker_relation(basis[0].column_values(0)) == 0


def degenerate_subsets(z: ZMatrix, first_only: bool = False) -> list[tuple[int, ...]]:
    """5-subsets of cyclic brackets that vanish simultaneously on some line."""
    rows = cyclic_bracket_rows(z)
    bad = []
    for subset in combinations(range(z.n), 5):
        if _subset_degenerate([rows[i] for i in subset]):
            bad.append(tuple(i + 1 for i in subset))
            if first_only:
                break
    return bad


def check_genericity(z: ZMatrix) -> bool:
    return not degenerate_subsets(z, first_only=True)


def validate_z(z: ZMatrix, require_generic: bool = True) -> ZMatrix:
    if not z.totally_positive:
        raise ValidationError("Z is not totally positive")
    if require_generic and not z.generic:
        raise ValidationError("Z violates the genericity assumption")
    return z


def z_from_json(data) -> ZMatrix:
    if not isinstance(data, dict) or "rows" not in data:
        raise ValidationError("Z JSON must be an object with a 'rows' array")
    try:
        rows = [[rat(x) for x in row] for row in data["rows"]]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational in Z: {exc}") from exc
    z = ZMatrix.from_rows(rows)
    if "n" in data and data["n"] != z.n:
        raise ValidationError(f"declared n={data['n']} but found {z.n} rows")
    return z

