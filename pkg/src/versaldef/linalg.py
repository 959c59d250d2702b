"""Small exact linear algebra over the rationals.

Rows are kept as sparse dicts column -> Fraction.  Everything here is
deterministic: pivots are always chosen as the smallest column index of
the row being processed, and rows are processed in input order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

Row = Dict[int, Fraction]


def _scale(row: Row, c: Fraction) -> Row:
    return {k: v * c for k, v in row.items()}


def _axpy(row: Row, c: Fraction, other: Row) -> Row:
    """row + c * other, dropping zeros."""
    out = dict(row)
    for k, v in other.items():
        acc = out.get(k)
        if acc is None:
            out[k] = c * v
        else:
            acc = acc + c * v
            if acc:
                out[k] = acc
            else:
                del out[k]
    return out


class SparseEliminator:
    """Incremental Gaussian elimination; feed rows, read off the rank.

    Pivot rows are stored normalised (pivot coefficient 1) and fully
    reduced against each other is not required for rank purposes, so we
    only do forward elimination.
    """

    def __init__(self) -> None:
        self.pivots: Dict[int, Row] = {}

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            row = _axpy(row, -row[lead], piv)
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; True if it increased the rank."""
        red = self.reduce(row)
        if not red:
            return False
        lead = min(red)
        self.pivots[lead] = _scale(red, Fraction(1, 1) / red[lead])
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[Row]) -> int:
    elim = SparseEliminator()
    for r in rows:
        elim.add(r)
    return elim.rank


def in_span(row: Row, elim: SparseEliminator) -> bool:
    return not elim.reduce(row)


def solve_dense(
    matrix: List[List[Fraction]], rhs: List[Fraction]
) -> Optional[List[Fraction]]:
    """One exact solution of A x = b with free variables set to zero.

    Returns None when the system is inconsistent.  Uses partial pivoting
    by first nonzero entry; fully deterministic.
    """
    m = len(matrix)
    if m == 0:
        return []
    n = len(matrix[0])
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivots: List[Tuple[int, int]] = []
    r = 0
    for col in range(n):
        sel = None
        for i in range(r, m):
            if a[i][col]:
                sel = i
                break
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = Fraction(1, 1) / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                c = a[i][col]
                a[i] = [vi - c * vr for vi, vr in zip(a[i], a[r])]
        pivots.append((r, col))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n]:
            return None
    x = [Fraction(0)] * n
    for row, col in pivots:
        x[col] = a[row][n]
    return x


def dense_rank(matrix: List[List[Fraction]]) -> int:
    rows = []
    for row in matrix:
        rows.append({j: v for j, v in enumerate(row) if v})
    return rank(rows)
