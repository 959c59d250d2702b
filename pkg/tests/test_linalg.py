"""Sparse elimination against a dense rational oracle."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from versaldef.linalg import SparseEliminator, dense_rank, in_span, rank, solve_dense


def _dense_rank_oracle(rows, ncols):
    """Textbook Gaussian elimination on dense copies."""
    mat = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rk = 0
    col = 0
    nrows = len(mat)
    while rk < nrows and col < ncols:
        pivot = next((i for i in range(rk, nrows) if mat[i][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rk], mat[pivot] = mat[pivot], mat[rk]
        for i in range(nrows):
            if i != rk and mat[i][col]:
                f = mat[i][col] / mat[rk][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rk])]
        rk += 1
        col += 1
    return rk


row_strategy = st.dictionaries(
    st.integers(0, 5), st.fractions(min_value=-5, max_value=5, max_denominator=3),
    max_size=4,
)


@settings(max_examples=120, deadline=None)
@given(st.lists(row_strategy, max_size=7))
def test_rank_matches_dense_oracle(rows):
    cleaned = [{c: v for c, v in r.items() if v} for r in rows]
    expected = _dense_rank_oracle(cleaned, 6)
    assert rank([dict(r) for r in cleaned]) == expected


@settings(max_examples=100, deadline=None)
@given(st.lists(row_strategy, min_size=1, max_size=5))
def test_in_span_detects_members(rows):
    cleaned = [{c: v for c, v in r.items() if v} for r in rows]
    elim = SparseEliminator()
    for r in cleaned:
        elim.add(dict(r))
    if cleaned and cleaned[0]:
        combo = {c: 2 * v for c, v in cleaned[0].items()}
        assert in_span(combo, elim)


def test_solve_dense_solves():
    matrix = [
        [Fraction(1), Fraction(2), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]
    rhs = [Fraction(5), Fraction(3)]
    sol = solve_dense(matrix, rhs)
    assert sol is not None
    for row, b in zip(matrix, rhs):
        assert sum(a * x for a, x in zip(row, sol)) == b


def test_solve_dense_inconsistent_returns_none():
    matrix = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    rhs = [Fraction(1), Fraction(3)]
    assert solve_dense(matrix, rhs) is None


def test_dense_rank_small():
    assert dense_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert dense_rank([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]) == 2
