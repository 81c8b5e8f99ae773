"""Exact linear algebra over the rationals: rref, rank, solve.

Matrices are lists of lists of int/Fraction.  Dense and unoptimized but
exact; problem sizes stay in the low thousands.
"""

from __future__ import annotations

from fractions import Fraction


def rref(matrix):
    """Row-reduce a copy; returns (rref_rows, pivot_column_indices)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        if pv != 1:
            inv = Fraction(1, 1) / pv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix):
    return len(rref(matrix)[1])


def solve_unique(matrix, rhs):
    """Solve A x = b expecting a unique solution on the pivot columns.

    Returns the solution vector or None if inconsistent.  Columns without
    pivots get 0 (callers treat the system as having full column rank when
    they need uniqueness; see solve_exact).
    """
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    ncols = len(matrix[0]) if matrix else 0
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    # verify (guards against missing pivots / underdetermined systems)
    for row, b in zip(matrix, rhs):
        if sum(a * xx for a, xx in zip(row, x)) != b:
            return None
    return x


class ColumnSolver:
    """Incremental exact solver: columns are candidate vectors; solve
    expresses targets in their span and certifies independence."""

    def __init__(self, columns):
        # columns: list of dict index->coeff (sparse) or list vectors
        self.columns = columns

    def as_dense(self, keys):
        key_index = {k: i for i, k in enumerate(keys)}
        mat = [[Fraction(0)] * len(self.columns) for _ in keys]
        for j, col in enumerate(self.columns):
            for k, v in col.items():
                mat[key_index[k]][j] = v
        return mat


def sparse_columns_to_matrix(columns):
    """columns: list of dicts key->coeff.  Returns (matrix, keys)."""
    keys = sorted({k for col in columns for k in col}, key=repr)
    key_index = {k: i for i, k in enumerate(keys)}
    mat = [[0] * len(columns) for _ in keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            mat[key_index[k]][j] = v
    return mat, keys


def solve_in_span(columns, target):
    """Express target (dict) as a combination of columns (list of dicts).

    Returns coefficient list or None if target is outside the span or the
    expression is not unique (rank-deficient columns with ambiguity on the
    support are still accepted when consistent; uniqueness is certified by
    full column rank).
    """
    mat, keys = sparse_columns_to_matrix(columns + [target])
    cols = [[row[j] for row in mat] for j in range(len(columns))]
    tvec = [row[len(columns)] for row in mat]
    matrix = [[cols[j][i] for j in range(len(columns))] for i in range(len(keys))]
    return solve_unique(matrix, tvec)
