"""Exact rational linear algebra: elimination, rank, kernels.

Everything works over arbitrary-precision integers after clearing
denominators; row updates are cross-multiplications followed by a gcd
normalization, so no floating point and no rounding anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _integerize(row):
    """Scale a row of Fractions/ints to coprime integers."""
    fracs = [Fraction(x) for x in row]
    denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _eliminate(rows):
    """In-place integer row echelon reduction.

    Returns the list of pivot (row, column) positions.  Rows below a pivot
    are updated by cross-multiplication and re-normalized by their gcd.
    """
    if not rows:
        return []
    n_rows = len(rows)
    n_cols = len(rows[0])
    pivots = []
    pr = 0
    for pc in range(n_cols):
        pivot_row = None
        for r in range(pr, n_rows):
            if rows[r][pc]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        p = rows[pr][pc]
        for r in range(pr + 1, n_rows):
            q = rows[r][pc]
            if not q:
                continue
            new = [p * a - q * b for a, b in zip(rows[r], rows[pr])]
            g = 0
            for x in new:
                g = gcd(g, x)
            if g > 1:
                new = [x // g for x in new]
            rows[r] = new
        pivots.append((pr, pc))
        pr += 1
        if pr == n_rows:
            break
    return pivots


def rank(matrix) -> int:
    """Rank of a matrix given as a list of rows."""
    rows = [_integerize(r) for r in matrix]
    return len(_eliminate(rows))


def nullspace(matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : A x = 0}, one vector per free column.

    Each basis vector has a 1 in its free coordinate and 0 in the others,
    so the result is deterministic and easy to compare against fixtures.
    """
    if not matrix:
        return []
    n_cols = len(matrix[0])
    rows = [_integerize(r) for r in matrix]
    pivots = _eliminate(rows)
    pivot_cols = [pc for _, pc in pivots]
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        x = [Fraction(0)] * n_cols
        x[free] = Fraction(1)
        # back substitution over the echelon rows, bottom-up
        for pr, pc in reversed(pivots):
            s = sum((Fraction(rows[pr][c]) * x[c] for c in range(pc + 1, n_cols)),
                    Fraction(0))
            x[pc] = -s / rows[pr][pc]
        basis.append(tuple(x))
    return basis


def left_kernel(matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {c : c A = 0}, found by reducing [A | I] and reading the
    rows whose A-part vanished."""
    if not matrix:
        return []
    n_rows = len(matrix)
    width = len(matrix[0])
    rows = []
    for i, r in enumerate(matrix):
        tracked = list(r) + [Fraction(0)] * n_rows
        tracked[width + i] = Fraction(1)
        rows.append(_integerize(tracked))
    _eliminate_width(rows, width)
    basis = []
    for r in rows:
        if any(r[:width]):
            continue
        combo = r[width:]
        if any(combo):
            basis.append(tuple(Fraction(x) for x in combo))
    return basis


def _eliminate_width(rows, width):
    """Echelon reduction using only the first `width` columns for pivoting."""
    n_rows = len(rows)
    pr = 0
    for pc in range(width):
        pivot_row = None
        for r in range(pr, n_rows):
            if rows[r][pc]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        p = rows[pr][pc]
        for r in range(pr + 1, n_rows):
            q = rows[r][pc]
            if not q:
                continue
            new = [p * a - q * b for a, b in zip(rows[r], rows[pr])]
            g = 0
            for x in new:
                g = gcd(g, x)
            if g > 1:
                new = [x // g for x in new]
            rows[r] = new
        pr += 1
        if pr == n_rows:
            return


def mat_vec(matrix, vec):
    """Exact matrix-vector product; entries must be int or Fraction."""
    return tuple(
        sum((a * x for a, x in zip(row, vec) if a and x), Fraction(0))
        for row in matrix
    )


def vec_sub(u, v):
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, v))


def vec_scale(c, v):
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in v)


def is_zero_vector(v) -> bool:
    return all(x == 0 for x in v)
