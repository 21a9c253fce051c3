"""
Exact determinants.

Rational matrices go through fraction-free (Bareiss) elimination on an
integer copy; anything else (polynomial entries, say) falls back to
cofactor expansion.
"""
import operator
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Any, Iterable, List, Sequence

from errors import ShapeError

Matrix = Sequence[Sequence[Any]]


def _check_square(matrix: Matrix) -> int:
    size = len(matrix)
    for row in matrix:
        if len(row) != size:
            raise ShapeError(f"matrix is not square: {size} rows, a row of length {len(row)}")
    return size


def _integer_rows(matrix: Matrix):
    """Scale each row to integers; returns the rows and the product of the scales."""
    rows = []
    scale = 1
    for row in matrix:
        entries = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in entries)) if entries else 1
        rows.append([x.numerator * (den // x.denominator) for x in entries])
        scale *= den
    return rows, scale


def det_bareiss(matrix: Matrix) -> Fraction:
    size = _check_square(matrix)
    if size == 0:
        return Fraction(1)
    rows, scale = _integer_rows(matrix)
    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, size):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                # exact: every intermediate is a minor of the integer matrix
                rows[i][j] = (pivot * rows[i][j] - rows[i][k] * rows[k][j]) // previous
        previous = pivot
    return Fraction(sign * rows[-1][-1], scale)


def minor(matrix: Matrix, drop_rows: Iterable[int] = (), drop_cols: Iterable[int] = ()) -> List[List[Any]]:
    """Submatrix without the given 0-based rows and columns."""
    rows_out, cols_out = set(drop_rows), set(drop_cols)
    return [
        [x for j, x in enumerate(row) if j not in cols_out]
        for i, row in enumerate(matrix)
        if i not in rows_out
    ]


def det_cofactor(matrix: Matrix) -> Any:
    """Expansion along the first row; works over any commutative ring."""
    size = _check_square(matrix)
    if size == 0:
        return 1
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    terms = []
    for j, entry in enumerate(matrix[0]):
        if entry == 0:
            continue
        term = entry * det_cofactor(minor(matrix, [0], [j]))
        terms.append(term if j % 2 == 0 else -term)
    return reduce(operator.add, terms, 0)


def determinant(matrix: Matrix) -> Any:
    if all(isinstance(x, (int, Fraction)) for row in matrix for x in row):
        return det_bareiss(matrix)
    return det_cofactor(matrix)


def laplace_last_column(matrix: Matrix) -> Fraction:
    """Determinant by expansion along the last column."""
    size = _check_square(matrix)
    if size == 0:
        return Fraction(1)
    last = size - 1
    total = Fraction(0)
    for p in range(size):
        entry = Fraction(matrix[p][last])
        if entry == 0:
            continue
        sign = 1 if (p + last) % 2 == 0 else -1
        total += sign * entry * det_bareiss(minor(matrix, [p], [last]))
    return total
