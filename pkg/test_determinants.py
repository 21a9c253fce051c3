"""
Tests for exact determinants
"""
import random
from fractions import Fraction

import pytest

from determinants import det_bareiss, det_cofactor, determinant, laplace_last_column, minor
from errors import ShapeError
from exact_core import Polynomial

F = Fraction

CASES = [
    {"name": "empty", "matrix": [], "det": F(1)},
    {"name": "1x1", "matrix": [[F(-7, 3)]], "det": F(-7, 3)},
    {"name": "2x2", "matrix": [[2, 1], [1, 3]], "det": F(5)},
    {"name": "needs pivot swap", "matrix": [[0, 1], [1, 0]], "det": F(-1)},
    {"name": "singular", "matrix": [[1, 2, 3], [2, 4, 6], [0, 1, 5]], "det": F(0)},
    {"name": "zero column", "matrix": [[0, 1, 2], [0, 3, 4], [0, 5, 7]], "det": F(0)},
    {"name": "fractions", "matrix": [[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]], "det": F(1, 60)},
    {"name": "hilbert 3", "matrix": [[F(1, i + j + 1) for j in range(3)] for i in range(3)], "det": F(1, 2160)},
    {"name": "swap mid-elimination", "matrix": [[1, 2, 3], [2, 4, 5], [1, 3, 1]], "det": F(1)},
]


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_bareiss_known_values(case):
    """Fraction-free elimination matches hand-computed determinants."""
    assert det_bareiss(case["matrix"]) == case["det"]
    assert det_cofactor(case["matrix"]) == case["det"]


def test_bareiss_agrees_with_cofactor_on_random_matrices():
    """Both routes agree on random rational matrices."""
    rng = random.Random(7)
    for size in range(1, 6):
        for _ in range(5):
            matrix = [[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(size)] for _ in range(size)]
            assert det_bareiss(matrix) == det_cofactor(matrix)
            assert laplace_last_column(matrix) == det_bareiss(matrix)


def test_cofactor_over_polynomials():
    """Polynomial entries go through cofactor expansion."""
    x = Polynomial.from_descending([1, 0])
    one = Polynomial.constant(1)
    assert determinant([[x, one], [one, x]]) == Polynomial.from_descending([1, 0, -1])


def test_minor_drops_rows_and_columns():
    """Indices are 0-based."""
    matrix = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert minor(matrix, [1], [0]) == [[2, 3], [8, 9]]
    assert minor(matrix) == matrix


def test_non_square_is_rejected():
    """A ragged matrix raises ShapeError."""
    with pytest.raises(ShapeError):
        det_bareiss([[1, 2], [3]])
    with pytest.raises(ShapeError):
        det_cofactor([[1, 2, 3], [4, 5, 6]])
