"""
Tests for the quadratic identities among the b(j)_i
"""
import random

import pytest

from campaigns import random_matrix, random_polynomial, random_regular_pair
from errors import BadIndexError, MissingGeneratorError, ShapeError
from exact_core import parse_coeff_list
from identities import (
    GeneratorAssignment,
    c_prime_bordered,
    c_primed,
    check_bordered_identity,
    check_minor_identity,
    check_primed_sum,
    check_recurrence_identity,
    check_relation_quadratic,
    plucker_full,
    plucker_reduced,
    primed_tail_terms,
    r_alternating_sum,
    violating_assignment,
)
from jacobi import b_coeff, c_det
from models import AssignmentOrigin

CUBIC = parse_coeff_list("1,0,-3,1")


def assignments():
    rng = random.Random(41)
    return [
        GeneratorAssignment.from_polynomial(CUBIC),
        GeneratorAssignment.from_polynomial(random_polynomial(rng, 7)),
        GeneratorAssignment.from_pair(*random_regular_pair(rng, (4, 6))),
        GeneratorAssignment.explicit({}, default=1),
    ]


@pytest.mark.parametrize("g", assignments(), ids=lambda g: g.describe())
def test_quadratic_relation_holds(g):
    """Delta - Delta' + Delta'' vanishes for every k, j >= 1."""
    for k in range(1, 5):
        for j in range(1, 5):
            for i in range(0, 12):
                report = check_relation_quadratic(g, k, j, i)
                assert report.passed, report.params


def test_violating_assignment():
    """The explicit counterexample leaves residual -1."""
    g, indices = violating_assignment()
    report = check_relation_quadratic(g, **indices)
    assert g.origin is AssignmentOrigin.EXPLICIT
    assert report.residual_value == -1
    assert not report.passed


def test_missing_generator():
    """An explicit table without a default refuses unknown symbols."""
    g = GeneratorAssignment.explicit({(1, 2): 3})
    assert g.b(1, 2) == 3
    with pytest.raises(MissingGeneratorError):
        g.b(2, 5)


def test_alternating_sum_all_ones():
    """Constant generators give repeated columns and a zero sum."""
    g = GeneratorAssignment.explicit({}, default=1)
    report = r_alternating_sum(3, [1, 2, 3], [[1, 2, 3, 4]], 5, g)
    assert report.passed
    assert report.params["block"] == [["1", "2", "3", "4"]]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_alternating_sum_random(n):
    """The sum vanishes for polynomial and pair generators."""
    rng = random.Random(100 + n)
    for g in assignments():
        for _ in range(3):
            m = [rng.randint(1, 6) for _ in range(n)]
            report = r_alternating_sum(n, m, random_matrix(rng, n - 2, n + 1), rng.randint(0, 14), g)
            assert report.passed, report.params


def test_alternating_sum_shapes():
    """Block and index tuple must fit n."""
    g = GeneratorAssignment.explicit({}, default=1)
    with pytest.raises(ShapeError):
        r_alternating_sum(3, [1, 2], [[1, 2, 3, 4]], 0, g)
    with pytest.raises(ShapeError):
        r_alternating_sum(3, [1, 2, 3], [[1, 2, 3]], 0, g)
    with pytest.raises(BadIndexError):
        r_alternating_sum(1, [1], [], 0, g)


@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_primed_determinants_of_size_two(i):
    """For n = 3 both primed determinants are explicit 2x2 forms."""
    b = lambda j, k: b_coeff(CUBIC, j, k)
    first, second = c_primed(CUBIC, 3, i)
    assert first == b(1, 2) * b(3, i + 4) - b(1, 4) * b(1, i + 2)
    assert second == b(1, 3) * b(2, i + 3) - b(2, 4) * b(1, i + 2)
    assert c_prime_bordered(CUBIC, 3, i) == first
    assert check_primed_sum(CUBIC, 3, i).passed


def test_primed_sum_at_zero_shift():
    """c(3) = 243 splits as 0 - (-243)."""
    assert c_primed(CUBIC, 3, 0) == (0, -243)
    assert c_det(CUBIC, 3, 0) == 243


def test_primed_sum_random():
    """c - c' + c'' = 0 on random polynomials."""
    rng = random.Random(43)
    for _ in range(3):
        f = random_polynomial(rng, 8)
        for n in range(3, 6):
            for i in range(0, 5):
                assert check_primed_sum(f, n, i).passed
        assert all(term == 0 for term in primed_tail_terms(f, 5, 2))
        assert len(primed_tail_terms(f, 5, 2)) == 2


def test_primed_needs_n_three():
    """Primed determinants start at n = 3."""
    with pytest.raises(BadIndexError):
        c_primed(CUBIC, 2, 0)


@pytest.mark.parametrize("check", [check_minor_identity, check_bordered_identity, check_recurrence_identity])
def test_formula_identities(check):
    """The minor, bordered and recurrence identities vanish on random polynomials."""
    rng = random.Random(47)
    for _ in range(3):
        f = random_polynomial(rng, 7)
        for n in (3, 4):
            for i in range(2, 5):
                report = check(f, n, i)
                assert report.passed, report.params
    with pytest.raises(BadIndexError):
        check(CUBIC, 2, 2)


def test_plucker_relations():
    """Three-term relations hold for random rational matrices."""
    rng = random.Random(53)
    for n in range(3, 7):
        assert plucker_full(random_matrix(rng, n, n - 1)).passed
    for n in range(4, 7):
        V = random_matrix(rng, n, n - 2)
        for i in range(1, n - 2):
            assert plucker_reduced(V, i).passed


def test_plucker_shapes():
    """Wrong shapes and row indices are rejected."""
    with pytest.raises(ShapeError):
        plucker_full([[1, 2], [3, 4]])
    with pytest.raises(ShapeError):
        plucker_reduced([[1], [2], [3]], 1)
    with pytest.raises(BadIndexError):
        plucker_reduced([[1, 2], [3, 4], [5, 6], [7, 8]], 2)
