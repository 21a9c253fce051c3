"""
Tests for the determinantal Sturm chain
"""
import random
from fractions import Fraction

import pytest

from campaigns import random_polynomial, random_regular_pair, random_regular_polynomial
from errors import BadIndexError, DegenerateChainError, DegreeMismatchError, UndefinedEntryError, UsageError
from exact_core import Polynomial, parse_coeff_list, remainder_chain, sturm_chain_euclid
from jacobi import (
    BTable,
    b_coeff,
    c_det,
    c_matrix,
    check_b_recursion,
    check_q_identity,
    determinantal_chain,
    determinantal_member,
    factored_c_det,
    gamma_closed_form,
    gamma_seq,
    leading_coefficient_check,
    normalized_table,
    pair_determinantal_member,
    q_quantity,
)
from models import TableMode

CUBIC = parse_coeff_list("1,0,-3,1")
ALL_ONES = parse_coeff_list("1,1,1,1")


def poly(*descending):
    return Polynomial.from_descending(descending)


def test_b_values_of_cubic():
    """b(j)_i of x^3 - 3x + 1."""
    expected = {(1, 2): -18, (1, 3): 9, (1, 4): 0, (2, 2): 0, (2, 3): 9, (2, 4): -18, (0, 5): 0}
    for (j, i), value in expected.items():
        assert b_coeff(CUBIC, j, i) == value, (j, i)


def test_c_matrix_of_cubic():
    """C(3) is symmetric with determinant 243."""
    matrix = c_matrix(CUBIC, 3)
    assert matrix.entries == ((-18, 9), (9, -18))
    assert matrix.is_symmetric()
    assert matrix.det() == 243
    assert c_det(CUBIC, 3) == 243
    assert c_det(CUBIC, 1) == 1


def test_c_matrix_symmetric_for_random_polynomials():
    """Unshifted C(m) is always symmetric."""
    rng = random.Random(3)
    for _ in range(5):
        f = random_polynomial(rng, 6)
        for m in range(2, 6):
            assert c_matrix(f, m).is_symmetric()


def test_gamma_sequence_of_cubic():
    """gamma = (3, -1/9, 1/108) and the closed form agrees."""
    gammas = gamma_seq(CUBIC, 3)
    assert gammas.values == (3, Fraction(-1, 9), Fraction(1, 108))
    assert gammas[3] == Fraction(1, 108)
    for j in range(1, 4):
        assert gamma_closed_form(CUBIC, j) == gammas[j]
    with pytest.raises(BadIndexError):
        gammas[4]


def test_gamma_mode_conflict():
    """Asking for pair gammas from a derivative table is a usage error."""
    with pytest.raises(UsageError):
        gamma_seq(CUBIC, 3, TableMode.PAIR)


def test_members_of_cubic():
    """Determinantal members reproduce the Euclidean chain."""
    assert determinantal_member(CUBIC, 1) == poly(3, 0, -3)
    assert determinantal_member(CUBIC, 2) == poly(2, -1)
    assert determinantal_member(CUBIC, 3) == poly(Fraction(9, 4))
    assert determinantal_chain(CUBIC) == list(sturm_chain_euclid(CUBIC).members)
    assert leading_coefficient_check(CUBIC, 3)


def test_members_match_euclid_on_random_regular_polynomials():
    """Both routes agree whenever the chain is regular."""
    rng = random.Random(11)
    for _ in range(8):
        f = random_regular_polynomial(rng, (2, 6))
        assert determinantal_chain(BTable.from_polynomial(f)) == list(sturm_chain_euclid(f).members)


def test_degenerate_chain_reports_index():
    """x^2 has c(2) = 0."""
    with pytest.raises(DegenerateChainError) as info:
        determinantal_member(poly(1, 0, 0), 2)
    assert info.value.k == 2


def test_member_index_range():
    """Members run from 1 to n."""
    with pytest.raises(BadIndexError):
        determinantal_member(CUBIC, 4)
    with pytest.raises(BadIndexError):
        determinantal_member(CUBIC, 0)


def test_pair_members():
    """A pair starts the chain at f1, f2."""
    assert pair_determinantal_member(poly(1, 0, 0), poly(1, -1), 3) == poly(-1)
    f_prime = CUBIC.derivative()
    assert pair_determinantal_member(f_prime, poly(2, -1), 1) == f_prime
    assert pair_determinantal_member(f_prime, poly(2, -1), 2) == poly(2, -1)
    assert pair_determinantal_member(f_prime, poly(2, -1), 3) == poly(Fraction(9, 4))


def test_pair_chain_matches_euclid_on_random_pairs():
    """Pair-mode members equal the remainder chain of (f1, f2)."""
    rng = random.Random(5)
    for _ in range(6):
        f1, f2 = random_regular_pair(rng, (3, 6))
        assert determinantal_chain(BTable.from_pair(f1, f2)) == list(remainder_chain(f1, f2).members)


def test_pair_degree_mismatch():
    """deg f1 must be deg f2 + 1."""
    with pytest.raises(DegreeMismatchError):
        BTable.from_pair(poly(1, 0, 0), poly(1))


def test_q_quantity_of_cubic():
    """Q(2)_2 = -243 cancels c(1)^2 c(3)."""
    assert q_quantity(CUBIC, 2, 2) == -243
    assert check_q_identity(CUBIC, 2, 2).passed
    with pytest.raises(BadIndexError):
        q_quantity(CUBIC, 1, 2)


def test_q_identity_on_random_regular_polynomials():
    """The remainder identity holds for every admissible (j, i)."""
    rng = random.Random(17)
    for _ in range(4):
        f = random_regular_polynomial(rng, (4, 6))
        n = f.degree
        for j in range(2, n):
            for i in range(2, n - j + 2):
                assert check_q_identity(f, j, i).passed, (f, j, i)


def test_b_recursion_in_both_modes():
    """The recursion holds for the closed form and defines the pair table."""
    rng = random.Random(23)
    f = random_polynomial(rng, 6)
    table = BTable.from_pair(*random_regular_pair(rng, (4, 5)))
    for k in range(2, 6):
        for i in range(2 * k - 2, 2 * k + 6):
            assert check_b_recursion(f, k, i).passed
            assert check_b_recursion(table, k, i).passed


def test_normalized_table_all_ones():
    """Equal coefficients give r = 1 and phi = 1."""
    table = normalized_table(ALL_ONES, 1, 3)
    assert all(table.r_value(i) == 1 for i in range(2, 4))
    assert table.psi(2, 3) == 1
    assert table.phi(3, 1, 2) == 1
    assert table.beta_expansion(1, 2) == table.beta_value(1, 2)


def test_normalized_table_undefined_entries():
    """A vanishing coefficient leaves entries undefined."""
    table = normalized_table(CUBIC, 1, 3)
    with pytest.raises(UndefinedEntryError):
        table.r_value(3)
    with pytest.raises(UndefinedEntryError):
        table.q_value(2)


def test_beta_expansion_on_random_polynomials():
    """The phi expansion reproduces beta wherever it is defined."""
    rng = random.Random(29)
    for _ in range(4):
        f = Polynomial.from_descending([rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(8)])
        table = normalized_table(f, 3, 7)
        for j in range(1, 4):
            for i in range(2 * j, 8):
                assert table.beta_expansion(j, i) == table.beta_value(j, i)


def test_factored_c_det():
    """c(m+1) factors through the normalized beta matrix."""
    assert factored_c_det(ALL_ONES, 1) == 4
    assert factored_c_det(ALL_ONES, 1) == c_det(ALL_ONES, 2)
    rng = random.Random(31)
    f = Polynomial.from_descending([rng.choice([-2, -1, 1, 2, 5]) for _ in range(7)])
    for m in range(1, 4):
        assert factored_c_det(f, m) == c_det(f, m + 1)
    with pytest.raises(UndefinedEntryError):
        factored_c_det(CUBIC, 1)
