"""
Determinantal formulas for the members of a Sturm chain.

A polynomial f (or a pair of consecutive chain members) defines quadratic
quantities b(j)_i. They fill the shifted symmetric matrices C(m)_i, whose
determinants c(m)_i, scaled by gamma_i, are the coefficients of the chain
members. Everything here is exact and agrees with the Euclidean route in
exact_core whenever the chain is regular.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import structlog

from determinants import det_bareiss
from errors import (
    BadIndexError,
    CrossCheckError,
    DegenerateChainError,
    DegreeMismatchError,
    DegreeTooSmallError,
    UndefinedEntryError,
    UsageError,
)
from exact_core import Polynomial
from models import IdentityReport, TableMode

logger = structlog.get_logger(__name__)


class BTable:
    """Lazily cached b(j)_i for one polynomial (derivative mode) or one pair.

    The table is total on the integers: b(j)_i = 0 for j <= 0, and in pair
    mode the seed row is zero outside the coefficient list.
    """

    def __init__(self, mode: TableMode, n: int, sources: Tuple[Polynomial, ...],
                 c1_values: Tuple[Fraction, ...], seed_row: Tuple[Fraction, ...] = ()):
        self.mode = mode
        self.n = n
        self.sources = sources
        self._c1 = c1_values
        self._seed = seed_row
        self._values: Dict[Tuple[int, int], Fraction] = {}
        self._dets: Dict[Tuple[int, int], Fraction] = {}

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "BTable":
        n = f.degree
        if n < 1:
            raise DegreeTooSmallError(f"need degree >= 1, got {n}")
        lead = n * f.leading
        c1_values = tuple((n - i) * f.coeff(n - i) / lead for i in range(n))
        return cls(TableMode.DERIVATIVE, n, (f,), c1_values)

    @classmethod
    def from_pair(cls, f1: Polynomial, f2: Polynomial) -> "BTable":
        if f2.is_zero or f1.degree != f2.degree + 1:
            raise DegreeMismatchError(
                f"pair needs deg f1 = deg f2 + 1, got {f1.degree} and {f2.degree}"
            )
        alpha = list(reversed(f1.coeffs))
        c1_values = tuple(a / alpha[0] for a in alpha)
        return cls(TableMode.PAIR, f1.degree + 1, (f1, f2), c1_values, tuple(reversed(f2.coeffs)))

    @property
    def leading(self) -> Fraction:
        return self.sources[0].leading

    def coefficient(self, k: int) -> Fraction:
        """a_k of f in derivative mode, zero outside [0, n]."""
        return self.sources[0].coeff(k)

    def c1(self, i: int) -> Fraction:
        if 0 <= i < len(self._c1):
            return self._c1[i]
        return Fraction(0)

    def value(self, j: int, i: int) -> Fraction:
        if j <= 0:
            return Fraction(0)
        key = (j, i)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        if self.mode is TableMode.DERIVATIVE:
            result = self._closed_form(j, i)
        elif j == 1:
            k = i - 2
            result = self._seed[k] if 0 <= k < len(self._seed) else Fraction(0)
        else:
            result = (
                self.value(j - 1, i)
                + self.c1(j - 1) * self.value(1, i - j + 1)
                - self.c1(i - j) * self.value(1, j)
            )
        return self._values.setdefault(key, result)

    def _closed_form(self, j: int, i: int) -> Fraction:
        n, a = self.n, self.coefficient
        total = sum((Fraction(i - 2 * p) * a(n - p) * a(n - i + p) for p in range(j)), Fraction(0))
        return n * total - j * (n - i + j) * a(n - j) * a(n + j - i)

    def c(self, m: int, shift: int) -> Fraction:
        """c(m)_shift; any integer shift is accepted."""
        if m < 1:
            raise BadIndexError(f"c(m) needs m >= 1, got {m}")
        if m == 1:
            return self.c1(shift)
        key = (m, shift)
        if key not in self._dets:
            self._dets[key] = det_bareiss(shifted_entries(self, m, shift))
        return self._dets[key]

    def gamma_start(self) -> Tuple[Fraction, Fraction]:
        if self.mode is TableMode.DERIVATIVE:
            return self.n * self.leading, -1 / (self.n ** 2 * self.leading)
        return self.leading, Fraction(1)

    def epsilon(self, j: int) -> Fraction:
        first, second = self.gamma_start()
        if self.mode is TableMode.DERIVATIVE:
            second = -second
        return first if j % 2 == 1 else second

    def gamma_sign(self, j: int) -> int:
        if self.mode is TableMode.PAIR:
            return 1
        return 1 if j % 2 == 1 else -1


@lru_cache(maxsize=256)
def _table_for(f: Polynomial) -> BTable:
    return BTable.from_polynomial(f)


def as_table(source: Union[Polynomial, BTable]) -> BTable:
    if isinstance(source, BTable):
        return source
    return _table_for(source)


def b_coeff(f: Polynomial, j: int, i: int) -> Fraction:
    """b(j)_i of f; zero for j <= 0 and outside the coefficient range."""
    if f.degree < 1:
        raise DegreeTooSmallError(f"need degree >= 1, got {f.degree}")
    return as_table(f).value(j, i)


def c1_coeff(f: Polynomial, i: int) -> Fraction:
    """c(1)_i = (n-i) a_(n-i) / (n a_n)."""
    return as_table(f).c1(i)


def shifted_entries(table: BTable, m: int, shift: int) -> List[List[Fraction]]:
    size = m - 1
    rows = []
    for p in range(1, size + 1):
        if p < size:
            rows.append([table.value(min(p, q), p + q) for q in range(1, size + 1)])
        else:
            rows.append([table.value(q, m + shift + q - 1) for q in range(1, size + 1)])
    return rows


@dataclass(frozen=True)
class CMatrix:
    """C(m)_shift, of size (m-1) x (m-1); symmetric when shift is 0."""
    m: int
    shift: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return self.m - 1

    def is_symmetric(self) -> bool:
        return all(self.entries[p][q] == self.entries[q][p]
                   for p in range(self.size) for q in range(p))

    def det(self) -> Fraction:
        return det_bareiss(self.entries)


def c_matrix(source: Union[Polynomial, BTable], m: int, shift: int = 0) -> CMatrix:
    """The (m-1) x (m-1) matrix C(m)_shift."""
    if m < 2 or shift < 0:
        raise BadIndexError(f"C(m)_i needs m >= 2 and i >= 0, got m={m}, i={shift}")
    table = as_table(source)
    return CMatrix(m, shift, tuple(tuple(row) for row in shifted_entries(table, m, shift)))


def c_det(source: Union[Polynomial, BTable], m: int, shift: int = 0) -> Fraction:
    """c(m)_shift; c(1)_shift is the normalized derivative coefficient."""
    if m < 1 or shift < 0:
        raise BadIndexError(f"c(m)_i needs m >= 1 and i >= 0, got m={m}, i={shift}")
    return as_table(source).c(m, shift)


@dataclass(frozen=True)
class GammaSeq:
    mode: TableMode
    values: Tuple[Fraction, ...]

    def __getitem__(self, j: int) -> Fraction:
        """gamma_j, 1-based."""
        if not 1 <= j <= len(self.values):
            raise BadIndexError(f"gamma_{j} not computed")
        return self.values[j - 1]


def _require_regular(table: BTable, upto: int) -> None:
    for k in range(2, upto + 1):
        value = table.c(k, 0)
        if value == 0:
            logger.debug("degenerate chain", k=k, mode=table.mode.value)
            raise DegenerateChainError(k, value)


def gamma_closed_form(source: Union[Polynomial, BTable], j: int) -> Fraction:
    """gamma_j as a signed product of squared c(k) powers."""
    table = as_table(source)
    if j < 1:
        raise BadIndexError(f"gamma_j needs j >= 1, got {j}")
    result = table.gamma_sign(j) * table.epsilon(j)
    for i in range(1, j - 1):
        value = table.c(j - i, 0)
        if value == 0:
            raise DegenerateChainError(j - i, value)
        result *= value ** (2 if i % 2 == 0 else -2)
    return result


def gamma_seq(source: Union[Polynomial, BTable], upto: int, mode: Optional[TableMode] = None) -> GammaSeq:
    """gamma_1 .. gamma_upto by the two-step recursion, each checked against the closed form."""
    table = as_table(source)
    if mode is not None and TableMode(mode) is not table.mode:
        raise UsageError(f"table is in {table.mode.value} mode, not {TableMode(mode).value}")
    if upto < 1:
        raise BadIndexError(f"gamma sequence needs upto >= 1, got {upto}")
    _require_regular(table, upto - 1)
    values = list(table.gamma_start()[:upto])
    for j in range(2, upto):
        values.append(values[j - 2] * table.c(j - 1, 0) ** 2 / table.c(j, 0) ** 2)
    for j, value in enumerate(values, start=1):
        closed = gamma_closed_form(table, j)
        if closed != value:
            raise CrossCheckError(f"gamma_{j}", value, closed)
    return GammaSeq(table.mode, tuple(values))


def _member(table: BTable, i: int, gamma: Fraction) -> Polynomial:
    descending = [table.c(i, p) for p in range(table.n - i + 1)]
    return Polynomial.from_descending(descending).scale(gamma)


def determinantal_member(source: Union[Polynomial, BTable], i: int) -> Polynomial:
    """f_i = gamma_i * sum_p c(i)_p x^(n-i-p)."""
    table = as_table(source)
    if not 1 <= i <= table.n:
        raise BadIndexError(f"member index must lie in [1, {table.n}], got {i}")
    _require_regular(table, i)
    gammas = gamma_seq(table, i)
    return _member(table, i, gammas[i])


def determinantal_chain(source: Union[Polynomial, BTable]) -> List[Polynomial]:
    """Every member by the determinantal route; f itself heads the list in derivative mode."""
    table = as_table(source)
    _require_regular(table, table.n)
    gammas = gamma_seq(table, table.n)
    members = [_member(table, i, gammas[i]) for i in range(1, table.n + 1)]
    if table.mode is TableMode.DERIVATIVE:
        members.insert(0, table.sources[0])
    return members


def leading_coefficient_check(source: Union[Polynomial, BTable], i: int) -> bool:
    """In the regular case lc(f_i) = gamma_i * c(i)."""
    table = as_table(source)
    member = determinantal_member(table, i)
    return member.leading == gamma_seq(table, i)[i] * table.c(i, 0)


def pair_b_table(f1: Polynomial, f2: Polynomial, max_j: int) -> BTable:
    """Pair-mode table with rows 2..max_j filled from the recursion."""
    table = BTable.from_pair(f1, f2)
    for k in range(2, max_j + 1):
        for i in range(2 * k - 2, table.n + k + 1):
            table.value(k, i)
    return table


def pair_determinantal_member(f1: Polynomial, f2: Polynomial, i: int) -> Polynomial:
    table = pair_b_table(f1, f2, i)
    return determinantal_member(table, i)


def q_value(table: BTable, j: int, i: int) -> Fraction:
    c = table.c
    return (
        c(j - 1, i) * c(j, 0) ** 2
        - c(j - 1, 0) * c(j, 0) * c(j, i)
        - c(j - 1, 1) * c(j, i - 1) * c(j, 0)
        + c(j - 1, 0) * c(j, 1) * c(j, i - 1)
    )


def q_quantity(source: Union[Polynomial, BTable], j: int, i: int) -> Fraction:
    table = as_table(source)
    if j < 2 or i < 2:
        raise BadIndexError(f"Q(j)_i needs j >= 2 and i >= 2, got j={j}, i={i}")
    _require_regular(table, j)
    return q_value(table, j, i)


def check_q_identity(source: Union[Polynomial, BTable], j: int, i: int) -> IdentityReport:
    """Q(j)_i + c(j-1)^2 c(j+1)_{i-2} = 0."""
    table = as_table(source)
    if j < 2 or i < 2:
        raise BadIndexError(f"Q(j)_i needs j >= 2 and i >= 2, got j={j}, i={i}")
    residual = q_value(table, j, i) + table.c(j - 1, 0) ** 2 * table.c(j + 1, i - 2)
    return IdentityReport(
        identity="remainder_identity",
        params={"mode": table.mode.value, "n": table.n, "j": j, "i": i},
        residual=residual,
    )


def check_b_recursion(source: Union[Polynomial, BTable], k: int, i: int) -> IdentityReport:
    table = as_table(source)
    if k < 1:
        raise BadIndexError(f"recursion needs k >= 1, got {k}")
    residual = (
        table.value(k, i) - table.value(k - 1, i)
        - table.c1(k - 1) * table.value(1, i - k + 1)
        + table.c1(i - k) * table.value(1, k)
    )
    return IdentityReport(
        identity="b_recursion",
        params={"mode": table.mode.value, "n": table.n, "k": k, "i": i},
        residual=residual,
    )


@dataclass(frozen=True)
class NormalizedTable:
    """Coefficient ratios q_i, r_i and the normalized b values beta(j)_i.

    Undefined entries (a zero denominator) are stored as None.
    """
    n: int
    coefficients: Tuple[Fraction, ...]
    q: Dict[int, Optional[Fraction]] = field(default_factory=dict)
    r: Dict[int, Optional[Fraction]] = field(default_factory=dict)
    beta: Dict[Tuple[int, int], Optional[Fraction]] = field(default_factory=dict)

    def a(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    @staticmethod
    def _lookup(table: dict, key, label: str) -> Fraction:
        value = table.get(key)
        if value is None:
            raise UndefinedEntryError(f"{label}{key} is undefined")
        return value

    def q_value(self, i: int) -> Fraction:
        return self._lookup(self.q, i, "q")

    def r_value(self, i: int) -> Fraction:
        return self._lookup(self.r, i, "r")

    def beta_value(self, j: int, i: int) -> Fraction:
        return self._lookup(self.beta, (j, i), "beta")

    def psi(self, i: int, j: int) -> Fraction:
        """Product of r_p for p in [i, j]; 1 when the range is empty."""
        result = Fraction(1)
        for p in range(i, j + 1):
            result *= self.r_value(p)
        return result

    def phi_direct(self, n: int, j: int, i: int) -> Fraction:
        den = self.a(n - j) * self.a(n - i + j)
        if den == 0:
            raise UndefinedEntryError(f"phi({n}, {j}, {i}) has a zero denominator")
        return self.a(n) * self.a(n - i) / den

    def phi(self, n: int, j: int, i: int) -> Fraction:
        """a_n a_(n-i) / (a_(n-j) a_(n-i+j)), via the r-product when every r is defined."""
        direct = self.phi_direct(n, j, i)
        try:
            product = Fraction(1)
            for q in range(j):
                product *= self.psi(n - i + 2 + q, n - q)
        except UndefinedEntryError:
            return direct
        if product != direct:
            raise CrossCheckError(f"phi({n}, {j}, {i})", product, direct)
        return product

    def beta_expansion(self, j: int, i: int) -> Fraction:
        n = self.n
        if n - i + j == 0:
            raise UndefinedEntryError(f"beta({j})_{i} has a zero denominator")
        total = sum(
            (Fraction(n * (i - 2 * p), n - i + j) * self.phi(n - p, j - p, i - 2 * p) for p in range(j)),
            Fraction(0),
        )
        return total - j


def normalized_table(f: Polynomial, max_j: int, max_i: int) -> NormalizedTable:
    """q_i, r_i and beta(j)_i of f; entries with a zero denominator are left undefined."""
    n = f.degree
    if n < 1:
        raise DegreeTooSmallError(f"need degree >= 1, got {n}")
    table = as_table(f)
    a = f.coeff
    q = {i: (a(i - 1) / a(i) if a(i) else None) for i in range(1, n + 1)}
    r = {i: (a(i) * a(i - 2) / a(i - 1) ** 2 if a(i - 1) else None) for i in range(2, n + 1)}
    beta = {}
    for j in range(1, max_j + 1):
        for i in range(2 * j, max_i + 1):
            den = (n - i + j) * a(n - j) * a(n + j - i)
            beta[(j, i)] = table.value(j, i) / den if den else None
    return NormalizedTable(n, f.coeffs, q, r, beta)


def factored_c_det(f: Polynomial, m: int) -> Fraction:
    """c(m+1) as (prod a_(n-i))^2 times det((n - max(p,q)) beta(min(p,q))_(p+q))."""
    n = f.degree
    if m < 1:
        raise BadIndexError(f"factorization needs m >= 1, got {m}")
    prefactor = Fraction(1)
    for i in range(1, m + 1):
        if f.coeff(n - i) == 0:
            raise UndefinedEntryError(f"a_{n - i} vanishes")
        prefactor *= f.coeff(n - i)
    normalized = normalized_table(f, m, 2 * m)
    matrix = [
        [(n - max(p, q)) * normalized.beta_value(min(p, q), p + q) for q in range(1, m + 1)]
        for p in range(1, m + 1)
    ]
    result = prefactor ** 2 * det_bareiss(matrix)
    direct = c_det(f, m + 1, 0)
    if result != direct:
        raise CrossCheckError(f"factored c({m + 1})", result, direct)
    return result
