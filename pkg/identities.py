"""
Quadratic identities among the b(j)_i and the determinants built from them.

Checks return an IdentityReport whose residual is exactly zero when the
identity holds. Generators come from a polynomial, from a pair of chain
members, or from an explicit table of values.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from determinants import det_bareiss, laplace_last_column, minor
from errors import BadIndexError, CrossCheckError, MissingGeneratorError, ShapeError
from exact_core import Polynomial
from jacobi import BTable, as_table, q_value, shifted_entries
from models import AssignmentOrigin, IdentityReport, TableMode, rational_text

logger = structlog.get_logger(__name__)

Source = Union[Polynomial, BTable]


@dataclass(frozen=True)
class GeneratorAssignment:
    """Values for the symbols b(j)_i."""
    origin: AssignmentOrigin
    table: Optional[BTable] = None
    values: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)
    default: Optional[Fraction] = None

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "GeneratorAssignment":
        return cls(AssignmentOrigin.POLYNOMIAL, table=as_table(f))

    @classmethod
    def from_pair(cls, f1: Polynomial, f2: Polynomial) -> "GeneratorAssignment":
        return cls(AssignmentOrigin.PAIR, table=BTable.from_pair(f1, f2))

    @classmethod
    def from_table(cls, table: BTable) -> "GeneratorAssignment":
        origin = AssignmentOrigin.POLYNOMIAL if table.mode is TableMode.DERIVATIVE else AssignmentOrigin.PAIR
        return cls(origin, table=table)

    @classmethod
    def explicit(cls, values: Mapping[Tuple[int, int], Union[int, Fraction]],
                 default: Optional[Union[int, Fraction]] = None) -> "GeneratorAssignment":
        return cls(
            AssignmentOrigin.EXPLICIT,
            values={key: Fraction(v) for key, v in values.items()},
            default=None if default is None else Fraction(default),
        )

    def b(self, j: int, i: int) -> Fraction:
        if self.table is not None:
            return self.table.value(j, i)
        value = self.values.get((j, i), self.default)
        if value is None:
            raise MissingGeneratorError(j, i)
        return value

    def describe(self) -> str:
        return self.origin.value


def _det2(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> Fraction:
    return det_bareiss([[a, b], [c, d]])


def check_relation_quadratic(g: GeneratorAssignment, k: int, j: int, i: int) -> IdentityReport:
    """The three-term 2x2 determinant relation; holds for all k, j >= 1 and every i."""
    b = g.b
    delta = _det2(b(1, j), b(1, k), b(j - 1, i + j - k), b(k - 1, i))
    delta_k = _det2(b(1, j), b(j - 1, j + k - 1), b(1, i - k + 1), b(k, i))
    delta_j = _det2(b(1, k), b(j, j + k - 1), b(1, i - k + 1), b(j, i + j - k))
    residual = delta - delta_k + delta_j
    logger.debug("quadratic relation", origin=g.origin.value, k=k, j=j, i=i, residual=str(residual))
    return IdentityReport(
        identity="quadratic_relation",
        params={"origin": g.origin.value, "k": k, "j": j, "i": i},
        residual=residual,
    )


def build_w_vectors(m: Sequence[int], i: int, g: GeneratorAssignment) -> List[Tuple[Fraction, ...]]:
    """w_1 .. w_(n+1) for the index tuple m."""
    n = len(m)
    vectors = [tuple(g.b(1, mp) for mp in m)]
    for j in range(2, n + 2):
        s = n + 2 - j
        head = tuple(g.b(1, m[p]) for p in range(n) if p != s - 1)
        vectors.append(head + (g.b(1, i - m[-1] + 1),))
    return vectors


def build_v_vectors(m: Sequence[int], i: int, g: GeneratorAssignment) -> List[Tuple[Fraction, ...]]:
    """v_1 .. v_(n+1) for the index tuple m."""
    n = len(m)
    vectors = [tuple(g.b(mp - 1, i + mp - m[-1]) for mp in m)]
    for j in range(2, n + 2):
        s = n + 2 - j
        ms = m[s - 1]
        before = tuple(g.b(m[p] - 1, m[p] + ms - 1) for p in range(s - 1))
        after = tuple(g.b(ms, ms + m[p] - 1) for p in range(s, n))
        vectors.append(before + after + (g.b(ms, i + ms - m[-1]),))
    return vectors


def _delta_terms(n: int, m: Sequence[int], block: Sequence[Sequence[Fraction]], i: int,
                 g: GeneratorAssignment) -> List[Fraction]:
    """det D_1 ... det D_(n+1) of the alternating sum."""
    ws = build_w_vectors(m, i, g)
    vs = build_v_vectors(m, i, g)
    rows = [[Fraction(x) for x in row] for row in block]

    def without(column: int) -> List[List[Fraction]]:
        return minor(rows, (), (column - 1,))

    terms = [det_bareiss([list(ws[0])] + without(n + 1) + [list(vs[0])])]
    for j in range(2, n + 2):
        # D_j is laid out by columns; the determinant is transpose invariant
        columns = [list(ws[j - 1])] + without(n + 2 - j) + [list(vs[j - 1])]
        terms.append(det_bareiss(columns))
    return terms


def _check_block(n: int, m: Sequence[int], block: Optional[Sequence[Sequence[Fraction]]]):
    if n < 2:
        raise BadIndexError(f"alternating sum needs n >= 2, got {n}")
    if len(m) != n:
        raise ShapeError(f"index tuple has {len(m)} entries, expected {n}")
    block = list(block or [])
    if len(block) != n - 2 or any(len(row) != n + 1 for row in block):
        raise ShapeError(f"matrix block must be {n - 2} x {n + 1}")
    return block


def r_alternating_sum(n: int, m: Sequence[int], block: Optional[Sequence[Sequence[Fraction]]], i: int,
                      g: GeneratorAssignment) -> IdentityReport:
    """sum_j (-1)^(j+1) det D_j, which vanishes for every generator assignment."""
    block = _check_block(n, m, block)
    terms = _delta_terms(n, m, block, i, g)
    residual = sum((t if j % 2 == 0 else -t for j, t in enumerate(terms)), Fraction(0))
    return IdentityReport(
        identity="alternating_sum",
        params={
            "origin": g.origin.value,
            "n": n,
            "m": list(m),
            "i": i,
            "block": [[rational_text(x) for x in row] for row in block],
        },
        residual=residual,
    )


def _primed_block(table: BTable, size: int, i: int) -> List[List[Fraction]]:
    return [
        [table.value(min(p, q), p + q) for q in range(1, size + 1)] + [table.value(p, i + size + p - 1)]
        for p in range(2, size)
    ]


def _primed_terms(table: BTable, n: int, i: int) -> List[Fraction]:
    size = n - 1
    mu = tuple(range(2, n + 1))
    return _delta_terms(size, mu, _primed_block(table, size, i), i + 2 * size,
                        GeneratorAssignment.from_table(table))


def _c_second_minor(table: BTable, n: int, i: int) -> Fraction:
    """C(n+1)_(i-2) without row n-2 and column n."""
    entries = shifted_entries(table, n + 1, i - 2)
    return det_bareiss(minor(entries, (n - 3,), (n - 1,)))


def c_prime_bordered(source: Source, n: int, i: int) -> Fraction:
    """C(n)_(i-1) with its last column replaced, expanded along that column."""
    table = as_table(source)
    if n < 3:
        raise BadIndexError(f"primed determinants need n >= 3, got {n}")
    size = n - 1
    matrix = []
    for p in range(1, size):
        matrix.append([table.value(min(p, q), p + q) for q in range(1, size)] + [table.value(p, p + n)])
    matrix.append([table.value(q, n + i + q - 2) for q in range(1, size)] + [table.value(n, 2 * n + i - 2)])
    return laplace_last_column(matrix)


def c_primed(source: Source, n: int, i: int) -> Tuple[Fraction, Fraction]:
    """(c(n)'_i, c(n)''_i), each cross-checked against a second construction."""
    table = as_table(source)
    if n < 3:
        raise BadIndexError(f"primed determinants need n >= 3, got {n}")
    terms = _primed_terms(table, n, i)
    first, second = terms[1], terms[2]
    bordered = c_prime_bordered(table, n, i)
    if first != bordered:
        raise CrossCheckError(f"c({n})'_{i}", first, bordered)
    by_minor = _c_second_minor(table, n, i)
    if second != by_minor:
        raise CrossCheckError(f"c({n})''_{i}", second, by_minor)
    return first, second


def primed_tail_terms(source: Source, n: int, i: int) -> List[Fraction]:
    """The determinants past the third one; each has a repeated column."""
    if n < 3:
        raise BadIndexError(f"primed determinants need n >= 3, got {n}")
    return _primed_terms(as_table(source), n, i)[3:]


def check_primed_sum(source: Source, n: int, i: int) -> IdentityReport:
    """c(n)_i - c(n)'_i + c(n)''_i = 0."""
    table = as_table(source)
    first, second = c_primed(table, n, i)
    residual = table.c(n, i) - first + second
    return IdentityReport(
        identity="primed_sum",
        params={"mode": table.mode.value, "n": n, "i": i},
        residual=residual,
    )


def _rows_minor(matrix: Sequence[Sequence[Fraction]], drop: Sequence[int], width: int) -> Fraction:
    """Determinant after deleting the given 1-based rows and keeping the first width columns."""
    kept = [list(row[:width]) for index, row in enumerate(matrix, start=1) if index not in drop]
    return det_bareiss(kept)


def plucker_full(W: Sequence[Sequence[Union[int, Fraction]]]) -> IdentityReport:
    """Three-term relation between maximal minors of an n x (n-1) matrix."""
    n = len(W)
    if n < 3 or any(len(row) != n - 1 for row in W):
        raise ShapeError("plucker_full needs an n x (n-1) matrix with n >= 3")
    width = n - 2

    def w(k: int) -> Fraction:
        return _rows_minor(W, (k,), n - 1)

    def v(a: int, b: int) -> Fraction:
        return _rows_minor(W, (a, b), width)

    residual = v(n - 2, n - 1) * w(n) - v(n - 2, n) * w(n - 1) + v(n - 1, n) * w(n - 2)
    return IdentityReport(identity="plucker_full", params={"n": n}, residual=residual)


def plucker_reduced(V: Sequence[Sequence[Union[int, Fraction]]], i: int) -> IdentityReport:
    """Three-term relation between (n-2)-minors of an n x (n-2) matrix, row i held fixed."""
    n = len(V)
    if n < 4 or any(len(row) != n - 2 for row in V):
        raise ShapeError("plucker_reduced needs an n x (n-2) matrix with n >= 4")
    if not 1 <= i <= n - 3:
        raise BadIndexError(f"row index must lie in [1, {n - 3}], got {i}")

    def v(a: int, b: int) -> Fraction:
        return _rows_minor(V, (a, b), n - 2)

    residual = v(n - 2, n - 1) * v(i, n) - v(n - 2, n) * v(i, n - 1) + v(n - 1, n) * v(i, n - 2)
    return IdentityReport(identity="plucker_reduced", params={"n": n, "i": i}, residual=residual)


def _formula_table(source: Source, n: int) -> BTable:
    if n < 3:
        raise BadIndexError(f"formula checks need n >= 3, got {n}")
    return as_table(source)


def check_minor_identity(source: Source, n: int, i: int) -> IdentityReport:
    """c(n-1)_i c(n) - c(n-1)_1 c(n)_(i-1) + c(n-1) c(n)''_i = 0."""
    table = _formula_table(source, n)
    c = table.c
    _, second = c_primed(table, n, i)
    residual = c(n - 1, i) * c(n, 0) - c(n - 1, 1) * c(n, i - 1) + c(n - 1, 0) * second
    return IdentityReport(identity="minor_identity", params={"n": n, "i": i}, residual=residual)


def check_bordered_identity(source: Source, n: int, i: int) -> IdentityReport:
    """(c(n)_i + c(n)''_i) c(n) - c(n)_1 c(n)_(i-1) - c(n-1) c(n+1)_(i-2) = 0."""
    table = _formula_table(source, n)
    c = table.c
    _, second = c_primed(table, n, i)
    residual = (c(n, i) + second) * c(n, 0) - c(n, 1) * c(n, i - 1) - c(n - 1, 0) * c(n + 1, i - 2)
    return IdentityReport(identity="bordered_identity", params={"n": n, "i": i}, residual=residual)


def check_recurrence_identity(source: Source, n: int, i: int) -> IdentityReport:
    table = _formula_table(source, n)
    residual = q_value(table, n, i) + table.c(n - 1, 0) ** 2 * table.c(n + 1, i - 2)
    return IdentityReport(identity="recurrence_identity", params={"n": n, "i": i}, residual=residual)


def violating_assignment() -> Tuple[GeneratorAssignment, Dict[str, int]]:
    """An explicit table on which the quadratic relation fails (residual -1)."""
    g = GeneratorAssignment.explicit({(3, 6): 1, (1, 2): 1}, default=0)
    return g, {"k": 3, "j": 2, "i": 6}
