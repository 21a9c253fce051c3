"""
Euler polynomials and the asymptotics of their Sturm determinants.

E_n(x) = ((1 + ix/2n)^2n + (1 - ix/2n)^2n) / 2 truncates cos x. Its
coefficients in x^2 give f_n, whose normalized determinants tend to the
limits computed here in closed form (a Cauchy-type determinant).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from config import RATIO_BAND
from determinants import det_bareiss
from errors import BadIndexError, CrossCheckError, PoleInGammaError, ShapeError, SingularPairError
from exact_core import Polynomial
from jacobi import c_det, normalized_table
from models import ConvergencePoint, ConvergenceReport, FactorizationRow, IdentityReport, rational_text

logger = structlog.get_logger(__name__)


def _require_positive(n: int) -> None:
    if n < 1:
        raise BadIndexError(f"n must be positive, got {n}")


def e_coefficient(n: int, k: int) -> Fraction:
    """Coefficient of x^2k in E_n."""
    _require_positive(n)
    return Fraction((-1) ** k * comb(2 * n, 2 * k), (2 * n) ** (2 * k))


def _e_product(n: int, k: int) -> Fraction:
    value = Fraction((-1) ** k, factorial(2 * k))
    for t in range(1, 2 * k):
        value *= 1 - Fraction(t, 2 * n)
    return value


def euler_poly(n: int) -> Polynomial:
    """E_n as a polynomial in x."""
    _require_positive(n)
    coeffs = [Fraction(0)] * (2 * n + 1)
    for k in range(n + 1):
        coeffs[2 * k] = e_coefficient(n, k)
    return Polynomial(tuple(coeffs))


def f_n_poly(n: int) -> Polynomial:
    """E_n with x^2 replaced by x."""
    _require_positive(n)
    return Polynomial(tuple(e_coefficient(n, k) for k in range(n + 1)))


def rising(x: Fraction, i: int) -> Fraction:
    value = Fraction(1)
    for t in range(i):
        value *= x + t
    return value


@dataclass(frozen=True)
class HypergeomParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction


def hypergeom_coeff(params: HypergeomParams, i: int) -> Fraction:
    """(alpha)_i (beta)_i / (i! (gamma)_i)."""
    if i < 0:
        raise BadIndexError(f"series index must be >= 0, got {i}")
    denominator = rising(params.gamma, i)
    if denominator == 0:
        raise PoleInGammaError(i)
    return rising(params.alpha, i) * rising(params.beta, i) / (factorial(i) * denominator)


def check_euler_hypergeom(n: int) -> IdentityReport:
    """E_n equals 2F1(-n, -n + 1/2; 1/2; -x^2/4n^2), coefficient by coefficient."""
    e = euler_poly(n)
    params = HypergeomParams(Fraction(-n), Fraction(-n) + Fraction(1, 2), Fraction(1, 2))
    z = Fraction(-1, 4 * n * n)
    residual = Fraction(0)
    for k in range(n + 1):
        residual += abs(e.coeff(2 * k) - hypergeom_coeff(params, k) * z ** k)
        residual += abs(e.coeff(2 * k + 1))
    return IdentityReport(identity="euler_hypergeom", params={"n": n}, residual=residual)


def check_gauss_even(n: int) -> IdentityReport:
    """2F1(-n/2, -n/2 + 1/2; 1/2; x^2) is the even part of (1 + x)^n."""
    if n < 0:
        raise BadIndexError(f"n must be >= 0, got {n}")
    power = Polynomial.constant(1)
    for _ in range(n):
        power = power * Polynomial((Fraction(1), Fraction(1)))
    params = HypergeomParams(Fraction(-n, 2), Fraction(-n, 2) + Fraction(1, 2), Fraction(1, 2))
    residual = Fraction(0)
    for i in range(n + 1):
        residual += abs(power.coeff(2 * i) - hypergeom_coeff(params, i))
    return IdentityReport(identity="gauss_even", params={"n": n}, residual=residual)


# Limits as n grows
def r_limit(i: int) -> Fraction:
    """Limit of r_(n-i) of f_n as n grows."""
    return Fraction((2 * i + 1) * (2 * i + 2), (2 * i + 3) * (2 * i + 4))


def r_exact(n: int, i: int) -> Fraction:
    """r_(n-i) of f_n."""
    if not 0 <= i <= n - 2:
        raise BadIndexError(f"r_(n-i) needs 0 <= i <= n-2, got n={n}, i={i}")
    return r_limit(i) * Fraction(
        (2 * n - 2 * i - 2) * (2 * n - 2 * i - 3),
        (2 * n - 2 * i) * (2 * n - 2 * i - 1),
    )


def psi_limit(i: int, q: int) -> Fraction:
    """Limit of psi(n-i+2+q, n-q)."""
    if not 0 <= q < i:
        raise BadIndexError(f"psi limit needs 0 <= q < i, got i={i}, q={q}")
    return Fraction((2 * q + 1) * (2 * q + 2), (2 * i - 2 * q) * (2 * i - 2 * q - 1))


def b_limit(j: int, i: int) -> Fraction:
    if j < 1 or i < j:
        raise BadIndexError(f"B limit needs 1 <= j <= i, got j={j}, i={i}")
    closed = Fraction((2 * j - 1) * j, 2 * i - 1)
    value = Fraction(0)
    for step in range(1, j + 1):
        value = psi_limit(i, step - 1) * (value + i - 2 * (step - 1))
    if value != closed:
        raise CrossCheckError(f"B({j})_{i} limit", value, closed)
    return closed


def beta_limit(j: int, i: int) -> Fraction:
    """-2j(i-j)/(2i-1)."""
    if j < 1 or i < j:
        raise BadIndexError(f"beta limit needs 1 <= j <= i, got j={j}, i={i}")
    return Fraction(-2 * j * (i - j), 2 * i - 1)


def c_inf_matrix(m: int) -> List[List[Fraction]]:
    return [[beta_limit(min(p, q), p + q) for q in range(1, m + 1)] for p in range(1, m + 1)]


def c_inf_det(m: int) -> Fraction:
    """Limit of c(m+1)(f_n) / (n^m prod a_(n-i)^2)."""
    if m < 1:
        raise BadIndexError(f"m must be >= 1, got {m}")
    value = det_bareiss(c_inf_matrix(m))
    factored = _factor(m) * hilbert_variant_det(m)
    if value != factored:
        raise CrossCheckError(f"c({m + 1}) limit", value, factored)
    return value


def _factor(m: int) -> Fraction:
    return Fraction((-1) ** m * 2 ** m * factorial(m) ** 2)


# Cauchy determinants
@dataclass(frozen=True)
class CauchySpec:
    x: Tuple[Fraction, ...]
    y: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ShapeError(f"x and y differ in length: {len(self.x)} vs {len(self.y)}")
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "y", tuple(Fraction(v) for v in self.y))

    @property
    def size(self) -> int:
        return len(self.x)

    def check_regular(self) -> None:
        for i, xi in enumerate(self.x):
            for j, yj in enumerate(self.y):
                if xi + yj == 0:
                    raise SingularPairError(i, j)


def cauchy_matrix(spec: CauchySpec) -> List[List[Fraction]]:
    spec.check_regular()
    return [[1 / (xi + yj) for yj in spec.y] for xi in spec.x]


def cauchy_closed_form(spec: CauchySpec) -> Fraction:
    spec.check_regular()
    numerator = Fraction(1)
    for i in range(spec.size):
        for j in range(i + 1, spec.size):
            numerator *= (spec.x[j] - spec.x[i]) * (spec.y[j] - spec.y[i])
    denominator = Fraction(1)
    for xi in spec.x:
        for yj in spec.y:
            denominator *= xi + yj
    return numerator / denominator


def check_cauchy(spec: CauchySpec) -> IdentityReport:
    """Closed-form Cauchy determinant against elimination."""
    residual = cauchy_closed_form(spec) - det_bareiss(cauchy_matrix(spec))
    return IdentityReport(
        identity="cauchy",
        params={"x": [rational_text(v) for v in spec.x], "y": [rational_text(v) for v in spec.y]},
        residual=residual,
    )


def hilbert_variant_spec(m: int) -> CauchySpec:
    return CauchySpec(tuple(Fraction(2 * i) for i in range(1, m + 1)),
                      tuple(Fraction(2 * j - 1) for j in range(1, m + 1)))


def hilbert_variant_det(m: int) -> Fraction:
    """det(1/(2p+2q-1)) of size m, by the Cauchy product."""
    if m < 1:
        raise BadIndexError(f"m must be >= 1, got {m}")
    spec = hilbert_variant_spec(m)
    closed = cauchy_closed_form(spec)
    direct = det_bareiss(cauchy_matrix(spec))
    if closed != direct:
        raise CrossCheckError(f"hilbert variant of size {m}", closed, direct)
    return closed


def factorization_table(max_m: int) -> List[FactorizationRow]:
    rows = []
    for m in range(1, max_m + 1):
        value = det_bareiss(c_inf_matrix(m))
        hilbert = hilbert_variant_det(m)
        factor = _factor(m)
        rows.append(FactorizationRow(
            m=m,
            c_inf=rational_text(value),
            hilbert_variant=rational_text(hilbert),
            factor=rational_text(factor),
            equal=value == factor * hilbert,
        ))
    return rows


# Convergence reports
def _convergence(name: str, params: Dict, limit: Fraction, values: Dict[int, Fraction]) -> ConvergenceReport:
    """Deviations from limit; successive doublings must shrink by a ratio inside RATIO_BAND."""
    low, high = RATIO_BAND
    ns = sorted(values)
    deviations = {n: values[n] - limit for n in ns}
    ratios: List[Optional[str]] = []
    passed = True
    for previous, current in zip(ns, ns[1:]):
        before, after = abs(deviations[previous]), abs(deviations[current])
        if before == 0:
            ratios.append(None)
            passed = passed and after == 0
            continue
        ratio = after / before
        ratios.append(rational_text(ratio))
        if current == 2 * previous:
            passed = passed and low <= ratio <= high
        else:
            passed = passed and ratio < 1
    points = [
        ConvergencePoint(n=n, value=rational_text(values[n]), deviation=rational_text(deviations[n]))
        for n in ns
    ]
    report = ConvergenceReport(
        name=name, params=params, limit=rational_text(limit), points=points, ratios=ratios, passed=passed
    )
    logger.debug("convergence checked", name=name, passed=passed, ratios=ratios)
    return report


def cos_limit_check(k: int, n_list: Iterable[int]) -> ConvergenceReport:
    """e_nk against (-1)^k/(2k)!; the product form must agree at every n."""
    if k < 0:
        raise BadIndexError(f"k must be >= 0, got {k}")
    limit = Fraction((-1) ** k, factorial(2 * k))
    values = {}
    for n in n_list:
        value = e_coefficient(n, k)
        product = _e_product(n, k)
        if value != product:
            raise CrossCheckError(f"e({n}, {k})", value, product)
        values[n] = value
    ns = sorted(values)
    gaps = [abs(values[n] - limit) for n in ns]
    report = _convergence("cos_limit", {"k": k}, limit, values)
    shrinking = all(g == 0 for g in gaps) or all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    return report.model_copy(update={"passed": shrinking})


def asymptotic_check(m: int, n_list: Sequence[int]) -> ConvergenceReport:
    """c(m+1)(f_n) / (n^m prod_(i<=m) a_(n-i)^2) against its limit."""
    if m < 1:
        raise BadIndexError(f"m must be >= 1, got {m}")
    values = {}
    for n in n_list:
        if n < m + 1:
            raise BadIndexError(f"n = {n} is too small for m = {m}")
        f = f_n_poly(n)
        prefactor = Fraction(1)
        for i in range(1, m + 1):
            prefactor *= f.coeff(n - i)
        values[n] = c_det(f, m + 1, 0) / (prefactor ** 2 * n ** m)
    return _convergence("asymptotic", {"m": m}, c_inf_det(m), values)


def beta_convergence(j: int, i: int, n_list: Sequence[int]) -> ConvergenceReport:
    """beta(j)_i of f_n for each n against -2j(i-j)/(2i-1)."""
    values = {}
    for n in n_list:
        values[n] = normalized_table(f_n_poly(n), j, i).beta_value(j, i)
    return _convergence("beta", {"j": j, "i": i}, beta_limit(j, i), values)
