"""
Exact polynomials over the rationals and the Euclidean Sturm chain.

Polynomials store ascending coefficients as Fractions; files and the CLI
use descending order ("a_n, ..., a_0").
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import count
from math import gcd as int_gcd
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import structlog
from pydantic import ValidationError

from errors import (
    BadIntervalError,
    DegreeTooSmallError,
    EndpointIsRootError,
    PolynomialParseError,
    ZeroDivisorError,
)
from models import PolynomialDocument, Termination

logger = structlog.get_logger(__name__)

Number = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse an integer or "p/q" string without going through floats."""
    token = str(text).strip()
    if not token:
        raise PolynomialParseError("empty coefficient")
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise PolynomialParseError(f"bad coefficient {token!r}") from e


@dataclass(frozen=True)
class Polynomial:
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = [Fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    # Construction
    @classmethod
    def from_descending(cls, coeffs: Iterable[Number]) -> "Polynomial":
        return cls(tuple(reversed([Fraction(c) for c in coeffs])))

    @classmethod
    def constant(cls, value: Number) -> "Polynomial":
        return cls((Fraction(value),))

    @classmethod
    def from_roots(cls, roots: Iterable[Number], leading: Number = 1) -> "Polynomial":
        factors = [cls((-Fraction(r), Fraction(1))) for r in roots]
        return reduce(lambda acc, p: acc * p, factors, cls.constant(leading))

    @classmethod
    def from_json(cls, payload: Union[str, dict]) -> "Polynomial":
        try:
            if isinstance(payload, str):
                document = PolynomialDocument.model_validate_json(payload)
            else:
                document = PolynomialDocument.model_validate(payload)
        except ValidationError as e:
            raise PolynomialParseError(f"invalid polynomial document: {e.error_count()} error(s)") from e
        return parse_descending(document.coeffs)

    # Shape
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    # Arithmetic
    @staticmethod
    def _lift(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def scale(self, factor: Number) -> "Polynomial":
        factor = Fraction(factor)
        return Polynomial(tuple(factor * c for c in self.coeffs))

    def __divmod__(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if divisor.is_zero:
            raise ZeroDivisorError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = divisor.degree
        lead = divisor.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            factor = rem[k + dq] / lead
            quot[k] = factor
            if factor:
                for t, c in enumerate(divisor.coeffs):
                    rem[k + t] -= factor * c
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dq]))

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[1]

    def __call__(self, x: Number) -> Fraction:
        return reduce(lambda acc, c: acc * x + c, reversed(self.coeffs), Fraction(0))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        quotient, remainder = divmod(self, divisor)
        if not remainder.is_zero:
            raise ZeroDivisorError(f"{divisor} does not divide {self}")
        return quotient

    def squarefree_part(self) -> "Polynomial":
        if self.degree < 1:
            return self
        return self.exact_div(self.gcd(self.derivative()))

    def compose_square(self) -> "Polynomial":
        """p(x^2)"""
        spread = []
        for c in self.coeffs:
            spread.extend((c, Fraction(0)))
        return Polynomial(tuple(spread))

    # Output
    def to_descending_strings(self) -> List[str]:
        if self.is_zero:
            return ["0"]
        return [str(c) for c in reversed(self.coeffs)]

    def to_json(self) -> str:
        return PolynomialDocument(coeffs=self.to_descending_strings()).model_dump_json()

    def bit_size(self) -> int:
        return max(
            (max(c.numerator.bit_length(), c.denominator.bit_length()) for c in self.coeffs),
            default=0,
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            size = abs(c)
            if k == 0:
                body = str(size)
            else:
                if size == 1:
                    scalar = ""
                elif size.denominator == 1:
                    scalar = str(size)
                else:
                    scalar = f"({size})"
                body = scalar + ("x" if k == 1 else f"x^{k}")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def parse_descending(tokens: Sequence[str]) -> Polynomial:
    """Build a polynomial from descending coefficient strings; the first must be nonzero."""
    if not tokens:
        raise PolynomialParseError("no coefficients given")
    values = [parse_rational(t) for t in tokens]
    if values[0] == 0:
        raise PolynomialParseError("leading coefficient must be nonzero")
    return Polynomial.from_descending(values)


def parse_coeff_list(text: str) -> Polynomial:
    """Parse "1,0,-3,1" (descending order)."""
    return parse_descending([t for t in text.split(",")])


def load_polynomial(path: Union[str, Path]) -> Polynomial:
    try:
        payload = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise PolynomialParseError(f"cannot read {path}: {e}") from e
    return Polynomial.from_json(payload)


@dataclass(frozen=True)
class SturmChain:
    """Members f_0, f_1, ... with the quotients q_j of f_{j-1} = q_j f_j - f_{j+1}."""
    members: Tuple[Polynomial, ...]
    quotients: Tuple[Polynomial, ...]
    termination: Termination

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.members)

    @property
    def is_regular(self) -> bool:
        top = self.members[0].degree
        return self.degrees == tuple(range(top, -1, -1))

    def values_at(self, x: Number) -> List[Fraction]:
        return [p(x) for p in self.members]


def euclid_step(f_prev: Polynomial, f_cur: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Return (q, f_next) with f_prev = q*f_cur - f_next."""
    if f_cur.is_zero:
        raise ZeroDivisorError("Euclid step with a zero divisor")
    quotient, remainder = divmod(f_prev, f_cur)
    return quotient, -remainder


def remainder_chain(first: Polynomial, second: Polynomial) -> SturmChain:
    """Signed-remainder sequence started from an arbitrary pair."""
    members = [first, second]
    quotients = []
    while True:
        quotient, following = euclid_step(members[-2], members[-1])
        quotients.append(quotient)
        if following.is_zero:
            break
        members.append(following)
    termination = Termination.CONSTANT_REACHED if members[-1].degree == 0 else Termination.ZERO_REMAINDER
    logger.debug("remainder chain built", degrees=[p.degree for p in members], termination=termination.value)
    return SturmChain(tuple(members), tuple(quotients), termination)


def sturm_chain_euclid(f: Polynomial) -> SturmChain:
    """f, f', then negated remainders until one vanishes."""
    if f.degree < 1:
        raise DegreeTooSmallError(f"Sturm chain needs degree >= 1, got {f.degree}")
    return remainder_chain(f, f.derivative())


def sign_variations(chain: SturmChain, x: Number) -> int:
    """Sign changes along the chain at x, zeros skipped."""
    signs = [v > 0 for v in chain.values_at(x) if v != 0]
    return sum(1 for left, right in zip(signs, signs[1:]) if left != right)


def count_real_roots(chain: SturmChain, a: Number, b: Number) -> int:
    """Distinct real roots of chain.members[0] in (a, b]."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise BadIntervalError(f"empty interval ({a}, {b}]")
    f = chain.members[0]
    for endpoint in (a, b):
        if f(endpoint) == 0:
            raise EndpointIsRootError(endpoint)
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_bound(f: Polynomial) -> Fraction:
    """Every real root lies strictly inside (-B, B)."""
    if f.degree < 1:
        raise DegreeTooSmallError("root bound needs degree >= 1")
    lead = f.leading
    return 1 + max((abs(c / lead) for c in f.coeffs[:-1]), default=Fraction(0))


def _split_point(f: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    # 1/2, 1/3, 2/3, 1/4, 3/4, ... of the way; f has finitely many roots
    for den in count(2):
        for num in range(1, den):
            if int_gcd(num, den) != 1:
                continue
            point = lo + (hi - lo) * Fraction(num, den)
            if f(point) != 0:
                return point


def isolate_roots(f: Polynomial, a: Number, b: Number) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one distinct root of f."""
    chain = sturm_chain_euclid(f)
    a, b = Fraction(a), Fraction(b)
    total = count_real_roots(chain, a, b)
    found = []
    pending = [(a, b, sign_variations(chain, a), sign_variations(chain, b), total)]
    while pending:
        lo, hi, v_lo, v_hi, roots = pending.pop()
        if roots == 0:
            continue
        if roots == 1:
            found.append((lo, hi))
            continue
        mid = _split_point(f, lo, hi)
        v_mid = sign_variations(chain, mid)
        pending.append((mid, hi, v_mid, v_hi, v_mid - v_hi))
        pending.append((lo, mid, v_lo, v_mid, v_lo - v_mid))
    found.sort()
    logger.debug("roots isolated", degree=f.degree, count=len(found))
    return found
