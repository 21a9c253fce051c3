"""
Exception hierarchy for sturmdet.

Every error carries the process exit code the CLI reports for it.
"""
from fractions import Fraction
from typing import Any


class SturmDetError(Exception):
    exit_code = 1


# Input and usage problems
class InputError(SturmDetError):
    exit_code = 3


class PolynomialParseError(InputError):
    pass


class UsageError(InputError):
    pass


class DegreeTooSmallError(InputError):
    pass


class BadIntervalError(InputError):
    pass


class EndpointIsRootError(InputError):
    def __init__(self, point: Fraction):
        super().__init__(f"interval endpoint {point} is a root")
        self.point = point


class DegreeMismatchError(InputError):
    pass


class ShapeError(InputError):
    pass


class BadIndexError(InputError):
    pass


class ZeroDivisorError(InputError):
    pass


class DegenerateChainError(SturmDetError):
    """A required c(k) vanishes, so the chain is not regular at k."""

    exit_code = 2

    def __init__(self, k: int, witness: Fraction = Fraction(0)):
        super().__init__(f"degenerate chain: c({k}) = {witness}")
        self.k = k
        self.witness = witness


class MissingGeneratorError(SturmDetError):
    def __init__(self, j: int, i: int):
        super().__init__(f"generator b({j})_{i} has no assigned value")
        self.j = j
        self.i = i


class UndefinedEntryError(SturmDetError):
    pass


class PoleInGammaError(SturmDetError):
    def __init__(self, i: int):
        super().__init__(f"rising factorial of gamma vanishes at order {i}")
        self.i = i


class SingularPairError(SturmDetError):
    def __init__(self, i: int, j: int):
        super().__init__(f"x[{i}] + y[{j}] = 0")
        self.i = i
        self.j = j


class CrossCheckError(SturmDetError):
    """Two independent evaluations of the same quantity disagree."""

    def __init__(self, name: str, left: Any, right: Any):
        super().__init__(f"{name}: {left} != {right}")
        self.name = name
        self.left = left
        self.right = right
