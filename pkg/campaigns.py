"""
Seeded random campaigns over the identity checks.

Every trial draws its own seed from (master seed, identity, trial index),
so a campaign gives the same reports whatever the worker count.
"""
import hashlib
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import structlog

from config import COEFF_BOUND, MATRIX_ENTRY_BOUND, configure_logging
from errors import SturmDetError
from euler import CauchySpec, check_cauchy
from exact_core import Polynomial, remainder_chain, sturm_chain_euclid
from identities import (
    GeneratorAssignment,
    check_bordered_identity,
    check_minor_identity,
    check_primed_sum,
    check_recurrence_identity,
    check_relation_quadratic,
    plucker_full,
    plucker_reduced,
    r_alternating_sum,
    violating_assignment,
)
from jacobi import BTable, check_b_recursion, check_q_identity, determinantal_chain
from models import CampaignSummary, IdentityReport, IdentityTally

logger = structlog.get_logger(__name__)

DegreeRange = Tuple[int, int]


def trial_seed(master_seed: int, identity: str, trial: int) -> int:
    digest = hashlib.sha256(f"{master_seed}:{identity}:{trial}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


# Random instances
def random_rational(rng: random.Random, bound: int = MATRIX_ENTRY_BOUND) -> Fraction:
    if rng.random() < 0.25:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    return Fraction(rng.randint(-bound, bound))


def random_polynomial(rng: random.Random, degree: int, bound: int = COEFF_BOUND) -> Polynomial:
    lead = 0
    while lead == 0:
        lead = rng.randint(-bound, bound)
    return Polynomial.from_descending([lead] + [rng.randint(-bound, bound) for _ in range(degree)])


def random_regular_polynomial(rng: random.Random, degrees: DegreeRange) -> Polynomial:
    while True:
        f = random_polynomial(rng, rng.randint(*degrees))
        if sturm_chain_euclid(f).is_regular:
            return f


def random_regular_pair(rng: random.Random, degrees: DegreeRange) -> Tuple[Polynomial, Polynomial]:
    """(f1, f2) with deg f1 = deg f2 + 1 whose remainder chain drops one degree per step."""
    low, high = degrees
    while True:
        n = rng.randint(max(low, 3), max(high, 3))
        f1 = random_polynomial(rng, n - 1)
        f2 = random_polynomial(rng, n - 2)
        chain = remainder_chain(f1, f2)
        if chain.degrees == tuple(range(n - 1, -1, -1)):
            return f1, f2


def random_matrix(rng: random.Random, rows: int, cols: int) -> List[List[Fraction]]:
    return [[random_rational(rng) for _ in range(cols)] for _ in range(rows)]


def random_cauchy_spec(rng: random.Random, max_m: int) -> CauchySpec:
    m = rng.randint(1, max_m)
    while True:
        x = tuple(random_rational(rng, 9) for _ in range(m))
        y = tuple(random_rational(rng, 9) for _ in range(m))
        if all(xi + yj != 0 for xi in x for yj in y):
            return CauchySpec(x, y)


def _assignment(rng: random.Random, degrees: DegreeRange) -> GeneratorAssignment:
    if rng.random() < 0.5:
        return GeneratorAssignment.from_polynomial(random_polynomial(rng, rng.randint(*degrees)))
    return GeneratorAssignment.from_pair(*random_regular_pair(rng, degrees))


# One function per identity: (rng, trial, degree range) -> report
def _quadratic_relation(rng, trial, degrees):
    g = _assignment(rng, degrees)
    return check_relation_quadratic(g, rng.randint(1, 5), rng.randint(1, 5), rng.randint(0, 16))


def _alternating_sum(rng, trial, degrees):
    n = 2 + trial % 3
    g = _assignment(rng, degrees)
    m = [rng.randint(1, 6) for _ in range(n)]
    return r_alternating_sum(n, m, random_matrix(rng, n - 2, n + 1), rng.randint(0, 14), g)


def _primed_sum(rng, trial, degrees):
    return check_primed_sum(random_polynomial(rng, 8), 3 + trial % 3, rng.randint(0, 4))


def _minor_identity(rng, trial, degrees):
    return check_minor_identity(random_polynomial(rng, 7), 3 + trial % 2, rng.randint(2, 4))


def _bordered_identity(rng, trial, degrees):
    return check_bordered_identity(random_polynomial(rng, 7), 3 + trial % 2, rng.randint(2, 4))


def _recurrence_identity(rng, trial, degrees):
    return check_recurrence_identity(random_polynomial(rng, 7), 3 + trial % 2, rng.randint(2, 4))


def _plucker_full(rng, trial, degrees):
    n = rng.randint(3, 6)
    return plucker_full(random_matrix(rng, n, n - 1))


def _plucker_reduced(rng, trial, degrees):
    n = rng.randint(4, 6)
    return plucker_reduced(random_matrix(rng, n, n - 2), rng.randint(1, n - 3))


def _remainder_identity(rng, trial, degrees):
    f = random_regular_polynomial(rng, (max(degrees[0], 3), max(degrees[1], 3)))
    n = f.degree
    j = rng.randint(2, n - 1)
    return check_q_identity(f, j, rng.randint(2, n - j + 1))


def _b_recursion(rng, trial, degrees):
    g = _assignment(rng, degrees)
    k = rng.randint(2, 5)
    return check_b_recursion(g.table, k, rng.randint(2 * k - 2, 2 * k + 6))


def _member_residual(expected: Sequence[Polynomial], computed: Sequence[Polynomial]) -> Fraction:
    residual = Fraction(abs(len(expected) - len(computed)))
    for left, right in zip(expected, computed):
        residual += sum((abs(c) for c in (left - right).coeffs), Fraction(0))
    return residual


def _determinantal_members(rng, trial, degrees):
    f = random_regular_polynomial(rng, degrees)
    expected = sturm_chain_euclid(f).members
    residual = _member_residual(expected, determinantal_chain(BTable.from_polynomial(f)))
    return IdentityReport(
        identity="determinantal_members",
        params={"coeffs": f.to_descending_strings()},
        residual=residual,
    )


def _pair_members(rng, trial, degrees):
    f1, f2 = random_regular_pair(rng, degrees)
    expected = remainder_chain(f1, f2).members
    residual = _member_residual(expected, determinantal_chain(BTable.from_pair(f1, f2)))
    return IdentityReport(
        identity="pair_members",
        params={"f1": f1.to_descending_strings(), "f2": f2.to_descending_strings()},
        residual=residual,
    )


CASES: Dict[str, Callable[[random.Random, int, DegreeRange], IdentityReport]] = {
    "quadratic_relation": _quadratic_relation,
    "alternating_sum": _alternating_sum,
    "primed_sum": _primed_sum,
    "minor_identity": _minor_identity,
    "bordered_identity": _bordered_identity,
    "recurrence_identity": _recurrence_identity,
    "plucker_full": _plucker_full,
    "plucker_reduced": _plucker_reduced,
    "remainder_identity": _remainder_identity,
    "b_recursion": _b_recursion,
    "determinantal_members": _determinantal_members,
    "pair_members": _pair_members,
}


def run_trial(identity: str, master_seed: int, trial: int, degrees: DegreeRange) -> IdentityReport:
    seed = trial_seed(master_seed, identity, trial)
    rng = random.Random(seed)
    try:
        report = CASES[identity](rng, trial, degrees)
    except SturmDetError as e:
        logger.error("trial raised", identity=identity, trial=trial, seed=seed, error=str(e))
        raise
    return report.model_copy(update={"seed": seed})


def _run_job(job: Tuple[str, int, int, DegreeRange]) -> IdentityReport:
    return run_trial(*job)


def run_campaign(identities: Iterable[str], trials: int, master_seed: int,
                 degrees: DegreeRange, workers: int = 1) -> List[IdentityReport]:
    """All trials of every identity, in (identity, trial) order."""
    names = list(identities)
    jobs = [(name, master_seed, trial, degrees) for name in names for trial in range(trials)]
    logger.info("campaign started", identities=len(names), trials=trials, workers=workers)
    if workers > 1:
        level = logging.getLevelName(logging.getLogger().getEffectiveLevel())
        with ProcessPoolExecutor(max_workers=workers, initializer=configure_logging, initargs=(level,)) as pool:
            reports = list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        reports = [_run_job(job) for job in jobs]
    failures = sum(1 for r in reports if not r.passed)
    logger.info("campaign finished", reports=len(reports), failures=failures)
    return reports


def cauchy_campaign(trials: int, master_seed: int, max_m: int) -> List[IdentityReport]:
    reports = []
    for trial in range(trials):
        seed = trial_seed(master_seed, "cauchy", trial)
        spec = random_cauchy_spec(random.Random(seed), max_m)
        reports.append(check_cauchy(spec).model_copy(update={"seed": seed}))
    return reports


def violation_report() -> IdentityReport:
    """The quadratic relation on an explicit assignment that breaks it."""
    g, indices = violating_assignment()
    return check_relation_quadratic(g, **indices)


def summarize(reports: Sequence[IdentityReport], master_seed: int, trials: int) -> CampaignSummary:
    tallies: Dict[str, IdentityTally] = {}
    for report in reports:
        tally = tallies.setdefault(report.identity, IdentityTally())
        if report.passed:
            tally.passed += 1
        else:
            tally.failed += 1
    failures = sum(t.failed for t in tallies.values())
    return CampaignSummary(
        seed=master_seed,
        trials=trials,
        total=len(reports),
        failures=failures,
        per_identity=tallies,
        passed=failures == 0,
    )
