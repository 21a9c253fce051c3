"""
Command-line entry point for sturmdet
"""
import argparse
import csv
import io
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import structlog
from pydantic import ValidationError

from campaigns import CASES, cauchy_campaign, run_campaign, summarize, violation_report
from config import (
    BENCH_CSV_HEADER,
    BENCH_DEGREES,
    BENCH_REPS,
    BETA_PAIRS,
    CAUCHY_MAX_M,
    CAUCHY_TRIALS,
    DEFAULT_M,
    DEFAULT_N_LIST,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEGREE_RANGE,
    EULER_SWEEP_MAX,
    FACTORIZATION_MAX_M,
    LOG_FILE,
    LOG_LEVEL,
    WORKERS,
    configure_logging,
)
from errors import CrossCheckError, DegenerateChainError, SturmDetError, UsageError
from euler import (
    asymptotic_check,
    beta_convergence,
    check_euler_hypergeom,
    check_gauss_even,
    cos_limit_check,
    f_n_poly,
    factorization_table,
    hilbert_variant_det,
    r_limit,
)
from exact_core import (
    Polynomial,
    cauchy_bound,
    count_real_roots,
    isolate_roots,
    load_polynomial,
    parse_coeff_list,
    parse_rational,
    remainder_chain,
    sturm_chain_euclid,
)
from jacobi import BTable, determinantal_chain, determinantal_member, gamma_seq
from models import (
    ChainReport,
    Command,
    EulerReport,
    MemberComparison,
    OutputFormat,
    RootReport,
    RunConfig,
    rational_text,
)

logger = structlog.get_logger(__name__)

BANNER = "=" * 40


class CommandLineParser(argparse.ArgumentParser):
    """argparse that reports usage problems as UsageError (exit 3)."""

    def error(self, message: str):
        raise UsageError(message)


def _parse_span(text: str) -> Tuple[str, str]:
    low, sep, high = text.partition("..")
    if not sep or not low.strip() or not high.strip():
        raise UsageError(f"expected LOW..HIGH, got {text!r}")
    return low.strip(), high.strip()


def _parse_int_span(text: str) -> Tuple[int, int]:
    low, high = _parse_span(text)
    try:
        return int(low), int(high)
    except ValueError as e:
        raise UsageError(f"expected integers in {text!r}") from e


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from e


VALUE_FLAGS = ("--coeffs", "--pair", "--interval")


def attach_negative_values(argv: List[str]) -> List[str]:
    """Rewrite `--interval -2..0` as `--interval=-2..0` so argparse does not read the value as an option."""
    joined: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        following = argv[i + 1] if i + 1 < len(argv) else ""
        if token in VALUE_FLAGS and len(following) > 1 and following[0] == "-" and following[1] in "0123456789./":
            joined.append(f"{token}={following}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def build_parser() -> CommandLineParser:
    common = CommandLineParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--log-level", default=LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR")

    polynomial = CommandLineParser(add_help=False)
    source = polynomial.add_mutually_exclusive_group(required=True)
    source.add_argument("--coeffs", help='descending coefficients, e.g. "1,0,-3,1" or --coeffs=-1,0,3,-1')
    source.add_argument("--input", help="JSON file with {\"coeffs\": [...]}")

    parser = CommandLineParser(prog="sturmdet", description="Exact Sturm chains by Euclid and by determinants")
    commands = parser.add_subparsers(dest="command", required=True)

    sturm = commands.add_parser("sturm", parents=[common, polynomial], help="compare both chain routes")
    sturm.add_argument("--pair", help="second member f2; the main polynomial is then f1")

    verify = commands.add_parser("verify", parents=[common], help="randomized identity campaign")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    verify.add_argument("--degrees", default=None, help="LOW..HIGH")
    verify.add_argument("--workers", type=int, default=WORKERS)
    verify.add_argument("--inject-violation", action="store_true")

    roots = commands.add_parser("roots", parents=[common, polynomial], help="count and isolate real roots")
    roots.add_argument("--interval", help="A..B, the half-open interval (A, B]; negative A may also be written --interval=-2..0")

    euler = commands.add_parser("euler", parents=[common], help="Euler polynomial checks and asymptotics")
    euler.add_argument("--m", type=int, default=DEFAULT_M)
    euler.add_argument("--n-list", default=",".join(str(n) for n in DEFAULT_N_LIST))
    euler.add_argument("--seed", type=int, default=DEFAULT_SEED)

    bench = commands.add_parser("bench", parents=[common], help="time both routes on f_n")
    bench.add_argument("--degrees", default=None, help="LOW..HIGH")
    bench.add_argument("--trials", type=int, default=BENCH_REPS)
    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    degrees = getattr(args, "degrees", None)
    interval = getattr(args, "interval", None)
    try:
        return RunConfig(
            command=Command(args.command),
            input_path=getattr(args, "input", None),
            coeffs=getattr(args, "coeffs", None),
            pair=getattr(args, "pair", None),
            seed=getattr(args, "seed", DEFAULT_SEED),
            trials=getattr(args, "trials", None),
            degree_range=_parse_int_span(degrees) if degrees else None,
            m=getattr(args, "m", DEFAULT_M),
            n_list=_parse_int_list(args.n_list) if hasattr(args, "n_list") else [],
            interval=_parse_span(interval) if interval else None,
            output=OutputFormat.JSON if args.json else OutputFormat.HUMAN,
            out_path=args.out,
            workers=getattr(args, "workers", 1),
            inject_violation=getattr(args, "inject_violation", False),
        )
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"])
        raise UsageError(f"{field}: {first['msg']}") from e


def _load_polynomial(config: RunConfig) -> Polynomial:
    if config.input_path:
        return load_polynomial(config.input_path)
    return parse_coeff_list(config.coeffs)


def _mark(ok: bool) -> str:
    return "✅" if ok else "❌"


def cmd_sturm(config: RunConfig) -> Tuple[int, str]:
    f = _load_polynomial(config)
    if config.pair:
        second = parse_coeff_list(config.pair)
        table = BTable.from_pair(f, second)
        chain = remainder_chain(f, second)
        offset = 1
    else:
        second = None
        chain = sturm_chain_euclid(f)
        table = BTable.from_polynomial(f)
        offset = 0

    def euclid_member(i: int) -> Optional[Polynomial]:
        position = i - offset
        return chain.members[position] if position < len(chain.members) else None

    members: List[MemberComparison] = []
    if offset == 0:
        strings = f.to_descending_strings()
        members.append(MemberComparison(index=0, euclid=strings, determinantal=strings, equal=True))
    degenerate = None
    for i in range(1, table.n + 1):
        expected = euclid_member(i)
        expected_strings = expected.to_descending_strings() if expected is not None else None
        try:
            member = determinantal_member(table, i)
        except DegenerateChainError as e:
            logger.warning("degenerate chain", k=e.k, witness=str(e.witness))
            degenerate = e
            members.append(MemberComparison(index=i, euclid=expected_strings, equal=False))
            break
        gamma = gamma_seq(table, i)[i]
        c = table.c(i, 0)
        members.append(MemberComparison(
            index=i,
            euclid=expected_strings,
            determinantal=member.to_descending_strings(),
            equal=member == expected,
            gamma=rational_text(gamma),
            c=rational_text(c),
            leading_matches=member.leading == gamma * c,
        ))

    report = ChainReport(
        polynomial=f.to_descending_strings(),
        second=second.to_descending_strings() if second is not None else None,
        mode=table.mode,
        termination=chain.termination,
        degrees=list(chain.degrees),
        quotients=[q.to_descending_strings() for q in chain.quotients],
        members=members,
        all_equal=degenerate is None and all(m.equal for m in members),
        degenerate_index=degenerate.k if degenerate else None,
        degenerate_witness=rational_text(degenerate.witness) if degenerate else None,
    )
    code = 2 if degenerate else (0 if report.all_equal else 1)
    if config.output is OutputFormat.JSON:
        return code, report.model_dump_json(indent=2)

    title = f"{f}" if second is None else f"pair ({f}, {second})"
    lines = [f"🧮 Sturm chain of {title}", BANNER,
             f"termination: {chain.termination.value}   degrees: {', '.join(map(str, chain.degrees))}"]
    for entry in members:
        expected = euclid_member(entry.index) if entry.index > 0 else f
        shown = str(expected) if expected is not None else "(absent)"
        line = f"f_{entry.index} = {shown}"
        if entry.index > 0 and entry.determinantal is not None:
            line += f"   {_mark(entry.equal)} gamma={entry.gamma} c={entry.c}"
            if not entry.equal:
                line += f"   determinantal: {Polynomial.from_descending(parse_rational(t) for t in entry.determinantal)}"
        lines.append(line)
    if degenerate:
        lines.append(f"❌ degenerate at k={degenerate.k}: c({degenerate.k}) = {degenerate.witness}")
    elif report.all_equal:
        lines.append("✅ determinantal members agree with the Euclidean chain")
    return code, "\n".join(lines)


def cmd_verify(config: RunConfig) -> Tuple[int, str]:
    trials = config.trials or DEFAULT_TRIALS
    degrees = config.degree_range or DEGREE_RANGE
    reports = run_campaign(list(CASES), trials, config.seed, degrees, config.workers)
    if config.inject_violation:
        reports.append(violation_report())
    summary = summarize(reports, config.seed, trials)
    code = 0 if summary.passed else 1
    if config.output is OutputFormat.JSON:
        lines = [r.model_dump_json() for r in reports] + [summary.model_dump_json()]
        return code, "\n".join(lines)

    lines = [f"🧪 Identity campaign (seed {summary.seed}, {trials} trials each)", BANNER]
    for name, tally in summary.per_identity.items():
        lines.append(f"{_mark(tally.failed == 0)} {name:<24} {tally.passed} passed, {tally.failed} failed")
    for report in reports:
        if not report.passed:
            lines.append(f"   {report.identity} {report.params} residual={report.residual}")
    lines.append(BANNER)
    lines.append(f"{_mark(summary.passed)} {summary.total} reports, {summary.failures} failures")
    return code, "\n".join(lines)


def cmd_roots(config: RunConfig) -> Tuple[int, str]:
    f = _load_polynomial(config)
    chain = sturm_chain_euclid(f)
    if config.interval:
        low, high = (parse_rational(t) for t in config.interval)
    else:
        bound = cauchy_bound(f)
        low, high = -bound, bound
    count = count_real_roots(chain, low, high)
    intervals = isolate_roots(f.squarefree_part(), low, high)
    if len(intervals) != count:
        raise CrossCheckError("root count", count, len(intervals))
    report = RootReport(
        polynomial=f.to_descending_strings(),
        interval=(rational_text(low), rational_text(high)),
        count=count,
        intervals=[(rational_text(a), rational_text(b)) for a, b in intervals],
    )
    if config.output is OutputFormat.JSON:
        return 0, report.model_dump_json(indent=2)
    lines = [f"📐 Real roots of {f} in ({low}, {high}]", BANNER, f"distinct real roots: {count}"]
    lines.extend(f"  ({a}, {b}]" for a, b in intervals)
    return 0, "\n".join(lines)


def cmd_euler(config: RunConfig) -> Tuple[int, str]:
    n_list = config.n_list or list(DEFAULT_N_LIST)
    smallest = max([config.m + 1] + [i for _, i in BETA_PAIRS])
    too_small = [n for n in n_list if n < smallest]
    if too_small:
        raise UsageError(f"--n-list entries must be at least {smallest} for m = {config.m}, got {too_small}")
    report = EulerReport(
        euler_hypergeom=[check_euler_hypergeom(n) for n in range(1, EULER_SWEEP_MAX + 1)],
        gauss_even=[check_gauss_even(n) for n in range(0, EULER_SWEEP_MAX + 1)],
        cauchy=cauchy_campaign(CAUCHY_TRIALS, config.seed, CAUCHY_MAX_M),
        factorization=factorization_table(FACTORIZATION_MAX_M),
        hilbert_variant={str(m): rational_text(hilbert_variant_det(m)) for m in range(1, FACTORIZATION_MAX_M + 1)},
        r_limits={str(i): rational_text(r_limit(i)) for i in range(0, 4)},
        asymptotic=asymptotic_check(config.m, n_list),
        beta=[beta_convergence(j, i, n_list) for j, i in BETA_PAIRS],
        cos_limit=cos_limit_check(2, n_list),
        passed=False,
    )
    passed = (
        all(r.passed for r in report.euler_hypergeom + report.gauss_even + report.cauchy)
        and all(row.equal for row in report.factorization)
        and report.asymptotic.passed
        and all(b.passed for b in report.beta)
        and report.cos_limit.passed
    )
    report = report.model_copy(update={"passed": passed})
    code = 0 if passed else 1
    if config.output is OutputFormat.JSON:
        return code, report.model_dump_json(indent=2)

    def tally(items) -> str:
        good = sum(1 for r in items if r.passed)
        return f"{_mark(good == len(items))} {good}/{len(items)}"

    lines = ["📈 Euler polynomial checks", BANNER,
             f"E_n as a hypergeometric series   {tally(report.euler_hypergeom)}",
             f"even part of (1 + x)^n           {tally(report.gauss_even)}",
             f"Cauchy closed form               {tally(report.cauchy)}"]
    for row in report.factorization:
        lines.append(f"{_mark(row.equal)} c({row.m + 1}) limit = {row.c_inf} = {row.factor} * {row.hilbert_variant}")
    lines.append(BANNER)
    for convergence in [report.asymptotic] + report.beta + [report.cos_limit]:
        lines.append(f"{_mark(convergence.passed)} {convergence.name} {convergence.params} -> {convergence.limit}")
        for point in convergence.points:
            lines.append(f"   n={point.n:<5} value={point.value}   deviation={point.deviation}")
    return code, "\n".join(lines)


def cmd_bench(config: RunConfig) -> Tuple[int, str]:
    low, high = config.degree_range or BENCH_DEGREES
    reps = config.trials or BENCH_REPS
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(BENCH_CSV_HEADER)
    all_correct = True
    for n in range(low, high + 1):
        f = f_n_poly(n)
        reference = list(sturm_chain_euclid(f).members)
        routes: Dict[str, Callable[[], List[Polynomial]]] = {
            "euclid": lambda: list(sturm_chain_euclid(f).members),
            "determinantal": lambda: determinantal_chain(BTable.from_polynomial(f)),
        }
        for route, compute in routes.items():
            for rep in range(reps):
                start = time.perf_counter_ns()
                members = compute()
                nanos = time.perf_counter_ns() - start
                correct = members == reference
                all_correct = all_correct and correct
                writer.writerow([n, route, rep, nanos, max(p.bit_size() for p in members), correct])
        logger.info("benchmark degree done", degree=n, reps=reps)
    return (0 if all_correct else 1), buffer.getvalue().rstrip("\n")


COMMANDS: Dict[Command, Callable[[RunConfig], Tuple[int, str]]] = {
    Command.STURM: cmd_sturm,
    Command.VERIFY: cmd_verify,
    Command.ROOTS: cmd_roots,
    Command.EULER: cmd_euler,
    Command.BENCH: cmd_bench,
}


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(attach_negative_values(sys.argv[1:] if argv is None else list(argv)))
        config = build_run_config(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    configure_logging(args.log_level, LOG_FILE)
    logger.info("command started", command=config.command.value)
    try:
        code, text = COMMANDS[config.command](config)
    except SturmDetError as e:
        logger.error("command failed", command=config.command.value, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    _emit(text, config.out_path)
    logger.info("command finished", command=config.command.value, exit_code=code)
    return code


if __name__ == "__main__":
    sys.exit(main())
