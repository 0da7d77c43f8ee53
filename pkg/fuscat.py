"""
fuscat command line
Verify rank-4 based rings, run the codegree classification and the center obstruction scans,
and query roots-of-unity bounds; every report is deterministic text, canonical JSON or CSV
"""

import argparse
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO

from config.messages import MESSAGES
from config.settings import (
    APP_VERSION,
    DEFAULT_BOX,
    DEFAULT_FORMAT,
    DEFAULT_MAX_C,
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_E,
    DEFAULT_MAX_ORDER,
    EXIT_CODES,
    LOG_FORMAT,
    LOG_LEVEL,
    OUTPUT_FORMATS,
)
from modules.based_ring import formal_codegrees, ring_summary, verify_based_ring
from modules.center_obstruction import scan, twist_identity_checks
from modules.codegree_obstruction import classify_rank4, ostrik_gates
from modules.cyclotomic_obstruction import (
    ObstructionQuery,
    bound_paired,
    bound_sqrt2,
    bound_sqrt_general,
    minroots_bruteforce,
    minroots_paired_bruteforce,
    orbit_sums,
)
from modules.data_manager import file_digest, input_digest, load_ring_file, to_csv, to_json, write_ring_file
from modules.errors import (
    ConstraintViolation,
    FuscatError,
    HypothesisViolation,
    NoSolution,
    ShapeMismatch,
)
from modules.exact_arith import QuadVal, is_squarefree
from modules.rank4_families import (
    Box,
    RParams,
    k1_params,
    k2_params,
    k1_ring,
    k2_ring,
    k_to_r,
    normalize_family,
    r_to_k,
)

logger = logging.getLogger("fuscat")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandResult:
    report: Dict[str, object]
    rows: List[Dict[str, object]] = field(default_factory=list)
    text: List[str] = field(default_factory=list)
    exit_key: str = "ok"


# ============= Helpers =============

def _verdict(flag: bool) -> str:
    return MESSAGES["verdict_pass"] if flag else MESSAGES["verdict_fail"]


def _load_ring(path: str):
    if not Path(path).is_file():
        raise UsageError(f"{MESSAGES['error_file']} {path}")
    ring, error = load_ring_file(path)
    if error:
        raise ShapeMismatch(error)
    return ring


def _verification_rows(report) -> List[Dict[str, object]]:
    rows = []
    for kind, checks in (("mandatory", report.mandatory), ("extended", report.extended)):
        for check in checks:
            rows.append({"axiom": check.name, "kind": kind, "passed": check.passed, "detail": check.detail})
    return rows


# ============= Commands =============

def cmd_verify(args) -> CommandResult:
    ring = _load_ring(args.file)
    verification = verify_based_ring(ring)
    passed, message = verification.summary()
    report = {"ring": str(ring), "verification": verification.to_dict()}
    if passed:
        try:
            report["summary"] = ring_summary(ring)
        except FuscatError as e:
            report["summary"] = {"error": str(e)}
    text = [message] + [
        f"{check.name}: {_verdict(check.passed)}" for check in verification.mandatory + verification.extended
    ]
    return CommandResult(report, _verification_rows(verification), text, "ok" if passed else "verification_failure")


def cmd_codegrees(args) -> CommandResult:
    ring = _load_ring(args.file)
    verification = verify_based_ring(ring)
    if not verification.passed:
        _, message = verification.summary()
        return CommandResult(
            {"ring": str(ring), "verification": verification.to_dict()},
            _verification_rows(verification),
            [message],
            "verification_failure",
        )
    codegrees = formal_codegrees(ring)
    gates = ostrik_gates(codegrees)
    report = {"ring": str(ring), "codegrees": codegrees.to_dict(), "gates": gates.to_dict()}
    rows = [{"index": i + 1, "codegree": str(f), **f.to_dict()} for i, f in enumerate(codegrees.values)]
    text = [
        "codegrees: " + ", ".join(str(f) for f in codegrees.values),
        f"{MESSAGES['gate_positive']}: {_verdict(gates.positive)}",
        f"{MESSAGES['gate_reciprocal_sum']}: {_verdict(gates.reciprocal_ok)}  (sum 1/f_i = {gates.reciprocal_sum})",
        f"{MESSAGES['gate_square_sum']}: {_verdict(gates.square_ok)}  (sum 1/f_i^2 = {gates.square_sum}, bound {gates.square_bound})",
    ]
    return CommandResult(report, rows, text)


def cmd_family(args) -> CommandResult:
    if args.family == "r":
        params = RParams(args.x, args.y, args.g, args.d)
        kparams = r_to_k(params)
        family = normalize_family(kparams)
        report = {
            "R": str(params),
            "K": str(kparams),
            "k_params": asdict(kparams),
            "family": None if family is None else f"{family[0]}({family[1]})",
        }
        return CommandResult(report, [{"R": str(params), "K": str(kparams)}], [f"{params} = {kparams}"])

    if args.family == "k1":
        value, kparams, ring = args.e, k1_params(args.e), k1_ring(args.e)
    else:
        value, kparams, ring = args.c, k2_params(args.c), k2_ring(args.c)
    try:
        rparams = str(k_to_r(kparams))
    except NoSolution:
        rparams = None
    report = {"family": f"{args.family}({value})", "K": str(kparams), "R": rparams, "ring": ring.to_dict()}
    try:
        report["summary"] = ring_summary(ring)
    except FuscatError as e:
        report["summary"] = {"error": str(e)}
    text = [f"{args.family}({value}) = {kparams}" + (f" = {rparams}" if rparams else "")]
    if args.emit:
        write_ring_file(ring, args.emit)
        text.append(f"ring written to {args.emit}")
    return CommandResult(report, [{"family": args.family, "param": value, "K": str(kparams), "R": rparams or ""}], text)


def cmd_classify(args) -> CommandResult:
    box = Box(args.xmax, args.ymax, args.gmax, args.dmax)
    report = classify_rank4(box, args.workers)
    survivors = ", ".join(f"{name}({value})" for name, value in report.survivor_families())
    text = [
        f"candidates: {len(report.decisions)}",
        f"survivors: {survivors or '-'}",
        f"falsifications: {', '.join(str(d.params) for d in report.falsifications) or '-'}",
        f"gamma = 8 exclusion: {_verdict(report.gamma8.passed)}",
        MESSAGES["verdict_matches_claim"] if report.matches_claim else MESSAGES["verdict_claim_mismatch"],
    ]
    return CommandResult(report.to_dict(), report.to_rows(), text, "ok" if report.matches_claim else "claim_mismatch")


def cmd_obstruct(args) -> CommandResult:
    max_param = args.max_e if args.family == "k1" else args.max_c
    report = scan(args.family, max_param, args.workers)
    data = report.to_dict(detail=args.detail)
    identities = [twist_identity_checks(args.family, p) for p in report.survivors]
    data["twist_identities"] = [r.to_dict() for r in identities]
    text = [
        f"survivors: {{{', '.join(str(p) for p in report.survivors)}}}",
        f"expected: {{{', '.join(str(p) for p in report.expected)}}}",
        f"twist identities: {_verdict(all(r.passed for r in identities))}",
        MESSAGES["verdict_matches_claim"] if report.matches_claim else MESSAGES["verdict_claim_mismatch"],
    ]
    for verdict in report.verdicts:
        label = MESSAGES["verdict_feasible"] if verdict.feasible else MESSAGES["verdict_infeasible"]
        text.append(f"  {args.family}({verdict.param}): {label} [{verdict.case}]")
    return CommandResult(data, report.to_rows(), text, "ok" if report.matches_claim else "claim_mismatch")


def _lower_bounds(a: int, b: int, c: int) -> Dict[str, int]:
    bounds = {}
    if c == 2:
        bounds["sqrt2"] = bound_sqrt2(a, b)
    if c > 1 and is_squarefree(c):
        bounds["sqrt_general"] = bound_sqrt_general(a, b, c)
    return bounds


def cmd_minroots(args) -> CommandResult:
    if args.c < 0:
        raise HypothesisViolation(f"c must be nonnegative, got {args.c}")
    target = QuadVal(args.a, args.b, args.c)
    if args.paired:
        second = QuadVal(args.a2, args.b2, args.c)
        result = minroots_paired_bruteforce(target, second, args.max_order, args.max_count)
        bounds = {}
        if args.a2 == args.a:
            try:
                bounds["paired"] = bound_paired(ObstructionQuery(-args.a, -args.b, args.c, -args.b2))
            except HypothesisViolation as e:
                bounds["paired"] = None
                logger.debug("paired bound not applicable: %s", e)
        targets = {"sum": target.to_dict(), "square_sum": second.to_dict()}
    else:
        result = minroots_bruteforce(target, args.max_order, args.max_count)
        bounds = _lower_bounds(args.a, args.b, args.c)
        targets = {"sum": target.to_dict()}
    report = {"targets": targets, "result": result.to_dict(), "lower_bounds": bounds}
    rows = [{"order": order, "exponent": exponent} for order, exponent in result.witness]
    if result.found:
        witness = " ".join(f"z{order}^{exponent}" for order, exponent in result.witness) or "(empty)"
        text = [f"minimum: {result.minimum}", f"witness: {witness}"]
    else:
        text = [f"minimum: {MESSAGES['verdict_exceeds_budget']} ({result.status})"]
    text += [f"lower bound {name}: {value}" for name, value in bounds.items()]
    return CommandResult(report, rows, text, "ok" if result.found else "budget_exceeded")


def cmd_orbits(args) -> CommandResult:
    report = orbit_sums(args.c, args.order)
    text = [f"c = {report.c}, Y = {report.order}, epsilon = {report.epsilon}, n = {report.n}, L = {report.L}"]
    text += [
        f"  size {orbit.size}: sum {orbit.total}, square sum {orbit.square_total}"
        for orbit in report.orbits
    ]
    return CommandResult(report.to_dict(), report.to_rows(), text)


# ============= Parser =============

def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """The flags every command shares; subcommand copies suppress their defaults so they never mask the top level."""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=default(DEFAULT_FORMAT))
    parser.add_argument("--workers", type=int, default=default(None), help="worker processes (default: all cores)")
    parser.add_argument("--verbose", action="store_true", default=default(False), help="log at DEBUG level to stderr")
    parser.add_argument("--timing", action="store_true", default=default(False), help="include elapsed seconds in the report")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _add_global_flags(common, suppress=True)

    parser = _Parser(prog="fuscat", description=MESSAGES["home_subtitle"])
    parser.add_argument("--version", action="version", version=f"fuscat {APP_VERSION}")
    _add_global_flags(parser, suppress=False)
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="check the based-ring axioms")
    verify.add_argument("file")
    verify.set_defaults(handler=cmd_verify)

    codegrees = commands.add_parser("codegrees", parents=[common], help="formal codegrees and pseudo-unitarity gates")
    codegrees.add_argument("file")
    codegrees.set_defaults(handler=cmd_codegrees)

    family = commands.add_parser("family", parents=[common], help="build family members")
    members = family.add_subparsers(dest="family", required=True)
    k1 = members.add_parser("k1", parents=[common])
    k1.add_argument("--e", type=int, required=True)
    k1.add_argument("--emit", default=None)
    k2 = members.add_parser("k2", parents=[common])
    k2.add_argument("--c", type=int, required=True)
    k2.add_argument("--emit", default=None)
    r = members.add_parser("r", parents=[common])
    for name in ("x", "y", "g", "d"):
        r.add_argument(f"--{name}", type=int, required=True)
    family.set_defaults(handler=cmd_family)

    classify = commands.add_parser("classify", parents=[common], help="classify R(x, y, g, d) in a box")
    for name, default in DEFAULT_BOX.items():
        classify.add_argument(f"--{name}", type=int, default=default)
    classify.set_defaults(handler=cmd_classify)

    obstruct = commands.add_parser("obstruct", parents=[common], help="center obstruction scans")
    scans = obstruct.add_subparsers(dest="family", required=True)
    scan_k1 = scans.add_parser("k1", parents=[common])
    scan_k1.add_argument("--max-e", type=int, default=DEFAULT_MAX_E)
    scan_k1.add_argument("--detail", action="store_true", help="per-branching evidence")
    scan_k2 = scans.add_parser("k2", parents=[common])
    scan_k2.add_argument("--max-c", type=int, default=DEFAULT_MAX_C)
    scan_k2.add_argument("--detail", action="store_true")
    obstruct.set_defaults(handler=cmd_obstruct)

    minroots = commands.add_parser("minroots", parents=[common], help="fewest roots of unity for a + b*sqrt(c)")
    minroots.add_argument("--a", type=int, required=True)
    minroots.add_argument("--b", type=int, default=0)
    minroots.add_argument("--c", type=int, default=0)
    minroots.add_argument("--paired", action="store_true", help="also match the sum of squares a2 + b2*sqrt(c)")
    minroots.add_argument("--a2", type=int, default=0)
    minroots.add_argument("--b2", type=int, default=0)
    minroots.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    minroots.add_argument("--max-count", type=int, default=DEFAULT_MAX_COUNT)
    minroots.set_defaults(handler=cmd_minroots)

    orbits = commands.add_parser("orbits", parents=[common], help="Galois orbit sums of Y-th roots of unity")
    orbits.add_argument("--c", type=int, required=True)
    orbits.add_argument("--order", type=int, required=True)
    orbits.set_defaults(handler=cmd_orbits)
    return parser


# ============= Entry points =============

def _echo(argv: Sequence[str]) -> List[str]:
    """argv without the flags that must not change the report."""
    kept, skip = [], False
    for token in argv:
        if skip:
            skip = False
            continue
        if token in ("--workers", "--verbose", "--timing"):
            skip = token == "--workers"
            continue
        if token.startswith("--workers="):
            continue
        kept.append(token)
    return kept


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _render(result: CommandResult, fmt: str, echo: List[str], digest: str) -> str:
    if fmt == "json":
        return to_json({"command": " ".join(echo), "input_digest": digest, **result.report})
    if fmt == "csv":
        return to_csv(result.rows)
    header = [f"fuscat {' '.join(echo)}", f"input sha256: {digest}"]
    return "\n".join(header + [""] + result.text) + "\n"


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Parse argv, execute the subcommand and write its report.

    Returns:
        Exit code from EXIT_CODES
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=err)
        return EXIT_CODES["usage"]

    _configure_logging(args.verbose)
    echo = _echo(argv)
    files = [getattr(args, "file", None)]
    started = time.perf_counter()
    try:
        digest = input_digest(" ".join(echo), *(file_digest(f) for f in files if f and Path(f).is_file()))
        result: CommandResult = args.handler(args)
    except (UsageError, HypothesisViolation, OSError) as e:
        print(e, file=err)
        return EXIT_CODES["usage"]
    except (ShapeMismatch, ConstraintViolation, NoSolution) as e:
        print(f"{MESSAGES['error_ring']} {e}", file=err)
        return EXIT_CODES["verification_failure"]
    except FuscatError as e:
        print(e, file=err)
        return EXIT_CODES["verification_failure"]

    if args.timing:
        result.report["elapsed_seconds"] = round(time.perf_counter() - started, 3)
        result.text.append(f"elapsed: {result.report['elapsed_seconds']} s")
    out.write(_render(result, args.format, echo, digest))
    logger.info("%s finished with %s", args.command, result.exit_key)
    return EXIT_CODES[result.exit_key]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
