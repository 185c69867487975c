"""Command-line interface.

Every subcommand prints a canonical JSON document to stdout and a short
human-readable summary to stderr.  Exit codes: 0 for a complete positive
result, 1 for a complete negative one, 2 for an incomplete/inconclusive
result, 3 for input or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .exactmath import is_probable_prime
from .fano import GrassmannChart, fano_system, verify_fano_point
from .localcert import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    EXHAUSTIVE_PRIME_BOUND,
    EXHAUSTIVE_PRIME_HARD_CAP,
    search_smooth_points,
    verify_projective_point,
)
from .parsing import ParseError, parse_input
from .pencil import NonIntegralCharacteristicFormError, smoothness_check
from .pipeline import PipelineConfig, canonical_json, run_pipeline
from .quadric import NUM_VARIABLES
from .reduction import (
    DegenerateReductionError,
    cone_check,
    mod2_degeneracy,
    singular_locus,
)

__all__ = ["main"]

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_INCOMPLETE = 2
EXIT_INPUT_ERROR = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors map to exit code 3."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _parse_chart(text: str) -> GrassmannChart:
    """Parse 1-based '--chart i,j' into the internal 0-based chart."""
    parts = text.split(",")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise _UsageError(f"--chart expects 'i,j' with integers, got {text!r}")
    i, j = (int(p) for p in parts)
    if not (1 <= i < j <= NUM_VARIABLES):
        raise _UsageError(
            f"--chart columns must satisfy 1 <= i < j <= {NUM_VARIABLES}"
        )
    return GrassmannChart((i - 1, j - 1))


def _parse_coords(text: str, expected: int) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != expected or not all(
        p.lstrip("-").isdigit() and p.lstrip("-") for p in parts
    ):
        raise _UsageError(
            f"--coords expects {expected} comma-separated integers, got {text!r}"
        )
    return tuple(int(p) for p in parts)


def _require_prime(p: int) -> int:
    if p < 2 or not is_probable_prime(p):
        raise _UsageError(f"--prime {p} is not prime")
    return p


def _chart_ui(chart: GrassmannChart) -> list[int]:
    return [chart.pivots[0] + 1, chart.pivots[1] + 1]


def _format_char_form(coeffs: Sequence[int]) -> str:
    """Human rendering of an integer polynomial in t, highest degree first."""
    pieces: list[str] = []
    for degree in range(len(coeffs) - 1, -1, -1):
        coeff = coeffs[degree]
        if coeff == 0:
            continue
        if degree == 0:
            monomial = ""
        elif degree == 1:
            monomial = "t"
        else:
            monomial = f"t^{degree}"
        magnitude = abs(coeff)
        body = monomial if (magnitude == 1 and monomial) else (
            f"{magnitude}{monomial}" if monomial else str(magnitude)
        )
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces) if pieces else "0"


def _emit(document: dict | None, summary_lines: Sequence[str]) -> None:
    if document is not None:
        sys.stdout.write(canonical_json(document) + "\n")
    for line in summary_lines:
        sys.stderr.write(line + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the process exit code)
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    cfg = PipelineConfig(
        input_path=args.file,
        good_prime_samples=tuple(args.good_primes),
        search_budget=args.budget,
        lift_precision=args.lift_precision,
        prng_seed=args.seed,
        workers=args.workers,
        large_prime_search=args.search,
    )
    certificate = run_pipeline(cfg)
    lines = [f"verdict: {certificate.verdict}"]
    for entry in certificate.local_certificates:
        liftable = entry.get("liftable", entry.get("smooth_reduction"))
        lines.append(f"  place {entry['place']}: {entry['kind']}, ok={liftable}")
    for reason in certificate.incomplete_reasons:
        lines.append(f"  incomplete: {reason}")
    _emit(certificate.to_document(), lines)
    return EXIT_POSITIVE if certificate.is_positive else EXIT_INCOMPLETE


def _cmd_charform(args) -> int:
    try:
        parsed = parse_input(args.file)
    except NonIntegralCharacteristicFormError as error:
        _emit({"error": str(error)}, [f"error: {error}"])
        return EXIT_INCOMPLETE
    pencil = parsed.pencil
    coeffs = list(pencil.char_form.coeffs)
    verdict = smoothness_check(pencil)
    document = {
        "characteristic_form": {
            "variable": "t",
            "coefficients_lowest_first": coeffs,
        },
        "pretty": _format_char_form(coeffs),
        "smoothness": verdict,
    }
    _emit(document, [f"f(t) = {document['pretty']}", f"smoothness: {verdict}"])
    return EXIT_POSITIVE


def _cmd_fano_search(args) -> int:
    parsed = parse_input(args.file)
    prime = _require_prime(args.prime)
    charts = None if args.chart is None else [_parse_chart(args.chart)]
    exhaustive = True if args.exhaustive else None
    if args.exhaustive and prime > EXHAUSTIVE_PRIME_HARD_CAP:
        raise _UsageError(
            f"--exhaustive is infeasible for p > {EXHAUSTIVE_PRIME_HARD_CAP}"
        )
    points = search_smooth_points(
        parsed.pencil,
        prime,
        budget=args.budget,
        charts=charts,
        exhaustive=exhaustive,
        seed=args.seed,
        workers=args.workers,
    )
    mode = (
        "exhaustive"
        if (args.exhaustive or prime <= EXHAUSTIVE_PRIME_BOUND)
        else "sampling"
    )
    document = {
        "prime": prime,
        "mode": mode,
        "points": [
            {
                "chart": _chart_ui(chart),
                "coordinates": list(point),
                "jacobian_rank": rank,
            }
            for chart, point, rank in points
        ],
        "count": len(points),
    }
    if mode == "sampling":
        document["budget"] = args.budget
    if points:
        _emit(document, [f"found {len(points)} smooth point(s) over F_{prime}"])
        return EXIT_POSITIVE
    if mode == "exhaustive":
        _emit(
            document,
            [f"exhaustive scan: no smooth F_{prime}-point on the searched charts"],
        )
        return EXIT_NEGATIVE
    _emit(
        document,
        [
            f"sampling search (budget {args.budget} per chart) found nothing; "
            f"inconclusive"
        ],
    )
    return EXIT_INCOMPLETE


def _cmd_verify_point(args) -> int:
    parsed = parse_input(args.file)
    prime = _require_prime(args.prime)
    chart = _parse_chart(args.chart)
    coords = _parse_coords(args.coords, 8)
    system = fano_system(parsed.pencil, chart)
    report = verify_fano_point(system, tuple(c % prime for c in coords), prime)
    document = {
        "prime": prime,
        "chart": _chart_ui(chart),
        "coordinates": list(coords),
        "on_system": report.on_fano,
        "jacobian_rank": report.jacobian_rank,
        "smooth": report.smooth,
    }
    _emit(
        document,
        [
            f"on_system={report.on_fano} jacobian_rank={report.jacobian_rank} "
            f"smooth={report.smooth}"
        ],
    )
    return EXIT_POSITIVE if report.smooth else EXIT_NEGATIVE


def _cmd_verify_ambient(args) -> int:
    parsed = parse_input(args.file)
    coords = _parse_coords(args.coords, 6)
    prime: Optional[int] = None
    if args.prime is not None:
        prime = _require_prime(args.prime)
    try:
        on_intersection = verify_projective_point(parsed.pencil, coords, p=prime)
    except ValueError as error:
        raise _UsageError(str(error))
    document = {
        "prime": prime,
        "coordinates": list(coords),
        "on_intersection": on_intersection,
    }
    field = "Q" if prime is None else f"F_{prime}"
    _emit(document, [f"point on X over {field}: {on_intersection}"])
    return EXIT_POSITIVE if on_intersection else EXIT_NEGATIVE


def _cmd_reduction(args) -> int:
    parsed = parse_input(args.file)
    prime = _require_prime(args.prime)
    if prime == 2:
        try:
            report = dict(mod2_degeneracy(parsed.pencil))
        except DegenerateReductionError as error:
            _emit({"error": str(error)}, [f"error: {error}"])
            return EXIT_INCOMPLETE
        report["prime"] = 2
        _emit(report, [f"mod 2: {report['verdict']}"])
        return EXIT_POSITIVE
    if args.method == "exhaustive" and prime > 13:
        raise _UsageError("--method exhaustive requires p <= 13")
    try:
        locus = singular_locus(parsed.pencil, prime, method=args.method)
    except DegenerateReductionError as error:
        _emit({"error": str(error)}, [f"error: {error}"])
        return EXIT_INCOMPLETE
    except ValueError as error:
        # not a complete intersection mod p, or an infeasible method request
        _emit({"error": str(error)}, [f"error: {error}"])
        return EXIT_INCOMPLETE
    document = {
        "prime": prime,
        "points": [list(pt) for pt in locus.points],
        "ambient_jacobian_ranks": list(locus.ranks),
        "method": locus.method,
        "non_conical": cone_check(locus),
    }
    _emit(
        document,
        [
            f"singular locus mod {prime}: {len(locus.points)} point(s), "
            f"method={locus.method}, non_conical={cone_check(locus)}"
        ],
    )
    return EXIT_POSITIVE


# ---------------------------------------------------------------------------
# Parser construction and entry point
# ---------------------------------------------------------------------------

def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="sampling budget per chart for primes above the exhaustive bound",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="PRNG seed for the sampling search (recorded for reproducibility)",
    )
    parser.add_argument(
        "--workers", type=int, default=8, help="worker threads for searches"
    )


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="quadpencil",
        description=(
            "Exact-arithmetic local-rationality certification for the "
            "intersection of two quadrics in P^5."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="run the full pipeline and emit the certificate"
    )
    p_analyze.add_argument("file", help="input file with Q1:/Q2: lines")
    _add_search_options(p_analyze)
    p_analyze.add_argument(
        "--lift-precision",
        type=int,
        default=3,
        dest="lift_precision",
        help="certify Newton lifts modulo p^k (default k = 3)",
    )
    p_analyze.add_argument(
        "--good-primes",
        default="3,5,7,11,13",
        dest="good_primes_text",
        help="comma-separated odd primes to sample as good places",
    )
    p_analyze.add_argument(
        "--search",
        action="store_true",
        help=(
            "attempt a budgeted sampling search at bad primes beyond the "
            "exhaustive bound when no witness is supplied (impractical for "
            "large primes: hit rate is p^-6 per sample)"
        ),
    )
    p_analyze.set_defaults(handler=_cmd_analyze)

    p_charform = sub.add_parser(
        "charform", help="print the characteristic form f(t) = -det(M1 - t*M2)"
    )
    p_charform.add_argument("file")
    p_charform.set_defaults(handler=_cmd_charform)

    p_search = sub.add_parser(
        "fano-search", help="search for smooth F_p-points on the 15 charts"
    )
    p_search.add_argument("file")
    p_search.add_argument("--prime", type=int, required=True)
    p_search.add_argument(
        "--chart",
        default=None,
        help="restrict to one chart, as 1-based columns 'i,j'",
    )
    p_search.add_argument(
        "--exhaustive",
        action="store_true",
        help=f"force a full p^8 scan per chart (p <= {EXHAUSTIVE_PRIME_HARD_CAP})",
    )
    _add_search_options(p_search)
    p_search.set_defaults(handler=_cmd_fano_search)

    p_verify = sub.add_parser(
        "verify-point", help="verify one chart point on the Fano system mod p"
    )
    p_verify.add_argument("file")
    p_verify.add_argument("--prime", type=int, required=True)
    p_verify.add_argument("--chart", required=True, help="1-based columns 'i,j'")
    p_verify.add_argument("--coords", required=True, help="a1,...,a8")
    p_verify.set_defaults(handler=_cmd_verify_point)

    p_ambient = sub.add_parser(
        "verify-ambient",
        help="verify a projective point on X = {Q1 = Q2 = 0}, over Q or F_p",
    )
    p_ambient.add_argument("file")
    p_ambient.add_argument("--coords", required=True, help="c1,...,c6")
    p_ambient.add_argument("--prime", type=int, default=None)
    p_ambient.set_defaults(handler=_cmd_verify_ambient)

    p_reduction = sub.add_parser(
        "reduction", help="analyze the reduction of the pencil mod p"
    )
    p_reduction.add_argument("file")
    p_reduction.add_argument("--prime", type=int, required=True)
    p_reduction.add_argument(
        "--method",
        choices=("exhaustive", "kernel-guided"),
        default=None,
        help="singular-locus strategy (default: exhaustive for p <= 13)",
    )
    p_reduction.set_defaults(handler=_cmd_reduction)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(_normalize_args(args))
    except _UsageError as error:
        sys.stderr.write(f"error: {error}\n")
        return EXIT_INPUT_ERROR
    except ParseError as error:
        sys.stderr.write(f"input error: {error}\n")
        return EXIT_INPUT_ERROR
    except OSError as error:
        sys.stderr.write(f"cannot read input: {error}\n")
        return EXIT_INPUT_ERROR
    except ValueError as error:
        sys.stderr.write(f"error: {error}\n")
        return EXIT_INPUT_ERROR


def _normalize_args(args):
    if getattr(args, "good_primes_text", None) is not None:
        parts = [p.strip() for p in args.good_primes_text.split(",") if p.strip()]
        if not parts or not all(p.isdigit() for p in parts):
            raise _UsageError(
                f"--good-primes expects comma-separated primes, got "
                f"{args.good_primes_text!r}"
            )
        args.good_primes = tuple(int(p) for p in parts)
        for p in args.good_primes:
            if p == 2 or not is_probable_prime(p):
                raise _UsageError(f"--good-primes entries must be odd primes, got {p}")
    return args


if __name__ == "__main__":
    sys.exit(main())
