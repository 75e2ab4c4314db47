"""
Command-line interface for scripted experiments and report generation.

Exit codes: 0 success, 1 error or key mismatch, 2 usage error, 3 letter
budget exhausted (with a ``reason=budget-exceeded ...`` line on stderr).
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from fastmcp.utilities.logging import configure_logging, get_logger

from .core import analysis, database, protocol
from .core.config import FibernormConfig, get_config
from .core.exceptions import (
    BudgetExceededError,
    DatabaseError,
    FibernormException,
    TranscriptError,
)
from .core.norm import (
    CANONICAL_THETA,
    fiber_rank,
    in_cone_over_F,
    is_fibered,
    is_primitive,
    largest_root,
    specialize,
    thurston_norm,
)
from .models.base import ResponseFormat
from .models.classes import CohomologyClass
from .utils.formatting import format_response

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 3


def _phi(text: str) -> CohomologyClass:
    try:
        return CohomologyClass.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a class 'a,b': {e}") from None


def _lengths(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(data, title: str, args: argparse.Namespace) -> None:
    print(format_response(data, title, ResponseFormat(args.format)))


def _open_db(args: argparse.Namespace, config: FibernormConfig) -> database.FibrationDatabase:
    if getattr(args, "db", None):
        return database.load(args.db)
    if config.has_database_file:
        return database.load(config.database_path)
    return database.generate_metadata_db(config.default_db_max_a)


def _entry(db: database.FibrationDatabase, phi: CohomologyClass):
    entry = db.lookup(phi)
    if entry is None:
        raise DatabaseError(f"Class {phi} is not in the database")
    return entry


# ============================================================================
# Commands
# ============================================================================

def cmd_norm(args, config) -> int:
    phi = args.phi
    fibered = is_fibered(phi)
    _emit({
        "phi": str(phi),
        "thurston_norm": thurston_norm(phi),
        "primitive": is_primitive(phi),
        "fibered": fibered,
        "in_cone_over_F": in_cone_over_F(phi),
        "fiber_rank": fiber_rank(phi) if fibered else None,
    }, f"Thurston norm of {phi}", args)
    return EXIT_OK


def cmd_stretch(args, config) -> int:
    tol = args.tol if args.tol is not None else config.tolerance
    polynomial = specialize(CANONICAL_THETA, args.phi)
    root = largest_root(polynomial, tol)
    _emit({
        "phi": str(args.phi),
        "polynomial": polynomial.coefficient_string(),
        "expanded": str(polynomial),
        "root": root if args.format == ResponseFormat.JSON.value else f"{root:.6f}",
    }, f"Stretch factor of {args.phi}", args)
    return EXIT_OK


def cmd_keymap(args, config) -> int:
    phi = database.keymap(args.glen)
    d = database.keymap_denominator(args.glen)
    if args.format == ResponseFormat.TEXT.value:
        print(f"{phi} D={d}")
    else:
        _emit({"length": args.glen, "phi": str(phi), "D": d}, f"Keymap for |g| = {args.glen}", args)
    return EXIT_OK


def cmd_db_gen(args, config) -> int:
    db = database.generate_metadata_db(args.max_a)
    database.save(db, args.out)
    print(f"wrote {len(db)} entries to {args.out}")
    return EXIT_OK


def cmd_db_show(args, config) -> int:
    db = database.load(args.file)
    if args.format == ResponseFormat.JSON.value:
        _emit([entry.model_dump_file() for entry in db], "Fibration database", args)
        return EXIT_OK
    rows = [
        {
            "phi": str(entry.phi),
            "rank": entry.rank,
            "stretch": f"{entry.stretch:.9f}",
            "full_data": entry.full_data is not None,
        }
        for entry in db
    ]
    _emit(rows, f"Fibration database ({db.manifold})", args)
    return EXIT_OK


def cmd_simulate_symmetric(args, config) -> int:
    db = _open_db(args, config)
    entry = _entry(db, args.phi)
    alice, bob, transcript = protocol.symmetric_session(
        entry, args.N, max_letters=args.max_letters
    )
    report = protocol.SessionReport(scheme="symmetric", phi=entry.phi, alice=alice, bob=bob)
    protocol.transcript_write(transcript, args.transcript)
    protocol.report_write(report, args.report)
    _emit({
        "transcript": str(args.transcript),
        "report": str(args.report),
        "N": args.N,
        "keys_match": report.keys_match,
        "l_max": str(alice),
    }, "Symmetric session", args)
    return EXIT_OK if report.keys_match else EXIT_ERROR


def cmd_simulate_public(args, config) -> int:
    db = _open_db(args, config)
    session = protocol.public_session(
        db,
        protocol.SeededPlatformOracle(args.glen, args.seed),
        args.N,
        args.decoys,
        args.seed,
        n_max=args.nmax,
        obfuscate=not args.no_obfuscate,
        blowup=args.blowup,
        max_letters=args.max_letters,
    )
    protocol.transcript_write(session.transcript, args.transcript)
    protocol.report_write(session.report, args.report)
    report = session.report
    _emit({
        "transcript": str(args.transcript),
        "report": str(args.report),
        "elements": len(session.transcript.elements),
        "alice": report.alice.model_dump(),
        "bob": report.bob.model_dump(),
        "keys_match": report.keys_match,
    }, "Public-key session", args)
    if not report.keys_match:
        print("key mismatch between Alice and Bob", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_attack(args, config) -> int:
    transcript = protocol.transcript_read(args.transcript)
    if transcript.scheme != "public":
        raise TranscriptError("attack needs a public-scheme transcript with channel elements")
    db = database.load(args.db)
    rows = analysis.eavesdrop_scan(
        transcript.message(), db, args.nmax,
        workers=args.workers or config.workers, max_letters=args.max_letters,
    )
    analysis.write_csv(analysis.scan_csv_rows(rows), args.out, analysis.SCAN_FIELDS)
    hits = analysis.successes(rows)
    _emit(
        [{"phi": f"({row.a},{row.b})", "recovered_N": row.recovered_N} for row in hits],
        f"Recoveries ({len(rows)} classes scanned, written to {args.out})",
        args,
    )
    stopped = [row for row in rows if row.reason]
    if stopped:
        print(
            f"scan incomplete: {len(stopped)} classes stopped at the letter budget "
            f"({stopped[0].reason})",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_bench_distortion(args, config) -> int:
    db = _open_db(args, config)
    report = analysis.distortion_report(
        _entry(db, args.phi), args.nmax, max_letters=args.max_letters
    )
    analysis.write_csv(
        analysis.distortion_csv_rows(report), args.out, analysis.DISTORTION_FIELDS
    )
    _emit(list(report.rows), "Distortion", args)
    if report.truncated:
        print(f"table truncated: {report.reason}", file=sys.stderr)
    return EXIT_OK


def cmd_bench_membership(args, config) -> int:
    rows = analysis.membership_bench(args.lengths, seed=args.seed, repeats=args.repeats)
    analysis.write_csv((row.model_dump() for row in rows), args.out, analysis.TIMING_FIELDS)
    _emit(rows, "Membership timing", args)
    if len(rows) >= 2:
        _emit(analysis.linear_fit(rows), "Linear fit", args)
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================

def build_parser(config: FibernormConfig) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-letters", type=int, default=config.max_letters,
                        help=f"Letter budget for every word computation (default {config.max_letters}).")
    common.add_argument("--seed", type=int, default=config.seed,
                        help="Seed for all randomness (default from FIBERNORM_SEED, else 0).")
    common.add_argument("--format", choices=[f.value for f in ResponseFormat],
                        default=ResponseFormat.TEXT.value, help="Output format.")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr.")

    parser = argparse.ArgumentParser(
        prog="fibernorm",
        description="Thurston norm, stretch factors and key agreement on the simplest pseudo-Anosov mapping torus.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("norm", parents=[common], help="Norm, primitivity, fiberedness, fiber rank.")
    p.add_argument("--phi", type=_phi, required=True, help="Class a,b.")
    p.set_defaults(handler=cmd_norm)

    p = commands.add_parser("stretch", parents=[common], help="Specialized polynomial and stretch factor.")
    p.add_argument("--phi", type=_phi, required=True, help="Class a,b in the cone over F.")
    p.add_argument("--tol", type=float, default=None, help="Root tolerance (default 1e-9).")
    p.set_defaults(handler=cmd_stretch)

    p = commands.add_parser("keymap", parents=[common], help="Fibered class f(g) and D(g) for |g|.")
    p.add_argument("--glen", type=int, required=True, help="Normal-form length |g| >= 1.")
    p.set_defaults(handler=cmd_keymap)

    db = commands.add_parser("db", help="Fibration database files.")
    db_commands = db.add_subparsers(dest="db_command", required=True)
    p = db_commands.add_parser("gen", parents=[common], help="Generate a metadata database.")
    p.add_argument("--max-a", type=int, required=True, help="Largest a in (a,b).")
    p.add_argument("--out", type=Path, required=True, help="Output JSON file.")
    p.set_defaults(handler=cmd_db_gen)
    p = db_commands.add_parser("show", parents=[common], help="Load, verify and list a database.")
    p.add_argument("file", type=Path)
    p.set_defaults(handler=cmd_db_show)

    sim = commands.add_parser("simulate", help="Run a key-agreement session.")
    sim_commands = sim.add_subparsers(dest="scheme", required=True)
    p = sim_commands.add_parser("symmetric", parents=[common], help="Symmetric scheme: N in the clear.")
    p.add_argument("--N", type=int, required=True, help="Exponent Alice announces.")
    p.add_argument("--db", type=Path, default=None, help="Database file (default FIBERNORM_DB).")
    p.add_argument("--phi", type=_phi, default=CohomologyClass(a=1, b=0), help="Shared class (default 1,0).")
    p.add_argument("--transcript", type=Path, default=Path("transcript.json"))
    p.add_argument("--report", type=Path, default=Path("report.json"), help="Private key report.")
    p.set_defaults(handler=cmd_simulate_symmetric)

    p = sim_commands.add_parser("public", parents=[common], help="Public-key scheme with decoys.")
    p.add_argument("--glen", type=int, default=1, help="Length |g| of the platform secret (default 1).")
    p.add_argument("--N", type=int, required=True, help="Exponent Alice chooses.")
    p.add_argument("--decoys", type=int, default=config.decoy_total, help="Total elements sent.")
    p.add_argument("--nmax", type=int, default=config.n_max, help="Bob's exponent search cap.")
    p.add_argument("--blowup", type=float, default=config.obfuscation_blowup)
    p.add_argument("--no-obfuscate", action="store_true", default=not config.obfuscate,
                   help="Send literal conjugates.")
    p.add_argument("--db", type=Path, default=None, help="Database file (default FIBERNORM_DB).")
    p.add_argument("--transcript", type=Path, default=Path("transcript.json"))
    p.add_argument("--report", type=Path, default=Path("report.json"), help="Private key report.")
    p.set_defaults(handler=cmd_simulate_public)

    p = commands.add_parser("attack", parents=[common], help="Eavesdropper scan of a public transcript.")
    p.add_argument("--transcript", type=Path, required=True)
    p.add_argument("--db", type=Path, required=True)
    p.add_argument("--nmax", type=int, default=config.n_max)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", type=Path, default=Path("scan.csv"))
    p.set_defaults(handler=cmd_attack)

    bench = commands.add_parser("bench", help="Distortion and timing reports.")
    bench_commands = bench.add_subparsers(dest="bench", required=True)
    p = bench_commands.add_parser("distortion", parents=[common], help="l(N) against stretch^N.")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--db", type=Path, default=None)
    p.add_argument("--phi", type=_phi, default=CohomologyClass(a=1, b=0))
    p.add_argument("--out", type=Path, default=Path("distortion.csv"))
    p.set_defaults(handler=cmd_bench_distortion)
    p = bench_commands.add_parser("membership", parents=[common], help="evaluate_class timing.")
    p.add_argument("--lengths", type=_lengths, required=True, help="Comma-separated word lengths.")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out", type=Path, default=Path("membership.csv"))
    p.set_defaults(handler=cmd_bench_membership)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    config = get_config()
    args = build_parser(config).parse_args(argv)
    configure_logging("DEBUG" if args.verbose else "WARNING")

    try:
        return args.handler(args, config)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        print(e.reason_line, file=sys.stderr)
        return EXIT_BUDGET
    except FibernormException as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
