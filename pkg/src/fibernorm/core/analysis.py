"""
Eavesdropper simulation, distortion tables and timing benchmarks.

The eavesdropper runs exactly Bob's recovery against every database entry
with full data; metadata-only entries can be filtered but not attacked.
"""

import csv
import random
import statistics
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from fastmcp.utilities.logging import get_logger

from ..models.fibrations import FibrationEntry
from ..models.protocol import ChannelMessage
from ..models.reports import DistortionReport, DistortionRow, LinearFit, ScanRow, TimingRow
from .automorphisms import FreeAutomorphism
from .config import DEFAULT_MAX_LETTERS, DEFAULT_N_MAX
from .database import (
    CANONICAL_CLASS,
    FibrationDatabase,
    entry_automorphism,
    generate_sized_db,
    generator_words,
    stable_word,
)
from .exceptions import BudgetExceededError, FibernormValidationError, RecoveryFailureError
from .mapping_torus import CANONICAL_TORUS, TORUS_ALPHABET
from .protocol import bob_recover, fiber_members
from .words import Word

logger = get_logger(__name__)

DISTORTION_FIELDS = ("N", "length", "ratio", "predicted")
SCAN_FIELDS = ("a", "b", "recovered_N", "success", "reason", "ms")
TIMING_FIELDS = ("size", "ms")


# ============================================================================
# Eavesdropper
# ============================================================================

def _scan_entry(
    entry: FibrationEntry, msg: ChannelMessage, n_max: int, max_letters: int
) -> ScanRow:
    start = time.perf_counter()
    recovered = None
    reason = None
    try:
        if entry.full_data is not None and fiber_members(entry, msg, max_letters=max_letters):
            recovered = bob_recover(entry, msg, n_max, max_letters=max_letters).N
    except RecoveryFailureError:
        pass
    except BudgetExceededError as e:
        reason = e.reason_line
        logger.debug(f"Scan of {entry.phi} stopped: {reason}")
    elapsed = (time.perf_counter() - start) * 1000
    return ScanRow(
        a=entry.phi.a,
        b=entry.phi.b,
        recovered_N=recovered,
        success=recovered is not None,
        reason=reason,
        ms=elapsed,
    )


def eavesdrop_scan(
    msg: ChannelMessage,
    db: FibrationDatabase,
    n_max: int = DEFAULT_N_MAX,
    *,
    workers: int = 1,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> list[ScanRow]:
    """
    One row per database entry, in database order.

    Entries are filtered by the exponent-sum test; those with full data and
    fiber members get Bob's recovery. Failures are rows, never exceptions.
    """
    msg = msg.public_view()
    entries = list(db)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda e: _scan_entry(e, msg, n_max, max_letters), entries))
    else:
        rows = [_scan_entry(e, msg, n_max, max_letters) for e in entries]
    hits = [row for row in rows if row.success]
    logger.debug(f"Scanned {len(rows)} classes, {len(hits)} recoveries")
    return rows


def successes(rows: Iterable[ScanRow]) -> list[ScanRow]:
    return [row for row in rows if row.success]


def scan_timing(
    msg: ChannelMessage,
    db_sizes: Sequence[int],
    n_max: int = DEFAULT_N_MAX,
    *,
    workers: int = 1,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> list[TimingRow]:
    """Wall-clock cost of a full scan against generated databases of each size."""
    rows = []
    for size in db_sizes:
        db = generate_sized_db(size)
        start = time.perf_counter()
        eavesdrop_scan(msg, db, n_max, workers=workers, max_letters=max_letters)
        rows.append(TimingRow(size=size, ms=(time.perf_counter() - start) * 1000))
    return rows


# ============================================================================
# Distortion
# ============================================================================

def growth_ratios(
    automorphism: FreeAutomorphism,
    generator: str,
    n_max: int,
    *,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> list[float]:
    """|a^(n+1)(s)| / |a^n(s)| for n = 0 .. n_max-1."""
    ratios = []
    previous = None
    for n, image in enumerate(automorphism.iterate(
        Word.generator(automorphism.alphabet, generator), max_letters=max_letters
    )):
        if previous is not None:
            ratios.append(image.length() / previous)
        if n == n_max:
            break
        previous = image.length()
    return ratios


def distortion_report(
    entry: FibrationEntry,
    n_max: int,
    *,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> DistortionReport:
    """
    Exact l(N) = max_s |psi^N(s)| for N = 0..n_max against stretch^N.

    A budget overrun ends the table early and is reported, not raised.
    """
    automorphism = entry_automorphism(entry)
    longest_generator = max(len(w.code) for w in generator_words(entry).values())
    stable_length = len(stable_word(entry).code)
    codes = [Word.generator(automorphism.alphabet, s).code for s in automorphism.alphabet]

    rows: list[DistortionRow] = []
    previous = None
    for n in range(n_max + 1):
        if n:
            try:
                codes = [automorphism.apply_code(c, max_letters=max_letters) for c in codes]
            except BudgetExceededError as e:
                return DistortionReport(rows=tuple(rows), truncated=True, reason=e.reason_line)
        length = max(len(c) for c in codes)
        rows.append(DistortionRow(
            N=n,
            length=length,
            ratio=None if previous is None else length / previous,
            predicted=entry.stretch ** n,
            raw_length=longest_generator + 2 * n * stable_length,
        ))
        previous = length
    return DistortionReport(rows=tuple(rows))


# ============================================================================
# Membership benchmark
# ============================================================================

def membership_bench(
    lengths: Sequence[int], *, seed: int = 0, repeats: int = 3
) -> list[TimingRow]:
    """Best-of-``repeats`` time of evaluate_class over a random raw word of each length."""
    phi = CANONICAL_CLASS
    rng = random.Random(seed)
    letters = range(2 * len(TORUS_ALPHABET))
    rows = []
    for length in lengths:
        if length < 0:
            raise FibernormValidationError(f"lengths must be nonnegative, got {length}")
        word = Word(TORUS_ALPHABET, bytes(rng.choices(letters, k=length)))
        best = float("inf")
        for _ in range(max(1, repeats)):
            start = time.perf_counter_ns()
            CANONICAL_TORUS.evaluate_class(phi, word)
            best = min(best, time.perf_counter_ns() - start)
        rows.append(TimingRow(size=length, ms=max(best, 1) / 1e6))
    return rows


def linear_fit(rows: Sequence[TimingRow]) -> LinearFit:
    """Least-squares ms ~ size with its coefficient of determination."""
    if len(rows) < 2:
        raise FibernormValidationError("A linear fit needs at least two rows")
    sizes = [float(row.size) for row in rows]
    times = [row.ms for row in rows]
    try:
        slope, intercept = statistics.linear_regression(sizes, times)
    except statistics.StatisticsError as e:
        raise FibernormValidationError(f"Cannot fit timings: {e}") from e
    try:
        r = statistics.correlation(sizes, times)
    except statistics.StatisticsError:
        # constant timings
        r = 0.0
    return LinearFit(slope=slope, intercept=intercept, r_squared=r * r)


# ============================================================================
# CSV
# ============================================================================

def write_csv(rows: Iterable[dict], path: str | Path, fieldnames: Sequence[str]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(fieldnames), extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def distortion_csv_rows(report: DistortionReport) -> list[dict]:
    return [
        {**row.model_dump(), "ratio": "" if row.ratio is None else f"{row.ratio:.6f}"}
        for row in report.rows
    ]


def scan_csv_rows(rows: Iterable[ScanRow]) -> list[dict]:
    return [
        {
            **row.model_dump(),
            "recovered_N": "" if row.recovered_N is None else row.recovered_N,
            "success": str(row.success).lower(),
            "ms": f"{row.ms:.3f}",
        }
        for row in rows
    ]
