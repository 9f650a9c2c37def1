"""Empirical scans over Latin squares: (N1) versus loop structure.

The theorem under test: every quasigroup satisfying (N1) is a loop.  A
scan therefore tallies, over every square of a given order, how many
satisfy (N1), how many are loops, and how many do both; the equality
n1_loop_count == n1_count is the verified property.  Any square that
satisfies the identity without being a loop would be a counterexample
and is dumped in full as a Cayley table text file (this is expected to
never happen).

Full scans partition the enumeration tree by first row, so work splits
across processes and reports merge deterministically in lexicographic
first-row order.  A JSON checkpoint file records per-first-row tallies,
letting an interrupted scan resume without recounting.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from multiprocessing import Pool

from .cayley import FiniteQuasigroup, format_table_text
from .identities import builtin_identity, check_identity, parse_identity, pretty
from .latin import (
    FULL_ENUMERATION_LIMIT,
    OrderTooLarge,
    enumerate_with_first_row,
    first_rows,
    sample_latin_squares,
)
from .measures import solve_quasi_invariant

FULL_SCAN_DEFAULT_LIMIT = 5


@dataclass(frozen=True)
class ScanReport:
    order: int
    mode: str
    total_squares: int
    n1_count: int
    n1_loop_count: int
    loop_count: int
    loops_failing_n1: int
    elapsed: float
    identity_name: str
    kunen_holds: bool
    counterexample_files: tuple[str, ...] = ()
    sample_size: int | None = None
    seed: int | None = None
    jobs: int = 1

    def to_dict(self) -> dict:
        return {
            "kind": "kunen-scan",
            "order": self.order,
            "mode": self.mode,
            "total_squares": self.total_squares,
            "n1_count": self.n1_count,
            "n1_loop_count": self.n1_loop_count,
            "loop_count": self.loop_count,
            "loops_failing_n1": self.loops_failing_n1,
            "elapsed": self.elapsed,
            "identity_name": self.identity_name,
            "kunen_holds": self.kunen_holds,
            "counterexample_files": list(self.counterexample_files),
            "sample_size": self.sample_size,
            "seed": self.seed,
            "jobs": self.jobs,
            "sampling_note": (
                "samples are reproducible per seed but not uniformly "
                "distributed over Latin squares"
                if self.mode == "sample"
                else None
            ),
        }


@dataclass(frozen=True)
class ModularScanReport:
    order: int
    mode: str
    total_squares: int
    n1_count: int
    trivial_cocycle_count: int
    all_trivial: bool
    dimension_one_count: int
    elapsed: float
    sample_size: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "modular-scan",
            "order": self.order,
            "mode": self.mode,
            "total_squares": self.total_squares,
            "n1_count": self.n1_count,
            "trivial_cocycle_count": self.trivial_cocycle_count,
            "all_trivial": self.all_trivial,
            "dimension_one_count": self.dimension_one_count,
            "elapsed": self.elapsed,
            "sample_size": self.sample_size,
            "seed": self.seed,
        }


def _check_order(n: int, mode: str, allow_n6: bool):
    if n < 1:
        raise ValueError("order must be >= 1")
    if mode == "full":
        if n > FULL_ENUMERATION_LIMIT:
            raise OrderTooLarge(n, FULL_ENUMERATION_LIMIT)
        if n > FULL_SCAN_DEFAULT_LIMIT and not allow_n6:
            raise OrderTooLarge(n, FULL_SCAN_DEFAULT_LIMIT)


class _Tally:
    __slots__ = ("total", "n1", "loop", "n1_loop", "counterexamples")

    def __init__(self):
        self.total = 0
        self.n1 = 0
        self.loop = 0
        self.n1_loop = 0
        self.counterexamples = []

    def add_square(self, square, identity):
        self.total += 1
        q = FiniteQuasigroup(square)
        n1 = check_identity(q, identity).holds
        loop = q.is_loop()
        if n1:
            self.n1 += 1
        if loop:
            self.loop += 1
        if n1 and loop:
            self.n1_loop += 1
        if n1 and not loop:
            self.counterexamples.append(square)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "n1": self.n1,
            "loop": self.loop,
            "n1_loop": self.n1_loop,
            "counterexamples": [
                [list(row) for row in square] for square in self.counterexamples
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "_Tally":
        t = cls()
        t.total = d["total"]
        t.n1 = d["n1"]
        t.loop = d["loop"]
        t.n1_loop = d["n1_loop"]
        t.counterexamples = [
            tuple(tuple(row) for row in square) for square in d["counterexamples"]
        ]
        return t

    def merge(self, other: "_Tally"):
        self.total += other.total
        self.n1 += other.n1
        self.loop += other.loop
        self.n1_loop += other.n1_loop
        self.counterexamples.extend(other.counterexamples)


def _scan_one_first_row(args) -> dict:
    n, row, identity_text = args
    identity = parse_identity(identity_text)
    tally = _Tally()
    enumerate_with_first_row(n, row, lambda sq: tally.add_square(sq, identity))
    return tally.to_dict()


class _Checkpoint:
    """Per-first-row tallies on disk, keyed by the comma-joined row."""

    def __init__(self, path: str | None, order: int, identity_name: str):
        self.path = path
        self.order = order
        self.identity_name = identity_name
        self.completed: dict[str, dict] = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            if data.get("order") == order and data.get("identity") == identity_name:
                self.completed = data.get("completed", {})

    @staticmethod
    def key(row) -> str:
        return ",".join(str(v) for v in row)

    def record(self, row, tally_dict: dict):
        if self.path is None:
            return
        self.completed[self.key(row)] = tally_dict
        with open(self.path, "w") as fh:
            json.dump(
                {
                    "order": self.order,
                    "identity": self.identity_name,
                    "completed": self.completed,
                },
                fh,
            )


def _dump_counterexamples(squares, order: int, directory: str | None, identity_name: str):
    paths = []
    directory = directory or "."
    os.makedirs(directory, exist_ok=True)
    for i, square in enumerate(squares):
        path = os.path.join(
            directory, f"counterexample_{identity_name}_order{order}_{i}.tbl"
        )
        q = FiniteQuasigroup(square)
        comment = (
            f"satisfies builtin identity {identity_name} but has no "
            "two-sided identity element"
        )
        with open(path, "w") as fh:
            fh.write(format_table_text(q, comment=comment))
        paths.append(path)
    return paths


def kunen_scan(
    n: int,
    mode: str = "full",
    sample_size: int = 1000,
    seed: int = 0,
    allow_n6: bool = False,
    jobs: int = 1,
    checkpoint: str | None = None,
    counterexample_dir: str | None = None,
    identity_name: str = "N1",
) -> ScanReport:
    """Scan all (or sampled) order-n Latin squares for the Kunen property.

    mode "full" enumerates exhaustively (n <= 5 unless allow_n6; n = 6 is
    ~8.1e8 squares).  mode "sample" draws sample_size seeded squares.
    identity_name picks the identity from the builtin catalog, so the
    scan can be repeated with e.g. the classical left Moufang identity.
    """
    _check_order(n, mode, allow_n6)
    identity = builtin_identity(identity_name)
    identity_text = pretty(identity)
    start = time.perf_counter()
    tally = _Tally()

    if mode == "full":
        ckpt = _Checkpoint(checkpoint, n, identity_name)
        rows = list(first_rows(n))
        pending = [r for r in rows if _Checkpoint.key(r) not in ckpt.completed]
        for r in rows:
            key = _Checkpoint.key(r)
            if key in ckpt.completed:
                tally.merge(_Tally.from_dict(ckpt.completed[key]))
        results: dict[tuple, dict] = {}
        if jobs > 1 and pending:
            args = [(n, r, identity_text) for r in pending]
            with Pool(processes=jobs) as pool:
                for r, result in zip(pending, pool.imap(_scan_one_first_row, args)):
                    results[r] = result
        else:
            for r in pending:
                results[r] = _scan_one_first_row((n, r, identity_text))
        # merge in lexicographic first-row order for determinism
        for r in rows:
            if r in results:
                tally.merge(_Tally.from_dict(results[r]))
                ckpt.record(r, results[r])
        report_mode = "full"
        used_sample_size = None
        used_seed = None
    elif mode == "sample":
        for square in sample_latin_squares(n, sample_size, seed):
            tally.add_square(square, identity)
        report_mode = "sample"
        used_sample_size = sample_size
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")

    files = ()
    if tally.counterexamples:
        files = tuple(
            _dump_counterexamples(
                tally.counterexamples, n, counterexample_dir, identity_name
            )
        )
    elapsed = time.perf_counter() - start
    return ScanReport(
        order=n,
        mode=report_mode,
        total_squares=tally.total,
        n1_count=tally.n1,
        n1_loop_count=tally.n1_loop,
        loop_count=tally.loop,
        loops_failing_n1=tally.loop - tally.n1_loop,
        elapsed=elapsed,
        identity_name=identity_name,
        kunen_holds=tally.n1 == tally.n1_loop and not tally.counterexamples,
        counterexample_files=files,
        sample_size=used_sample_size,
        seed=used_seed,
        jobs=jobs,
    )


def modular_scan(
    n: int,
    mode: str = "full",
    sample_size: int = 1000,
    seed: int = 0,
    allow_n6: bool = False,
    identity_name: str = "N1",
) -> ModularScanReport:
    """For each identity-satisfying square, confirm trivial cocycles.

    Runs solve_quasi_invariant on every (N1)-satisfier and records that
    the solved j and rho are identically 1 with a one-dimensional
    invariant measure space: the finite instance of cocycle collapse.
    """
    _check_order(n, mode, allow_n6)
    identity = builtin_identity(identity_name)
    start = time.perf_counter()

    total = 0
    n1_count = 0
    trivial = 0
    dimension_one = 0

    def visit(square):
        nonlocal total, n1_count, trivial, dimension_one
        total += 1
        q = FiniteQuasigroup(square)
        if not check_identity(q, identity).holds:
            return
        n1_count += 1
        solution = solve_quasi_invariant(q)
        if solution.left_cocycle.is_trivial() and solution.right_cocycle.is_trivial():
            trivial += 1
        if solution.dimension == 1:
            dimension_one += 1

    if mode == "full":
        for row in first_rows(n):
            enumerate_with_first_row(n, row, visit)
        used_sample_size = None
        used_seed = None
    elif mode == "sample":
        for square in sample_latin_squares(n, sample_size, seed):
            visit(square)
        used_sample_size = sample_size
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")

    elapsed = time.perf_counter() - start
    return ModularScanReport(
        order=n,
        mode=mode,
        total_squares=total,
        n1_count=n1_count,
        trivial_cocycle_count=trivial,
        all_trivial=trivial == n1_count,
        dimension_one_count=dimension_one,
        elapsed=elapsed,
        sample_size=used_sample_size,
        seed=used_seed,
    )
