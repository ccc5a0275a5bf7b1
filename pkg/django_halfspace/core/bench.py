"""
Benchmark sweeps: every target of a bounded box, run on seeded informants.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import IO, Iterable, List, NamedTuple, Optional, Sequence

from django_halfspace.core.exceptions import HalfspaceError
from django_halfspace.core.harness import CONVERGED, build_learner, run
from django_halfspace.core.lattice import (
    HalfSpace,
    box_points,
    is_primitive,
    lock_count_bound,
)
from django_halfspace.core.streams import PERMUTED, StreamSpec

logger = logging.getLogger(__name__)

COLUMNS = (
    "target",
    "seed",
    "steps_to_converge",
    "lock_count",
    "max_lock_count_bound",
    "status",
)


class BenchCell(NamedTuple):
    target: HalfSpace
    seed: int
    learner: str = "general"
    kind: str = PERMUTED
    max_steps: int = 2000
    window: int = 100


class BenchRow(NamedTuple):
    target: str
    seed: int
    steps_to_converge: Optional[int]
    lock_count: Optional[int]
    max_lock_count_bound: int
    status: str


def targets(dimension: int, coefficient_bound: int, offsets: Sequence[int]):
    """
    Canonical half-spaces with primitive normals in the max-norm box, both
    orientations, for each floor offset.
    """
    for normal in box_points(dimension, coefficient_bound):
        if not is_primitive(normal):
            continue
        for offset in offsets:
            yield HalfSpace(tuple(normal), offset)


def cells(
    dimension: int,
    coefficient_bound: int,
    offsets: Sequence[int],
    seeds: Iterable[int],
    **options,
) -> List[BenchCell]:
    seeds = list(seeds)
    return [
        BenchCell(target, seed, **options)
        for target in targets(dimension, coefficient_bound, offsets)
        for seed in seeds
    ]


def run_cell(cell: BenchCell) -> BenchRow:
    """One sweep row; run errors are recorded in the status column."""
    target = cell.target
    bound = lock_count_bound(target.normal)
    label = target.describe()
    try:
        learner = build_learner(cell.learner, target.dimension)
        spec = StreamSpec(target, cell.kind, cell.seed)
        trace = run(learner, spec, cell.max_steps, cell.window)
    except HalfspaceError as error:
        logger.debug("bench row %s seed %d failed: %s", label, cell.seed, error)
        return BenchRow(label, cell.seed, None, None, bound, f"ERROR:{error}")

    verdict = trace.verdict
    logger.debug("bench row %s seed %d: %s", label, cell.seed, verdict.summary())
    steps = verdict.t if verdict.status == CONVERGED else None
    return BenchRow(label, cell.seed, steps, verdict.locks, bound, verdict.status)


def sweep(bench_cells: Sequence[BenchCell], jobs: int = 1) -> List[BenchRow]:
    """
    Rows come back in cell order whatever the number of worker processes.
    """
    if jobs <= 1 or len(bench_cells) <= 1:
        return [run_cell(cell) for cell in bench_cells]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(run_cell, bench_cells))


def write_csv(rows: Iterable[BenchRow], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(["" if value is None else value for value in row])
