"""
Monte Carlo evaluation of the heuristic projection.

Random cones and points are drawn per dimension, each trial is projected
with the heuristic, and the per-trial counters are pooled into one
SizeAggregate per dimension (mean changes, mean iterations, share of
iterations where the number of changes grew, loop rate).

Seeding: every trial owns a SeedSequence keyed by (master_seed, n,
trial_index), so a trial's cone, point and restart stream do not depend on
which worker ran it or in what order. Consumes /engine through its package
surface only.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from engine import (
    GenerationFailure,
    HeuristicResult,
    RunStats,
    SimplicialCone,
    SingularGenerators,
    SolveFailure,
    Status,
    build_cone,
    compare_projections,
    exact_project,
    get_tolerances,
    heuristic_project,
    moreau_check,
)
from probabilistic.schemas import (
    Distribution,
    ExperimentConfig,
    ExperimentReport,
    OracleSweepResult,
    PointDistribution,
    SizeAggregate,
    TrialRecord,
)

logger = logging.getLogger(__name__)

_TOL = get_tolerances()

Z_95 = 1.96

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]


def _draw_matrix(rng: np.random.Generator, n: int, distribution: Distribution) -> np.ndarray:
    if distribution is Distribution.UNIFORM:
        return rng.uniform(-1.0, 1.0, size=(n, n))
    return rng.standard_normal((n, n))


def random_cone(n: int, distribution: Distribution, seed: SeedLike) -> SimplicialCone:
    """
    Draw an n x n generator matrix entrywise i.i.d. and build its cone.

    Singular draws are replaced by fresh ones, at most 100 attempts.

    Raises:
        ValueError: If n < 1
        GenerationFailure: If every draw was singular
    """
    if n < 1:
        raise ValueError(f"cone dimension must be positive, got {n}")
    distribution = Distribution(distribution)
    rng = np.random.default_rng(seed)
    max_draws = int(_TOL["max_draws"])
    for attempt in range(1, max_draws + 1):
        try:
            return build_cone(_draw_matrix(rng, n, distribution))
        except SingularGenerators as exc:
            logger.warning("random cone draw %d (n=%d) rejected: %s", attempt, n, exc)
    raise GenerationFailure(f"{max_draws} consecutive singular draws for n={n}")


def random_point(n: int, distribution: PointDistribution, seed: SeedLike) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n)


def trial_seed(master_seed: int, n: int, trial_index: int) -> np.random.SeedSequence:
    """Independent seed stream for one trial, keyed by (master_seed, n, trial_index)."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(n, trial_index))


def sample_instance(n: int, trial_index: int, config: ExperimentConfig) -> Tuple[SimplicialCone, np.ndarray, int]:
    """Cone, point and restart seed of one trial."""
    cone_seq, point_seq, restart_seq = trial_seed(config.master_seed, n, trial_index).spawn(3)
    cone = random_cone(n, config.generator_distribution, cone_seq)
    x = random_point(n, config.point_distribution, point_seq)
    restart_seed = int(restart_seq.generate_state(1)[0])
    return cone, x, restart_seed


def _project_trial(n: int, trial_index: int, config: ExperimentConfig) -> Tuple[SimplicialCone, np.ndarray, HeuristicResult]:
    cone, x, restart_seed = sample_instance(n, trial_index, config)
    heuristic = config.heuristic.model_copy(update={"restart_seed": restart_seed})
    return cone, x, heuristic_project(cone, x, heuristic)


def run_trial(n: int, trial_index: int, config: ExperimentConfig) -> RunStats:
    """Stats of one deterministic trial."""
    return _project_trial(n, trial_index, config)[2].stats


def run_trial_record(trial_index: int, n: int, config: ExperimentConfig) -> TrialRecord:
    """
    Detail row of one trial (trial_index first so it maps over a pool).

    The iterations column counts swapping iterations only, see
    RunStats.swap_iterations. A trial whose Gram solves fail is recorded with
    status SolveFailed instead of aborting the sweep.
    """
    try:
        result = _project_trial(n, trial_index, config)[2]
    except SolveFailure as exc:
        logger.warning("trial %d (n=%d) failed: %s", trial_index, n, exc)
        return TrialRecord(
            size=n,
            trial_index=trial_index,
            iterations=0,
            total_changes=0,
            increase_iterations=0,
            loop_detected=False,
            status=Status.SOLVE_FAILED,
        )
    if result.status is Status.BUDGET_EXHAUSTED:
        logger.warning("trial %d (n=%d) exhausted its iteration budget", trial_index, n)
    stats = result.stats
    return TrialRecord(
        size=n,
        trial_index=trial_index,
        iterations=stats.swap_iterations,
        total_changes=stats.total_changes,
        increase_iterations=stats.increase_iterations,
        loop_detected=stats.loop_detected,
        status=result.status,
    )


def _mean_ci(values: np.ndarray) -> Tuple[float, float]:
    if values.size == 0:
        return 0.0, 0.0
    mean = float(np.mean(values))
    if values.size < 2:
        return mean, 0.0
    return mean, float(Z_95 * np.std(values, ddof=1) / np.sqrt(values.size))


def aggregate_size(size: int, records: Iterable[TrialRecord]) -> SizeAggregate:
    """
    Pool the trials of one dimension.

    Only converged trials enter the averages; loop-aborted, budget-exhausted
    and solve-failed trials are left out. The increase share is pooled over
    all swapping iterations of the included trials.
    """
    records = [r for r in records if r.size == size]
    if not records:
        raise ValueError(f"no trial records for size {size}")
    included = [r for r in records if r.status == Status.CONVERGED]
    loops = sum(1 for r in records if r.loop_detected)

    changes = np.array([r.total_changes for r in included], dtype=float)
    iterations = np.array([r.iterations for r in included], dtype=float)
    mean_changes, ci_changes = _mean_ci(changes)
    mean_iterations, ci_iterations = _mean_ci(iterations)

    total_iterations = int(iterations.sum())
    if total_iterations > 0:
        share = sum(r.increase_iterations for r in included) / total_iterations
        pct_increase = 100.0 * share
        ci_increase = 100.0 * Z_95 * float(np.sqrt(share * (1.0 - share) / total_iterations))
    else:
        pct_increase, ci_increase = 0.0, 0.0

    return SizeAggregate(
        size=size,
        trials=len(records),
        mean_changes=mean_changes,
        ci_changes=ci_changes,
        mean_iterations=mean_iterations,
        ci_iterations=ci_iterations,
        pct_increase=pct_increase,
        ci_increase=ci_increase,
        pct_loops=100.0 * loops / len(records),
        max_iterations=int(iterations.max()) if iterations.size else 0,
        excluded_loops=loops,
    )


def aggregate(records: Iterable[TrialRecord]) -> List[SizeAggregate]:
    """One aggregate per size, in order of first appearance."""
    records = list(records)
    sizes = list(dict.fromkeys(r.size for r in records))
    return [aggregate_size(n, records) for n in sizes]


def _records_for_size(
    n: int,
    config: ExperimentConfig,
    executor: Optional[ProcessPoolExecutor],
    workers: int,
) -> List[TrialRecord]:
    worker = partial(run_trial_record, n=n, config=config)
    indices = range(config.trials_per_size)
    if executor is None:
        return [worker(i) for i in indices]
    chunksize = max(1, config.trials_per_size // (4 * workers))
    # map preserves submission order, so output is independent of scheduling
    return list(executor.map(worker, indices, chunksize=chunksize))


def run_experiment_detailed(config: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    """Run every trial of every size and keep the per-trial records."""
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    records: List[TrialRecord] = []
    aggregates: List[SizeAggregate] = []
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n in config.sizes:
            size_records = _records_for_size(n, config, executor, workers)
            summary = aggregate_size(n, size_records)
            logger.info(
                "n=%d: %d trials, mean iterations %.3f, loops %.3f%%",
                n,
                summary.trials,
                summary.mean_iterations,
                summary.pct_loops,
            )
            records.extend(size_records)
            aggregates.append(summary)
    finally:
        if executor is not None:
            executor.shutdown()
    return ExperimentReport(config=config, aggregates=aggregates, records=records)


def run_experiment(config: ExperimentConfig, workers: int = 1) -> List[SizeAggregate]:
    """Aggregates per size for the configured experiment."""
    return run_experiment_detailed(config, workers).aggregates


def oracle_sweep(n: int, trials: int, config: ExperimentConfig) -> OracleSweepResult:
    """
    Re-check heuristic trials of size n against exact enumeration.

    Every converged trial is certified with the Moreau check and compared to
    exact_project; n must be within the exact enumeration guard.
    """
    converged = certified = matched = loops = 0
    worst = 0.0
    for trial_index in range(trials):
        try:
            cone, x, result = _project_trial(n, trial_index, config)
        except SolveFailure as exc:
            logger.warning("oracle sweep trial %d (n=%d) failed: %s", trial_index, n, exc)
            continue
        if result.stats.loop_detected:
            loops += 1
        if result.status is not Status.CONVERGED:
            continue
        converged += 1
        if moreau_check(cone, x, result.projection).passed:
            certified += 1
        exact = exact_project(cone, x)
        if compare_projections(result.projection, exact.projection, x):
            matched += 1
        deviation = float(np.linalg.norm(result.projection - exact.projection)) / (1.0 + float(np.linalg.norm(x)))
        worst = max(worst, deviation)
    return OracleSweepResult(
        size=n,
        trials=trials,
        converged=converged,
        certified=certified,
        matched_exact=matched,
        loops=loops,
        worst_deviation=worst,
    )
