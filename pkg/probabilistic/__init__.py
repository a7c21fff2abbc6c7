"""
Monte Carlo experiments on top of the deterministic projection engine.

Random cones and points per dimension, per-trial heuristic statistics and
their per-dimension aggregates. Consumes /engine through its package
surface; /engine never imports from here.
"""

from probabilistic.monte_carlo import (
    aggregate,
    aggregate_size,
    oracle_sweep,
    random_cone,
    random_point,
    run_experiment,
    run_experiment_detailed,
    run_trial,
    run_trial_record,
    sample_instance,
    trial_seed,
)
from probabilistic.reporting import emit_csv, format_table, read_detail_csv, read_summary_csv
from probabilistic.schemas import (
    SWEEP_SIZES,
    Distribution,
    ExperimentConfig,
    ExperimentReport,
    OracleSweepResult,
    PointDistribution,
    SizeAggregate,
    TrialRecord,
)

__version__ = "1.0.0"
