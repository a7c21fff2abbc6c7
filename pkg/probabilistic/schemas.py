"""
Pydantic schemas for the Monte Carlo experiment layer.

These models carry experiment configuration, one record per trial, and one
aggregate row per cone dimension. Field order of TrialRecord and
SizeAggregate is the column order of the detail and summary CSVs.
"""

from __future__ import annotations

from enum import Enum
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from engine import HeuristicConfig, Status


class Distribution(str, Enum):
    """Sampling law for generator matrix entries."""

    STANDARD_NORMAL = "normal"
    UNIFORM = "uniform"  # Uniform(-1, 1)


class PointDistribution(str, Enum):
    STANDARD_NORMAL = "normal"


# Dimensions of the full sweep in run_monte_carlo.py.
SWEEP_SIZES = [2, 3, 5, 10, 15, 20, 25, 30, 50, 75, 100, 200, 300, 500]


class ExperimentConfig(BaseModel):
    """Random cones and points per dimension, and how to project them."""

    sizes: List[int] = Field(..., min_length=1, description="Cone dimensions to sample")
    trials_per_size: int = Field(..., ge=1)
    master_seed: int = Field(default=0, ge=0)
    generator_distribution: Distribution = Field(default=Distribution.STANDARD_NORMAL)
    point_distribution: PointDistribution = Field(default=PointDistribution.STANDARD_NORMAL)
    heuristic: HeuristicConfig = Field(default_factory=HeuristicConfig)

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, v: List[int]) -> List[int]:
        bad = [n for n in v if n < 1]
        if bad:
            raise ValueError(f"sizes must be positive integers, got {bad}")
        return v


class TrialRecord(BaseModel):
    """
    One row of the detail CSV.

    iterations counts the iterations that swapped something; the final
    round of a converged run, which only certifies, is not included.
    """

    model_config = ConfigDict(use_enum_values=True)

    size: int = Field(..., ge=1)
    trial_index: int = Field(..., ge=0)
    iterations: int = Field(..., ge=0)
    total_changes: int = Field(..., ge=0)
    increase_iterations: int = Field(..., ge=0)
    loop_detected: bool
    status: Status


class SizeAggregate(BaseModel):
    """
    One row of the summary CSV.

    Loop-aborted trials count towards pct_loops only; every other statistic
    is taken over converged trials. max_iterations and the increase-share
    denominator use the same swapping-iteration count as TrialRecord.
    """

    size: int = Field(..., ge=1)
    trials: int = Field(..., ge=1)
    mean_changes: float
    ci_changes: float = Field(..., ge=0.0)
    mean_iterations: float
    ci_iterations: float = Field(..., ge=0.0)
    pct_increase: float = Field(..., ge=0.0, le=100.0)
    ci_increase: float = Field(..., ge=0.0)
    pct_loops: float = Field(..., ge=0.0, le=100.0)
    max_iterations: int = Field(..., ge=0)
    excluded_loops: int = Field(..., ge=0)


SUMMARY_COLUMNS = list(SizeAggregate.model_fields)
DETAIL_COLUMNS = list(TrialRecord.model_fields)


class ExperimentReport(BaseModel):
    """Aggregates plus the per-trial records they were computed from."""

    config: ExperimentConfig
    aggregates: List[SizeAggregate]
    records: List[TrialRecord] = Field(default_factory=list)


class OracleSweepResult(BaseModel):
    """Heuristic results re-checked against exact enumeration for one size."""

    size: int
    trials: int
    converged: int
    certified: int
    matched_exact: int
    loops: int
    worst_deviation: float = Field(..., ge=0.0, description="max ||p_heur - p_exact|| / (1 + ||x||)")
