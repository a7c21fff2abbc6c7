"""
Pydantic models for the CLI's JSON documents.

The projection document is the version-locked contract mirrored in
schemas/projection_output.json. Index sets are always 1-based and sorted.
"""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from engine import ExactResult, HeuristicResult, Membership, Status

VERSION = "1.0"


class StatsDocument(BaseModel):
    iterations: int = Field(..., ge=0)
    total_changes: int = Field(..., ge=0)
    changes_per_iteration: List[int]
    increase_iterations: int = Field(..., ge=0)
    loop_detected: bool
    restarts_used: int = Field(..., ge=0)
    shortcut: Optional[Membership] = None


class ProjectionDocument(BaseModel):
    """Output of `project`."""

    model_config = ConfigDict(use_enum_values=True)

    projection: List[float]
    polar_projection: List[float]
    final_set: List[int] = Field(..., description="1-based, sorted")
    status: Status
    stats: StatsDocument
    version: str = VERSION

    @classmethod
    def from_result(cls, result: HeuristicResult) -> "ProjectionDocument":
        return cls(
            projection=[float(v) for v in result.projection],
            polar_projection=[float(v) for v in result.polar_projection],
            final_set=result.final_set.to_one_based(),
            status=result.status,
            stats=StatsDocument(**result.stats.model_dump()),
        )


class OracleDocument(BaseModel):
    """Output of `oracle`."""

    projection: List[float]
    polar_projection: List[float]
    sector: List[int] = Field(..., description="1-based, sorted")
    subsets_tried: int = Field(..., ge=1)
    pruned: bool = Field(..., description="Subdual pruning was applied")
    version: str = VERSION

    @classmethod
    def from_result(cls, result: ExactResult, pruned: bool) -> "OracleDocument":
        return cls(
            projection=[float(v) for v in result.projection],
            polar_projection=[float(v) for v in result.polar_projection],
            sector=result.sector.to_one_based(),
            subsets_tried=result.subsets_tried,
            pruned=pruned,
        )
