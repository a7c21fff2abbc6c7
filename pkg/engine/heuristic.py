"""
Heuristic swap iteration for projection onto a simplicial cone.

Start from a mixed basis (by default all generators, I = N), write x in it,
and swap every basis vector whose coefficient is negative: u_j becomes e_j
when beta_j < 0, e_i becomes u_i when alpha_i < 0. Repeat until all
coefficients are nonnegative; at that point the representation is the
Moreau decomposition and the answer is exact. Revisiting an index set means
the iteration is cycling: the run is aborted, or restarted from a random
index set when restarts are enabled.

Each call is pure; all randomness comes from config.restart_seed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .cone import (
    Membership,
    MixedCoefficients,
    SimplicialCone,
    check_vector,
    decompose,
    face_projection,
    membership,
    reconstruct,
)
from .errors import SolveFailure
from .index_set import IndexSet
from .tolerances import get_tolerances, scaled_tol
from .verification import moreau_check

logger = logging.getLogger(__name__)

_TOL = get_tolerances()


class Status(str, Enum):
    CONVERGED = "Converged"
    LOOP_ABORTED = "LoopAborted"
    BUDGET_EXHAUSTED = "IterationBudgetExhausted"
    # not returned by heuristic_project, which raises SolveFailure instead
    SOLVE_FAILED = "SolveFailed"


class StartPolicy(str, Enum):
    ALL = "all"
    RANDOM = "random"
    CUSTOM = "custom"


class HeuristicConfig(BaseModel):
    """Knobs of one heuristic run. Defaults match the Monte Carlo experiments."""

    sign_tol: float = Field(default=_TOL["sign"], ge=0.0, description="Negativity threshold")
    relative_tol: bool = Field(default=True, description="Scale sign_tol by (1 + ||x||)")
    max_iterations: int = Field(default=int(_TOL["max_iterations"]), ge=1)
    max_restarts: int = Field(default=0, ge=0)
    restart_seed: int = Field(default=0, ge=0)
    initial_set: StartPolicy = Field(default=StartPolicy.ALL)
    custom_set: Optional[List[int]] = Field(default=None, description="1-based members for CUSTOM start")

    @field_validator("custom_set")
    @classmethod
    def _positive_members(cls, v):
        if v is not None and any(k < 1 for k in v):
            raise ValueError(f"custom_set members are 1-based, got {v}")
        return v

    @model_validator(mode="after")
    def _custom_needs_members(self) -> "HeuristicConfig":
        if self.initial_set is StartPolicy.CUSTOM and self.custom_set is None:
            raise ValueError("initial_set=custom requires custom_set")
        return self

    def tolerance_for(self, x: np.ndarray) -> float:
        return scaled_tol(self.sign_tol, x) if self.relative_tol else float(self.sign_tol)


class RunStats(BaseModel):
    """Per-run counters that feed the per-size aggregates."""

    iterations: int = Field(default=0, ge=0)
    total_changes: int = Field(default=0, ge=0)
    changes_per_iteration: List[int] = Field(default_factory=list)
    increase_iterations: int = Field(default=0, ge=0)
    loop_detected: bool = False
    restarts_used: int = Field(default=0, ge=0)
    shortcut: Optional[Membership] = None

    @model_validator(mode="after")
    def _consistent(self) -> "RunStats":
        if self.total_changes != sum(self.changes_per_iteration):
            raise ValueError("total_changes must equal sum(changes_per_iteration)")
        if self.iterations != len(self.changes_per_iteration):
            raise ValueError("iterations must equal len(changes_per_iteration)")
        if self.increase_iterations > max(self.iterations - 1, 0):
            raise ValueError("increase_iterations cannot exceed iterations - 1")
        if self.shortcut is not None and (self.iterations or self.total_changes):
            raise ValueError("shortcut runs perform no iterations")
        return self

    @property
    def swap_iterations(self) -> int:
        """
        Iterations that swapped at least one index.

        A converged run ends with one round that finds nothing to swap and
        only certifies the answer; this count leaves that round out.
        """
        return sum(1 for c in self.changes_per_iteration if c > 0)

    @classmethod
    def from_changes(
        cls,
        changes: List[int],
        loop_detected: bool = False,
        restarts_used: int = 0,
    ) -> "RunStats":
        increases = sum(1 for prev, cur in zip(changes, changes[1:]) if cur > prev)
        return cls(
            iterations=len(changes),
            total_changes=sum(changes),
            changes_per_iteration=list(changes),
            increase_iterations=increases,
            loop_detected=loop_detected,
            restarts_used=restarts_used,
        )


@dataclass(frozen=True, eq=False)
class HeuristicResult:
    projection: np.ndarray
    polar_projection: np.ndarray
    final_set: IndexSet
    stats: RunStats
    status: Status
    trace: List[IndexSet] = field(default_factory=list)


def heuristic_iterate(
    cone: SimplicialCone,
    index_set: IndexSet,
    x,
    sign_tol: float,
) -> Tuple[IndexSet, MixedCoefficients, int]:
    """
    One iteration: decompose x in the current basis and swap every index
    with a coefficient below -sign_tol, all at once.

    Returns:
        (next index set, coefficients for the current set, number of swaps)
    """
    coeffs = decompose(cone, index_set, x)
    leaving = [i for i, a in zip(index_set.members, coeffs.alpha) if a < -sign_tol]
    entering = [j for j, b in zip(index_set.complement_members, coeffs.beta) if b < -sign_tol]
    swaps = len(leaving) + len(entering)
    next_set = index_set.swap(add=entering, remove=leaving) if swaps else index_set
    return next_set, coeffs, swaps


def _initial_set(cone: SimplicialCone, config: HeuristicConfig, rng: np.random.Generator) -> IndexSet:
    if config.initial_set is StartPolicy.RANDOM:
        return IndexSet.random(cone.dim, rng)
    if config.initial_set is StartPolicy.CUSTOM:
        return IndexSet.from_one_based(cone.dim, config.custom_set)
    return IndexSet.full(cone.dim)


def _shortcut(cone: SimplicialCone, v: np.ndarray, where: Membership) -> HeuristicResult:
    zero = np.zeros(cone.dim)
    if where is Membership.IN_POLAR:
        return HeuristicResult(
            projection=zero,
            polar_projection=v.copy(),
            final_set=IndexSet.empty(cone.dim),
            stats=RunStats(shortcut=Membership.IN_POLAR),
            status=Status.CONVERGED,
        )
    # InCone, and the apex which is in both
    return HeuristicResult(
        projection=v.copy(),
        polar_projection=zero,
        final_set=IndexSet.full(cone.dim),
        stats=RunStats(shortcut=Membership.IN_CONE),
        status=Status.CONVERGED,
    )


def heuristic_project(
    cone: SimplicialCone,
    x,
    config: Optional[HeuristicConfig] = None,
) -> HeuristicResult:
    """
    Project x onto K with the swap heuristic.

    Membership shortcuts are tried first (x in K° gives 0, x in K gives x) and
    count as zero iterations. Otherwise the swap iteration runs until no
    coefficient is negative (Converged), an index set repeats with no restarts
    left (LoopAborted), or the iteration budget runs out.

    Raises:
        SolveFailure: If a Gram system fails, or a converged representation
            does not reconstruct x
    """
    if config is None:
        config = HeuristicConfig()
    v = check_vector(cone, x)
    tol = config.tolerance_for(v)

    where = membership(cone, v, tol)
    if where is not Membership.OUTSIDE:
        logger.debug("shortcut %s", where.value)
        return _shortcut(cone, v, where)

    rng = np.random.default_rng(config.restart_seed)
    current = _initial_set(cone, config, rng)
    visited = {current}
    trace = [current]
    changes: List[int] = []
    restarts = 0
    coeffs = None

    while len(changes) < config.max_iterations:
        next_set, coeffs, swaps = heuristic_iterate(cone, current, v, tol)
        changes.append(swaps)
        logger.debug("iteration %d: %s -> %s (%d swaps)", len(changes), current, next_set, swaps)

        if swaps == 0:
            residual = float(np.linalg.norm(reconstruct(cone, coeffs) - v))
            if residual > scaled_tol(_TOL["certificate"], v):
                raise SolveFailure(
                    f"converged representation misses x by {residual:.3g}; Gram solves are unreliable"
                )
            p, q = face_projection(cone, coeffs)
            return HeuristicResult(
                projection=p,
                polar_projection=q,
                final_set=current,
                stats=RunStats.from_changes(changes, restarts_used=restarts),
                status=Status.CONVERGED,
                trace=trace,
            )

        if next_set in visited:
            if restarts < config.max_restarts:
                restarts += 1
                current = IndexSet.random(cone.dim, rng)
                visited = {current}
                trace.append(current)
                logger.debug("loop at %s, restart %d from %s", next_set, restarts, current)
                continue
            logger.debug("loop at %s after %d iterations", next_set, len(changes))
            p, q = face_projection(cone, coeffs)
            return HeuristicResult(
                projection=p,
                polar_projection=q,
                final_set=coeffs.index_set,
                stats=RunStats.from_changes(changes, loop_detected=True, restarts_used=restarts),
                status=Status.LOOP_ABORTED,
                trace=trace,
            )

        visited.add(next_set)
        trace.append(next_set)
        current = next_set

    logger.debug("iteration budget of %d exhausted", config.max_iterations)
    p, q = face_projection(cone, coeffs)
    return HeuristicResult(
        projection=p,
        polar_projection=q,
        final_set=coeffs.index_set,
        stats=RunStats.from_changes(changes, restarts_used=restarts),
        status=Status.BUDGET_EXHAUSTED,
        trace=trace,
    )


def certify(cone: SimplicialCone, result: HeuristicResult, x, tol: Optional[float] = None) -> bool:
    """True iff the result converged and passes the Moreau certificate."""
    if result.status is not Status.CONVERGED:
        return False
    return moreau_check(cone, x, result.projection, tol).passed


__all__ = [
    "Status",
    "StartPolicy",
    "HeuristicConfig",
    "RunStats",
    "HeuristicResult",
    "heuristic_iterate",
    "heuristic_project",
    "certify",
]
