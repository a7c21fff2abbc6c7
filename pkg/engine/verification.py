"""
Checks that decide whether a candidate projection is the projection.

By Moreau's theorem p = P_K x exactly when p is in K, x - p is in K° and
p^T (x - p) = 0. moreau_check measures all three, and every projection the
engine emits (exact or heuristic) is accepted or rejected by it.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .cone import SimplicialCone, check_vector, solve_alpha
from .exact import exact_project
from .index_set import IndexSet
from .tolerances import get_tolerances, scaled_tol

_TOL = get_tolerances()


class Certificate(BaseModel):
    """Residuals of the Moreau decomposition conditions."""

    cone_residual: float = Field(..., description="max_j u_j^T p (<= tol means p in K)")
    polar_residual: float = Field(..., description="max_i e_i^T (x - p) (<= tol means x - p in K°)")
    orthogonality_residual: float = Field(..., ge=0.0, description="|p^T (x - p)|")
    tol: float = Field(..., ge=0.0, description="Band for the two membership residuals")
    orthogonality_tol: float = Field(..., ge=0.0, description="Band for the orthogonality residual")
    passed: bool

    @model_validator(mode="after")
    def _passed_matches_residuals(self) -> "Certificate":
        expected = (
            self.cone_residual <= self.tol
            and self.polar_residual <= self.tol
            and self.orthogonality_residual <= self.orthogonality_tol
        )
        if self.passed != expected:
            raise ValueError("passed flag disagrees with the residuals")
        return self


def moreau_check(cone: SimplicialCone, x, p, tol: Optional[float] = None) -> Certificate:
    """
    Certify p as the projection of x onto K.

    Args:
        cone: the simplicial cone
        x: original point
        p: candidate projection
        tol: absolute band (default 1e-7 * (1 + ||x||)); the orthogonality
             residual is held to tol * (1 + ||x||^2)

    Raises:
        DimensionMismatch: If x or p has the wrong length
    """
    xv = check_vector(cone, x)
    pv = check_vector(cone, p)
    if tol is None:
        tol = scaled_tol(_TOL["certificate"], xv)
    r = xv - pv

    cone_residual = float(np.max(cone.polar_generators.T @ pv))
    polar_residual = float(np.max(cone.generators.T @ r))
    orthogonality_residual = float(abs(pv @ r))
    orthogonality_tol = float(tol) * (1.0 + float(xv @ xv))

    passed = (
        cone_residual <= tol
        and polar_residual <= tol
        and orthogonality_residual <= orthogonality_tol
    )
    return Certificate(
        cone_residual=cone_residual,
        polar_residual=polar_residual,
        orthogonality_residual=orthogonality_residual,
        tol=float(tol),
        orthogonality_tol=orthogonality_tol,
        passed=passed,
    )


def classify_sector(
    cone: SimplicialCone,
    x,
    tol: Optional[float] = None,
    max_dim_guard: Optional[int] = None,
) -> IndexSet:
    """The index set I whose sector cone{e_i, u_j : i in I, j in I^c} holds x."""
    return exact_project(cone, x, tol=tol, max_dim_guard=max_dim_guard).sector


def compare_projections(p, q, x, tol: Optional[float] = None) -> bool:
    """||p - q|| <= tol * (1 + ||x||)."""
    xv = np.asarray(x, dtype=float)
    bound = scaled_tol(_TOL["certificate"] if tol is None else tol, xv)
    return float(np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float))) <= bound


def face_check(cone: SimplicialCone, index_set: IndexSet, p, tol: Optional[float] = None) -> bool:
    """
    p lies on the face cone{e_i : i in I} and is orthogonal to every u_j, j not in I.
    """
    pv = check_vector(cone, p)
    if tol is None:
        tol = scaled_tol(_TOL["certificate"], pv)
    outside = index_set.complement_members
    if outside and np.max(np.abs(cone.polar_generators[:, outside].T @ pv)) > tol:
        return False
    if len(index_set) == 0:
        return float(np.linalg.norm(pv)) <= tol
    alpha = solve_alpha(cone, index_set, pv)
    if np.any(alpha < -tol):
        return False
    on_face = cone.generators[:, index_set.members] @ alpha
    return float(np.linalg.norm(on_face - pv)) <= tol


__all__ = [
    "Certificate",
    "moreau_check",
    "classify_sector",
    "compare_projections",
    "face_check",
]
