"""
Finite combinatorial projection onto a simplicial cone.

Every x lies in exactly one sector cone{e_i, u_j : i in I, j in I^c}; the
sector is found by trying index sets I in increasing bit-pattern order and
keeping the first one whose alpha and beta coefficients are nonnegative.
That costs up to 2^n pairs of Gram solves, so the enumeration is guarded by a
dimension limit. On subdual cones only subsets of {i : x^T e_i >= 0} can be
the answer, which prunes the search.

This is the ground-truth oracle for small dimensions. Pure functions only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from .cone import SimplicialCone, check_vector, decompose, face_projection
from .errors import DimensionGuard, NoSectorFound, NotSubdual
from .index_set import IndexSet, all_subsets, subsets_of
from .tolerances import get_tolerances, scaled_tol

logger = logging.getLogger(__name__)

_TOL = get_tolerances()


@dataclass(frozen=True, eq=False)
class ExactResult:
    """Projection, polar projection, sector and enumeration effort."""

    projection: np.ndarray
    polar_projection: np.ndarray
    sector: IndexSet
    subsets_tried: int


def _check_guard(cone: SimplicialCone, max_dim_guard: Optional[int]) -> None:
    guard = _TOL["max_dim_guard"] if max_dim_guard is None else int(max_dim_guard)
    hard = _TOL["hard_dim_guard"]
    if cone.dim > hard:
        raise DimensionGuard(
            f"dimension {cone.dim} exceeds the hard limit {hard} for exact enumeration "
            f"(2^{cone.dim} linear systems)"
        )
    if cone.dim > guard:
        raise DimensionGuard(
            f"dimension {cone.dim} exceeds the guard {guard}; exact enumeration solves "
            f"up to 2^{cone.dim} linear systems (raise the guard to override, max {hard})"
        )


def _passes(coeffs: np.ndarray, bound: float, strict: bool) -> bool:
    if coeffs.size == 0:
        return True
    return bool(np.all(coeffs > bound)) if strict else bool(np.all(coeffs >= -bound))


def _search(
    cone: SimplicialCone,
    x: np.ndarray,
    candidates: Iterable[IndexSet],
    tol: float,
) -> ExactResult:
    tried = 0
    for index_set in candidates:
        tried += 1
        coeffs = decompose(cone, index_set, x)
        if _passes(coeffs.alpha, tol, strict=False) and _passes(coeffs.beta, tol, strict=False):
            p, q = face_projection(cone, coeffs)
            logger.debug("sector %s found after %d subsets", index_set, tried)
            return ExactResult(projection=p, polar_projection=q, sector=index_set, subsets_tried=tried)
    raise NoSectorFound(
        f"no index set among {tried} candidates gave nonnegative coefficients "
        f"(tolerance {tol:.3g}); the tolerance is mis-tuned or the cone is corrupted"
    )


def exact_project(
    cone: SimplicialCone,
    x,
    tol: Optional[float] = None,
    max_dim_guard: Optional[int] = None,
) -> ExactResult:
    """
    Project x onto K by full sector enumeration.

    Args:
        cone: the simplicial cone
        x: point to project
        tol: absolute sign band (default 1e-10 * (1 + ||x||))
        max_dim_guard: enumeration limit (default 15, never above 25)

    Raises:
        DimensionGuard: If n exceeds the guard
        NoSectorFound: If no subset passes
    """
    v = check_vector(cone, x)
    _check_guard(cone, max_dim_guard)
    if tol is None:
        tol = scaled_tol(_TOL["sign"], v)
    return _search(cone, v, all_subsets(cone.dim), tol)


def candidate_pool(cone: SimplicialCone, x, tol: float) -> IndexSet:
    """{i : x^T e_i >= -tol}, the only indices a subdual sector can use."""
    v = check_vector(cone, x)
    return IndexSet.from_members(cone.dim, np.flatnonzero(cone.generators.T @ v >= -tol))


def exact_project_subdual(
    cone: SimplicialCone,
    x,
    tol: Optional[float] = None,
    max_dim_guard: Optional[int] = None,
) -> ExactResult:
    """
    Same contract as exact_project, searching only subsets of the pool
    {i : x^T e_i >= -tol}.

    Raises:
        NotSubdual: If the cone has a negative generator inner product
    """
    if not cone.subdual:
        raise NotSubdual("subdual pruning requires all e_i^T e_j >= 0")
    v = check_vector(cone, x)
    _check_guard(cone, max_dim_guard)
    if tol is None:
        tol = scaled_tol(_TOL["sign"], v)
    pool = candidate_pool(cone, v, tol)
    logger.debug("subdual pool %s (%d of %d indices)", pool, len(pool), cone.dim)
    return _search(cone, v, subsets_of(pool), tol)


def project(
    cone: SimplicialCone,
    x,
    tol: Optional[float] = None,
    max_dim_guard: Optional[int] = None,
) -> ExactResult:
    """Exact projection, pruned automatically on subdual cones."""
    if cone.subdual:
        return exact_project_subdual(cone, x, tol, max_dim_guard)
    return exact_project(cone, x, tol, max_dim_guard)


def passing_sectors(
    cone: SimplicialCone,
    x,
    tol: Optional[float] = None,
    strict: bool = True,
    max_dim_guard: Optional[int] = None,
) -> List[IndexSet]:
    """
    Every index set whose coefficients pass the sign test.

    With strict=True coefficients must exceed +tol, which leaves exactly one
    sector for generic x. With strict=False the usual -tol band applies and
    boundary points may report several sets with the same projection.
    """
    v = check_vector(cone, x)
    _check_guard(cone, max_dim_guard)
    if tol is None:
        tol = scaled_tol(_TOL["sign"], v)
    found = []
    for index_set in all_subsets(cone.dim):
        coeffs = decompose(cone, index_set, v)
        if _passes(coeffs.alpha, tol, strict) and _passes(coeffs.beta, tol, strict):
            found.append(index_set)
    return found


__all__ = [
    "ExactResult",
    "exact_project",
    "exact_project_subdual",
    "candidate_pool",
    "project",
    "passing_sectors",
]
