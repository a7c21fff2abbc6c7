"""
Simplicial cones, their polar matrix, and mixed-basis coefficient solves.

K = cone{e_1, ..., e_n} with E = [e_1 ... e_n] invertible. Its polar cone is
generated by the columns of U = -(E^{-1})^T, so e_i^T u_j = -delta_ij. For any
index set I the vectors {e_i : i in I} and {u_j : j not in I} form a basis, and
because e_i^T u_j = 0 across the two groups the coefficients of x in that
basis come from two independent Gram systems:

    x^T e_l = sum_{i in I} alpha_i e_i^T e_l,   l in I
    x^T u_k = sum_{j in I^c} beta_j u_j^T u_k,  k in I^c

No printing, no file I/O. A constructed cone is immutable and may be shared
between threads and processes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NonFinite, SingularGenerators, SolveFailure
from .index_set import IndexSet
from .tolerances import get_tolerances, scaled_tol

logger = logging.getLogger(__name__)

_TOL = get_tolerances()


class Membership(str, Enum):
    """Where a point sits relative to K and its polar."""

    IN_CONE = "InCone"
    IN_POLAR = "InPolar"
    OUTSIDE = "Outside"
    ZERO = "Zero"


@dataclass(frozen=True, eq=False)
class SimplicialCone:
    """Generators, polar generators and cached Gram matrices of K."""

    dim: int
    generators: np.ndarray
    polar_generators: np.ndarray
    gram_E: np.ndarray
    gram_U: np.ndarray
    subdual: bool
    rcond: float

    def generator(self, i: int) -> np.ndarray:
        """Column e_i (0-based)."""
        return self.generators[:, i]

    def polar_generator(self, j: int) -> np.ndarray:
        """Column u_j (0-based)."""
        return self.polar_generators[:, j]

    def __repr__(self) -> str:
        return f"SimplicialCone(dim={self.dim}, subdual={self.subdual}, rcond={self.rcond:.3g})"


@dataclass(frozen=True, eq=False)
class MixedCoefficients:
    """
    Coefficients of x in the mixed basis selected by index_set.

    alpha is aligned with index_set.members, beta with
    index_set.complement_members.
    """

    index_set: IndexSet
    alpha: np.ndarray
    beta: np.ndarray

    @property
    def alpha_map(self) -> Dict[int, float]:
        return {i: float(a) for i, a in zip(self.index_set.members, self.alpha)}

    @property
    def beta_map(self) -> Dict[int, float]:
        return {j: float(b) for j, b in zip(self.index_set.complement_members, self.beta)}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def build_cone(generators, tol: Optional[float] = None) -> SimplicialCone:
    """
    Build a simplicial cone from an n x n generator matrix (columns e_i).

    Args:
        generators: square matrix whose columns are the generators
        tol: construction tolerance for ||E^T U + I||_max (default 1e-8)

    Returns:
        SimplicialCone with polar matrix and Gram data precomputed

    Raises:
        NonFinite: If any entry is NaN or Inf
        DimensionMismatch: If the matrix is not square
        SingularGenerators: If E is not invertible to working precision
    """
    if tol is None:
        tol = _TOL["construction"]

    E = np.asarray(generators, dtype=float)
    if E.ndim == 1 and E.size == 1:
        E = E.reshape(1, 1)
    if E.ndim != 2 or E.shape[0] != E.shape[1] or E.shape[0] == 0:
        raise DimensionMismatch(f"generator matrix must be square and non-empty, got shape {E.shape}")
    if not np.all(np.isfinite(E)):
        raise NonFinite("generator matrix contains NaN or Inf entries")

    n = E.shape[0]
    singular_values = scipy.linalg.svdvals(E)
    rcond = float(singular_values[-1] / singular_values[0]) if singular_values[0] > 0 else 0.0
    if rcond < _TOL["rcond"]:
        raise SingularGenerators(
            f"generators are linearly dependent to working precision (rcond={rcond:.3g})"
        )

    # E^T U = -I  <=>  U = -(E^{-1})^T
    U = scipy.linalg.solve(E.T, -np.eye(n))
    residual = float(np.max(np.abs(E.T @ U + np.eye(n))))
    if residual > tol:
        raise SingularGenerators(
            f"polar matrix residual {residual:.3g} exceeds construction tolerance {tol:.3g}"
        )

    gram_E = E.T @ E
    gram_U = U.T @ U
    # symmetrize away round-off so principal submatrices factor cleanly
    gram_E = 0.5 * (gram_E + gram_E.T)
    gram_U = 0.5 * (gram_U + gram_U.T)

    return SimplicialCone(
        dim=n,
        generators=_frozen(E),
        polar_generators=_frozen(U),
        gram_E=_frozen(gram_E),
        gram_U=_frozen(gram_U),
        subdual=bool(np.all(gram_E >= 0.0)),
        rcond=rcond,
    )


def polar_cone(cone: SimplicialCone) -> SimplicialCone:
    """The polar cone K° as a simplicial cone in its own right."""
    return build_cone(cone.polar_generators)


def check_vector(cone: SimplicialCone, x) -> np.ndarray:
    """Validate x against the cone dimension and return it as a float array."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != cone.dim:
        raise DimensionMismatch(f"vector has {v.shape[0]} entries, cone dimension is {cone.dim}")
    if not np.all(np.isfinite(v)):
        raise NonFinite("vector contains NaN or Inf entries")
    return v


def membership(cone: SimplicialCone, x, tol: Optional[float] = None) -> Membership:
    """
    Classify x against K and K°.

    x is in K° when e_i^T x <= tol for every i, and in K when u_j^T x <= tol
    for every j. Both at once means x is (numerically) the apex.
    """
    v = check_vector(cone, x)
    if tol is None:
        tol = scaled_tol(_TOL["sign"], v)

    in_polar = bool(np.all(cone.generators.T @ v <= tol))
    in_cone = bool(np.all(cone.polar_generators.T @ v <= tol))
    if in_polar and in_cone:
        return Membership.ZERO
    if in_polar:
        return Membership.IN_POLAR
    if in_cone:
        return Membership.IN_CONE
    return Membership.OUTSIDE


def _gram_solver(gram: np.ndarray, label: str) -> Callable[[np.ndarray], np.ndarray]:
    """Factor a Gram submatrix once; the returned callable solves against it."""
    try:
        factor = scipy.linalg.cho_factor(gram, check_finite=False)
    except np.linalg.LinAlgError:
        logger.warning(
            "Cholesky factorization of the %s Gram submatrix (size %d) failed, "
            "falling back to a general solve",
            label,
            gram.shape[0],
        )
    else:
        return partial(scipy.linalg.cho_solve, factor, check_finite=False)

    def _general(rhs: np.ndarray) -> np.ndarray:
        try:
            return scipy.linalg.solve(gram, rhs, assume_a="sym")
        except np.linalg.LinAlgError as exc:
            raise SolveFailure(f"{label} Gram system of size {gram.shape[0]} is singular: {exc}") from exc

    return _general


def _alpha_system(cone: SimplicialCone, index_set: IndexSet) -> Tuple[np.ndarray, Callable[[np.ndarray], np.ndarray]]:
    idx = index_set.members
    return cone.generators[:, idx], _gram_solver(cone.gram_E[np.ix_(idx, idx)], "generator")


def _beta_system(cone: SimplicialCone, index_set: IndexSet) -> Tuple[np.ndarray, Callable[[np.ndarray], np.ndarray]]:
    idx = index_set.complement_members
    return cone.polar_generators[:, idx], _gram_solver(cone.gram_U[np.ix_(idx, idx)], "polar")


def solve_alpha(cone: SimplicialCone, index_set: IndexSet, x) -> np.ndarray:
    """
    Coefficients alpha_i (i in I, aligned with index_set.members).

    Raises:
        ValueError: If I is empty
        SolveFailure: If the Gram submatrix cannot be factored
    """
    v = check_vector(cone, x)
    if not index_set.members:
        raise ValueError("solve_alpha needs a nonempty index set")
    basis, solve = _alpha_system(cone, index_set)
    return solve(basis.T @ v)


def solve_beta(cone: SimplicialCone, index_set: IndexSet, x) -> np.ndarray:
    """
    Coefficients beta_j (j in I^c, aligned with index_set.complement_members).

    Raises:
        ValueError: If I^c is empty
        SolveFailure: If the Gram submatrix cannot be factored
    """
    v = check_vector(cone, x)
    if not index_set.complement_members:
        raise ValueError("solve_beta needs a nonempty complement")
    basis, solve = _beta_system(cone, index_set)
    return solve(basis.T @ v)


def decompose(cone: SimplicialCone, index_set: IndexSet, x) -> MixedCoefficients:
    """
    Both coefficient groups of x in the mixed basis selected by I.

    The Gram route squares the condition number of the basis, so the first
    solve is followed by a few steps of iterative refinement: the residual
    r = x - reconstruct(...) is decomposed with the same factors and added
    back. The residual of a mixed-basis vector splits the same way x does.
    """
    v = check_vector(cone, x)
    if index_set.dim != cone.dim:
        raise DimensionMismatch(f"index set has dim {index_set.dim}, cone dimension is {cone.dim}")
    E_I, solve_E = _alpha_system(cone, index_set) if index_set.members else (None, None)
    U_J, solve_U = _beta_system(cone, index_set) if index_set.complement_members else (None, None)

    def _coefficients(r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        alpha = solve_E(E_I.T @ r) if solve_E is not None else np.zeros(0)
        beta = solve_U(U_J.T @ r) if solve_U is not None else np.zeros(0)
        return alpha, beta

    alpha, beta = _coefficients(v)
    floor = scaled_tol(_TOL["refinement"], v)
    for _ in range(int(_TOL["refinement_steps"])):
        residual = v - _combine(cone, index_set, alpha, beta)
        if np.linalg.norm(residual) <= floor:
            break
        d_alpha, d_beta = _coefficients(residual)
        alpha = alpha + d_alpha
        beta = beta + d_beta
    return MixedCoefficients(index_set=index_set, alpha=alpha, beta=beta)


def _combine(cone: SimplicialCone, index_set: IndexSet, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    return (
        cone.generators[:, index_set.members] @ alpha
        + cone.polar_generators[:, index_set.complement_members] @ beta
    )


def reconstruct(cone: SimplicialCone, coeffs: MixedCoefficients) -> np.ndarray:
    """sum alpha_i e_i + sum beta_j u_j."""
    return _combine(cone, coeffs.index_set, coeffs.alpha, coeffs.beta)


def face_projection(cone: SimplicialCone, coeffs: MixedCoefficients) -> Tuple[np.ndarray, np.ndarray]:
    """
    Projections onto K and K° read off nonnegative coefficients.

    Coefficients inside the tolerance band below zero are clamped to 0 so the
    returned points never sit microscopically outside the cones.
    """
    I = coeffs.index_set
    p = cone.generators[:, I.members] @ np.maximum(coeffs.alpha, 0.0)
    q = cone.polar_generators[:, I.complement_members] @ np.maximum(coeffs.beta, 0.0)
    return p, q


__all__ = [
    "Membership",
    "SimplicialCone",
    "MixedCoefficients",
    "build_cone",
    "polar_cone",
    "check_vector",
    "membership",
    "solve_alpha",
    "solve_beta",
    "decompose",
    "reconstruct",
    "face_projection",
]
