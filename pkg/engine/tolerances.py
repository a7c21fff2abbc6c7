"""
Explicit numerical tolerances.

This file makes every tolerance band and work limit of the engine explicit
and version-locked. Exact arithmetic has no need for them; floating point
does. Changing these values changes which index sets count as "nonnegative".

Critical Design Principle:
    Modules read defaults through get_tolerances() only.
    Do NOT hard-code tolerances elsewhere.

Version: 1.0.0
"""

from typing import Dict, List

import numpy as np


# DEFAULT TOLERANCES
# Relative bands are scaled by (1 + ||x||) at the point of use.
DEFAULT_TOLERANCES = {
    "sign": 1e-10,          # negativity threshold for coefficients and membership
    "construction": 1e-8,   # ||E^T U + I||_max after building the polar matrix
    "rcond": 1e-12,         # reciprocal condition gate for the generators
    "certificate": 1e-7,    # Moreau certificate and oracle agreement
    "refinement": 1e-15,    # residual below which decompose stops refining
    "refinement_steps": 2,  # iterative refinement steps after the first Gram solve
    "max_dim_guard": 15,    # default exact enumeration limit
    "hard_dim_guard": 25,   # enumeration limit even when overridden
    "max_iterations": 100,  # heuristic iteration budget
    "max_draws": 100,       # random cone redraws before giving up
}

STRICT_TOLERANCES = {
    **DEFAULT_TOLERANCES,
    "sign": 1e-12,
}

_PROFILES = {
    "default": DEFAULT_TOLERANCES,
    "strict": STRICT_TOLERANCES,
}


def get_tolerances(profile: str = "default") -> Dict[str, float]:
    """
    Get tolerance configuration for a named profile.

    Args:
        profile: Name of tolerance profile ('default' or 'strict')

    Returns:
        Copy of the tolerance dictionary

    Raises:
        ValueError: If profile is not defined
    """
    if profile not in _PROFILES:
        raise ValueError(
            f"Unknown tolerance profile: {profile}. "
            f"Valid profiles: {', '.join(sorted(_PROFILES))}"
        )
    return dict(_PROFILES[profile])


def scaled_tol(base: float, x: np.ndarray) -> float:
    """Relative band: base * (1 + ||x||)."""
    return float(base) * (1.0 + float(np.linalg.norm(x)))


def profile_names() -> List[str]:
    return sorted(_PROFILES)


__all__ = ["DEFAULT_TOLERANCES", "STRICT_TOLERANCES", "get_tolerances", "profile_names", "scaled_tol"]
