"""
Plain-text CSV matrices and vectors.

One row per coordinate, one column per generator, no header. Vectors are a
single column. This is the only place that parses or writes those files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

PathLike = Union[str, Path]


class MatrixFileError(ValueError):
    """A matrix or vector file cannot be read or has the wrong shape."""


def read_matrix(path: PathLike) -> np.ndarray:
    """Read a square CSV matrix."""
    data = _load(path)
    if data.shape[0] != data.shape[1]:
        raise MatrixFileError(f"{path}: expected a square matrix, got {data.shape[0]}x{data.shape[1]}")
    return data


def read_vector(path: PathLike) -> np.ndarray:
    """Read a single-column CSV vector."""
    data = _load(path)
    if data.shape[1] != 1:
        raise MatrixFileError(f"{path}: expected a single column, got {data.shape[1]} columns")
    return data[:, 0]


def _load(path: PathLike) -> np.ndarray:
    try:
        data = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except OSError as exc:
        raise MatrixFileError(f"{path}: {exc.strerror or exc}") from exc
    except ValueError as exc:
        raise MatrixFileError(f"{path}: not a numeric CSV ({exc})") from exc
    if data.size == 0:
        raise MatrixFileError(f"{path}: file is empty")
    if not np.all(np.isfinite(data)):
        raise MatrixFileError(f"{path}: contains NaN or Inf entries")
    return data


def format_matrix(matrix: np.ndarray) -> str:
    """CSV text for a matrix, one row per line, shortest exact floats."""
    rows = np.atleast_2d(np.asarray(matrix, dtype=float))
    # + 0.0 turns -0.0 into 0.0
    return "\n".join(",".join(format(v + 0.0, ".17g") for v in row) for row in rows) + "\n"


def format_vector(vector: np.ndarray) -> str:
    return format_matrix(np.asarray(vector, dtype=float).reshape(-1, 1))


def write_matrix(path: PathLike, matrix: np.ndarray) -> None:
    Path(path).write_text(format_matrix(matrix))


def write_vector(path: PathLike, vector: np.ndarray) -> None:
    Path(path).write_text(format_vector(vector))
