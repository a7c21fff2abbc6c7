"""
Index subsets of N = {1, ..., n} stored as fixed-width bit patterns.

An IndexSet I selects the mixed basis {e_i : i in I} and {u_j : j not in I}.
Internally bit k stands for the 0-based index k; everything that leaves the
engine (JSON, CSV, CLI) goes through to_one_based().
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, Sequence

import numpy as np


class IndexSet:
    """Immutable subset of {0, ..., dim-1} with value equality and hashing."""

    __slots__ = ("bits", "dim")

    def __init__(self, bits: int, dim: int) -> None:
        if dim < 1:
            raise ValueError(f"dim must be positive, got {dim}")
        if bits < 0 or bits >> dim:
            raise ValueError(f"bit pattern {bits:#x} does not fit in {dim} bits")
        object.__setattr__(self, "bits", int(bits))
        object.__setattr__(self, "dim", int(dim))

    def __setattr__(self, name, value):
        raise AttributeError("IndexSet is immutable")

    def __reduce__(self):
        return (IndexSet, (self.bits, self.dim))

    # --- constructors -----------------------------------------------------

    @classmethod
    def full(cls, dim: int) -> "IndexSet":
        return cls((1 << dim) - 1, dim)

    @classmethod
    def empty(cls, dim: int) -> "IndexSet":
        return cls(0, dim)

    @classmethod
    def from_members(cls, dim: int, members: Iterable[int]) -> "IndexSet":
        """Build from 0-based indices."""
        bits = 0
        for k in members:
            k = int(k)
            if not 0 <= k < dim:
                raise ValueError(f"index {k} out of range for dim {dim}")
            bits |= 1 << k
        return cls(bits, dim)

    @classmethod
    def from_one_based(cls, dim: int, members: Iterable[int]) -> "IndexSet":
        return cls.from_members(dim, (int(k) - 1 for k in members))

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator) -> "IndexSet":
        """Uniformly random subset (each of the 2^dim patterns equally likely)."""
        flags = rng.integers(0, 2, size=dim)
        return cls.from_members(dim, np.flatnonzero(flags))

    # --- set protocol -------------------------------------------------------

    def __contains__(self, k: object) -> bool:
        return isinstance(k, (int, np.integer)) and 0 <= k < self.dim and bool(
            self.bits >> int(k) & 1
        )

    def __iter__(self) -> Iterator[int]:
        return (k for k in range(self.dim) if self.bits >> k & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.bits == other.bits and self.dim == other.dim

    def __hash__(self) -> int:
        return hash((self.bits, self.dim))

    def __repr__(self) -> str:
        return f"IndexSet({self.to_one_based()}, dim={self.dim})"

    # --- derived sets -------------------------------------------------------

    @property
    def members(self) -> List[int]:
        """Sorted 0-based members."""
        return list(self)

    def complement(self) -> "IndexSet":
        return IndexSet(~self.bits & ((1 << self.dim) - 1), self.dim)

    @property
    def complement_members(self) -> List[int]:
        return list(self.complement())

    def swap(self, add: Iterable[int], remove: Iterable[int]) -> "IndexSet":
        """I ∪ add minus remove (0-based indices)."""
        bits = self.bits
        for k in add:
            bits |= 1 << int(k)
        for k in remove:
            bits &= ~(1 << int(k))
        return IndexSet(bits, self.dim)

    def to_one_based(self) -> List[int]:
        return [k + 1 for k in self]

    def issubset(self, other: "IndexSet") -> bool:
        return self.dim == other.dim and self.bits & ~other.bits == 0


def all_subsets(dim: int) -> Iterator[IndexSet]:
    """Every subset of {0..dim-1} in increasing bit-pattern order."""
    for bits in range(1 << dim):
        yield IndexSet(bits, dim)


def subsets_of(pool: IndexSet) -> Iterator[IndexSet]:
    """Every subset of pool in increasing bit-pattern order."""
    positions: Sequence[int] = pool.members
    for mask in range(1 << len(positions)):
        bits = 0
        for slot, k in enumerate(positions):
            if mask >> slot & 1:
                bits |= 1 << k
        yield IndexSet(bits, pool.dim)


__all__ = ["IndexSet", "all_subsets", "subsets_of"]
