"""Bitmask zero sets and the per-group support predicate.

A zero set records which coordinates of a vector vanish.  The engine keys
nearly everything on these sets: pair compatibility, adjacency witnesses and
the dimensional prefilters all reduce to mask algebra, so the representation
is a single unbounded int used as a bit vector (64-bit words are only an
accounting unit for the memory proxy).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class ZeroSet:
    """Set of coordinate indices packed into a bitmask.

    bits: bit k is set iff index k belongs to the set.
    dim: ambient dimension; bits at positions >= dim are always clear.
    """

    bits: int
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        if self.bits < 0 or self.bits >> self.dim:
            raise ValueError("bits outside dimension range")

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.dim and (self.bits >> index) & 1 == 1

    def indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.dim) if (self.bits >> k) & 1)

    def words(self) -> int:
        """Number of 64-bit words the mask occupies; used by the memory proxy."""
        return (self.dim + 63) // 64


def zeroset_of(vector: Sequence[int]) -> ZeroSet:
    """Zero set of a vector: bit k set iff vector[k] == 0."""
    bits = 0
    for k, x in enumerate(vector):
        if x == 0:
            bits |= 1 << k
    return ZeroSet(bits, len(vector))


def from_indices(indices: Iterable[int], dim: int) -> ZeroSet:
    bits = 0
    for k in indices:
        if not 0 <= k < dim:
            raise ValueError(f"index {k} out of range for dimension {dim}")
        bits |= 1 << k
    return ZeroSet(bits, dim)


def full_set(dim: int) -> ZeroSet:
    return ZeroSet((1 << dim) - 1, dim)


def _check_dims(a: ZeroSet, b: ZeroSet) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def intersect(a: ZeroSet, b: ZeroSet) -> ZeroSet:
    _check_dims(a, b)
    return ZeroSet(a.bits & b.bits, a.dim)


def is_superset(a: ZeroSet, b: ZeroSet) -> bool:
    """True iff every member of b is in a."""
    _check_dims(a, b)
    return b.bits & ~a.bits == 0


def count(a: ZeroSet) -> int:
    return a.bits.bit_count()


def group_mask(group: Sequence[int]) -> int:
    bits = 0
    for k in group:
        bits |= 1 << k
    return bits


def group_satisfied(z: ZeroSet, groups: Sequence[Sequence[int]]) -> bool:
    """True iff every group has at most one index absent from z.

    A vector with zero set z has at most one non-zero coordinate per group
    exactly when this holds.
    """
    for group in groups:
        if (z.bits & group_mask(group)).bit_count() < len(group) - 1:
            return False
    return True
