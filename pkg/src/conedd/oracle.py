"""Brute-force extreme-ray enumeration for small instances.

Independent ground truth for the engine: scan coordinate subsets, solve for
one-dimensional nullspaces, keep non-negative generators, then discard
non-extreme rays by the rank criterion.  Exponential in the dimension, so a
hard dimension limit applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .cone_problem import EnumerationProblem, admissible
from .dd_engine import Ray
from .errors import LimitError
from .exact_linalg import nullspace_generator, rank, unit_row
from .zeroset import zeroset_of


@dataclass(frozen=True)
class OracleLimit:
    max_dim: int = 14
    max_subsets: int = 2_000_000

    def __post_init__(self) -> None:
        if self.max_dim <= 0 or self.max_subsets <= 0:
            raise ValueError("limits must be positive")


def is_extreme(problem: EnumerationProblem, coords) -> bool:
    """Rank criterion: equations plus the facets through the ray span d-1 dims."""
    d = problem.dim
    zeros = zeroset_of(coords)
    rows = list(problem.equations)
    rows.extend(unit_row(d, j) for j in zeros.indices())
    return rank(rows) == d - 1


def brute_force_rays(
    problem: EnumerationProblem, limit: Optional[OracleLimit] = None
) -> list[Ray]:
    """All extreme rays of {v >= 0, M v = 0}, sorted lexicographically."""
    if limit is None:
        limit = OracleLimit()
    d = problem.dim
    if d > limit.max_dim:
        raise LimitError(f"dimension {d} exceeds the oracle limit {limit.max_dim}")
    equation_rank = rank(problem.equations)
    # Smaller zero sets cannot pin down a one-dimensional nullspace.
    min_size = max(0, d - 2 - equation_rank)
    candidates: set = set()
    examined = 0
    base = list(problem.equations)
    for size in range(min_size, d + 1):
        for subset in combinations(range(d), size):
            examined += 1
            if examined > limit.max_subsets:
                raise LimitError(f"subset budget {limit.max_subsets} exceeded")
            rows = base + [unit_row(d, j) for j in subset]
            gen = nullspace_generator(rows, d)
            if gen is None or any(x < 0 for x in gen):
                continue
            candidates.add(gen)
    out = []
    for coords in sorted(candidates):
        if is_extreme(problem, coords):
            out.append(Ray(coords, zeroset_of(coords)))
    return out


def brute_force_filtered(
    problem: EnumerationProblem, limit: Optional[OracleLimit] = None
) -> list[Ray]:
    """Extreme rays that also satisfy the group constraints."""
    return [r for r in brute_force_rays(problem, limit) if admissible(problem, r.coords)]
