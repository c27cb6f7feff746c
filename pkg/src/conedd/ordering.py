"""Hyperplane processing orders for the incremental enumeration engine.

Static strategies produce a permutation of the equation indices up front; the
dynamic strategy picks the next hyperplane from the current vertex set, one
step at a time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cone_problem import EnumerationProblem
from .errors import ParseError
from .exact_linalg import IntVector

STATIC_KINDS = ("input", "position", "lexpos", "lexrand")
KINDS = STATIC_KINDS + ("dynamic",)


@dataclass(frozen=True)
class OrderingStrategy:
    kind: str
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown ordering kind: {self.kind!r}")
        if (self.seed is not None) != (self.kind == "lexrand"):
            raise ValueError("a seed is required exactly for lexrand")


def parse_strategy(text: str) -> OrderingStrategy:
    """Parse a CLI ordering flag: input|position|lexpos|lexrand:<seed>|dynamic."""
    if text.startswith("lexrand:"):
        seed_text = text.split(":", 1)[1]
        try:
            seed = int(seed_text)
        except ValueError:
            raise ParseError(f"bad lexrand seed: {seed_text!r}") from None
        return OrderingStrategy("lexrand", seed)
    if text == "lexrand":
        raise ParseError("lexrand requires a seed: lexrand:<seed>")
    try:
        return OrderingStrategy(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def strategy_label(s: OrderingStrategy) -> str:
    return f"lexrand:{s.seed}" if s.kind == "lexrand" else s.kind


def position_vector(m: Sequence[int]) -> IntVector:
    """0/1 support indicator of a row."""
    return tuple(1 if x != 0 else 0 for x in m)


def _sign_first_positive(row: Sequence[int]) -> IntVector:
    for x in row:
        if x != 0:
            return tuple(row) if x > 0 else tuple(-y for y in row)
    return tuple(row)


def order_static(problem: EnumerationProblem, strategy: OrderingStrategy) -> tuple[int, ...]:
    """Permutation of 0..g-1 for a static strategy; sorts are stable."""
    if strategy.kind == "dynamic":
        raise ValueError("dynamic ordering has no static permutation; use choose_dynamic")
    g = len(problem.equations)
    indices = list(range(g))
    if strategy.kind == "input":
        return tuple(indices)
    if strategy.kind == "position":
        return tuple(sorted(indices, key=lambda k: position_vector(problem.equations[k])))
    if strategy.kind == "lexpos":
        return tuple(sorted(indices, key=lambda k: _sign_first_positive(problem.equations[k])))
    # lexrand: one random sign per row, then lexicographic sort
    rng = random.Random(strategy.seed)
    signs = [rng.choice((1, -1)) for _ in range(g)]
    return tuple(
        sorted(indices, key=lambda k: tuple(signs[k] * x for x in problem.equations[k]))
    )


def choose_dynamic(
    unprocessed: Iterable[int],
    vertices: Sequence,
    problem: EnumerationProblem,
) -> int:
    """Unprocessed index minimizing |S_+| * |S_-| over the given vertices.

    Ties break toward the lowest index.  Vertices supply their hyperplane
    value through `hyperplane_value(k, problem)`, so both vertex
    representations work here.
    """
    candidates = sorted(unprocessed)
    if not candidates:
        raise ValueError("no unprocessed hyperplanes")
    best_k = candidates[0]
    best_score: Optional[int] = None
    for k in candidates:
        pos = neg = 0
        for v in vertices:
            t = v.hyperplane_value(k, problem)
            if t > 0:
                pos += 1
            elif t < 0:
                neg += 1
        score = pos * neg
        if best_score is None or score < best_score:
            best_k, best_score = k, score
            if score == 0:
                break
    return best_k
