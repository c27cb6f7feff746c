"""Incremental extreme-ray enumeration with admissibility filtering.

The engine maintains the extreme rays of the cone cut out by the coordinate
non-negativity constraints and a growing set of equation hyperplanes.  Each
step partitions the current rays by their sign against the next hyperplane,
keeps the rays on the hyperplane, and combines adjacent rays from opposite
sides.  With filtering enabled, only pairs whose combination can still meet
the group constraints are considered, so inadmissible rays never enter the
working sets.

Vertices carry either full coordinates (`Ray`) or the vector of inner
products with the still-unprocessed hyperplanes (`RayInner`); both carry
zero-set bitmasks.  Inner-product vertices are resolved back to coordinates
at the end of the run via `recover`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Optional, Sequence, Union

from . import zeroset as zs
from .cone_problem import EnumerationProblem
from .errors import InternalError
from .exact_linalg import IntVector, dot, gcd_normalize, nullspace_generator, rank, unit_row
from .ordering import OrderingStrategy, choose_dynamic, order_static
from .zeroset import ZeroSet

ADJACENCY_MODES = ("comb", "alg")
REPRESENTATIONS = ("full", "inner")
PREFILTER_MODES = ("off", "basic", "extended")


@dataclass(frozen=True)
class Ray:
    """Full-coordinate vertex: non-negative integer coordinates at gcd 1."""

    coords: IntVector
    zeros: ZeroSet

    def hyperplane_value(self, k: int, problem: EnumerationProblem) -> int:
        return dot(problem.equations[k], self.coords)


def make_ray(coords: Sequence[int]) -> Ray:
    normalized = gcd_normalize(coords)
    if any(x < 0 for x in normalized):
        raise ValueError("rays must be non-negative")
    return Ray(normalized, zs.zeroset_of(normalized))


@dataclass
class RayInner:
    """Inner-product vertex: maps unprocessed hyperplane index -> m^(k) . v."""

    products: dict[int, int]
    zeros: ZeroSet

    def hyperplane_value(self, k: int, problem: EnumerationProblem) -> int:
        try:
            return self.products[k]
        except KeyError:
            raise InternalError(f"no stored product for hyperplane {k}") from None


Vertex = Union[Ray, RayInner]


@dataclass(frozen=True)
class RunConfig:
    ordering: OrderingStrategy = OrderingStrategy("position")
    adjacency: str = "comb"
    representation: str = "inner"
    filtering: bool = True
    dim_prefilter: str = "extended"

    def __post_init__(self) -> None:
        if self.adjacency not in ADJACENCY_MODES:
            raise ValueError(f"unknown adjacency mode: {self.adjacency!r}")
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation: {self.representation!r}")
        if self.dim_prefilter not in PREFILTER_MODES:
            raise ValueError(f"unknown prefilter mode: {self.dim_prefilter!r}")


@dataclass
class RunStats:
    sizes: list[int] = field(default_factory=list)
    pair_counts: list[int] = field(default_factory=list)
    sep_trace: list[int] = field(default_factory=list)
    mem_trace: list[int] = field(default_factory=list)
    order: tuple[int, ...] = ()
    elapsed_s: float = 0.0
    peak_mem_bytes: int = 0
    final_count: int = 0
    zeros_trace: Optional[list[tuple[int, ...]]] = None

    @property
    def max_vertex_count(self) -> int:
        return max(self.sizes) if self.sizes else 0


@dataclass
class EngineState:
    problem: EnumerationProblem
    config: RunConfig
    vertices: list
    processed: list[int]
    sep: int
    stats: RunStats


# Pair audit callback: (processed_count, sep_before, zero_count, adjacent).
PairAudit = Callable[[int, int, int, bool], None]


def _limbs(x: int) -> int:
    return max(1, (abs(x).bit_length() + 63) // 64)


def vertex_bytes(v: Vertex) -> int:
    """Logical size of a stored vertex: 8 bytes per integer limb plus mask words."""
    mask = 8 * v.zeros.words()
    if isinstance(v, Ray):
        return mask + 8 * sum(_limbs(c) for c in v.coords)
    return mask + 8 * sum(_limbs(t) for t in v.products.values())


def stage_bytes(vertices: Sequence[Vertex]) -> int:
    return sum(vertex_bytes(v) for v in vertices)


def init_vertices(problem: EnumerationProblem, representation: str) -> list:
    """V_0: the d unit rays, in the requested representation."""
    d = problem.dim
    g = len(problem.equations)
    full_bits = (1 << d) - 1
    out: list[Vertex] = []
    for j in range(d):
        zeros = ZeroSet(full_bits ^ (1 << j), d)
        if representation == "full":
            out.append(Ray(unit_row(d, j), zeros))
        else:
            out.append(RayInner({k: problem.equations[k][j] for k in range(g)}, zeros))
    return out


def partition(vertices: Sequence[Vertex], k: int, problem: EnumerationProblem):
    """Split vertices by the sign of their value against hyperplane k."""
    s_zero: list[Vertex] = []
    s_pos: list[Vertex] = []
    s_neg: list[Vertex] = []
    for v in vertices:
        t = v.hyperplane_value(k, problem)
        if t == 0:
            s_zero.append(v)
        elif t > 0:
            s_pos.append(v)
        else:
            s_neg.append(v)
    return s_zero, s_pos, s_neg


def compatible(u: Vertex, w: Vertex, groups: Sequence[Sequence[int]]) -> bool:
    """True iff the combined ray can still satisfy the group constraints."""
    return zs.group_satisfied(zs.intersect(u.zeros, w.zeros), groups)


def prefilter_pass(zero_count: int, processed_count: int, sep_before: int, mode: str, dim: int) -> bool:
    """Necessary dimension condition for a pair to yield an extreme ray.

    `processed_count` and `sep_before` are taken at the previous stage, i.e.
    before the current hyperplane is accounted for.
    """
    if mode == "off":
        return True
    if mode == "basic":
        return zero_count + processed_count >= dim - 2
    if mode == "extended":
        return zero_count + sep_before >= dim - 2
    raise ValueError(f"unknown prefilter mode: {mode!r}")


def dim_prefilter(u: Vertex, w: Vertex, state: EngineState, mode: str) -> bool:
    zero_count = zs.count(zs.intersect(u.zeros, w.zeros))
    return prefilter_pass(zero_count, len(state.processed), state.sep, mode, state.problem.dim)


def adjacent_combinatorial(u: Vertex, w: Vertex, vertices: Sequence[Vertex]) -> bool:
    """No third vertex's zero set contains Z(u) & Z(w).

    Vertices whose zero set equals Z(u) or Z(w) are skipped, so duplicates of
    the pair itself are never witnesses.
    """
    inter = u.zeros.bits & w.zeros.bits
    ub, wb = u.zeros.bits, w.zeros.bits
    for z in vertices:
        zb = z.zeros.bits
        if zb == ub or zb == wb:
            continue
        if zb & inter == inter:
            return False
    return True


def adjacent_algebraic(
    u: Vertex, w: Vertex, problem: EnumerationProblem, processed: Sequence[int]
) -> bool:
    """Rank test: processed rows plus unit rows for Z(u) & Z(w) span d-2 dims."""
    d = problem.dim
    inter = zs.intersect(u.zeros, w.zeros)
    rows = [problem.equations[k] for k in processed]
    rows.extend(unit_row(d, j) for j in inter.indices())
    return rank(rows) == d - 2


def combine(u: Vertex, w: Vertex, k: int, problem: EnumerationProblem) -> Vertex:
    """Combination of a positive-side u and negative-side w on hyperplane k."""
    a = u.hyperplane_value(k, problem)
    b = w.hyperplane_value(k, problem)
    if a <= 0 or b >= 0:
        raise InternalError("combine requires u on the positive side and w on the negative side")
    if isinstance(u, Ray) and isinstance(w, Ray):
        return _combine_full(u, w, a, b)
    if isinstance(u, RayInner) and isinstance(w, RayInner):
        return _combine_inner(u, w, a, b, k)
    raise InternalError("cannot combine vertices of different representations")


def _combine_full(u: Ray, w: Ray, a: int, b: int) -> Ray:
    coords = gcd_normalize(tuple(a * wj - b * uj for uj, wj in zip(u.coords, w.coords)))
    zeros = zs.intersect(u.zeros, w.zeros)
    if zs.zeroset_of(coords) != zeros:
        raise InternalError("combined ray zero set does not match its coordinates")
    return Ray(coords, zeros)


def _combine_inner(u: RayInner, w: RayInner, a: int, b: int, k: int) -> RayInner:
    wp = w.products
    products = {j: a * wp[j] - b * uv for j, uv in u.products.items() if j != k}
    g = 0
    for val in products.values():
        g = gcd(g, val)
        if g == 1:
            break
    if g > 1:
        for j in products:
            products[j] //= g
    return RayInner(products, zs.intersect(u.zeros, w.zeros))


def step(state: EngineState, k: int, pair_audit: Optional[PairAudit] = None) -> EngineState:
    """Process hyperplane k: V_i from V_{i-1}.

    The new vertex list is S_0 (with the processed product dropped under the
    inner representation) plus the combinations of compatible, prefiltered,
    adjacent pairs from S_+ x S_-.  `sep` grows by one exactly when both
    sides are non-empty.
    """
    problem, cfg = state.problem, state.config
    d = problem.dim
    inner = cfg.representation == "inner"
    filtering = cfg.filtering
    mode = cfg.dim_prefilter
    comb_adjacency = cfg.adjacency == "comb"
    vertices = state.vertices
    processed_count = len(state.processed)
    sep_before = state.sep
    target = d - 2

    values = [v.hyperplane_value(k, problem) for v in vertices]
    new_vertices: list[Vertex] = []
    s_pos: list[tuple[Vertex, int]] = []
    s_neg: list[tuple[Vertex, int]] = []
    for v, t in zip(vertices, values):
        if t == 0:
            if inner:
                products = dict(v.products)
                if products.pop(k, None) is None:
                    raise InternalError(f"no stored product for hyperplane {k}")
                new_vertices.append(RayInner(products, v.zeros))
            else:
                new_vertices.append(v)
        elif t > 0:
            s_pos.append((v, t))
        else:
            s_neg.append((v, t))

    group_info = [(zs.group_mask(group), len(group) - 1) for group in problem.groups]
    witness_bits = [v.zeros.bits for v in vertices]

    for u, a in s_pos:
        ub = u.zeros.bits
        for w, b in s_neg:
            inter = ub & w.zeros.bits
            if filtering:
                ok = True
                for mask, need in group_info:
                    if (inter & mask).bit_count() < need:
                        ok = False
                        break
                if not ok:
                    continue
            zero_count = inter.bit_count()
            if mode == "basic":
                if zero_count + processed_count < target:
                    continue
            elif mode == "extended":
                if zero_count + sep_before < target:
                    continue
            if comb_adjacency:
                wb = w.zeros.bits
                adjacent = True
                for zb in witness_bits:
                    if zb & inter == inter and zb != ub and zb != wb:
                        adjacent = False
                        break
            else:
                adjacent = adjacent_algebraic(u, w, problem, state.processed)
            if pair_audit is not None:
                pair_audit(processed_count, sep_before, zero_count, adjacent)
            if not adjacent:
                continue
            if inner:
                new_vertices.append(_combine_inner(u, w, a, b, k))
            else:
                new_vertices.append(_combine_full(u, w, a, b))

    sep = sep_before + 1 if (s_pos and s_neg) else sep_before
    stats = state.stats
    stats.sizes.append(len(new_vertices))
    stats.pair_counts.append(len(s_pos) * len(s_neg))
    stats.sep_trace.append(sep)
    stats.mem_trace.append(stage_bytes(new_vertices))
    if stats.zeros_trace is not None:
        stats.zeros_trace.append(tuple(sorted(v.zeros.bits for v in new_vertices)))
    return EngineState(problem, cfg, new_vertices, state.processed + [k], sep, stats)


def recover(problem: EnumerationProblem, zeros: ZeroSet) -> Ray:
    """Coordinates of the unique ray with the given final zero set.

    Solves the equations together with the facet conditions v_j = 0 for
    j in the zero set; equivalently, the equations restricted to the
    complementary columns must have a one-dimensional nullspace.
    """
    d = problem.dim
    if zeros.dim != d:
        raise InternalError("zero set dimension does not match the problem")
    free_cols = [j for j in range(d) if j not in zeros]
    restricted = []
    for row in problem.equations:
        r = tuple(row[j] for j in free_cols)
        if any(r):
            restricted.append(r)
    gen = nullspace_generator(restricted, len(free_cols))
    if gen is None:
        raise InternalError("recovery system does not have a one-dimensional solution space")
    if any(x < 0 for x in gen) or any(x == 0 for x in gen):
        raise InternalError("recovered vector does not match its zero set")
    coords = [0] * d
    for col, value in zip(free_cols, gen):
        coords[col] = value
    return Ray(tuple(coords), zeros)


def run(
    problem: EnumerationProblem,
    config: Optional[RunConfig] = None,
    *,
    trace_zeros: bool = False,
    pair_audit: Optional[PairAudit] = None,
    stage_hook: Optional[Callable[[EngineState], None]] = None,
) -> tuple[list[Ray], RunStats]:
    """Enumerate the extreme rays of the problem cone.

    Returns the final rays (admissible ones only when filtering is on),
    gcd-normalized, deduplicated and sorted lexicographically, together with
    the per-stage statistics.
    """
    if config is None:
        config = RunConfig()
    start = time.perf_counter()
    vertices = init_vertices(problem, config.representation)
    stats = RunStats(zeros_trace=[] if trace_zeros else None)
    stats.sizes.append(len(vertices))
    stats.mem_trace.append(stage_bytes(vertices))
    if stats.zeros_trace is not None:
        stats.zeros_trace.append(tuple(sorted(v.zeros.bits for v in vertices)))
    state = EngineState(problem, config, vertices, [], 0, stats)

    g = len(problem.equations)
    if config.ordering.kind == "dynamic":
        remaining = set(range(g))
        while remaining:
            k = choose_dynamic(remaining, state.vertices, problem)
            remaining.discard(k)
            state = step(state, k, pair_audit=pair_audit)
            if stage_hook is not None:
                stage_hook(state)
    else:
        for k in order_static(problem, config.ordering):
            state = step(state, k, pair_audit=pair_audit)
            if stage_hook is not None:
                stage_hook(state)

    if config.representation == "inner":
        finals = [recover(problem, v.zeros) for v in state.vertices]
    else:
        finals = list(state.vertices)
    unique: dict[IntVector, Ray] = {}
    for r in finals:
        unique[r.coords] = r
    rays = [unique[c] for c in sorted(unique)]

    stats.order = tuple(state.processed)
    stats.elapsed_s = time.perf_counter() - start
    stats.peak_mem_bytes = max(stats.mem_trace) if stats.mem_trace else 0
    stats.final_count = len(rays)
    return rays, stats
