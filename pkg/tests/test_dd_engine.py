"""Tests for the incremental enumeration engine."""

from itertools import product
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conedd.cone_problem import EnumerationProblem, admissible, parse_cone
from conedd.dd_engine import (
    Ray,
    RayInner,
    RunConfig,
    adjacent_algebraic,
    adjacent_combinatorial,
    combine,
    compatible,
    init_vertices,
    make_ray,
    partition,
    prefilter_pass,
    recover,
    run,
    stage_bytes,
    vertex_bytes,
)
from conedd.errors import InternalError
from conedd.oracle import brute_force_filtered, brute_force_rays
from conedd.ordering import parse_strategy
from conedd.triangulation import parse_triangulation, standard_matching_equations
from conedd.zeroset import from_indices, full_set, zeroset_of

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

GIESEKING = parse_cone((FIXTURES / "gieseking.cone").read_text())
ONETET = standard_matching_equations(
    parse_triangulation((FIXTURES / "onetet.tri").read_text())
)


def coords_of(rays):
    return [r.coords for r in rays]


def test_make_ray_normalizes():
    r = make_ray((0, 2, 4))
    assert r.coords == (0, 1, 2)
    assert r.zeros.indices() == (0,)
    with pytest.raises(ValueError):
        make_ray((1, -1, 0))
    with pytest.raises(ValueError):
        make_ray((0, 0, 0))


def test_init_vertices_full():
    vs = init_vertices(GIESEKING, "full")
    assert coords_of(vs) == [tuple(1 if i == j else 0 for i in range(7)) for j in range(7)]
    assert all(v.zeros.indices() == tuple(i for i in range(7) if i != j) for j, v in enumerate(vs))


def test_init_vertices_inner():
    vs = init_vertices(GIESEKING, "inner")
    for j, v in enumerate(vs):
        assert v.products == {k: GIESEKING.equations[k][j] for k in range(5)}
    # Column 0 of the fixture: only the last equation touches coordinate 0.
    assert vs[0].products == {0: 0, 1: 0, 2: 0, 3: 0, 4: 1}


def test_representations_agree_on_hyperplane_values():
    full = init_vertices(GIESEKING, "full")
    inner = init_vertices(GIESEKING, "inner")
    for vf, vi in zip(full, inner):
        for k in range(5):
            assert vf.hyperplane_value(k, GIESEKING) == vi.hyperplane_value(k, GIESEKING)


def test_partition_first_hyperplane():
    vs = init_vertices(GIESEKING, "full")
    s_zero, s_pos, s_neg = partition(vs, 0, GIESEKING)
    assert coords_of(s_pos) == [(0, 0, 0, 0, 0, 0, 1)]
    assert coords_of(s_neg) == [(0, 0, 0, 0, 0, 1, 0)]
    assert len(s_zero) == 5


def test_compatible():
    groups = GIESEKING.groups
    e4, e5 = make_ray((0, 0, 0, 0, 1, 0, 0)), make_ray((0, 0, 0, 0, 0, 1, 0))
    e0 = make_ray((1, 0, 0, 0, 0, 0, 0))
    # e4 + e5 would have two nonzero quadrilateral coordinates: incompatible.
    assert not compatible(e4, e5, groups)
    assert compatible(e0, e4, groups)
    assert compatible(e0, e0, groups)


def test_prefilter_pass_arithmetic():
    # d = 7, so a pair needs zero_count + stages >= 5.
    assert prefilter_pass(5, 0, 0, "basic", 7)
    assert not prefilter_pass(4, 0, 0, "basic", 7)
    assert prefilter_pass(4, 1, 0, "basic", 7)
    # Extended counts only separating stages, a smaller quantity.
    assert not prefilter_pass(4, 1, 0, "extended", 7)
    assert prefilter_pass(4, 3, 1, "extended", 7)
    assert prefilter_pass(0, 0, 0, "off", 7)
    with pytest.raises(ValueError):
        prefilter_pass(0, 0, 0, "bogus", 7)


def test_extended_no_weaker_than_basic():
    # sep_before <= processed_count always, so extended rejects whenever
    # basic does.
    for zc, pc, sep in product(range(6), range(6), range(6)):
        if sep > pc:
            continue
        if not prefilter_pass(zc, pc, sep, "basic", 7):
            assert not prefilter_pass(zc, pc, sep, "extended", 7)


def test_adjacent_combinatorial_unit_rays():
    vs = init_vertices(GIESEKING, "full")
    # Z(e5) & Z(e6) misses only coordinates 5 and 6; no other unit ray's
    # zero set contains it.
    assert adjacent_combinatorial(vs[5], vs[6], vs)


def test_adjacent_combinatorial_witness():
    u = make_ray((1, 0, 1, 0))
    w = make_ray((0, 1, 0, 1))
    z = make_ray((1, 1, 1, 1))
    assert adjacent_combinatorial(u, w, [u, w])
    # z's zero set (empty) contains Z(u) & Z(w) (also empty): witness found.
    assert not adjacent_combinatorial(u, w, [u, w, z])


def test_adjacent_combinatorial_skips_duplicates_of_pair():
    u = make_ray((1, 0, 0))
    w = make_ray((0, 1, 0))
    # A duplicate of u in the list must not count as a witness.
    assert adjacent_combinatorial(u, w, [u, w, make_ray((2, 0, 0))])


def test_adjacent_algebraic_matches_combinatorial_on_first_stage():
    vs = init_vertices(GIESEKING, "full")
    _, s_pos, s_neg = partition(vs, 0, GIESEKING)
    for u in s_pos:
        for w in s_neg:
            assert adjacent_algebraic(u, w, GIESEKING, []) == adjacent_combinatorial(u, w, vs)


def test_combine_full():
    vs = init_vertices(GIESEKING, "full")
    # Row 0 is x6 - x5: e6 sits on the positive side, e5 on the negative.
    r = combine(vs[6], vs[5], 0, GIESEKING)
    assert r.coords == (0, 0, 0, 0, 0, 1, 1)
    assert r.zeros.indices() == (0, 1, 2, 3, 4)


def test_combine_inner():
    full = init_vertices(GIESEKING, "full")
    inner = init_vertices(GIESEKING, "inner")
    rf = combine(full[6], full[5], 0, GIESEKING)
    ri = combine(inner[6], inner[5], 0, GIESEKING)
    assert ri.zeros == rf.zeros
    assert 0 not in ri.products  # the processed hyperplane is dropped
    for k in range(1, 5):
        assert ri.products[k] == rf.hyperplane_value(k, GIESEKING)


def test_combine_requires_opposite_sides():
    vs = init_vertices(GIESEKING, "full")
    with pytest.raises(InternalError):
        combine(vs[5], vs[6], 0, GIESEKING)  # sides swapped


def test_combine_rejects_mixed_representations():
    full = init_vertices(GIESEKING, "full")
    inner = init_vertices(GIESEKING, "inner")
    with pytest.raises(InternalError):
        combine(full[6], inner[5], 0, GIESEKING)


GIESEKING_FILTERED = [(1, 1, 1, 1, 0, 0, 0)]
GIESEKING_UNFILTERED = [(0, 0, 0, 0, 1, 1, 1), (1, 1, 1, 1, 0, 0, 0)]


def test_gieseking_default_run():
    rays, stats = run(GIESEKING)
    assert coords_of(rays) == GIESEKING_FILTERED
    assert stats.sizes == [7, 5, 4, 3, 2, 1]
    assert stats.sep_trace == [1, 2, 3, 3, 4]
    assert stats.pair_counts == [1, 2, 1, 0, 1]
    assert stats.order == (0, 1, 2, 3, 4)
    assert stats.max_vertex_count == 7
    assert stats.final_count == 1
    assert stats.peak_mem_bytes == max(stats.mem_trace)


def test_gieseking_unfiltered_run():
    cfg = RunConfig(ordering=parse_strategy("input"), representation="full", filtering=False)
    rays, stats = run(GIESEKING, cfg)
    assert coords_of(rays) == GIESEKING_UNFILTERED
    assert stats.sizes == [7, 6, 6, 5, 3, 2]
    assert stats.sep_trace == [1, 2, 3, 4, 5]
    assert stats.pair_counts == [1, 4, 2, 1, 1]


def test_gieseking_matches_oracle():
    assert coords_of(brute_force_filtered(GIESEKING)) == GIESEKING_FILTERED
    assert coords_of(brute_force_rays(GIESEKING)) == GIESEKING_UNFILTERED


def test_config_invariance_sample():
    """A sample of the configuration grid; the full grid runs in the
    acceptance suite."""
    for ordering, adjacency, rep, pre in (
        ("input", "comb", "full", "off"),
        ("lexpos", "alg", "full", "basic"),
        ("lexrand:3", "comb", "inner", "extended"),
        ("dynamic", "alg", "inner", "basic"),
    ):
        cfg = RunConfig(
            ordering=parse_strategy(ordering),
            adjacency=adjacency,
            representation=rep,
            dim_prefilter=pre,
        )
        rays, _ = run(GIESEKING, cfg)
        assert coords_of(rays) == GIESEKING_FILTERED, (ordering, adjacency, rep, pre)


def test_filtering_equivalence():
    for problem in (GIESEKING, ONETET):
        unfiltered, _ = run(problem, RunConfig(filtering=False))
        filtered, _ = run(problem)
        assert coords_of(filtered) == [
            r.coords for r in unfiltered if admissible(problem, r.coords)
        ]


def test_onetet_run():
    rays, _ = run(ONETET)
    assert coords_of(rays) == [
        (0, 0, 0, 0, 1, 0, 0),
        (0, 0, 1, 1, 0, 0, 0),
        (1, 1, 0, 0, 0, 0, 0),
    ]
    unfiltered, _ = run(ONETET, RunConfig(filtering=False))
    assert coords_of(unfiltered) == [
        (0, 0, 0, 0, 0, 1, 1),
        (0, 0, 0, 0, 1, 0, 0),
        (0, 0, 1, 1, 0, 0, 0),
        (1, 1, 0, 0, 0, 0, 0),
    ]


def test_inner_full_lockstep():
    """Same zero sets at every stage, same finals, for both representations."""
    base = dict(ordering=parse_strategy("input"), adjacency="comb", dim_prefilter="extended")
    _, st_full = run(GIESEKING, RunConfig(representation="full", **base), trace_zeros=True)
    rays_i, st_inner = run(GIESEKING, RunConfig(representation="inner", **base), trace_zeros=True)
    assert st_full.zeros_trace == st_inner.zeros_trace
    assert coords_of(rays_i) == GIESEKING_FILTERED
    # The inner representation stores g - i products per vertex, never more
    # than the d coordinates, so its stage footprint is no larger.
    for mf, mi in zip(st_full.mem_trace[1:], st_inner.mem_trace[1:]):
        assert mi <= mf


def test_pair_audit_sees_every_pair_without_prefilter():
    cfg = RunConfig(
        ordering=parse_strategy("input"),
        representation="full",
        filtering=False,
        dim_prefilter="off",
    )
    seen = []
    _, stats = run(GIESEKING, cfg, pair_audit=lambda *a: seen.append(a))
    assert len(seen) == sum(stats.pair_counts)
    # Audited zero counts never exceed d - 1.
    assert all(0 <= zc < 7 for _, _, zc, _ in seen)


def test_pair_audit_prefilter_reduces_pairs():
    seen = []
    run(GIESEKING, RunConfig(), pair_audit=lambda *a: seen.append(a))
    _, stats = run(GIESEKING, RunConfig())
    assert len(seen) <= sum(stats.pair_counts)


def test_stage_hook_called_per_hyperplane():
    stages = []
    run(GIESEKING, stage_hook=lambda s: stages.append(len(s.processed)))
    assert stages == [1, 2, 3, 4, 5]


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(adjacency="bogus")
    with pytest.raises(ValueError):
        RunConfig(representation="bogus")
    with pytest.raises(ValueError):
        RunConfig(dim_prefilter="bogus")


def test_recover_examples():
    r = recover(GIESEKING, from_indices([4, 5, 6], 7))
    assert r.coords == (1, 1, 1, 1, 0, 0, 0)
    r2 = recover(GIESEKING, from_indices([0, 1, 2, 3], 7))
    assert r2.coords == (0, 0, 0, 0, 1, 1, 1)


def test_recover_errors():
    with pytest.raises(InternalError):
        recover(GIESEKING, full_set(7))  # no nonzero coordinates left
    with pytest.raises(InternalError):
        recover(GIESEKING, from_indices([], 7))  # nullity 2, not a single ray
    p = EnumerationProblem(dim=2, equations=((1, 1),), groups=())
    with pytest.raises(InternalError):
        recover(p, from_indices([], 2))  # generator (1, -1) is mixed-sign


def test_vertex_bytes():
    r = make_ray((1,) * 7)
    assert vertex_bytes(r) == 8 + 7 * 8  # one mask word + seven 1-limb coords
    big = Ray((2**100, 1, 0), zeroset_of((2**100, 1, 0)))
    assert vertex_bytes(big) == 8 + (2 + 1 + 1) * 8
    ri = RayInner({0: 1, 1: -1}, from_indices([0], 7))
    assert vertex_bytes(ri) == 8 + 2 * 8
    assert stage_bytes([r, ri]) == vertex_bytes(r) + vertex_bytes(ri)


def test_run_empty_equations():
    p = EnumerationProblem(dim=3, equations=(), groups=())
    rays, stats = run(p)
    assert coords_of(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert stats.sizes == [3]
    assert stats.order == ()


entries = st.integers(min_value=-2, max_value=2)


@st.composite
def small_problems(draw, with_groups=False):
    d = draw(st.integers(min_value=3, max_value=7))
    nrows = draw(st.integers(min_value=1, max_value=3))
    equations = tuple(
        tuple(draw(entries) for _ in range(d)) for _ in range(nrows)
    )
    groups = ()
    if with_groups and d >= 3:
        start = draw(st.integers(min_value=0, max_value=d - 3))
        groups = ((start, start + 1, start + 2),)
    return EnumerationProblem(dim=d, equations=equations, groups=groups)


@settings(max_examples=60, deadline=None)
@given(small_problems())
def test_engine_matches_oracle_unfiltered(problem):
    rays, _ = run(problem, RunConfig(filtering=False))
    assert coords_of(rays) == coords_of(brute_force_rays(problem))


@settings(max_examples=60, deadline=None)
@given(small_problems(with_groups=True))
def test_engine_matches_oracle_filtered(problem):
    rays, _ = run(problem)
    assert coords_of(rays) == coords_of(brute_force_filtered(problem))


@settings(max_examples=30, deadline=None)
@given(small_problems(with_groups=True))
def test_representations_agree(problem):
    full, _ = run(problem, RunConfig(representation="full"))
    inner, _ = run(problem, RunConfig(representation="inner"))
    assert coords_of(full) == coords_of(inner)
