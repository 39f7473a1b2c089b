import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starwalk.circuit import Circuit
from starwalk.graph import Graph, cycle_graph
from starwalk.simulate import spectral_distance
from starwalk.trotter import (
    PreconditionError,
    SegmentCapError,
    choose_segments,
    exponentials_per_segment,
    exponential_budget,
    padded_target,
    suzuki_p,
    suzuki_schedule,
    synthesize_ctqw,
)

from conftest import random_graph


def test_schedule_single_term():
    assert suzuki_schedule(1, 1, 0.3) == [(0, 0.3)]
    assert suzuki_schedule(1, 3, 0.3) == [(0, 0.3)]


def test_schedule_second_order_two_terms():
    assert suzuki_schedule(2, 1, 1.0) == [(0, 0.5), (1, 1.0), (0, 0.5)]


def test_suzuki_p2():
    assert suzuki_p(2) == pytest.approx(0.4144907717943757, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(1, 3), st.floats(0.01, 5))
def test_schedule_durations_sum_per_term(m, k, lam):
    sched = suzuki_schedule(m, k, lam)
    for j in range(m):
        assert sum(tau for i, tau in sched if i == j) == pytest.approx(lam, rel=1e-12)
    assert all(a[0] != b[0] for a, b in zip(sched, sched[1:]))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8), st.integers(1, 3))
def test_schedule_length_after_merging(m, k):
    assert len(suzuki_schedule(m, k, 1.0)) == 5 ** (k - 1) * (2 * m - 2) + 1


def test_schedule_is_symmetric():
    sched = suzuki_schedule(4, 2, 1.0)
    assert [j for j, _ in sched] == [j for j, _ in reversed(sched)]


def test_schedule_rejects_bad_arguments():
    with pytest.raises(ValueError):
        suzuki_schedule(0, 1, 1.0)
    with pytest.raises(ValueError):
        suzuki_schedule(2, 0, 1.0)


def test_budget_examples():
    assert exponential_budget(2, 1.0, 0.1, 1) == 895
    assert exponential_budget(1, 1.0, 1.0, 1) == 50


def test_budget_preconditions():
    with pytest.raises(PreconditionError):
        exponential_budget(2, 1.0, 1.5, 1)
    with pytest.raises(PreconditionError):
        exponential_budget(2, 0.1, 0.1, 1)


def test_choose_segments_bound():
    assert exponentials_per_segment(2, 1) == 3
    assert choose_segments("bound", 2, 1.0, 0.1, 1) == 299


def test_choose_segments_trivial_cases():
    assert choose_segments("bound", 1, 1.0, 0.1, 1) == 1
    assert choose_segments("adaptive", 5, 1.0, 0.1, 1, verifier=lambda r: 0.0) == 1
    assert choose_segments("adaptive", 5, 1.0, 0.1, 1, verifier=lambda r: 1.0 / r) == 16


def test_choose_segments_cap():
    with pytest.raises(SegmentCapError):
        choose_segments("adaptive", 3, 1.0, 1e-3, 1, verifier=lambda r: 1.0, max_r=64)
    with pytest.raises(ValueError):
        choose_segments("bogus", 3, 1.0, 1e-3, 1)


def test_single_edge_is_exact():
    g = Graph.from_edges(2, [(0, 1)])
    res = synthesize_ctqw(g, 1.0, 1.0, 1e-3, verify=True)
    assert res.m == 1 and res.r == 1 and res.distance <= 1e-12


def test_edgeless_graph_gives_identity():
    res = synthesize_ctqw(Graph.from_edges(3, []), 1.0, 1.0, 1e-3, verify=True)
    assert res.m == 0 and res.segment.gates == () and res.distance == 0


def test_cycle_adaptive_meets_eps():
    res = synthesize_ctqw(cycle_graph(8), 1.0, 1.0, 1e-3, verify=True)
    assert res.distance <= 1e-3
    # the next-coarser segment count must miss, or doubling would have stopped earlier
    if res.r > 1:
        coarse = synthesize_ctqw(cycle_graph(8), 1.0, 1.0, 1.0, mode="adaptive", verify=True)
        assert coarse.r <= res.r


def test_refinement_is_monotone():
    g = cycle_graph(8)
    target = padded_target(g, 1.0, 1.0)
    errs = []
    for eps in (1e-1, 1e-2, 1e-3, 1e-4):
        res = synthesize_ctqw(g, 1.0, 1.0, eps, verify=True)
        errs.append((res.r, res.distance))
        assert res.distance <= eps
        assert spectral_distance(res.sector_unitary(), target) <= eps
    assert [r for r, _ in errs] == sorted(r for r, _ in errs)


def test_bound_mode_is_sound(rng):
    for _ in range(3):
        g = random_graph(rng, max_n=8, max_d=3)
        if not g.edges:
            continue
        res = synthesize_ctqw(g, 1.0, 1.0, 1e-2, mode="bound", verify=True)
        assert res.distance <= 1e-2
        if res.m >= 2:
            assert res.r * len(res.schedule) >= res.n_exp_bound


def test_preconditions():
    g = cycle_graph(4)
    with pytest.raises(PreconditionError):
        synthesize_ctqw(g, 1.0, 1.0, 2.0)
    with pytest.raises(PreconditionError):
        synthesize_ctqw(g, 1.0, 1.0, 0.0)
    with pytest.raises(PreconditionError):
        synthesize_ctqw(g, 1.0, 1.0, 0.1, k=0)
    # 12 d |H|t = 12 * 2 * 2e-3 < 1
    with pytest.raises(PreconditionError):
        synthesize_ctqw(g, 1.0, 1e-3, 0.1, mode="bound")
    # adaptive mode does not need the bound's precondition
    assert synthesize_ctqw(g, 1.0, 1e-3, 0.1, verify=True).distance <= 0.1


def test_norm_choice():
    g = cycle_graph(8)
    assert synthesize_ctqw(g, 1.0, 1.0, 0.1, norm="exact").norm_ht == pytest.approx(2.0)
    with pytest.raises(ValueError):
        synthesize_ctqw(g, 1.0, 1.0, 0.1, norm="loose")


def test_full_circuit_is_r_copies():
    res = synthesize_ctqw(cycle_graph(4), 1.0, 1.0, 1e-2)
    c = res.circuit()
    assert len(c.gates) == res.r * len(res.segment.gates)
    assert res.total_count().total == len(c.gates)
