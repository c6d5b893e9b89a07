from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohort_alloc import (
    Algorithm,
    InvalidCapacity,
    NodeRangeMismatch,
    StartOutOfRange,
    TeamAssignment,
    best_by_similarity,
    ensure_partition,
    pfcfs_allocate,
    pffn_allocate,
    retained_edges,
    rotation_order,
    satisfaction_index,
    seed_nodes,
    sweep,
)

import oracles
from strategies import (
    dataset_from_lists,
    datasets,
    random_adjacency,
    random_partition,
    team_assignments,
)


# ---------------------------------------------------------------------------
# rotation_order


def test_rotation_midpoint():
    assert rotation_order(5, 2) == [2, 3, 4, 0, 1]


def test_rotation_identity():
    assert rotation_order(5, 0) == [0, 1, 2, 3, 4]


def test_rotation_singleton():
    assert rotation_order(1, 0) == [0]


def test_rotation_rejects_bad_start():
    with pytest.raises(StartOutOfRange):
        rotation_order(5, 5)
    with pytest.raises(StartOutOfRange):
        rotation_order(5, -1)


@given(st.integers(1, 64))
def test_rotation_is_a_permutation_starting_at_x(n):
    for x in range(n):
        order = rotation_order(n, x)
        assert order[0] == x
        assert sorted(order) == list(range(n))


# ---------------------------------------------------------------------------
# PFFN


def _mutual_then_friends_dataset():
    # 0 and 1 prefer each other; 0 also brings friends 2 and 3
    return dataset_from_lists(
        prefs=[[1], [0], [], []],
        friends=[[2, 3], [], [], []],
    )


def test_pffn_mutual_then_friend_fill():
    ds = _mutual_then_friends_dataset()
    result = pffn_allocate(ds, 0, capacity=4)
    assert result.assignment.teams == ((0, 1, 2, 3),)
    assert result.satisfaction_index == 1
    assert result.seed_nodes == []
    expected = oracles.pffn_reference(
        [[1], [0], [], []], [[2, 3], [], [], []], 0, 4
    )
    assert [list(t) for t in result.assignment.teams] == expected


def test_pffn_requires_mutuality():
    ds = dataset_from_lists(prefs=[[1], []], friends=[[], []])
    result = pffn_allocate(ds, 0)
    assert result.assignment.teams == ((0,), (1,))
    assert result.satisfaction_index == 0
    assert result.seed_nodes == [0, 1]


def test_pffn_empty_networks_all_singletons():
    ds = dataset_from_lists(prefs=[[], [], []])
    for start in range(3):
        result = pffn_allocate(ds, start)
        assert result.seed_nodes == [0, 1, 2]
        assert result.satisfaction_index == 0


def test_pffn_skips_allotted_nodes():
    # 2 seeds first and claims 1; 0's mutual pick is then unavailable
    ds = dataset_from_lists(
        prefs=[[1], [0, 2], [1]],
        friends=[[], [], []],
    )
    result = pffn_allocate(ds, 2)
    assert result.assignment.teams == ((2, 1), (0,))


def test_pffn_strict_else_skips_friend_fill():
    prefs = [[1], [0], []]
    friends = [[2], [], []]
    ds = dataset_from_lists(prefs=prefs, friends=friends)
    relaxed = pffn_allocate(ds, 0, capacity=3)
    strict = pffn_allocate(ds, 0, capacity=3, strict_else=True)
    assert relaxed.assignment.teams == ((0, 1, 2),)
    assert strict.assignment.teams == ((0, 1), (2,))
    assert [list(t) for t in strict.assignment.teams] == oracles.pffn_reference(
        prefs, friends, 0, 3, strict_else=True
    )


def test_pffn_strict_else_still_uses_friends_without_mutual():
    ds = dataset_from_lists(prefs=[[1], [], []], friends=[[2], [], []])
    strict = pffn_allocate(ds, 0, strict_else=True)
    assert strict.assignment.teams == ((0, 2), (1,))


def test_pffn_argument_domain():
    ds = dataset_from_lists(prefs=[[], []])
    with pytest.raises(StartOutOfRange):
        pffn_allocate(ds, 2)
    with pytest.raises(InvalidCapacity):
        pffn_allocate(ds, 0, capacity=0)


# ---------------------------------------------------------------------------
# PFCFS


def test_pfcfs_grants_full_wish_at_start():
    ds = dataset_from_lists(prefs=[[1, 2, 3], [0], [3], [2]])
    result = pfcfs_allocate(ds, 0)
    assert result.assignment.teams == ((0, 1, 2, 3),)
    assert result.satisfaction_index == 1


def test_pfcfs_trace_from_start_two():
    prefs = [[1], [0], [1, 3], [2]]
    ds = dataset_from_lists(prefs=prefs)
    result = pfcfs_allocate(ds, 2)
    assert result.assignment.teams == ((2, 1, 3), (0,))
    assert result.seed_nodes == [0]
    assert [list(t) for t in result.assignment.teams] == (
        oracles.pfcfs_reference(prefs, 2, 4)
    )


def test_pfcfs_no_mutuality_needed():
    ds = dataset_from_lists(prefs=[[1], [], []])
    result = pfcfs_allocate(ds, 0)
    assert result.assignment.teams == ((0, 1), (2,))


def test_pfcfs_empty_prefs_all_singletons():
    ds = dataset_from_lists(prefs=[[], [], []])
    result = pfcfs_allocate(ds, 1)
    assert result.seed_nodes == [0, 1, 2]


# ---------------------------------------------------------------------------
# SI / SN


def test_satisfaction_counts_only_full_teams():
    a = TeamAssignment(capacity=4, teams=((0, 1, 2, 3), (4, 5), (6,)))
    assert satisfaction_index(a) == 1
    assert seed_nodes(a) == [6]


def test_satisfaction_all_singletons():
    a = TeamAssignment(capacity=4, teams=((0,), (1,), (2,)))
    assert satisfaction_index(a) == 0
    assert seed_nodes(a) == [0, 1, 2]


def test_seed_nodes_sorted_random_partition():
    rng = random.Random(12)
    a = random_partition(rng, 12, 3)
    expected = sorted(t[0] for t in a.teams if len(t) == 1)
    assert seed_nodes(a) == expected
    assert satisfaction_index(a) == sum(1 for t in a.teams if len(t) == 3)


# ---------------------------------------------------------------------------
# sweep


def test_sweep_empty_networks_identical_iterations():
    ds = dataset_from_lists(prefs=[[], [], []])
    result = sweep(ds, Algorithm.PFFN)
    assert len(result.iterations) == 3
    assert result.best_index == 0
    for start, it in enumerate(result.iterations):
        assert it.start_index == start
        assert it.satisfaction_index == 0
        assert it.seed_nodes == [0, 1, 2]


def test_sweep_matches_bruteforce_per_start():
    rng = random.Random(8)
    n = 8
    prefs = random_adjacency(rng, n, 2)
    friends = random_adjacency(rng, n, 2)
    ds = dataset_from_lists(prefs, friends)
    for algorithm in Algorithm:
        result = sweep(ds, algorithm, capacity=3)
        assert [it.start_index for it in result.iterations] == list(range(n))
        for it in result.iterations:
            if algorithm is Algorithm.PFFN:
                expected = oracles.pffn_reference(
                    prefs, friends, it.start_index, 3
                )
            else:
                expected = oracles.pfcfs_reference(prefs, it.start_index, 3)
            assert [list(t) for t in it.assignment.teams] == expected
            assert it.satisfaction_index == oracles.si_reference(expected, 3)
            assert it.seed_nodes == oracles.sn_reference(expected)


def test_sweep_best_prefers_high_si_then_few_seeds():
    # start at 1 yields the only capacity-2 double team layout
    ds = dataset_from_lists(prefs=[[], [2], [1], [0]])
    result = sweep(ds, Algorithm.PFCFS, capacity=2)
    scored = [
        (-it.satisfaction_index, len(it.seed_nodes), it.start_index)
        for it in result.iterations
    ]
    assert min(scored)[2] == result.best_index


def test_sweep_deterministic_across_threads():
    rng = random.Random(99)
    prefs = random_adjacency(rng, 20, 3)
    friends = random_adjacency(rng, 20, 4)
    ds = dataset_from_lists(prefs, friends)
    runs = [
        sweep(ds, Algorithm.PFFN, threads=t) for t in (1, 2, 0, 1)
    ]
    baseline = [
        (it.start_index, it.assignment.teams, it.seed_nodes)
        for it in runs[0].iterations
    ]
    for other in runs[1:]:
        assert baseline == [
            (it.start_index, it.assignment.teams, it.seed_nodes)
            for it in other.iterations
        ]
        assert other.best_index == runs[0].best_index


def test_sweep_rejects_empty_cohort():
    ds = dataset_from_lists(prefs=[])
    with pytest.raises(StartOutOfRange):
        sweep(ds, Algorithm.PFFN)


# ---------------------------------------------------------------------------
# retained_edges / best_by_similarity


def test_retained_identical_team_of_four():
    a = TeamAssignment(capacity=4, teams=((0, 1, 2, 3),))
    result = retained_edges(a, a)
    assert result.retained_edges == 6
    assert result.candidate_pairs == result.reference_pairs == 6


def test_retained_singletons_share_nothing():
    singles = TeamAssignment(capacity=4, teams=((0,), (1,), (2,)))
    grouped = TeamAssignment(capacity=4, teams=((0, 1, 2),))
    assert retained_edges(singles, grouped).retained_edges == 0


def test_retained_matches_pair_enumeration():
    rng = random.Random(4)
    a = random_partition(rng, 10, 4)
    b = random_partition(rng, 10, 3)
    result = retained_edges(a, b)
    retained, cand, ref = oracles.retained_recount(
        [list(t) for t in a.teams], [list(t) for t in b.teams]
    )
    assert (
        result.retained_edges,
        result.candidate_pairs,
        result.reference_pairs,
    ) == (retained, cand, ref)


def test_retained_rejects_mismatched_ranges():
    a = TeamAssignment(capacity=2, teams=((0, 1),))
    b = TeamAssignment(capacity=2, teams=((0, 1), (2,)))
    with pytest.raises(NodeRangeMismatch):
        retained_edges(a, b)


def test_best_by_similarity_unique_maximum():
    # 2 steals node 4 unless 3 is visited first, so only start 3
    # reunites the reference team (3, 4, 5)
    prefs = [[], [], [4], [4, 5], [], []]
    ds = dataset_from_lists(prefs=prefs)
    reference = TeamAssignment(
        capacity=3, teams=((3, 4, 5), (0,), (1,), (2,))
    )
    swept = sweep(ds, Algorithm.PFCFS, capacity=3)
    start, comparison = best_by_similarity(swept, reference)
    assert start == 3
    assert comparison.retained_edges == 3


def test_best_by_similarity_tie_breaks_to_lowest_start():
    ds = dataset_from_lists(prefs=[[], [], []])
    reference = TeamAssignment(capacity=1, teams=((0,), (1,), (2,)))
    swept = sweep(ds, Algorithm.PFFN)
    start, comparison = best_by_similarity(swept, reference)
    assert start == 0
    assert comparison.retained_edges == 0


def test_best_by_similarity_matches_exhaustive_scan():
    rng = random.Random(31)
    n = 8
    prefs = random_adjacency(rng, n, 2)
    friends = random_adjacency(rng, n, 2)
    ds = dataset_from_lists(prefs, friends)
    reference = random_partition(rng, n, 4)
    swept = sweep(ds, Algorithm.PFFN)
    start, comparison = best_by_similarity(swept, reference)
    best_retained = max(
        oracles.retained_recount(
            [list(t) for t in it.assignment.teams],
            [list(t) for t in reference.teams],
        )[0]
        for it in swept.iterations
    )
    assert comparison.retained_edges == best_retained
    firsts = [
        it.start_index
        for it in swept.iterations
        if oracles.retained_recount(
            [list(t) for t in it.assignment.teams],
            [list(t) for t in reference.teams],
        )[0]
        == best_retained
    ]
    assert start == firsts[0]


# ---------------------------------------------------------------------------
# structural properties


@settings(max_examples=80)
@given(datasets(max_n=12), st.integers(1, 5), st.booleans())
def test_pffn_partition_and_replay(ds, capacity, strict):
    for start in range(ds.n):
        result = pffn_allocate(ds, start, capacity, strict_else=strict)
        ensure_partition(result.assignment, ds.n)
        prefs = ds.prefs.adjacency
        friends = ds.friends.adjacency
        for team in result.assignment.teams:
            seed = team[0]
            for member in team[1:]:
                mutual = member in prefs[seed] and seed in prefs[member]
                befriended = member in friends[seed]
                assert mutual or befriended


@settings(max_examples=80)
@given(datasets(max_n=12), st.integers(1, 5))
def test_pfcfs_partition_and_replay(ds, capacity):
    for start in range(ds.n):
        result = pfcfs_allocate(ds, start, capacity)
        ensure_partition(result.assignment, ds.n)
        prefs = ds.prefs.adjacency
        for team in result.assignment.teams:
            seed = team[0]
            for member in team[1:]:
                assert member in prefs[seed]


@settings(max_examples=50)
@given(datasets(max_n=10), st.integers(1, 5))
def test_si_capacity_identity(ds, capacity):
    for algorithm in Algorithm:
        result = sweep(ds, algorithm, capacity)
        for it in result.iterations:
            full_members = it.satisfaction_index * capacity
            non_full = sum(
                len(t) for t in it.assignment.teams if len(t) != capacity
            )
            assert full_members + non_full == ds.n
            assert it.satisfaction_index <= ds.n // capacity


@settings(max_examples=30)
@given(st.integers(1, 10))
def test_edgeless_networks_force_all_seed_nodes(n):
    ds = dataset_from_lists(prefs=[[] for _ in range(n)])
    for algorithm in Algorithm:
        result = sweep(ds, algorithm)
        for it in result.iterations:
            assert it.satisfaction_index == 0
            assert it.seed_nodes == list(range(n))


@given(team_assignments())
def test_retained_edges_self_comparison(assignment):
    result = retained_edges(assignment, assignment)
    expected = sum(
        len(t) * (len(t) - 1) // 2 for t in assignment.teams
    )
    assert result.retained_edges == expected
    assert result.candidate_pairs == expected
