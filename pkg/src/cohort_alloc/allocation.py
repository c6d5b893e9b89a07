"""Greedy team allotment: the PFFN and PFCFS algorithms and their sweeps.

Both algorithms visit students first-come-first-serve in roster order,
rotated to begin at a chosen start index.  Each unallotted student opens a
new team and fills it from their own lists:

* PFFN grants mutual preferences first (u joins v's team only when each
  names the other), then fills remaining seats from the seed's friend list.
* PFCFS grants the seed's preference list outright, no mutuality required
  and no friend fallback.

Already-allotted students are skipped, so earlier teams always win
contested picks; list order is the only tie-break.  A sweep runs one
allocation per start index and ranks the iterations by satisfaction index
(count of exactly-full teams, descending) then seed-node count (ascending).

Only the seed's own lists are consulted while a team forms; added members
never recruit transitively.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import InvalidCapacity, NodeRangeMismatch, StartOutOfRange
from .model import DEFAULT_CAPACITY, CohortDataset, TeamAssignment


class Algorithm(str, Enum):
    PFFN = "pffn"
    PFCFS = "pfcfs"


@dataclass
class IterationResult:
    """Outcome of one allocation run from one start index."""

    algorithm: Algorithm
    start_index: int
    assignment: TeamAssignment
    satisfaction_index: int
    seed_nodes: list[int]


@dataclass
class SweepResult:
    """All n rotations of one algorithm, plus the winning start index."""

    algorithm: Algorithm
    iterations: list[IterationResult]
    best_index: int


@dataclass(frozen=True)
class ComparisonResult:
    """Unordered co-membership pairs shared between two assignments."""

    retained_edges: int
    candidate_pairs: int
    reference_pairs: int


def rotation_order(n: int, x: int) -> list[int]:
    """Visit order [x, x+1, ..., n-1, 0, ..., x-1]."""
    if not 0 <= x < n:
        raise StartOutOfRange(f"start index {x} outside [0,{n})")
    return list(range(x, n)) + list(range(x))


def satisfaction_index(assignment: TeamAssignment) -> int:
    """Number of teams filled to exactly the capacity."""
    capacity = assignment.capacity
    return sum(1 for team in assignment.teams if len(team) == capacity)


def seed_nodes(assignment: TeamAssignment) -> list[int]:
    """Members of singleton teams, ascending."""
    return sorted(team[0] for team in assignment.teams if len(team) == 1)


def _check_allocation_args(n: int, start_index: int, capacity: int) -> None:
    if capacity < 1:
        raise InvalidCapacity(f"capacity must be >= 1, got {capacity}")
    if not 0 <= start_index < n:
        raise StartOutOfRange(f"start index {start_index} outside [0,{n})")


def _mutual_adjacency(prefs: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """Per node, the preferred partners who prefer them back, in list order.

    Mutuality does not depend on allocation state, so it is computed once
    and shared by every start index of a sweep.
    """
    pref_sets = [set(out) for out in prefs]
    return [
        tuple(u for u in out if v in pref_sets[u])
        for v, out in enumerate(prefs)
    ]


def _pffn_teams(
    n: int,
    mutual: list[tuple[int, ...]],
    friends: tuple[tuple[int, ...], ...],
    order: list[int],
    capacity: int,
    strict_else: bool,
) -> tuple[tuple[int, ...], ...]:
    allotted = bytearray(n)
    teams: list[tuple[int, ...]] = []
    for v in order:
        if allotted[v]:
            continue
        allotted[v] = 1
        team = [v]
        room = capacity - 1
        if room:
            for u in mutual[v]:
                if not allotted[u]:
                    allotted[u] = 1
                    team.append(u)
                    room -= 1
                    if not room:
                        break
        # strict_else: consult friends only when no mutual pick succeeded
        if room and not (strict_else and len(team) > 1):
            for u in friends[v]:
                if not allotted[u]:
                    allotted[u] = 1
                    team.append(u)
                    room -= 1
                    if not room:
                        break
        teams.append(tuple(team))
    return tuple(teams)


def _pfcfs_teams(
    n: int,
    prefs: tuple[tuple[int, ...], ...],
    order: list[int],
    capacity: int,
) -> tuple[tuple[int, ...], ...]:
    allotted = bytearray(n)
    teams: list[tuple[int, ...]] = []
    for v in order:
        if allotted[v]:
            continue
        allotted[v] = 1
        team = [v]
        room = capacity - 1
        if room:
            for u in prefs[v]:
                if not allotted[u]:
                    allotted[u] = 1
                    team.append(u)
                    room -= 1
                    if not room:
                        break
        teams.append(tuple(team))
    return tuple(teams)


def _wrap(algorithm: Algorithm, start_index: int, capacity: int,
          teams: tuple[tuple[int, ...], ...]) -> IterationResult:
    assignment = TeamAssignment(capacity=capacity, teams=teams)
    return IterationResult(
        algorithm=algorithm,
        start_index=start_index,
        assignment=assignment,
        satisfaction_index=satisfaction_index(assignment),
        seed_nodes=seed_nodes(assignment),
    )


def pffn_allocate(
    dataset: CohortDataset,
    start_index: int,
    capacity: int = DEFAULT_CAPACITY,
    strict_else: bool = False,
) -> IterationResult:
    """One PFFN run: mutual preferences first, seed's friends to fill.

    With ``strict_else`` the friend phase runs only when the mutual phase
    added nobody, instead of filling whatever seats remain.
    """
    n = dataset.n
    _check_allocation_args(n, start_index, capacity)
    mutual = _mutual_adjacency(dataset.prefs.adjacency)
    teams = _pffn_teams(
        n,
        mutual,
        dataset.friends.adjacency,
        rotation_order(n, start_index),
        capacity,
        strict_else,
    )
    return _wrap(Algorithm.PFFN, start_index, capacity, teams)


def pfcfs_allocate(
    dataset: CohortDataset,
    start_index: int,
    capacity: int = DEFAULT_CAPACITY,
) -> IterationResult:
    """One PFCFS run: the seed's preference list in order, no mutuality."""
    n = dataset.n
    _check_allocation_args(n, start_index, capacity)
    teams = _pfcfs_teams(
        n,
        dataset.prefs.adjacency,
        rotation_order(n, start_index),
        capacity,
    )
    return _wrap(Algorithm.PFCFS, start_index, capacity, teams)


def sweep(
    dataset: CohortDataset,
    algorithm: Algorithm,
    capacity: int = DEFAULT_CAPACITY,
    strict_else: bool = False,
    threads: int = 1,
) -> SweepResult:
    """Run one allocation per start index and pick the best iteration.

    Best means highest satisfaction index, then fewest seed nodes, then
    lowest start index.  ``threads`` > 1 runs iterations concurrently
    (0 means one per CPU); results are assembled in start order either way,
    so output is identical for any thread count.
    """
    n = dataset.n
    if n == 0:
        raise StartOutOfRange("cannot sweep an empty cohort")
    if capacity < 1:
        raise InvalidCapacity(f"capacity must be >= 1, got {capacity}")
    algorithm = Algorithm(algorithm)
    prefs = dataset.prefs.adjacency
    friends = dataset.friends.adjacency
    mutual = _mutual_adjacency(prefs) if algorithm is Algorithm.PFFN else None
    doubled = list(range(n)) * 2

    def run(x: int) -> IterationResult:
        order = doubled[x : x + n]
        if algorithm is Algorithm.PFFN:
            teams = _pffn_teams(n, mutual, friends, order, capacity, strict_else)
        else:
            teams = _pfcfs_teams(n, prefs, order, capacity)
        return _wrap(algorithm, x, capacity, teams)

    if threads == 1:
        iterations = [run(x) for x in range(n)]
    else:
        workers = threads if threads > 0 else (os.cpu_count() or 1)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            iterations = list(pool.map(run, range(n)))

    best_index = min(
        range(n),
        key=lambda x: (
            -iterations[x].satisfaction_index,
            len(iterations[x].seed_nodes),
            x,
        ),
    )
    return SweepResult(
        algorithm=algorithm, iterations=iterations, best_index=best_index
    )


def _pair_set(assignment: TeamAssignment) -> set[tuple[int, int]]:
    pairs: set[tuple[int, int]] = set()
    for team in assignment.teams:
        for a, b in combinations(team, 2):
            pairs.add((a, b) if a < b else (b, a))
    return pairs


def retained_edges(
    candidate: TeamAssignment, reference: TeamAssignment
) -> ComparisonResult:
    """Co-membership pairs the candidate keeps from the reference grouping."""
    cand_members = {m for team in candidate.teams for m in team}
    ref_members = {m for team in reference.teams for m in team}
    if cand_members != ref_members:
        raise NodeRangeMismatch(
            f"assignments cover different ids ({len(cand_members)} vs "
            f"{len(ref_members)} members)"
        )
    cand_pairs = _pair_set(candidate)
    ref_pairs = _pair_set(reference)
    return ComparisonResult(
        retained_edges=len(cand_pairs & ref_pairs),
        candidate_pairs=len(cand_pairs),
        reference_pairs=len(ref_pairs),
    )


def best_by_similarity(
    sweep_result: SweepResult, reference: TeamAssignment
) -> tuple[int, ComparisonResult]:
    """The sweep iteration retaining the most reference pairs.

    Ties break toward the lower start index.
    """
    if not sweep_result.iterations:
        raise ValueError("sweep has no iterations")
    best: tuple[int, ComparisonResult] | None = None
    for iteration in sweep_result.iterations:
        comparison = retained_edges(iteration.assignment, reference)
        if best is None or comparison.retained_edges > best[1].retained_edges:
            best = (iteration.start_index, comparison)
    return best
