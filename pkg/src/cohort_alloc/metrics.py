"""Descriptive analytics over the friendship and preference networks.

Everything here is a pure function of immutable inputs: density and
reciprocity, degree rankings, PageRank influence scores, grade-compatibility
flags for preferred partners, and the topper-preference report.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidDamping, SemesterOutOfRange
from .model import CohortDataset, DirectedNetwork, LATERAL_CATEGORIES


@dataclass(frozen=True)
class NetworkStats:
    """Whole-network counts plus per-node degree maps."""

    nodes: int
    edges: int
    density: float
    reciprocity: float
    indegree: dict[int, int]
    outdegree: dict[int, int]


def network_stats(net: DirectedNetwork) -> NetworkStats:
    """Edge count, directed density e/(n(n-1)), reciprocity, degree maps.

    Density is 0 for fewer than two nodes; reciprocity (the fraction of
    directed edges whose reverse also exists) is 0 for an edgeless network.
    """
    n = net.n
    indegree = {v: 0 for v in range(n)}
    outdegree = {v: 0 for v in range(n)}
    edge_set: set[tuple[int, int]] = set()
    for u, out in enumerate(net.adjacency):
        outdegree[u] = len(out)
        for v in out:
            indegree[v] += 1
            edge_set.add((u, v))
    edges = len(edge_set)
    density = edges / (n * (n - 1)) if n >= 2 else 0.0
    if edges:
        mutual = sum(1 for (u, v) in edge_set if (v, u) in edge_set)
        reciprocity = mutual / edges
    else:
        reciprocity = 0.0
    return NetworkStats(
        nodes=n,
        edges=edges,
        density=density,
        reciprocity=reciprocity,
        indegree=indegree,
        outdegree=outdegree,
    )


def top_indegree(net: DirectedNetwork, k: int) -> list[tuple[int, int]]:
    """The min(k, n) most-nominated nodes, ties broken by ascending id."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    stats = network_stats(net)
    ranked = sorted(stats.indegree.items(), key=lambda item: (-item[1], item[0]))
    return ranked[: min(k, net.n)]


@dataclass(frozen=True)
class PageRankResult:
    scores: dict[int, float]
    damping: float
    iterations_run: int
    converged: bool


def pagerank(
    net: DirectedNetwork,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 200,
) -> PageRankResult:
    """Power iteration with uniform teleportation.

    Dangling nodes redistribute their mass uniformly.  Iteration stops when
    the L1 change drops below ``tol`` or after ``max_iter`` rounds; the
    returned scores always sum to 1.
    """
    if not 0.0 < damping < 1.0:
        raise InvalidDamping(f"damping must lie in (0,1), got {damping}")
    n = net.n
    if n == 0:
        raise ValueError("pagerank is undefined on an empty network")
    score = [1.0 / n] * n
    base = (1.0 - damping) / n
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        incoming = [0.0] * n
        dangling = 0.0
        for u, out in enumerate(net.adjacency):
            if out:
                share = score[u] / len(out)
                for v in out:
                    incoming[v] += share
            else:
                dangling += score[u]
        dangling_share = damping * dangling / n
        nxt = [base + damping * mass + dangling_share for mass in incoming]
        delta = sum(abs(a - b) for a, b in zip(nxt, score))
        score = nxt
        if delta < tol:
            converged = True
            break
    return PageRankResult(
        scores={v: score[v] for v in range(n)},
        damping=damping,
        iterations_run=iterations,
        converged=converged,
    )


class Flag(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class FlagTally:
    """Per-student grade-compatibility flags; the three counts partition n."""

    per_student: dict[int, Flag]
    positive_count: int
    negative_count: int
    neutral_count: int


def flag_tally(dataset: CohortDataset, semester_index: int) -> FlagTally:
    """Compare each student's grade against the mean grade of their
    preferred partners for one semester.

    Positive means the partners' mean is strictly higher than the student's
    own score, negative strictly lower.  Students with no preferences, no
    own score, or no partner with a recorded score stay neutral, so the
    three counts always sum to n.
    """
    if not 0 <= semester_index < dataset.semesters:
        raise SemesterOutOfRange(
            f"semester {semester_index} outside the {dataset.semesters} "
            "recorded grade columns"
        )
    per_student: dict[int, Flag] = {}
    for student in dataset.roster:
        per_student[student.id] = _compare_with_partners(
            dataset, student.id, semester_index
        )
    counts = {flag: 0 for flag in Flag}
    for flag in per_student.values():
        counts[flag] += 1
    return FlagTally(
        per_student=per_student,
        positive_count=counts[Flag.POSITIVE],
        negative_count=counts[Flag.NEGATIVE],
        neutral_count=counts[Flag.NEUTRAL],
    )


def _compare_with_partners(
    dataset: CohortDataset, sid: int, semester_index: int
) -> Flag:
    own = dataset.roster[sid].grade(semester_index)
    if own is None:
        return Flag.NEUTRAL
    partner_scores = [
        dataset.roster[p].grade(semester_index)
        for p in dataset.prefs.adjacency[sid]
    ]
    usable = [g for g in partner_scores if g is not None]
    if not usable:
        return Flag.NEUTRAL
    mean = sum(usable) / len(usable)
    if mean > own:
        return Flag.POSITIVE
    if mean < own:
        return Flag.NEGATIVE
    return Flag.NEUTRAL


@dataclass(frozen=True)
class TopperPreferenceReport:
    """How the cohort's preferences relate to its toppers and friends."""

    n: int
    topper_ids: list[int]
    prefers_topper_count: int
    only_friends_count: int
    topper_prefers_topper: dict[int, bool]
    lateral_ids: list[int]
    lateral_prefers_topper_count: int
    lateral_only_friends_count: int


def topper_preference_report(dataset: CohortDataset) -> TopperPreferenceReport:
    """Count topper nominations and friends-only preference lists.

    "Only friends" means the student's preference list is a subset of their
    friend list (an empty preference list qualifies).  Lateral counts
    restrict the same two measures to diploma and branch-change students.
    """
    toppers = set(dataset.topper_ids())
    prefers_topper = 0
    only_friends = 0
    lateral_prefers = 0
    lateral_only_friends = 0
    lateral_ids: list[int] = []
    for student in dataset.roster:
        sid = student.id
        prefs = dataset.prefs.adjacency[sid]
        names_topper = any(p in toppers for p in prefs)
        friends_only = set(prefs) <= set(dataset.friends.adjacency[sid])
        if names_topper:
            prefers_topper += 1
        if friends_only:
            only_friends += 1
        if student.category in LATERAL_CATEGORIES:
            lateral_ids.append(sid)
            if names_topper:
                lateral_prefers += 1
            if friends_only:
                lateral_only_friends += 1
    topper_prefers_topper = {
        t: any(p in toppers and p != t for p in dataset.prefs.adjacency[t])
        for t in sorted(toppers)
    }
    return TopperPreferenceReport(
        n=dataset.n,
        topper_ids=sorted(toppers),
        prefers_topper_count=prefers_topper,
        only_friends_count=only_friends,
        topper_prefers_topper=topper_prefers_topper,
        lateral_ids=lateral_ids,
        lateral_prefers_topper_count=lateral_prefers,
        lateral_only_friends_count=lateral_only_friends,
    )
