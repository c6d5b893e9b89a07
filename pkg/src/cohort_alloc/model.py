"""Domain types: students, directed networks, and team assignments.

All types are plain dataclasses and are treated as immutable after
construction; nothing in the package mutates a loaded dataset, so instances
are safe to share across threads.

Node ids are dense zero-based integers.  Adjacency lists are *ordered*:
the position of a neighbor is the tie-break order used by the allocation
algorithms, so it is preserved exactly as given (file row order when loaded
from CSV).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .errors import (
    DegreeBoundExceeded,
    DuplicateEdge,
    IdOutOfRange,
    InconsistentNodeCount,
    SelfLoop,
)

#: Maximum friends named per student.
FRIEND_LIMIT = 4
#: Maximum preferred partners named per student.
PREF_LIMIT = 3

DEFAULT_CAPACITY = 4


class Category(str, Enum):
    """Admission category of a student."""

    REGULAR = "regular"
    DIPLOMA = "diploma"
    BACKLOG = "backlog"
    BRANCH_CHANGE = "branch_change"


#: Categories of students who entered the cohort laterally.
LATERAL_CATEGORIES = frozenset({Category.DIPLOMA, Category.BRANCH_CHANGE})


@dataclass(frozen=True)
class Student:
    """One roster record.

    ``grades`` holds one slot per roster grade column, ``None`` where the
    semester was not recorded (lateral entrants lack early semesters).
    Keeping the gaps explicit keeps semester indices aligned across all
    students.
    """

    id: int
    label: str | None
    category: Category
    is_topper: bool
    grades: tuple[float | None, ...] = ()

    def grade(self, semester_index: int) -> float | None:
        """Recorded score for one semester column, or None."""
        if 0 <= semester_index < len(self.grades):
            return self.grades[semester_index]
        return None


@dataclass(frozen=True)
class DirectedNetwork:
    """Ordered out-adjacency lists over nodes 0..n-1."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: list[tuple[int, int]] | tuple[tuple[int, int], ...],
        max_out: int | None = None,
        labels: list[str] | None = None,
    ) -> "DirectedNetwork":
        """Build a network from (src, dst) pairs, preserving pair order.

        Rejects self-loops, duplicate edges, ids outside [0, n), and (when
        ``max_out`` is given) out-lists longer than ``max_out``.  ``labels``
        optionally names each edge's origin (file and line) for errors.
        """
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for i, (src, dst) in enumerate(edges):
            origin = f"{labels[i]}: " if labels else ""
            if not (0 <= src < n) or not (0 <= dst < n):
                raise IdOutOfRange(
                    f"{origin}edge ({src},{dst}) references an id outside [0,{n})"
                )
            if src == dst:
                raise SelfLoop(f"{origin}node {src} lists itself")
            if (src, dst) in seen:
                raise DuplicateEdge(f"{origin}edge ({src},{dst}) appears twice")
            seen.add((src, dst))
            if max_out is not None and len(adj[src]) >= max_out:
                raise DegreeBoundExceeded(
                    f"{origin}node {src} lists more than {max_out} out-neighbors"
                )
            adj[src].append(dst)
        return cls(n=n, adjacency=tuple(tuple(out) for out in adj))

    def edges(self) -> list[tuple[int, int]]:
        """All directed edges in per-node list order."""
        return [(u, v) for u, out in enumerate(self.adjacency) for v in out]

    @property
    def edge_count(self) -> int:
        return sum(len(out) for out in self.adjacency)


@dataclass(eq=True)
class TeamAssignment:
    """A partition of nodes into ordered teams.

    The first member of each team is the seed that opened it.  ``membership``
    is derived lazily; teams and capacity define equality.
    """

    capacity: int
    teams: tuple[tuple[int, ...], ...]

    @cached_property
    def membership(self) -> dict[int, int]:
        """Map node id -> index of the team containing it."""
        return {
            member: idx for idx, team in enumerate(self.teams) for member in team
        }

    @property
    def n(self) -> int:
        return sum(len(team) for team in self.teams)


def ensure_partition(assignment: TeamAssignment, n: int | None = None) -> None:
    """Check that an assignment partitions [0, n) into teams of 1..capacity.

    ``n`` defaults to the assignment's own member count; pass the roster size
    to additionally reject assignments covering a different id range.  This is
    the one shared validity check: every assignment built or loaded anywhere
    must pass it.
    """
    if assignment.capacity < 1:
        raise InconsistentNodeCount(
            f"capacity must be >= 1, got {assignment.capacity}"
        )
    total = assignment.n
    expected = total if n is None else n
    seen: set[int] = set()
    for team in assignment.teams:
        if not 1 <= len(team) <= assignment.capacity:
            raise InconsistentNodeCount(
                f"team {list(team)} has size {len(team)}, "
                f"allowed 1..{assignment.capacity}"
            )
        for member in team:
            if not (0 <= member < expected):
                raise InconsistentNodeCount(
                    f"member {member} outside [0,{expected})"
                )
            if member in seen:
                raise InconsistentNodeCount(f"member {member} appears twice")
            seen.add(member)
    if len(seen) != expected:
        missing = sorted(set(range(expected)) - seen)
        raise InconsistentNodeCount(
            f"assignment covers {len(seen)} of {expected} ids"
            + (f", missing {missing[:5]}" if missing else "")
        )


@dataclass
class CohortDataset:
    """Roster plus the friendship and preference networks.

    ``reference_teams`` optionally holds an externally given grouping (for
    instance the later-semester seminar teams) used for retained-edge
    comparisons.
    """

    roster: tuple[Student, ...]
    friends: DirectedNetwork
    prefs: DirectedNetwork
    reference_teams: TeamAssignment | None = None
    semesters: int = 0

    @property
    def n(self) -> int:
        return len(self.roster)

    def topper_ids(self) -> list[int]:
        return [s.id for s in self.roster if s.is_topper]
