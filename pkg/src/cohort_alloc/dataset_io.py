"""CSV ingestion and serialization for cohort datasets.

File formats (UTF-8, comma-separated, LF or CRLF):

* roster.csv  -- ``id,label,category,is_topper,grade_s1,...,grade_sK``;
  category is one of regular/diploma/backlog/branch_change; grade cells may
  be empty.  Any number of trailing ``grade_*`` columns is accepted.
* friends.csv / prefs.csv -- ``src,dst``, one directed edge per row; row
  order defines each node's neighbor order.
* teams.csv -- ``team_id,member_id``; team order is first-appearance order,
  member order is row order.

Loading is pure and validating: malformed or inconsistent input raises one
of the :mod:`cohort_alloc.errors` classes naming file and line.  Writers
mirror the readers so a loaded dataset round-trips identically, including
neighbor ordering.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    IdOutOfRange,
    InconsistentNodeCount,
    MalformedRow,
)
from .model import (
    Category,
    CohortDataset,
    DirectedNetwork,
    FRIEND_LIMIT,
    PREF_LIMIT,
    Student,
    TeamAssignment,
    ensure_partition,
)

ROSTER_FIXED_COLUMNS = ("id", "label", "category", "is_topper")
EDGE_COLUMNS = ("src", "dst")
TEAM_COLUMNS = ("team_id", "member_id")

_BOOL_TOKENS = {"true": True, "false": False}


def _read_rows(path: str | Path, expected_header: tuple[str, ...] | None):
    """Yield (line_number, row) pairs after checking the header.

    A zero-byte file is treated as having no rows.  When ``expected_header``
    is None the header is returned via the first yielded pair with line 1.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            return
        if expected_header is not None and tuple(header) != expected_header:
            raise MalformedRow(
                f"{path}, line 1: expected header "
                f"{','.join(expected_header)!r}, got {','.join(header)!r}"
            )
        if expected_header is None:
            yield 1, header
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            yield line_no, row


def _parse_int(cell: str, path: Path, line_no: int, what: str) -> int:
    try:
        return int(cell)
    except ValueError:
        raise MalformedRow(
            f"{path}, line {line_no}: {what} {cell!r} is not an integer"
        ) from None


def load_roster(path: str | Path) -> tuple[tuple[Student, ...], int]:
    """Read roster.csv; returns (students ordered by id, grade column count)."""
    path = Path(path)
    rows = _read_rows(path, None)
    try:
        _, header = next(rows)
    except StopIteration:
        return (), 0
    if tuple(header[: len(ROSTER_FIXED_COLUMNS)]) != ROSTER_FIXED_COLUMNS:
        raise MalformedRow(
            f"{path}, line 1: roster header must start with "
            f"{','.join(ROSTER_FIXED_COLUMNS)!r}"
        )
    grade_columns = header[len(ROSTER_FIXED_COLUMNS) :]
    for name in grade_columns:
        if not name.startswith("grade_"):
            raise MalformedRow(
                f"{path}, line 1: unexpected roster column {name!r} "
                "(grade columns must be named grade_*)"
            )
    width = len(header)

    by_id: dict[int, Student] = {}
    for line_no, row in rows:
        if len(row) != width:
            raise MalformedRow(
                f"{path}, line {line_no}: expected {width} fields, got {len(row)}"
            )
        sid = _parse_int(row[0], path, line_no, "id")
        label = row[1] or None
        try:
            category = Category(row[2])
        except ValueError:
            raise MalformedRow(
                f"{path}, line {line_no}: unknown category {row[2]!r}"
            ) from None
        topper_token = row[3].strip().lower()
        if topper_token not in _BOOL_TOKENS:
            raise MalformedRow(
                f"{path}, line {line_no}: is_topper must be true or false, "
                f"got {row[3]!r}"
            )
        grades: list[float | None] = []
        for name, cell in zip(grade_columns, row[4:]):
            if cell == "":
                grades.append(None)
                continue
            try:
                score = float(cell)
            except ValueError:
                raise MalformedRow(
                    f"{path}, line {line_no}: {name} {cell!r} is not a number"
                ) from None
            if score < 0:
                raise MalformedRow(
                    f"{path}, line {line_no}: {name} is negative"
                )
            grades.append(score)
        if sid in by_id:
            raise InconsistentNodeCount(
                f"{path}, line {line_no}: duplicate student id {sid}"
            )
        by_id[sid] = Student(
            id=sid,
            label=label,
            category=category,
            is_topper=_BOOL_TOKENS[topper_token],
            grades=tuple(grades),
        )

    n = len(by_id)
    for sid in by_id:
        if not (0 <= sid < n):
            raise IdOutOfRange(
                f"{path}: student id {sid} outside [0,{n}) "
                "(ids must be dense and zero-based)"
            )
    roster = tuple(by_id[i] for i in range(n))
    return roster, len(grade_columns)


def load_network(
    path: str | Path,
    n: int,
    max_out: int | None = None,
) -> DirectedNetwork:
    """Read an edge-list CSV into a network over nodes [0, n)."""
    path = Path(path)
    edges: list[tuple[int, int]] = []
    labels: list[str] = []
    for line_no, row in _read_rows(path, EDGE_COLUMNS):
        if len(row) != 2:
            raise MalformedRow(
                f"{path}, line {line_no}: expected 2 fields, got {len(row)}"
            )
        src = _parse_int(row[0], path, line_no, "src")
        dst = _parse_int(row[1], path, line_no, "dst")
        edges.append((src, dst))
        labels.append(f"{path}, line {line_no}")
    return DirectedNetwork.from_edges(n, edges, max_out=max_out, labels=labels)


def load_teams(path: str | Path, n: int | None = None) -> TeamAssignment:
    """Read teams.csv into an assignment; capacity is the largest team size.

    When ``n`` is given the assignment must partition exactly [0, n).
    """
    path = Path(path)
    order: list[int] = []
    members: dict[int, list[int]] = {}
    for line_no, row in _read_rows(path, TEAM_COLUMNS):
        if len(row) != 2:
            raise MalformedRow(
                f"{path}, line {line_no}: expected 2 fields, got {len(row)}"
            )
        team_id = _parse_int(row[0], path, line_no, "team_id")
        member = _parse_int(row[1], path, line_no, "member_id")
        if team_id not in members:
            members[team_id] = []
            order.append(team_id)
        members[team_id].append(member)
    teams = tuple(tuple(members[tid]) for tid in order)
    capacity = max((len(t) for t in teams), default=1)
    assignment = TeamAssignment(capacity=capacity, teams=teams)
    try:
        ensure_partition(assignment, n)
    except InconsistentNodeCount as exc:
        raise InconsistentNodeCount(f"{path}: {exc}") from None
    return assignment


def load_dataset(
    roster_path: str | Path,
    friends_path: str | Path,
    prefs_path: str | Path,
    reference_path: str | Path | None = None,
    enforce_degree_bounds: bool = True,
) -> CohortDataset:
    """Load and cross-validate a full cohort dataset.

    Degree bounds (friends <= 4, preferences <= 3) reflect how the data is
    collected, not what the algorithms need, so ``enforce_degree_bounds``
    may be switched off for unusual inputs.
    """
    roster, semesters = load_roster(roster_path)
    n = len(roster)
    friends = load_network(
        friends_path, n, max_out=FRIEND_LIMIT if enforce_degree_bounds else None
    )
    prefs = load_network(
        prefs_path, n, max_out=PREF_LIMIT if enforce_degree_bounds else None
    )
    reference = None
    if reference_path is not None:
        reference = load_teams(reference_path, n)
    return CohortDataset(
        roster=roster,
        friends=friends,
        prefs=prefs,
        reference_teams=reference,
        semesters=semesters,
    )


@dataclass(frozen=True)
class ValidationWarning:
    """A non-fatal anomaly in a structurally valid dataset."""

    kind: str
    node: int
    message: str


def validate(dataset: CohortDataset) -> list[ValidationWarning]:
    """Collect non-fatal diagnostics: likely isolates, never-nominated
    students, and toppers lacking any recorded grade."""
    warnings: list[ValidationWarning] = []
    named: set[int] = set()
    for net in (dataset.friends, dataset.prefs):
        for out in net.adjacency:
            named.update(out)
    for student in dataset.roster:
        sid = student.id
        if not dataset.friends.adjacency[sid] and not dataset.prefs.adjacency[sid]:
            warnings.append(
                ValidationWarning(
                    kind="isolate_candidate",
                    node=sid,
                    message=f"node {sid}: lists no friends and no preferences",
                )
            )
        if sid not in named:
            warnings.append(
                ValidationWarning(
                    kind="never_nominated",
                    node=sid,
                    message=f"node {sid}: named by no one in either network",
                )
            )
        if student.is_topper and all(g is None for g in student.grades):
            warnings.append(
                ValidationWarning(
                    kind="topper_without_grades",
                    node=sid,
                    message=f"node {sid}: flagged topper but has no recorded grades",
                )
            )
    return warnings


def write_roster(roster: tuple[Student, ...], semesters: int, path: str | Path) -> None:
    path = Path(path)
    header = list(ROSTER_FIXED_COLUMNS) + [
        f"grade_s{i + 1}" for i in range(semesters)
    ]
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for s in roster:
            grades = ["" if g is None else _format_number(g) for g in s.grades]
            grades += [""] * (semesters - len(grades))
            writer.writerow(
                [s.id, s.label or "", s.category.value,
                 "true" if s.is_topper else "false", *grades]
            )


def write_network(net: DirectedNetwork, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(EDGE_COLUMNS)
        writer.writerows(net.edges())


def write_teams(assignment: TeamAssignment, path: str | Path) -> None:
    """Write teams.csv; output re-ingests as a reference assignment."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TEAM_COLUMNS)
        for team_id, team in enumerate(assignment.teams):
            for member in team:
                writer.writerow([team_id, member])


def write_dataset(dataset: CohortDataset, directory: str | Path) -> dict[str, Path]:
    """Write all dataset files into ``directory``; returns the paths used."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "roster": directory / "roster.csv",
        "friends": directory / "friends.csv",
        "prefs": directory / "prefs.csv",
    }
    write_roster(dataset.roster, dataset.semesters, paths["roster"])
    write_network(dataset.friends, paths["friends"])
    write_network(dataset.prefs, paths["prefs"])
    if dataset.reference_teams is not None:
        paths["reference"] = directory / "teams.csv"
        write_teams(dataset.reference_teams, paths["reference"])
    return paths


def _format_number(value: float) -> str:
    """Integral floats print without a trailing .0 so files stay tidy."""
    if value == int(value):
        return str(int(value))
    return repr(value)
