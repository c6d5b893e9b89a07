"""Command-line front end.

Subcommands: ``stats``, ``allocate``, ``flags``, ``compare``, ``validate``.
Every subcommand loads the dataset from CSV files, runs pure computations,
and prints one report to stdout in the chosen format (aligned table by
default, ``--format json`` or ``--format csv`` for machine use).

Exit codes: 0 success, 2 input or validation error, 3 argument outside its
domain (bad start index, capacity, damping).  Diagnostics go to stderr.

``COHORT_ALLOC_THREADS`` caps sweep parallelism (0 = one thread per CPU;
unset runs sequentially).  Output is identical for any thread count.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import reports
from .allocation import (
    Algorithm,
    best_by_similarity,
    pfcfs_allocate,
    pffn_allocate,
    retained_edges,
    sweep,
)
from .dataset_io import load_network, load_roster, load_teams, validate
from .errors import DatasetError, DomainError
from .metrics import (
    flag_tally,
    network_stats,
    pagerank,
    top_indegree,
    topper_preference_report,
)
from .model import (
    DEFAULT_CAPACITY,
    FRIEND_LIMIT,
    PREF_LIMIT,
    CohortDataset,
    DirectedNetwork,
)

EXIT_OK = 0
EXIT_DATA_ERROR = 2
EXIT_DOMAIN_ERROR = 3


@dataclass
class RunConfig:
    """Parsed options for one subcommand invocation."""

    command: str
    roster: Path
    friends: Path | None = None
    prefs: Path | None = None
    reference: Path | None = None
    algorithm: Algorithm = Algorithm.PFFN
    capacity: int = DEFAULT_CAPACITY
    start: int | None = None
    sweep: bool = False
    semester: int = 0
    fmt: str = reports.TABLE
    pffn_strict_else: bool = False
    damping: float = 0.85
    tol: float = 1e-9
    max_iter: int = 200
    top_k: int = 5
    threads: int = 1


def _threads_from_env() -> int:
    raw = os.environ.get("COHORT_ALLOC_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return 0 if value == 0 else max(1, value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohort-alloc",
        description="Team formation and network reports for a student cohort.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, networks: str) -> None:
        p.add_argument("--roster", required=True, type=Path,
                       help="roster.csv (defines the node id range)")
        friends_required = networks in ("both",)
        prefs_required = networks in ("both", "prefs")
        if networks != "none":
            p.add_argument("--friends", type=Path, required=friends_required,
                           help="friends.csv edge list")
            p.add_argument("--prefs", type=Path, required=prefs_required,
                           help="prefs.csv edge list")
        p.add_argument("--format", dest="fmt", choices=reports.FORMATS,
                       default=reports.TABLE, help="output format")

    p_stats = sub.add_parser("stats", help="network statistics and rankings")
    add_common(p_stats, networks="optional")
    p_stats.add_argument("--top-k", type=int, default=5,
                         help="length of indegree and pagerank rankings")
    p_stats.add_argument("--damping", type=float, default=0.85)
    p_stats.add_argument("--tol", type=float, default=1e-9)
    p_stats.add_argument("--max-iter", type=int, default=200)

    p_alloc = sub.add_parser("allocate", help="run a team allocation")
    add_common(p_alloc, networks="both")
    p_alloc.add_argument("--algo", choices=[a.value for a in Algorithm],
                         required=True)
    mode = p_alloc.add_mutually_exclusive_group(required=True)
    mode.add_argument("--start", type=int, help="single run from this index")
    mode.add_argument("--sweep", action="store_true",
                      help="run every start index")
    p_alloc.add_argument("--capacity", type=int, default=DEFAULT_CAPACITY)
    p_alloc.add_argument("--reference", type=Path,
                         help="teams.csv to compare against")
    p_alloc.add_argument("--pffn-strict-else", action="store_true",
                         help="consult friends only when no mutual pick lands")

    p_flags = sub.add_parser("flags", help="grade-compatibility flags")
    add_common(p_flags, networks="prefs")
    p_flags.add_argument("--semester", type=int, required=True,
                         help="zero-based grade column")

    p_cmp = sub.add_parser("compare",
                           help="sweep and report the iteration closest to a reference")
    add_common(p_cmp, networks="both")
    p_cmp.add_argument("--algo", choices=[a.value for a in Algorithm],
                       required=True)
    p_cmp.add_argument("--reference", type=Path, required=True)
    p_cmp.add_argument("--start", type=int,
                       help="compare this single start instead of sweeping")
    p_cmp.add_argument("--capacity", type=int, default=DEFAULT_CAPACITY)
    p_cmp.add_argument("--pffn-strict-else", action="store_true")

    p_val = sub.add_parser("validate", help="non-fatal dataset diagnostics")
    add_common(p_val, networks="both")
    p_val.add_argument("--reference", type=Path)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command, roster=args.roster)
    for name in ("friends", "prefs", "reference", "capacity", "start",
                 "semester", "fmt", "pffn_strict_else", "damping", "tol",
                 "max_iter", "top_k"):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    if getattr(args, "algo", None):
        config.algorithm = Algorithm(args.algo)
    config.sweep = bool(getattr(args, "sweep", False))
    config.threads = _threads_from_env()
    return config


def _load(config: RunConfig) -> CohortDataset:
    roster, semesters = load_roster(config.roster)
    n = len(roster)
    empty = DirectedNetwork(n=n, adjacency=tuple(() for _ in range(n)))
    friends = (
        load_network(config.friends, n, max_out=FRIEND_LIMIT)
        if config.friends is not None
        else empty
    )
    prefs = (
        load_network(config.prefs, n, max_out=PREF_LIMIT)
        if config.prefs is not None
        else empty
    )
    reference = (
        load_teams(config.reference, n) if config.reference is not None else None
    )
    return CohortDataset(
        roster=roster,
        friends=friends,
        prefs=prefs,
        reference_teams=reference,
        semesters=semesters,
    )


def cmd_stats(config: RunConfig) -> str:
    if config.friends is None and config.prefs is None:
        raise DatasetError("stats needs --friends and/or --prefs")
    dataset = _load(config)
    sections = []
    named = []
    if config.friends is not None:
        named.append(("friends", dataset.friends))
    if config.prefs is not None:
        named.append(("prefs", dataset.prefs))
    for name, net in named:
        stats = network_stats(net)
        ranking = top_indegree(net, max(config.top_k, 1))
        pr = pagerank(net, damping=config.damping, tol=config.tol,
                      max_iter=config.max_iter)
        sections.append(
            reports.network_section(name, stats, ranking, pr, config.top_k)
        )
    topper = None
    if config.friends is not None and config.prefs is not None:
        topper = topper_preference_report(dataset)
    doc = reports.stats_document(sections, topper)
    if config.fmt == reports.JSON:
        return reports.render_json(doc)
    if config.fmt == reports.CSV:
        return reports.render_stats_csv(doc)
    return reports.render_stats_table(doc)


def _allocate_one(config: RunConfig, dataset: CohortDataset):
    if config.algorithm is Algorithm.PFFN:
        return pffn_allocate(dataset, config.start, config.capacity,
                             strict_else=config.pffn_strict_else)
    return pfcfs_allocate(dataset, config.start, config.capacity)


def cmd_allocate(config: RunConfig) -> str:
    dataset = _load(config)
    if config.sweep:
        result = sweep(dataset, config.algorithm, config.capacity,
                       strict_else=config.pffn_strict_else,
                       threads=config.threads)
        similarity = None
        if dataset.reference_teams is not None:
            similarity = best_by_similarity(result, dataset.reference_teams)
        doc = reports.sweep_document(result, similarity)
        if config.fmt == reports.JSON:
            return reports.render_json(doc)
        if config.fmt == reports.CSV:
            return reports.render_sweep_csv(doc)
        return reports.render_sweep_table(doc)
    result = _allocate_one(config, dataset)
    similarity = None
    if dataset.reference_teams is not None:
        similarity = retained_edges(result.assignment, dataset.reference_teams)
    doc = reports.iteration_document(result, similarity)
    if config.fmt == reports.JSON:
        return reports.render_json(doc)
    if config.fmt == reports.CSV:
        return reports.render_iteration_csv(doc)
    return reports.render_iteration_table(doc)


def cmd_flags(config: RunConfig) -> str:
    dataset = _load(config)
    tally = flag_tally(dataset, config.semester)
    doc = reports.flags_document(tally, config.semester)
    if config.fmt == reports.JSON:
        return reports.render_json(doc)
    if config.fmt == reports.CSV:
        return reports.render_flags_csv(doc)
    return reports.render_flags_table(doc)


def cmd_compare(config: RunConfig) -> str:
    dataset = _load(config)
    if dataset.reference_teams is None:
        raise DatasetError("compare needs --reference")
    if config.start is not None:
        result = _allocate_one(config, dataset)
        comparison = retained_edges(result.assignment, dataset.reference_teams)
        start = result.start_index
        si, sn = result.satisfaction_index, result.seed_nodes
    else:
        swept = sweep(dataset, config.algorithm, config.capacity,
                      strict_else=config.pffn_strict_else,
                      threads=config.threads)
        start, comparison = best_by_similarity(swept, dataset.reference_teams)
        best = swept.iterations[start]
        si, sn = best.satisfaction_index, best.seed_nodes
    doc = reports.compare_document(config.algorithm.value, start, comparison,
                                   si, sn)
    if config.fmt == reports.JSON:
        return reports.render_json(doc)
    if config.fmt == reports.CSV:
        return reports.render_compare_csv(doc)
    return reports.render_compare_table(doc)


def cmd_validate(config: RunConfig) -> str:
    dataset = _load(config)
    warnings = validate(dataset)
    doc = reports.validate_document(warnings)
    if config.fmt == reports.JSON:
        return reports.render_json(doc)
    if config.fmt == reports.CSV:
        return reports.render_validate_csv(doc)
    return reports.render_validate_table(doc)


_COMMANDS = {
    "stats": cmd_stats,
    "allocate": cmd_allocate,
    "flags": cmd_flags,
    "compare": cmd_compare,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        output = _COMMANDS[config.command](config)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    sys.stdout.write(output)
    return EXIT_OK


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
