"""Report documents and their table/JSON/CSV renderings.

Each subcommand first builds a plain-dict document (the JSON payload), then
the table and CSV renderers derive their output from that same document, so
all three formats always agree.  Rendering is deterministic: no timestamps,
no environment-dependent values, stable key order.
"""

from __future__ import annotations

import csv
import io
import json

from .allocation import ComparisonResult, IterationResult, SweepResult
from .dataset_io import ValidationWarning
from .metrics import FlagTally, NetworkStats, PageRankResult, TopperPreferenceReport

TABLE = "table"
JSON = "json"
CSV = "csv"
FORMATS = (TABLE, JSON, CSV)


# ---------------------------------------------------------------------------
# document builders


def iteration_document(
    result: IterationResult, similarity: ComparisonResult | None = None
) -> dict:
    doc = {
        "algorithm": result.algorithm.value,
        "start": result.start_index,
        "si": result.satisfaction_index,
        "sn": list(result.seed_nodes),
        "teams": [list(team) for team in result.assignment.teams],
    }
    if similarity is not None:
        doc["similarity"] = {
            "retained_edges": similarity.retained_edges,
            "candidate_pairs": similarity.candidate_pairs,
            "reference_pairs": similarity.reference_pairs,
        }
    return doc


def sweep_document(
    result: SweepResult,
    similarity: tuple[int, ComparisonResult] | None = None,
) -> dict:
    doc = {
        "algorithm": result.algorithm.value,
        "iterations": [
            {
                "start": it.start_index,
                "si": it.satisfaction_index,
                "sn": list(it.seed_nodes),
                "teams": [list(team) for team in it.assignment.teams],
            }
            for it in result.iterations
        ],
        "best_index": result.best_index,
    }
    if similarity is not None:
        start, comparison = similarity
        doc["best_by_similarity"] = {
            "start": start,
            "retained_edges": comparison.retained_edges,
            "candidate_pairs": comparison.candidate_pairs,
            "reference_pairs": comparison.reference_pairs,
        }
    return doc


def network_section(
    name: str,
    stats: NetworkStats,
    ranking: list[tuple[int, int]],
    pr: PageRankResult,
    top_k: int,
) -> dict:
    scores = sorted(pr.scores.items(), key=lambda item: (-item[1], item[0]))
    return {
        "name": name,
        "nodes": stats.nodes,
        "edges": stats.edges,
        "density": stats.density,
        "reciprocity": stats.reciprocity,
        "top_indegree": [{"id": v, "indegree": d} for v, d in ranking],
        "pagerank": [
            {"id": v, "score": s} for v, s in scores[: min(top_k, stats.nodes)]
        ],
        "pagerank_damping": pr.damping,
        "pagerank_iterations": pr.iterations_run,
        "pagerank_converged": pr.converged,
    }


def stats_document(
    sections: list[dict], topper: TopperPreferenceReport | None
) -> dict:
    doc: dict = {"networks": sections}
    if topper is not None:
        doc["topper_preferences"] = {
            "toppers": list(topper.topper_ids),
            "prefers_topper_count": topper.prefers_topper_count,
            "only_friends_count": topper.only_friends_count,
            "topper_prefers_topper": [
                {"id": t, "prefers_topper": flag}
                for t, flag in sorted(topper.topper_prefers_topper.items())
            ],
            "lateral_ids": list(topper.lateral_ids),
            "lateral_prefers_topper_count": topper.lateral_prefers_topper_count,
            "lateral_only_friends_count": topper.lateral_only_friends_count,
        }
    return doc


def flags_document(tally: FlagTally, semester: int) -> dict:
    return {
        "semester": semester,
        "positive": tally.positive_count,
        "negative": tally.negative_count,
        "neutral": tally.neutral_count,
        "per_student": [
            {"id": sid, "flag": flag.value}
            for sid, flag in sorted(tally.per_student.items())
        ],
    }


def compare_document(
    algorithm: str,
    start: int,
    comparison: ComparisonResult,
    si: int,
    sn: list[int],
) -> dict:
    return {
        "algorithm": algorithm,
        "start": start,
        "retained_edges": comparison.retained_edges,
        "candidate_pairs": comparison.candidate_pairs,
        "reference_pairs": comparison.reference_pairs,
        "si": si,
        "sn": list(sn),
    }


def validate_document(warnings: list[ValidationWarning]) -> dict:
    return {
        "warnings": [
            {"kind": w.kind, "node": w.node, "message": w.message}
            for w in warnings
        ]
    }


# ---------------------------------------------------------------------------
# renderers


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _aligned(rows: list[tuple], right_cols: set[int] | None = None) -> list[str]:
    """Rows joined with two-space gutters; chosen columns right-aligned."""
    right_cols = right_cols or set()
    cells = [[_fmt(cell) for cell in row] for row in rows]
    if not cells:
        return []
    widths = [
        max(len(row[col]) for row in cells if col < len(row))
        for col in range(max(len(row) for row in cells))
    ]
    lines = []
    for row in cells:
        parts = []
        for col, cell in enumerate(row):
            if col in right_cols:
                parts.append(cell.rjust(widths[col]))
            else:
                parts.append(cell.ljust(widths[col]))
        lines.append("  ".join(parts).rstrip())
    return lines


def _csv_text(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def render_stats_table(doc: dict) -> str:
    lines: list[str] = []
    for section in doc["networks"]:
        lines.append(f"network: {section['name']}")
        lines.extend(
            _aligned(
                [
                    ("  nodes", section["nodes"]),
                    ("  edges", section["edges"]),
                    ("  density", section["density"]),
                    ("  reciprocity", section["reciprocity"]),
                ]
            )
        )
        lines.append("  top indegree:")
        lines.extend(
            _aligned(
                [("    id", "indegree")]
                + [("    " + str(e["id"]), e["indegree"]) for e in section["top_indegree"]],
                right_cols={1},
            )
        )
        lines.append(
            "  pagerank (damping={:g}, iterations={}, converged={}):".format(
                section["pagerank_damping"],
                section["pagerank_iterations"],
                "yes" if section["pagerank_converged"] else "no",
            )
        )
        lines.extend(
            _aligned(
                [("    id", "score")]
                + [("    " + str(e["id"]), e["score"]) for e in section["pagerank"]],
                right_cols={1},
            )
        )
        lines.append("")
    topper = doc.get("topper_preferences")
    if topper is not None:
        lines.append("topper preferences")
        lines.append(f"  toppers: {topper['toppers']}")
        lines.append(f"  students naming a topper: {topper['prefers_topper_count']}")
        lines.append(
            f"  students preferring only friends: {topper['only_friends_count']}"
        )
        for entry in topper["topper_prefers_topper"]:
            verdict = "yes" if entry["prefers_topper"] else "no"
            lines.append(f"  topper {entry['id']} prefers another topper: {verdict}")
        lines.append(f"  lateral students: {topper['lateral_ids']}")
        lines.append(
            f"  lateral naming a topper: {topper['lateral_prefers_topper_count']}"
        )
        lines.append(
            f"  lateral preferring only friends: {topper['lateral_only_friends_count']}"
        )
        lines.append("")
    return "\n".join(lines[:-1]) + "\n" if lines else ""


def render_stats_csv(doc: dict) -> str:
    rows: list[list] = [["network", "record", "id", "value"]]
    for section in doc["networks"]:
        name = section["name"]
        for key in ("nodes", "edges", "density", "reciprocity"):
            rows.append([name, key, "", section[key]])
        for entry in section["top_indegree"]:
            rows.append([name, "top_indegree", entry["id"], entry["indegree"]])
        for entry in section["pagerank"]:
            rows.append([name, "pagerank", entry["id"], entry["score"]])
    topper = doc.get("topper_preferences")
    if topper is not None:
        rows.append(["cohort", "prefers_topper_count", "", topper["prefers_topper_count"]])
        rows.append(["cohort", "only_friends_count", "", topper["only_friends_count"]])
        for entry in topper["topper_prefers_topper"]:
            rows.append(
                ["cohort", "topper_prefers_topper", entry["id"],
                 "true" if entry["prefers_topper"] else "false"]
            )
        rows.append(
            ["cohort", "lateral_prefers_topper_count", "",
             topper["lateral_prefers_topper_count"]]
        )
        rows.append(
            ["cohort", "lateral_only_friends_count", "",
             topper["lateral_only_friends_count"]]
        )
    return _csv_text(rows)


def _team_lines(teams: list[list[int]]) -> list[str]:
    rows = [("  team", "members")]
    for idx, team in enumerate(teams):
        rows.append(("  " + str(idx), " ".join(str(m) for m in team)))
    return _aligned(rows)


def render_iteration_table(doc: dict) -> str:
    lines = [
        f"algorithm: {doc['algorithm']}",
        f"start: {doc['start']}",
        f"si: {doc['si']}",
        f"sn: {doc['sn']}",
    ]
    lines.extend(_team_lines(doc["teams"]))
    if "similarity" in doc:
        sim = doc["similarity"]
        lines.append(
            "retained edges vs reference: {} (candidate pairs {}, reference pairs {})".format(
                sim["retained_edges"], sim["candidate_pairs"], sim["reference_pairs"]
            )
        )
    return "\n".join(lines) + "\n"


def render_iteration_csv(doc: dict) -> str:
    rows: list[list] = [["team_id", "member_id"]]
    for team_id, team in enumerate(doc["teams"]):
        for member in team:
            rows.append([team_id, member])
    return _csv_text(rows)


def render_sweep_table(doc: dict) -> str:
    lines = [f"algorithm: {doc['algorithm']}"]
    rows = [("start", "si", "sn_count")]
    for it in doc["iterations"]:
        rows.append((it["start"], it["si"], len(it["sn"])))
    lines.extend(_aligned(rows, right_cols={0, 1, 2}))
    best = doc["iterations"][doc["best_index"]]
    lines.append(
        f"best iteration: start={best['start']} si={best['si']} sn={best['sn']}"
    )
    if "best_by_similarity" in doc:
        sim = doc["best_by_similarity"]
        lines.append(
            "best by similarity: start={} retained_edges={} "
            "candidate_pairs={} reference_pairs={}".format(
                sim["start"], sim["retained_edges"],
                sim["candidate_pairs"], sim["reference_pairs"],
            )
        )
    return "\n".join(lines) + "\n"


def render_sweep_csv(doc: dict) -> str:
    rows: list[list] = [["start", "si", "sn_count"]]
    for it in doc["iterations"]:
        rows.append([it["start"], it["si"], len(it["sn"])])
    return _csv_text(rows)


def render_flags_table(doc: dict) -> str:
    lines = [
        f"semester: {doc['semester']}",
        f"positive: {doc['positive']}",
        f"negative: {doc['negative']}",
        f"neutral: {doc['neutral']}",
    ]
    rows = [("  id", "flag")]
    rows.extend(("  " + str(e["id"]), e["flag"]) for e in doc["per_student"])
    lines.extend(_aligned(rows))
    return "\n".join(lines) + "\n"


def render_flags_csv(doc: dict) -> str:
    rows: list[list] = [["id", "flag"]]
    rows.extend([e["id"], e["flag"]] for e in doc["per_student"])
    return _csv_text(rows)


def render_compare_table(doc: dict) -> str:
    lines = [
        f"algorithm: {doc['algorithm']}",
        f"start: {doc['start']}",
        f"retained edges: {doc['retained_edges']}",
        f"candidate pairs: {doc['candidate_pairs']}",
        f"reference pairs: {doc['reference_pairs']}",
        f"si: {doc['si']}",
        f"sn: {doc['sn']}",
    ]
    return "\n".join(lines) + "\n"


def render_compare_csv(doc: dict) -> str:
    rows = [
        ["algorithm", "start", "retained_edges", "candidate_pairs",
         "reference_pairs", "si", "sn_count"],
        [doc["algorithm"], doc["start"], doc["retained_edges"],
         doc["candidate_pairs"], doc["reference_pairs"], doc["si"],
         len(doc["sn"])],
    ]
    return _csv_text(rows)


def render_validate_table(doc: dict) -> str:
    warnings = doc["warnings"]
    if not warnings:
        return "no warnings\n"
    lines = [f"{len(warnings)} warning(s)"]
    lines.extend(f"  [{w['kind']}] {w['message']}" for w in warnings)
    return "\n".join(lines) + "\n"


def render_validate_csv(doc: dict) -> str:
    rows: list[list] = [["kind", "node", "message"]]
    rows.extend([w["kind"], w["node"], w["message"]] for w in doc["warnings"])
    return _csv_text(rows)
