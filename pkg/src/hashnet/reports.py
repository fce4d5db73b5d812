"""Report rendering (machine- and human-readable) and cross-run comparison.

The machine-readable report is JSON with stable, sorted keys; every
number shown in the human-readable rendering is also present there.
Ratios are printed both as fractions and as one-decimal percentages.
"""

from __future__ import annotations

import json
from dataclasses import asdict

from .community import CommunityIndicators, UNLABELED_SUBKEY
from .errors import SchemaMismatchError
from .metrics import CENTRALITY_METRICS, NetworkSummary

SCHEMA_VERSION = 1

_PERCENT_FIELDS = (
    "interactivity_edge_ratio",
    "interactivity_vertex_ratio",
    "main_component_node_share",
    "main_component_edge_share",
    "url_tweet_fraction",
)

_TALLY_COLUMNS = ("ORG", "JMB", "OI", "OTHER")


def percent(value) -> float | None:
    """0.4286 -> 42.9, a one-decimal percentage."""
    return None if value is None else round(100.0 * value, 1)


def report_dict(summary: NetworkSummary, indicators: CommunityIndicators, top_nodes=None):
    """Assemble the machine-readable report structure."""
    community = asdict(indicators)
    community["percent"] = {
        f"{name}_pct": percent(community[name]) for name in _PERCENT_FIELDS
    }
    data = {
        "schema_version": SCHEMA_VERSION,
        "summary": asdict(summary),
        "community": community,
    }
    if top_nodes is not None:
        data["top_nodes"] = {
            metric: [[account_id, value] for account_id, value in ranked]
            for metric, ranked in top_nodes.items()
        }
    return data


def _fmt(value):
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _fmt_ratio(value):
    if value is None:
        return "undefined"
    return f"{value:.4f} ({percent(value):.1f}%)"


def render_text(data: dict) -> str:
    """Human-readable rendering of a machine report."""
    summary = data["summary"]
    community = data["community"]
    lines = ["NETWORK METRICS", "=" * 40]
    rows = [
        ("network size (no of nodes)", _fmt(summary["node_count"])),
        ("number of edges", _fmt(summary["edge_count"])),
        ("density", "undefined" if summary["density"] is None else f"{summary['density']:.3f}"),
        ("connected components", _fmt(summary["component_count"])),
        ("avg. geodesic distance", _fmt(summary["avg_geodesic_distance"])),
        ("diameter", _fmt(summary["diameter"])),
        ("avg betweenness centrality", _fmt(summary["avg_betweenness"])),
        ("avg eigenvector centrality", _fmt(summary["avg_eigenvector"])),
        ("avg clustering coefficient", _fmt(summary["avg_clustering"])),
    ]
    width = max(len(label) for label, _ in rows)
    lines += [f"{label:<{width}}  {value}" for label, value in rows]

    lines += ["", "TYPES OF ACCOUNT OF THE MOST CENTRAL NODES", "=" * 40]
    header = f"{'metric':<14}" + "".join(f"{c:>6}" for c in _TALLY_COLUMNS)
    lines.append(header + f"  ({UNLABELED_SUBKEY.lower()})")
    for metric in CENTRALITY_METRICS:
        tally = community["category_tallies"].get(metric)
        if tally is None:
            continue
        row = f"{metric:<14}" + "".join(f"{tally[c]:>6}" for c in _TALLY_COLUMNS)
        lines.append(row + f"  ({tally[UNLABELED_SUBKEY]})")

    lines += ["", "COMMUNITY INDICATORS", "=" * 40]
    lines += [
        f"max/mean betweenness    {_fmt(community['high_center_max_over_mean'])}",
        f"max/median betweenness  {_fmt(community['high_center_max_over_median'])}",
        f"interactivity edges     {_fmt_ratio(community['interactivity_edge_ratio'])}",
        f"interactivity vertices  {_fmt_ratio(community['interactivity_vertex_ratio'])}",
        f"main component nodes    {_fmt_ratio(community['main_component_node_share'])}",
        f"main component edges    {_fmt_ratio(community['main_component_edge_share'])}",
        f"tweets with URLs        {_fmt_ratio(community['url_tweet_fraction'])}",
    ]
    lines += ["", "CRITERIA"]
    for name, value in sorted(community["criteria"].items()):
        lines.append(f"  {name:<14} {_fmt(value)}")
    if community["narrative_fields"]:
        lines += ["", "NARRATIVE (not computed)"]
        for slot, text in sorted(community["narrative_fields"].items()):
            lines.append(f"  {slot}: {text or '-'}")
    return "\n".join(lines) + "\n"


def render_report(data: dict, fmt: str, path) -> None:
    """Write the report; fmt is "machine" (JSON) or "human" (text)."""
    if fmt not in ("machine", "human"):
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8") as handle:
        if fmt == "machine":
            json.dump(data, handle, indent=2, sort_keys=True)
            handle.write("\n")
        else:
            handle.write(render_text(data))


def load_report(path) -> dict:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _flatten(data, prefix=""):
    flat = {}
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, dotted + "."))
        else:
            flat[dotted] = value
    return flat


def compare_reports(report_a: dict, report_b: dict) -> dict:
    """Per-field deltas between two machine reports.

    Numeric fields get absolute (b - a) and relative (|b - a| / |a|)
    deltas; fields present on one side only are flagged.
    """
    va = report_a.get("schema_version")
    vb = report_b.get("schema_version")
    if va != vb:
        raise SchemaMismatchError(f"schema versions differ: {va} vs {vb}")
    flat_a = _flatten(report_a)
    flat_b = _flatten(report_b)

    fields = {}
    for key in sorted(set(flat_a) | set(flat_b)):
        if key not in flat_a:
            fields[key] = {"status": "added", "b": flat_b[key]}
            continue
        if key not in flat_b:
            fields[key] = {"status": "removed", "a": flat_a[key]}
            continue
        a, b = flat_a[key], flat_b[key]
        numeric = (
            isinstance(a, (int, float))
            and isinstance(b, (int, float))
            and not isinstance(a, bool)
            and not isinstance(b, bool)
        )
        if numeric:
            abs_delta = b - a
            rel_delta = abs(abs_delta) / abs(a) if a != 0 else None
            fields[key] = {
                "status": "compared",
                "a": a,
                "b": b,
                "abs_delta": abs_delta,
                "rel_delta": rel_delta,
            }
        else:
            fields[key] = {
                "status": "equal" if a == b else "changed",
                "a": a,
                "b": b,
            }
    return {"schema_version": va, "fields": fields}
