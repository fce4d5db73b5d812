"""Command-line entry point: analyze, synth, export, compare.

Exit codes: 0 success, 1 input/validation error, 2 convergence or
undefined-metric error. A failed analyze removes its partial outputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import community as community_mod
from . import metrics as metrics_mod
from .config import RunConfig
from .errors import (
    ConfigError,
    ConvergenceError,
    HashnetError,
    UndefinedMetricError,
)
from .exports import export_graph
from .graph import union_layers, weakly_connected_components
from .ingest import (
    FilterQuery,
    build_layered_network,
    filter_corpus,
    parse_exclusion_file,
    parse_support_files,
    parse_tweet_stream,
)
from .reports import (
    SCHEMA_VERSION,
    compare_reports,
    load_report,
    render_report,
    report_dict,
)
from .synth import SynthConfig, generate_corpus, write_corpus


class PipelineError(HashnetError):
    """Analyze pipeline failure with a user-facing message."""


def _load_corpus(config: RunConfig):
    with open(config.tweets, encoding="utf-8") as handle:
        tweets = parse_tweet_stream(handle)
    with open(config.accounts, encoding="utf-8") as acc, open(
        config.follows, encoding="utf-8"
    ) as fol:
        accounts, follow_pairs = parse_support_files(acc, fol)
    exclude_ids = frozenset()
    if config.exclude_ids:
        with open(config.exclude_ids, encoding="utf-8") as handle:
            exclude_ids = parse_exclusion_file(handle)
    query = FilterQuery(
        include_hashtag=config.hashtag.lower().lstrip("#"),
        exclude_terms=tuple(t.lower() for t in config.exclude_terms),
        exclude_tweet_ids=exclude_ids,
        window_start=config.window_start,
        window_end=config.window_end,
    )
    retained = filter_corpus(tweets, query)
    return retained, accounts, follow_pairs


def _write_metrics_csv(path, nodes, vectors):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        names = list(vectors)
        writer.writerow(["account_id"] + names)
        for node in sorted(nodes):
            writer.writerow([node] + [repr(vectors[m].values[node]) for m in names])


def _write_distribution(path_hist, path_ccdf, vector, bins):
    histogram, ccdf = metrics_mod.metric_distribution(vector, bins)
    with open(path_hist, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["bin_lower", "count"])
        for lower, count in histogram:
            writer.writerow([repr(lower), count])
    with open(path_ccdf, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["value", "fraction_at_least"])
        for value, fraction in ccdf:
            writer.writerow([repr(value), repr(fraction)])


def cmd_analyze(config: RunConfig) -> int:
    """Run ingest -> build -> metrics -> community and write all outputs."""
    config.validate()
    out_dir = Path(config.output_dir)
    created: list[Path] = []

    def open_out(relative):
        path = out_dir / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        created.append(path)
        return path

    try:
        tweets, accounts, follow_pairs = _load_corpus(config)
        if not tweets:
            raise PipelineError("empty corpus after filtering")
        network = build_layered_network(tweets, accounts, follow_pairs)
        f_graph = network.layers["F"]

        in_deg, out_deg = metrics_mod.degree_stats(f_graph)
        betweenness = metrics_mod.betweenness_centrality(
            f_graph, mode=config.betweenness_mode, workers=config.workers
        )
        pr = metrics_mod.pagerank(
            f_graph,
            damping=config.damping,
            tolerance=config.tolerance,
            max_iterations=config.max_iterations,
        )
        clustering, avg_clustering = metrics_mod.clustering_coefficients(f_graph)
        try:
            ev = metrics_mod.eigenvector_centrality(
                f_graph, mode=config.eigenvector_mode, tolerance=config.tolerance
            )
        except UndefinedMetricError:
            ev = None
        try:
            density = metrics_mod.graph_density(f_graph)
        except UndefinedMetricError:
            density = None
        try:
            avg_geodesic, diameter = metrics_mod.geodesic_stats(
                f_graph, config.geodesic_mode
            )
        except UndefinedMetricError:
            avg_geodesic, diameter = None, None

        n = f_graph.node_count
        nodes = f_graph.nodes

        def mean(vector):
            return sum(vector.values[node] for node in nodes) / n if n else None

        summary = metrics_mod.NetworkSummary(
            node_count=n,
            edge_count=f_graph.edge_count,
            density=density,
            component_count=weakly_connected_components(f_graph).count,
            avg_geodesic_distance=avg_geodesic,
            diameter=diameter,
            avg_betweenness=mean(betweenness),
            avg_eigenvector=mean(ev) if ev is not None else None,
            avg_clustering=avg_clustering,
        )

        vectors = {
            metrics_mod.IN_DEGREE: in_deg,
            metrics_mod.OUT_DEGREE: out_deg,
            metrics_mod.BETWEENNESS: betweenness,
            metrics_mod.PAGERANK: pr,
        }
        if ev is not None:
            vectors[metrics_mod.EIGENVECTOR] = ev
        top_lists = {
            name: metrics_mod.top_k_nodes(vector, config.top_k)
            for name, vector in vectors.items()
        }
        indicators = community_mod.community_report(
            network,
            tweets,
            betweenness,
            f_graph,
            top_lists,
            thresholds=config.thresholds,
            narrative_fields=config.narrative,
        )

        data = report_dict(summary, indicators, top_nodes=top_lists)
        render_report(data, "machine", open_out("report.json"))
        render_report(data, "human", open_out("report.txt"))

        vectors[metrics_mod.CLUSTERING] = clustering
        _write_metrics_csv(open_out("metrics.csv"), nodes, vectors)

        for name, vector in vectors.items():
            if name == metrics_mod.CLUSTERING:
                continue
            _write_distribution(
                open_out(f"distributions/{name}_hist.csv"),
                open_out(f"distributions/{name}_ccdf.csv"),
                vector,
                config.histogram_bins,
            )

        layer_graphs = {
            "f": f_graph,
            "m": network.layers["M"],
            "r": network.layers["R"],
            "fmr": union_layers(network, ("F", "M", "R")),
        }
        for name, graph in layer_graphs.items():
            export_graph(
                graph, network.attributes, "graphml", open_out(f"graphs/{name}.graphml")
            )
            export_graph(
                graph, network.attributes, "edge-csv", open_out(f"graphs/{name}.edges.csv")
            )
            export_graph(graph, network.attributes, "dot", open_out(f"graphs/{name}.dot"))

        # CSV/graph formats have no natural version field; the manifest
        # carries the schema version for the whole output tree
        manifest_path = open_out("manifest.json")
        manifest = {
            "schema_version": SCHEMA_VERSION,
            "files": sorted(str(p.relative_to(out_dir)) for p in created),
        }
        with open(manifest_path, "w", encoding="utf-8") as handle:
            json.dump(manifest, handle, indent=2, sort_keys=True)
            handle.write("\n")
    except Exception:
        for path in created:
            path.unlink(missing_ok=True)
        raise
    return 0


def cmd_synth(synth_config: SynthConfig, out_dir) -> int:
    tweets, accounts, follow_pairs = generate_corpus(synth_config)
    write_corpus(tweets, accounts, follow_pairs, out_dir)
    return 0


def cmd_export(config: RunConfig, kinds, fmt, out_path) -> int:
    config.validate()
    tweets, accounts, follow_pairs = _load_corpus(config)
    if not tweets:
        raise PipelineError("empty corpus after filtering")
    network = build_layered_network(tweets, accounts, follow_pairs)
    graph = union_layers(network, tuple(kinds))
    export_graph(graph, network.attributes, fmt, out_path)
    return 0


def cmd_compare(path_a, path_b, out_path) -> int:
    comparison = compare_reports(load_report(path_a), load_report(path_b))
    with open(out_path, "w", encoding="utf-8") as handle:
        json.dump(comparison, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return 0


def _add_corpus_arguments(parser):
    parser.add_argument("--config", help="JSON run-configuration file")
    parser.add_argument("--tweets", help="tweets JSONL file")
    parser.add_argument("--accounts", help="accounts JSONL file")
    parser.add_argument("--follows", help="follow edges JSONL file")
    parser.add_argument("--exclude-ids", dest="exclude_ids", help="manual tweet-id exclusion file")
    parser.add_argument("--hashtag", help="include hashtag (without '#')")
    parser.add_argument(
        "--exclude-term",
        dest="exclude_terms",
        action="append",
        help="keyword to exclude; repeatable",
    )
    parser.add_argument("--window-start", dest="window_start", type=int)
    parser.add_argument("--window-end", dest="window_end", type=int)


def _run_config(args) -> RunConfig:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {
        name: getattr(args, name, None)
        for name in (
            "tweets",
            "accounts",
            "follows",
            "exclude_ids",
            "hashtag",
            "exclude_terms",
            "window_start",
            "window_end",
            "betweenness_mode",
            "geodesic_mode",
            "eigenvector_mode",
            "top_k",
            "workers",
            "output_dir",
        )
    }
    return config.override(**overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hashnet",
        description="City-hashtag network analysis: build F/M/R networks, "
        "compute centrality metrics and community indicators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the full pipeline")
    _add_corpus_arguments(analyze)
    analyze.add_argument("--out", dest="output_dir", help="output directory")
    analyze.add_argument("--top-k", dest="top_k", type=int)
    analyze.add_argument("--workers", type=int)
    analyze.add_argument(
        "--betweenness-mode", dest="betweenness_mode", choices=("directed", "undirected")
    )
    analyze.add_argument(
        "--geodesic-mode", dest="geodesic_mode", choices=("directed", "undirected")
    )
    analyze.add_argument(
        "--eigenvector-mode",
        dest="eigenvector_mode",
        choices=("undirected", "directed_in"),
    )

    synth = sub.add_parser("synth", help="generate a synthetic corpus")
    synth.add_argument("--config", required=True, help="JSON SynthConfig file")
    synth.add_argument("--out", required=True, help="output directory")
    synth.add_argument("--seed", type=int, help="override the config seed")

    export = sub.add_parser("export", help="export a layer union as a graph file")
    _add_corpus_arguments(export)
    export.add_argument("--layers", default="FMR", help="subset of F, M, R (e.g. MR)")
    export.add_argument(
        "--format", required=True, choices=("graphml", "dot", "edge-csv")
    )
    export.add_argument("--out", required=True, help="output file")

    compare = sub.add_parser("compare", help="diff two machine-readable reports")
    compare.add_argument("report_a")
    compare.add_argument("report_b")
    compare.add_argument("--out", required=True, help="comparison JSON file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(_run_config(args))
        if args.command == "synth":
            synth_config = SynthConfig.from_file(args.config)
            if args.seed is not None:
                data = json.loads(Path(args.config).read_text(encoding="utf-8"))
                data["seed"] = args.seed
                synth_config = SynthConfig.from_dict(data)
            return cmd_synth(synth_config, args.out)
        if args.command == "export":
            return cmd_export(
                _run_config(args), args.layers.upper(), args.format, args.out
            )
        if args.command == "compare":
            return cmd_compare(args.report_a, args.report_b, args.out)
        raise AssertionError(args.command)
    except (ConvergenceError, UndefinedMetricError) as exc:
        print(f"hashnet: {exc}", file=sys.stderr)
        return 2
    except (HashnetError, OSError, ValueError) as exc:
        print(f"hashnet: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
