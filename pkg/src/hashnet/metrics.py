"""The full per-node and network-wide metric suite for directed graphs.

Defaults follow the conventions the toolkit documents as assumptions:
betweenness over ordered pairs on the directed graph, unnormalized;
geodesic statistics on the undirected view with unreachable pairs
excluded; eigenvector centrality on the undirected adjacency, scores
sum-normalized. Every default has a mode flag.

All floating-point reductions run in node-registry order, so parallel
and serial runs produce byte-identical output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _brandes
from .errors import ConvergenceError, UndefinedMetricError
from .graph import DirectedGraph, weakly_connected_components

IN_DEGREE = "in_degree"
OUT_DEGREE = "out_degree"
BETWEENNESS = "betweenness"
EIGENVECTOR = "eigenvector"
PAGERANK = "pagerank"
CLUSTERING = "clustering"

CENTRALITY_METRICS = (IN_DEGREE, OUT_DEGREE, BETWEENNESS, PAGERANK, EIGENVECTOR)


@dataclass(frozen=True)
class MetricVector:
    metric_name: str
    values: dict[str, float]

    def __post_init__(self):
        for v in self.values.values():
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{self.metric_name}: non-finite or negative value")


@dataclass(frozen=True)
class NetworkSummary:
    """Network-wide figures; None marks a metric undefined for this graph."""

    node_count: int
    edge_count: int
    density: float | None
    component_count: int
    avg_geodesic_distance: float | None
    diameter: int | None
    avg_betweenness: float | None
    avg_eigenvector: float | None
    avg_clustering: float | None


def _index_pairs(g: DirectedGraph):
    index = g.node_index()
    return index, [(index[s], index[t]) for s, t in g.sorted_edges()]


def degree_stats(g: DirectedGraph):
    """Per-node in- and out-degree vectors."""
    in_values = {n: float(len(g.in_neighbors(n))) for n in g.nodes}
    out_values = {n: float(len(g.out_neighbors(n))) for n in g.nodes}
    return (
        MetricVector(IN_DEGREE, in_values),
        MetricVector(OUT_DEGREE, out_values),
    )


def graph_density(g: DirectedGraph) -> float:
    """E / (N*(N-1)): realized fraction of all possible directed edges."""
    n = g.node_count
    if n < 2:
        raise UndefinedMetricError("density undefined for fewer than 2 nodes")
    return g.edge_count / (n * (n - 1))


def _undirected_adjacency(g: DirectedGraph) -> dict[str, list[str]]:
    adj: dict[str, set[str]] = {n: set() for n in g.nodes}
    for s, t in g.edges:
        adj[s].add(t)
        adj[t].add(s)
    return {n: sorted(nbrs) for n, nbrs in adj.items()}


def geodesic_stats(g: DirectedGraph, mode: str = "undirected"):
    """Average shortest-path length and diameter via all-sources BFS.

    Averages over ordered pairs with a finite positive distance;
    unreachable pairs are excluded from both figures.
    """
    if mode not in ("directed", "undirected"):
        raise ValueError(f"unknown geodesic mode {mode!r}")
    if g.edge_count == 0:
        raise UndefinedMetricError("geodesic statistics need at least one edge")
    if mode == "directed":
        adj = {n: g.out_neighbors(n) for n in g.nodes}
    else:
        adj = _undirected_adjacency(g)

    total = 0
    pairs = 0
    diameter = 0
    for source in g.nodes:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            dv = dist[v]
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dv + 1
                    queue.append(w)
        for node, d in dist.items():
            if node != source:
                total += d
                pairs += 1
                if d > diameter:
                    diameter = d
    if pairs == 0:
        raise UndefinedMetricError("no finite pair distances")
    return total / pairs, diameter


def betweenness_centrality(
    g: DirectedGraph, mode: str = "directed", workers: int = 1, engine: str = "auto"
) -> MetricVector:
    """Unnormalized shortest-path betweenness (Brandes accumulation).

    Directed mode counts ordered source-target pairs; pair dependency is
    split equally across equal-length shortest paths. Identical output
    for any worker count.
    """
    if mode not in ("directed", "undirected"):
        raise ValueError(f"unknown betweenness mode {mode!r}")
    index, pairs = _index_pairs(g)
    counts = _brandes.betweenness_counts(
        g.node_count,
        pairs,
        symmetric=(mode == "undirected"),
        workers=workers,
        engine=engine,
    )
    return MetricVector(BETWEENNESS, {n: float(counts[index[n]]) for n in g.nodes})


def eigenvector_centrality(
    g: DirectedGraph,
    mode: str = "undirected",
    tolerance: float = 1e-10,
    max_iterations: int = 1000,
) -> MetricVector:
    """Dominant-eigenvector scores by shifted power iteration, sum-normalized.

    The iteration uses A + I, which has the same dominant eigenvector as
    A but cannot oscillate on bipartite graphs. Mode "directed_in" scores
    a node by its in-neighbors; "undirected" (default) symmetrizes.
    """
    if mode not in ("undirected", "directed_in"):
        raise ValueError(f"unknown eigenvector mode {mode!r}")
    if g.edge_count == 0:
        raise UndefinedMetricError("eigenvector centrality needs at least one edge")
    index, pairs = _index_pairs(g)
    n = g.node_count
    if mode == "undirected":
        pair_set = set(pairs) | {(b, a) for a, b in pairs}
        pairs = sorted(pair_set)
    src = np.array([a for a, _ in pairs], dtype=np.int64)
    dst = np.array([b for _, b in pairs], dtype=np.int64)

    x = np.full(n, 1.0 / n)
    for _ in range(max_iterations):
        # x_new = (A^T + I) x : each node gathers from its in-neighbors
        x_new = x + np.bincount(dst, weights=x[src], minlength=n)
        x_new /= x_new.sum()
        residual = float(np.max(np.abs(x_new - x)))
        x = x_new
        if residual < tolerance:
            return MetricVector(EIGENVECTOR, {node: float(x[index[node]]) for node in g.nodes})
    raise ConvergenceError(
        f"eigenvector power iteration failed after {max_iterations} iterations",
        residual,
    )


def pagerank(
    g: DirectedGraph,
    damping: float = 0.85,
    tolerance: float = 1e-10,
    max_iterations: int = 200,
) -> MetricVector:
    """Damped random-surfer scores summing to 1.

    Dangling-node mass is redistributed uniformly over all nodes each
    iteration; convergence is an L1 test on successive iterates.
    """
    n = g.node_count
    if n == 0:
        raise UndefinedMetricError("pagerank undefined on the empty graph")
    index, pairs = _index_pairs(g)
    src = np.array([a for a, _ in pairs], dtype=np.int64)
    dst = np.array([b for _, b in pairs], dtype=np.int64)
    out_degree = np.bincount(src, minlength=n).astype(float)
    dangling = out_degree == 0
    safe_out = np.where(dangling, 1.0, out_degree)

    x = np.full(n, 1.0 / n)
    for _ in range(max_iterations):
        contrib = x / safe_out
        flow = np.bincount(dst, weights=contrib[src], minlength=n) if len(src) else np.zeros(n)
        dangling_mass = float(x[dangling].sum())
        x_new = (1.0 - damping) / n + damping * (flow + dangling_mass / n)
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual < tolerance:
            return MetricVector(PAGERANK, {node: float(x[index[node]]) for node in g.nodes})
    raise ConvergenceError(
        f"pagerank failed to converge after {max_iterations} iterations", residual
    )


def clustering_coefficients(g: DirectedGraph):
    """Local clustering on the underlying undirected simple graph.

    (2 * edges among neighbors) / (k*(k-1)) for degree k >= 2, else 0.
    Returns the per-node vector and the average over all nodes.
    """
    adj = {n: set(nbrs) for n, nbrs in _undirected_adjacency(g).items()}
    values: dict[str, float] = {}
    for node in g.nodes:
        neighbors = adj[node]
        k = len(neighbors)
        if k < 2:
            values[node] = 0.0
            continue
        links = 0
        for u in neighbors:
            # count each neighbor pair once
            links += sum(1 for v in adj[u] if v in neighbors and u < v)
        values[node] = 2.0 * links / (k * (k - 1))
    average = sum(values[n] for n in g.nodes) / g.node_count if g.node_count else 0.0
    return MetricVector(CLUSTERING, values), average


def top_k_nodes(vector: MetricVector, k: int = 20):
    """The k highest-valued nodes, descending; ties broken by ascending id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ranked = sorted(vector.values.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def metric_distribution(vector: MetricVector, bin_count: int):
    """Equal-width histogram plus the complementary cumulative distribution.

    The CCDF is evaluated at each distinct value, descending: the
    fraction of nodes with a value >= that point.
    """
    if bin_count < 1:
        raise ValueError("bin_count must be >= 1")
    values = sorted(vector.values.values())
    if not values:
        raise UndefinedMetricError("distribution of an empty metric vector")
    lo, hi = values[0], values[-1]
    width = (hi - lo) / bin_count
    counts = [0] * bin_count
    for v in values:
        if width == 0:
            counts[0] += 1
        else:
            counts[min(int((v - lo) / width), bin_count - 1)] += 1
    histogram = [(lo + i * width, counts[i]) for i in range(bin_count)]

    n = len(values)
    ccdf = []
    distinct = sorted(set(values), reverse=True)
    for point in distinct:
        at_least = sum(1 for v in values if v >= point)
        ccdf.append((point, at_least / n))
    return histogram, ccdf


def network_summary(
    g: DirectedGraph,
    geodesic_mode: str = "undirected",
    betweenness_mode: str = "directed",
    eigenvector_mode: str = "undirected",
    tolerance: float = 1e-10,
    workers: int = 1,
) -> NetworkSummary:
    """Assemble the network-wide metric table for one graph.

    Metrics that are undefined for a degenerate graph (too few nodes or
    edges) come back as None rather than aborting the whole summary.
    """
    n = g.node_count
    try:
        density = graph_density(g)
    except UndefinedMetricError:
        density = None
    try:
        avg_geodesic, diameter = geodesic_stats(g, geodesic_mode)
    except UndefinedMetricError:
        avg_geodesic, diameter = None, None

    if n:
        bc = betweenness_centrality(g, mode=betweenness_mode, workers=workers)
        avg_betweenness = sum(bc.values[node] for node in g.nodes) / n
        _, avg_clustering = clustering_coefficients(g)
        try:
            ev = eigenvector_centrality(g, mode=eigenvector_mode, tolerance=tolerance)
            avg_eigenvector = sum(ev.values[node] for node in g.nodes) / n
        except UndefinedMetricError:
            avg_eigenvector = None
    else:
        avg_betweenness = avg_clustering = avg_eigenvector = None

    return NetworkSummary(
        node_count=n,
        edge_count=g.edge_count,
        density=density,
        component_count=weakly_connected_components(g).count,
        avg_geodesic_distance=avg_geodesic,
        diameter=diameter,
        avg_betweenness=avg_betweenness,
        avg_eigenvector=avg_eigenvector,
        avg_clustering=avg_clustering,
    )
