"""Quantified community-assessment indicators.

Covers the three lenses the report tracks: high centers (imagined
community), interactivity (virtual settlement) and membership /
influence / needs (sense of community). Qualitative arguments such as
common language or temporality are carried as labeled narrative fields,
never computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import median

from .errors import MissingAttributeError, UndefinedRatioError
from .graph import DirectedGraph, union_layers, weakly_connected_components
from .ingest import Category, LayeredNetwork
from .metrics import MetricVector

# counted in the OTHER column with a distinguishing sub-count
UNLABELED_SUBKEY = "OTHER_UNLABELED"

DEFAULT_THRESHOLDS = {
    # defaults equal the observed Athens values; configuration, not science
    "interactive_edge_ratio": 0.192,
    "membership_node_share": 0.814,
    "informational_url_fraction": 0.429,
}

NARRATIVE_SLOTS = ("common_language", "temporality", "sustained_membership")


@dataclass(frozen=True)
class CommunityIndicators:
    high_center_max_over_mean: float | None
    high_center_max_over_median: float | None
    interactivity_edge_ratio: float | None
    interactivity_vertex_ratio: float | None
    main_component_node_share: float | None
    main_component_edge_share: float | None
    url_tweet_fraction: float | None
    category_tallies: dict[str, dict[str, int]]
    criteria: dict[str, bool]
    narrative_fields: dict[str, str] = field(default_factory=dict)


def high_center_stats(betweenness: MetricVector):
    """Max betweenness over mean and over median.

    Even node counts take the midpoint-average median. A zero mean or
    median makes the corresponding ratio undefined, never infinite.
    """
    values = list(betweenness.values.values())
    if not values:
        raise UndefinedRatioError("high-center stats on an empty vector")
    peak = max(values)
    mean = sum(values) / len(values)
    mid = median(values)
    if mean == 0:
        raise UndefinedRatioError("mean betweenness is zero")
    max_over_mean = peak / mean
    if mid == 0:
        raise UndefinedRatioError("median betweenness is zero")
    return max_over_mean, peak / mid


def _high_center_partial(betweenness: MetricVector):
    """Like high_center_stats but returns None for the undefined ratio(s)."""
    values = list(betweenness.values.values())
    if not values:
        return None, None
    peak = max(values)
    mean = sum(values) / len(values)
    mid = median(values)
    return (peak / mean if mean else None), (peak / mid if mid else None)


def interactivity_ratio(network: LayeredNetwork):
    """Conversational share of the combined relation network.

    edge_ratio compares the M+R union's edges to the F+M+R union's;
    vertex_ratio compares their vertex sets, where the denominator
    registers every core tweeter plus external edge endpoints.
    """
    full = union_layers(network, ("F", "M", "R"))
    if full.node_count == 0:
        raise UndefinedRatioError("F+M+R union is empty")
    mr = union_layers(network, ("M", "R"))
    edge_ratio = mr.edge_count / full.edge_count if full.edge_count else 0.0
    vertex_ratio = mr.node_count / full.node_count
    return edge_ratio, vertex_ratio


def main_component_share(g: DirectedGraph):
    """Node and edge fractions of the largest weakly connected component."""
    if g.node_count == 0:
        raise UndefinedRatioError("component share of an empty graph")
    main = set(weakly_connected_components(g).main_component())
    node_share = len(main) / g.node_count
    if g.edge_count == 0:
        edge_share = 0.0
    else:
        inside = sum(1 for s, t in g.edges if s in main and t in main)
        edge_share = inside / g.edge_count
    return node_share, edge_share


def url_tweet_fraction(tweets) -> float:
    """Fraction of tweets carrying one or more URLs."""
    if not tweets:
        raise UndefinedRatioError("url fraction of an empty corpus")
    return sum(1 for t in tweets if t.url_count >= 1) / len(tweets)


def category_tally(network: LayeredNetwork, top_lists):
    """Category composition of each metric's top-K list.

    Returns, per metric, counts for ORG/JMB/OI/OTHER; UNLABELED accounts
    count under OTHER and also appear in a distinguishing sub-count.
    """
    tallies: dict[str, dict[str, int]] = {}
    for metric_name, ranked in top_lists.items():
        counts = {c.value: 0 for c in (Category.ORG, Category.JMB, Category.OI, Category.OTHER)}
        counts[UNLABELED_SUBKEY] = 0
        for account_id, _ in ranked:
            record = network.attributes.get(account_id)
            if record is None:
                raise MissingAttributeError(f"no account record for {account_id!r}")
            category = record.category
            if category is Category.UNLABELED:
                counts[Category.OTHER.value] += 1
                counts[UNLABELED_SUBKEY] += 1
            else:
                counts[category.value] += 1
        tallies[metric_name] = counts
    return tallies


def community_report(
    network: LayeredNetwork,
    tweets,
    betweenness: MetricVector,
    main_graph: DirectedGraph,
    top_lists,
    thresholds=None,
    narrative_fields=None,
) -> CommunityIndicators:
    """Assemble every indicator; undefined ratios become None fields.

    Each threshold boolean compares its indicator inclusively against a
    configurable bound whose default is the observed Athens value.
    """
    bounds = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        bounds.update(thresholds)
    narrative = {slot: "" for slot in NARRATIVE_SLOTS}
    if narrative_fields:
        narrative.update(narrative_fields)

    max_over_mean, max_over_median = _high_center_partial(betweenness)
    try:
        edge_ratio, vertex_ratio = interactivity_ratio(network)
    except UndefinedRatioError:
        edge_ratio, vertex_ratio = None, None
    try:
        node_share, edge_share = main_component_share(main_graph)
    except UndefinedRatioError:
        node_share, edge_share = None, None
    try:
        url_fraction = url_tweet_fraction(tweets)
    except UndefinedRatioError:
        url_fraction = None

    criteria = {
        "interactive": edge_ratio is not None
        and edge_ratio >= bounds["interactive_edge_ratio"],
        "membership": node_share is not None
        and node_share >= bounds["membership_node_share"],
        "informational": url_fraction is not None
        and url_fraction >= bounds["informational_url_fraction"],
    }

    return CommunityIndicators(
        high_center_max_over_mean=max_over_mean,
        high_center_max_over_median=max_over_median,
        interactivity_edge_ratio=edge_ratio,
        interactivity_vertex_ratio=vertex_ratio,
        main_component_node_share=node_share,
        main_component_edge_share=edge_share,
        url_tweet_fraction=url_fraction,
        category_tallies=category_tally(network, top_lists),
        criteria=criteria,
        narrative_fields=narrative,
    )
