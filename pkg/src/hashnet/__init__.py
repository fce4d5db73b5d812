"""City-hashtag Twitter network analysis toolkit.

Ingests archived tweet/account/follow records, builds the follows (F),
mentions-retweets (M) and replies (R) directed networks, computes the
full centrality metric suite and emits machine-readable community
indicator reports.
"""

from .community import (
    CommunityIndicators,
    category_tally,
    community_report,
    high_center_stats,
    interactivity_ratio,
    main_component_share,
    url_tweet_fraction,
)
from .config import RunConfig
from .graph import (
    ComponentPartition,
    DirectedGraph,
    union_layers,
    weakly_connected_components,
)
from .ingest import (
    AccountRecord,
    Category,
    FilterQuery,
    LayeredNetwork,
    TweetRecord,
    build_layered_network,
    filter_corpus,
    parse_support_files,
    parse_tweet_stream,
)
from .metrics import (
    MetricVector,
    NetworkSummary,
    betweenness_centrality,
    clustering_coefficients,
    degree_stats,
    eigenvector_centrality,
    geodesic_stats,
    graph_density,
    metric_distribution,
    network_summary,
    pagerank,
    top_k_nodes,
)
from .synth import SynthConfig, generate_corpus, write_corpus

__version__ = "0.1.0"
