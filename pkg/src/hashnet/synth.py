"""Synthetic corpus generation for fixtures, tests and benchmarks.

The follow graph grows by preferential attachment over in-degree, so the
centrality distributions come out heavy-tailed, the shape the real
city-hashtag networks show. Generation is a deterministic function of
the seed: identical config, identical corpus bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .ingest import AccountRecord, Category, TweetRecord

_MIX_CATEGORIES = ("ORG", "JMB", "OI", "OTHER")


@dataclass(frozen=True)
class SynthConfig:
    seed: int
    account_count: int
    category_mix: dict[str, float]
    follow_attachment_exponent: float
    follow_edges_target: int
    tweets_per_account_mean: float
    mention_rate: float
    retweet_rate: float
    reply_rate: float
    url_rate: float
    hashtag: str
    window_start: int
    window_end: int

    def __post_init__(self):
        if self.account_count < 1:
            raise ConfigError("account_count", "must be >= 1")
        if set(self.category_mix) - set(_MIX_CATEGORIES):
            raise ConfigError("category_mix", f"keys must be among {_MIX_CATEGORIES}")
        total = sum(self.category_mix.values())
        if abs(total - 1.0) > 1e-9:
            raise ConfigError("category_mix", f"fractions sum to {total}, not 1")
        if any(v < 0 for v in self.category_mix.values()):
            raise ConfigError("category_mix", "fractions must be nonnegative")
        if self.follow_attachment_exponent < 0:
            raise ConfigError("follow_attachment_exponent", "must be >= 0")
        n = self.account_count
        if not 0 <= self.follow_edges_target <= n * (n - 1):
            raise ConfigError("follow_edges_target", "exceeds possible edge count")
        if self.tweets_per_account_mean <= 0:
            raise ConfigError("tweets_per_account_mean", "must be > 0")
        for name in ("mention_rate", "retweet_rate", "reply_rate", "url_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ConfigError(name, "must be a probability in [0, 1]")
        if not self.hashtag:
            raise ConfigError("hashtag", "must be nonempty")
        if self.window_start >= self.window_end:
            raise ConfigError("window_start", "window_start must precede window_end")

    @classmethod
    def from_dict(cls, data: dict) -> "SynthConfig":
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError("config", str(exc)) from None

    @classmethod
    def from_file(cls, path) -> "SynthConfig":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))


def generate_follow_pairs(rng, account_ids, edges_target, exponent):
    """Grow a follow graph by in-degree preferential attachment.

    Sources are uniform; targets are drawn with probability proportional
    to (in_degree + 1) ** exponent. Self-pairs and duplicates are
    rejected and redrawn.
    """
    n = len(account_ids)
    in_degree = np.zeros(n, dtype=np.int64)
    weights = np.ones(n)
    edges: set[tuple[int, int]] = set()
    pairs: list[tuple[str, str]] = []
    attempts_left = 200 * max(edges_target, 1)
    while len(pairs) < edges_target:
        if attempts_left <= 0:
            raise ConfigError(
                "follow_edges_target", "could not place all edges; graph too dense"
            )
        attempts_left -= 1
        source = int(rng.integers(n))
        cumulative = np.cumsum(weights)
        target = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], "right"))
        if source == target or (source, target) in edges:
            continue
        edges.add((source, target))
        pairs.append((account_ids[source], account_ids[target]))
        in_degree[target] += 1
        weights[target] = float(in_degree[target] + 1) ** exponent
    return pairs, in_degree


def generate_corpus(config: SynthConfig):
    """Produce (tweets, accounts, follow_pairs) conforming to the ingest schema.

    Every account authors at least one tweet carrying the configured
    hashtag; mention/retweet/reply targets are drawn in-degree
    proportionally, so attention concentrates on the follow hubs.
    """
    rng = np.random.default_rng(config.seed)
    n = config.account_count
    width = max(4, len(str(n - 1)))
    account_ids = [f"a{i:0{width}d}" for i in range(n)]

    mix_categories = [c for c in _MIX_CATEGORIES if config.category_mix.get(c, 0) > 0]
    mix_p = np.array([config.category_mix[c] for c in mix_categories])
    mix_p = mix_p / mix_p.sum()
    drawn = rng.choice(len(mix_categories), size=n, p=mix_p)
    accounts = [
        AccountRecord(
            account_id=account_ids[i],
            screen_name=f"user{i:0{width}d}",
            followers_count_global=int(rng.lognormal(4.0, 1.5)),
            statuses_count_global=int(rng.lognormal(5.0, 1.2)),
            category=Category(mix_categories[drawn[i]]),
        )
        for i in range(n)
    ]

    follow_pairs, in_degree = generate_follow_pairs(
        rng, account_ids, config.follow_edges_target, config.follow_attachment_exponent
    )

    # attention follows the same hubs the follow graph produced
    cumulative = np.cumsum((in_degree + 1).astype(float))

    def draw_target(author_index):
        for _ in range(64):
            pick = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], "right"))
            if pick != author_index:
                return account_ids[pick]
        return None

    tweets: list[TweetRecord] = []
    extra_mean = max(config.tweets_per_account_mean - 1.0, 0.0)
    for i in range(n):
        count = 1 + int(rng.poisson(extra_mean))
        for _ in range(count):
            seq = len(tweets)
            mentions = []
            if n > 1 and rng.random() < config.mention_rate:
                target = draw_target(i)
                if target is not None:
                    mentions.append(target)
            retweet_of = None
            if n > 1 and rng.random() < config.retweet_rate:
                retweet_of = draw_target(i)
            reply_to = None
            if n > 1 and rng.random() < config.reply_rate:
                reply_to = draw_target(i)
            tweets.append(
                TweetRecord(
                    tweet_id=f"t{seq:08d}",
                    author_id=account_ids[i],
                    timestamp=int(rng.integers(config.window_start, config.window_end)),
                    text=f"update {seq} #{config.hashtag}",
                    hashtags=(config.hashtag,),
                    mentioned_account_ids=tuple(mentions),
                    retweet_of_author_id=retweet_of,
                    reply_to_author_id=reply_to,
                    url_count=1 if rng.random() < config.url_rate else 0,
                )
            )
    return tweets, accounts, follow_pairs


def tweet_to_json(tweet: TweetRecord) -> str:
    return json.dumps(
        {
            "tweet_id": tweet.tweet_id,
            "author_id": tweet.author_id,
            "timestamp": tweet.timestamp,
            "text": tweet.text,
            "hashtags": list(tweet.hashtags),
            "mentions": list(tweet.mentioned_account_ids),
            "retweet_of": tweet.retweet_of_author_id,
            "reply_to": tweet.reply_to_author_id,
            "urls": tweet.url_count,
        }
    )


def account_to_json(account: AccountRecord) -> str:
    return json.dumps(
        {
            "account_id": account.account_id,
            "screen_name": account.screen_name,
            "followers": account.followers_count_global,
            "statuses": account.statuses_count_global,
            "category": account.category.value,
        }
    )


def write_corpus(tweets, accounts, follow_pairs, out_dir):
    """Write tweets.jsonl / accounts.jsonl / follows.jsonl into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "tweets": out / "tweets.jsonl",
        "accounts": out / "accounts.jsonl",
        "follows": out / "follows.jsonl",
    }
    with open(paths["tweets"], "w", encoding="utf-8") as handle:
        for tweet in tweets:
            handle.write(tweet_to_json(tweet) + "\n")
    with open(paths["accounts"], "w", encoding="utf-8") as handle:
        for account in accounts:
            handle.write(account_to_json(account) + "\n")
    with open(paths["follows"], "w", encoding="utf-8") as handle:
        for follower, followed in follow_pairs:
            handle.write(
                json.dumps({"follower_id": follower, "followed_id": followed}) + "\n"
            )
    return paths
