"""Corpus ingestion: archived record files -> filtered tweets -> F/M/R networks.

Input files are JSON Lines (one record object per line), documented in the
repository README:

  tweets file   tweet_id, author_id, timestamp, text, hashtags, mentions,
                retweet_of, reply_to, urls
  accounts file account_id, screen_name, followers, statuses, category
  follows file  follower_id, followed_id

Timestamps are integer UTC seconds. Parsing is streaming and single-pass;
the resulting LayeredNetwork is immutable and safe to share across threads.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum

from .errors import DuplicateKeyError, ParseError
from .graph import DirectedGraph

logger = logging.getLogger(__name__)

LAYER_KINDS = ("F", "M", "R")


class Category(str, Enum):
    """Account type labels; human-supplied, never inferred."""

    ORG = "ORG"
    JMB = "JMB"
    OI = "OI"
    OTHER = "OTHER"
    UNLABELED = "UNLABELED"


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    author_id: str
    timestamp: int
    text: str
    hashtags: tuple[str, ...]
    mentioned_account_ids: tuple[str, ...]
    retweet_of_author_id: str | None
    reply_to_author_id: str | None
    url_count: int


@dataclass(frozen=True)
class AccountRecord:
    account_id: str
    screen_name: str
    followers_count_global: int
    statuses_count_global: int
    category: Category


@dataclass(frozen=True)
class FilterQuery:
    """Hashtag search with keyword exclusions, mirroring an operator query
    like hashtag + negated keywords plus a manual tweet-id exclusion list."""

    include_hashtag: str
    exclude_terms: tuple[str, ...] = ()
    exclude_tweet_ids: frozenset[str] = frozenset()
    window_start: int = 0
    window_end: int = 2**63 - 1

    def __post_init__(self):
        if not self.include_hashtag:
            raise ValueError("include_hashtag must be nonempty")
        if self.window_start >= self.window_end:
            raise ValueError("window_start must precede window_end")


@dataclass(frozen=True)
class LayeredNetwork:
    """The follows (F), mentions-retweets (M) and replies (R) directed
    graphs over a shared registry of tweeting accounts."""

    core_tweeters: tuple[str, ...]
    layers: dict[str, DirectedGraph]
    attributes: dict[str, AccountRecord]


def _lines(stream):
    for number, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if line:
            yield number, line


def _record(number, line):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(number, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ParseError(number, "record must be a JSON object")
    return obj


def _required(obj, key, number, kind):
    if key not in obj:
        raise ParseError(number, f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(number, f"field {key!r} has wrong type")
    return value


def _optional_id(obj, key, number):
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, str) or not value:
        raise ParseError(number, f"field {key!r} must be a nonempty string or null")
    return value


def _normalize_hashtag(tag, number):
    if not isinstance(tag, str):
        raise ParseError(number, "hashtags must be strings")
    tag = tag.lstrip("#").lower()
    if not tag or any(c.isspace() for c in tag):
        raise ParseError(number, f"invalid hashtag {tag!r}")
    return tag


def parse_tweet_stream(stream) -> list[TweetRecord]:
    """Parse a line-delimited tweet file into records, in file order.

    Raises ParseError on a malformed line and DuplicateKeyError when a
    tweet_id repeats.
    """
    tweets: list[TweetRecord] = []
    seen: set[str] = set()
    for number, line in _lines(stream):
        obj = _record(number, line)
        tweet_id = _required(obj, "tweet_id", number, str)
        if tweet_id in seen:
            raise DuplicateKeyError(number, f"duplicate tweet_id {tweet_id!r}")
        seen.add(tweet_id)
        hashtags = _required(obj, "hashtags", number, list)
        mentions = _required(obj, "mentions", number, list)
        if not all(isinstance(m, str) and m for m in mentions):
            raise ParseError(number, "mentions must be nonempty strings")
        urls = _required(obj, "urls", number, int)
        if urls < 0:
            raise ParseError(number, "urls must be >= 0")
        tweets.append(
            TweetRecord(
                tweet_id=tweet_id,
                author_id=_required(obj, "author_id", number, str),
                timestamp=_required(obj, "timestamp", number, int),
                text=_required(obj, "text", number, str),
                hashtags=tuple(_normalize_hashtag(t, number) for t in hashtags),
                mentioned_account_ids=tuple(mentions),
                retweet_of_author_id=_optional_id(obj, "retweet_of", number),
                reply_to_author_id=_optional_id(obj, "reply_to", number),
                url_count=urls,
            )
        )
    return tweets


def parse_support_files(account_stream, follow_stream):
    """Parse account and follow-edge files.

    Accounts are deduplicated by account_id, last record wins. Follow
    pairs keep file order with exact duplicates dropped; self-follows
    are dropped with a warning.
    """
    accounts: dict[str, AccountRecord] = {}
    for number, line in _lines(account_stream):
        obj = _record(number, line)
        raw_category = _required(obj, "category", number, str)
        try:
            category = Category(raw_category)
        except ValueError:
            raise ParseError(number, f"unknown category {raw_category!r}") from None
        followers = _required(obj, "followers", number, int)
        statuses = _required(obj, "statuses", number, int)
        if followers < 0 or statuses < 0:
            raise ParseError(number, "counts must be nonnegative")
        record = AccountRecord(
            account_id=_required(obj, "account_id", number, str),
            screen_name=_required(obj, "screen_name", number, str),
            followers_count_global=followers,
            statuses_count_global=statuses,
            category=category,
        )
        accounts[record.account_id] = record

    follows: list[tuple[str, str]] = []
    seen_pairs: set[tuple[str, str]] = set()
    dropped = 0
    for number, line in _lines(follow_stream):
        obj = _record(number, line)
        follower = _required(obj, "follower_id", number, str)
        followed = _required(obj, "followed_id", number, str)
        if follower == followed:
            dropped += 1
            logger.warning("line %d: self-follow %r dropped", number, follower)
            continue
        pair = (follower, followed)
        if pair not in seen_pairs:
            seen_pairs.add(pair)
            follows.append(pair)
    if dropped:
        logger.warning("%d self-follow rows dropped", dropped)
    return list(accounts.values()), follows


def parse_exclusion_file(stream) -> frozenset[str]:
    """One tweet_id per line; blank lines and '#' comments ignored."""
    ids = set()
    for _, line in _lines(stream):
        if not line.startswith("#"):
            ids.add(line)
    return frozenset(ids)


def filter_corpus(tweets, query: FilterQuery) -> list[TweetRecord]:
    """Retain tweets matching the hashtag query.

    A tweet survives when it carries the include hashtag, falls in the
    time window, is not manually excluded, and no exclude term appears
    among its hashtags or its lowercased whitespace-delimited text
    tokens. Order is preserved; filtering is idempotent.
    """
    exclude = {term.lower() for term in query.exclude_terms}
    retained = []
    for tweet in tweets:
        if query.include_hashtag not in tweet.hashtags:
            continue
        if not (query.window_start <= tweet.timestamp < query.window_end):
            continue
        if tweet.tweet_id in query.exclude_tweet_ids:
            continue
        if exclude:
            tokens = set(tweet.hashtags)
            tokens.update(tok.lower() for tok in tweet.text.split())
            if tokens & exclude:
                continue
        retained.append(tweet)
    return retained


def build_layered_network(tweets, accounts, follow_pairs) -> LayeredNetwork:
    """Construct the F, M and R layers from a filtered tweet list.

    Core tweeters are the distinct authors of the retained tweets. F is
    the follow relation restricted to core x core; M collects mention
    and retweet targets, R reply targets, each from a core author and
    deduplicated (multiplicity is discarded everywhere). Mention/reply
    targets outside the core are kept. Self-edges are dropped. Missing
    account records get UNLABELED placeholders.
    """
    # sorted so the result is independent of tweet input order
    core_set = {tweet.author_id for tweet in tweets}
    core = sorted(core_set)

    f_edges = {
        (a, b) for a, b in follow_pairs if a in core_set and b in core_set and a != b
    }

    m_edges: set[tuple[str, str]] = set()
    r_edges: set[tuple[str, str]] = set()
    for tweet in tweets:
        author = tweet.author_id
        targets = list(tweet.mentioned_account_ids)
        if tweet.retweet_of_author_id is not None:
            targets.append(tweet.retweet_of_author_id)
        for target in targets:
            if target != author:
                m_edges.add((author, target))
        reply = tweet.reply_to_author_id
        if reply is not None and reply != author:
            r_edges.add((author, reply))

    attributes = {a.account_id: a for a in accounts}
    edge_endpoints = {n for e in (f_edges | m_edges | r_edges) for n in e}
    for node in sorted(core_set | edge_endpoints):
        if node not in attributes:
            attributes[node] = AccountRecord(
                account_id=node,
                screen_name=node,
                followers_count_global=0,
                statuses_count_global=0,
                category=Category.UNLABELED,
            )

    layers = {
        # F registers every core tweeter, isolated ones included
        "F": DirectedGraph(core, sorted(f_edges)),
        "M": DirectedGraph((), sorted(m_edges)),
        "R": DirectedGraph((), sorted(r_edges)),
    }
    return LayeredNetwork(
        core_tweeters=tuple(core), layers=layers, attributes=attributes
    )
