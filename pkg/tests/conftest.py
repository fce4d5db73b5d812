import json

import pytest

from hashnet.config import RunConfig
from hashnet.synth import SynthConfig, generate_corpus, write_corpus

ATHENS_LIKE = {
    "seed": 20110218,
    "account_count": 527,
    "category_mix": {"ORG": 0.12, "JMB": 0.2, "OI": 0.58, "OTHER": 0.1},
    "follow_attachment_exponent": 1.0,
    "follow_edges_target": 1947,
    "tweets_per_account_mean": 3.0,
    "mention_rate": 0.35,
    "retweet_rate": 0.15,
    "reply_rate": 0.04,
    "url_rate": 0.43,
    "hashtag": "athens",
    "window_start": 1297987200,
    "window_end": 1300492800,
}


@pytest.fixture(scope="session")
def athens_config():
    return SynthConfig.from_dict(ATHENS_LIKE)


@pytest.fixture(scope="session")
def athens_corpus_dir(tmp_path_factory, athens_config):
    """The bundled athens-like fixture, generated once per session."""
    out = tmp_path_factory.mktemp("athens_fixture")
    tweets, accounts, follows = generate_corpus(athens_config)
    write_corpus(tweets, accounts, follows, out)
    return out


@pytest.fixture
def athens_run_config(athens_corpus_dir, tmp_path):
    return RunConfig(
        tweets=str(athens_corpus_dir / "tweets.jsonl"),
        accounts=str(athens_corpus_dir / "accounts.jsonl"),
        follows=str(athens_corpus_dir / "follows.jsonl"),
        hashtag="athens",
        window_start=ATHENS_LIKE["window_start"],
        window_end=ATHENS_LIKE["window_end"],
        output_dir=str(tmp_path / "out"),
    )


def jsonl(records):
    """Serialize dicts to the line-delimited input format."""
    return [json.dumps(r) + "\n" for r in records]
