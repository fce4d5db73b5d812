"""Run configuration: file-based with command-line overrides."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields

from .errors import ConfigError


@dataclass
class RunConfig:
    tweets: str = ""
    accounts: str = ""
    follows: str = ""
    exclude_ids: str | None = None
    hashtag: str = ""
    exclude_terms: list[str] = field(default_factory=list)
    window_start: int = 0
    window_end: int = 2**63 - 1
    betweenness_mode: str = "directed"
    geodesic_mode: str = "undirected"
    eigenvector_mode: str = "undirected"
    damping: float = 0.85
    tolerance: float = 1e-10
    max_iterations: int = 200
    top_k: int = 20
    histogram_bins: int = 20
    workers: int = 1
    thresholds: dict = field(default_factory=dict)
    narrative: dict = field(default_factory=dict)
    output_dir: str = "out"

    def validate(self):
        for name in ("tweets", "accounts", "follows", "hashtag", "output_dir"):
            if not getattr(self, name):
                raise ConfigError(name, "must be set")
        if self.top_k < 1:
            raise ConfigError("top_k", "must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers", "must be >= 1")
        if self.histogram_bins < 1:
            raise ConfigError("histogram_bins", "must be >= 1")
        if self.window_start >= self.window_end:
            raise ConfigError("window_start", "must precede window_end")
        if self.betweenness_mode not in ("directed", "undirected"):
            raise ConfigError("betweenness_mode", "directed or undirected")
        if self.geodesic_mode not in ("directed", "undirected"):
            raise ConfigError("geodesic_mode", "directed or undirected")
        if self.eigenvector_mode not in ("undirected", "directed_in"):
            raise ConfigError("eigenvector_mode", "undirected or directed_in")
        return self

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration field")
        return cls(**data)

    def override(self, **updates) -> "RunConfig":
        for key, value in updates.items():
            if value is not None:
                setattr(self, key, value)
        return self
