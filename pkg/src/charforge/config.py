"""Pipeline configuration.

A bare config file reproduces the reference defaults: demonstrations
threshold 500, ten test entities, cosine threshold 0.6, article sentences
kept above ten tokens, generation capped at 30 tokens, corpus window
2015-2021.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import date
from pathlib import Path

from .errors import ConfigError


@dataclass
class PipelineConfig:
    store: str = "store"
    media_houses: list[str] = field(default_factory=list)
    date_from: str = "2015-01-01"
    date_to: str = "2021-12-31"
    demo_threshold: int = 500
    test_entity_count: int = 10
    cosine_threshold: float = 0.6
    ft1_min_sentence_tokens: int = 10
    generation_cap: int = 30
    embedder: str = "stub"
    lexicon: str | None = None
    seed: int = 0

    def validate(self, require_houses: bool = True) -> None:
        try:
            d0 = date.fromisoformat(self.date_from)
            d1 = date.fromisoformat(self.date_to)
        except ValueError as exc:
            raise ConfigError(f"bad date in config: {exc}") from exc
        if d0 > d1:
            raise ConfigError("date_from after date_to")
        if self.demo_threshold < 0:
            raise ConfigError("demo_threshold must be >= 0")
        if self.test_entity_count < 1:
            raise ConfigError("test_entity_count must be >= 1")
        if not -1.0 <= self.cosine_threshold <= 1.0:
            raise ConfigError("cosine_threshold must be in [-1, 1]")
        if self.ft1_min_sentence_tokens < 0:
            raise ConfigError("ft1_min_sentence_tokens must be >= 0")
        if self.generation_cap < 1:
            raise ConfigError("generation_cap must be >= 1")
        if self.embedder != "stub" and not self.embedder.startswith(("http://", "https://")):
            raise ConfigError("embedder must be 'stub' or an http(s) endpoint")
        if require_houses and not self.media_houses:
            raise ConfigError("media_houses must list at least one house")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg
