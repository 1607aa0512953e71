"""Lexicon-based sentence sentiment and the TP sentiment-delta metric."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..sentences import word_tokens


def load_lexicon(path: str | Path | None = None) -> dict[str, float]:
    """Token valences from a `word<TAB>score` file; bundled lexicon by default."""
    if path is None:
        text = resources.files("charforge.data").joinpath("sentiment_lexicon.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    lexicon: dict[str, float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, score = line.split("\t")
        lexicon[word] = float(score)
    return lexicon


def sentiment_score(text: str, lexicon: dict[str, float]) -> float:
    """Mean token valence clamped to [-1, 1]; empty text scores 0."""
    tokens = word_tokens(text)
    if not tokens:
        return 0.0
    total = sum(lexicon.get(tok, 0.0) for tok in tokens)
    return max(-1.0, min(1.0, total / len(tokens)))


def sentiment_delta(generated: str, matched: str, lexicon: dict[str, float]) -> float:
    return abs(sentiment_score(generated, lexicon) - sentiment_score(matched, lexicon))
