"""Sentence boundary detection and lightweight tokenization.

One splitter is shared by every stage that needs sentence indices so that
indices agree across the pipeline: a sentence ends at the first `.`, `!` or
`?` that is followed by whitespace or end-of-text, unless the token carrying
the terminator is a known abbreviation.
"""

from __future__ import annotations

import re

# Tokens that end with '.' but do not terminate a sentence.
ABBREVIATIONS = frozenset({
    "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "jr.", "sr.", "rev.",
    "gen.", "gov.", "sen.", "rep.", "capt.", "col.", "lt.", "sgt.",
    "vs.", "etc.", "e.g.", "i.e.", "cf.", "no.", "nos.", "pp.", "fig.",
    "u.s.", "u.k.", "u.n.", "a.m.", "p.m.", "inc.", "ltd.", "co.",
})

_TERMINATORS = ".!?"

_WORD_RE = re.compile(r"\S+")


def _token_before(text: str, idx: int) -> str:
    """The whitespace-delimited token whose last character is text[idx]."""
    start = idx
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:idx + 1]


def sentence_spans(text: str) -> list[tuple[int, int]]:
    """Character spans of sentences, end-exclusive, whitespace trimmed."""
    spans: list[tuple[int, int]] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _TERMINATORS and (i + 1 == n or text[i + 1].isspace()):
            token = _token_before(text, i).lower()
            if token not in ABBREVIATIONS:
                spans.append((start, i + 1))
                i += 1
                while i < n and text[i].isspace():
                    i += 1
                start = i
                continue
        i += 1
    if start < n and text[start:].strip():
        spans.append((start, n))
    return [(s, e) for s, e in spans if text[s:e].strip()]


def split_sentences(text: str) -> list[str]:
    return [text[s:e].strip() for s, e in sentence_spans(text)]


def first_sentence(text: str) -> str:
    """Prefix of text up to and including the first sentence terminator."""
    spans = sentence_spans(text)
    if not spans:
        return text.strip()
    s, e = spans[0]
    return text[:e].strip()


def sentence_index_at(spans: list[tuple[int, int]], pos: int) -> int:
    """Index of the sentence containing character position pos (-1 if none)."""
    for i, (s, e) in enumerate(spans):
        if s <= pos < e:
            return i
    # positions in inter-sentence whitespace belong to the sentence before
    for i in range(len(spans) - 1, -1, -1):
        if pos >= spans[i][0]:
            return i
    return -1


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization; used for token counts and budgets."""
    return _WORD_RE.findall(text)


def word_tokens(text: str) -> list[str]:
    """Lowercased alphanumeric tokens; used by the stub embedder and lexicon."""
    return re.findall(r"[a-z0-9]+", text.lower())
