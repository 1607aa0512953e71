"""CoNLL-U reading and structural validation.

Only the columns the clause extractor needs are kept (form, lemma, UPOS,
head, deprel). Multiword-token ranges and empty nodes are skipped; a block
that is structurally broken (wrong column count, bad head, cycles, zero or
several roots) is dropped with a positional diagnostic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

log = logging.getLogger(__name__)

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)


@dataclass
class Token:
    index: int          # 1-based position within the sentence
    surface: str
    lemma: str
    upos: str
    head: int           # 0 means root
    deprel: str

    @property
    def rel(self) -> str:
        """Deprel normalized: lowercase, UD subtypes folded (`nsubj:pass` -> `nsubjpass`)."""
        return self.deprel.lower().replace(":", "")


@dataclass
class ParsedSentence:
    doc_id: str
    sentence_index: int
    tokens: list[Token]

    def validate(self) -> None:
        n = len(self.tokens)
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        for t in self.tokens:
            if not (0 <= t.head <= n):
                raise ValueError(f"head {t.head} out of range for token {t.index}")
            if t.head == t.index:
                raise ValueError(f"token {t.index} is its own head")
        # reachability check doubles as cycle detection
        for t in self.tokens:
            seen = set()
            cur = t
            while cur.head != 0:
                if cur.index in seen:
                    raise ValueError(f"cycle through token {t.index}")
                seen.add(cur.index)
                cur = self.tokens[cur.head - 1]

    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)


def _parse_block(lines: list[str]) -> list[Token]:
    tokens: list[Token] = []
    for line in lines:
        cols = line.split("\t")
        if len(cols) != 10:
            raise ValueError(f"expected 10 columns, got {len(cols)}")
        tid = cols[ID]
        if "-" in tid or "." in tid:
            continue  # multiword range / empty node
        index = int(tid)
        head = int(cols[HEAD])
        tokens.append(Token(index, cols[FORM], cols[LEMMA], cols[UPOS], head, cols[DEPREL]))
    for pos, tok in enumerate(tokens, start=1):
        if tok.index != pos:
            raise ValueError(f"token ids not contiguous at {tok.index}")
    if not tokens:
        raise ValueError("empty block")
    return tokens


def parse_conllu(
    source: str | Path | Iterable[str],
    doc_id: str = "",
) -> Iterator[ParsedSentence]:
    """Yield one validated ParsedSentence per block; bad blocks are skipped."""
    if isinstance(source, (str, Path)):
        name = str(source)
        lines: Iterable[str] = Path(source).read_text(encoding="utf-8").splitlines()
        if not doc_id:
            doc_id = Path(source).stem
    else:
        name = "<stream>"
        lines = source

    block: list[str] = []
    block_start = 1
    sent_index = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if line.startswith("#"):
            continue
        if line.strip():
            if not block:
                block_start = lineno
            block.append(line)
            continue
        if block:
            sent = _finish_block(block, doc_id, sent_index, name, block_start)
            block = []
            if sent is not None:
                yield sent
            sent_index += 1
    if block:
        sent = _finish_block(block, doc_id, sent_index, name, block_start)
        if sent is not None:
            yield sent


def _finish_block(
    block: list[str], doc_id: str, sent_index: int, name: str, lineno: int
) -> ParsedSentence | None:
    try:
        tokens = _parse_block(block)
        sent = ParsedSentence(doc_id, sent_index, tokens)
        sent.validate()
        return sent
    except ValueError as exc:
        log.warning("event=skip_conllu_block file=%s line=%d reason=%r", name, lineno, str(exc))
        return None
