"""Reference sentence sets for semantic matching.

The demonstration corpus is matched with entity names masked on both sides;
article sentences are matched unmasked and only when they mention an entity
and carry more than a minimum number of tokens.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable

from ..resolver import ResolvedDocument
from ..sentences import sentence_spans, tokenize
from ..synth import Demonstration

log = logging.getLogger(__name__)

MASK_TOKEN = "⟨MASK⟩"

FT1, FT2 = "FT1", "FT2"


@dataclass
class Reference:
    ref_id: int
    corpus: str
    text: str        # original sentence
    embed_text: str  # what gets embedded (masked for FT2)
    entity: str


def mask_entity(sentence: str, entity: str, mask: str = MASK_TOKEN) -> str:
    """Replace every occurrence of one entity name with the mask token."""
    pattern = re.compile(r"(?<![\w'’-])" + re.escape(entity) + r"(?![\w'’-])")
    return pattern.sub(mask, sentence)


def mask_known_entities(text: str, names: Iterable[str], mask: str = MASK_TOKEN) -> str:
    """Mask every known entity name; longest names first so that subsets of
    longer names never clip them."""
    for name in sorted(set(names), key=lambda n: (-len(n), n)):
        text = mask_entity(text, name, mask)
    return text


def prepare_ft2_references(demos: Iterable[Demonstration]) -> list[Reference]:
    refs: list[Reference] = []
    for demo in demos:
        refs.append(Reference(
            ref_id=len(refs),
            corpus=FT2,
            text=demo.sentence,
            embed_text=mask_entity(demo.sentence, demo.entity),
            entity=demo.entity,
        ))
    return refs


def prepare_references(
    docs: Iterable[ResolvedDocument],
    demos: Iterable[Demonstration],
    min_tokens: int = 10,
) -> tuple[list[Reference], list[Reference]]:
    """Both reference sets: (article sentences, masked demonstrations)."""
    return prepare_ft1_references(docs, min_tokens), prepare_ft2_references(demos)


def prepare_ft1_references(
    docs: Iterable[ResolvedDocument],
    min_tokens: int = 10,
) -> list[Reference]:
    """Article sentences that mention an entity and have > min_tokens tokens.

    A sentence mentioning several entities is tagged with the first one; no
    masking is applied on this corpus.
    """
    refs: list[Reference] = []
    for doc in docs:
        spans = sentence_spans(doc.text)
        by_sentence: dict[int, list] = {}
        for mention in doc.entity_mentions:
            by_sentence.setdefault(mention.sentence_index, []).append(mention)
        for idx, (start, end) in enumerate(spans):
            mentions = by_sentence.get(idx)
            if not mentions:
                continue
            sentence = doc.text[start:end].strip()
            if len(tokenize(sentence)) <= min_tokens:
                continue
            first = min(mentions, key=lambda m: (m.start, m.end))
            refs.append(Reference(
                ref_id=len(refs),
                corpus=FT1,
                text=sentence,
                embed_text=sentence,
                entity=first.full_name,
            ))
    return refs
