"""Demonstration sentence synthesis, entity frequency filtering and the
train/test split.

Each entity clause becomes one sentence of the form
``<entity> is described as <gerund> <remaining parts>.``; entities with
enough sentences are ranked by count and ten test entities are drawn from
equal-width rank buckets so the held-out set spans broad frequency ranges.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .clauses import Clause
from .errors import CorpusTooSmallError, DataError
from .morph import gerund

log = logging.getLogger(__name__)

DESCRIBED_AS = "is described as"

_WS = re.compile(r"\s+")


@dataclass
class Demonstration:
    entity: str
    sentence: str
    doc_id: str = ""
    sentence_index: int = 0
    clause_type: str = ""

    def to_record(self) -> dict:
        return {
            "entity": self.entity,
            "sentence": self.sentence,
            "doc_id": self.doc_id,
            "sentence_index": self.sentence_index,
            "clause_type": self.clause_type,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Demonstration":
        return cls(rec["entity"], rec["sentence"], rec.get("doc_id", ""),
                   rec.get("sentence_index", 0), rec.get("clause_type", ""))


@dataclass
class SplitManifest:
    threshold: int
    test_count: int
    test_entities: list[dict] = field(default_factory=list)   # entity, count, rank
    train_entities: list[dict] = field(default_factory=list)  # entity, count

    @property
    def test_names(self) -> list[str]:
        return [e["entity"] for e in self.test_entities]

    @property
    def train_names(self) -> list[str]:
        return [e["entity"] for e in self.train_entities]

    def to_record(self) -> dict:
        return {
            "threshold": self.threshold,
            "test_count": self.test_count,
            "test_entities": self.test_entities,
            "train_entities": self.train_entities,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SplitManifest":
        return cls(rec["threshold"], rec["test_count"],
                   list(rec["test_entities"]), list(rec["train_entities"]))


def _clean_part(part: str) -> str:
    return _WS.sub(" ", part).strip().strip(".")


def synthesize(clause: Clause, entities: Mapping[str, str]) -> Demonstration | None:
    """One demonstration sentence, or None when the subject is no known entity.

    ``entities`` maps lowercased surface names to their canonical full names.
    """
    canonical = entities.get(_clean_part(clause.subject).lower())
    if canonical is None:
        log.info("event=skip_clause doc=%s sent=%d reason=subject_not_entity subject=%r",
                 clause.doc_id, clause.sentence_index, clause.subject)
        return None
    try:
        ing = gerund(clause.verb_lemma)
    except ValueError:
        log.info("event=skip_clause doc=%s sent=%d reason=bad_lemma lemma=%r",
                 clause.doc_id, clause.sentence_index, clause.verb_lemma)
        return None

    tail = ing
    core_parts = [clause.indirect_object, clause.direct_object, clause.complement]
    core_parts = [_clean_part(p) for p in core_parts if p]
    core_parts = [p for p in core_parts if p]
    for part in core_parts:
        tail += " " + part
    advs = [_clean_part(a) for a in clause.adverbials]
    advs = [a for a in advs if a]
    if advs:
        joiner = ", " if core_parts else " "
        tail += joiner + ", ".join(advs)

    sentence = f"{canonical} {DESCRIBED_AS} {tail}."
    return Demonstration(canonical, sentence, clause.doc_id,
                         clause.sentence_index, clause.clause_type)


def synthesize_all(
    clauses: Iterable[Clause], entities: Mapping[str, str]
) -> tuple[list[Demonstration], int]:
    """Demonstrations for all entity clauses plus the skipped-clause count."""
    demos: list[Demonstration] = []
    skipped = 0
    for clause in clauses:
        demo = synthesize(clause, entities)
        if demo is None:
            skipped += 1
        else:
            demos.append(demo)
    return demos, skipped


def entity_counts(demos: Iterable[Demonstration]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for demo in demos:
        counts[demo.entity] = counts.get(demo.entity, 0) + 1
    return counts


def filter_and_split(
    demos: Iterable[Demonstration],
    threshold: int = 500,
    test_count: int = 10,
) -> SplitManifest:
    """Keep entities with more than ``threshold`` sentences and hold out
    ``test_count`` of them, the top entity of each equal-width rank bucket.
    """
    counts = entity_counts(demos)
    kept = sorted(
        ((e, c) for e, c in counts.items() if c > threshold),
        key=lambda item: (-item[1], item[0]),
    )
    if len(kept) < test_count:
        raise CorpusTooSmallError(
            f"only {len(kept)} entities exceed {threshold} sentences, "
            f"need at least {test_count}; lower the threshold for small corpora")

    k = len(kept)
    starts = [(j * k) // test_count for j in range(test_count)]
    test_idx = set(starts)
    manifest = SplitManifest(threshold=threshold, test_count=test_count)
    for i, (entity, count) in enumerate(kept):
        if i in test_idx:
            manifest.test_entities.append({"entity": entity, "count": count, "rank": i + 1})
        else:
            manifest.train_entities.append({"entity": entity, "count": count})
    if not manifest.train_entities:
        log.warning("event=degenerate_split kept=%d test_count=%d detail=train_empty",
                    k, test_count)
    return manifest


def emit_corpora(store, media_house, resolved_docs, demos, split) -> dict:
    """Write ft1 / ft2-train / ft2-test under the store and return counts."""
    overlap = set(split.test_names) & set(split.train_names)
    if overlap:
        raise DataError(f"train/test entity overlap: {sorted(overlap)}")

    ft1_lines = [_WS.sub(" ", doc.text).strip() for doc in resolved_docs]
    store.write_text_stage("ft1", media_house, ft1_lines)

    train_set = set(split.train_names)
    test_rank = {e["entity"]: e["rank"] for e in split.test_entities}
    train_lines: list[str] = []
    test_records: list[dict] = []
    kept_sentences: list[str] = []
    for demo in demos:
        if demo.entity in train_set:
            train_lines.append(demo.sentence)
            kept_sentences.append(demo.sentence)
        elif demo.entity in test_rank:
            test_records.append({
                "entity": demo.entity,
                "sentence": demo.sentence,
                "count_rank": test_rank[demo.entity],
            })
            kept_sentences.append(demo.sentence)
    store.write_text_stage("ft2-train", media_house, train_lines)
    store.write_stage("ft2-test", media_house, test_records)

    duplicate_rate = 0.0
    if kept_sentences:
        duplicate_rate = 1.0 - len(set(kept_sentences)) / len(kept_sentences)
    log.info("event=emit_corpora house=%s ft1=%d ft2_train=%d ft2_test=%d duplicate_rate=%.4f",
             media_house, len(ft1_lines), len(train_lines), len(test_records), duplicate_rate)
    return {
        "ft1": len(ft1_lines),
        "ft2_train": len(train_lines),
        "ft2_test": len(test_records),
        "duplicate_rate": duplicate_rate,
    }
