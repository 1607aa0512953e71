"""Prompt construction, generated-text intake, best-reference matching and
quadrant classification."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable

from .. import similarity
from ..sentences import first_sentence, tokenize
from ..synth import SplitManifest

log = logging.getLogger(__name__)

TEMPLATES = (
    "is described as being",
    "is described as having characteristics",
    "is described as performing",
    "is described as stating",
)

_SLUGS = {
    "is described as being": "being",
    "is described as having characteristics": "having_characteristics",
    "is described as performing": "performing",
    "is described as stating": "stating",
}


def template_slug(template: str) -> str:
    return _SLUGS[template]


@dataclass
class PromptJob:
    entity: str
    template: str
    prompt: str
    budget: int

    def to_record(self) -> dict:
        return {"entity": self.entity, "template": self.template,
                "prompt": self.prompt, "budget": self.budget}


def build_prompts(split: SplitManifest) -> list[PromptJob]:
    """One job per (test entity, template); budget is the entity's held-out count."""
    jobs = []
    for item in split.test_entities:
        for template in TEMPLATES:
            jobs.append(PromptJob(
                entity=item["entity"],
                template=template,
                prompt=f"{item['entity']} {template}",
                budget=item["count"],
            ))
    return jobs


@dataclass
class GeneratedSentence:
    entity: str
    template: str
    raw: str
    first_sentence: str


def load_generated(
    records: Iterable[dict],
    cap: int = 30,
    on_reject: Callable[[dict, str], None] | None = None,
) -> list[GeneratedSentence]:
    """Validate replayed generations: known template, token cap, prompt prefix."""
    out: list[GeneratedSentence] = []

    def reject(rec: dict, reason: str) -> None:
        log.info("event=reject_generated entity=%r reason=%r", rec.get("entity"), reason)
        if on_reject is not None:
            on_reject(rec, reason)

    for rec in records:
        entity = rec.get("entity", "")
        template = rec.get("template", "")
        raw = rec.get("raw", "")
        if not all(isinstance(v, str) for v in (entity, template, raw)):
            reject(rec, "entity, template and raw must be strings")
            continue
        if not entity or not raw:
            reject(rec, "missing entity or raw text")
            continue
        if template not in TEMPLATES:
            reject(rec, f"unknown template {template!r}")
            continue
        prompt = f"{entity} {template}"
        if not raw.startswith(prompt):
            reject(rec, "raw text does not start with its prompt")
            continue
        if len(tokenize(raw)) > len(tokenize(prompt)) + cap:
            reject(rec, f"generation exceeds {cap}-token cap")
            continue
        out.append(GeneratedSentence(entity, template, raw, first_sentence(raw)))
    return out


def best_match(generated: GeneratedSentence, references, embedder,
               query_text: str | None = None) -> tuple[int, float]:
    """Index and cosine of the reference closest to one generated sentence.

    Exhaustive scan; ties go to the lowest reference id. ``query_text``
    overrides the embedded text (used for masked FT2 queries).
    """
    text = generated.first_sentence if query_text is None else query_text
    queries = embedder.embed([text])
    refs = embedder.embed([r.embed_text for r in references])
    idx, score = similarity.best_match_matrix(queries, refs)
    return int(idx[0]), float(score[0])


def classify(prompt_entity: str, match_entity: str, cosine: float,
             threshold: float = 0.6) -> str:
    """Confusion-matrix quadrant from entity identity and the cosine score."""
    same = prompt_entity == match_entity
    high = cosine >= threshold
    if same and high:
        return "TP"
    if not same and high:
        return "FP"
    if same:
        return "FN"
    return "TN"
