from .embedders import HttpEmbedder, StubEmbedder, make_embedder
from .matching import (
    GeneratedSentence,
    PromptJob,
    TEMPLATES,
    best_match,
    build_prompts,
    classify,
    load_generated,
    template_slug,
)
from .metrics import EvalRecord, MetricsReport, compute_metrics
from .references import (
    MASK_TOKEN,
    Reference,
    mask_entity,
    mask_known_entities,
    prepare_ft1_references,
    prepare_ft2_references,
    prepare_references,
)
from .sentiment import load_lexicon, sentiment_delta, sentiment_score

__all__ = [
    "HttpEmbedder", "StubEmbedder", "make_embedder",
    "GeneratedSentence", "PromptJob", "TEMPLATES", "best_match", "build_prompts",
    "classify", "load_generated", "template_slug",
    "EvalRecord", "MetricsReport", "compute_metrics",
    "MASK_TOKEN", "Reference", "mask_entity", "mask_known_entities",
    "prepare_ft1_references", "prepare_ft2_references", "prepare_references",
    "load_lexicon", "sentiment_delta", "sentiment_score",
]
