"""Stage orchestration: ingest, resolve, clauses, synth, prompts, evaluate,
report, plus the full run with resume-from-stage support.

Each stage reads only persisted artifacts of earlier stages, writes its own
atomically, and can be rerun in isolation.
"""

from __future__ import annotations

import json
import logging
from datetime import date
from pathlib import Path

import numpy as np

from . import similarity
from .clauses import Clause, clause_type_histogram, extract_clauses, format_histogram
from .config import PipelineConfig
from .conllu import parse_conllu
from .errors import CorefSpanError, DataError, EmbedderError, StageNotFoundError
from .evaluation import (
    EvalRecord,
    build_prompts,
    classify,
    compute_metrics,
    load_generated,
    make_embedder,
    mask_known_entities,
    prepare_ft1_references,
    prepare_ft2_references,
)
from .evaluation.metrics import render_csv, render_markdown
from .evaluation.sentiment import load_lexicon, sentiment_delta
from .resolver import CorefClusterSet, ResolvedDocument, resolve_document
from .store import CorpusStore
from .synth import Demonstration, SplitManifest, emit_corpora, filter_and_split, synthesize_all

log = logging.getLogger(__name__)

STAGE_ORDER = ("ingest", "resolve", "clauses", "synth", "prompts", "evaluate", "report")

# artifacts each stage requires, with the stage to run when they are missing
_REQUIRES = {
    "resolve": [("raw", "ingest")],
    "clauses": [("resolved", "resolve")],
    "synth": [("resolved", "resolve"), ("clauses", "clauses")],
    "prompts": [("split", "synth")],
    "evaluate": [("resolved", "resolve"), ("demos", "synth"),
                 ("split", "synth"), ("generated", "generate (adapter or replay)")],
    "report": [("evaluated", "evaluate")],
}


def _check_requirements(store: CorpusStore, stage: str, house: str) -> None:
    for artifact, producer in _REQUIRES.get(stage, []):
        path = {
            "raw": store.stage_path("raw", house),
            "resolved": store.stage_path("resolved", house),
            "clauses": store.clauses_path(house),
            "demos": store.demos_path(house),
            "split": store.split_path(house),
            "generated": store.stage_path("generated", house),
            "evaluated": store.stage_path("evaluated", house),
        }[artifact]
        if not path.exists():
            raise StageNotFoundError(
                producer, f"stage '{stage}' needs {path.name}; run '{producer}' first")


def run_ingest(cfg: PipelineConfig, house: str, input_path: str | Path) -> dict:
    store = CorpusStore(cfg.store)
    records = store.read_jsonl(Path(input_path))
    manifest = store.ingest(
        records, house,
        date.fromisoformat(cfg.date_from), date.fromisoformat(cfg.date_to))
    return {"stage": "ingest", "house": house, "count": manifest.article_count}


def run_resolve(cfg: PipelineConfig, house: str) -> dict:
    store = CorpusStore(cfg.store)
    _check_requirements(store, "resolve", house)
    coref: dict[str, CorefClusterSet] = {}
    coref_path = store.coref_path(house)
    if coref_path.exists():
        for rec in store.read_jsonl(coref_path):
            coref[rec["doc_id"]] = CorefClusterSet.from_record(rec)
    else:
        log.warning("event=no_coref house=%s detail=proceeding_without_clusters", house)

    resolved: list[dict] = []
    skipped = 0
    for rec in store.read_stage("raw", house):
        doc_id = rec["id"]
        try:
            doc = resolve_document(doc_id, rec["text"], coref.get(doc_id))
        except CorefSpanError as exc:
            log.warning("event=skip_document doc=%s reason=%r", doc_id, str(exc))
            skipped += 1
            continue
        resolved.append(doc.to_record())
    store.write_stage("resolved", house, resolved, sort_key="doc_id",
                      date_from=cfg.date_from, date_to=cfg.date_to)
    return {"stage": "resolve", "house": house, "count": len(resolved), "skipped": skipped}


def run_clauses(cfg: PipelineConfig, house: str) -> dict:
    store = CorpusStore(cfg.store)
    _check_requirements(store, "clauses", house)
    conllu_dir = store.conllu_dir(house)
    if not conllu_dir.is_dir():
        raise StageNotFoundError(
            "parse (adapter)", f"no CoNLL-U directory {conllu_dir}; "
            "run the parser adapter or place replay files there")
    rows: list[dict] = []
    for path in sorted(conllu_dir.glob("*.conllu")):
        for sentence in parse_conllu(path):
            for clause in extract_clauses(sentence):
                rows.append(clause.to_record())
    store.write_jsonl(store.clauses_path(house), rows)
    hist = clause_type_histogram(Clause.from_record(r) for r in rows)
    summary = format_histogram(hist)
    summary_path = store.clauses_path(house).with_suffix(".types.txt")
    summary_path.write_text(summary + "\n", encoding="utf-8")
    return {"stage": "clauses", "house": house, "count": len(rows),
            "histogram": hist}


def _load_resolved(store: CorpusStore, house: str) -> list[ResolvedDocument]:
    return [ResolvedDocument.from_record(rec) for rec in store.read_stage("resolved", house)]


def _entity_registry(docs: list[ResolvedDocument]) -> dict[str, str]:
    registry: dict[str, str] = {}
    for doc in docs:
        for mention in doc.entity_mentions:
            registry.setdefault(mention.full_name.lower(), mention.full_name)
    return registry


def run_synth(cfg: PipelineConfig, house: str) -> dict:
    store = CorpusStore(cfg.store)
    _check_requirements(store, "synth", house)
    docs = _load_resolved(store, house)
    registry = _entity_registry(docs)
    clauses = [Clause.from_record(r) for r in store.read_jsonl(store.clauses_path(house))]
    demos, skipped = synthesize_all(clauses, registry)
    split = filter_and_split(demos, cfg.demo_threshold, cfg.test_entity_count)
    kept = set(split.test_names) | set(split.train_names)
    kept_demos = [d for d in demos if d.entity in kept]
    counts = emit_corpora(store, house, docs, kept_demos, split)
    store.write_jsonl(store.demos_path(house), [d.to_record() for d in kept_demos])
    split_rec = split.to_record()
    split_rec["duplicate_rate"] = counts["duplicate_rate"]
    store.split_path(house).parent.mkdir(parents=True, exist_ok=True)
    store.split_path(house).write_text(
        json.dumps(split_rec, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8")
    return {"stage": "synth", "house": house, "demos": len(kept_demos),
            "skipped_clauses": skipped, **counts}


def run_prompts(cfg: PipelineConfig, house: str) -> dict:
    store = CorpusStore(cfg.store)
    _check_requirements(store, "prompts", house)
    split = SplitManifest.from_record(json.loads(store.split_path(house).read_text("utf-8")))
    jobs = build_prompts(split)
    store.write_jsonl(store.prompts_path(house), [j.to_record() for j in jobs])
    return {"stage": "prompts", "house": house, "count": len(jobs)}


def _embed_queries(embedder, texts: list[str]) -> tuple[np.ndarray, list[bool]]:
    """Embed generated sentences; individual failures are marked, not fatal."""
    try:
        return embedder.embed(texts), [True] * len(texts)
    except EmbedderError as exc:
        log.warning("event=batch_embed_failed detail=%r fallback=per_record", str(exc))
    vectors: list = []
    for text in texts:
        try:
            vectors.append(embedder.embed([text])[0])
        except EmbedderError as exc:
            log.info("event=unevaluated_record reason=%r text=%.60r", str(exc), text)
            vectors.append(None)
    dim = next((len(v) for v in vectors if v is not None), 0)
    if dim == 0:
        raise DataError("embedder failed for every generated sentence")
    out = np.zeros((len(texts), dim), dtype=np.float64)
    ok = []
    for i, vec in enumerate(vectors):
        if vec is None:
            ok.append(False)
        else:
            out[i] = vec
            ok.append(True)
    return out, ok


def run_evaluate(cfg: PipelineConfig, house: str) -> dict:
    store = CorpusStore(cfg.store)
    _check_requirements(store, "evaluate", house)
    docs = _load_resolved(store, house)
    demos = [Demonstration.from_record(r) for r in store.read_jsonl(store.demos_path(house))]

    ft2_refs = prepare_ft2_references(demos)
    ft1_refs = prepare_ft1_references(docs, cfg.ft1_min_sentence_tokens)
    known_entities = sorted({d.entity for d in demos})

    generated = load_generated(store.read_stage("generated", house), cfg.generation_cap)
    if not generated:
        raise DataError(f"no valid generated records for house '{house}'")

    embedder = make_embedder(cfg.embedder)
    lexicon = load_lexicon(cfg.lexicon)

    records: list[EvalRecord] = []
    ref_sets = [("FT1", ft1_refs, False), ("FT2", ft2_refs, True)]
    for corpus, refs, masked in ref_sets:
        if not refs:
            log.warning("event=empty_reference_set house=%s corpus=%s", house, corpus)
            continue
        ref_vecs = embedder.embed([r.embed_text for r in refs])
        if masked:
            queries = [mask_known_entities(g.first_sentence, known_entities)
                       for g in generated]
        else:
            queries = [g.first_sentence for g in generated]
        query_vecs, evaluable = _embed_queries(embedder, queries)
        idx, score = similarity.best_match_matrix(query_vecs, ref_vecs)
        for g, i, cos, ok in zip(generated, idx.tolist(), score.tolist(), evaluable):
            if not ok:
                records.append(EvalRecord(
                    media_house=house, entity=g.entity, template=g.template,
                    raw=g.raw, first_sentence=g.first_sentence,
                    reference_corpus=corpus, evaluated=False))
                continue
            ref = refs[i]
            quadrant = classify(g.entity, ref.entity, cos, cfg.cosine_threshold)
            delta = None
            if quadrant == "TP":
                delta = sentiment_delta(g.first_sentence, ref.text, lexicon)
            records.append(EvalRecord(
                media_house=house,
                entity=g.entity,
                template=g.template,
                raw=g.raw,
                first_sentence=g.first_sentence,
                reference_corpus=corpus,
                best_match_id=ref.ref_id,
                best_match_text=ref.text,
                best_match_entity=ref.entity,
                cosine=cos,
                quadrant=quadrant,
                sentiment_delta=delta,
            ))
    store.write_stage("evaluated", house, [r.to_record() for r in records])
    return {"stage": "evaluate", "house": house, "count": len(records),
            "similarity_backend": similarity.backend_name()}


def run_report(cfg: PipelineConfig) -> dict:
    store = CorpusStore(cfg.store)
    houses = cfg.media_houses
    if not houses:
        # no config: report whatever the store holds
        evaluated_dir = store.root / "evaluated"
        houses = sorted(p.stem for p in evaluated_dir.glob("*.jsonl")) \
            if evaluated_dir.is_dir() else []
    records: list[EvalRecord] = []
    houses_found = []
    for house in houses:
        if not store.has_stage("evaluated", house):
            continue
        houses_found.append(house)
        records.extend(EvalRecord.from_record(r)
                       for r in store.read_stage("evaluated", house))
    if not houses_found:
        raise StageNotFoundError("evaluate", "no evaluated stage for any configured house")
    report = compute_metrics(records, cfg.cosine_threshold)
    meta = {
        "config": cfg.to_dict(),
        "flags": report.flags,
        "interpretation": {
            "pct_distinct_semantic_matches":
                "distinct generated sentences with best cosine >= threshold, "
                "divided by distinct generated count",
            "ft1_masking": "neither side masked",
            "ft2_masking": "entity names masked on both sides",
        },
    }
    out = store.report_dir()
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.csv").write_text(render_csv(report), encoding="utf-8")
    (out / "report.md").write_text(render_markdown(report, meta["config"]), encoding="utf-8")
    (out / "report_meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8")
    return {"stage": "report", "houses": houses_found, "rows": len(report.rows)}


def run_all(cfg: PipelineConfig, inputs: dict[str, str] | None = None,
            from_stage: str = "ingest") -> list[dict]:
    """Run every stage from ``from_stage`` on for all configured houses."""
    if from_stage not in STAGE_ORDER:
        raise DataError(f"unknown stage '{from_stage}'")
    start = STAGE_ORDER.index(from_stage)
    results: list[dict] = []
    for stage in STAGE_ORDER[start:]:
        if stage == "ingest":
            if not inputs:
                raise DataError("run from 'ingest' needs --in files per house")
            for house in cfg.media_houses:
                if house not in inputs:
                    raise DataError(f"no input file given for house '{house}'")
                results.append(run_ingest(cfg, house, inputs[house]))
        elif stage == "report":
            results.append(run_report(cfg))
        else:
            fn = {"resolve": run_resolve, "clauses": run_clauses,
                  "synth": run_synth, "prompts": run_prompts,
                  "evaluate": run_evaluate}[stage]
            for house in cfg.media_houses:
                results.append(fn(cfg, house))
    return results
