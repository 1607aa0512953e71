"""Aggregate evaluation records into the per-prompt metric table.

Generated sentences are deduplicated by exact first-sentence text per
(entity, template) before anything is counted; precision, recall and F1 come
from the quadrant tallies of the deduplicated records.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Iterable

log = logging.getLogger(__name__)

CORPORA = ("FT1", "FT2")

CSV_COLUMNS = [
    "media_house",
    "prompt",
    "distinct_generated_count",
    "pct_distinct_semantic_matches_ft1",
    "pct_distinct_semantic_matches_ft2",
    "avg_tp_sentiment_delta_ft1",
    "avg_tp_sentiment_delta_ft2",
    "f1_ft1",
    "f1_ft2",
    "precision_ft1",
    "precision_ft2",
    "recall_ft1",
    "recall_ft2",
]


@dataclass
class EvalRecord:
    media_house: str
    entity: str
    template: str
    raw: str
    first_sentence: str
    reference_corpus: str
    best_match_id: int = -1
    best_match_text: str = ""
    best_match_entity: str = ""
    cosine: float = 0.0
    quadrant: str = ""
    sentiment_delta: float | None = None
    evaluated: bool = True

    def to_record(self) -> dict:
        return {
            "media_house": self.media_house,
            "entity": self.entity,
            "template": self.template,
            "raw": self.raw,
            "first_sentence": self.first_sentence,
            "reference_corpus": self.reference_corpus,
            "best_match_id": self.best_match_id,
            "best_match_text": self.best_match_text,
            "best_match_entity": self.best_match_entity,
            "cosine": self.cosine,
            "quadrant": self.quadrant,
            "sentiment_delta": self.sentiment_delta,
            "evaluated": self.evaluated,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "EvalRecord":
        return cls(
            media_house=rec.get("media_house", ""),
            entity=rec["entity"],
            template=rec["template"],
            raw=rec.get("raw", ""),
            first_sentence=rec["first_sentence"],
            reference_corpus=rec["reference_corpus"],
            best_match_id=rec.get("best_match_id", -1),
            best_match_text=rec.get("best_match_text", ""),
            best_match_entity=rec.get("best_match_entity", ""),
            cosine=rec.get("cosine", 0.0),
            quadrant=rec.get("quadrant", ""),
            sentiment_delta=rec.get("sentiment_delta"),
            evaluated=rec.get("evaluated", True),
        )


@dataclass
class CorpusMetrics:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0
    pct_distinct_semantic_matches: float = 0.0
    avg_tp_sentiment_delta: float = 0.0
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0


@dataclass
class MetricsRow:
    media_house: str
    template: str
    distinct_generated_count: int = 0
    per_corpus: dict[str, CorpusMetrics] = field(default_factory=dict)


@dataclass
class MetricsReport:
    rows: list[MetricsRow] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    threshold: float = 0.6


def _safe_ratio(num: float, den: float, flags: list[str], label: str) -> float:
    if den == 0:
        flags.append(f"{label}: zero denominator, reported as 0")
        return 0.0
    return num / den


def compute_metrics(records: Iterable[EvalRecord], threshold: float = 0.6) -> MetricsReport:
    # dedupe: one record per (house, template, entity, first_sentence, corpus)
    deduped: dict[tuple, EvalRecord] = {}
    for rec in records:
        if not rec.evaluated:
            continue
        key = (rec.media_house, rec.template, rec.entity, rec.first_sentence,
               rec.reference_corpus)
        deduped.setdefault(key, rec)

    groups: dict[tuple[str, str], list[EvalRecord]] = {}
    for rec in deduped.values():
        groups.setdefault((rec.media_house, rec.template), []).append(rec)

    report = MetricsReport(threshold=threshold)
    for (house, template) in sorted(groups):
        recs = groups[(house, template)]
        row = MetricsRow(media_house=house, template=template)
        distinct = {(r.entity, r.first_sentence) for r in recs}
        row.distinct_generated_count = len(distinct)
        for corpus in CORPORA:
            crecs = [r for r in recs if r.reference_corpus == corpus]
            cm = CorpusMetrics()
            for r in crecs:
                if r.quadrant == "TP":
                    cm.tp += 1
                elif r.quadrant == "FP":
                    cm.fp += 1
                elif r.quadrant == "FN":
                    cm.fn += 1
                elif r.quadrant == "TN":
                    cm.tn += 1
            label = f"{house}/{template}/{corpus}"
            matches = sum(1 for r in crecs if r.cosine >= threshold)
            cm.pct_distinct_semantic_matches = _safe_ratio(
                matches, row.distinct_generated_count, report.flags, f"{label} pct_matches")
            deltas = [r.sentiment_delta for r in crecs
                      if r.quadrant == "TP" and r.sentiment_delta is not None]
            cm.avg_tp_sentiment_delta = _safe_ratio(
                sum(deltas), len(deltas), report.flags, f"{label} avg_tp_delta")
            cm.precision = _safe_ratio(cm.tp, cm.tp + cm.fp, report.flags, f"{label} precision")
            cm.recall = _safe_ratio(cm.tp, cm.tp + cm.fn, report.flags, f"{label} recall")
            if cm.precision + cm.recall > 0:
                cm.f1 = 2 * cm.precision * cm.recall / (cm.precision + cm.recall)
            else:
                cm.f1 = 0.0
            row.per_corpus[corpus] = cm
        report.rows.append(row)
    return report


def _fmt_pct(v: float) -> str:
    return f"{100.0 * v:.1f}"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_csv(report: MetricsReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        ft1 = row.per_corpus.get("FT1", CorpusMetrics())
        ft2 = row.per_corpus.get("FT2", CorpusMetrics())
        writer.writerow([
            row.media_house,
            row.template,
            row.distinct_generated_count,
            _fmt_pct(ft1.pct_distinct_semantic_matches),
            _fmt_pct(ft2.pct_distinct_semantic_matches),
            _fmt(ft1.avg_tp_sentiment_delta),
            _fmt(ft2.avg_tp_sentiment_delta),
            _fmt(ft1.f1),
            _fmt(ft2.f1),
            _fmt(ft1.precision),
            _fmt(ft2.precision),
            _fmt(ft1.recall),
            _fmt(ft2.recall),
        ])
    return buf.getvalue()


def render_markdown(report: MetricsReport, config: dict | None = None) -> str:
    lines = ["# Evaluation report", ""]
    houses: dict[str, list[MetricsRow]] = {}
    for row in report.rows:
        houses.setdefault(row.media_house, []).append(row)
    header = ("| Prompt | Distinct | %Match FT1 | %Match FT2 | ΔSent FT1 | ΔSent FT2 "
              "| F1 FT1 | F1 FT2 | P FT1 | P FT2 | R FT1 | R FT2 |")
    rule = "|" + "---|" * 12
    for house in sorted(houses):
        lines.append(f"## {house}")
        lines.append("")
        lines.append(header)
        lines.append(rule)
        for row in houses[house]:
            ft1 = row.per_corpus.get("FT1", CorpusMetrics())
            ft2 = row.per_corpus.get("FT2", CorpusMetrics())
            lines.append(
                f"| {row.template} | {row.distinct_generated_count} "
                f"| {_fmt_pct(ft1.pct_distinct_semantic_matches)} "
                f"| {_fmt_pct(ft2.pct_distinct_semantic_matches)} "
                f"| {_fmt(ft1.avg_tp_sentiment_delta)} | {_fmt(ft2.avg_tp_sentiment_delta)} "
                f"| {_fmt(ft1.f1)} | {_fmt(ft2.f1)} "
                f"| {_fmt(ft1.precision)} | {_fmt(ft2.precision)} "
                f"| {_fmt(ft1.recall)} | {_fmt(ft2.recall)} |")
        lines.append("")
    if report.flags:
        lines.append("## Flags")
        lines.append("")
        for flag in report.flags:
            lines.append(f"- {flag}")
        lines.append("")
    if config is not None:
        lines.append("## Configuration")
        lines.append("")
        lines.append("```json")
        lines.append(json.dumps(config, indent=2, sort_keys=True, ensure_ascii=False))
        lines.append("```")
        lines.append("")
    return "\n".join(lines)
