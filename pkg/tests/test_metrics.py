import csv
import io
import random

import pytest

from charforge.evaluation.metrics import (
    CSV_COLUMNS,
    EvalRecord,
    compute_metrics,
    render_csv,
    render_markdown,
)


def rec(quadrant, sentence, entity="E1", template="is described as being",
        corpus="FT2", cosine=None, delta=None, house="h1"):
    if cosine is None:
        cosine = 0.8 if quadrant in ("TP", "FP") else 0.2
    return EvalRecord(
        media_house=house, entity=entity, template=template,
        raw=sentence, first_sentence=sentence, reference_corpus=corpus,
        best_match_id=0, best_match_text="ref", best_match_entity="E1",
        cosine=cosine, quadrant=quadrant, sentiment_delta=delta,
    )


def test_definitional_arithmetic():
    records = (
        [rec("TP", f"tp {i}", delta=0.1) for i in range(8)]
        + [rec("FP", f"fp {i}") for i in range(2)]
        + [rec("FN", f"fn {i}") for i in range(1)]
        + [rec("TN", f"tn {i}") for i in range(5)]
    )
    report = compute_metrics(records)
    (row,) = report.rows
    m = row.per_corpus["FT2"]
    assert m.precision == pytest.approx(0.8)
    assert m.recall == pytest.approx(8 / 9)
    assert m.f1 == pytest.approx(2 * 0.8 * (8 / 9) / (0.8 + 8 / 9))
    assert row.distinct_generated_count == 16


def test_all_tn_yields_zero_metrics_and_flags():
    report = compute_metrics([rec("TN", f"s {i}") for i in range(4)])
    m = report.rows[0].per_corpus["FT2"]
    assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)
    assert any("precision" in f for f in report.flags)
    assert any("recall" in f for f in report.flags)


def test_duplicate_sentences_do_not_change_output():
    base = [rec("TP", "same sentence", delta=0.2), rec("TN", "other sentence")]
    doubled = base + [rec("TP", "same sentence", delta=0.2)] * 3
    a = compute_metrics(base)
    b = compute_metrics(doubled)
    assert a.rows[0].distinct_generated_count == b.rows[0].distinct_generated_count == 2
    assert a.rows[0].per_corpus["FT2"].__dict__ == b.rows[0].per_corpus["FT2"].__dict__


def test_same_sentence_under_different_entities_stays_distinct():
    records = [rec("TP", "one line", entity="E1", delta=0.0),
               rec("FP", "one line", entity="E2")]
    report = compute_metrics(records)
    assert report.rows[0].distinct_generated_count == 2


def test_unevaluated_records_ignored():
    dead = rec("", "failed one")
    dead.evaluated = False
    report = compute_metrics([dead, rec("TP", "good one", delta=0.0)])
    m = report.rows[0].per_corpus["FT2"]
    assert (m.tp, m.fp, m.fn, m.tn) == (1, 0, 0, 0)


def test_pct_distinct_semantic_matches():
    records = [rec("TP", "a", cosine=0.9, delta=0.0), rec("FN", "b", cosine=0.3),
               rec("FP", "c", cosine=0.61), rec("TN", "d", cosine=0.59)]
    report = compute_metrics(records, threshold=0.6)
    m = report.rows[0].per_corpus["FT2"]
    assert m.pct_distinct_semantic_matches == pytest.approx(2 / 4)


def brute_force_tally(records, threshold=0.6):
    """Independent tally: dict-of-dicts, no shared code paths."""
    seen = set()
    table = {}
    for r in records:
        if not r.evaluated:
            continue
        key = (r.media_house, r.template, r.entity, r.first_sentence, r.reference_corpus)
        if key in seen:
            continue
        seen.add(key)
        g = table.setdefault((r.media_house, r.template), {"FT1": [], "FT2": [], "sents": set()})
        g[r.reference_corpus].append(r)
        g["sents"].add((r.entity, r.first_sentence))
    out = {}
    for gk, g in table.items():
        res = {"distinct": len(g["sents"])}
        for corpus in ("FT1", "FT2"):
            quad = {"TP": 0, "FP": 0, "FN": 0, "TN": 0}
            deltas = []
            matches = 0
            for r in g[corpus]:
                quad[r.quadrant] += 1
                if r.quadrant == "TP" and r.sentiment_delta is not None:
                    deltas.append(r.sentiment_delta)
                if r.cosine >= threshold:
                    matches += 1
            p = quad["TP"] / (quad["TP"] + quad["FP"]) if quad["TP"] + quad["FP"] else 0.0
            rc = quad["TP"] / (quad["TP"] + quad["FN"]) if quad["TP"] + quad["FN"] else 0.0
            f1 = 2 * p * rc / (p + rc) if p + rc else 0.0
            res[corpus] = {
                "p": p, "r": rc, "f1": f1, "quad": quad,
                "pct": matches / res["distinct"] if res["distinct"] else 0.0,
                "delta": sum(deltas) / len(deltas) if deltas else 0.0,
            }
        out[gk] = res
    return out


def random_records(rng, n=60):
    quadrants = ["TP", "FP", "FN", "TN"]
    records = []
    for _ in range(n):
        q = rng.choice(quadrants)
        cos = rng.uniform(0.6, 1.0) if q in ("TP", "FP") else rng.uniform(-1.0, 0.599)
        records.append(rec(
            q, f"sentence {rng.randint(0, 30)}",
            entity=f"E{rng.randint(1, 4)}",
            template=rng.choice(["is described as being", "is described as stating"]),
            corpus=rng.choice(["FT1", "FT2"]),
            cosine=cos,
            delta=round(rng.random(), 3) if q == "TP" else None,
            house=rng.choice(["h1", "h2"]),
        ))
    return records


def test_matches_brute_force_on_random_record_sets():
    rng = random.Random(1234)
    for _ in range(300):
        records = random_records(rng)
        report = compute_metrics(records)
        oracle = brute_force_tally(records)
        assert len(report.rows) == len(oracle)
        for row in report.rows:
            want = oracle[(row.media_house, row.template)]
            assert row.distinct_generated_count == want["distinct"]
            for corpus in ("FT1", "FT2"):
                m = row.per_corpus[corpus]
                w = want[corpus]
                assert (m.tp, m.fp, m.fn, m.tn) == tuple(w["quad"].values())
                assert m.precision == pytest.approx(w["p"], abs=1e-9)
                assert m.recall == pytest.approx(w["r"], abs=1e-9)
                assert m.f1 == pytest.approx(w["f1"], abs=1e-9)
                assert m.pct_distinct_semantic_matches == pytest.approx(w["pct"], abs=1e-9)
                assert m.avg_tp_sentiment_delta == pytest.approx(w["delta"], abs=1e-9)


def test_quadrants_partition_evaluated_records():
    rng = random.Random(5)
    records = random_records(rng, n=200)
    report = compute_metrics(records)
    seen = {(r.media_house, r.template, r.entity, r.first_sentence, r.reference_corpus)
            for r in records}
    total = sum(m.tp + m.fp + m.fn + m.tn
                for row in report.rows for m in row.per_corpus.values())
    assert total == len(seen)


def test_csv_has_exactly_the_reference_columns():
    report = compute_metrics([rec("TP", "s", delta=0.1)])
    out = render_csv(report)
    reader = csv.reader(io.StringIO(out))
    header = next(reader)
    assert header == CSV_COLUMNS
    row = next(reader)
    assert len(row) == len(CSV_COLUMNS)


def test_markdown_mentions_flags_and_config():
    report = compute_metrics([rec("TN", "s")])
    md = render_markdown(report, {"seed": 1})
    assert "## Flags" in md
    assert '"seed": 1' in md
