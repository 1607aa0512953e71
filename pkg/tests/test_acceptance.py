"""Acceptance suite: one test per release criterion, with its stated
tolerance pinned in the assertion. The terminal summary prints one
pass/fail line per criterion.
"""

import csv
import io
import json
import random
import re
import shutil
import time
from pathlib import Path

import pytest

from charforge import similarity
from charforge.cli import main as cli_main
from charforge.clauses import Clause, extract_clauses
from charforge.conllu import parse_conllu
from charforge.errors import CorpusTooSmallError
from charforge.evaluation import (
    StubEmbedder,
    classify,
    compute_metrics,
    mask_known_entities,
    prepare_ft2_references,
)
from charforge.evaluation.metrics import CSV_COLUMNS
from charforge.morph import gerund
from charforge.synth import Demonstration, filter_and_split, synthesize

from conftest import CORPUS, FIXTURES, make_e2e_store
from test_metrics import brute_force_tally, random_records
from test_synth import brute_force_split

GOLDEN = FIXTURES / "golden"


def test_clause_extractor_golden_suite():
    """40 hand-annotated sentences covering all seven types: exact match, < 1 s."""
    expected = json.loads((FIXTURES / "golden_clauses.expected.json").read_text())
    started = time.perf_counter()
    got = []
    for sent in parse_conllu(FIXTURES / "golden_clauses.conllu"):
        for c in extract_clauses(sent):
            got.append({
                "sentence_index": sent.sentence_index,
                "clause_type": c.clause_type,
                "subject": c.subject,
                "verb_lemma": c.verb_lemma,
                "indirect_object": c.indirect_object,
                "direct_object": c.direct_object,
                "complement": c.complement,
                "adverbials": c.adverbials,
            })
    elapsed = time.perf_counter() - started
    assert {c["clause_type"] for c in expected} == {"SV", "SVA", "SVC", "SVO",
                                                    "SVOA", "SVOC", "SVOO"}
    assert got == expected, "extracted clauses must match the hand-built oracle exactly"
    assert elapsed < 1.0


def test_gerund_suite():
    """100% exact match on the curated 150-verb inflection oracle."""
    pairs = []
    for line in (Path(__file__).parent / "data" / "gerund_oracle.txt").read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            lemma, form = line.split()
            pairs.append((lemma, form))
    assert len(pairs) == 150
    mismatches = [(l, gerund(l), f) for l, f in pairs if gerund(l) != f]
    assert mismatches == []
    for lemma, form in [("show", "showing"), ("say", "saying"), ("claim", "claiming"),
                        ("win", "winning"), ("come", "coming")]:
        assert gerund(lemma) == form


def test_demonstration_pattern_invariant():
    """Every synthesized sentence matches the demonstration pattern; 10k-clause fuzz."""
    entities = {f"entity {i:02d}": f"Entity {i:02d}" for i in range(20)}
    verbs = ["win", "say", "come", "give", "be", "live", "put", "see", "die",
             "plan", "carry", "agree", "remain", "praise", "address", "take"]
    parts = ["the vote", "a new law", "his rivals", "her speech", "the crowd", None]
    rng = random.Random(1812)
    pattern_cache = {e: re.compile(rf"^{re.escape(e)} is described as \w+ing\b.*\.$")
                     for e in entities.values()}
    violations = 0
    for i in range(10_000):
        entity = rng.choice(list(entities.values()))
        clause = Clause(
            "SV", entity, rng.choice(verbs),
            indirect_object=rng.choice(parts),
            direct_object=rng.choice(parts),
            complement=rng.choice(parts),
            adverbials=[p for p in rng.sample(parts[:-1], rng.randint(0, 3))],
        )
        demo = synthesize(clause, entities)
        if pattern_cache[entity].match(demo.sentence) is None:
            violations += 1
    assert violations == 0


def test_split_correctness():
    """1000 random count tables: threshold strict, ten disjoint test entities
    per the rank-bucket rule, permutation invariant, equal to brute force."""
    rng = random.Random(90125)
    trials = 0
    while trials < 1000:
        n = rng.randint(1, 40)
        counts = {f"E{i:02d}": rng.randint(480, 560) for i in range(n)}
        demos = [Demonstration(e, f"s{i}") for e, c in counts.items()
                 for i in range(c - 480)]
        expected = brute_force_split(counts, 500, 10)
        trials += 1
        if expected is None:
            with pytest.raises(CorpusTooSmallError):
                filter_and_split(demos, 20, 10)
            continue
        rng.shuffle(demos)
        split = filter_and_split(demos, 20, 10)
        test_names, train_names = expected
        assert split.test_names == test_names
        assert split.train_names == train_names
        assert len(split.test_entities) == 10
        assert set(split.test_names).isdisjoint(split.train_names)
        assert all(e["count"] + 480 > 500 for e in split.test_entities)


def _oracle_quadrant(same_entity: bool, cosine: float, threshold: float) -> str:
    table = {(True, True): "TP", (False, True): "FP",
             (True, False): "FN", (False, False): "TN"}
    return table[(same_entity, cosine >= threshold)]


def test_confusion_matrix():
    """classify agrees with a table-lookup oracle on boundaries and 1000 random cases;
    quadrants partition every record set."""
    for same in (True, False):
        for cos in (0.59, 0.60, 0.61):
            got = classify("A", "A" if same else "B", cos, 0.6)
            assert got == _oracle_quadrant(same, cos, 0.6)

    rng = random.Random(60)
    tallies = {"TP": 0, "FP": 0, "FN": 0, "TN": 0}
    n = 1000
    for _ in range(n):
        same = rng.random() < 0.5
        cos = rng.uniform(-1, 1)
        got = classify("A", "A" if same else "B", cos, 0.6)
        assert got == _oracle_quadrant(same, cos, 0.6)
        tallies[got] += 1
    assert sum(tallies.values()) == n


def test_metrics_arithmetic():
    """compute_metrics equals an independent tally within 1e-9 on 1000 random
    record sets; the definitional TP=8/FP=2/FN=1 case is exact."""
    from test_metrics import rec
    records = ([rec("TP", f"t{i}", delta=0.0) for i in range(8)]
               + [rec("FP", f"f{i}") for i in range(2)]
               + [rec("FN", "n0")])
    (row,) = compute_metrics(records).rows
    m = row.per_corpus["FT2"]
    assert m.precision == pytest.approx(0.8, abs=1e-9)
    assert m.recall == pytest.approx(0.8888888888888888, abs=1e-9)
    assert m.f1 == pytest.approx(0.8421052631578947, abs=1e-9)

    rng = random.Random(424242)
    for _ in range(1000):
        records = random_records(rng, n=rng.randint(1, 40))
        report = compute_metrics(records)
        oracle = brute_force_tally(records)
        for row in report.rows:
            want = oracle[(row.media_house, row.template)]
            assert row.distinct_generated_count == want["distinct"]
            for corpus in ("FT1", "FT2"):
                m, w = row.per_corpus[corpus], want[corpus]
                assert m.precision == pytest.approx(w["p"], abs=1e-9)
                assert m.recall == pytest.approx(w["r"], abs=1e-9)
                assert m.f1 == pytest.approx(w["f1"], abs=1e-9)
                assert m.pct_distinct_semantic_matches == pytest.approx(w["pct"], abs=1e-9)
                assert m.avg_tp_sentiment_delta == pytest.approx(w["delta"], abs=1e-9)


def test_self_match_sanity():
    """A generation byte-equal to a held-out demonstration: TP at cosine 1.0 for
    the right entity, FP when attributed to another entity."""
    demos = [
        Demonstration("Asha Rao", "Asha Rao is described as being calm in public meetings."),
        Demonstration("Vikram Patel", "Vikram Patel is described as being blunt with reporters."),
        Demonstration("Mohan Das", "Mohan Das is described as winning three straight elections."),
    ]
    refs = prepare_ft2_references(demos)
    names = [d.entity for d in demos]
    embedder = StubEmbedder()
    ref_vecs = embedder.embed([r.embed_text for r in refs])

    held_out = demos[0].sentence
    queries = [
        mask_known_entities(held_out, names),  # attributed to Asha Rao
        mask_known_entities(held_out, names),  # same text, attributed to Vikram Patel
    ]
    idx, score = similarity.best_match_matrix(embedder.embed(queries), ref_vecs)

    assert score[0] == pytest.approx(1.0, abs=1e-9)
    assert refs[idx[0]].entity == "Asha Rao"
    assert classify("Asha Rao", refs[idx[0]].entity, score[0]) == "TP"

    assert score[1] == pytest.approx(1.0, abs=1e-9)
    assert classify("Vikram Patel", refs[idx[1]].entity, score[1]) == "FP"


def test_report_fidelity(tmp_path):
    """report.csv carries exactly the reference metric columns per
    (media house, prompt) and matches the golden fixture byte for byte."""
    cfg_path, store = make_e2e_store(tmp_path)
    assert cli_main(["run", "--config", str(cfg_path),
                     "--in", f"alpha={CORPUS / 'articles_alpha.jsonl'}"]) == 0
    text = (store / "report" / "report.csv").read_text()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == CSV_COLUMNS
    assert rows[0][2:] == [
        "distinct_generated_count",
        "pct_distinct_semantic_matches_ft1", "pct_distinct_semantic_matches_ft2",
        "avg_tp_sentiment_delta_ft1", "avg_tp_sentiment_delta_ft2",
        "f1_ft1", "f1_ft2",
        "precision_ft1", "precision_ft2",
        "recall_ft1", "recall_ft2",
    ]
    assert len(rows) == 1 + 4  # one row per prompt template for the fixture house
    assert {r[0] for r in rows[1:]} == {"alpha"}
    assert text == (GOLDEN / "report.csv").read_text()


def test_end_to_end_determinism(tmp_path):
    """Full fixture pipeline with stub embedder and replayed generations:
    byte-identical outputs across two runs, under 60 s."""
    cfg_path, store = make_e2e_store(tmp_path)
    replay = {p.relative_to(store).as_posix(): p.read_bytes()
              for p in store.rglob("*") if p.is_file()}

    def run_once():
        assert cli_main(["run", "--config", str(cfg_path),
                         "--in", f"alpha={CORPUS / 'articles_alpha.jsonl'}"]) == 0
        return {p.relative_to(store).as_posix(): p.read_bytes()
                for p in sorted(store.rglob("*"))
                if p.is_file() and not p.name.endswith(".lock")}

    started = time.perf_counter()
    first = run_once()
    shutil.rmtree(store)
    for rel, blob in replay.items():
        path = store / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(blob)
    second = run_once()
    elapsed = time.perf_counter() - started

    assert first.keys() == second.keys()
    for key in first:
        assert first[key] == second[key], f"{key} differs between runs"
    assert elapsed < 60.0
