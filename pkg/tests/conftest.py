from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in rep.nodeid:
                name = rep.nodeid.split("::")[-1].replace("test_", "", 1)
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"  {verdict}  {name}")


@pytest.fixture
def fixture_corpus() -> Path:
    return CORPUS


@pytest.fixture
def e2e_store(tmp_path: Path):
    """A store preloaded with the replay artifacts the adapters would produce,
    plus a config pointing at it. Returns (config_path, store_path)."""
    return make_e2e_store(tmp_path)


def make_e2e_store(base: Path, name: str = "store") -> tuple[Path, Path]:
    store = base / name
    (store / "coref").mkdir(parents=True)
    (store / "generated").mkdir(parents=True)
    shutil.copy(CORPUS / "coref_alpha.jsonl", store / "coref" / "alpha.jsonl")
    shutil.copytree(CORPUS / "conllu_alpha", store / "conllu" / "alpha")
    shutil.copy(CORPUS / "generated_alpha.jsonl", store / "generated" / "alpha.jsonl")
    cfg = json.loads((CORPUS / "config.json").read_text())
    cfg["store"] = str(store)
    cfg_path = base / f"{name}-config.json"
    cfg_path.write_text(json.dumps(cfg, indent=2, sort_keys=True))
    return cfg_path, store
