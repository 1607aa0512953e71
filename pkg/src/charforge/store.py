"""Line-delimited corpus store with per-stage manifests.

Layout under the store root: one file per (stage, media house), e.g.
``raw/<house>.jsonl`` or ``ft1/<house>.txt``, plus ``<house>.manifest.json``
next to it. Auxiliary artifacts (coref clusters, parses, clauses, prompts)
live in their own subdirectories without manifests.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import asdict, dataclass
from datetime import date
from pathlib import Path
from typing import Callable, Iterable, Iterator

from filelock import FileLock

from .errors import DataError, StageNotFoundError

log = logging.getLogger(__name__)

STAGES = ("raw", "resolved", "ft1", "ft2-train", "ft2-test", "generated", "evaluated")
TEXT_STAGES = frozenset({"ft1", "ft2-train"})

RejectCallback = Callable[[dict, str], None]


@dataclass
class Article:
    id: str
    media_house: str
    url: str
    published_at: date
    text: str

    @classmethod
    def from_record(cls, rec: dict) -> "Article":
        """Validate a raw dict; raises ValueError with a reason on bad input."""
        if not isinstance(rec, dict):
            raise ValueError("record is not an object")
        for field in ("id", "media_house", "url", "published_at", "text"):
            if field not in rec:
                raise ValueError(f"missing field '{field}'")
            if not isinstance(rec[field], str):
                raise ValueError(f"field '{field}' is not a string")
        if not rec["id"]:
            raise ValueError("empty id")
        if not rec["text"].strip():
            raise ValueError("empty text")
        try:
            # strict ISO date; partial dates (missing day/month) are rejected
            published = date.fromisoformat(rec["published_at"])
        except ValueError as exc:
            raise ValueError(f"unparseable published_at: {exc}") from exc
        return cls(rec["id"], rec["media_house"], rec["url"], published, rec["text"])

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["published_at"] = self.published_at.isoformat()
        return rec


@dataclass
class CorpusManifest:
    media_house: str
    date_from: str
    date_to: str
    article_count: int
    stage: str


def dump_record(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False, sort_keys=True)


class CorpusStore:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    # -- path helpers -------------------------------------------------

    def stage_path(self, stage: str, media_house: str) -> Path:
        ext = "txt" if stage in TEXT_STAGES else "jsonl"
        return self.root / stage / f"{media_house}.{ext}"

    def manifest_path(self, stage: str, media_house: str) -> Path:
        return self.root / stage / f"{media_house}.manifest.json"

    def coref_path(self, media_house: str) -> Path:
        return self.root / "coref" / f"{media_house}.jsonl"

    def conllu_dir(self, media_house: str) -> Path:
        return self.root / "conllu" / media_house

    def clauses_path(self, media_house: str) -> Path:
        return self.root / "clauses" / f"{media_house}.jsonl"

    def demos_path(self, media_house: str) -> Path:
        return self.root / "demos" / f"{media_house}.jsonl"

    def split_path(self, media_house: str) -> Path:
        return self.root / "split" / f"{media_house}.json"

    def prompts_path(self, media_house: str) -> Path:
        return self.root / "prompts" / f"{media_house}.jsonl"

    def report_dir(self) -> Path:
        return self.root / "report"

    # -- ingest -------------------------------------------------------

    def ingest(
        self,
        records: Iterable[dict],
        media_house: str,
        date_from: date,
        date_to: date,
        on_reject: RejectCallback | None = None,
    ) -> CorpusManifest:
        """Filter, validate and persist raw articles; first writer wins on id.

        Records outside the (media_house, date range) filter are dropped
        silently; malformed or duplicate records are rejected with a reason
        and ingestion continues.
        """
        if date_from > date_to:
            raise DataError(f"date_from {date_from} after date_to {date_to}")

        def reject(rec: dict, reason: str) -> None:
            rid = rec.get("id", "?") if isinstance(rec, dict) else "?"
            log.info("event=reject_record id=%s reason=%r", rid, reason)
            if on_reject is not None:
                on_reject(rec, reason)

        existing: dict[str, dict] = {}
        path = self.stage_path("raw", media_house)
        if path.exists():
            for rec in self._read_jsonl(path):
                existing[rec["id"]] = rec

        retained = 0
        for rec in records:
            try:
                art = Article.from_record(rec)
            except ValueError as exc:
                reject(rec, str(exc))
                continue
            if art.media_house != media_house:
                continue
            if not (date_from <= art.published_at <= date_to):
                continue
            if art.id in existing:
                reject(rec, f"duplicate id '{art.id}'")
                continue
            existing[art.id] = art.to_record()
            retained += 1

        rows = [existing[k] for k in sorted(existing)]
        self._write_jsonl(path, rows)
        manifest = CorpusManifest(
            media_house=media_house,
            date_from=date_from.isoformat(),
            date_to=date_to.isoformat(),
            article_count=len(rows),
            stage="raw",
        )
        self._write_manifest(manifest)
        log.info("event=ingest house=%s retained=%d total=%d",
                 media_house, retained, len(rows))
        return manifest

    # -- generic stage IO ----------------------------------------------

    def write_stage(
        self,
        stage: str,
        media_house: str,
        records: Iterable[dict],
        sort_key: str | None = None,
        date_from: str = "",
        date_to: str = "",
    ) -> CorpusManifest:
        if stage not in STAGES:
            raise DataError(f"unknown stage '{stage}'")
        if stage in TEXT_STAGES:
            raise DataError(f"stage '{stage}' holds text lines, use write_text_stage")
        rows = list(records)
        if sort_key is not None:
            rows.sort(key=lambda r: r[sort_key])
        self._write_jsonl(self.stage_path(stage, media_house), rows)
        manifest = CorpusManifest(media_house, date_from, date_to, len(rows), stage)
        self._write_manifest(manifest)
        return manifest

    def write_text_stage(
        self,
        stage: str,
        media_house: str,
        lines: Iterable[str],
        date_from: str = "",
        date_to: str = "",
    ) -> CorpusManifest:
        if stage not in TEXT_STAGES:
            raise DataError(f"stage '{stage}' is not a text stage")
        path = self.stage_path(stage, media_house)
        out = []
        for line in lines:
            if "\n" in line:
                raise DataError("text stage lines must not contain newlines")
            out.append(line)
        self._write_text(path, out)
        manifest = CorpusManifest(media_house, date_from, date_to, len(out), stage)
        self._write_manifest(manifest)
        return manifest

    def read_stage(self, stage: str, media_house: str) -> Iterator[dict] | Iterator[str]:
        """Records in stored order (keyed stages are kept sorted on disk)."""
        path = self.stage_path(stage, media_house)
        if not path.exists():
            raise StageNotFoundError(stage, f"no data for media house '{media_house}'")
        if stage in TEXT_STAGES:
            return iter(path.read_text(encoding="utf-8").splitlines())
        return self._read_jsonl(path)

    def read_manifest(self, stage: str, media_house: str) -> CorpusManifest:
        path = self.manifest_path(stage, media_house)
        if not path.exists():
            raise StageNotFoundError(stage, f"no manifest for media house '{media_house}'")
        data = json.loads(path.read_text(encoding="utf-8"))
        return CorpusManifest(**data)

    def has_stage(self, stage: str, media_house: str) -> bool:
        return self.stage_path(stage, media_house).exists()

    # -- auxiliary jsonl files ------------------------------------------

    def write_jsonl(self, path: Path, records: Iterable[dict]) -> int:
        rows = list(records)
        self._write_jsonl(path, rows)
        return len(rows)

    def read_jsonl(self, path: Path) -> Iterator[dict]:
        if not path.exists():
            raise DataError(f"missing file: {path}")
        return self._read_jsonl(path)

    # -- internals -------------------------------------------------------

    @staticmethod
    def _read_jsonl(path: Path) -> Iterator[dict]:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield json.loads(line)

    def _write_jsonl(self, path: Path, rows: list[dict]) -> None:
        self._write_text(path, [dump_record(r) for r in rows])

    @staticmethod
    def _write_text(path: Path, lines: list[str]) -> None:
        """Atomic, exclusive write: temp file in place then rename."""
        path.parent.mkdir(parents=True, exist_ok=True)
        lock = FileLock(str(path) + ".lock")
        with lock:
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                    for line in lines:
                        fh.write(line)
                        fh.write("\n")
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    def _write_manifest(self, manifest: CorpusManifest) -> None:
        path = self.manifest_path(manifest.stage, manifest.media_house)
        self._write_text(path, [json.dumps(asdict(manifest), sort_keys=True)])
