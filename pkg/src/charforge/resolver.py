"""Person entity mention disambiguation.

Two passes over each article: coreference spans are rewritten to their
cluster representative, then single-token partial names are expanded to the
nearest preceding full name whose first or last token matches.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .errors import CorefSpanError
from .sentences import sentence_index_at, sentence_spans

log = logging.getLogger(__name__)

HONORIFICS = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "sir", "madam", "miss", "mx",
    "gen", "gov", "sen", "rep", "capt", "col", "lt", "sgt", "rev", "st",
})

# Capitalized words that never start or continue a person name.
_NAME_STOPWORDS = frozenset({
    "The", "A", "An", "He", "She", "It", "They", "We", "I", "You",
    "His", "Her", "Their", "Our", "My", "Your", "Its", "Him", "Them", "Us",
    "This", "That", "These", "Those", "There", "Here",
    "But", "And", "Or", "Nor", "So", "Yet", "If", "As", "At", "By",
    "For", "From", "In", "Into", "Of", "Off", "On", "Onto", "Over",
    "Under", "Up", "Down", "With", "Without", "To", "Too", "Then", "Than",
    "When", "While", "Where", "Who", "Whom", "Whose", "Which", "What",
    "Why", "How", "Not", "No", "Yes", "All", "Some", "Any", "Each", "Every",
    "After", "Before", "During", "Since", "Until", "Because", "Although",
    "Though", "However", "Meanwhile", "Moreover", "Also", "Still", "Now",
    "Today", "Yesterday", "Tomorrow", "Monday", "Tuesday", "Wednesday",
    "Thursday", "Friday", "Saturday", "Sunday", "January", "February",
    "March", "April", "May", "June", "July", "August", "September",
    "October", "November", "December", "According", "Earlier", "Later",
    "Last", "Next", "One", "Two", "Three", "Many", "Several", "Both",
})

_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z.'\-]*")


@dataclass
class CorefCluster:
    representative: str
    mentions: list[tuple[int, int]]


@dataclass
class CorefClusterSet:
    doc_id: str
    clusters: list[CorefCluster]

    @classmethod
    def from_record(cls, rec: dict) -> "CorefClusterSet":
        clusters = [
            CorefCluster(c["representative"], [tuple(m) for m in c["mentions"]])
            for c in rec.get("clusters", [])
        ]
        return cls(rec["doc_id"], clusters)


@dataclass
class EntityMention:
    full_name: str
    sentence_index: int
    start: int
    end: int


@dataclass
class ResolvedDocument:
    doc_id: str
    text: str
    entity_mentions: list[EntityMention] = field(default_factory=list)
    alias_map: list[tuple[str, str]] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "text": self.text,
            "entity_mentions": [
                {"full_name": m.full_name, "sentence_index": m.sentence_index,
                 "start": m.start, "end": m.end}
                for m in self.entity_mentions
            ],
            "alias_map": [{"alias": a, "full_name": f} for a, f in self.alias_map],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ResolvedDocument":
        return cls(
            doc_id=rec["doc_id"],
            text=rec["text"],
            entity_mentions=[
                EntityMention(m["full_name"], m["sentence_index"], m["start"], m["end"])
                for m in rec.get("entity_mentions", [])
            ],
            alias_map=[(p["alias"], p["full_name"]) for p in rec.get("alias_map", [])],
        )


def replace_coreferences(text: str, clusters: CorefClusterSet) -> str:
    """Rewrite every mention span to its cluster representative.

    Spans are replaced right to left so earlier offsets stay valid. A span
    outside the document or overlapping within its cluster aborts the whole
    document (callers skip and log it).
    """
    n = len(text)
    spans: list[tuple[int, int, str]] = []
    boundaries = sentence_spans(text)
    for cluster in clusters.clusters:
        seen: list[tuple[int, int]] = []
        for start, end in sorted(cluster.mentions):
            if not (0 <= start < end <= n):
                raise CorefSpanError(
                    f"doc {clusters.doc_id}: span [{start},{end}) outside text of length {n}")
            if seen and start < seen[-1][1]:
                raise CorefSpanError(
                    f"doc {clusters.doc_id}: overlapping mentions within a cluster")
            seen.append((start, end))
            s_idx = sentence_index_at(boundaries, start)
            e_idx = sentence_index_at(boundaries, end - 1)
            if s_idx != e_idx:
                log.info("event=skip_coref_span doc=%s reason=crosses_sentence span=[%d,%d)",
                         clusters.doc_id, start, end)
                continue
            spans.append((start, end, cluster.representative))

    out = text
    last_start = len(text) + 1
    for start, end, rep in sorted(spans, key=lambda s: (s[0], s[1]), reverse=True):
        if end > last_start:
            log.info("event=skip_coref_span doc=%s reason=cross_cluster_overlap span=[%d,%d)",
                     clusters.doc_id, start, end)
            continue
        out = out[:start] + rep + out[end:]
        last_start = start
    return out


def tag_person_mentions(text: str) -> list[tuple[int, int]]:
    """Rule-based PERSON span tagging: runs of capitalized name-like tokens.

    Deliberately conservative; single capitalized stopwords and sentence
    starters are excluded. Used when no external mention annotation exists.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        tok, start, end = m.group(), m.start(), m.end()
        # keep the trailing period only on honorifics, so sentence-final
        # periods neither join runs across boundaries nor enter name spans
        if tok.endswith(".") and tok.rstrip(".").lower() not in HONORIFICS:
            tok = tok.rstrip(".")
            end = start + len(tok)
        if tok:
            tokens.append((tok, start, end))
    mentions: list[tuple[int, int]] = []
    run_start: int | None = None
    run_end = -1
    prev_end = -2

    def is_namelike(tok: str) -> bool:
        bare = tok.rstrip(".")
        if bare.lower() in HONORIFICS:
            return True
        if tok in _NAME_STOPWORDS:
            return False
        return bool(re.fullmatch(r"[A-Z][a-z'\-]+", bare)) and len(bare) >= 2

    for tok, start, end in tokens:
        if is_namelike(tok):
            gap = text[prev_end:start] if prev_end >= 0 else ""
            if run_start is not None and gap == " ":
                run_end = end
            else:
                if run_start is not None:
                    mentions.append((run_start, run_end))
                run_start, run_end = start, end
        else:
            if run_start is not None:
                mentions.append((run_start, run_end))
                run_start = None
        prev_end = end
    if run_start is not None:
        mentions.append((run_start, run_end))

    # drop runs that are honorifics only
    out = []
    for start, end in mentions:
        words = _TOKEN_RE.findall(text[start:end])
        if all(w.rstrip(".").lower() in HONORIFICS for w in words):
            continue
        out.append((start, end))
    return out


def _strip_honorifics(words: list[str]) -> list[str]:
    i = 0
    while i < len(words) and words[i].rstrip(".").lower() in HONORIFICS:
        i += 1
    return words[i:]


def resolve_partial_names(
    doc_id: str,
    text: str,
    person_mentions: list[tuple[int, int]] | None = None,
) -> ResolvedDocument:
    """Expand single-token person mentions to previously seen full names.

    Multi-token PERSON mentions register a full name in order of appearance.
    A later single-token mention is rewritten when its token equals the first
    or last token of a registered name (case-insensitive); ties go to the
    name most recently seen before the mention. Honorifics are stripped from
    the comparison and dropped from rewrites.
    """
    if person_mentions is None:
        person_mentions = tag_person_mentions(text)
    mentions = sorted(person_mentions)
    boundaries = sentence_spans(text)

    registered: dict[str, tuple[str, str]] = {}  # canonical -> (first, last) lowercased
    last_seen: dict[str, int] = {}
    rewrites: list[tuple[int, int, str]] = []
    alias_pairs: list[tuple[str, str]] = []
    unresolved: list[str] = []

    for start, end in mentions:
        surface = text[start:end]
        if sentence_index_at(boundaries, start) != sentence_index_at(boundaries, max(start, end - 1)):
            log.info("event=skip_person_mention doc=%s reason=crosses_sentence span=[%d,%d)",
                     doc_id, start, end)
            continue
        words = _strip_honorifics(_TOKEN_RE.findall(surface))
        words = [w.rstrip(".") for w in words]
        words = [w for w in words if w]
        if not words:
            continue
        if len(words) >= 2:
            canonical = " ".join(words)
            if canonical not in registered:
                registered[canonical] = (words[0].lower(), words[-1].lower())
            last_seen[canonical] = start
            continue
        token = words[0].lower()
        candidates = [
            name for name, (first, last) in registered.items()
            if token in (first, last) and last_seen.get(name, -1) < start
        ]
        if not candidates:
            unresolved.append(words[0])
            log.info("event=unresolved_partial_name doc=%s token=%r pos=%d",
                     doc_id, words[0], start)
            continue
        target = max(candidates, key=lambda name: last_seen[name])
        rewrites.append((start, end, target))
        alias_pairs.append((words[0], target))
        last_seen[target] = start

    out = text
    for start, end, name in sorted(rewrites, reverse=True):
        out = out[:start] + name + out[end:]

    entity_mentions = _find_entity_mentions(out, list(registered))
    seen_pairs = sorted(set(alias_pairs))
    if unresolved:
        log.info("event=unresolved_summary doc=%s count=%d", doc_id, len(unresolved))
    return ResolvedDocument(doc_id, out, entity_mentions, seen_pairs)


def _find_entity_mentions(text: str, names: list[str]) -> list[EntityMention]:
    boundaries = sentence_spans(text)
    found: list[EntityMention] = []
    for name in names:
        pattern = re.compile(r"(?<![\w'’-])" + re.escape(name) + r"(?![\w'’-])")
        for m in pattern.finditer(text):
            idx = sentence_index_at(boundaries, m.start())
            found.append(EntityMention(name, idx, m.start(), m.end()))
    found.sort(key=lambda m: (m.start, m.end, m.full_name))
    return found


def resolve_document(
    doc_id: str,
    text: str,
    clusters: CorefClusterSet | None = None,
    person_mentions: list[tuple[int, int]] | None = None,
) -> ResolvedDocument:
    """Full Block-1 treatment of one article: coref rewrite then name expansion."""
    if clusters is not None:
        text = replace_coreferences(text, clusters)
        # offsets shifted by the rewrite; retag rather than remap
        person_mentions = None
    return resolve_partial_names(doc_id, text, person_mentions)
