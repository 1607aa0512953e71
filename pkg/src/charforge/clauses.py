"""Clause extraction over dependency parses and the seven-way typing.

One clause per verbal head with a subject; parts are the full subtrees of
the head's dependents. Auxiliaries never head a clause; conjoined verbs
inherit the left conjunct's subject.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field

from .conllu import ParsedSentence, Token

log = logging.getLogger(__name__)

CLAUSE_TYPES = ("SV", "SVA", "SVC", "SVO", "SVOA", "SVOC", "SVOO")

COPULAR_VERBS = frozenset({
    "be", "seem", "appear", "become", "remain", "feel", "look", "sound",
    "taste", "smell", "stay", "turn", "prove", "grow",
})

# verbs whose clause needs an adverbial to be complete (SVA / SVOA)
ADVERBIAL_VERBS = frozenset({
    "be", "live", "stay", "put", "place", "reside", "lie", "sit", "stand",
    "go", "come",
})

SUBJECT_RELS = frozenset({"nsubj", "nsubjpass", "csubj", "csubjpass"})
DOBJ_RELS = frozenset({"obj", "dobj"})
IOBJ_RELS = frozenset({"iobj", "dative"})
COMP_RELS = frozenset({"attr", "acomp", "xcomp", "ccomp", "oprd"})
ADV_RELS = frozenset({"advmod", "npadvmod", "advcl", "prep", "obl", "neg"})
AUX_RELS = frozenset({"aux", "auxpass", "cop"})

VERB_POS = frozenset({"VERB", "AUX"})

_DETOK_BEFORE = re.compile(r"\s+([,.;:!?%)\]])")
_DETOK_AFTER = re.compile(r"([(\[])\s+")


@dataclass
class Clause:
    clause_type: str
    subject: str
    verb_lemma: str
    indirect_object: str | None = None
    direct_object: str | None = None
    complement: str | None = None
    adverbials: list[str] = field(default_factory=list)
    doc_id: str = ""
    sentence_index: int = 0

    def validate(self) -> None:
        if not self.subject or not self.verb_lemma:
            raise ValueError("subject and verb_lemma must be non-empty")
        if self.clause_type not in CLAUSE_TYPES:
            raise ValueError(f"unknown clause type {self.clause_type}")
        t = self.clause_type
        if t == "SVOO" and not (self.indirect_object and self.direct_object):
            raise ValueError("SVOO requires both objects")
        if t == "SVOC" and not (self.direct_object and self.complement):
            raise ValueError("SVOC requires direct object and complement")
        if t == "SVC" and not (self.complement and not self.direct_object
                               and not self.indirect_object):
            raise ValueError("SVC requires a complement and no objects")
        if t == "SVA" and not (self.adverbials and not self.direct_object
                               and not self.indirect_object and not self.complement):
            raise ValueError("SVA requires adverbials only")
        if t == "SVOA" and not (self.direct_object and self.adverbials):
            raise ValueError("SVOA requires direct object and adverbials")

    def to_record(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "sentence_index": self.sentence_index,
            "clause_type": self.clause_type,
            "subject": self.subject,
            "verb_lemma": self.verb_lemma,
            "indirect_object": self.indirect_object,
            "direct_object": self.direct_object,
            "complement": self.complement,
            "adverbials": self.adverbials,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Clause":
        return cls(
            clause_type=rec["clause_type"],
            subject=rec["subject"],
            verb_lemma=rec["verb_lemma"],
            indirect_object=rec.get("indirect_object"),
            direct_object=rec.get("direct_object"),
            complement=rec.get("complement"),
            adverbials=list(rec.get("adverbials", [])),
            doc_id=rec.get("doc_id", ""),
            sentence_index=rec.get("sentence_index", 0),
        )


def render_tokens(tokens: list[Token]) -> str:
    text = " ".join(t.surface for t in sorted(tokens, key=lambda t: t.index))
    text = _DETOK_BEFORE.sub(r"\1", text)
    text = _DETOK_AFTER.sub(r"\1", text)
    return text.strip(" ,.;:")


def subtree(sentence: ParsedSentence, token: Token) -> list[Token]:
    children: dict[int, list[Token]] = {}
    for t in sentence.tokens:
        children.setdefault(t.head, []).append(t)
    out: list[Token] = []
    stack = [token]
    while stack:
        cur = stack.pop()
        out.append(cur)
        stack.extend(children.get(cur.index, []))
    return sorted(out, key=lambda t: t.index)


def subtree_indices(sentence: ParsedSentence, token: Token) -> set[int]:
    return {t.index for t in subtree(sentence, token)}


def extract_clauses(sentence: ParsedSentence) -> list[Clause]:
    """All clauses of one parsed sentence, ordered by verb token index."""
    children: dict[int, list[Token]] = {}
    for t in sentence.tokens:
        children.setdefault(t.head, []).append(t)
    for kids in children.values():
        kids.sort(key=lambda t: t.index)

    def find_subject(verb: Token, hops: int = 0) -> Token | None:
        for child in children.get(verb.index, []):
            if child.rel in SUBJECT_RELS:
                return child
        # conjoined verb inherits the left conjunct's subject
        if verb.rel == "conj" and verb.head != 0 and hops < len(sentence.tokens):
            head = sentence.tokens[verb.head - 1]
            if head.upos in VERB_POS:
                return find_subject(head, hops + 1)
        return None

    clauses: list[Clause] = []
    for verb in sentence.tokens:
        if verb.upos not in VERB_POS or verb.rel in AUX_RELS:
            continue
        subj_tok = find_subject(verb)
        if subj_tok is None:
            log.info("event=skip_verb doc=%s sent=%d verb=%r reason=no_subject",
                     sentence.doc_id, sentence.sentence_index, verb.surface)
            continue

        dobj = iobj = comp = None
        advs: list[Token] = []
        for child in children.get(verb.index, []):
            rel = child.rel
            if rel in DOBJ_RELS and dobj is None:
                dobj = child
            elif rel in IOBJ_RELS and iobj is None:
                iobj = child
            elif rel in COMP_RELS and comp is None:
                comp = child
            elif rel in ADV_RELS:
                advs.append(child)

        # a lone recipient without a direct object acts as the object
        if iobj is not None and dobj is None:
            dobj, iobj = iobj, None

        subject = render_tokens(subtree(sentence, subj_tok))
        direct = render_tokens(subtree(sentence, dobj)) if dobj is not None else None
        indirect = render_tokens(subtree(sentence, iobj)) if iobj is not None else None
        complement = render_tokens(subtree(sentence, comp)) if comp is not None else None
        adverbials = [render_tokens(subtree(sentence, a)) for a in advs]
        adverbials = [a for a in adverbials if a]
        lemma = verb.lemma.lower()

        if direct and indirect:
            ctype = "SVOO"
        elif direct and complement:
            ctype = "SVOC"
        elif direct:
            ctype = "SVOA" if (lemma in ADVERBIAL_VERBS and adverbials) else "SVO"
        elif complement:
            ctype = "SVC"
        elif lemma in ADVERBIAL_VERBS and adverbials:
            ctype = "SVA"
        else:
            ctype = "SV"

        clause = Clause(
            clause_type=ctype,
            subject=subject,
            verb_lemma=lemma,
            indirect_object=indirect,
            direct_object=direct,
            complement=complement,
            adverbials=adverbials,
            doc_id=sentence.doc_id,
            sentence_index=sentence.sentence_index,
        )
        if not clause.subject or not clause.verb_lemma:
            log.info("event=skip_clause doc=%s sent=%d reason=empty_part",
                     sentence.doc_id, sentence.sentence_index)
            continue
        clauses.append(clause)
    return clauses


def clause_type_histogram(clauses) -> dict[str, int]:
    counts = Counter(c.clause_type for c in clauses)
    return {t: counts.get(t, 0) for t in CLAUSE_TYPES}


def format_histogram(hist: dict[str, int]) -> str:
    """Fixed-width table, one row per clause type plus the sentence total."""
    width = max(len(f"{v:,}") for v in list(hist.values()) + [sum(hist.values())])
    width = max(width, len("Count"))
    lines = [f"{'Clause Type':<12}{'Count':>{width}}"]
    for ctype in CLAUSE_TYPES:
        lines.append(f"{ctype:<12}{hist.get(ctype, 0):>{width},}")
    lines.append(f"{'Total':<12}{sum(hist.values()):>{width},}")
    return "\n".join(lines)
