"""Lemma to present-participle conversion.

Rule order: exception table, final -ie, silent -e, stressed CVC doubling,
plain -ing. Stress is approximated by a monosyllable test plus a finite list
of stress-final disyllables; American single-consonant spellings are used
for -el / -ol verbs.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

VOWELS = "aeiou"

STRESS_FINAL_DISYLLABLES = frozenset({
    "abet", "abhor", "admit", "allot", "annul", "begin", "befit", "commit",
    "compel", "concur", "confer", "control", "debar", "defer", "demur",
    "deter", "dispel", "embed", "emit", "entrap", "excel", "expel", "extol",
    "forbid", "forget", "impel", "incur", "infer", "occur", "omit", "outwit",
    "patrol", "permit", "prefer", "propel", "rebel", "rebut", "recap",
    "recur", "refer", "regret", "remit", "repel", "reset", "submit",
    "transfer", "transmit", "unwrap", "upset",
})


@lru_cache(maxsize=1)
def _exceptions() -> dict[str, str]:
    table: dict[str, str] = {}
    text = resources.files("charforge.data").joinpath("gerund_exceptions.txt").read_text("utf-8")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        lemma, form = line.split()
        table[lemma] = form
    return table


def _syllables(word: str) -> int:
    return len(re.findall(r"[aeiouy]+", word))


def _is_vowel(word: str, i: int) -> bool:
    ch = word[i]
    if ch not in VOWELS:
        return False
    # 'u' after 'q' behaves as part of the consonant onset (quit, squat)
    if ch == "u" and i > 0 and word[i - 1] == "q":
        return False
    return True


def gerund(lemma: str) -> str:
    """Present participle of a lowercase alphabetic verb lemma."""
    if not lemma:
        raise ValueError("empty verb lemma")
    if not (lemma.isalpha() and lemma == lemma.lower()):
        raise ValueError(f"lemma must be lowercase alphabetic: {lemma!r}")

    table = _exceptions()
    if lemma in table:
        return table[lemma]

    if lemma.endswith("ie"):
        return lemma[:-2] + "ying"

    if lemma.endswith("e") and not lemma.endswith(("ee", "oe", "ye")) and len(lemma) > 1:
        return lemma[:-1] + "ing"

    if (
        len(lemma) >= 3
        and lemma[-1] not in VOWELS + "wxy"
        and _is_vowel(lemma, len(lemma) - 2)
        and not _is_vowel(lemma, len(lemma) - 3)
        and (_syllables(lemma) == 1 or lemma in STRESS_FINAL_DISYLLABLES)
    ):
        return lemma + lemma[-1] + "ing"

    return lemma + "ing"
