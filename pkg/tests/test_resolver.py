import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charforge.errors import CorefSpanError
from charforge.resolver import (
    CorefCluster,
    CorefClusterSet,
    replace_coreferences,
    resolve_partial_names,
    tag_person_mentions,
)


def clusters(doc_id, *specs):
    return CorefClusterSet(doc_id, [CorefCluster(rep, list(mentions)) for rep, mentions in specs])


class TestReplaceCoreferences:
    def test_single_cluster_substitution(self):
        text = "John went home. He slept."
        cs = clusters("d1", ("John", [(16, 18)]))
        assert replace_coreferences(text, cs) == "John went home. John slept."

    def test_empty_cluster_set_is_identity(self):
        text = "Nothing changes here."
        assert replace_coreferences(text, clusters("d1")) == text

    def test_three_clusters_against_hand_rewrite(self):
        #       0         1         2         3         4         5
        #       0123456789012345678901234567890123456789012345678901234
        text = "Anna Bell met Carl Dent. She praised him. They left."
        cs = clusters(
            "d1",
            ("Anna Bell", [(25, 28)]),   # She
            ("Carl Dent", [(42, 46)]),   # They (demonstrates adjacent clusters)
            ("Carl Dent", [(37, 40)]),   # him
        )
        assert replace_coreferences(text, cs) == (
            "Anna Bell met Carl Dent. Anna Bell praised Carl Dent. Carl Dent left.")

    def test_out_of_bounds_span_raises(self):
        with pytest.raises(CorefSpanError):
            replace_coreferences("short", clusters("d1", ("X", [(2, 99)])))

    def test_overlapping_mentions_within_cluster_raise(self):
        with pytest.raises(CorefSpanError):
            replace_coreferences("John went home.", clusters("d1", ("X", [(0, 4), (2, 6)])))

    def test_replacement_never_crosses_sentences(self):
        text = "John won. He left."
        # span covering the boundary gets skipped, in-sentence span applies
        cs = clusters("d1", ("John", [(5, 13)]), ("John", [(10, 12)]))
        assert replace_coreferences(text, cs) == "John won. John left."


class TestResolvePartialNames:
    def test_last_name_resolves_to_full_name(self):
        doc = resolve_partial_names("d1", "John Smith arrived. Smith spoke.")
        assert doc.text == "John Smith arrived. John Smith spoke."
        assert ("Smith", "John Smith") in doc.alias_map

    def test_nearest_preceding_name_wins_ties(self):
        doc = resolve_partial_names("d1", "John Smith met Jane Smith. Smith left.")
        assert doc.text == "John Smith met Jane Smith. Jane Smith left."

    def test_first_name_also_matches(self):
        doc = resolve_partial_names("d1", "John Smith arrived. John spoke.")
        assert doc.text == "John Smith arrived. John Smith spoke."

    def test_no_multi_token_mention_changes_nothing(self):
        text = "Smith spoke. Smith left."
        doc = resolve_partial_names("d1", text)
        assert doc.text == text
        assert doc.alias_map == []
        assert doc.entity_mentions == []

    def test_honorifics_dropped_in_rewrite(self):
        doc = resolve_partial_names("d1", "Dr. Jane Smith arrived. Mr. Smith spoke.")
        # wrong-honorific single token still matches the last token of the full name
        assert doc.text == "Dr. Jane Smith arrived. Jane Smith spoke."

    def test_matching_is_case_insensitive(self):
        doc = resolve_partial_names("d1", "JOHN SMITH arrived. Smith spoke.",
                                    person_mentions=[(0, 10), (20, 25)])
        assert doc.text == "JOHN SMITH arrived. JOHN SMITH spoke."

    def test_mentions_point_at_exact_occurrences(self):
        doc = resolve_partial_names("d1", "John Smith arrived. Smith spoke.")
        for m in doc.entity_mentions:
            assert doc.text[m.start:m.end] == m.full_name
            assert len(m.full_name.split()) >= 2

    def test_sentence_indices_recorded(self):
        doc = resolve_partial_names("d1", "John Smith arrived. Smith spoke.")
        assert [m.sentence_index for m in doc.entity_mentions] == [0, 1]

    def test_idempotent_on_own_output(self):
        text = ("Asha Rao and Vikram Patel met the press. Rao spoke first. "
                "Patel answered. Bhim waited.")
        once = resolve_partial_names("d1", text)
        twice = resolve_partial_names("d1", once.text)
        assert twice.text == once.text

    def test_alias_targets_occur_earlier(self):
        text = "Asha Rao spoke. Later Rao and Mohan Das left. Das nodded."
        doc = resolve_partial_names("d1", text)
        for alias, full in doc.alias_map:
            first_use = doc.text.index(full)
            assert first_use <= doc.text.rindex(full)
            assert full.lower().split()[0] == alias.lower() or \
                full.lower().split()[-1] == alias.lower()


NAMES = st.sampled_from(["Asha Rao", "Vikram Patel", "Mohan Das", "Lena Cruz"])


@settings(max_examples=60, deadline=None)
@given(st.lists(NAMES, min_size=1, max_size=4))
def test_property_idempotence(full_names):
    sentences = [f"{name} spoke to the press." for name in full_names]
    sentences += [f"{name.split()[-1]} nodded." for name in full_names]
    text = " ".join(sentences)
    once = resolve_partial_names("d", text)
    assert resolve_partial_names("d", once.text).text == once.text


class TestPersonTagger:
    def test_tags_name_runs(self):
        spans = tag_person_mentions("Arjun Patel met Priya Sharma in Mumbai.")
        surfaces = ["Arjun Patel met Priya Sharma in Mumbai."[s:e] for s, e in spans]
        assert "Arjun Patel" in surfaces
        assert "Priya Sharma" in surfaces

    def test_stopwords_and_pronouns_excluded(self):
        spans = tag_person_mentions("The minister spoke. He left. They cheered.")
        assert spans == []

    def test_honorific_attaches_to_name(self):
        text = "Mr. Patel spoke."
        spans = tag_person_mentions(text)
        assert [text[s:e] for s, e in spans] == ["Mr. Patel"]
