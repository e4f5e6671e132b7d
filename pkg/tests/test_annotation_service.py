import json
import pytest
from hypothesis import given, settings, strategies as st
from api.models.models import Concept, ConceptAnnotation, Item
from middleware.error_handler import AnnotationError
from services.annotation_service import AnnotationService
from utils.content_filters import ContentFilter


def concept(cid, name, semantic_type="Gene or Genome"):
    return Concept(concept_id=cid, preferred_name=name, semantic_type=semantic_type)


def write_lines(path, rows):
    path.write_text("".join(json.dumps(row) + "\n" for row in rows), encoding="utf-8")
    return path


def test_load_concept_annotations(tmp_path):
    path = write_lines(tmp_path / "a.jsonl", [{
        "sentence_index": 23,
        "concepts": [
            {"concept_id": "C0017428", "preferred_name": "Genome", "semantic_type": "Gene or Genome"},
            {"concept_id": "C1333627", "preferred_name": "Protein coding gene", "semantic_type": "Gene or Genome"},
            {"concept_id": "C1510586", "preferred_name": "Autism Spectrum Disorders",
             "semantic_type": "Mental or Behavioral Dysfunction"}
        ]
    }])
    annotations = AnnotationService.load_concept_annotations(path)
    assert len(annotations) == 1
    assert annotations[0].sentence_index == 23
    assert [c.concept_id for c in annotations[0].concepts] == ["C0017428", "C1333627", "C1510586"]
    assert len(AnnotationService.concept_items(23, annotations)) == 3


def test_empty_annotation_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("", encoding="utf-8")
    assert AnnotationService.load_concept_annotations(path) == []


def test_two_candidates_for_one_phrase_are_both_kept(tmp_path):
    path = write_lines(tmp_path / "a.jsonl", [{
        "sentence_index": 4,
        "concepts": [
            {"concept_id": "C0001", "preferred_name": "Cold", "semantic_type": "Disease or Syndrome"},
            {"concept_id": "C0002", "preferred_name": "Cold Temperature", "semantic_type": "Natural Phenomenon"}
        ]
    }])
    annotations = AnnotationService.load_concept_annotations(path)
    keys = {item.key for item in AnnotationService.concept_items(4, annotations)}
    assert keys == {"C0001", "C0002"}


def test_bad_line_names_its_line_number(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"sentence_index": 0, "concepts": []}\n{oops\n', encoding="utf-8")
    with pytest.raises(AnnotationError, match=":2:"):
        AnnotationService.load_concept_annotations(path)


def test_schema_violation(tmp_path):
    path = write_lines(tmp_path / "bad.jsonl", [{"sentence_index": -1, "concepts": []}])
    with pytest.raises(AnnotationError, match="schema"):
        AnnotationService.load_concept_annotations(path)


def test_missing_annotation_file(tmp_path):
    with pytest.raises(AnnotationError) as exc:
        AnnotationService.load_concept_annotations(tmp_path / "missing.jsonl")
    assert exc.value.stage == "annotate"


def test_broad_types_are_filtered_by_default():
    # concepts of the figure sentence that carry broad semantic types
    annotation = ConceptAnnotation(sentence_index=0, concepts=(
        concept("C1", "Widening", "Functional Concept"),
        concept("C2", "analysis aspect", "Qualitative Concept"),
        concept("C3", "Further", "Spatial Concept"),
        concept("C4", "Relationships", "Idea or Concept"),
        concept("C5", "Etiology aspects", "Intellectual Product"),
        concept("C6", "Autistic Disorder", "Mental or Behavioral Dysfunction")
    ))
    filtered = AnnotationService.filter_semantic_types([annotation])
    assert [c.preferred_name for c in filtered[0].concepts] == ["Autistic Disorder"]


def test_filter_is_case_insensitive():
    annotation = ConceptAnnotation(sentence_index=0, concepts=(concept("C1", "Further", "spatial concept"),))
    assert AnnotationService.filter_semantic_types([annotation], {"Spatial Concept"})[0].concepts == ()


def test_empty_blocked_set_is_identity():
    annotations = [ConceptAnnotation(sentence_index=0, concepts=(concept("C1", "Later", "Temporal Concept"),))]
    assert AnnotationService.filter_semantic_types(annotations, set()) == annotations


def test_fully_blocked_annotation_is_kept_empty():
    annotations = [ConceptAnnotation(sentence_index=2, concepts=(concept("C1", "Later", "Temporal Concept"),))]
    filtered = AnnotationService.filter_semantic_types(annotations)
    assert len(filtered) == 1
    assert filtered[0].sentence_index == 2
    assert filtered[0].concepts == ()


def test_bundled_blocked_types():
    blocked = AnnotationService.load_blocked_types()
    assert len(blocked) == 9
    assert "mental process" in blocked


def test_concept_items_without_annotation():
    annotations = [ConceptAnnotation(sentence_index=1, concepts=(concept("C1", "Genome"),))]
    assert AnnotationService.concept_items(0, annotations) == set()


def test_items_compare_by_key_only():
    assert Item("C1", "Genome") == Item("C1", "genome (organism)")
    assert len({Item("C1", "a"), Item("C1", "b")}) == 1
    with pytest.raises(ValueError):
        Item("")


@pytest.mark.parametrize("text, expected", [
    ("the running studies", {"run", "studi"}),
    ("The the THE", set()),
    ("schizophrenia schizophrenia", {"schizophrenia"}),
])
def test_term_items(text, expected):
    items = AnnotationService.term_items(text, AnnotationService.load_stopwords())
    assert {item.key for item in items} == expected


def test_term_items_with_custom_stopwords():
    items = AnnotationService.term_items("genes and proteins", frozenset({"genes"}))
    assert {item.key for item in items} == {"and", "protein"}


def test_tokens_keep_non_ascii_letters():
    assert ContentFilter.tokenize("α-Synuclein café naïve_cells") == ["α", "synuclein", "café", "naïve", "cells"]


def test_term_items_do_not_split_accented_words():
    items = AnnotationService.term_items("α-synuclein café naïve", frozenset())
    assert {i.key for i in items} == {AnnotationService.stem(t) for t in ("α", "synuclein", "café", "naïve")}
    assert "na" not in {i.key for i in items}


# Words whose Porter stems are stable under a second pass ("synapse" is not: synaps -> synap)
STABLE_VOCABULARY = [
    "gene", "genes", "protein", "proteins", "neuron", "neurons", "cortex", "brain",
    "risk", "cell", "cells", "tissue", "signal", "signals", "marker", "markers"
]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(STABLE_VOCABULARY), min_size=1, max_size=12))
def test_term_items_are_a_fixed_point_of_the_term_pipeline(words):
    keys = {item.key for item in AnnotationService.term_items(" ".join(words), frozenset())}
    again = {item.key for item in AnnotationService.term_items(" ".join(sorted(keys)), frozenset())}
    assert again == keys
