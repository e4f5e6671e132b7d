import json
import random
from pathlib import Path
from typing import Callable, List
import pytest
from api.models.models import Document, SourceFormat, TransactionSet
from services.document_service import DocumentService
from tests.oracles import make_transactions

VOCABULARY = [
    "gene", "protein", "neuron", "synapse", "cortex", "receptor", "mutation",
    "variant", "pathway", "signal", "cell", "tissue", "brain", "disorder",
    "therapy", "marker", "genome", "deletion", "expression", "risk"
]


@pytest.fixture
def sample_85() -> TransactionSet:
    """
    85 transactions: `proteins` in 7, the three disorders together in 9,
    `deletion_mutation` with `nrxn1_gene` in 6, the rest empty.
    """
    item_sets: List[set] = []
    item_sets += [{"autistic_disorder", "bipolar_disorder", "schizophrenia"}] * 9
    item_sets += [{"deletion_mutation", "nrxn1_gene"}] * 6
    item_sets += [{"proteins"}] * 7
    item_sets += [set()] * (85 - len(item_sets))
    return make_transactions(item_sets)


@pytest.fixture
def layered_32() -> TransactionSet:
    """
    40 transactions giving, at min_sup 1/20, 25 frequent items, 6 frequent
    pairs and one frequent triple.
    """
    items = [f"i{n:02d}" for n in range(25)]
    item_sets: List[set] = []
    item_sets += [{items[0], items[1], items[2]}] * 2
    for a, b in ((3, 4), (5, 6), (7, 8)):
        item_sets += [{items[a], items[b]}] * 2
    for item in items[9:]:
        item_sets += [{item}] * 2
    return make_transactions(item_sets)


@pytest.fixture
def abc_transactions() -> TransactionSet:
    return make_transactions([{"a", "b", "c"}, {"a", "b"}, {"a", "c"}, {"b", "c"}])


@pytest.fixture
def abc_document() -> Document:
    """Four sentences of 4, 5, 3 and 5 words, paired with `abc_transactions`."""
    text = "\n".join([
        "Alpha beta gamma delta.",
        "One two three four five.",
        "Short one here.",
        "Another fairly long sentence here."
    ])
    return DocumentService.parse_document(text.encode("utf-8"), SourceFormat.PRE_SEGMENTED, doc_id="abc")


@pytest.fixture
def concept_files(tmp_path: Path):
    """A plain-text document with concept annotations for three of its four sentences."""
    document = tmp_path / "d1.txt"
    document.write_text(
        "Autism is a developmental disorder. Genome studies found risk genes. "
        "The disorder shares genes with schizophrenia. Further work is planned.",
        encoding="utf-8"
    )
    concepts = {
        0: [("C0004352", "Autistic Disorder", "Mental or Behavioral Dysfunction")],
        1: [("C0017428", "Genome", "Gene or Genome"), ("C0017337", "Genes", "Gene or Genome")],
        2: [("C0004352", "Autistic Disorder", "Mental or Behavioral Dysfunction"),
            ("C0017337", "Genes", "Gene or Genome"),
            ("C0036341", "Schizophrenia", "Mental or Behavioral Dysfunction"),
            ("C1517331", "Further", "Spatial Concept")]
    }
    annotations = tmp_path / "d1.jsonl"
    annotations.write_text("".join(
        json.dumps({
            "sentence_index": index,
            "concepts": [
                {"concept_id": cid, "preferred_name": name, "semantic_type": semantic_type}
                for cid, name, semantic_type in entries
            ]
        }) + "\n"
        for index, entries in concepts.items()
    ), encoding="utf-8")
    return document, annotations


def synthetic_sentence(generator: random.Random, extra: str = "") -> str:
    words = generator.sample(VOCABULARY, 5) + ([extra] if extra else [])
    return " ".join(words).capitalize() + "."


@pytest.fixture
def make_corpus(tmp_path: Path) -> Callable[..., Path]:
    """
    Build a term-mode corpus of `documents` plain-text documents with
    `sentences` sentences each and one model summary per document. Every
    document carries one word that appears in a single sentence only.
    """
    def build(documents: int = 10, sentences: int = 12, name: str = "corpus") -> Path:
        root = tmp_path / name
        (root / "documents").mkdir(parents=True)
        (root / "models").mkdir()
        for d in range(documents):
            generator = random.Random(d)
            lines = [
                synthetic_sentence(generator, extra=f"rareword{d}" if s == 0 else "")
                for s in range(sentences)
            ]
            (root / "documents" / f"doc{d:02d}.txt").write_text(" ".join(lines), encoding="utf-8")
            (root / "models" / f"doc{d:02d}.txt").write_text(" ".join(lines[:3]), encoding="utf-8")
        return root
    return build
