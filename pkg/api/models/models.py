from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional, Dict, Any, Tuple, FrozenSet
from pydantic import BaseModel, ConfigDict, Field, model_validator

class SourceFormat(Enum):
    PLAIN = "plain"
    STRUCTURED_JSON = "structured-json"
    PRE_SEGMENTED = "pre-segmented"

class BlockKind(Enum):
    PROSE = "prose"
    FIGURE = "figure"
    TABLE = "table"

class ItemMode(Enum):
    CONCEPT = "concept"
    TERM = "term"

class RougeMetric(Enum):
    R1 = "R1"
    R2 = "R2"
    RW12 = "RW12"
    RSU4 = "RSU4"

class BaselineKind(Enum):
    LEAD = "lead"
    RANDOM = "random"


# Structured input

class Block(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: BlockKind = BlockKind.PROSE
    name: Optional[str] = None
    text: str

class StructuredInput(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    title: Optional[str] = None
    blocks: Tuple[Block, ...]


# Documents

class Sentence(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0)
    text: str
    char_span: Tuple[int, int]
    word_count: int = Field(gt=0)

    @model_validator(mode="after")
    def _check_text(self) -> "Sentence":
        if not self.text.strip():
            raise ValueError("sentence text is empty")
        if self.word_count != len(self.text.split()):
            raise ValueError(f"word_count {self.word_count} does not match text of sentence {self.index}")
        start, end = self.char_span
        if start < 0 or end < start:
            raise ValueError(f"invalid char_span {self.char_span} for sentence {self.index}")
        return self

    @classmethod
    def from_text(cls, index: int, text: str, start: int) -> "Sentence":
        return cls(
            index=index,
            text=text,
            char_span=(start, start + len(text)),
            word_count=len(text.split())
        )

class Document(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    title: Optional[str] = None
    sentences: Tuple[Sentence, ...]
    source_format: SourceFormat

    @model_validator(mode="after")
    def _check_sentences(self) -> "Document":
        previous_end = -1
        for position, sentence in enumerate(self.sentences):
            if sentence.index != position:
                raise ValueError(f"sentence indices must be contiguous, got {sentence.index} at position {position}")
            if sentence.char_span[0] < previous_end:
                raise ValueError(f"char_span of sentence {position} overlaps the previous sentence")
            previous_end = sentence.char_span[1]
        return self

    @property
    def size(self) -> int:
        return len(self.sentences)

    @property
    def word_count(self) -> int:
        return sum(s.word_count for s in self.sentences)


# Annotations and items

class Concept(BaseModel):
    model_config = ConfigDict(frozen=True)

    concept_id: str = Field(min_length=1)
    preferred_name: str
    semantic_type: str

class ConceptAnnotation(BaseModel):
    model_config = ConfigDict(frozen=True)

    sentence_index: int = Field(ge=0)
    concepts: Tuple[Concept, ...] = ()

@dataclass(frozen=True)
class Item:
    """An item of a transaction. Equality and hashing use `key` only."""
    key: str
    display: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.key:
            raise ValueError("item key must be non-empty")


# Transactions

class Transaction(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0)
    items: FrozenSet[str] = frozenset()

class TransactionSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    transactions: Tuple[Transaction, ...]
    item_names: Dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_transactions(self) -> "TransactionSet":
        if not self.transactions:
            raise ValueError("a transaction set needs at least one transaction")
        for position, transaction in enumerate(self.transactions):
            if transaction.index != position:
                raise ValueError(f"transaction {transaction.index} found at position {position}")
        return self

    @property
    def total(self) -> int:
        return len(self.transactions)

    @property
    def item_universe(self) -> FrozenSet[str]:
        return frozenset().union(*(t.items for t in self.transactions))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "total": self.total,
            "transactions": [
                {"index": t.index, "items": sorted(t.items)}
                for t in self.transactions
            ]
        }


# Mining

@dataclass(frozen=True)
class SupportFraction:
    """Covered transactions over total transactions, compared exactly."""
    count: int
    total: int

    def __post_init__(self):
        if self.total <= 0:
            raise ValueError("support total must be positive")
        if not 0 <= self.count <= self.total:
            raise ValueError(f"support count {self.count} outside 0..{self.total}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.count, self.total)

    def meets(self, min_sup: Fraction) -> bool:
        # count/total >= p/q  <=>  count*q >= p*total
        return self.count * min_sup.denominator >= min_sup.numerator * self.total

@dataclass(frozen=True)
class FrequentItemset:
    items: Tuple[str, ...]
    support: SupportFraction

    def __post_init__(self):
        if not self.items:
            raise ValueError("a frequent itemset is non-empty")
        if tuple(sorted(set(self.items))) != self.items:
            raise ValueError("itemset items must be sorted and distinct")

    @property
    def size(self) -> int:
        return len(self.items)

    def covers(self, items: FrozenSet[str]) -> bool:
        return items.issuperset(self.items)

    def sort_key(self) -> Tuple[Fraction, Tuple[str, ...]]:
        return (-self.support.value, self.items)


# Summaries

@dataclass(frozen=True)
class SentenceScore:
    sentence_index: int
    score: Fraction
    covering_itemsets: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "index": self.sentence_index,
            "score_num": self.score.numerator,
            "score_den": self.score.denominator
        }

@dataclass(frozen=True)
class SummaryResult:
    doc_id: str
    selected_indices: Tuple[int, ...]
    rendered_text: str
    method: str = "itemset"
    scores: Tuple[SentenceScore, ...] = ()
    config_echo: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.selected_indices, self.selected_indices[1:])):
            raise ValueError("selected indices must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.selected_indices)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "doc_id": self.doc_id,
            "method": self.method,
            "selected": list(self.selected_indices),
            "N": self.size,
            "scores": [s.to_dict() for s in self.scores],
            "config": self.config_echo
        }


# Evaluation

class TokenSequence(BaseModel):
    model_config = ConfigDict(frozen=True)

    tokens: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)

@dataclass(frozen=True)
class RougeScore:
    metric: RougeMetric
    recall: float
    precision: float
    f1: float

    @classmethod
    def from_recall_precision(cls, metric: RougeMetric, recall: float, precision: float) -> "RougeScore":
        if recall + precision == 0:
            return cls(metric, recall, precision, 0.0)
        return cls(metric, recall, precision, 2 * recall * precision / (recall + precision))

    def to_dict(self) -> Dict[str, float]:
        return {
            "recall": self.recall,
            "precision": self.precision,
            "f1": self.f1
        }


# Corpus runs

@dataclass(frozen=True)
class CorpusEntry:
    doc_id: str
    document_path: Path
    annotation_path: Optional[Path] = None
    model_paths: Tuple[Path, ...] = ()

@dataclass(frozen=True)
class PipelineRun:
    document: Document
    transactions: TransactionSet
    itemsets: Tuple[FrequentItemset, ...]
    result: SummaryResult
