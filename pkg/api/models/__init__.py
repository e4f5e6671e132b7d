# api/models/__init__.py
from api.models.models import (
    SourceFormat,
    BlockKind,
    ItemMode,
    RougeMetric,
    BaselineKind,
    Block,
    StructuredInput,
    Sentence,
    Document,
    Concept,
    ConceptAnnotation,
    Item,
    Transaction,
    TransactionSet,
    SupportFraction,
    FrequentItemset,
    SentenceScore,
    SummaryResult,
    TokenSequence,
    RougeScore,
    CorpusEntry,
    PipelineRun
)

from api.models.run_config import (
    parse_rational,
    format_rational,
    MinerConfig,
    SummaryConfig,
    RunConfig,
    SweepSpec,
    RunConfigs
)
