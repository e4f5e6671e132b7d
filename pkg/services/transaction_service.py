from typing import Dict, FrozenSet, Iterable, Optional, Sequence
from api.models.models import ConceptAnnotation, Document, Item, ItemMode, Transaction, TransactionSet
from config.logging_config import logger
from middleware.error_handler import AnnotationError
from services.annotation_service import AnnotationService
from utils.io_utils import IOUtils

class TransactionService:
    @staticmethod
    def build_transactions(
        doc: Document,
        mode: ItemMode,
        annotations: Optional[Sequence[ConceptAnnotation]] = None,
        stopwords: Optional[FrozenSet[str]] = None
    ) -> TransactionSet:
        """
        One transaction per sentence, in document order.

        Sentences without items become empty transactions so that supports are
        always fractions of the full sentence count.

        Raises:
            AnnotationError: an annotation refers to a sentence the document
                does not have, or concept mode is requested without annotations.
        """
        names: Dict[str, str] = {}
        transactions = []

        if mode == ItemMode.CONCEPT:
            if annotations is None:
                raise AnnotationError("concept mode needs concept annotations")
            for annotation in annotations:
                if annotation.sentence_index >= doc.size:
                    raise AnnotationError(
                        f"annotation for sentence {annotation.sentence_index} but {doc.id} has {doc.size} sentences"
                    )
            grouped = AnnotationService.group_by_sentence(annotations)
            for sentence in doc.sentences:
                concepts = grouped.get(sentence.index, [])
                items = AnnotationService.concept_items(
                    sentence.index,
                    [ConceptAnnotation(sentence_index=sentence.index, concepts=tuple(concepts))]
                )
                transactions.append(TransactionService._transaction(sentence.index, items, names))
        elif mode == ItemMode.TERM:
            if stopwords is None:
                stopwords = AnnotationService.load_stopwords()
            for sentence in doc.sentences:
                items = AnnotationService.term_items(sentence, stopwords)
                transactions.append(TransactionService._transaction(sentence.index, items, names))
        else:
            raise AnnotationError(f"unsupported item mode: {mode}")

        ts = TransactionSet(transactions=tuple(transactions), item_names=names)
        empty = sum(1 for t in ts.transactions if not t.items)
        logger.info(
            f"Built {ts.total} transactions for {doc.id} ({mode.value} mode): "
            f"{len(ts.item_universe)} distinct items, {empty} empty transactions"
        )
        return ts

    @staticmethod
    def _transaction(index: int, items: Iterable[Item], names: Dict[str, str]) -> Transaction:
        items = list(items)
        for item in items:
            names.setdefault(item.key, item.display or item.key)
        return Transaction(index=index, items=frozenset(item.key for item in items))

    @staticmethod
    def dumps(ts: TransactionSet) -> str:
        """Debug dump used for cross-checks: {"total": int, "transactions": [{"index", "items"}]}."""
        return IOUtils.dumps(ts.to_dict())
