import random
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence
from api.models.models import Document, FrequentItemset, SentenceScore, SummaryResult, TransactionSet
from api.models.run_config import RationalInput, SummaryConfig, parse_rational
from config.logging_config import logger
from middleware.error_handler import SelectionError
from utils.number_format import round_half_up

class SummarizerService:
    @staticmethod
    def score_sentences(fi: Sequence[FrequentItemset], ts: TransactionSet) -> List[SentenceScore]:
        """
        Score every sentence by the summed support of the frequent itemsets
        covering its transaction. Exact rational arithmetic throughout.
        """
        scores = []
        for transaction in ts.transactions:
            score = Fraction(0)
            covering = 0
            for itemset in fi:
                if itemset.covers(transaction.items):
                    score += itemset.support.value
                    covering += 1
            scores.append(SentenceScore(sentence_index=transaction.index, score=score, covering_itemsets=covering))
        return scores

    @staticmethod
    def compression_to_count(rate: RationalInput, total_sentences: int) -> int:
        """N = max(1, round-half-up(rate * total_sentences)), never above the sentence count."""
        rate = parse_rational(rate)
        if not 0 < rate < 1:
            raise SelectionError(f"compression rate must lie in (0, 1), got {rate}")
        if total_sentences < 1:
            raise SelectionError("a document needs at least one sentence")
        return min(total_sentences, max(1, round_half_up(rate * total_sentences)))

    @staticmethod
    def select_sentences(scores: Sequence[SentenceScore], doc: Document, n: int) -> List[int]:
        """
        Top `n` sentences by descending score, ties to the shorter sentence
        (word count), then to the earlier one. Returned in document order.
        """
        if n < 1:
            raise SelectionError(f"sentence budget must be positive, got {n}")
        if n > doc.size:
            raise SelectionError(f"cannot select {n} sentences from {doc.id} with {doc.size} sentences")
        ranked = sorted(
            scores,
            key=lambda s: (-s.score, doc.sentences[s.sentence_index].word_count, s.sentence_index)
        )
        return sorted(s.sentence_index for s in ranked[:n])

    @staticmethod
    def render_summary(doc: Document, selected_indices: Sequence[int]) -> str:
        return "\n".join(doc.sentences[i].text for i in selected_indices)

    @staticmethod
    def summarize(
        doc: Document,
        ts: TransactionSet,
        fi: Sequence[FrequentItemset],
        config: SummaryConfig,
        config_echo: Optional[Dict[str, Any]] = None
    ) -> SummaryResult:
        scores = SummarizerService.score_sentences(fi, ts)
        n = SummarizerService.compression_to_count(config.compression_rate, doc.size)
        selected = SummarizerService.select_sentences(scores, doc, n)
        logger.info(f"Selected {n} of {doc.size} sentences from {doc.id}")
        return SummaryResult(
            doc_id=doc.id,
            selected_indices=tuple(selected),
            rendered_text=SummarizerService.render_summary(doc, selected),
            scores=tuple(scores),
            config_echo=config_echo or {}
        )

    @staticmethod
    def lead_baseline(doc: Document, n: int, config_echo: Optional[Dict[str, Any]] = None) -> SummaryResult:
        """The first `n` sentences."""
        if n > doc.size or n < 1:
            raise SelectionError(f"cannot take {n} leading sentences from {doc.id} with {doc.size} sentences")
        selected = tuple(range(n))
        return SummaryResult(
            doc_id=doc.id,
            method="lead",
            selected_indices=selected,
            rendered_text=SummarizerService.render_summary(doc, selected),
            config_echo=config_echo or {}
        )

    @staticmethod
    def random_baseline(doc: Document, n: int, seed: int, config_echo: Optional[Dict[str, Any]] = None) -> SummaryResult:
        """
        `n` distinct sentences drawn uniformly without replacement.

        Uses a private `random.Random(seed)` (Mersenne Twister) and its
        `sample`, so a seed always yields the same indices and no global
        generator state is touched.
        """
        if seed is None:
            raise SelectionError("the random baseline needs an explicit seed")
        if n > doc.size or n < 1:
            raise SelectionError(f"cannot draw {n} sentences from {doc.id} with {doc.size} sentences")
        generator = random.Random(seed)
        selected = tuple(sorted(generator.sample(range(doc.size), n)))
        return SummaryResult(
            doc_id=doc.id,
            method="random",
            selected_indices=selected,
            rendered_text=SummarizerService.render_summary(doc, selected),
            config_echo=config_echo or {}
        )
