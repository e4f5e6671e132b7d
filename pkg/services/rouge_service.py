from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
from api.models.models import RougeMetric, RougeScore, TokenSequence
from config.resources import stemmer
from middleware.error_handler import ConfigError, EvaluationError
from utils.content_filters import ContentFilter

ALL_METRICS = (RougeMetric.R1, RougeMetric.R2, RougeMetric.RW12, RougeMetric.RSU4)


class RougeService:
    """ROUGE-1, ROUGE-2, ROUGE-W-1.2 and ROUGE-SU4 between a system and model summaries."""

    @staticmethod
    def tokenize(text: str, stem: bool = False) -> TokenSequence:
        """Lowercase, split on non-alphanumeric characters; Porter stemming only on request."""
        tokens = ContentFilter.tokenize(text)
        if stem:
            tokens = [stemmer.stem(t) for t in tokens]
        return TokenSequence(tokens=tuple(tokens))

    @staticmethod
    def _check_model(model: TokenSequence) -> None:
        if len(model) == 0:
            raise EvaluationError("model summary is empty")

    @staticmethod
    def _ngrams(tokens: Sequence[str], n: int) -> Counter:
        return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))

    @staticmethod
    def _skip_units(tokens: Sequence[str], max_skip: int) -> Counter:
        """Unigrams plus ordered pairs (t_i, t_j) with i < j <= i + max_skip + 1."""
        units = Counter((t,) for t in tokens)
        for i, first in enumerate(tokens):
            for j in range(i + 1, min(len(tokens), i + max_skip + 2)):
                units[(first, tokens[j])] += 1
        return units

    @staticmethod
    def _overlap_score(metric: RougeMetric, system_units: Counter, model_units: Counter) -> RougeScore:
        # clipped match count
        matches = sum((system_units & model_units).values())
        model_total = sum(model_units.values())
        system_total = sum(system_units.values())
        recall = matches / model_total if model_total else 0.0
        precision = matches / system_total if system_total else 0.0
        return RougeScore.from_recall_precision(metric, recall, precision)

    @staticmethod
    def rouge_n(system: TokenSequence, model: TokenSequence, n: int) -> RougeScore:
        if n not in (1, 2):
            raise EvaluationError(f"ROUGE-N supports n in {{1, 2}}, got {n}")
        RougeService._check_model(model)
        metric = RougeMetric.R1 if n == 1 else RougeMetric.R2
        return RougeService._overlap_score(
            metric,
            RougeService._ngrams(system.tokens, n),
            RougeService._ngrams(model.tokens, n)
        )

    @staticmethod
    def weighted_lcs(model: Sequence[str], system: Sequence[str], weight: float) -> float:
        """
        Weighted longest common subsequence with f(k) = k ** weight.

        A match that extends a run of k consecutive matches adds
        f(k + 1) - f(k), so unbroken runs score more than scattered ones.
        """
        m, n = len(model), len(system)
        c = [[0.0] * (n + 1) for _ in range(m + 1)]
        w = [[0] * (n + 1) for _ in range(m + 1)]
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                if model[i - 1] == system[j - 1]:
                    k = w[i - 1][j - 1]
                    c[i][j] = c[i - 1][j - 1] + (k + 1) ** weight - k ** weight
                    w[i][j] = k + 1
                elif c[i - 1][j] > c[i][j - 1]:
                    c[i][j] = c[i - 1][j]
                else:
                    c[i][j] = c[i][j - 1]
        return c[m][n]

    @staticmethod
    def rouge_w(system: TokenSequence, model: TokenSequence, weight: float = 1.2) -> RougeScore:
        """recall = f^-1(WLCS / f(m)), precision = f^-1(WLCS / f(s)), with f^-1(x) = x ** (1 / weight)."""
        if weight <= 1:
            raise EvaluationError(f"ROUGE-W weight must exceed 1, got {weight}")
        RougeService._check_model(model)
        wlcs = RougeService.weighted_lcs(model.tokens, system.tokens, weight)
        # clamp float drift on identical inputs
        recall = min(1.0, (wlcs / len(model) ** weight) ** (1 / weight))
        precision = min(1.0, (wlcs / len(system) ** weight) ** (1 / weight)) if len(system) else 0.0
        return RougeScore.from_recall_precision(RougeMetric.RW12, recall, precision)

    @staticmethod
    def rouge_su(system: TokenSequence, model: TokenSequence, max_skip: int = 4) -> RougeScore:
        if max_skip < 0:
            raise EvaluationError(f"skip distance must be non-negative, got {max_skip}")
        RougeService._check_model(model)
        return RougeService._overlap_score(
            RougeMetric.RSU4,
            RougeService._skip_units(system.tokens, max_skip),
            RougeService._skip_units(model.tokens, max_skip)
        )

    @staticmethod
    def score_pair(system: TokenSequence, model: TokenSequence, metric: RougeMetric) -> RougeScore:
        if metric == RougeMetric.R1:
            return RougeService.rouge_n(system, model, 1)
        if metric == RougeMetric.R2:
            return RougeService.rouge_n(system, model, 2)
        if metric == RougeMetric.RW12:
            return RougeService.rouge_w(system, model, 1.2)
        if metric == RougeMetric.RSU4:
            return RougeService.rouge_su(system, model, 4)
        raise EvaluationError(f"unknown metric {metric}")

    @staticmethod
    def evaluate_summary(
        system_text: str,
        model_texts: Sequence[str],
        metrics: Optional[Iterable[RougeMetric]] = None,
        stem: bool = False
    ) -> Dict[RougeMetric, RougeScore]:
        """
        Score a system summary against one or more model summaries.

        With several models each metric reports the pairwise score of the
        model giving the highest recall.
        """
        if not model_texts:
            raise EvaluationError("at least one model summary is required")
        metrics = tuple(metrics) if metrics else ALL_METRICS
        system = RougeService.tokenize(system_text, stem)
        models = [RougeService.tokenize(text, stem) for text in model_texts]
        for position, model in enumerate(models):
            if len(model) == 0:
                raise EvaluationError(f"model summary {position} is empty")

        results = {}
        for metric in metrics:
            pairwise = [RougeService.score_pair(system, model, metric) for model in models]
            results[metric] = max(pairwise, key=lambda score: score.recall)
        return results

    @staticmethod
    def parse_metrics(text: Optional[str]) -> Tuple[RougeMetric, ...]:
        """Parse "R1,R2" style lists; case-insensitive, "-" and "." ignored (so "R-W-1.2" works)."""
        if not text:
            return ALL_METRICS
        aliases = {m.value.lower(): m for m in RougeMetric}
        metrics: List[RougeMetric] = []
        for part in text.split(","):
            key = part.strip().lower().replace("-", "").replace(".", "")
            if not key:
                continue
            if key not in aliases:
                raise ConfigError(f"unknown metric {part.strip()!r}; choose from {', '.join(aliases)}")
            if aliases[key] not in metrics:
                metrics.append(aliases[key])
        return tuple(metrics)
