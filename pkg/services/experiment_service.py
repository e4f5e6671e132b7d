from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union
import pandas as pd
from api.models.models import (
    BaselineKind,
    CorpusEntry,
    Document,
    ItemMode,
    PipelineRun,
    RougeMetric,
    SummaryResult,
    TransactionSet
)
from api.models.run_config import RunConfig, RunConfigs, SweepSpec, SummaryConfig, format_rational
from config.logging_config import logger
from config.settings import settings
from middleware.error_handler import AnnotationError, ConfigError, DocumentParseError, EvaluationError, ItemsumError
from services.annotation_service import AnnotationService
from services.document_service import DocumentService
from services.miner_service import MinerService
from services.rouge_service import ALL_METRICS, RougeService
from services.summarizer_service import SummarizerService
from services.transaction_service import TransactionService
from utils.content_filters import ContentFilter
from utils.io_utils import IOUtils

T = TypeVar("T")
R = TypeVar("R")

SUMMARY_SUFFIX = ".summary.txt"
RESULT_SUFFIX = ".result.json"
ITEMSETS_SUFFIX = ".itemsets.json"
TRANSACTIONS_SUFFIX = ".transactions.json"
MEAN_ROW = "mean"
ITEMSET_METHOD = "itemset"
METHODS = (ITEMSET_METHOD,) + tuple(kind.value for kind in BaselineKind)
# Methods a corpus comparison runs: the two item modes, then the baselines
COMPARE_METHODS = tuple(mode.value for mode in ItemMode) + tuple(kind.value for kind in BaselineKind)
SWEEP_SIZES = (1, 2, 3, 4)


def file_id(path: Path) -> str:
    """Everything before the first dot: d1.txt, d1.2.txt and d1.summary.txt all belong to d1."""
    return path.name.split('.')[0]


def summary_prefix(doc_id: str, method: str = ITEMSET_METHOD) -> str:
    """Output file prefix: `<id>` for the itemset summarizer, `<id>.<method>` for a baseline."""
    return doc_id if method == ITEMSET_METHOD else f"{doc_id}.{method}"


class ExperimentService:
    """Runs the summarizer over files and corpora and writes the result artifacts."""

    # Pipeline

    @staticmethod
    def build_transactions(
        doc: Document,
        config: RunConfig,
        annotation_path: Optional[Union[str, Path]] = None
    ) -> TransactionSet:
        if config.mode == ItemMode.CONCEPT:
            if annotation_path is None:
                raise AnnotationError(f"concept mode needs an annotation file for {doc.id} (--annotations)")
            annotations = AnnotationService.load_concept_annotations(annotation_path)
            blocked = AnnotationService.load_blocked_types(config.blocked_types)
            annotations = AnnotationService.filter_semantic_types(annotations, blocked)
            return TransactionService.build_transactions(doc, ItemMode.CONCEPT, annotations=annotations)
        stopwords = AnnotationService.load_stopwords(config.stopwords)
        return TransactionService.build_transactions(doc, ItemMode.TERM, stopwords=stopwords)

    @staticmethod
    def run_pipeline(
        config: RunConfig,
        document_path: Optional[Union[str, Path]] = None,
        annotation_path: Optional[Union[str, Path]] = None
    ) -> PipelineRun:
        """parse -> annotate -> mine -> select for one document."""
        document_path = document_path or config.document
        if not document_path:
            raise DocumentParseError("no document given")
        annotation_path = annotation_path or config.annotations

        doc = DocumentService.load_document(document_path, config.source_format)
        ts = ExperimentService.build_transactions(doc, config, annotation_path)
        itemsets = MinerService.apriori(ts, config.miner_config())
        result = SummarizerService.summarize(doc, ts, itemsets, config.summary_config(), config.to_dict())
        return PipelineRun(document=doc, transactions=ts, itemsets=tuple(itemsets), result=result)

    @staticmethod
    def summarize(config: RunConfig, dump_transactions: bool = False) -> PipelineRun:
        """Run one document and write its outputs; `dump_transactions` adds `<id>.transactions.json`."""
        run = ExperimentService.run_pipeline(config)
        ExperimentService.write_outputs(run.result, config.out, run)
        if dump_transactions:
            IOUtils.write_text(
                Path(config.out) / f"{run.result.doc_id}{TRANSACTIONS_SUFFIX}",
                TransactionService.dumps(run.transactions)
            )
        return run

    @staticmethod
    def baseline(config: RunConfig, kind: BaselineKind) -> SummaryResult:
        if not config.document:
            raise DocumentParseError("no document given")
        doc = DocumentService.load_document(config.document, config.source_format)
        result = ExperimentService.baseline_result(doc, config, kind)
        logger.info(f"{kind.value} baseline picked {list(result.selected_indices)} from {doc.id}")
        ExperimentService.write_outputs(result, config.out)
        return result

    @staticmethod
    def baseline_result(doc: Document, config: RunConfig, kind: BaselineKind) -> SummaryResult:
        n = SummarizerService.compression_to_count(config.compression_rate, doc.size)
        if kind == BaselineKind.LEAD:
            return SummarizerService.lead_baseline(doc, n, config.to_dict())
        return SummarizerService.random_baseline(doc, n, config.seed, config.to_dict())

    @staticmethod
    def write_outputs(result: SummaryResult, out_dir: Union[str, Path], run: Optional[PipelineRun] = None) -> List[Path]:
        """
        Write `<id>.summary.txt` and `<id>.result.json`, plus `<id>.itemsets.json`
        when the mining run is given. Baselines use `<id>.<method>.` as prefix.
        """
        out = Path(out_dir)
        prefix = summary_prefix(result.doc_id, result.method)
        paths = [
            IOUtils.write_text(out / f"{prefix}{SUMMARY_SUFFIX}", result.rendered_text),
            IOUtils.write_json(out / f"{prefix}{RESULT_SUFFIX}", result.to_dict())
        ]
        if run is not None:
            paths.append(IOUtils.write_json(out / f"{prefix}{ITEMSETS_SUFFIX}", {
                "config": result.config_echo,
                "itemsets": MinerService.to_dicts(run.itemsets, run.transactions)
            }))
        return paths

    # Corpora

    @staticmethod
    def _group_by_id(paths: Sequence[Path]) -> Dict[str, List[Path]]:
        grouped: Dict[str, List[Path]] = {}
        for path in sorted(paths):
            grouped.setdefault(file_id(path), []).append(path)
        return grouped

    @staticmethod
    def _visible_files(directory: Path, pattern: str = "*") -> List[Path]:
        return sorted(p for p in directory.glob(pattern) if p.is_file() and not p.name.startswith('.'))

    @staticmethod
    def load_corpus(corpus_dir: Union[str, Path]) -> List[CorpusEntry]:
        """
        Read a corpus laid out as documents/, annotations/ and models/.

        Entries come back sorted by document id; annotations and model
        summaries are attached when present and checked by the caller.
        """
        root = Path(corpus_dir)
        documents_dir = root / "documents"
        if not documents_dir.is_dir():
            raise DocumentParseError(f"corpus {root} has no documents/ directory")

        models_dir = root / "models"
        models = ExperimentService._group_by_id(
            ExperimentService._visible_files(models_dir, "*.txt") if models_dir.is_dir() else []
        )

        entries = []
        seen = set()
        for path in ExperimentService._visible_files(documents_dir):
            doc_id = file_id(path)
            if doc_id in seen:
                raise DocumentParseError(f"corpus {root} has several documents with id {doc_id}")
            seen.add(doc_id)
            annotation = root / "annotations" / f"{doc_id}.jsonl"
            entries.append(CorpusEntry(
                doc_id=doc_id,
                document_path=path,
                annotation_path=annotation if annotation.is_file() else None,
                model_paths=tuple(models.get(doc_id, ()))
            ))
        if not entries:
            raise DocumentParseError(f"corpus {root} has no documents")

        orphans = sorted(set(models) - seen)
        if orphans:
            logger.warning(f"Model summaries without a document: {', '.join(orphans)}")
        logger.info(f"Loaded corpus {root}: {len(entries)} documents")
        return entries

    @staticmethod
    def read_models(doc_id: str, paths: Sequence[Path]) -> List[str]:
        if not paths:
            raise EvaluationError(f"no model summary for document {doc_id}")
        texts = []
        for path in paths:
            text = IOUtils.read_text(path, EvaluationError, "model summary")
            if not ContentFilter.tokenize(text):
                raise EvaluationError(f"model summary {path.name} for document {doc_id} is empty")
            texts.append(text)
        return texts

    @staticmethod
    def system_summaries(system_root: Path, method: str = ITEMSET_METHOD) -> List[Path]:
        """
        The `*.summary.txt` files written for `method`, so itemset and baseline
        summaries can share a directory. A directory without any
        `*.summary.txt` falls back to all of its `*.txt` files.
        """
        summaries = ExperimentService._visible_files(system_root, f"*{SUMMARY_SUFFIX}")
        if not summaries:
            return ExperimentService._visible_files(system_root, "*.txt")
        return [
            path for path in summaries
            if path.name[:-len(SUMMARY_SUFFIX)] == summary_prefix(file_id(path), method)
        ]

    @staticmethod
    def map_ordered(fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """Apply `fn` on Settings.WORKERS threads; results keep the order of `items`."""
        if settings.WORKERS <= 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=settings.WORKERS) as executor:
            return list(executor.map(fn, items))

    # Evaluation

    @staticmethod
    def evaluate(
        system_dir: Union[str, Path],
        models_dir: Union[str, Path],
        metrics: Optional[Sequence[RougeMetric]] = None,
        stem: bool = False,
        out_dir: Optional[Union[str, Path]] = None,
        config_echo: Optional[Dict[str, Any]] = None,
        method: str = ITEMSET_METHOD
    ) -> pd.DataFrame:
        """
        Score every system summary against the model summaries sharing its id.

        System summaries are picked by `system_summaries`. Returns one recall
        row per document followed by the mean row.

        Raises:
            EvaluationError: unpaired ids on either side, duplicate system
                summaries for an id, or an empty model summary.
        """
        metrics = tuple(metrics) if metrics else ALL_METRICS
        system_root, models_root = Path(system_dir), Path(models_dir)
        for directory in (system_root, models_root):
            if not directory.is_dir():
                raise EvaluationError(f"directory not found: {directory}")

        systems = ExperimentService._group_by_id(ExperimentService.system_summaries(system_root, method))
        models = ExperimentService._group_by_id(ExperimentService._visible_files(models_root, "*.txt"))

        if not systems:
            raise EvaluationError(f"no summaries found in {system_root}")
        duplicated = sorted(doc_id for doc_id, paths in systems.items() if len(paths) > 1)
        if duplicated:
            raise EvaluationError(f"several system summaries for {', '.join(duplicated)}")
        unpaired = sorted(set(systems) ^ set(models))
        if unpaired:
            raise EvaluationError(f"unpaired ids: {', '.join(unpaired)}")

        doc_ids = sorted(systems)

        def score(doc_id: str) -> Dict[RougeMetric, Any]:
            try:
                system_text = IOUtils.read_text(systems[doc_id][0], EvaluationError, "system summary")
                model_texts = ExperimentService.read_models(doc_id, models[doc_id])
                return RougeService.evaluate_summary(system_text, model_texts, metrics, stem)
            except ItemsumError as e:
                raise e.for_document(doc_id)

        scored = ExperimentService.map_ordered(score, doc_ids)
        table = pd.DataFrame(
            [{"doc_id": doc_id, **{m.value: s[m].recall for m in metrics}} for doc_id, s in zip(doc_ids, scored)],
            columns=["doc_id"] + [m.value for m in metrics]
        )
        mean = table[[m.value for m in metrics]].mean()
        table = pd.concat([table, pd.DataFrame([{"doc_id": MEAN_ROW, **mean.to_dict()}])], ignore_index=True)
        logger.info(f"Evaluated {len(doc_ids)} documents: " + ", ".join(f"{m.value} {mean[m.value]:.4f}" for m in metrics))

        if out_dir is not None:
            out = Path(out_dir)
            IOUtils.write_json(out / "rouge_report.json", {
                "config": config_echo or {},
                "method": method,
                "metrics": [m.value for m in metrics],
                "documents": [
                    {
                        "doc_id": doc_id,
                        "models": len(models[doc_id]),
                        "scores": {m.value: s[m].to_dict() for m in metrics}
                    }
                    for doc_id, s in zip(doc_ids, scored)
                ],
                "mean": {
                    m.value: {
                        field: sum(getattr(s[m], field) for s in scored) / len(scored)
                        for field in ("recall", "precision", "f1")
                    }
                    for m in metrics
                }
            })
            IOUtils.write_table(out / "rouge_report.csv", table)
        return table

    # Threshold sweep

    @staticmethod
    def sweep_document(entry: CorpusEntry, sweep_spec: SweepSpec, config: RunConfig) -> List[Dict[str, Any]]:
        """
        One row per threshold for a single document.

        Mines once at the lowest threshold and filters for the others on
        exact support, which yields the same itemsets as mining again.
        """
        try:
            model_texts = ExperimentService.read_models(entry.doc_id, entry.model_paths)
            doc = DocumentService.load_document(entry.document_path, config.source_format)
            ts = ExperimentService.build_transactions(doc, config, entry.annotation_path)
            lowest = config.model_copy(update={"min_sup": sweep_spec.values[0]})
            mined = MinerService.apriori(ts, lowest.miner_config())

            rows = []
            for threshold in sweep_spec.values:
                itemsets = MinerService.filter_by_threshold(mined, threshold)
                result = SummarizerService.summarize(doc, ts, itemsets, SummaryConfig(
                    compression_rate=config.compression_rate,
                    mode=config.mode,
                    min_sup=threshold
                ))
                scores = RougeService.evaluate_summary(result.rendered_text, model_texts, sweep_spec.metrics, config.stem_rouge)
                counts = MinerService.count_by_size(itemsets)
                rows.append({
                    "doc_id": entry.doc_id,
                    "min_sup": format_rational(threshold),
                    **{m.value: scores[m].recall for m in sweep_spec.metrics},
                    "all": len(itemsets),
                    **{f"k{k}": counts.get(k, 0) for k in SWEEP_SIZES}
                })
            return rows
        except ItemsumError as e:
            raise e.for_document(entry.doc_id)

    @staticmethod
    def sweep(
        corpus_dir: Union[str, Path],
        sweep_spec: SweepSpec,
        config: RunConfig,
        out_dir: Optional[Union[str, Path]] = None
    ) -> pd.DataFrame:
        """
        Mean ROUGE recall and mean frequent-itemset counts per min_sup threshold.

        Documents run independently (see map_ordered); the first failing
        document aborts the sweep with its id.
        """
        entries = ExperimentService.load_corpus(corpus_dir)
        logger.info(
            f"Sweeping {len(sweep_spec.values)} thresholds from {sweep_spec.values[0]} to {sweep_spec.values[-1]} "
            f"over {len(entries)} documents"
        )
        per_document = ExperimentService.map_ordered(
            lambda entry: ExperimentService.sweep_document(entry, sweep_spec, config), entries
        )
        rows = pd.DataFrame([row for rows in per_document for row in rows])
        value_columns = [m.value for m in sweep_spec.metrics] + ["all"] + [f"k{k}" for k in SWEEP_SIZES]
        table = rows.groupby("min_sup", sort=False)[value_columns].mean().reset_index()
        table.insert(1, "min_sup_value", [float(v) for v in sweep_spec.values])
        table.insert(2, "documents", len(entries))

        if out_dir is not None:
            out = Path(out_dir)
            IOUtils.write_json(out / "sweep.json", {
                "config": config.to_dict(),
                "thresholds": [format_rational(v) for v in sweep_spec.values],
                "metrics": [m.value for m in sweep_spec.metrics],
                "rows": table.to_dict(orient="records")
            })
            IOUtils.write_table(out / "sweep.csv", table)
        return table

    # Method comparison

    @staticmethod
    def parse_methods(text: Optional[str]) -> Tuple[str, ...]:
        """Comma list of compared methods in their canonical order; all of them when empty."""
        if not text:
            return COMPARE_METHODS
        names = {part.strip().lower() for part in text.split(",") if part.strip()}
        unknown = sorted(names - set(COMPARE_METHODS))
        if unknown:
            raise ConfigError(f"unknown method(s) {', '.join(unknown)}; choose from {', '.join(COMPARE_METHODS)}")
        return tuple(method for method in COMPARE_METHODS if method in names)

    @staticmethod
    def method_config(config: RunConfig, method: str) -> RunConfig:
        """The run config of one compared method; the item mode not configured runs at its default min_sup."""
        if method not in (mode.value for mode in ItemMode):
            return config
        mode = ItemMode(method)
        if mode == config.mode:
            return config
        return config.model_copy(update={"mode": mode, "min_sup": RunConfigs.default_min_sup(mode)})

    @staticmethod
    def summarize_entry(entry: CorpusEntry, config: RunConfig, method: str) -> Tuple[SummaryResult, Optional[PipelineRun]]:
        if method in (kind.value for kind in BaselineKind):
            doc = DocumentService.load_document(entry.document_path, config.source_format)
            return ExperimentService.baseline_result(doc, config, BaselineKind(method)), None
        run = ExperimentService.run_pipeline(config, entry.document_path, entry.annotation_path)
        return run.result, run

    @staticmethod
    def compare(
        corpus_dir: Union[str, Path],
        config: RunConfig,
        methods: Sequence[str] = COMPARE_METHODS,
        metrics: Optional[Sequence[RougeMetric]] = None,
        out_dir: Optional[Union[str, Path]] = None
    ) -> pd.DataFrame:
        """
        Mean ROUGE recall of each method over a corpus, one row per method.

        Summaries of a method are written under `<out>/<method>/` with the same
        names `summarize` and `baseline` use, so each directory can be passed
        to `evaluate` later.
        """
        metrics = tuple(metrics) if metrics else ALL_METRICS
        entries = ExperimentService.load_corpus(corpus_dir)
        rows = []
        for method in methods:
            method_config = ExperimentService.method_config(config, method)

            def run(entry: CorpusEntry) -> Dict[RougeMetric, Any]:
                try:
                    model_texts = ExperimentService.read_models(entry.doc_id, entry.model_paths)
                    result, pipeline = ExperimentService.summarize_entry(entry, method_config, method)
                    if out_dir is not None:
                        ExperimentService.write_outputs(result, Path(out_dir) / method, pipeline)
                    return RougeService.evaluate_summary(result.rendered_text, model_texts, metrics, config.stem_rouge)
                except ItemsumError as e:
                    raise e.for_document(entry.doc_id)

            scored = ExperimentService.map_ordered(run, entries)
            row: Dict[str, Any] = {"method": method, "documents": len(entries)}
            for m in metrics:
                row[m.value] = sum(s[m].recall for s in scored) / len(scored)
            logger.info(f"{method}: " + ", ".join(f"{m.value} {row[m.value]:.4f}" for m in metrics))
            rows.append(row)

        table = pd.DataFrame(rows, columns=["method", "documents"] + [m.value for m in metrics])
        if out_dir is not None:
            out = Path(out_dir)
            IOUtils.write_json(out / "compare.json", {
                "config": config.to_dict(),
                "methods": list(methods),
                "metrics": [m.value for m in metrics],
                "rows": table.to_dict(orient="records")
            })
            IOUtils.write_table(out / "compare.csv", table)
        return table

    # Corpus statistics

    @staticmethod
    def corpus_stats(
        corpus_dir: Union[str, Path],
        config: RunConfig,
        out_dir: Optional[Union[str, Path]] = None
    ) -> pd.DataFrame:
        """Minimum, maximum and average sentence and word counts of full texts and model summaries."""
        entries = ExperimentService.load_corpus(corpus_dir)

        def measure(entry: CorpusEntry) -> Tuple[Tuple[int, int], List[Tuple[int, int]]]:
            try:
                doc = DocumentService.load_document(entry.document_path, config.source_format)
                models = []
                for path in entry.model_paths:
                    sentences = DocumentService.segment_sentences(
                        IOUtils.read_text(path, DocumentParseError, "model summary")
                    )
                    models.append((len(sentences), sum(s.word_count for s in sentences)))
                return (doc.size, doc.word_count), models
            except ItemsumError as e:
                raise e.for_document(entry.doc_id)

        measured = ExperimentService.map_ordered(measure, entries)
        documents = [document for document, _ in measured]
        models = [model for _, per_entry in measured for model in per_entry]

        def describe(name: str, counts: List[Tuple[int, int]]) -> Dict[str, Any]:
            frame = pd.DataFrame(counts, columns=["sentences", "words"])
            row: Dict[str, Any] = {"collection": name, "count": len(frame)}
            for column in ("sentences", "words"):
                row[f"{column}_min"] = frame[column].min() if len(frame) else 0
                row[f"{column}_max"] = frame[column].max() if len(frame) else 0
                row[f"{column}_avg"] = float(frame[column].mean()) if len(frame) else 0.0
            return row

        table = pd.DataFrame([describe("documents", documents), describe("models", models)])
        logger.info(f"Corpus statistics over {len(documents)} documents and {len(models)} model summaries")
        if out_dir is not None:
            IOUtils.write_table(Path(out_dir) / "corpus_stats.csv", table)
        return table
