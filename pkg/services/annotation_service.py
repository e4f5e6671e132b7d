import json
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Union
from pydantic import ValidationError
from api.models.models import Concept, ConceptAnnotation, Item, Sentence
from config.logging_config import logger
from config.resources import blocked_types_path, stemmer, stopwords_path
from middleware.error_handler import AnnotationError
from utils.content_filters import ContentFilter


@lru_cache(maxsize=None)
def _bundled_list(path: Path) -> FrozenSet[str]:
    return ContentFilter.load_word_list(path)


class AnnotationService:
    """Turns sentences into item sets: external concept annotations or stemmed terms."""

    @staticmethod
    def load_concept_annotations(path: Union[str, Path]) -> List[ConceptAnnotation]:
        """
        Load a JSON-lines concept annotation file.

        Every concept on a line is kept, including several candidate concepts
        for the same phrase. Blank lines are skipped.

        Raises:
            AnnotationError: missing or unreadable file, or a bad line (not
                UTF-8, invalid JSON, schema violation); the message names the
                line number.
        """
        annotations = []
        try:
            with open(path, 'rb') as f:
                for line_number, raw in enumerate(f, start=1):
                    try:
                        line = raw.decode('utf-8')
                    except UnicodeDecodeError as e:
                        raise AnnotationError(f"{path}:{line_number}: not valid UTF-8: {str(e)}")
                    if not line.strip():
                        continue
                    try:
                        annotation = ConceptAnnotation.model_validate(json.loads(line))
                    except json.JSONDecodeError as e:
                        raise AnnotationError(f"{path}:{line_number}: invalid JSON: {str(e)}")
                    except ValidationError as e:
                        raise AnnotationError(f"{path}:{line_number}: schema violation: {str(e)}")
                    if not annotation.concepts:
                        logger.warning(f"{path}:{line_number}: sentence {annotation.sentence_index} has no concepts")
                    annotations.append(annotation)
        except FileNotFoundError:
            raise AnnotationError(f"annotation file not found: {path}")
        except OSError as e:
            raise AnnotationError(f"cannot read annotation file {path}: {str(e)}")

        logger.info(f"Loaded {len(annotations)} annotation lines from {path}")
        return annotations

    @staticmethod
    def load_blocked_types(path: Optional[Union[str, Path]] = None) -> FrozenSet[str]:
        """Blocked semantic types from `path`, or the bundled nine broad types."""
        try:
            return _bundled_list(Path(path) if path else blocked_types_path)
        except FileNotFoundError:
            raise AnnotationError(f"blocked semantic type list not found: {path}")
        except (OSError, UnicodeDecodeError) as e:
            raise AnnotationError(f"cannot read blocked semantic type list {path}: {str(e)}")

    @staticmethod
    def load_stopwords(path: Optional[Union[str, Path]] = None) -> FrozenSet[str]:
        """Stop-words from `path`, or the bundled English list."""
        try:
            return _bundled_list(Path(path) if path else stopwords_path)
        except FileNotFoundError:
            raise AnnotationError(f"stop-word list not found: {path}")
        except (OSError, UnicodeDecodeError) as e:
            raise AnnotationError(f"cannot read stop-word list {path}: {str(e)}")

    @staticmethod
    def filter_semantic_types(
        annotations: Sequence[ConceptAnnotation],
        blocked_types: Optional[Iterable[str]] = None
    ) -> List[ConceptAnnotation]:
        """
        Remove concepts whose semantic type is blocked (case-insensitive).

        With `blocked_types` None the bundled nine broad types apply; an empty
        collection blocks nothing. Annotations are kept even when all of their
        concepts go, so the sentence still yields an empty transaction.
        """
        if blocked_types is None:
            blocked_types = AnnotationService.load_blocked_types()
        blocked = {t.strip().lower() for t in blocked_types}
        if not blocked:
            return list(annotations)

        filtered = []
        removed = 0
        for annotation in annotations:
            kept = tuple(c for c in annotation.concepts if c.semantic_type.strip().lower() not in blocked)
            removed += len(annotation.concepts) - len(kept)
            filtered.append(annotation.model_copy(update={"concepts": kept}))
        logger.info(f"Semantic type filter removed {removed} concepts")
        return filtered

    @staticmethod
    def group_by_sentence(annotations: Sequence[ConceptAnnotation]) -> Dict[int, List[Concept]]:
        grouped: Dict[int, List[Concept]] = {}
        for annotation in annotations:
            grouped.setdefault(annotation.sentence_index, []).extend(annotation.concepts)
        return grouped

    @staticmethod
    def concept_items(sentence_index: int, annotations: Sequence[ConceptAnnotation]) -> Set[Item]:
        """Distinct concept ids annotated on a sentence, as items."""
        items: Dict[str, Item] = {}
        for annotation in annotations:
            if annotation.sentence_index != sentence_index:
                continue
            for concept in annotation.concepts:
                # first preferred name seen for an id is its display form
                items.setdefault(concept.concept_id, Item(concept.concept_id, concept.preferred_name))
        return set(items.values())

    @staticmethod
    def stem(token: str) -> str:
        return stemmer.stem(token)

    @staticmethod
    def term_items(sentence: Union[Sentence, str], stopwords: Optional[FrozenSet[str]] = None) -> Set[Item]:
        """Lowercased tokens minus stop-words, Porter-stemmed, as a set of items."""
        if stopwords is None:
            stopwords = AnnotationService.load_stopwords()
        text = sentence.text if isinstance(sentence, Sentence) else sentence
        tokens = ContentFilter.remove_stopwords(ContentFilter.tokenize(text), stopwords)
        return {Item(stem, stem) for stem in (AnnotationService.stem(t) for t in tokens) if stem}
