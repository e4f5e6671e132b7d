import json
import re
from functools import lru_cache
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union
from pydantic import ValidationError
from api.models.models import Block, BlockKind, Document, Sentence, SourceFormat, StructuredInput
from config.logging_config import logger
from config.resources import abbreviations_path
from middleware.error_handler import DocumentParseError
from utils.content_filters import ContentFilter

# Terminal punctuation, optional closing quotes/brackets, whitespace. The
# next character must also be an uppercase letter or a digit (_starts_sentence).
_BOUNDARY = re.compile(r'([.!?])(["\'\)\]]*)(\s+)(?=\S)')

_BLOCK_SEPARATOR = "\n\n"

_EXTENSION_FORMATS = {
    '.json': SourceFormat.STRUCTURED_JSON,
    '.sent': SourceFormat.PRE_SEGMENTED,
}


@lru_cache(maxsize=None)
def _default_abbreviations() -> FrozenSet[str]:
    return ContentFilter.load_word_list(abbreviations_path)


class DocumentService:
    @staticmethod
    def load_abbreviations(path: Optional[Union[str, Path]] = None) -> FrozenSet[str]:
        """Abbreviation exceptions from `path`, or the bundled list."""
        if path is None:
            return _default_abbreviations()
        try:
            return ContentFilter.load_word_list(path)
        except FileNotFoundError:
            raise DocumentParseError(f"abbreviation list not found: {path}")
        except (OSError, UnicodeDecodeError) as e:
            raise DocumentParseError(f"cannot read abbreviation list {path}: {str(e)}")

    @staticmethod
    def infer_format(path: Union[str, Path]) -> SourceFormat:
        return _EXTENSION_FORMATS.get(Path(path).suffix.lower(), SourceFormat.PLAIN)

    @staticmethod
    def load_document(
        path: Union[str, Path],
        source_format: Optional[SourceFormat] = None,
        abbreviations: Optional[FrozenSet[str]] = None
    ) -> Document:
        """Read and parse a document file; the file stem is the id unless the input names one."""
        path = Path(path)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            raise DocumentParseError(f"document not found: {path}")
        except OSError as e:
            raise DocumentParseError(f"cannot read document {path}: {str(e)}")
        source_format = source_format or DocumentService.infer_format(path)
        return DocumentService.parse_document(
            raw,
            source_format,
            doc_id=path.name.split('.')[0],
            abbreviations=abbreviations
        )

    @staticmethod
    def parse_document(
        raw: bytes,
        source_format: SourceFormat,
        doc_id: Optional[str] = None,
        abbreviations: Optional[FrozenSet[str]] = None,
        strip: bool = True
    ) -> Document:
        """
        Parse raw input bytes into a Document.

        Structured input is stripped of figure and table blocks first (unless
        `strip` is False); the remaining block texts are joined in file order
        and each block is segmented on its own, so a heading without terminal
        punctuation never merges into the next block.

        Raises:
            DocumentParseError: undecodable bytes, malformed structured input,
                or no sentences left after stripping.
        """
        try:
            text = raw.decode('utf-8')
        except UnicodeDecodeError as e:
            raise DocumentParseError(f"input is not valid UTF-8: {str(e)}")

        title = None
        if source_format == SourceFormat.STRUCTURED_JSON:
            structured = DocumentService.parse_structured(text)
            if strip:
                structured, removed = DocumentService.strip_nonprose(structured)
                if removed:
                    logger.info(f"Stripped {len(removed)} figure/table blocks from {structured.id}")
            doc_id = structured.id
            title = structured.title
            sentences = DocumentService._segment_blocks(
                [block.text for block in structured.blocks], abbreviations
            )
        elif source_format == SourceFormat.PRE_SEGMENTED:
            sentences = DocumentService._split_lines(text)
        elif source_format == SourceFormat.PLAIN:
            sentences = DocumentService.segment_sentences(text, abbreviations)
        else:
            raise DocumentParseError(f"unsupported source format: {source_format}")

        doc_id = doc_id or "document"
        if not sentences:
            raise DocumentParseError(f"empty document: {doc_id} has no sentences")

        logger.info(f"Parsed document {doc_id}: {len(sentences)} sentences ({source_format.value})")
        return Document(
            id=doc_id,
            title=title,
            sentences=tuple(sentences),
            source_format=source_format
        )

    @staticmethod
    def parse_structured(text: str) -> StructuredInput:
        try:
            return StructuredInput.model_validate(json.loads(text))
        except json.JSONDecodeError as e:
            raise DocumentParseError(f"malformed structured input: {str(e)}")
        except ValidationError as e:
            raise DocumentParseError(f"malformed structured input: {str(e)}")

    @staticmethod
    def strip_nonprose(structured: StructuredInput) -> Tuple[StructuredInput, List[Block]]:
        """Drop blocks tagged figure or table. Returns the kept input and the removed blocks."""
        kept = []
        removed = []
        for block in structured.blocks:
            if block.kind in (BlockKind.FIGURE, BlockKind.TABLE):
                removed.append(block)
            else:
                kept.append(block)
        if not removed:
            return structured, removed
        return structured.model_copy(update={"blocks": tuple(kept)}), removed

    @staticmethod
    def segment_sentences(
        text: str,
        abbreviations: Optional[FrozenSet[str]] = None,
        offset: int = 0,
        start_index: int = 0
    ) -> List[Sentence]:
        """
        Split `text` at terminal punctuation followed by whitespace and an
        uppercase letter or digit, unless the text before the punctuation
        ends with a listed abbreviation.

        Spans are offsets into `text` shifted by `offset`.
        """
        if abbreviations is None:
            abbreviations = _default_abbreviations()

        pieces = []
        start = 0
        for match in _BOUNDARY.finditer(text):
            if not DocumentService._starts_sentence(text[match.end(3)]):
                continue
            if match.group(1) == '.' and DocumentService._ends_with_abbreviation(
                text, match.end(1), abbreviations
            ):
                continue
            pieces.append((start, match.end(2)))
            start = match.end(3)
        pieces.append((start, len(text)))

        sentences = []
        for piece_start, piece_end in pieces:
            piece = text[piece_start:piece_end]
            stripped = piece.strip()
            if not stripped:
                continue
            leading = len(piece) - len(piece.lstrip())
            sentences.append(Sentence.from_text(
                start_index + len(sentences),
                stripped,
                offset + piece_start + leading
            ))
        return sentences

    @staticmethod
    def _starts_sentence(char: str) -> bool:
        return char.isupper() or char.isdigit()

    @staticmethod
    def _ends_with_abbreviation(text: str, end: int, abbreviations: Iterable[str]) -> bool:
        preceding = text[:end].lower()
        for abbreviation in abbreviations:
            if not preceding.endswith(abbreviation):
                continue
            before = len(preceding) - len(abbreviation)
            # The abbreviation must start a token, so "leaf." does not match "f."
            if before == 0 or not preceding[before - 1].isalnum():
                return True
        return False

    @staticmethod
    def _segment_blocks(texts: List[str], abbreviations: Optional[FrozenSet[str]]) -> List[Sentence]:
        sentences: List[Sentence] = []
        offset = 0
        for text in texts:
            sentences.extend(DocumentService.segment_sentences(
                text, abbreviations, offset=offset, start_index=len(sentences)
            ))
            offset += len(text) + len(_BLOCK_SEPARATOR)
        return sentences

    @staticmethod
    def _split_lines(text: str) -> List[Sentence]:
        sentences: List[Sentence] = []
        offset = 0
        for line in text.splitlines(keepends=True):
            stripped = line.strip()
            if stripped:
                leading = len(line) - len(line.lstrip())
                sentences.append(Sentence.from_text(len(sentences), stripped, offset + leading))
            offset += len(line)
        return sentences
