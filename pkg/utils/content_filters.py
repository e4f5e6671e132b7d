# utils/content_filters.py
import re
from pathlib import Path
from typing import FrozenSet, List, Union
from config.logging_config import logger

class ContentFilter:
    # Any run of characters that are not Unicode letters or digits separates tokens
    NON_ALNUM = re.compile(r'[\W_]+')

    @staticmethod
    def tokenize(text: str) -> List[str]:
        """Lowercase `text` and split it on non-alphanumeric boundaries."""
        return [t for t in ContentFilter.NON_ALNUM.split(text.lower()) if t]

    @staticmethod
    def remove_stopwords(tokens: List[str], stopwords: FrozenSet[str]) -> List[str]:
        return [t for t in tokens if t not in stopwords]

    @staticmethod
    def load_word_list(path: Union[str, Path], lowercase: bool = True) -> FrozenSet[str]:
        """
        Read a UTF-8 list file with one entry per line.

        Blank lines and lines starting with '#' are skipped; surrounding
        whitespace is trimmed.
        """
        entries = set()
        with open(path, 'r', encoding='utf-8') as f:
            for line in f:
                entry = line.strip()
                if not entry or entry.startswith('#'):
                    continue
                entries.add(entry.lower() if lowercase else entry)
        logger.debug(f"Loaded {len(entries)} entries from {path}")
        return frozenset(entries)
