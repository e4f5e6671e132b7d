# config/__init__.py
from config.settings import settings
from config.logging_config import logger
from config.resources import (
    DATA_DIR,
    stopwords_path,
    abbreviations_path,
    blocked_types_path,
    stemmer
)
