# middleware/__init__.py
from middleware.error_handler import (
    ItemsumError,
    DocumentParseError,
    AnnotationError,
    MiningError,
    SelectionError,
    EvaluationError,
    ConfigError,
    ErrorHandlingGroup,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_DATA
)
