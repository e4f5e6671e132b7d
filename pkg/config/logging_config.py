import logging
import sys
from config.settings import settings

def setup_logging():
    """
    Sets up logging configuration for the summarizer.
    Messages go to stderr so that command output on stdout stays clean.
    The level comes from the ITEMSUM_LOG_LEVEL setting.
    Returns:
        logging.Logger: Configured logger instance for the application.
    """
    logger = logging.getLogger('itemsum')
    logger.setLevel(settings.LOG_LEVEL.upper())
    logger.propagate = False

    if not logger.handlers:
        # Create console handler
        ch = logging.StreamHandler(sys.stderr)
        ch.setLevel(settings.LOG_LEVEL.upper())

        # Create formatter
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        ch.setFormatter(formatter)

        # Add handler to logger
        logger.addHandler(ch)

    return logger

logger = setup_logging()
