# middleware/error_handler.py
import sys
from typing import Optional
import click
from config.logging_config import logger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class ItemsumError(Exception):
    """Base error for every pipeline stage. `stage` names the failing step."""
    stage = "pipeline"
    exit_code = EXIT_DATA

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        if stage:
            self.stage = stage

    def for_document(self, doc_id: str) -> "ItemsumError":
        """Same error, same stage, message prefixed with the document id."""
        return type(self)(f"document {doc_id}: {str(self)}", stage=self.stage)


class DocumentParseError(ItemsumError):
    stage = "parse"


class AnnotationError(ItemsumError):
    stage = "annotate"


class MiningError(ItemsumError):
    stage = "mine"


class SelectionError(ItemsumError):
    stage = "select"


class EvaluationError(ItemsumError):
    stage = "evaluate"


class ConfigError(ItemsumError):
    stage = "config"
    exit_code = EXIT_USAGE


class ErrorHandlingGroup(click.Group):
    """Command group that maps failures to the CLI's exit codes.

    Usage errors (bad flags, invalid config) exit 1, data errors exit 2.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra
            )
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except ItemsumError as e:
            logger.error(f"{type(e).__name__} in stage {e.stage}: {str(e)}")
            click.echo(f"error [{e.stage}]: {str(e)}", err=True)
            sys.exit(e.exit_code)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)

        sys.exit(rv if isinstance(rv, int) else EXIT_OK)
