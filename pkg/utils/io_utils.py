import json
from pathlib import Path
from typing import Any, Type, Union
import pandas as pd
from config.logging_config import logger
from middleware.error_handler import ItemsumError

class IOUtils:
    @staticmethod
    def read_text(path: Union[str, Path], error_type: Type[ItemsumError], what: str) -> str:
        """
        Read a UTF-8 text file. A missing, unreadable or undecodable file
        raises `error_type` naming `what` and the path.
        """
        path = Path(path)
        try:
            return path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise error_type(f"{what} not found: {path}")
        except UnicodeDecodeError as e:
            raise error_type(f"{what} {path} is not valid UTF-8: {str(e)}")
        except OSError as e:
            raise error_type(f"cannot read {what} {path}: {str(e)}")

    @staticmethod
    def dumps(data: Any) -> str:
        """Deterministic JSON text: sorted keys, fixed indentation, trailing newline."""
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @staticmethod
    def write_json(path: Union[str, Path], data: Any) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(IOUtils.dumps(data), encoding="utf-8")
        logger.info(f"Wrote {path}")
        return path

    @staticmethod
    def write_text(path: Union[str, Path], text: str) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if not text.endswith("\n"):
            text += "\n"
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")
        return path

    @staticmethod
    def write_table(path: Union[str, Path], table: pd.DataFrame, float_format: str = "%.4f") -> Path:
        """Write `table` as CSV at `path` and as aligned text next to it (.txt)."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(path, index=False, float_format=float_format)
        IOUtils.write_text(path.with_suffix(".txt"), IOUtils.format_table(table))
        logger.info(f"Wrote {path}")
        return path

    @staticmethod
    def format_table(table: pd.DataFrame) -> str:
        return table.to_string(index=False, float_format=lambda v: f"{v:.4f}")
