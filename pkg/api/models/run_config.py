import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Any, Tuple, List, Union
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from api.models.models import ItemMode, RougeMetric, SourceFormat
from config.settings import settings
from config.logging_config import logger
from middleware.error_handler import ConfigError

RationalInput = Union[Fraction, str, int, float]


def parse_rational(value: RationalInput) -> Fraction:
    """Parse "0.08", "2/25", 0.08 or a Fraction into an exact Fraction.

    Floats go through their shortest repr so 0.08 becomes 2/25, not the
    binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, (int, float)):
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {value!r}")


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class MinerConfig(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    min_sup: Fraction
    max_itemset_size: Optional[int] = Field(default=None, gt=0)

    @field_validator("min_sup", mode="before")
    @classmethod
    def _parse_min_sup(cls, value: RationalInput) -> Fraction:
        value = parse_rational(value)
        if not 0 < value <= 1:
            raise ValueError(f"min_sup must lie in (0, 1], got {value}")
        return value


class SummaryConfig(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    compression_rate: Fraction = Fraction(3, 10)
    mode: ItemMode = ItemMode.CONCEPT
    min_sup: Fraction = Fraction(2, 25)
    random_seed: Optional[int] = None

    @field_validator("compression_rate", mode="before")
    @classmethod
    def _parse_rate(cls, value: RationalInput) -> Fraction:
        value = parse_rational(value)
        if not 0 < value < 1:
            raise ValueError(f"compression rate must lie in (0, 1), got {value}")
        return value

    @field_validator("min_sup", mode="before")
    @classmethod
    def _parse_min_sup(cls, value: RationalInput) -> Fraction:
        value = parse_rational(value)
        if not 0 < value <= 1:
            raise ValueError(f"min_sup must lie in (0, 1], got {value}")
        return value


class RunConfig(BaseModel):
    """Fully resolved parameters of one command run. Echoed into every output."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, extra="forbid")

    mode: ItemMode = ItemMode.CONCEPT
    min_sup: Fraction
    compression_rate: Fraction = Fraction(3, 10)
    max_itemset_size: Optional[int] = Field(default=None, gt=0)
    source_format: Optional[SourceFormat] = None
    document: Optional[str] = None
    annotations: Optional[str] = None
    stopwords: Optional[str] = None
    blocked_types: Optional[str] = None
    out: str = "out"
    seed: Optional[int] = None
    stem_rouge: bool = False

    @model_validator(mode="before")
    @classmethod
    def _default_min_sup(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("min_sup") is None:
            data = {**data, "min_sup": RunConfigs.default_min_sup(ItemMode(data.get("mode", ItemMode.CONCEPT)))}
        return data

    @field_validator("min_sup", mode="before")
    @classmethod
    def _parse_min_sup(cls, value: RationalInput) -> Fraction:
        value = parse_rational(value)
        if not 0 < value <= 1:
            raise ValueError(f"min_sup must lie in (0, 1], got {value}")
        return value

    @field_validator("compression_rate", mode="before")
    @classmethod
    def _parse_rate(cls, value: RationalInput) -> Fraction:
        value = parse_rational(value)
        if not 0 < value < 1:
            raise ValueError(f"compression rate must lie in (0, 1), got {value}")
        return value

    def miner_config(self) -> MinerConfig:
        return MinerConfig(min_sup=self.min_sup, max_itemset_size=self.max_itemset_size)

    def summary_config(self) -> SummaryConfig:
        return SummaryConfig(
            compression_rate=self.compression_rate,
            mode=self.mode,
            min_sup=self.min_sup,
            random_seed=self.seed
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode.value,
            "min_sup": format_rational(self.min_sup),
            "compression_rate": format_rational(self.compression_rate),
            "max_itemset_size": self.max_itemset_size,
            "source_format": self.source_format.value if self.source_format else None,
            "document": self.document,
            "annotations": self.annotations,
            "stopwords": self.stopwords,
            "blocked_types": self.blocked_types,
            "out": self.out,
            "seed": self.seed,
            "stem_rouge": self.stem_rouge
        }


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: Tuple[Fraction, ...]
    metrics: Tuple[RougeMetric, ...] = (RougeMetric.R2, RougeMetric.RSU4)

    @field_validator("values", mode="before")
    @classmethod
    def _parse_values(cls, values: Any) -> Tuple[Fraction, ...]:
        parsed = tuple(parse_rational(v) for v in values)
        if not parsed:
            raise ValueError("a sweep needs at least one threshold")
        for v in parsed:
            if not 0 < v < 1:
                raise ValueError(f"sweep threshold {v} outside (0, 1)")
        if any(a >= b for a, b in zip(parsed, parsed[1:])):
            raise ValueError("sweep thresholds must be strictly increasing")
        return parsed

    @classmethod
    def from_range(cls, text: str, metrics: Optional[Tuple[RougeMetric, ...]] = None) -> "SweepSpec":
        """Build from "start:stop:step" (inclusive stop) or a comma list "0.05,0.08"."""
        try:
            if ":" in text:
                start, stop, step = (parse_rational(part) for part in text.split(":"))
                if step <= 0:
                    raise ValueError("sweep step must be positive")
                values: List[Fraction] = []
                current = start
                while current <= stop:
                    values.append(current)
                    current += step
            else:
                values = [parse_rational(part) for part in text.split(",") if part.strip()]
            if metrics:
                return cls(values=values, metrics=metrics)
            return cls(values=values)
        except (ValueError, ValidationError) as e:
            raise ConfigError(f"invalid sweep range {text!r}: {str(e)}")


class RunConfigs:
    """Resolves run configurations: settings < config file < command-line flags."""

    _DEFAULT_MIN_SUP = {
        ItemMode.CONCEPT: settings.MIN_SUP_CONCEPT,
        ItemMode.TERM: settings.MIN_SUP_TERM,
    }

    @classmethod
    def default_min_sup(cls, mode: ItemMode) -> Fraction:
        return parse_rational(cls._DEFAULT_MIN_SUP[mode])

    @classmethod
    def defaults(cls) -> Dict[str, Any]:
        return {
            "mode": settings.MODE,
            "compression_rate": settings.COMPRESSION_RATE,
            "out": settings.OUTPUT_DIR,
        }

    @classmethod
    def load_file(cls, path: Union[str, Path]) -> Dict[str, Any]:
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path} is not valid JSON: {str(e)}")
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigError(f"cannot read config file {path}: {str(e)}")
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        # Outputs echo the config under "config"; accept such a file directly
        if "config" in data and isinstance(data["config"], dict):
            data = data["config"]
        return data

    @classmethod
    def resolve(cls, config_file: Optional[Union[str, Path]] = None, **overrides: Any) -> RunConfig:
        values = cls.defaults()
        if config_file:
            values.update(cls.load_file(config_file))
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            config = RunConfig(**values)
        except ValidationError as e:
            raise ConfigError(f"invalid configuration: {str(e)}")
        logger.debug(f"Resolved run config: {config.to_dict()}")
        return config
