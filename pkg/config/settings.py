# config/settings.py
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    LOG_LEVEL: str = "INFO"
    MODE: str = "concept"
    MIN_SUP_CONCEPT: str = "0.08"
    MIN_SUP_TERM: str = "0.10"
    COMPRESSION_RATE: str = "0.30"
    STOPWORDS_PATH: Optional[str] = None
    ABBREVIATIONS_PATH: Optional[str] = None
    BLOCKED_TYPES_PATH: Optional[str] = None
    OUTPUT_DIR: str = "out"
    WORKERS: int = 1
    SWEEP_RANGE: str = "0.02:0.20:0.01"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="ITEMSUM_",
        extra="ignore"
    )

settings = Settings()
