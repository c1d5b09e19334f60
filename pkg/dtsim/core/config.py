from pydantic_settings import BaseSettings
from pydantic import Field, field_validator
from typing import Optional
from functools import lru_cache


class Settings(BaseSettings):
    # Scenario overrides
    DTSIM_SEED: Optional[int] = Field(default=None, ge=0, lt=2**64)

    # Matching
    DTSIM_EXACT_SOLVE_LIMIT: int = Field(default=16, ge=1)

    # Traces
    DTSIM_TRACE_MEMORY_CAP: int = Field(default=100_000, ge=1)
    DTSIM_TRACE_SPILL_DIR: Optional[str] = None

    # Replications
    DTSIM_WORKERS: int = Field(default=1, ge=1)

    # Logging
    DTSIM_LOG_LEVEL: str = "WARNING"
    DTSIM_AUDIT: bool = False

    @field_validator("DTSIM_LOG_LEVEL", mode="before")
    def parse_log_level(cls, v):
        if isinstance(v, str):
            return v.strip().upper()
        return v

    # Application
    APP_NAME: str = "Delayed-State Tracking Simulator"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
