"""Configuration for propa using pydantic-settings and structlog."""

from __future__ import annotations

import logging
import sys
from functools import lru_cache
from typing import Any, Literal

import structlog
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class PropaSettings(BaseSettings):
    """Solver ceilings, enumeration caps and logging options."""

    model_config = SettingsConfigDict(
        env_prefix="PROPA_",
        env_file=(".env",),
        extra="ignore",
        case_sensitive=False,
    )

    # LP size
    max_lp_cols: int = Field(
        default=5000,
        ge=1,
        description="Largest number of LP columns accepted before solving",
    )
    pivot_rule: Literal["dantzig", "bland"] = Field(
        default="dantzig",
        description="Entering-variable rule of the simplex method",
    )
    degenerate_streak: int = Field(
        default=50,
        ge=1,
        le=10_000,
        description="Degenerate pivots tolerated before switching to Bland's rule",
    )

    # Enumeration caps
    enumeration_cap: int = Field(
        default=20,
        ge=1,
        le=30,
        description="Largest dual-scale set whose subsets are enumerated",
    )
    brute_force_cap: int = Field(
        default=12,
        ge=1,
        le=30,
        description="Largest dual-scale set used by brute-force cross-checks",
    )
    dual_subset_cap: int = Field(
        default=4096,
        ge=1,
        description="Largest subset family accepted by the isoperimetric dual LP",
    )
    group_cap: int = Field(
        default=100_000,
        ge=1,
        description="Largest automorphism group built by closure",
    )

    # Parallelism
    jobs: int = Field(
        default=1,
        ge=1,
        le=256,
        description="Worker processes for independent flow and sequence items",
    )

    # Logging configuration
    log_level: str = Field(
        default="WARNING",
        description="Logging level",
    )
    log_json: bool = Field(
        default=True,
        description="Use JSON logging format",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid}")
        return v.upper()


@lru_cache
def get_settings() -> PropaSettings:
    """Get cached settings instance."""
    return PropaSettings()


def setup_logging(settings: PropaSettings | None = None) -> None:
    """Configure structlog to write to stderr.

    Stdout carries the JSON reports of the CLI, so log records never go there.
    """
    if settings is None:
        settings = get_settings()

    renderer: Any = (
        structlog.processors.JSONRenderer()
        if settings.log_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, settings.log_level, logging.WARNING)
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger_instance(name: str = "propa") -> Any:
    """Get a structured logger instance."""
    return structlog.get_logger(name)


__all__ = [
    "PropaSettings",
    "get_settings",
    "setup_logging",
    "get_logger_instance",
]
