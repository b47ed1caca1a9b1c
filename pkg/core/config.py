"""Engine configuration: budgets, tolerances and worker counts."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from core.rational import parse_rational

logger = logging.getLogger(__name__)


class EnumerationBudgetError(Exception):
    """Exception raised when an exhaustive enumeration would exceed its budget."""

    def __init__(
        self, operation: str, projected: int, limit: int, depth_reached: int = 0
    ) -> None:
        """Initialize with the operation and the sizes involved.

        Args:
            operation: Name of the enumeration that was refused
            projected: Projected number of items
            limit: Configured limit
            depth_reached: Last depth completed before aborting, if applicable
        """
        self.operation = operation
        self.projected = projected
        self.limit = limit
        self.depth_reached = depth_reached
        super().__init__(
            f"{operation} refused: projected {projected} items exceeds limit {limit}"
            f" (depth reached: {depth_reached})"
        )


class EngineSettings(BaseSettings):
    """Engine settings, overridable through ``CANTORVAL_*`` environment variables."""

    model_config = SettingsConfigDict(env_prefix="CANTORVAL_")

    max_sumset_elements: int = 1 << 25
    tolerance: str = "1/1000000000000"
    max_enclosure_width: str = "1/1000"
    refinement_bit_cap: int = 1 << 16
    max_qn_index: int = 256
    bruteforce_limit: int = 20
    sweep_workers: int = 4
    sweep_resolution: int = 12
    sweep_depth: int = 4

    @field_validator("tolerance", "max_enclosure_width")
    @classmethod
    def _positive_rational(cls, value: str) -> str:
        if parse_rational(value) <= 0:
            raise ValueError(f"Expected a positive rational, got {value!r}")
        return value

    @field_validator(
        "max_sumset_elements",
        "refinement_bit_cap",
        "max_qn_index",
        "bruteforce_limit",
        "sweep_workers",
        "sweep_resolution",
        "sweep_depth",
    )
    @classmethod
    def _positive_int(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"Expected a positive integer, got {value}")
        return value

    @property
    def tolerance_value(self) -> Fraction:
        """Default enclosure tolerance as an exact rational."""
        return parse_rational(self.tolerance)

    @property
    def max_enclosure_width_value(self) -> Fraction:
        """Widest ratio enclosure classify accepts."""
        return parse_rational(self.max_enclosure_width)


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    """Load settings once per process; tests call ``get_settings.cache_clear()``."""
    settings = EngineSettings()
    logger.debug("Loaded engine settings", extra=settings.model_dump())
    return settings
