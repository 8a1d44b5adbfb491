"""Immutable runtime configuration for pgdef."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from ._constants import (
    DEFAULT_H2_ORDER_CEILING,
    DEFAULT_MAX_COSETS,
    ENV_H2_CEILING,
    ENV_MAX_COSETS,
    ENV_STRATEGY,
)
from .types.enums import EnumerationStrategy


@dataclass(frozen=True)
class PgdefConfig:
    """Default limits for coset enumeration and the H2 table oracle.

    Operations read from this to fill in values that the caller did not pass
    explicitly. Explicit arguments always win over the config, and the config
    wins over the built-in constants.
    """

    max_cosets: int = DEFAULT_MAX_COSETS
    h2_order_ceiling: int = DEFAULT_H2_ORDER_CEILING
    strategy: EnumerationStrategy = field(default=EnumerationStrategy.HLT)
    lookahead: bool = True

    @classmethod
    def from_env(cls) -> PgdefConfig:
        """Build a config from ``PGDEF_MAX_COSETS``, ``PGDEF_H2_CEILING`` and ``PGDEF_STRATEGY``."""
        config = cls()
        if value := os.environ.get(ENV_MAX_COSETS):
            config = replace(config, max_cosets=int(value))
        if value := os.environ.get(ENV_H2_CEILING):
            config = replace(config, h2_order_ceiling=int(value))
        if value := os.environ.get(ENV_STRATEGY):
            config = replace(config, strategy=EnumerationStrategy(value.lower()))
        return config

    def with_overrides(
        self,
        *,
        max_cosets: int | None = None,
        h2_order_ceiling: int | None = None,
        strategy: EnumerationStrategy | str | None = None,
    ) -> PgdefConfig:
        """Return a copy with every non-None argument applied."""
        config = self
        if max_cosets is not None:
            config = replace(config, max_cosets=max_cosets)
        if h2_order_ceiling is not None:
            config = replace(config, h2_order_ceiling=h2_order_ceiling)
        if strategy is not None:
            config = replace(config, strategy=EnumerationStrategy(strategy))
        return config
