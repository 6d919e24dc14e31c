"""
Configuration model for krecon.
Matches the structure of krecon.toml; every field has a working default.
"""

import os
from enum import StrEnum
from typing import Any, Callable, Dict, Union
from importlib.metadata import entry_points

from pydantic import BaseModel, ConfigDict, Field

from .utils import replace_env_strings_recursive

CONFIG_LOADERS_GROUP = "krecon.config_loaders"

DEFAULT_ENGINES = {
    "brute": "krecon.engines.BruteEngine",
    "overlap": "krecon.engines.OverlapEngine",
    "greedy": "krecon.engines.GreedyEngine",
}


class SearchStrategy(StrEnum):
    """How perfect_point walks over k."""

    # k = 1, 2, 3, ... until the first perfect k
    ASCEND = "ascend"
    # bisection over [1, n], valid because Recon_k(S) shrinks as k grows
    BINARY = "binary"


class Config(BaseModel):
    """Main configuration model."""

    model_config = ConfigDict(
        extra="forbid",
        arbitrary_types_allowed=True,
    )
    enumeration_limit: int = Field(
        default=2**26,
        ge=1,
        description="Largest candidate space (a^n) an exhaustive enumeration may walk",
    )
    search: SearchStrategy = SearchStrategy.ASCEND
    default_engine: str = "overlap"
    engines: dict[str, Union[str, dict, Callable, Any]] = Field(
        default_factory=lambda: dict(DEFAULT_ENGINES),
        description="Engine name => dotted path, {'class': ...} dict or engine instance",
    )
    prune: bool = True
    """ Remove overlap-graph nodes lying on exactly one cycle before enumeration. """
    fpt_node_limit: int = Field(
        default=200_000,
        ge=1,
        description="Search-tree nodes the FPT verifier may expand before the exact solver "
        "takes over",
    )
    threads: int = Field(default=1, ge=1)
    writers: list[Union[str, dict, Callable]] = Field(default_factory=list)
    """ Extra bench record writers, resolved like engines. """

    @staticmethod
    def load_raw(config_path: str | os.PathLike) -> Union["Config", Dict]:
        """Reads a configuration file with the loader registered for its extension."""
        config_ext = os.path.splitext(config_path)[1].lower().lstrip(".")
        for entry_point in entry_points(group=CONFIG_LOADERS_GROUP):
            if config_ext == entry_point.name:
                loader = entry_point.load()
                return loader(config_path)
        raise ValueError(f"No loader found for configuration file extension: {config_ext}")

    @staticmethod
    def load(config_path: str | os.PathLike = "krecon.toml") -> "Config":
        """
        Load configuration from a TOML, JSON, YAML or Python file.

        Args:
            config_path: Path to the configuration file

        Returns:
            Config object with parsed configuration
        """
        config = Config.load_raw(config_path)
        if isinstance(config, dict):
            config = replace_env_strings_recursive(config)
            config = Config(**config)
        elif not isinstance(config, Config):
            raise TypeError("Loaded configuration must be a dict or Config instance")
        return config
