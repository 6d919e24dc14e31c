"""Initialization and bootstrapping."""

import os
import sys
import logging
from os import PathLike
from datetime import datetime
from typing import TYPE_CHECKING

import microcore as mc
from microcore import ui
from microcore.configuration import get_bool_from_env
from dotenv import load_dotenv

from .config import Config
from .errors import InputError
from .utils import resolve_instance_or_callable

if TYPE_CHECKING:
    from .engines import Engine
    from .writers import TRecordWriter


def setup_logging(log_level: int = logging.INFO):
    """Setup logging format and level. Log records go to stderr."""

    class CustomFormatter(logging.Formatter):
        """Custom log formatter with colouring."""

        def format(self, record):
            dt = datetime.fromtimestamp(record.created).strftime("%H:%M:%S")
            message, level_name = record.getMessage(), record.levelname
            if record.levelno == logging.WARNING:
                message = mc.ui.yellow(message)
                level_name = mc.ui.yellow(level_name)
            if record.levelno >= logging.ERROR:
                message = mc.ui.red(message)
                level_name = mc.ui.red(level_name)
            return f"{dt} {level_name}: {message}"

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(CustomFormatter())
    logging.basicConfig(level=log_level, handlers=[handler], force=True)


class Env:
    """Runtime environment singleton."""

    config: Config
    debug: bool
    writers: list["TRecordWriter"]

    def __init__(self):
        self.config = Config()
        self.debug = False
        self.writers = []
        self._engines: dict[str, "Engine"] = {}

    def engine(self, name: str) -> "Engine":
        """Returns the engine registered under the given name, resolving it on first use."""
        if name not in self._engines:
            from .engines import Engine  # pylint: disable=import-outside-toplevel

            if name not in self.config.engines:
                raise InputError(
                    f"Unknown engine '{name}'. "
                    f"Configured engines: {', '.join(self.config.engines) or '(none)'}"
                )
            try:
                self._engines[name] = resolve_instance_or_callable(
                    self.config.engines[name],
                    debug_name=f"engines.{name}",
                    allow_types=[Engine],
                )
            except (ValueError, TypeError, ImportError, AttributeError) as e:
                raise InputError(f"Can't initialize engine '{name}': {e}") from e
            logging.debug("Engine initialized: '%s'.", name)
        return self._engines[name]

    @property
    def engine_names(self) -> list[str]:
        return list(self.config.engines)

    @staticmethod
    def init(config: Config | str | PathLike, debug: bool = False):
        """Initializes the krecon runtime environment singleton."""
        env.debug = debug
        if not isinstance(config, Config):
            if isinstance(config, (str, PathLike)):
                config = Config.load(config)
            else:
                raise ValueError("config must be a path (str or PathLike) or Config instance")
        env.config = config
        env._engines = {}
        env.writers = [
            resolve_instance_or_callable(writer, debug_name="writers.<writer>")
            for writer in env.config.writers
        ]


env = Env()


def bootstrap(
    config: str | Config | None = None,
    env_file: str = ".env",
    debug: bool | None = None,
    verbose: bool = False,
):
    """
    Bootstraps the krecon environment.
    Without an explicit config, ./krecon.toml is used when present, built-in defaults otherwise.
    """

    def log_bootstrap():
        cfg_val = "dynamic" if isinstance(config, Config) else ui.blue(config)
        cfg_line = f"\n  - Config{ui.gray('......')}[ {cfg_val} ]"
        env_line = f"\n  - Env. File{ui.gray('...')}[ {ui.blue(env_file)} ]" if env_file else ""
        dbg_line = f"\n  - Debug{ui.gray('.......')}[ {ui.yellow('On')} ]" if debug else ""
        logging.debug(f"Bootstrapping {ui.magenta('krecon')}...{cfg_line}{env_line}{dbg_line}")

    if env_file and os.path.exists(env_file):
        load_dotenv(env_file, override=True)
    if debug is None:
        debug = "--debug" in sys.argv or get_bool_from_env("KRECON_DEBUG", False)
    if config is None:
        config = "krecon.toml" if os.path.exists("krecon.toml") else Config()
    setup_logging(logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING)
    log_bootstrap()
    Env.init(config, debug=debug)
