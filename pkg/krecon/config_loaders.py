"""
Configuration file loaders, one per extension.
Registered under the ``krecon.config_loaders`` entry-point group in pyproject.toml.
"""

import json
import tomllib
import importlib.util


def load_toml_config(config_path: str) -> dict:
    with open(config_path, "rb") as f:
        return tomllib.load(f)


def load_json_config(config_path: str) -> dict:
    with open(config_path, "r", encoding="utf-8") as f:
        return json.load(f)


def load_yaml_config(config_path: str) -> dict:
    """Loads a YAML file; PyYAML is an optional dependency."""
    try:
        import yaml  # pylint: disable=import-outside-toplevel
    except ImportError as e:
        raise ImportError(
            "Missing optional dependency 'PyYAML'. "
            "To use YAML configuration files with krecon install it: 'pip install pyyaml'."
        ) from e

    with open(config_path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


def load_python_config(config_path: str):
    """
    Executes a Python file and returns its ``config`` attribute
    (a Config, an ExperimentConfig or a plain dict).
    """
    spec = importlib.util.spec_from_file_location("krecon_config_module", config_path)
    config_module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(config_module)
    return config_module.config


__all__ = [
    "load_python_config",
    "load_toml_config",
    "load_yaml_config",
    "load_json_config",
]
