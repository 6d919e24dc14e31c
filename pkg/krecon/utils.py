"""Common usage utility functions."""

import os
import json
import inspect
import logging
from typing import Any, Callable, Iterator, Union

from microcore.utils import resolve_callable


def resolve_instance_or_callable(
    item: Union[str, Callable, dict, object],
    class_key: str = "class",
    debug_name: str = None,
    allow_types: list[type] = None,
) -> Callable | object | None:
    """
    Resolves a configuration value into a callable or an object instance.

    - ``None`` or ``""``: Returns ``None``.
    - ``dict`` with a class key: Instantiates the class with remaining dict entries as kwargs.
      Example: ``{"class": "krecon.engines.OverlapEngine", "prune": false}``
    - ``str``: Imports the dotted path. Classes are instantiated; functions are returned as-is.
    - ``class``: Instantiated with no arguments.
    - ``callable``: Returned as-is.
    - Other types: Accepted only if their type is listed in ``allow_types``.

    Raises:
        ValueError: If the input cannot be resolved to a valid callable or instance.
    """
    if item is None or item == "":
        return None
    if isinstance(item, dict):
        if class_key in item:
            args = dict(item)
            class_name = args.pop(class_key)
            constructor = resolve_callable(class_name)
            return constructor(**args)
        if dict not in (allow_types or []):
            raise ValueError(
                f"'{class_key}' key is missing in {debug_name or 'item'} config: {item}"
            )
    if isinstance(item, str):
        fn = resolve_callable(item)
        return fn() if inspect.isclass(fn) else fn
    if callable(item):
        return item() if inspect.isclass(item) else item
    if allow_types and any(isinstance(item, t) for t in allow_types):
        return item
    raise ValueError(f"Invalid {debug_name or 'item'} config: {item}")


class CustomJsonEncoder(json.JSONEncoder):
    """
    JSON encoder that handles pydantic models, frozensets and tuples of symbols.
    """

    def default(self, o):
        if hasattr(o, "model_dump"):
            return o.model_dump(mode="json")
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if hasattr(o, "__dict__"):
            return o.__dict__
        return super().default(o)


def replace_env_strings_recursive(data: Any) -> Any:
    """
    Recursively traverses dicts and lists, replacing all string values
    that start with 'env:' with the corresponding environment variable.
    """
    if isinstance(data, dict):
        return {k: replace_env_strings_recursive(v) for k, v in data.items()}
    if isinstance(data, list):
        return [replace_env_strings_recursive(i) for i in data]
    if isinstance(data, str) and data.startswith("env:"):
        env_var_name = data[4:]
        if env_var_name not in os.environ:
            logging.warning("Environment variable '%s' not found", env_var_name)
        return os.environ.get(env_var_name, "")
    return data


def iter_bits(mask: int) -> Iterator[int]:
    """Yields the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(elements) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def parse_int_list(value: Union[str, int, list, tuple]) -> list[int]:
    """
    Parses integer lists given as ``[1, 2]``, ``"1,2,5"``, ``"10..20"`` or ``"10..20:2"``.
    Ranges are inclusive on both ends.
    """
    if isinstance(value, int):
        return [value]
    if isinstance(value, (list, tuple)):
        result = []
        for item in value:
            result.extend(parse_int_list(item))
        return result
    result = []
    for part in str(value).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            bounds, _, step = part.partition(":")
            lo, hi = bounds.split("..", 1)
            result.extend(range(int(lo), int(hi) + 1, int(step or 1)))
        else:
            result.append(int(part))
    return result
