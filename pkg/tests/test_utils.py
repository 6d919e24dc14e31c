import os
import logging

import pytest

from krecon.engines import OverlapEngine
from krecon.utils import (
    bits_to_mask,
    iter_bits,
    parse_int_list,
    replace_env_strings_recursive,
    resolve_instance_or_callable,
)


def test_resolve_instance_or_callable():
    assert resolve_instance_or_callable(None) is None

    obj1, obj2 = object(), object()
    ins = resolve_instance_or_callable(obj1, allow_types=[object])
    assert ins is obj1 and ins is not obj2

    with pytest.raises(ValueError):
        resolve_instance_or_callable(123)

    with pytest.raises(ValueError):
        resolve_instance_or_callable([])

    with pytest.raises(ValueError):
        resolve_instance_or_callable({})

    assert resolve_instance_or_callable(lambda: 42)() == 42
    assert resolve_instance_or_callable("krecon.utils.iter_bits") is iter_bits

    ins = resolve_instance_or_callable("krecon.engines.OverlapEngine")
    assert isinstance(ins, OverlapEngine) and ins.prune is None

    ins = resolve_instance_or_callable(
        {"class": "krecon.engines.OverlapEngine", "prune": False, "identity_order": True}
    )
    assert isinstance(ins, OverlapEngine) and ins.prune is False and ins.identity_order


def test_replace_env_strings_recursive(caplog):
    os.environ["TEST_VAR1"] = "env_value1"
    assert replace_env_strings_recursive("env:TEST_VAR1") == "env_value1"

    caplog.set_level(logging.WARNING)
    assert replace_env_strings_recursive("env:NON_EXIST") == ""
    assert len(caplog.records) == 1

    assert replace_env_strings_recursive([["env:TEST_VAR1"]]) == [["env_value1"]]
    assert replace_env_strings_recursive({"data": {"field": "env:TEST_VAR1"}}) == {
        "data": {"field": "env_value1"}
    }
    assert replace_env_strings_recursive({"limit": 5}) == {"limit": 5}


def test_bits():
    assert list(iter_bits(0)) == []
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert bits_to_mask([5, 0, 3]) == 0b101001
    assert list(iter_bits(1 << 70)) == [70]


@pytest.mark.parametrize(
    "value, expected",
    [
        ("10..20:5", [10, 15, 20]),
        ("1,2, 5", [1, 2, 5]),
        ("2..4", [2, 3, 4]),
        (7, [7]),
        ([1, "3..4"], [1, 3, 4]),
        ("", []),
    ],
)
def test_parse_int_list(value, expected):
    assert parse_int_list(value) == expected


def test_parse_int_list_errors():
    with pytest.raises(ValueError):
        parse_int_list("a..b")
