import random
from itertools import product
from pathlib import Path

import pytest

from krecon.base_types import StringSet
from krecon.bootstrap import Env
from krecon.config import Config

DATA = Path(__file__).resolve().parent / "data"
CONFIGS = Path(__file__).resolve().parent / "configs"
GOLDEN = Path(__file__).resolve().parent / "golden"


def basis(n: int) -> StringSet:
    """The n unit vectors e_0, ..., e_{n-1}."""
    return StringSet(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def even_parity(n: int) -> StringSet:
    return StringSet(n, tuple(w for w in product((0, 1), repeat=n) if sum(w) % 2 == 0))


def all_strings(n: int, alphabet_size: int = 2) -> StringSet:
    return StringSet(n, tuple(product(range(alphabet_size), repeat=n)), alphabet_size)


def random_set(rng: random.Random, n: int, m: int, alphabet_size: int = 2) -> StringSet:
    """m distinct strings drawn uniformly (m is capped at a^n)."""
    m = min(m, alphabet_size**n)
    words = rng.sample(range(alphabet_size**n), m)

    def word(v: int):
        return tuple((v // alphabet_size**j) % alphabet_size for j in range(n - 1, -1, -1))

    return StringSet(n, tuple(word(v) for v in words), alphabet_size)


def random_instances(seed: int, count: int, max_n: int, max_m: int, min_n: int = 2):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        yield random_set(rng, n, rng.randint(1, max_m))


@pytest.fixture(autouse=True)
def default_env():
    """Every test starts from the built-in configuration."""
    Env.init(Config())
    yield


@pytest.fixture
def fig1() -> StringSet:
    return StringSet.from_strings(["001", "011", "100"])


@pytest.fixture
def fig3() -> StringSet:
    return StringSet.from_strings(["00111", "10111", "11000", "10100"])
