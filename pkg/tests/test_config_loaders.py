import pytest

from krecon.bootstrap import Env, bootstrap, env
from krecon.config import Config, SearchStrategy
from krecon.engines import BruteEngine, OverlapEngine
from krecon.errors import InputError
from tests.conftest import CONFIGS


def test_config_loaders(monkeypatch):
    monkeypatch.setenv("KRECON_TEST_ENGINE", "fast-overlap")
    toml = Config.load(CONFIGS / "test_config.toml")
    json = Config.load(CONFIGS / "test_config.json")

    assert json.model_dump() == toml.model_dump()
    assert toml.default_engine == "fast-overlap"
    assert toml.search == SearchStrategy.BINARY
    assert toml.enumeration_limit == 4096 and toml.threads == 2 and not toml.prune

    py = Config.load(CONFIGS / "config_fn.py")
    assert isinstance(py, Config)
    assert py.default_engine == "exact"

    # Expect an error for unsupported format
    with pytest.raises(ValueError):
        Config.load(CONFIGS / "test_config.xyz")


def test_yaml_config(monkeypatch):
    pytest.importorskip("yaml")
    monkeypatch.setenv("KRECON_TEST_ENGINE", "fast-overlap")
    yaml = Config.load(CONFIGS / "test_config.yml")
    assert yaml.model_dump() == Config.load(CONFIGS / "test_config.toml").model_dump()


def test_missing_env_var(monkeypatch):
    monkeypatch.delenv("KRECON_TEST_ENGINE", raising=False)
    assert Config.load(CONFIGS / "test_config.toml").default_engine == ""


def test_invalid_config():
    with pytest.raises(ValueError):
        Config(colour="blue")
    with pytest.raises(ValueError):
        Config(threads=0)


def test_engines_from_config(monkeypatch):
    monkeypatch.setenv("KRECON_TEST_ENGINE", "fast-overlap")
    Env.init(CONFIGS / "test_config.toml")
    engine = env.engine(env.config.default_engine)
    assert isinstance(engine, OverlapEngine)
    assert engine.prune and engine.fpt_node_limit == 1000
    assert env.engine("fast-overlap") is engine
    assert env.engine_names == ["brute", "greedy", "fast-overlap"]
    with pytest.raises(InputError):
        env.engine("overlap")


def test_engine_instances_and_writers():
    Env.init(CONFIGS / "config_fn.py")
    assert isinstance(env.engine("exact"), BruteEngine)
    assert env.engine("exact").limit == 4096
    assert len(env.writers) == 1 and callable(env.writers[0])


def test_broken_engine_path():
    Env.init(Config(engines={"bad": "krecon.engines.NoSuchEngine"}))
    with pytest.raises(InputError):
        env.engine("bad")


def test_bootstrap_picks_local_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    bootstrap(env_file=None)
    assert env.config == Config()
    (tmp_path / "krecon.toml").write_text("enumeration_limit = 77\n", encoding="utf-8")
    bootstrap(env_file=None)
    assert env.config.enumeration_limit == 77
    bootstrap(config=str(CONFIGS / "tiny_limit.toml"), env_file=None, debug=True)
    assert env.config.enumeration_limit == 4 and env.debug


def test_bootstrap_env_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("KRECON_TEST_ENGINE", "overlap")
    (tmp_path / ".env").write_text("KRECON_TEST_ENGINE=greedy\n", encoding="utf-8")
    bootstrap(config=str(CONFIGS / "test_config.toml"))
    assert env.config.default_engine == "greedy"


def test_example_config():
    Env.init(CONFIGS.parent.parent / "krecon.example.toml")
    assert env.config.model_dump(exclude={"engines"}) == Config().model_dump(exclude={"engines"})
    assert env.engine("overlap-natural").identity_order
    assert isinstance(env.engine(env.config.default_engine), OverlapEngine)
