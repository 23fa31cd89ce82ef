import json

import pytest

from grfrob.core.constructions import truncated_polynomial
from grfrob.utils.config import DEFAULTS, Limits, load_config
from grfrob.utils.errors import CapExceededError, InvalidInputError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("GRFROB_THREADS", "GRFROB_SEED", "GRFROB_MAX_DIM", "GRFROB_MAX_PRIME", "GRFROB_ENUMERATION_CAP"):
        monkeypatch.delenv(var, raising=False)


def test_defaults():
    config = load_config()
    assert config["seed"] == 0
    assert config["enumeration_cap"] == 2**16
    assert Limits.from_config(config) == Limits()


def test_user_file_then_environment(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 3, "max_dim": 10}), encoding="utf-8")
    monkeypatch.setenv("GRFROB_SEED", "7")
    config = load_config(str(path))
    assert config["seed"] == 7
    assert config["max_dim"] == 10


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv("GRFROB_THREADS", "many")
    with pytest.raises(InvalidInputError):
        load_config()


def test_missing_or_malformed_file(tmp_path):
    with pytest.raises(InvalidInputError):
        load_config(str(tmp_path / "absent.json"))
    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_config(str(path))


def test_limits_check_algebra():
    A = truncated_polynomial(5, 3)
    Limits().check_algebra(A)
    with pytest.raises(CapExceededError):
        Limits(max_dim=2).check_algebra(A)
    with pytest.raises(CapExceededError):
        Limits(max_prime=3).check_algebra(A)


def test_limits_ignore_non_limit_keys():
    limits = Limits.from_config({**DEFAULTS, "seed": "5"})
    assert limits.seed == 5
