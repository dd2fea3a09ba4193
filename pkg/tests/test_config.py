import json

import pytest

from helpers import CodeCollector
from slackbridge import RunConfig, load_config, parse_config
from slackbridge._config import apply_overrides, config_as_dict, worker_count
from slackbridge.exceptions import ConfigError


def test_empty_document_gives_the_defaults():
    """Every block has defaults."""

    config = parse_config({})

    assert config == RunConfig()
    assert config.bridge.L == 853.44
    assert config.numerics.cells == 2048
    assert config.numerics.dt == 1e-3
    assert config.numerics.n_w == 10
    assert config.numerics.n_theta == 4
    assert config.experiment.horizon == 120.0
    assert config.sweep.modes == tuple(range(1, 11))
    assert config.output.formats == ("csv", "json")


def test_nested_blocks():
    """Blocks are parsed into their own classes."""

    config = parse_config(
        {
            "bridge": {"H": 0, "g": 0.0},
            "numerics": {"cells": 64, "horizon": 2},
            "experiment": {"mode": 10, "amplitude": 0.75},
            "sweep": {"modes": [1, 2], "variants": ["convexified", "rigid"]},
            "tolerances": {"contact": 1e-8},
        }
    )

    assert config.bridge.H == 0.0
    assert isinstance(config.bridge.H, float)
    assert config.numerics.cells == 64
    assert config.numerics.horizon == 2.0
    assert config.experiment.mode == 10
    assert config.sweep.variants == ("convexified", "rigid")
    assert config.tolerances.contact == 1e-8


invalid = CodeCollector("case")


@invalid.parametrize
def test_invalid_documents(case):
    """Broken documents name the offending key."""

    data, message = case

    with pytest.raises(ConfigError) as exc_info:
        parse_config(data)

    assert str(exc_info.value) == message


invalid(({"bridges": {}}, "Unknown key 'bridges' in '<root>'"))
invalid(({"bridge": {"span": 1}}, "Unknown key 'span' in 'bridge'"))
invalid(({"bridge": []}, "'bridge' should be a mapping, got list"))
invalid(({"bridge": {"E": "big"}}, "'bridge.E' should be a number, got str"))
invalid(({"bridge": {"E": True}}, "'bridge.E' should be a number, got bool"))
invalid(({"numerics": {"cells": 64.0}}, "'numerics.cells' should be an integer, got float"))  # noqa: E501
invalid(({"sweep": {"modes": 3}}, "'sweep.modes' should be a list, got int"))
invalid(({"sweep": {"modes": ["a"]}}, "'sweep.modes[0]' should be int, got str"))
invalid(
    (
        {"bridge": {"E": -1}},
        "Invalid 'bridge': 'E' should be strictly positive, got -1.0",
    )
)
invalid(
    (
        {"numerics": {"cells": 1}},
        "Invalid 'numerics': 'cells' should be at least 2, got 1",
    )
)
invalid(
    (
        {"output": {"formats": ["xml"]}},
        "Invalid 'output': 'formats' accepts only ['csv', 'json'], got 'xml'",
    )
)


def test_overrides():
    """Dotted paths are set before parsing."""

    config = parse_config(
        {"numerics": {"cells": 64}},
        ["numerics.dt=0.002", "experiment.variant=rigid", "sweep.modes=[9, 10]"],
    )

    assert config.numerics.cells == 64
    assert config.numerics.dt == 0.002
    assert config.experiment.variant == "rigid"
    assert config.sweep.modes == (9, 10)


def test_overrides_leave_the_document_alone():
    """The parsed document is copied."""

    data = {"numerics": {"cells": 64}}
    result = apply_overrides(data, ["numerics.cells=128"])

    assert data == {"numerics": {"cells": 64}}
    assert result == {"numerics": {"cells": 128}}


def test_malformed_override():
    """Overrides need an equal sign."""

    with pytest.raises(ConfigError) as exc_info:
        parse_config({}, ["numerics.dt"])

    assert str(exc_info.value) == (
        "Override should look like 'dotted.path=value', got 'numerics.dt'"
    )


def test_load_config(tmp_path):
    """Configurations are read from JSON files."""

    path = tmp_path / "run.json"
    path.write_text(json.dumps({"experiment": {"mode": 3}}))

    config = load_config(str(path), ["experiment.amplitude=4.89"])

    assert config.experiment.mode == 3
    assert config.experiment.amplitude == 4.89


def test_load_config_errors(tmp_path):
    """Missing files and invalid JSON are configuration errors."""

    missing = tmp_path / "missing.json"
    broken = tmp_path / "broken.json"
    broken.write_text("{")

    with pytest.raises(ConfigError) as exc_info:
        load_config(str(missing))

    assert str(exc_info.value).startswith("Can not read configuration")

    with pytest.raises(ConfigError) as exc_info:
        load_config(str(broken))

    assert str(exc_info.value).startswith("Configuration")
    assert "is not valid JSON" in str(exc_info.value)


def test_config_as_dict_parses_back():
    """The flattened configuration is a valid document."""

    config = parse_config({"numerics": {"cells": 64}, "search": {"upper": 3.0}})
    data = json.loads(json.dumps(config_as_dict(config)))

    assert parse_config(data) == config


def test_worker_count(monkeypatch):
    """Explicit count, then environment, then CPU count."""

    monkeypatch.setenv("SLACKBRIDGE_WORKERS", "3")

    assert worker_count(2) == 2
    assert worker_count() == 3

    monkeypatch.delenv("SLACKBRIDGE_WORKERS")

    assert worker_count() >= 1

    monkeypatch.setenv("SLACKBRIDGE_WORKERS", "many")

    with pytest.raises(ConfigError) as exc_info:
        worker_count()

    assert str(exc_info.value) == (
        "SLACKBRIDGE_WORKERS should be an integer, got 'many'"
    )

    with pytest.raises(ConfigError) as exc_info:
        worker_count(0)

    assert str(exc_info.value) == "Worker count should be at least 1, got 0"
