import json
import logging
import os

import attr

from . import _markers
from ._bridge import BridgeParams
from ._checks.config import (
    check_cells,
    check_choices,
    check_mapping,
    check_override,
    check_type,
    check_unknown_keys,
    check_workers,
)
from ._checks.params import check_positive
from ._checks.state import check_modes
from ._envelope import ToleranceConfig
from ._experiments import VARIANTS, ExperimentSpec, ThresholdSearch
from .exceptions import ConfigError


logger = logging.getLogger(__name__)


WORKERS_VARIABLE = "SLACKBRIDGE_WORKERS"

FORMATS = ("csv", "json")


@attr.s(frozen=True)
class Numerics:
    """Discretisation of the span and of the time axis.

    ``horizon``, when given, replaces the horizon of the experiment.
    """

    cells = attr.ib(default=2048, converter=int, validator=check_cells)
    dt = attr.ib(default=1e-3, converter=float, validator=check_positive)
    horizon = attr.ib(default=None, converter=attr.converters.optional(float))
    integrator = attr.ib(
        default=_markers.rk4,
        validator=attr.validators.in_((_markers.rk4, _markers.verlet)),
    )
    route = attr.ib(
        default=_markers.reduced,
        validator=attr.validators.in_((_markers.reduced, _markers.explicit)),
    )
    store_stride = attr.ib(default=0.01, converter=float, validator=check_positive)
    n_w = attr.ib(default=10, converter=int)
    n_theta = attr.ib(default=4, converter=int)

    def __attrs_post_init__(self):

        check_modes(self.n_w, self.n_theta)


@attr.s(frozen=True)
class SweepSpec:

    modes = attr.ib(default=tuple(range(1, 11)), converter=tuple)
    variants = attr.ib(
        default=(_markers.convexified,),
        converter=tuple,
        validator=check_choices(VARIANTS),
    )


@attr.s(frozen=True)
class OutputSpec:

    directory = attr.ib(default="out")
    formats = attr.ib(
        default=FORMATS, converter=tuple, validator=check_choices(FORMATS)
    )


@attr.s(frozen=True)
class RunConfig:
    """Every block of a run; an empty document gives the defaults."""

    bridge = attr.ib(type=BridgeParams, factory=BridgeParams)
    numerics = attr.ib(type=Numerics, factory=Numerics)
    experiment = attr.ib(type=ExperimentSpec, factory=ExperimentSpec)
    sweep = attr.ib(type=SweepSpec, factory=SweepSpec)
    search = attr.ib(type=ThresholdSearch, factory=ThresholdSearch)
    tolerances = attr.ib(type=ToleranceConfig, factory=ToleranceConfig)
    output = attr.ib(type=OutputSpec, factory=OutputSpec)


def _join(path, name):

    return "{0}.{1}".format(path, name) if path else name


def _coerce(path, value, default):

    if default is None:
        if value is None:
            return None
        check_type(path, value, (int, float), "a number or null")
    elif isinstance(default, float):
        check_type(path, value, (int, float), "a number")
    elif isinstance(default, int):
        check_type(path, value, int, "an integer")
    elif isinstance(default, str):
        check_type(path, value, str, "a string")
    elif isinstance(default, tuple):
        check_type(path, value, (list, tuple), "a list")
        item = type(default[0]) if default else str
        for index, element in enumerate(value):
            check_type("{0}[{1}]".format(path, index), element, item, item.__name__)
        return tuple(value)
    return value


def structure(cls, data, path=""):
    """Build the attrs class ``cls`` from a JSON mapping, strictly."""

    check_mapping(path, data)
    fields = attr.fields_dict(cls)
    check_unknown_keys(path, data, fields)
    kwargs = {}
    for name, value in data.items():
        field = fields[name]
        where = _join(path, name)
        if field.type is not None and attr.has(field.type):
            kwargs[name] = structure(field.type, value, where)
        else:
            kwargs[name] = _coerce(where, value, field.default)
    try:
        return cls(**kwargs)
    except (ConfigError, TypeError, ValueError) as error:
        message = "Invalid {0!r}: {1}"
        raise ConfigError(message.format(path or "<root>", error))


def apply_overrides(data, expressions):
    """Set ``dotted.path=value`` pairs on a copy of ``data``.

    Values are parsed as JSON and kept as bare strings otherwise.
    """

    data = json.loads(json.dumps(data))
    for expression in expressions:
        check_override(expression)
        dotted, raw = expression.split("=", 1)
        try:
            value = json.loads(raw)
        except ValueError:
            value = raw
        keys = dotted.strip().split(".")
        target = data
        for key in keys[:-1]:
            target = target.setdefault(key, {})
            check_mapping(key, target)
        target[keys[-1]] = value
    return data


def parse_config(data, overrides=()):

    return structure(RunConfig, apply_overrides(data, overrides))


def load_config(path, overrides=()):
    """Read, override and validate the JSON run configuration at ``path``."""

    try:
        with open(path) as stream:
            data = json.load(stream)
    except OSError as error:
        message = "Can not read configuration {0!r}: {1}"
        raise ConfigError(message.format(str(path), error.strerror))
    except ValueError as error:
        message = "Configuration {0!r} is not valid JSON: {1}"
        raise ConfigError(message.format(str(path), error))
    config = parse_config(data, overrides)
    logger.debug("Loaded configuration %s", path)
    return config


def config_as_dict(config):

    return attr.asdict(config)


def worker_count(explicit=None):
    """Explicit count, else ``SLACKBRIDGE_WORKERS``, else the CPU count."""

    if explicit is not None:
        value = explicit
    elif os.environ.get(WORKERS_VARIABLE):
        raw = os.environ[WORKERS_VARIABLE]
        try:
            value = int(raw)
        except ValueError:
            message = "{0} should be an integer, got {1!r}"
            raise ConfigError(message.format(WORKERS_VARIABLE, raw))
    else:
        value = os.cpu_count() or 1
    check_workers(value)
    return value
