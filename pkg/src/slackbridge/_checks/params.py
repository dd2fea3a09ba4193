import logging

from ..exceptions import ConfigError


logger = logging.getLogger(__name__)


def check_positive(instance, attribute, value):

    if not value > 0:
        message = "{0!r} should be strictly positive, got {1!r}"
        raise ConfigError(message.format(attribute.name, value))


def check_nonnegative(instance, attribute, value):

    if not value >= 0:
        message = "{0!r} should not be negative, got {1!r}"
        raise ConfigError(message.format(attribute.name, value))


def check_sag_ratio(sag, span):

    ratio = sag / span
    if not 1.0 / 12.0 <= ratio <= 1.0 / 8.0:
        logger.warning(
            "Sag ratio %.4f lies outside the design band [1/12, 1/8]", ratio
        )


def check_side(side, sides):

    if side not in sides:
        message = "Cable side should be one of {0!r}, got {1!r}"
        raise ConfigError(message.format(sorted(sides), side))
