from ..exceptions import ConfigError


def check_mapping(path, data):

    if not isinstance(data, dict):
        message = "{0!r} should be a mapping, got {1}"
        raise ConfigError(message.format(path or "<root>", type(data).__name__))


def check_unknown_keys(path, data, allowed):

    unknown = sorted(set(data) - set(allowed))
    if unknown:
        message = "Unknown key {0!r} in {1!r}"
        raise ConfigError(message.format(unknown[0], path or "<root>"))


def check_override(expression):

    if "=" not in expression:
        message = "Override should look like 'dotted.path=value', got {0!r}"
        raise ConfigError(message.format(expression))


def check_type(path, value, expected, name):

    if isinstance(value, bool) or not isinstance(value, expected):
        message = "{0!r} should be {1}, got {2}"
        raise ConfigError(message.format(path, name, type(value).__name__))


def check_cells(instance, attribute, value):

    if value < 2:
        message = "{0!r} should be at least 2, got {1!r}"
        raise ConfigError(message.format(attribute.name, value))


def check_choices(allowed):
    def validator(instance, attribute, value):

        unknown = sorted(set(value) - set(allowed))
        if unknown:
            message = "{0!r} accepts only {1!r}, got {2!r}"
            raise ConfigError(message.format(attribute.name, list(allowed), unknown[0]))

    return validator


def check_workers(value):

    if value < 1:
        message = "Worker count should be at least 1, got {0!r}"
        raise ConfigError(message.format(value))
