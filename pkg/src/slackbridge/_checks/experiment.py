from ..exceptions import ConfigError


def check_ratios(perturbation_ratio, detection_ratio):

    if not 0 <= perturbation_ratio < detection_ratio < 1:
        message = "Expected 0 <= perturbation_ratio < detection_ratio < 1, got {0!r} and {1!r}"  # noqa: E501
        raise ConfigError(message.format(perturbation_ratio, detection_ratio))


def check_mode(mode, n_w):

    if not 1 <= mode <= n_w:
        message = "Excited mode should lie in [1, {0}], got {1!r}"
        raise ConfigError(message.format(n_w, mode))


def check_search(lower, upper, step, resolution):

    if not (lower > 0 and step > 0 and resolution > 0):
        message = "Threshold search needs positive lower bound, step and resolution, got {0!r}, {1!r}, {2!r}"  # noqa: E501
        raise ConfigError(message.format(lower, step, resolution))
    if upper is not None and not upper > lower:
        message = "Search bracket should satisfy lower < upper, got ({0!r}, {1!r})"
        raise ConfigError(message.format(lower, upper))
