"""
slackbridge.exceptions
----------------------

This module contains the set of slackbridge's exceptions.

:license: BSD, see LICENSE for more details.
"""


class BridgeError(Exception):
    """Base class of every error raised by slackbridge."""

    pass


class GridError(BridgeError):
    """Sampled function is invalid or lives on the wrong grid."""

    pass


class NoFlatError(BridgeError):
    """Two-sided variation requested where the convexification is not
    Gateaux differentiable."""

    pass


class ConfigError(BridgeError):
    """Broken run configuration."""

    pass


class NumericalError(BridgeError):
    """Time integration produced a non-finite value."""

    def __init__(self, message, state=None):

        super().__init__(message)
        self.state = state


class SearchError(BridgeError):
    """Threshold search could not bracket an instability."""

    pass
