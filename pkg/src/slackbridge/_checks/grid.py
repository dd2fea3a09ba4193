import numpy as np

from ..exceptions import GridError


def check_interval(a, b):

    if not (np.isfinite(a) and np.isfinite(b)) or not b > a:
        message = "Interval end points should satisfy a < b, got ({0!r}, {1!r})"
        raise GridError(message.format(a, b))


def check_size(values):

    if values.ndim != 1:
        raise GridError("Grid values should be a one-dimensional sequence")
    if values.size < 3:
        message = "Grid needs at least 2 cells, got {0}"
        raise GridError(message.format(max(values.size - 1, 0)))


def check_finite(values):

    if not np.all(np.isfinite(values)):
        raise GridError("Grid values should be finite")


def check_same_grid(first, second):

    if first.a != second.a or first.b != second.b or first.n != second.n:
        message = "Grid mismatch: [{0}, {1}] with {2} cells against [{3}, {4}] with {5} cells"  # noqa: E501
        raise GridError(
            message.format(first.a, first.b, first.n, second.a, second.b, second.n)
        )


def check_vanishing_ends(phi, tolerance):

    limit = tolerance * phi.scale
    if abs(phi.values[0]) > limit or abs(phi.values[-1]) > limit:
        raise GridError("Test function should vanish at both end points")


def check_sign(sign):

    if sign not in (1, -1):
        message = "Variation sign should be +1 or -1, got {0!r}"
        raise GridError(message.format(sign))
