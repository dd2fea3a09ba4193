import attr
import numpy as np
from scipy.integrate import trapezoid

from ._checks.grid import check_finite, check_interval, check_same_grid, check_size


def _frozen_array(values):

    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@attr.s(frozen=True, eq=False, repr=False)
class GridFunction:
    """Real values sampled at the N + 1 uniform nodes of [a, b]."""

    a = attr.ib(converter=float)
    b = attr.ib(converter=float)
    values = attr.ib(converter=_frozen_array)

    def __attrs_post_init__(self):

        check_interval(self.a, self.b)
        check_size(self.values)
        check_finite(self.values)

    def __repr__(self):

        return "GridFunction(a={0!r}, b={1!r}, n={2})".format(self.a, self.b, self.n)

    @classmethod
    def sample(cls, func, a, b, n):
        """Evaluate a vectorised callable on n cells of [a, b]."""

        x = np.linspace(a, b, n + 1)
        return cls(a, b, func(x))

    @classmethod
    def zeros(cls, a, b, n):

        return cls(a, b, np.zeros(n + 1))

    @property
    def n(self):
        """Number of cells."""

        return self.values.size - 1

    @property
    def dx(self):

        return (self.b - self.a) / self.n

    @property
    def x(self):

        return np.linspace(self.a, self.b, self.n + 1)

    @property
    def length(self):

        return self.b - self.a

    @property
    def sup_norm(self):

        return float(np.max(np.abs(self.values)))

    @property
    def scale(self):
        """Reference magnitude used by every relative tolerance."""

        return max(1.0, self.sup_norm)

    def with_values(self, values):

        return GridFunction(self.a, self.b, values)

    def cell_slopes(self):

        return np.diff(self.values) / self.dx

    def integral(self):

        return float(trapezoid(self.values, dx=self.dx))

    def l1_distance(self, other):

        check_same_grid(self, other)
        return float(trapezoid(np.abs(self.values - other.values), dx=self.dx))

    def same_grid(self, other):

        return self.a == other.a and self.b == other.b and self.n == other.n


def cells_to_nodes(cell_values):
    """Interior nodes take the mean of the two adjacent cells, end nodes
    take their only cell."""

    cell_values = np.asarray(cell_values, dtype=float)
    nodes = np.empty(cell_values.size + 1)
    nodes[0] = cell_values[0]
    nodes[-1] = cell_values[-1]
    nodes[1:-1] = 0.5 * (cell_values[:-1] + cell_values[1:])
    return nodes
