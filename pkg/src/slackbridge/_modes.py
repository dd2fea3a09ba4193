import functools
import math

import attr
import numpy as np

from ._checks.state import check_modes, check_velocities
from ._grid import GridFunction


def _frozen(values):

    array = np.array(values, dtype=float).reshape(-1)
    array.setflags(write=False)
    return array


@attr.s(frozen=True, eq=False)
class ModalState:
    """Galerkin phase point.

    Coefficients multiply the orthonormal basis ``sqrt(2/L) sin(k pi x/L)``;
    the reported amplitudes are ``sqrt(2/L)`` times the coefficients.
    """

    t = attr.ib(converter=float)
    w_coeffs = attr.ib(converter=_frozen)
    theta_coeffs = attr.ib(converter=_frozen)
    w_vel = attr.ib(converter=_frozen)
    theta_vel = attr.ib(converter=_frozen)

    def __attrs_post_init__(self):

        check_modes(self.w_coeffs.size, self.theta_coeffs.size)
        check_velocities(self.w_coeffs, self.w_vel, "w")
        check_velocities(self.theta_coeffs, self.theta_vel, "theta")

    @classmethod
    def zeros(cls, n_w, n_theta, t=0.0):

        w, theta = np.zeros(n_w), np.zeros(n_theta)
        return cls(t, w, theta, w, theta)

    @property
    def n_w(self):

        return self.w_coeffs.size

    @property
    def n_theta(self):

        return self.theta_coeffs.size

    def w_bar(self, length):

        return math.sqrt(2.0 / length) * self.w_coeffs

    def theta_bar(self, length):

        return math.sqrt(2.0 / length) * self.theta_coeffs

    def mirrored(self):
        """Same state with every torsional coefficient negated."""

        return attr.evolve(
            self, theta_coeffs=-self.theta_coeffs, theta_vel=-self.theta_vel
        )

    def reversed(self):
        """Same positions with every velocity negated."""

        return attr.evolve(self, w_vel=-self.w_vel, theta_vel=-self.theta_vel)

    def dump(self):

        return {
            "t": self.t,
            "w_coeffs": self.w_coeffs.tolist(),
            "theta_coeffs": self.theta_coeffs.tolist(),
            "w_vel": self.w_vel.tolist(),
            "theta_vel": self.theta_vel.tolist(),
        }


def wavenumbers(length, count):

    return np.arange(1, count + 1) * math.pi / length


@functools.lru_cache(maxsize=32)
def sine_basis(length, cells, count):
    """Rows ``e_k`` sampled on ``cells + 1`` nodes of [0, length]."""

    x = np.linspace(0.0, length, cells + 1)
    basis = math.sqrt(2.0 / length) * np.sin(np.outer(wavenumbers(length, count), x))
    basis[:, 0] = 0.0
    basis[:, -1] = 0.0
    basis.setflags(write=False)
    return basis


def basis_integrals(length, count):
    """Exact integrals of ``e_k`` over the span."""

    k = np.arange(1, count + 1)
    return math.sqrt(2.0 * length) * (1.0 - (-1.0) ** k) / (k * math.pi)


def modal_fields(state, grid):
    """Deck displacement and rotation sampled on the nodes of ``grid``."""

    length = grid.b - grid.a
    w = state.w_coeffs @ sine_basis(length, grid.n, state.n_w)
    theta = state.theta_coeffs @ sine_basis(length, grid.n, state.n_theta)
    return GridFunction(grid.a, grid.b, w), GridFunction(grid.a, grid.b, theta)
