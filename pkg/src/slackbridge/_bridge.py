import math

import attr
import numpy as np

from . import _markers
from ._checks.grid import check_same_grid
from ._checks.params import (
    check_nonnegative,
    check_positive,
    check_sag_ratio,
    check_side,
)
from ._envelope import DEFAULT_TOLERANCES, convex_envelope
from ._grid import GridFunction, cells_to_nodes
from ._modes import basis_integrals, modal_fields, wavenumbers


SIDES = {_markers.alpha: 1.0, _markers.beta: -1.0}


@attr.s(frozen=True)
class BridgeParams:
    """Mechanical constants of the deck and of the two cables.

    Defaults are the Tacoma Narrows Bridge values. ``H``, ``A`` and ``g``
    may vanish, which removes the cables or the gravity. ``y0`` only
    shifts every cable profile by a constant and is otherwise ignored.
    """

    E = attr.ib(default=2.0e11, converter=float, validator=check_positive)
    E_c = attr.ib(default=1.85e11, converter=float, validator=check_positive)
    G = attr.ib(default=8.1e10, converter=float, validator=check_positive)
    L = attr.ib(default=853.44, converter=float, validator=check_positive)
    ell = attr.ib(default=6.0, converter=float, validator=check_positive)
    f_sag = attr.ib(default=70.71, converter=float, validator=check_nonnegative)
    I = attr.ib(default=0.154, converter=float, validator=check_positive)  # noqa: E741
    K = attr.ib(default=6.07e-6, converter=float, validator=check_positive)
    J = attr.ib(default=5.44, converter=float, validator=check_positive)
    A = attr.ib(default=0.1228, converter=float, validator=check_nonnegative)
    M = attr.ib(default=7198.0, converter=float, validator=check_positive)
    H = attr.ib(default=4.5413e7, converter=float, validator=check_nonnegative)
    g = attr.ib(default=9.81, converter=float, validator=check_nonnegative)
    y0 = attr.ib(default=0.0, converter=float, validator=check_nonnegative)

    def __attrs_post_init__(self):

        if self.f_sag > 0:
            check_sag_ratio(self.f_sag, self.L)

    @property
    def sag_ratio(self):

        return self.f_sag / self.L

    @property
    def end_slope(self):
        """Absolute slope of the rest cable at the towers."""

        return 4.0 * self.f_sag / self.L

    @property
    def xi_max(self):

        return math.sqrt(1.0 + self.end_slope ** 2)

    @property
    def cable_length(self):
        """Closed-form arclength of the parabolic rest cable."""

        m = self.end_slope
        if m == 0:
            return self.L
        return self.L / (2.0 * m) * (m * math.sqrt(1.0 + m * m) + math.asinh(m))

    @property
    def xi_bar(self):

        return self.cable_length / self.L


@attr.s(frozen=True, eq=False)
class CableGeometry:
    """Rest cable sampled on the simulation grid.

    ``rest_length`` is the discrete arclength of ``rest_profile``; it is the
    zero of every elongation so that the rest state is exactly unstretched.
    """

    rest_profile = attr.ib()
    xi_bar = attr.ib()
    xi_max = attr.ib()
    L_c = attr.ib()
    rest_length = attr.ib()
    half_width = attr.ib()

    @property
    def grid(self):

        return self.rest_profile


@attr.s(frozen=True, eq=False)
class CableState:
    """One cable evaluated at a deck configuration."""

    side = attr.ib()
    constraint = attr.ib()
    envelope = attr.ib()
    arclength = attr.ib()
    elongation = attr.ib()
    tension = attr.ib()
    force = attr.ib()


def chi(v):

    v = np.asarray(v, dtype=float)
    return v / np.sqrt(1.0 + v * v)


def gamma(v):

    v = np.asarray(v, dtype=float)
    return np.sqrt(1.0 + v * v)


def _arclength(result):

    return float(np.sum(gamma(result.slopes)) * result.env.dx)


def make_geometry(p, n):
    """Sample the convex rest cable, vanishing at both towers, on n cells."""

    curvature = 4.0 * p.f_sag / p.L ** 2
    rest = GridFunction.sample(lambda x: curvature * x * (x - p.L), 0.0, p.L, n)
    rest_length = float(np.sum(gamma(rest.cell_slopes())) * rest.dx)
    return CableGeometry(
        rest_profile=rest,
        xi_bar=p.xi_bar,
        xi_max=p.xi_max,
        L_c=p.cable_length,
        rest_length=rest_length,
        half_width=p.ell,
    )


def attachment(w, theta, geom, side):
    """Downward displacement of the deck edge carried by one cable."""

    check_side(side, SIDES)
    check_same_grid(w, geom.rest_profile)
    check_same_grid(theta, geom.rest_profile)
    lever = SIDES[side] * geom.half_width * np.sin(theta.values)
    return w.with_values(w.values + lever)


def cable_constraint(w, theta, geom, side):
    """Height of the cable attachment points measured upwards."""

    u = attachment(w, theta, geom, side)
    return u.with_values(geom.rest_profile.values - u.values)


def gamma_length(u, geom, envelope=convex_envelope, tol=DEFAULT_TOLERANCES):
    """Elongation of a cable whose attachments move down by ``u``."""

    check_same_grid(u, geom.rest_profile)
    q = u.with_values(geom.rest_profile.values - u.values)
    return _arclength(envelope(q, tol)) - geom.rest_length


def cable_state(
    w, theta, geom, p, side, envelope=convex_envelope, tol=DEFAULT_TOLERANCES
):

    q = cable_constraint(w, theta, geom, side)
    result = envelope(q, tol)
    arclength = _arclength(result)
    elongation = arclength - geom.rest_length
    tension = p.H * geom.xi_bar + p.A * p.E_c / geom.L_c * elongation
    return CableState(
        side=side,
        constraint=q,
        envelope=result,
        arclength=arclength,
        elongation=elongation,
        tension=tension,
        force=-tension * chi(result.slopes),
    )


def h_force(
    w, theta, geom, p, side, envelope=convex_envelope, tol=DEFAULT_TOLERANCES
):
    """Cable force density on the nodes, cell values averaged as in
    :func:`cells_to_nodes`."""

    state = cable_state(w, theta, geom, p, side, envelope, tol)
    return w.with_values(cells_to_nodes(state.force))


def cable_states(w, theta, geom, p, envelope=convex_envelope, tol=DEFAULT_TOLERANCES):

    return [cable_state(w, theta, geom, p, side, envelope, tol) for side in SIDES]


def stored_cable_energy(states, geom, p):

    stretch = sum(state.arclength for state in states) - 2.0 * geom.rest_length
    elastic = sum(state.elongation ** 2 for state in states)
    return p.H * geom.xi_bar * stretch + p.A * p.E_c / (2.0 * geom.L_c) * elastic


def cable_energy(w, theta, geom, p, envelope=convex_envelope, tol=DEFAULT_TOLERANCES):

    states = cable_states(w, theta, geom, p, envelope, tol)
    return stored_cable_energy(states, geom, p)


def deck_energy(state, p):
    """Kinetic, bending, torsional and gravitational energy of the deck."""

    k_w = wavenumbers(p.L, state.n_w)
    k_t = wavenumbers(p.L, state.n_theta)
    kinetic = 0.5 * p.M * np.sum(state.w_vel ** 2)
    kinetic += p.M * p.ell ** 2 / 6.0 * np.sum(state.theta_vel ** 2)
    bending = 0.5 * p.E * p.I * np.sum(k_w ** 4 * state.w_coeffs ** 2)
    stiffness = p.E * p.J * k_t ** 4 + p.G * p.K * k_t ** 2
    torsion = 0.5 * np.sum(stiffness * state.theta_coeffs ** 2)
    weight = -p.M * p.g * np.sum(basis_integrals(p.L, state.n_w) * state.w_coeffs)
    return float(kinetic + bending + torsion + weight)


def total_energy(state, geom, p, envelope=convex_envelope, tol=DEFAULT_TOLERANCES):

    w, theta = modal_fields(state, geom.rest_profile)
    return deck_energy(state, p) + cable_energy(w, theta, geom, p, envelope, tol)


def slackening_fraction(env_alpha, env_beta, L):
    """Share of the span over which each cable is detached from the deck."""

    return env_alpha.slack_length / L, env_beta.slack_length / L
