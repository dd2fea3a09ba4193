import logging
import math

import attr
import numpy as np

from . import _markers
from ._bridge import SIDES, cable_states, deck_energy, slackening_fraction
from ._bridge import stored_cable_energy
from ._checks.state import check_finite_state, check_finite_values
from ._checks.state import check_horizon, check_time_step
from ._envelope import DEFAULT_TOLERANCES, ToleranceConfig, convex_envelope
from ._envelope import rigid_envelope
from ._modes import ModalState, basis_integrals, modal_fields, sine_basis
from ._modes import wavenumbers
from ._variation import g_theta_psi_pm, g_u_phi, j_phi, j_phi_pm
from .exceptions import NoFlatError


logger = logging.getLogger(__name__)


DRIFT_BOUND = 4e-3

ENVELOPES = {_markers.convexified: convex_envelope, _markers.rigid: rigid_envelope}


@attr.s(frozen=True)
class DynamicsOptions:
    """How the Galerkin system is integrated.

    ``variant`` selects the convexified or rigid hanger model, ``route``
    the reduced or explicit evaluation of the cable loads and
    ``store_stride`` the spacing in seconds of the recorded samples.
    """

    integrator = attr.ib(
        default=_markers.rk4,
        validator=attr.validators.in_((_markers.rk4, _markers.verlet)),
    )
    route = attr.ib(
        default=_markers.reduced,
        validator=attr.validators.in_((_markers.reduced, _markers.explicit)),
    )
    variant = attr.ib(
        default=_markers.convexified, validator=attr.validators.in_(ENVELOPES)
    )
    store_stride = attr.ib(default=0.01, converter=float)
    tolerances = attr.ib(
        default=DEFAULT_TOLERANCES,
        validator=attr.validators.instance_of(ToleranceConfig),
    )

    @property
    def envelope(self):

        return ENVELOPES[self.variant]


@attr.s(frozen=True, eq=False)
class RunRecord:
    """Stored samples of one simulation.

    Rows of ``w_bar`` and ``theta_bar`` are the normalized modal amplitudes
    at ``times``.
    """

    times = attr.ib()
    w_bar = attr.ib()
    theta_bar = attr.ib()
    energy = attr.ib()
    slack_alpha = attr.ib()
    slack_beta = attr.ib()

    @property
    def max_w_bar(self):

        return np.max(np.abs(self.w_bar), axis=0)

    @property
    def max_theta_bar(self):

        return np.max(np.abs(self.theta_bar), axis=0)

    @property
    def mean_slackening(self):

        return float(np.mean(0.5 * (self.slack_alpha + self.slack_beta)))

    @property
    def summary(self):

        max_theta = self.max_theta_bar
        return {
            "duration": float(self.times[-1]),
            "samples": int(self.times.size),
            "energy_initial": float(self.energy[0]),
            "energy_drift": energy_drift(self),
            "max_w_bar": [float(v) for v in self.max_w_bar],
            "max_theta_bar": [float(v) for v in max_theta],
            "dominant_torsional_mode": int(np.argmax(max_theta)) + 1,
            "mean_slackening": self.mean_slackening,
            "mean_slackening_alpha": float(np.mean(self.slack_alpha)),
            "mean_slackening_beta": float(np.mean(self.slack_beta)),
        }


def energy_drift(record):
    """Spread of the recorded energy relative to its initial value.

    Falls back to the absolute spread when the initial energy vanishes.
    """

    spread = float(np.max(record.energy) - np.min(record.energy))
    initial = abs(float(record.energy[0]))
    if initial == 0:
        return spread
    return spread / initial


def gravity_load(p, count):
    """Modal gravity term ``Mg sqrt(2L)((-1)^k - 1)/(k pi)``."""

    return -p.M * p.g * basis_integrals(p.L, count)


def _explicit_loads(cable, theta, basis_w, basis_t, opts):
    # Variation fields of every basis function, two-sided when the
    # constraint stays off its affine pieces and right-sided otherwise.
    tol = opts.tolerances
    q, env = cable.constraint, cable.envelope
    sign = SIDES[cable.side]
    loads_w = np.empty(basis_w.shape[0])
    loads_t = np.empty(basis_t.shape[0])
    for k, row in enumerate(basis_w):
        phi = q.with_values(row)
        try:
            field = j_phi(q, phi, env, tol)
        except NoFlatError:
            field = j_phi_pm(q, phi, env, 1, tol)
        loads_w[k] = -np.dot(cable.force, field.deriv) * q.dx
    for k, row in enumerate(basis_t):
        psi = q.with_values(row)
        try:
            field = g_u_phi(theta, psi, np.cos, env, tol)
        except NoFlatError:
            field = g_theta_psi_pm(theta, psi, env, 1, tol)
        loads_t[k] = -sign * np.dot(cable.force, field.deriv) * q.dx
    return loads_w, loads_t


def cable_loads(state, geom, p, opts):
    """Generalized cable forces on the longitudinal and torsional modes."""

    w, theta = modal_fields(state, geom.rest_profile)
    n = geom.rest_profile.n
    basis_w = sine_basis(p.L, n, state.n_w)
    basis_t = sine_basis(p.L, n, state.n_theta)
    loads_w = np.zeros(state.n_w)
    loads_t = np.zeros(state.n_theta)
    cables = cable_states(w, theta, geom, p, opts.envelope, opts.tolerances)
    if opts.route == _markers.reduced:
        weighted = np.diff(basis_t * np.cos(theta.values), axis=1)
        increments = np.diff(basis_w, axis=1)
        for cable in cables:
            loads_w = loads_w - increments @ cable.force
            loads_t = loads_t - SIDES[cable.side] * (weighted @ cable.force)
    else:
        for cable in cables:
            extra_w, extra_t = _explicit_loads(cable, theta, basis_w, basis_t, opts)
            loads_w = loads_w + extra_w
            loads_t = loads_t + extra_t
    return loads_w, loads_t


def assemble_rhs(state, geom, p, opts):
    """Modal accelerations of the Galerkin system at ``state``."""

    check_finite_state(state, "evaluating the modal accelerations")
    k_w = wavenumbers(p.L, state.n_w)
    k_t = wavenumbers(p.L, state.n_theta)
    loads_w, loads_t = cable_loads(state, geom, p, opts)
    check_finite_values(loads_w, state, "evaluating longitudinal cable loads")
    check_finite_values(loads_t, state, "evaluating torsional cable loads")
    bending = p.E * p.I * k_w ** 4
    w_acc = (-bending * state.w_coeffs - gravity_load(p, state.n_w) + loads_w) / p.M
    torsion = (p.E * p.J * k_t ** 4 + p.G * p.K * k_t ** 2) / p.ell
    theta_acc = (-torsion * state.theta_coeffs + loads_t) / (p.M * p.ell / 3.0)
    return w_acc, theta_acc


def _moved(state, dt, w_vel, theta_vel, w_acc, theta_acc):

    return ModalState(
        state.t + dt,
        state.w_coeffs + dt * w_vel,
        state.theta_coeffs + dt * theta_vel,
        state.w_vel + dt * w_acc,
        state.theta_vel + dt * theta_acc,
    )


def _weighted(first, second, third, fourth):

    return first + 2.0 * second + 2.0 * third + fourth


def _rk4(state, dt, rhs):

    a1 = rhs(state)
    s2 = _moved(state, 0.5 * dt, state.w_vel, state.theta_vel, *a1)
    a2 = rhs(s2)
    s3 = _moved(state, 0.5 * dt, s2.w_vel, s2.theta_vel, *a2)
    a3 = rhs(s3)
    s4 = _moved(state, dt, s3.w_vel, s3.theta_vel, *a3)
    a4 = rhs(s4)
    sixth = dt / 6.0
    w_vel = _weighted(state.w_vel, s2.w_vel, s3.w_vel, s4.w_vel)
    theta_vel = _weighted(state.theta_vel, s2.theta_vel, s3.theta_vel, s4.theta_vel)
    return ModalState(
        state.t + dt,
        state.w_coeffs + sixth * w_vel,
        state.theta_coeffs + sixth * theta_vel,
        state.w_vel + sixth * _weighted(a1[0], a2[0], a3[0], a4[0]),
        state.theta_vel + sixth * _weighted(a1[1], a2[1], a3[1], a4[1]),
    )


def _verlet(state, dt, rhs):

    w_acc, theta_acc = rhs(state)
    w_half = state.w_vel + 0.5 * dt * w_acc
    theta_half = state.theta_vel + 0.5 * dt * theta_acc
    drifted = ModalState(
        state.t + dt,
        state.w_coeffs + dt * w_half,
        state.theta_coeffs + dt * theta_half,
        w_half,
        theta_half,
    )
    w_acc, theta_acc = rhs(drifted)
    return attr.evolve(
        drifted,
        w_vel=w_half + 0.5 * dt * w_acc,
        theta_vel=theta_half + 0.5 * dt * theta_acc,
    )


SCHEMES = {_markers.rk4: _rk4, _markers.verlet: _verlet}


def step(state, dt, geom, p, opts):
    """Advance ``state`` by ``dt`` with the configured scheme."""

    check_time_step(dt)

    def rhs(current):

        return assemble_rhs(current, geom, p, opts)

    advanced = SCHEMES[opts.integrator](state, dt, rhs)
    check_finite_state(advanced, "advancing the modal state")
    return advanced


def observe(state, geom, p, opts):
    """Energy and slackening fractions of the configuration at ``state``."""

    w, theta = modal_fields(state, geom.rest_profile)
    cables = cable_states(w, theta, geom, p, opts.envelope, opts.tolerances)
    energy = deck_energy(state, p) + stored_cable_energy(cables, geom, p)
    slack = slackening_fraction(cables[0].envelope, cables[1].envelope, p.L)
    return energy, slack


def simulate(ic, T, dt, geom, p, opts):
    """Integrate from ``ic`` over ``[ic.t, ic.t + T]`` and record samples."""

    check_time_step(dt)
    check_horizon(T, dt)
    steps = int(round(T / dt))
    stride = max(1, int(round(opts.store_stride / dt)))
    norm = math.sqrt(2.0 / p.L)
    rows = []
    logger.info(
        "Simulating %d steps of %s s with %s (%s hangers)",
        steps,
        dt,
        opts.integrator,
        opts.variant,
    )
    state = ic
    for index in range(steps + 1):
        if index % stride == 0 or index == steps:
            energy, (alpha, beta) = observe(state, geom, p, opts)
            w_bar, theta_bar = norm * state.w_coeffs, norm * state.theta_coeffs
            rows.append((state.t, w_bar, theta_bar, energy, alpha, beta))
            logger.debug(
                "t=%.4f energy=%.6e slack=(%.4f, %.4f)", state.t, energy, alpha, beta
            )
        if index < steps:
            state = step(state, dt, geom, p, opts)
    record = RunRecord(
        times=np.array([row[0] for row in rows]),
        w_bar=np.array([row[1] for row in rows]),
        theta_bar=np.array([row[2] for row in rows]),
        energy=np.array([row[3] for row in rows]),
        slack_alpha=np.array([row[4] for row in rows]),
        slack_beta=np.array([row[5] for row in rows]),
    )
    drift = energy_drift(record)
    if drift > DRIFT_BOUND:
        logger.warning("Energy drift %.3e exceeds the conservation bound", drift)
    logger.info("Simulation finished at t=%s s, drift %.3e", state.t, drift)
    return record
