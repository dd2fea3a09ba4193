import numpy as np

from ..exceptions import ConfigError, NumericalError


def check_modes(n_w, n_theta):

    if n_w < 1 or n_theta < 1:
        message = "At least one mode per unknown is required, got n_w={0}, n_theta={1}"  # noqa: E501
        raise ConfigError(message.format(n_w, n_theta))


def check_velocities(positions, velocities, name):

    if positions.shape != velocities.shape:
        message = "{0!r} velocities should match {1} positions, got {2}"
        raise ConfigError(message.format(name, positions.size, velocities.size))


def check_time_step(dt):

    if not dt > 0:
        message = "Time step should be strictly positive, got {0!r}"
        raise ConfigError(message.format(dt))


def check_horizon(horizon, dt):

    if not horizon >= dt:
        message = "Time horizon {0!r} should not be shorter than the step {1!r}"
        raise ConfigError(message.format(horizon, dt))


def check_finite_state(state, where):

    arrays = (state.w_coeffs, state.theta_coeffs, state.w_vel, state.theta_vel)
    if not all(np.all(np.isfinite(array)) for array in arrays):
        message = "Non-finite modal state at t={0!r} while {1}"
        raise NumericalError(message.format(state.t, where), state=state.dump())


def check_finite_values(values, state, where):

    if not np.all(np.isfinite(values)):
        message = "Non-finite value at t={0!r} while {1}"
        raise NumericalError(message.format(state.t, where), state=state.dump())
