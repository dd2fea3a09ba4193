import attr
import numpy as np
from scipy.optimize import bisect

from . import _markers
from ._checks.grid import check_same_grid, check_sign, check_vanishing_ends
from ._checks.variation import check_flat_free, check_quotient_steps
from ._envelope import DEFAULT_TOLERANCES, check_noflat, convex_envelope, lower_hull
from ._grid import GridFunction


KINDS = (
    _markers.j_plus,
    _markers.j_minus,
    _markers.j,
    _markers.g,
    _markers.g_plus,
    _markers.g_minus,
)

QUOTIENT_STEPS = (1e-4, 1e-5, 1e-6)


@attr.s(frozen=True, eq=False)
class VariationField:
    """Reshaped test function together with its per-cell derivative."""

    values = attr.ib()
    deriv = attr.ib()
    kind = attr.ib(validator=attr.validators.in_(KINDS))


def _field(grid, values, kind):

    result = grid.with_values(values)
    return VariationField(values=result, deriv=result.cell_slopes(), kind=kind)


def _flat_free(env):

    return not any(env.contact_mask[p + 1 : q].any() for p, q in env.chords)


def _interpolate_chords(seed, chords):

    values = np.array(seed, dtype=float)
    for p, q in chords:
        nodes = np.arange(p, q + 1)
        values[p : q + 1] = np.interp(nodes, [p, q], [seed[p], seed[q]])
    return values


def _reshape(seed, env, sign):
    # The seed is kept on the contact nodes of each chord and replaced by
    # +inf (sign +1) or -inf (sign -1) elsewhere; the envelope of such a
    # function is the hull of its finite part.
    values = np.array(seed, dtype=float)
    for p, q in env.chords:
        support = p + np.flatnonzero(env.contact_mask[p : q + 1])
        kept = support[lower_hull(sign * values[support], support)]
        nodes = np.arange(p, q + 1)
        values[p : q + 1] = np.interp(nodes, kept, seed[kept])
    return values


def j_phi(f, phi, env, tol=DEFAULT_TOLERANCES):
    """Two-sided variation of the convexified integral along ``phi``.

    Equal to ``phi`` on the contact set and affine across every affine
    interval. Raises :class:`NoFlatError` when ``f`` touches one of the
    affine pieces of its envelope.
    """

    check_same_grid(f, phi)
    check_same_grid(f, env.env)
    check_vanishing_ends(phi, tol.contact)
    check_flat_free(check_noflat(f, env, tol))
    values = _interpolate_chords(phi.values, env.chords)
    return _field(phi, values, _markers.j)


def j_phi_pm(f, phi, env, sign, tol=DEFAULT_TOLERANCES):
    """One-sided variation for ``s -> 0+`` (``sign=1``) or ``s -> 0-``."""

    check_sign(sign)
    check_same_grid(f, phi)
    check_same_grid(f, env.env)
    check_vanishing_ends(phi, tol.contact)
    values = _reshape(phi.values, env, sign)
    kind = _markers.j_plus if sign > 0 else _markers.j_minus
    return _field(phi, values, kind)


def g_u_phi(u, phi, lambda_prime, env_of_f, tol=DEFAULT_TOLERANCES):
    """Variation of the convexified integral of ``Lambda(u)`` along ``phi``.

    ``lambda_prime`` is applied elementwise to the samples of ``u``.
    """

    check_same_grid(u, phi)
    check_same_grid(u, env_of_f.env)
    check_vanishing_ends(phi, tol.contact)
    check_flat_free(_flat_free(env_of_f))
    seed = phi.values * np.asarray(lambda_prime(u.values), dtype=float)
    values = _interpolate_chords(seed, env_of_f.chords)
    return _field(phi, values, _markers.g)


def g_theta_psi_pm(theta, psi, env, sign, tol=DEFAULT_TOLERANCES):
    """One-sided variation of the convexified integral of ``sin(theta)``
    along ``psi``, built on the seed ``psi * cos(theta)``."""

    check_sign(sign)
    check_same_grid(theta, psi)
    check_same_grid(theta, env.env)
    check_vanishing_ends(psi, tol.contact)
    seed = psi.values * np.cos(theta.values)
    values = _reshape(seed, env, sign)
    kind = _markers.g_plus if sign > 0 else _markers.g_minus
    return _field(psi, values, kind)


def directional_quotient(f, phi, s_values, tol=DEFAULT_TOLERANCES):
    """Difference quotients of the convexified integral of ``f`` along ``phi``."""

    check_quotient_steps(s_values)
    check_same_grid(f, phi)
    base = convex_envelope(f, tol).env.integral()
    quotients = []
    for s in s_values:
        moved = f.with_values(f.values + s * phi.values)
        quotients.append((convex_envelope(moved, tol).env.integral() - base) / s)
    return quotients


def one_sided_limits(f, phi, steps=QUOTIENT_STEPS, tol=DEFAULT_TOLERANCES):
    """Right and left limits of the quotients, extrapolated linearly in s."""

    limits = []
    for sign in (1.0, -1.0):
        s_values = [sign * abs(s) for s in steps]
        quotients = directional_quotient(f, phi, s_values, tol)
        limits.append(float(np.polyfit(s_values, quotients, 1)[1]))
    return tuple(limits)


# Smooth bump supported on (-1, 1), seen on (-2, 2).

BUMP_INTERVAL = (-2.0, 2.0)


def bump_profile(x):

    x = np.asarray(x, dtype=float)
    values = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    values[inside] = np.exp(1.0 / (x[inside] ** 2 - 1.0))
    return values


def bump_tangency_point(xtol=1e-12):
    """Abscissa in (0, 1) where the tangent of the bump passes through (2, 0)."""

    def residual(z):

        return 2.0 * z * (2.0 - z) / (z ** 2 - 1.0) ** 2 - 1.0

    return float(bisect(residual, 0.01, 0.9, xtol=xtol))


def tangency_residual(z):

    value = np.exp(1.0 / (z ** 2 - 1.0))
    slope = value * (-2.0 * z / (z ** 2 - 1.0) ** 2)
    return float(abs(slope * (z - 2.0) - value))


def bump_grid(n):

    a, b = BUMP_INTERVAL
    return GridFunction.sample(bump_profile, a, b, n)


def bump_chord_boundary(n=4000, tol=DEFAULT_TOLERANCES):
    """Left end of the chord of the envelope of the reversed bump reaching b."""

    phi = bump_grid(n)
    result = convex_envelope(phi.with_values(-phi.values), tol)
    for p, q in result.chords:
        if q == n:
            return float(phi.x[p])
    return float(phi.b)


def bump_quotients(n=4000, steps=QUOTIENT_STEPS, tol=DEFAULT_TOLERANCES):
    """One-sided limits of the convexified integral of ``s * bump``.

    The profile is identically zero, so its envelope is one flat chord and
    the right and left limits differ.
    """

    phi = bump_grid(n)
    return one_sided_limits(phi.with_values(np.zeros(n + 1)), phi, steps, tol)
