"""
slackbridge._validate
---------------------

Randomised property ledger behind ``slackbridge validate``.

Every entry draws its cases from a generator seeded with the ledger seed,
so two runs with the same seed check exactly the same functions.
"""

import logging

import attr
import numpy as np
from scipy.integrate import cumulative_trapezoid

from . import _markers
from ._bridge import BridgeParams, chi, gamma, make_geometry
from ._dynamics import DynamicsOptions, assemble_rhs, observe, simulate
from ._envelope import (
    DEFAULT_TOLERANCES,
    brute_force_envelope,
    convex_envelope,
    operator_T,
)
from ._grid import GridFunction
from ._modes import ModalState
from ._variation import (
    bump_chord_boundary,
    bump_quotients,
    bump_tangency_point,
    j_phi_pm,
    tangency_residual,
)


logger = logging.getLogger(__name__)


DEFAULT_SEED = 20240917

DEFAULT_CASES = 100


@attr.s(frozen=True)
class LedgerEntry:

    key = attr.ib()
    passed = attr.ib()
    cases = attr.ib()
    detail = attr.ib(default="")

    def line(self):

        status = "PASS" if self.passed else "FAIL"
        return "{0}: {1} ({2} cases) {3}".format(
            self.key, status, self.cases, self.detail
        ).rstrip()


def random_profile(rng, n, a=0.0, b=1.0, roughness=0.05):
    """Smooth random profile on [a, b] with a little grid noise."""

    x = np.linspace(a, b, n + 1)
    t = (x - a) / (b - a)
    values = rng.normal() + rng.normal() * t + rng.normal() * t ** 2
    for j in range(1, 6):
        phase = rng.uniform(0, np.pi)
        values = values + rng.normal() / j * np.sin(j * np.pi * t + phase)
    values = values + roughness * rng.normal(size=n + 1)
    return GridFunction(a, b, values)


def random_test_function(rng, n, a=0.0, b=1.0):
    """Random profile vanishing at both ends."""

    t = np.linspace(0.0, 1.0, n + 1)
    values = np.zeros(n + 1)
    for j in range(1, 5):
        values = values + rng.normal() / j * np.sin(j * np.pi * t)
    values[0] = values[-1] = 0.0
    return GridFunction(a, b, values)


def _grid_size(rng, low=16, high=128):

    return int(rng.integers(low, high + 1))


def _cell_l1(first, second, dx):

    return float(np.sum(np.abs(first - second)) * dx)


def envelope_oracle(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        f = random_profile(rng, _grid_size(rng, 8, 128))
        env = convex_envelope(f, tol).env.values
        oracle = brute_force_envelope(f).values
        worst = max(worst, float(np.max(np.abs(env - oracle))) / f.scale)
    return worst <= 1e-9, "max relative gap {0:.3e}".format(worst)


def t_monotone(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        f = random_profile(rng, _grid_size(rng))
        g = f.with_values(f.values + np.abs(rng.normal(size=f.n + 1)))
        excess = operator_T(f, tol).values - operator_T(g, tol).values
        worst = max(worst, float(np.max(excess)) / g.scale)
    return worst <= 1e-9, "max excess {0:.3e}".format(worst)


def t_l1_contraction(rng, cases, tol):

    worst = -np.inf
    for _ in range(cases):
        f = random_profile(rng, _grid_size(rng))
        g = random_profile(rng, f.n)
        lhs = operator_T(f, tol).l1_distance(operator_T(g, tol))
        worst = max(worst, lhs - f.l1_distance(g))
    return worst <= 1e-9, "max excess {0:.3e}".format(worst)


def t_integral(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        f = random_profile(rng, _grid_size(rng))
        gap = abs(operator_T(f, tol).integral() - f.integral())
        worst = max(worst, gap / (f.length * f.scale))
    return worst <= tol.quadrature, "max relative gap {0:.3e}".format(worst)


def projection_w11_bound(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        n = _grid_size(rng)
        b = float(rng.uniform(0.5, 4.0))
        F = random_test_function(rng, n, 0.0, b)
        G = random_test_function(rng, n, 0.0, b)
        noise = 0.05 * rng.normal(size=n + 1) * F.x * (b - F.x)
        F = F.with_values(F.values + noise)
        left, right = convex_envelope(F, tol), convex_envelope(G, tol)
        lhs = left.env.l1_distance(right.env)
        lhs += _cell_l1(left.slopes, right.slopes, F.dx)
        rhs = (b / 2.0 + 1.0) * _cell_l1(F.cell_slopes(), G.cell_slopes(), F.dx)
        worst = max(worst, lhs / rhs if rhs else 0.0)
    return worst <= 1.0 + 1e-9, "max ratio {0:.4f}".format(worst)


def _primitive_fields(f, phi, tol):

    primitive = f.with_values(cumulative_trapezoid(f.values, dx=f.dx, initial=0.0))
    result = convex_envelope(primitive, tol)
    field = j_phi_pm(primitive, phi, result, 1, tol)
    return result, field


def variation_stability_bound(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        n = _grid_size(rng)
        f, g = random_profile(rng, n), random_profile(rng, n)
        phi = random_test_function(rng, n)
        first, field_f = _primitive_fields(f, phi, tol)
        second, field_g = _primitive_fields(g, phi, tol)
        lhs = np.dot(first.slopes, field_f.deriv)
        lhs = abs(lhs - np.dot(second.slopes, field_g.deriv)) * f.dx
        bound = float(np.max(np.abs(phi.cell_slopes()))) * f.l1_distance(g)
        worst = max(worst, lhs / bound if bound else 0.0)
    return worst <= 1.0 + 1e-9, "max ratio {0:.4f}".format(worst)


def composition_bound(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        n = _grid_size(rng)
        f, g = random_profile(rng, n), random_profile(rng, n)
        phi = random_test_function(rng, n)
        first, field_f = _primitive_fields(f, phi, tol)
        second, field_g = _primitive_fields(g, phi, tol)
        lhs = np.dot(chi(first.slopes), field_f.deriv)
        lhs = abs(lhs - np.dot(chi(second.slopes), field_g.deriv)) * f.dx
        bound = float(np.max(np.abs(phi.cell_slopes()))) * f.l1_distance(g)
        worst = max(worst, lhs / bound if bound else 0.0)
    return worst <= 1.0 + 1e-9, "max ratio {0:.4f}".format(worst)


def reduction_identity(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        n = _grid_size(rng, 32, 256)
        f, phi = random_profile(rng, n), random_test_function(rng, n)
        result, field = _primitive_fields(f, phi, tol)
        reshaped = np.dot(result.slopes, field.deriv) * f.dx
        direct = np.dot(result.slopes, phi.cell_slopes()) * f.dx
        weight = np.sum(np.abs(result.slopes * phi.cell_slopes())) * f.dx
        scale = max(1.0, float(weight))
        worst = max(worst, abs(reshaped - direct) / scale)
    return worst <= tol.quadrature, "max residual {0:.3e}".format(worst)


def variation_bound_transfer(rng, cases, tol):

    worst = 0.0
    for _ in range(cases):
        n = _grid_size(rng)
        f, phi = random_profile(rng, n), random_test_function(rng, n)
        result = convex_envelope(f, tol)
        for sign in (1, -1):
            field = j_phi_pm(f, phi, result, sign, tol)
            ratio_values = field.values.sup_norm / max(phi.sup_norm, 1e-300)
            slope_bound = float(np.max(np.abs(phi.cell_slopes())))
            steepest = float(np.max(np.abs(field.deriv)))
            ratio_slopes = steepest / max(slope_bound, 1e-300)
            worst = max(worst, ratio_values, ratio_slopes)
    return worst <= 1.0 + 1e-9, "max ratio {0:.6f}".format(worst)


def variation_convergence(rng, cases, tol):

    failures = 0
    n = 256
    base = GridFunction.sample(lambda x: (x ** 2 - 1.0) ** 2, -2.0, 2.0, n)
    for _ in range(cases):
        phi = random_test_function(rng, n, -2.0, 2.0)
        bump = random_test_function(rng, n, -2.0, 2.0)
        reference = j_phi_pm(base, phi, convex_envelope(base, tol), 1, tol)
        distances = []
        for level in (1, 4, 16, 64, 256):
            f = base.with_values(base.values + bump.values / level)
            field = j_phi_pm(f, phi, convex_envelope(f, tol), 1, tol)
            distances.append(
                field.values.l1_distance(reference.values)
                + _cell_l1(field.deriv, reference.deriv, f.dx)
            )
        if distances[-1] > max(0.5 * distances[0], 1e-6):
            failures += 1
    return failures == 0, "{0} cases without decay".format(failures)


def chi_gamma_lipschitz(rng, cases, tol):

    v = rng.normal(scale=10.0, size=cases)
    w = rng.normal(scale=10.0, size=cases)
    gap = np.abs(v - w)
    chi_ratio = np.max(np.abs(chi(v) - chi(w)) - gap)
    gamma_ratio = np.max(np.abs(gamma(v) - gamma(w)) - gap)
    worst = float(max(chi_ratio, gamma_ratio))
    return worst <= 1e-12, "max excess {0:.3e}".format(worst)


def _small_bridge():

    params = BridgeParams()
    return params, make_geometry(params, 64)


def _random_state(rng, scale_w, scale_theta, n_w=10, n_theta=4):

    return ModalState(
        0.0,
        rng.normal(scale=scale_w, size=n_w),
        rng.normal(scale=scale_theta, size=n_theta),
        rng.normal(scale=scale_w, size=n_w),
        rng.normal(scale=scale_theta, size=n_theta),
    )


def theta_parity(rng, cases, tol):

    params, geometry = _small_bridge()
    options = DynamicsOptions(tolerances=tol)
    worst = 0.0
    for _ in range(cases):
        state = _random_state(rng, 20.0, 0.05)
        w_acc, theta_acc = assemble_rhs(state, geometry, params, options)
        mirror = assemble_rhs(state.mirrored(), geometry, params, options)
        scale = max(1.0, float(np.max(np.abs(np.concatenate((w_acc, theta_acc))))))
        gap = max(
            float(np.max(np.abs(w_acc - mirror[0]))),
            float(np.max(np.abs(theta_acc + mirror[1]))),
        )
        worst = max(worst, gap / scale)
    ic = _random_state(rng, 20.0, 0.05)
    short = DynamicsOptions(store_stride=0.05, tolerances=tol)
    forward = simulate(ic, 0.5, 0.05, geometry, params, short)
    mirror = simulate(ic.mirrored(), 0.5, 0.05, geometry, params, short)
    worst = max(
        worst,
        float(np.max(np.abs(forward.w_bar - mirror.w_bar))),
        float(np.max(np.abs(forward.theta_bar + mirror.theta_bar))),
    )
    return worst <= 1e-12, "max asymmetry {0:.3e}".format(worst)


def rigid_agreement(rng, cases, tol):

    params, geometry = _small_bridge()
    convexified = DynamicsOptions(tolerances=tol)
    rigid = attr.evolve(convexified, variant=_markers.rigid)
    worst, taut = 0.0, 0
    for _ in range(cases):
        state = _random_state(rng, 0.5, 1e-3)
        _, slack = observe(state, geometry, params, convexified)
        if any(slack):
            continue
        taut += 1
        first = np.concatenate(assemble_rhs(state, geometry, params, convexified))
        second = np.concatenate(assemble_rhs(state, geometry, params, rigid))
        worst = max(worst, float(np.max(np.abs(first - second))))
    return taut > 0 and worst == 0.0, "{0} taut states, max gap {1:.3e}".format(
        taut, worst
    )


def zeta_tangency(rng, cases, tol):

    zeta = bump_tangency_point()
    boundary = bump_chord_boundary(4000, tol)
    right, left = bump_quotients(4000, tol=tol)
    passed = (
        abs(zeta - 0.25) <= 0.01
        and tangency_residual(zeta) <= 1e-8
        and abs(boundary - zeta) <= 0.01
        and abs(right) < 1e-3 * abs(left)
    )
    detail = "zeta={0:.6f} boundary={1:.6f} right={2:.3e} left={3:.6f}".format(
        zeta, boundary, right, left
    )
    return passed, detail


LEDGER = (
    ("envelope-oracle", envelope_oracle),
    ("T-monotone", t_monotone),
    ("T-l1-contraction", t_l1_contraction),
    ("T-integral", t_integral),
    ("projection-w11-bound", projection_w11_bound),
    ("variation-stability-bound", variation_stability_bound),
    ("composition-bound", composition_bound),
    ("reduction-identity", reduction_identity),
    ("variation-bound-transfer", variation_bound_transfer),
    ("variation-convergence", variation_convergence),
    ("chi-gamma-lipschitz", chi_gamma_lipschitz),
    ("theta-parity", theta_parity),
    ("rigid-agreement", rigid_agreement),
    ("zeta-tangency", zeta_tangency),
)


def run_ledger(
    seed=DEFAULT_SEED, cases=DEFAULT_CASES, tol=DEFAULT_TOLERANCES, keys=None
):
    """Run the selected ledger entries and return their outcomes in order."""

    entries = []
    for index, (key, check) in enumerate(LEDGER):
        if keys is not None and key not in keys:
            continue
        rng = np.random.default_rng([seed, index])
        passed, detail = check(rng, cases, tol)
        count = 1 if key == "zeta-tangency" else cases
        entry = LedgerEntry(key=key, passed=bool(passed), cases=count, detail=detail)
        logger.info(entry.line())
        entries.append(entry)
    return entries
