import logging
import math
import multiprocessing

import attr
import numpy as np

from . import _markers
from ._checks.experiment import check_mode, check_ratios, check_search
from ._checks.params import check_nonnegative, check_positive
from ._dynamics import DynamicsOptions, assemble_rhs, simulate
from ._modes import ModalState
from .exceptions import BridgeError, SearchError


logger = logging.getLogger(__name__)


VARIANTS = (_markers.convexified, _markers.rigid)


@attr.s(frozen=True)
class ExperimentSpec:
    """One prevailing longitudinal mode excited at a given amplitude.

    Every other modal position and every velocity starts at
    ``perturbation_ratio * amplitude``; the run is declared unstable when a
    torsional amplitude reaches ``detection_ratio * amplitude``.
    """

    mode = attr.ib(default=9, converter=int)
    amplitude = attr.ib(default=2.31, converter=float, validator=check_nonnegative)
    perturbation_ratio = attr.ib(default=1e-3, converter=float)
    horizon = attr.ib(default=120.0, converter=float, validator=check_positive)
    detection_ratio = attr.ib(default=1e-2, converter=float)
    variant = attr.ib(
        default=_markers.convexified, validator=attr.validators.in_(VARIANTS)
    )

    def __attrs_post_init__(self):

        check_ratios(self.perturbation_ratio, self.detection_ratio)

    def at(self, amplitude):

        return attr.evolve(self, amplitude=amplitude)


@attr.s(frozen=True)
class ThresholdSearch:
    """Coarse upward scan followed by bisection.

    Without ``upper`` the scan starts at ``lower`` and moves by ``step``.
    With ``upper`` the bracket ``(lower, upper)`` is used directly and its
    upper end doubled until an instability is found. No probe goes above
    ``max_amplitude``.
    """

    lower = attr.ib(default=0.25, converter=float)
    upper = attr.ib(default=None, converter=attr.converters.optional(float))
    step = attr.ib(default=0.25, converter=float)
    resolution = attr.ib(default=0.01, converter=float)
    max_amplitude = attr.ib(default=64.0, converter=float)

    def __attrs_post_init__(self):

        check_search(self.lower, self.upper, self.step, self.resolution)


@attr.s(frozen=True)
class ThresholdResult:
    """Smallest unstable amplitude of one mode, with its diagnostics."""

    mode = attr.ib()
    variant = attr.ib()
    threshold = attr.ib(default=math.nan)
    energy_at_threshold = attr.ib(default=math.nan)
    mean_slackening = attr.ib(default=math.nan)
    bracket = attr.ib(default=(math.nan, math.nan))
    dominant_torsional_mode = attr.ib(default=0)
    probes = attr.ib(default=0)
    notes = attr.ib(default=(), converter=tuple)
    error = attr.ib(default=None)

    @property
    def bracket_width(self):

        return self.bracket[1] - self.bracket[0]

    @property
    def failed(self):

        return self.error is not None

    def as_row(self):

        return {
            "mode": self.mode,
            "variant": self.variant,
            "threshold": self.threshold,
            "energy_at_threshold": self.energy_at_threshold,
            "mean_slackening": self.mean_slackening,
            "bracket_lo": self.bracket[0],
            "bracket_hi": self.bracket[1],
            "bracket_width": self.bracket_width,
            "dominant_torsional_mode": self.dominant_torsional_mode,
            "probes": self.probes,
            "notes": "; ".join(self.notes),
            "error": self.error or "",
        }


def build_ic(spec, params, n_w, n_theta):
    """Initial modal state of the excitation protocol."""

    check_mode(spec.mode, n_w)
    scale = math.sqrt(params.L / 2.0)
    seed = scale * spec.perturbation_ratio * spec.amplitude
    w_coeffs = np.full(n_w, seed)
    w_coeffs[spec.mode - 1] = scale * spec.amplitude
    return ModalState(
        0.0,
        w_coeffs,
        np.full(n_theta, seed),
        np.full(n_w, seed),
        np.full(n_theta, seed),
    )


def detect_instability(record, spec):
    """Whether some torsional mode grew to ``detection_ratio * amplitude``."""

    if record.theta_bar.size == 0:
        return False
    peak = float(np.max(np.abs(record.theta_bar)))
    return peak > 0 and peak >= spec.detection_ratio * spec.amplitude


@attr.s(frozen=True)
class Probe:
    """Run the excitation protocol for one spec."""

    params = attr.ib()
    geometry = attr.ib()
    options = attr.ib()
    numerics = attr.ib()

    def __call__(self, spec):

        ic = build_ic(spec, self.params, self.numerics.n_w, self.numerics.n_theta)
        return simulate(
            ic, spec.horizon, self.numerics.dt, self.geometry, self.params, self.options
        )


class _Prober:
    def __init__(self, template, probe):

        self.template = template
        self.probe = probe
        self.records = {}

    def record(self, amplitude):

        if amplitude not in self.records:
            self.records[amplitude] = self.probe(self.template.at(amplitude))
        return self.records[amplitude]

    def unstable(self, amplitude):

        spec = self.template.at(amplitude)
        unstable = detect_instability(self.record(amplitude), spec)
        logger.info(
            "Mode %d at %.4f m: %s",
            self.template.mode,
            amplitude,
            "unstable" if unstable else "stable",
        )
        return unstable


def _scan(prober, search, notes):

    if search.upper is None:
        lo, amplitude = 0.0, search.lower
        while not prober.unstable(amplitude):
            lo, amplitude = amplitude, amplitude + search.step
            if amplitude > search.max_amplitude:
                message = "No instability found up to {0!r} m"
                raise SearchError(message.format(search.max_amplitude))
        return lo, amplitude
    lo, hi = search.lower, search.upper
    if prober.unstable(lo):
        notes.append("unstable at the lower end {0!r} m".format(lo))
        logger.warning(
            "Mode %d is already unstable at %.4f m", prober.template.mode, lo
        )
        return 0.0, lo
    while not prober.unstable(hi):
        lo, hi = hi, 2.0 * hi
        if hi > search.max_amplitude:
            message = "No instability found up to {0!r} m"
            raise SearchError(message.format(search.max_amplitude))
    return lo, hi


def find_threshold(mode, template, search, probe):
    """Bracket the torsional instability threshold of ``mode``.

    The first bracket found is bisected down to ``search.resolution``;
    the upper end is reported as the threshold. The detection map need not
    be monotone, so the bracket is the first flip met scanning upwards.
    """

    template = attr.evolve(template, mode=mode)
    prober = _Prober(template, probe)
    notes = []
    lo, hi = _scan(prober, search, notes)
    logger.info("Mode %d bracketed in (%.4f, %.4f) m", mode, lo, hi)
    while hi - lo > search.resolution:
        middle = 0.5 * (lo + hi)
        if prober.unstable(middle):
            hi = middle
        else:
            lo = middle
    record = prober.record(hi)
    summary = record.summary
    logger.info("Mode %d threshold %.4f m", mode, hi)
    return ThresholdResult(
        mode=mode,
        variant=template.variant,
        threshold=hi,
        energy_at_threshold=summary["energy_initial"],
        mean_slackening=summary["mean_slackening"],
        bracket=(lo, hi),
        dominant_torsional_mode=summary["dominant_torsional_mode"],
        probes=len(prober.records),
        notes=notes,
    )


def verify_bracket(result, template, probe):
    """Re-run both bracket ends and check that they straddle a detection flip."""

    lo, hi = result.bracket
    template = attr.evolve(template, mode=result.mode, variant=result.variant)
    lower, upper = template.at(lo), template.at(hi)
    stable_below = lo <= 0 or not detect_instability(probe(lower), lower)
    return stable_below and detect_instability(probe(upper), upper)


def rigid_variant_rhs(state, geom, p, opts=None):
    """Accelerations of the model whose hangers never slacken."""

    opts = attr.evolve(opts or DynamicsOptions(), variant=_markers.rigid)
    return assemble_rhs(state, geom, p, opts)


def _solve(task):

    solve, mode, variant = task
    try:
        return solve(mode)
    except BridgeError as error:
        logger.error("Mode %d (%s) failed: %s", mode, variant, error)
        return ThresholdResult(mode=mode, variant=variant, error=str(error))


def sweep(modes, variant, solve, workers=1):
    """Thresholds of every mode in ``modes``, ordered by mode.

    ``solve`` maps a mode to its :class:`ThresholdResult` and must be
    picklable when ``workers > 1``. Failures are reported on the result of
    the failing mode instead of stopping the sweep.
    """

    tasks = [(solve, mode, variant) for mode in modes]
    if not tasks:
        return []
    logger.info("Sweeping %d modes (%s) on %d workers", len(tasks), variant, workers)
    if workers <= 1 or len(tasks) == 1:
        results = [_solve(task) for task in tasks]
    else:
        with multiprocessing.Pool(processes=min(workers, len(tasks))) as pool:
            results = pool.map(_solve, tasks)
    return sorted(results, key=lambda result: result.mode)
