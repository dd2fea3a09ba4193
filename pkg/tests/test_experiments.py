import math

import attr
import numpy as np
import pytest

from slackbridge import (
    BridgeParams,
    DynamicsOptions,
    ExperimentSpec,
    Numerics,
    RunRecord,
    ThresholdResult,
    ThresholdSearch,
    assemble_rhs,
    build_ic,
    detect_instability,
    energy_drift,
    find_threshold,
    make_geometry,
    rigid_variant_rhs,
    simulate,
    sweep,
    verify_bracket,
)
from slackbridge._dynamics import observe
from slackbridge._experiments import Probe
from slackbridge.exceptions import ConfigError, SearchError


class FakeProbe(object):
    """Torsion grows beyond a fixed amplitude and nowhere else."""

    def __init__(self, threshold):

        self.threshold = threshold
        self.calls = []

    def __call__(self, spec):

        self.calls.append(spec.amplitude)
        peak = spec.amplitude if spec.amplitude >= self.threshold else 0.0
        return RunRecord(
            times=np.array([0.0, 1.0]),
            w_bar=np.array([[spec.amplitude], [spec.amplitude]]),
            theta_bar=np.array([[0.0, 0.0], [0.0, peak]]),
            energy=np.array([spec.amplitude ** 2, spec.amplitude ** 2]),
            slack_alpha=np.array([0.1, 0.3]),
            slack_beta=np.array([0.1, 0.3]),
        )


def test_initial_state_of_the_protocol():
    """The prevailing mode carries the amplitude, the rest a small seed."""

    params = BridgeParams()
    spec = ExperimentSpec(mode=3, amplitude=2.0, perturbation_ratio=1e-3)
    state = build_ic(spec, params, 10, 4)
    w_bar = state.w_bar(params.L)

    assert w_bar[2] == pytest.approx(2.0)
    assert np.allclose(np.delete(w_bar, 2), 2e-3)
    assert np.allclose(state.theta_bar(params.L), 2e-3)
    assert np.allclose(state.w_vel, 2e-3 * math.sqrt(params.L / 2.0))
    assert state.t == 0.0


def test_excited_mode_must_be_resolved():
    """The prevailing mode must belong to the Galerkin basis."""

    with pytest.raises(ConfigError) as exc_info:
        build_ic(ExperimentSpec(mode=11), BridgeParams(), 10, 4)

    assert str(exc_info.value) == "Excited mode should lie in [1, 10], got 11"


def test_ratios_are_ordered():
    """The seed must stay below the detection level."""

    with pytest.raises(ConfigError) as exc_info:
        ExperimentSpec(perturbation_ratio=0.1, detection_ratio=0.01)

    assert str(exc_info.value) == (
        "Expected 0 <= perturbation_ratio < detection_ratio < 1, got 0.1 and 0.01"
    )


def test_search_is_validated():
    """Bracket ends must be ordered."""

    with pytest.raises(ConfigError) as exc_info:
        ThresholdSearch(lower=2.0, upper=1.0)

    assert str(exc_info.value) == (
        "Search bracket should satisfy lower < upper, got (2.0, 1.0)"
    )


@pytest.mark.parametrize(
    "ratio, expected", [(0.0099, False), (0.01, True), (0.5, True)]
)
def test_detection(ratio, expected):
    """A torsional amplitude of one percent of the excitation is unstable."""

    spec = ExperimentSpec(amplitude=2.0)
    record = RunRecord(
        times=np.array([0.0]),
        w_bar=np.zeros((1, 2)),
        theta_bar=np.array([[0.0, -ratio * 2.0]]),
        energy=np.zeros(1),
        slack_alpha=np.zeros(1),
        slack_beta=np.zeros(1),
    )

    assert detect_instability(record, spec) is expected


def test_threshold_by_scan_and_bisection():
    """The threshold lies within one resolution above the flip."""

    probe = FakeProbe(3.3)
    result = find_threshold(9, ExperimentSpec(), ThresholdSearch(), probe)

    assert result.mode == 9
    assert result.variant == "convexified"
    assert 3.3 <= result.threshold <= 3.31
    assert result.bracket[1] == result.threshold
    assert 0.0 < result.bracket_width <= 0.01
    assert result.energy_at_threshold == pytest.approx(result.threshold ** 2)
    assert result.mean_slackening == pytest.approx(0.2)
    assert result.dominant_torsional_mode == 2
    assert result.probes == len(set(probe.calls))
    assert result.notes == ()
    assert not result.failed


def test_threshold_from_explicit_bracket():
    """The upper end is doubled until torsion grows."""

    probe = FakeProbe(3.3)
    search = ThresholdSearch(lower=1.0, upper=2.0, resolution=0.05)
    result = find_threshold(4, ExperimentSpec(), search, probe)

    assert probe.calls[:3] == [1.0, 2.0, 4.0]
    assert 3.3 <= result.threshold <= 3.35
    assert result.bracket_width <= 0.05


def test_unstable_lower_end_is_noted():
    """A bracket starting above the threshold is reported, not trusted."""

    probe = FakeProbe(0.5)
    search = ThresholdSearch(lower=1.0, upper=2.0, resolution=0.5)
    result = find_threshold(1, ExperimentSpec(), search, probe)

    assert result.notes == ("unstable at the lower end 1.0 m",)
    assert result.bracket[0] < 1.0


def test_search_gives_up_above_the_cap():
    """No flip below the largest amplitude is an error."""

    probe = FakeProbe(100.0)
    search = ThresholdSearch(step=4.0, max_amplitude=16.0)

    with pytest.raises(SearchError) as exc_info:
        find_threshold(1, ExperimentSpec(), search, probe)

    assert str(exc_info.value) == "No instability found up to 16.0 m"


def test_verify_bracket():
    """Fresh probes of both ends straddle the flip."""

    probe = FakeProbe(3.3)
    result = find_threshold(9, ExperimentSpec(), ThresholdSearch(), probe)

    assert verify_bracket(result, ExperimentSpec(), FakeProbe(3.3))
    assert not verify_bracket(result, ExperimentSpec(), FakeProbe(10.0))


def solve_fake(mode):

    if mode == 2:
        raise SearchError("No instability found up to 64.0 m")
    return ThresholdResult(mode=mode, variant="rigid", threshold=float(mode))


def test_sweep_orders_and_annotates():
    """Failures of one mode do not stop the others."""

    results = sweep([3, 1, 2], "rigid", solve_fake)

    assert [result.mode for result in results] == [1, 2, 3]
    assert results[0].threshold == 1.0
    assert results[1].failed
    assert results[1].error == "No instability found up to 64.0 m"
    assert math.isnan(results[1].threshold)
    assert sweep([], "rigid", solve_fake) == []


def test_result_row():
    """Rows carry the bracket ends and joined notes."""

    result = ThresholdResult(
        mode=9,
        variant="convexified",
        threshold=2.31,
        bracket=(2.30, 2.31),
        notes=["first", "second"],
    )
    row = result.as_row()

    assert list(row) == [
        "mode",
        "variant",
        "threshold",
        "energy_at_threshold",
        "mean_slackening",
        "bracket_lo",
        "bracket_hi",
        "bracket_width",
        "dominant_torsional_mode",
        "probes",
        "notes",
        "error",
    ]
    assert row["bracket_lo"] == 2.30
    assert row["notes"] == "first; second"
    assert row["error"] == ""
    assert math.isnan(row["energy_at_threshold"])


def test_rigid_variant_rhs():
    """The rigid model is the convexified one with the identity envelope."""

    params = BridgeParams()
    geometry = make_geometry(params, 64)
    state = build_ic(ExperimentSpec(mode=9, amplitude=2.31), params, 10, 4)
    options = DynamicsOptions(variant="rigid")

    first = rigid_variant_rhs(state, geometry, params)
    second = assemble_rhs(state, geometry, params, options)

    assert np.array_equal(first[0], second[0])
    assert np.array_equal(first[1], second[1])


def test_probe_runs_the_protocol():
    """A probe integrates the initial state of its spec."""

    params = BridgeParams()
    geometry = make_geometry(params, 32)
    numerics = Numerics(cells=32, dt=0.05, n_w=10, n_theta=4)
    probe = Probe(params, geometry, DynamicsOptions(store_stride=0.05), numerics)
    spec = ExperimentSpec(mode=1, amplitude=0.5, horizon=0.1)

    record = probe(spec)

    assert record.times[-1] == pytest.approx(0.1)
    assert record.w_bar[0, 0] == pytest.approx(0.5)


@pytest.mark.parametrize(
    "mode, amplitude, slack",
    [(9, 0.60, False), (9, 2.31, True), (10, 0.55, False), (10, 0.75, True)],
)
def test_initial_slackening(mode, amplitude, slack):
    """Hangers slacken at rest only above the curvature of the cable."""

    params = BridgeParams()
    geometry = make_geometry(params, 1024)
    state = build_ic(ExperimentSpec(mode=mode, amplitude=amplitude), params, 10, 4)
    _, fractions = observe(state, geometry, params, DynamicsOptions())

    assert (sum(fractions) > 0.0) is slack


def test_spec_at_keeps_other_fields():
    """Moving the amplitude keeps the rest of the protocol."""

    spec = ExperimentSpec(mode=4, horizon=30.0)

    assert spec.at(1.5) == attr.evolve(spec, amplitude=1.5)
    assert spec.at(1.5).horizon == 30.0


@pytest.mark.slow
def test_tenth_mode_below_threshold_stays_stable():
    """Two minutes of the tenth mode at 0.75 m slacken without torsion growth."""

    params = BridgeParams()
    geometry = make_geometry(params, 512)
    spec = ExperimentSpec(mode=10, amplitude=0.75, horizon=120.0)
    ic = build_ic(spec, params, 10, 4)

    record = simulate(ic, spec.horizon, 1e-3, geometry, params, DynamicsOptions())

    assert not detect_instability(record, spec)
    assert 0.10 <= record.mean_slackening <= 0.17
    assert energy_drift(record) < 1e-6
