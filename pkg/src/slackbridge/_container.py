import logging

import attr
from dependencies import Injector, value

from . import _markers
from ._bridge import make_geometry
from ._dynamics import DynamicsOptions
from ._experiments import Probe, build_ic, find_threshold, verify_bracket


logger = logging.getLogger(__name__)


class Runner:
    """One integration of the configured excitation."""

    def __init__(self, experiment, params, geometry, options, initial_state, probe):

        self.experiment = experiment
        self.params = params
        self.geometry = geometry
        self.options = options
        self.initial_state = initial_state
        self.probe = probe

    def record(self):

        return self.probe(self.experiment)


class ThresholdFinder:
    """Threshold search whose bracket is confirmed by two fresh runs."""

    def __init__(self, experiment, search, probe):

        self.experiment = experiment
        self.search = search
        self.probe = probe

    def find(self):

        result = find_threshold(
            self.experiment.mode, self.experiment, self.search, self.probe
        )
        if verify_bracket(result, self.experiment, self.probe):
            return result
        logger.warning(
            "Mode %d: fresh runs do not confirm the bracket %r",
            result.mode,
            result.bracket,
        )
        return attr.evolve(result, notes=result.notes + ("bracket not confirmed",))


class Simulation(Injector):
    """Wire one run from the ``config`` it is given.

    Typical use is ``Simulation(config=config).runner.record()``.
    """

    @value
    def params(config):

        return config.bridge

    @value
    def numerics(config):

        return config.numerics

    @value
    def tolerances(config):

        return config.tolerances

    @value
    def search(config):

        return config.search

    @value
    def variant(config):

        return config.experiment.variant

    @value
    def route(numerics):

        return numerics.route

    @value
    def experiment(config, numerics, variant):

        spec = attr.evolve(config.experiment, variant=variant)
        if numerics.horizon is not None:
            spec = attr.evolve(spec, horizon=numerics.horizon)
        return spec

    @value
    def geometry(params, numerics):

        return make_geometry(params, numerics.cells)

    @value
    def options(numerics, variant, route, tolerances):

        return DynamicsOptions(
            integrator=numerics.integrator,
            route=route,
            variant=variant,
            store_stride=numerics.store_stride,
            tolerances=tolerances,
        )

    probe = Probe

    @value
    def initial_state(experiment, params, numerics):

        return build_ic(experiment, params, numerics.n_w, numerics.n_theta)

    runner = Runner

    threshold_finder = ThresholdFinder


class RigidSimulation(Simulation):
    """Hangers never slacken."""

    variant = _markers.rigid


CONTAINERS = {_markers.convexified: Simulation, _markers.rigid: RigidSimulation}


def configure(config, variant=None):
    """Container of ``config``, with the hanger model of ``variant`` if given."""

    return CONTAINERS[variant or config.experiment.variant](config=config)


@attr.s(frozen=True)
class ThresholdTask:
    """Picklable threshold search of one mode, used by the sweep workers."""

    config = attr.ib()
    variant = attr.ib()

    def __call__(self, mode):

        experiment = attr.evolve(self.config.experiment, mode=mode)
        config = attr.evolve(self.config, experiment=experiment)
        return configure(config, self.variant).threshold_finder.find()
