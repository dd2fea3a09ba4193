"""
slackbridge.cli
---------------

Command line entry point of the ``slackbridge`` console script.

:license: BSD, see LICENSE for more details.
"""

import argparse
import logging
import sys

from dependencies.exceptions import DependencyError

from ._config import config_as_dict, load_config, parse_config, worker_count
from ._container import ThresholdTask, configure
from ._experiments import detect_instability, sweep
from ._io import write_run, write_thresholds
from ._validate import DEFAULT_CASES, DEFAULT_SEED, LEDGER, run_ledger
from ._variation import bump_chord_boundary, bump_quotients, bump_tangency_point
from .exceptions import BridgeError, ConfigError, NumericalError


logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _configure_logging(verbose, quiet):

    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    root = logging.getLogger("slackbridge")
    for handler in list(root.handlers):
        if handler.get_name() == __name__:
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler.set_name(__name__)
    root.addHandler(handler)
    root.setLevel(level)


def _read_config(args):

    if args.config is None:
        return parse_config({}, args.overrides)
    return load_config(args.config, args.overrides)


def simulate_command(args):

    config = _read_config(args)
    runner = configure(config).runner
    experiment = runner.experiment
    record = runner.record()
    extra = {
        "mode": experiment.mode,
        "amplitude": experiment.amplitude,
        "variant": experiment.variant,
        "unstable": detect_instability(record, experiment),
    }
    write_run(record, config.output.directory, config.output.formats, extra)
    return EXIT_OK


def _thresholds(config, modes, variants, workers):

    results = []
    for variant in variants:
        task = ThresholdTask(config, variant)
        results.extend(sweep(modes, variant, task, workers))
    return results


def threshold_command(args):

    config = _read_config(args)
    results = _thresholds(
        config, [config.experiment.mode], [config.experiment.variant], 1
    )
    write_thresholds(results, config.output.directory, config.output.formats)
    return EXIT_OK


def sweep_command(args):

    config = _read_config(args)
    workers = worker_count(args.workers)
    results = _thresholds(
        config, config.sweep.modes, config.sweep.variants, workers
    )
    write_thresholds(results, config.output.directory, config.output.formats)
    failed = [result.mode for result in results if result.failed]
    if failed:
        logger.warning("Modes without a threshold: %s", failed)
    return EXIT_OK


def validate_command(args):

    entries = run_ledger(seed=args.seed, cases=args.cases, keys=args.only or None)
    for entry in entries:
        print(entry.line())
    return EXIT_OK if all(entry.passed for entry in entries) else EXIT_FAILED


def example_command(args):

    zeta = bump_tangency_point()
    boundary = bump_chord_boundary(args.cells)
    right, left = bump_quotients(args.cells)
    print("zeta (tangency root): {0:.6f}".format(zeta))
    print("zeta (chord boundary): {0:.6f}".format(boundary))
    print("right quotient: {0:.6e}".format(right))
    print("left quotient: {0:.6e}".format(left))
    return EXIT_OK


def show_command(args):

    config = _read_config(args)
    for key, value in sorted(_flatten(config_as_dict(config)).items()):
        print("{0} = {1!r}".format(key, value))
    return EXIT_OK


def _flatten(data, prefix=""):

    flat = {}
    for key, value in data.items():
        name = "{0}.{1}".format(prefix, key) if prefix else key
        if isinstance(value, dict):
            flat.update(_flatten(value, name))
        else:
            flat[name] = value
    return flat


def _add_config_arguments(parser):

    parser.add_argument(
        "config", nargs="?", default=None, help="JSON run configuration."
    )
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="PATH=VALUE",
        help="Override one configuration key, e.g. numerics.dt=0.002.",
    )


def build_parser():

    parser = argparse.ArgumentParser(
        prog="slackbridge",
        description="Suspension bridges with convexified cables.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Integrate one excitation.")
    _add_config_arguments(simulate)
    simulate.set_defaults(handler=simulate_command)

    threshold = commands.add_parser(
        "threshold", help="Threshold of the configured mode."
    )
    _add_config_arguments(threshold)
    threshold.set_defaults(handler=threshold_command)

    sweep_parser = commands.add_parser("sweep", help="Thresholds of many modes.")
    _add_config_arguments(sweep_parser)
    sweep_parser.add_argument("--workers", type=int, default=None)
    sweep_parser.set_defaults(handler=sweep_command)

    validate = commands.add_parser("validate", help="Run the property ledger.")
    validate.add_argument("--seed", type=int, default=DEFAULT_SEED)
    validate.add_argument("--cases", type=int, default=DEFAULT_CASES)
    validate.add_argument(
        "--only",
        action="append",
        choices=[key for key, _ in LEDGER],
        help="Run only this entry; may be repeated.",
    )
    validate.set_defaults(handler=validate_command)

    example = commands.add_parser(
        "example-2-3", help="Non-differentiable convexification of a bump."
    )
    example.add_argument("--cells", type=int, default=4000)
    example.set_defaults(handler=example_command)

    show = commands.add_parser("show-config", help="Print the resolved config.")
    _add_config_arguments(show)
    show.set_defaults(handler=show_command)
    return parser


def main(argv=None):
    """Run the command line and return its exit code."""

    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except (ConfigError, DependencyError) as error:
        logger.error("Configuration error: %s", error)
        return EXIT_CONFIG
    except NumericalError as error:
        logger.error("Numerical failure: %s", error)
        if error.state is not None:
            logger.debug("Offending state: %s", error.state)
        return EXIT_NUMERICAL
    except BridgeError as error:
        logger.error("%s", error)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
