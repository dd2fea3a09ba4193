"""
slackbridge
-----------

Suspension bridges with convexified cables and slackening hangers.

:license: BSD, see LICENSE for more details.
"""

from ._bridge import (
    BridgeParams,
    CableGeometry,
    CableState,
    attachment,
    cable_constraint,
    cable_energy,
    cable_state,
    chi,
    deck_energy,
    gamma,
    gamma_length,
    h_force,
    make_geometry,
    slackening_fraction,
    total_energy,
)
from ._config import (
    Numerics,
    OutputSpec,
    RunConfig,
    SweepSpec,
    load_config,
    parse_config,
)
from ._container import RigidSimulation, Simulation
from ._dynamics import (
    DynamicsOptions,
    RunRecord,
    assemble_rhs,
    energy_drift,
    simulate,
    step,
)
from ._envelope import (
    EnvelopeResult,
    ToleranceConfig,
    brute_force_envelope,
    check_noflat,
    convex_envelope,
    operator_T,
    rigid_envelope,
)
from ._experiments import (
    ExperimentSpec,
    ThresholdResult,
    ThresholdSearch,
    build_ic,
    detect_instability,
    find_threshold,
    rigid_variant_rhs,
    sweep,
    verify_bracket,
)
from ._grid import GridFunction
from ._modes import ModalState
from ._variation import (
    VariationField,
    directional_quotient,
    g_theta_psi_pm,
    g_u_phi,
    j_phi,
    j_phi_pm,
    one_sided_limits,
)


__all__ = [
    "BridgeParams",
    "CableGeometry",
    "CableState",
    "DynamicsOptions",
    "EnvelopeResult",
    "ExperimentSpec",
    "GridFunction",
    "ModalState",
    "Numerics",
    "OutputSpec",
    "RigidSimulation",
    "RunConfig",
    "RunRecord",
    "Simulation",
    "SweepSpec",
    "ThresholdResult",
    "ThresholdSearch",
    "ToleranceConfig",
    "VariationField",
    "assemble_rhs",
    "attachment",
    "brute_force_envelope",
    "build_ic",
    "cable_constraint",
    "cable_energy",
    "cable_state",
    "check_noflat",
    "chi",
    "convex_envelope",
    "deck_energy",
    "detect_instability",
    "directional_quotient",
    "energy_drift",
    "find_threshold",
    "g_theta_psi_pm",
    "g_u_phi",
    "gamma",
    "gamma_length",
    "h_force",
    "j_phi",
    "j_phi_pm",
    "load_config",
    "make_geometry",
    "one_sided_limits",
    "operator_T",
    "parse_config",
    "rigid_envelope",
    "rigid_variant_rhs",
    "simulate",
    "slackening_fraction",
    "step",
    "sweep",
    "total_energy",
    "verify_bracket",
]
