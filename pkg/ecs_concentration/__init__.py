"""Entanglement concentration for 3-mode GHZ-type entangled coherent states.

Simulates two linear-optics schemes that turn a partially entangled
``N [c1 |a a a> + c2 |-a -a -a>]`` into the maximally entangled
``N0 [|a a a> + |-a -a -a>]``:

1. Ancilla scheme: one copy plus a single-mode ancilla, one beam splitter
   and vacuum post-selection (:func:`run_protocol_1`).
2. Two-copy scheme: two copies, a pi phase shift and three beam splitters
   (:func:`run_protocol_2`).

States are kept symbolically as superpositions of coherent product kets, so
every overlap, norm and probability is exact up to floating point. The Fock
expansion in :mod:`ecs_concentration.fock` serves as an independent check.
"""

from __future__ import annotations

from .__about__ import __author__, __license__, __version__
from .errors import (
    EcsError,
    EmptySelectionError,
    InvalidConfigError,
    OracleRefusedError,
    ToleranceViolationError,
)
from .fock import coherent_to_fock, fock_overlap
from .measurement import (
    ProtocolKind,
    measure_remove_mode,
    post_select_vacuum,
    success_probability_paper,
)
from .optics import (
    BeamSplitterSpec,
    PhaseShiftSpec,
    apply_beam_splitter,
    apply_phase_shift,
    inject_vacuum,
)
from .protocols import (
    ProtocolConfig,
    ProtocolReport,
    analytic_peak,
    build_ghz_ecs,
    build_target_ghz_ecs,
    find_peak,
    run_protocol,
    run_protocol_1,
    run_protocol_2,
    sweep,
)
from .states import (
    StateSuperposition,
    coherent_overlap,
    fidelity,
    gram,
    inner_product,
    norm_squared,
    normalize,
    simplify,
    tensor,
)

__all__ = [
    "__version__",
    "__author__",
    "__license__",
    "EcsError",
    "EmptySelectionError",
    "InvalidConfigError",
    "OracleRefusedError",
    "ToleranceViolationError",
    "coherent_to_fock",
    "fock_overlap",
    "ProtocolKind",
    "measure_remove_mode",
    "post_select_vacuum",
    "success_probability_paper",
    "BeamSplitterSpec",
    "PhaseShiftSpec",
    "apply_beam_splitter",
    "apply_phase_shift",
    "inject_vacuum",
    "ProtocolConfig",
    "ProtocolReport",
    "analytic_peak",
    "build_ghz_ecs",
    "build_target_ghz_ecs",
    "find_peak",
    "run_protocol",
    "run_protocol_1",
    "run_protocol_2",
    "sweep",
    "StateSuperposition",
    "coherent_overlap",
    "fidelity",
    "gram",
    "inner_product",
    "norm_squared",
    "normalize",
    "simplify",
    "tensor",
]
