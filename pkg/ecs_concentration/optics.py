"""Linear-optical elements acting on coherent superpositions.

Coherent product states stay coherent product states under passive linear
optics, so every element here is a per-term map on amplitudes and leaves the
coefficients alone.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .errors import InvalidConfigError, LabelCollisionError
from .states import ModeLabel, StateSuperposition, Term

__all__ = [
    "BeamSplitterSpec",
    "PhaseShiftSpec",
    "apply_beam_splitter",
    "apply_phase_shift",
    "inject_vacuum",
]

logger = logging.getLogger(__name__)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class BeamSplitterSpec:
    """A 50:50 beam splitter with its output relabeling.

    ``(a, b)`` on ``(mode_in_1, mode_in_2)`` becomes
    ``((a + b)/sqrt(2), (a - b)/sqrt(2))`` on ``(mode_out_1, mode_out_2)``.
    Outputs take the registry positions of the inputs.
    """

    mode_in_1: ModeLabel
    mode_in_2: ModeLabel
    mode_out_1: ModeLabel
    mode_out_2: ModeLabel

    def __post_init__(self) -> None:
        if self.mode_in_1 == self.mode_in_2:
            raise InvalidConfigError(f"beam splitter inputs must differ, got {self.mode_in_1!r} twice")
        if self.mode_out_1 == self.mode_out_2:
            raise InvalidConfigError(
                f"beam splitter outputs must differ, got {self.mode_out_1!r} twice"
            )


@dataclass(frozen=True)
class PhaseShiftSpec:
    """Phase shifter ``a -> e^{i phase} a`` on one mode."""

    mode: ModeLabel
    phase: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.phase):
            raise InvalidConfigError(f"phase must be finite, got {self.phase!r}")


def apply_beam_splitter(s: StateSuperposition, spec: BeamSplitterSpec) -> StateSuperposition:
    """Send two modes of every term through a 50:50 beam splitter.

    Args:
        s: Input state.
        spec: Input and output mode labels.

    Returns:
        State with the two input modes replaced by the output modes; term count
        and coefficients unchanged.

    Raises:
        UnknownModeError: If an input mode is not registered.
        LabelCollisionError: If an output label names a mode that survives.
    """
    i = s.mode_index(spec.mode_in_1)
    j = s.mode_index(spec.mode_in_2)
    surviving = set(s.modes) - {spec.mode_in_1, spec.mode_in_2}
    clashes = sorted({spec.mode_out_1, spec.mode_out_2} & surviving)
    if clashes:
        raise LabelCollisionError(f"beam splitter output collides with {', '.join(clashes)}")

    modes = list(s.modes)
    modes[i] = spec.mode_out_1
    modes[j] = spec.mode_out_2

    amps = s.amplitudes()
    a, b = amps[:, i].copy(), amps[:, j].copy()
    amps[:, i] = (a + b) * _INV_SQRT2
    amps[:, j] = (a - b) * _INV_SQRT2

    logger.debug(
        "BS (%s, %s) -> (%s, %s) on %d terms",
        spec.mode_in_1,
        spec.mode_in_2,
        spec.mode_out_1,
        spec.mode_out_2,
        s.n_terms,
    )
    return StateSuperposition.from_arrays(modes, s.coefficients(), amps)


def apply_phase_shift(s: StateSuperposition, spec: PhaseShiftSpec) -> StateSuperposition:
    """Rotate the amplitude of one mode by ``e^{i phase}`` in every term.

    Raises:
        UnknownModeError: If the mode is not registered.
    """
    index = s.mode_index(spec.mode)
    amps = s.amplitudes()
    amps[:, index] *= cmath.rect(1.0, spec.phase)
    return StateSuperposition.from_arrays(s.modes, s.coefficients(), amps)


def inject_vacuum(s: StateSuperposition, label: ModeLabel) -> StateSuperposition:
    """Register a new mode in the vacuum state (amplitude 0 in every term).

    Raises:
        LabelCollisionError: If ``label`` is already registered.
    """
    if label in s.modes:
        raise LabelCollisionError(f"mode {label!r} is already registered")
    return StateSuperposition(
        s.modes + (label,),
        tuple(Term(t.coeff, t.amps + (0j,)) for t in s.terms),
    )
