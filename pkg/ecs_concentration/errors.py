"""Exceptions raised by the simulator.

Every exception derives from :class:`EcsError` and, where one fits, from the
closest builtin so callers can catch either.
"""

from __future__ import annotations

__all__ = [
    "EcsError",
    "InvalidAmplitudeError",
    "EmptyStateError",
    "DegenerateStateError",
    "LabelCollisionError",
    "UnknownModeError",
    "ModeCountMismatchError",
    "UnnormalizedStateError",
    "EmptySelectionError",
    "MagnitudeMismatchError",
    "InvalidConfigError",
    "OracleRefusedError",
    "FockLengthMismatchError",
    "ToleranceViolationError",
]


class EcsError(Exception):
    """Base class for all simulator errors."""


class InvalidAmplitudeError(EcsError, ValueError):
    """A coherent amplitude or coefficient is NaN or infinite."""


class EmptyStateError(EcsError, ValueError):
    """The operation needs a state with at least one term."""


class DegenerateStateError(EcsError, ValueError):
    """The state norm is below the numeric floor."""


class LabelCollisionError(EcsError, ValueError):
    """A mode label is registered twice."""


class UnknownModeError(EcsError, LookupError):
    """A mode label is not registered in the state."""

    def __init__(self, label: str, modes: tuple[str, ...] = ()) -> None:
        self.label = label
        self.modes = modes
        known = ", ".join(modes) if modes else "none"
        super().__init__(f"unknown mode {label!r} (registered: {known})")

    def __str__(self) -> str:
        return str(self.args[0])


class ModeCountMismatchError(EcsError, ValueError):
    """Two states compared positionally have different mode counts."""


class UnnormalizedStateError(EcsError, ValueError):
    """Post-selection was given a state that is not normalized."""


class EmptySelectionError(EcsError):
    """No term survived post-selection.

    Attributes:
        probability: Success probability of the selection, always 0.0.
    """

    def __init__(self, message: str, probability: float = 0.0) -> None:
        super().__init__(message)
        self.probability = probability


class MagnitudeMismatchError(EcsError, ValueError):
    """Photon-number measurement on a mode whose amplitudes differ in magnitude."""


class InvalidConfigError(EcsError, ValueError):
    """A protocol configuration or sweep request is invalid."""


class OracleRefusedError(EcsError, ValueError):
    """The Fock truncation would drop more weight than the oracle allows.

    Attributes:
        tail_bound: Poisson tail weight beyond the cutoff.
    """

    def __init__(self, message: str, tail_bound: float) -> None:
        super().__init__(message)
        self.tail_bound = tail_bound


class FockLengthMismatchError(EcsError, ValueError):
    """Fock vectors of different truncation were combined."""


class ToleranceViolationError(EcsError):
    """An internal consistency check exceeded its tolerance."""
