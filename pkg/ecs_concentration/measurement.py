"""Post-selection, photon-number measurement and success probabilities.

Two measurement primitives are modelled operationally:

* vacuum post-selection keeps the terms in which the flagged modes carry no
  photon (ideal detectors, term filtering rather than a ``<0|`` projection);
* photon-number measurement without distinguishing ``|+-alpha>`` deletes the
  measured mode and renormalizes.

Success probabilities are reported twice: from the closed form, which ignores
the overlap between the kept branches, and exactly from the Gram matrix.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    EmptySelectionError,
    InvalidConfigError,
    MagnitudeMismatchError,
    UnnormalizedStateError,
)
from .settings import get_setting
from .states import ModeLabel, StateSuperposition, norm_squared, normalize, simplify

if TYPE_CHECKING:
    from .protocols import ProtocolConfig

__all__ = [
    "ProtocolKind",
    "PostSelectOutcome",
    "split_by_vacuum",
    "post_select_vacuum",
    "measure_remove_mode",
    "measure_remove_modes",
    "success_probability_paper",
]

logger = logging.getLogger(__name__)


class ProtocolKind(enum.IntEnum):
    """The two concentration schemes."""

    ANCILLA = 1  # one partially entangled copy plus a single-mode ancilla
    TWO_COPIES = 2  # two partially entangled copies

    @classmethod
    def parse(cls, value: Any) -> ProtocolKind:
        """Accept ``1``/``2``, ``"1"``/``"2"``, member names or members."""
        if isinstance(value, cls):
            return value
        if isinstance(value, str) and value.upper() in cls.__members__:
            return cls[value.upper()]
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise InvalidConfigError(f"unknown protocol {value!r}; expected 1 or 2") from None


@dataclass(frozen=True)
class PostSelectOutcome:
    """Result of a vacuum post-selection.

    Attributes:
        kept_state: Surviving terms, not renormalized, flagged modes removed.
        paper_probability: Closed-form probability supplied by the caller, or
            ``exact_probability`` for generic use.
        exact_probability: Norm^2 of the surviving sub-superposition.
    """

    kept_state: StateSuperposition
    paper_probability: float
    exact_probability: float


def split_by_vacuum(
    s: StateSuperposition,
    modes: Sequence[ModeLabel],
    settings: Mapping[str, Any] | None = None,
) -> tuple[StateSuperposition, StateSuperposition]:
    """Partition the terms of ``s`` by whether ``modes`` are all in vacuum.

    Returns:
        ``(kept, rest)`` over the full mode registry, coefficients untouched.

    Raises:
        UnknownModeError: If a mode is not registered.
    """
    columns = [s.mode_index(label) for label in modes]
    tol = get_setting("VACUUM_TOLERANCE", settings)
    kept, rest = [], []
    for term in s.terms:
        if all(abs(term.amps[i]) < tol for i in columns):
            kept.append(term)
        else:
            rest.append(term)
    return StateSuperposition(s.modes, tuple(kept)), StateSuperposition(s.modes, tuple(rest))


def post_select_vacuum(
    s: StateSuperposition,
    modes: Sequence[ModeLabel],
    *,
    paper_probability: float | None = None,
    settings: Mapping[str, Any] | None = None,
) -> PostSelectOutcome:
    """Keep the terms with no photon on any of ``modes`` and drop those modes.

    Args:
        s: Normalized input state.
        modes: Modes watched by the detectors.
        paper_probability: Closed-form probability to report alongside the
            exact one; defaults to the exact value.
        settings: Optional tolerance overrides.

    Raises:
        UnknownModeError: If a mode is not registered.
        UnnormalizedStateError: If ``s`` is not normalized.
        EmptySelectionError: If no term survives.
    """
    kept, _ = split_by_vacuum(s, modes, settings)

    total = norm_squared(s)
    if abs(total - 1.0) > get_setting("NORMALIZATION_TOLERANCE", settings):
        raise UnnormalizedStateError(f"post-selection needs a normalized state, norm^2 = {total!r}")

    kept = simplify(kept, settings)
    if not kept.terms:
        raise EmptySelectionError(
            f"no term has vacuum on {', '.join(modes)}; success probability 0", probability=0.0
        )

    exact = norm_squared(kept)
    logger.debug("post-selected vacuum on %s: %d terms, p=%.12g", list(modes), len(kept), exact)
    return PostSelectOutcome(
        kept_state=kept.without_modes(modes),
        paper_probability=exact if paper_probability is None else paper_probability,
        exact_probability=exact,
    )


def measure_remove_mode(
    s: StateSuperposition,
    mode: ModeLabel,
    settings: Mapping[str, Any] | None = None,
) -> StateSuperposition:
    """Measure photon number on ``mode`` without resolving the sign of alpha.

    The mode is deleted from every term and the result renormalized. The rule
    is only defined when all terms share one amplitude magnitude on the mode.

    Raises:
        UnknownModeError: If the mode is not registered.
        MagnitudeMismatchError: If amplitude magnitudes on the mode differ.
    """
    magnitudes = np.abs(s.amplitudes_of(mode))
    spread = float(magnitudes.max() - magnitudes.min()) if magnitudes.size else 0.0
    if spread > get_setting("MAGNITUDE_TOLERANCE", settings):
        raise MagnitudeMismatchError(
            f"amplitudes on mode {mode!r} differ in magnitude by {spread:.3e}"
        )
    return normalize(s.without_modes([mode]), settings)


def measure_remove_modes(
    s: StateSuperposition,
    modes: Iterable[ModeLabel],
    settings: Mapping[str, Any] | None = None,
) -> StateSuperposition:
    """Apply :func:`measure_remove_mode` to each mode in order."""
    for mode in modes:
        s = measure_remove_mode(s, mode, settings)
    return s


def success_probability_paper(kind: ProtocolKind | int, cfg: ProtocolConfig) -> float:
    """Closed-form success probability of a concentration run.

    ``2 (N1 N2 beta gamma)^2`` for the ancilla scheme and ``2 (N^2 delta eta)^2``
    for the two-copy scheme, with

    * ``N1 = [beta^2 + gamma^2 + 2 beta gamma e^{-6 alpha^2}]^{-1/2}``
    * ``N2 = [beta^2 + gamma^2 + 2 beta gamma e^{-2 alpha^2}]^{-1/2}``
    * ``N  = [delta^2 + eta^2 + 2 delta eta e^{-6 alpha^2}]^{-1/2}``

    Raises:
        InvalidConfigError: If a coefficient is negative.
    """
    kind = ProtocolKind.parse(kind)
    alpha, c1, c2 = cfg.alpha, cfg.c1, cfg.c2
    if c1 < 0 or c2 < 0:
        raise InvalidConfigError(f"coefficients must be non-negative, got ({c1}, {c2})")
    if c1 == 0 or c2 == 0:
        return 0.0

    a2 = alpha * alpha
    sum_sq = c1 * c1 + c2 * c2
    product = c1 * c2
    n_three = 1.0 / (sum_sq + 2.0 * product * math.exp(-6.0 * a2))
    if kind is ProtocolKind.ANCILLA:
        n_one = 1.0 / (sum_sq + 2.0 * product * math.exp(-2.0 * a2))
        return 2.0 * n_three * n_one * product * product
    return 2.0 * (n_three * product) ** 2
