"""Truncated Fock-basis expansion of coherent states.

An independent check on the closed-form overlaps: a coherent state is
expanded as ``e^{-|a|^2/2} sum_n a^n / sqrt(n!) |n>`` up to ``n_max`` and
inner products are taken term by term. The weight dropped by the cutoff is a
Poisson tail with mean ``|a|^2``; the oracle refuses to answer when that tail
exceeds its limit instead of returning a degraded value.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np
from scipy.stats import poisson

from .errors import (
    EmptyStateError,
    FockLengthMismatchError,
    InvalidConfigError,
    OracleRefusedError,
)
from .settings import get_setting
from .states import ModeAmplitude, check_amplitude

__all__ = [
    "FockVector",
    "tail_bound",
    "coherent_to_fock",
    "fock_overlap",
    "fock_superposition_norm",
    "oracle_tolerance",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FockVector:
    """Photon-number amplitudes of a truncated coherent state.

    Attributes:
        coeffs: Complex vector of length ``n_max + 1``.
        amplitude: The coherent amplitude it expands.
        tail_bound: Probability weight beyond ``n_max``.
    """

    coeffs: np.ndarray
    amplitude: complex
    tail_bound: float

    @property
    def n_max(self) -> int:
        return int(self.coeffs.shape[0]) - 1

    def norm_squared(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)


def tail_bound(alpha: ModeAmplitude, n_max: int) -> float:
    """Weight ``sum_{n > n_max} e^{-|a|^2} |a|^{2n} / n!`` dropped by the cutoff."""
    mean = abs(alpha) ** 2
    if mean == 0.0:
        return 0.0
    return float(poisson.sf(n_max, mean))


def coherent_to_fock(
    alpha: ModeAmplitude,
    n_max: int | None = None,
    settings: Mapping[str, Any] | None = None,
) -> FockVector:
    """Expand ``|alpha>`` in the Fock basis up to ``n_max`` photons.

    Coefficients follow ``c_{n+1} = c_n * alpha / sqrt(n + 1)`` from
    ``c_0 = e^{-|alpha|^2/2}``, which never forms a factorial.

    Args:
        alpha: Coherent amplitude.
        n_max: Photon-number cutoff, at least 1; defaults to ``ORACLE_N_MAX``.
        settings: Optional overrides for the oracle limits.

    Raises:
        InvalidConfigError: If ``n_max`` is below 1.
        OracleRefusedError: If ``|alpha|`` exceeds the oracle range or the
            tail bound exceeds ``ORACLE_TAIL_LIMIT``.
    """
    alpha = check_amplitude(alpha)
    if n_max is None:
        n_max = int(get_setting("ORACLE_N_MAX", settings))
    if n_max < 1:
        raise InvalidConfigError(f"n_max must be at least 1, got {n_max}")

    bound = tail_bound(alpha, n_max)
    if abs(alpha) > get_setting("ORACLE_MAX_AMPLITUDE", settings):
        reason = f"|alpha| = {abs(alpha):.3g} is outside the oracle range"
    elif bound > get_setting("ORACLE_TAIL_LIMIT", settings):
        reason = f"truncation at n_max={n_max} drops weight {bound:.3e} for |alpha| = {abs(alpha):.3g}"
    else:
        reason = ""
    if reason:
        logger.debug("oracle refused: %s", reason)
        raise OracleRefusedError(reason, bound)

    coeffs = np.empty(n_max + 1, dtype=complex)
    coeffs[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(n_max):
        coeffs[n + 1] = coeffs[n] * alpha / math.sqrt(n + 1)
    return FockVector(coeffs, alpha, bound)


def fock_overlap(v1: FockVector, v2: FockVector) -> complex:
    """``sum_n conj(v1_n) v2_n``.

    Raises:
        FockLengthMismatchError: If the cutoffs differ.
    """
    if v1.coeffs.shape != v2.coeffs.shape:
        raise FockLengthMismatchError(f"n_max {v1.n_max} vs {v2.n_max}")
    return complex(np.vdot(v1.coeffs, v2.coeffs))


def oracle_tolerance(*vectors: FockVector, settings: Mapping[str, Any] | None = None) -> float:
    """Agreement expected between oracle and closed form for these vectors."""
    floor = get_setting("ORACLE_MIN_TOLERANCE", settings)
    return max(floor, sum(v.tail_bound for v in vectors))


def fock_superposition_norm(
    coeffs: Sequence[complex],
    amplitudes: Sequence[ModeAmplitude],
    n_max: int | None = None,
    settings: Mapping[str, Any] | None = None,
) -> float:
    """Norm^2 of ``sum_k coeffs[k] |amplitudes[k]>`` on a single mode, via Fock vectors.

    Raises:
        OracleRefusedError: If any amplitude cannot be expanded reliably.
    """
    if len(coeffs) != len(amplitudes):
        raise InvalidConfigError(f"{len(coeffs)} coefficients for {len(amplitudes)} amplitudes")
    if len(coeffs) == 0:
        raise EmptyStateError("superposition with no terms")
    total = sum(
        complex(c) * coherent_to_fock(a, n_max, settings).coeffs for c, a in zip(coeffs, amplitudes)
    )
    return float(np.vdot(total, total).real)
