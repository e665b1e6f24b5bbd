"""Randomized consistency checks behind the ``verify`` command.

Each check draws its cases from one seeded generator, so a run is fully
determined by ``(n_max, trials, seed, max_amplitude)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .errors import InvalidConfigError, OracleRefusedError
from .fock import (
    coherent_to_fock,
    fock_overlap,
    fock_superposition_norm,
    oracle_tolerance,
    tail_bound,
)
from .optics import BeamSplitterSpec, apply_beam_splitter
from .states import StateSuperposition, coherent_overlap, fidelity, gram, norm_squared

__all__ = ["CheckResult", "VerificationSummary", "run_verification", "random_state"]

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
UNITARITY_TOLERANCE = 1e-12
STATE_AMPLITUDE_LIMIT = 3.0
MAX_TERMS = 4


@dataclass
class CheckResult:
    """Outcome of one family of checks."""

    name: str
    tolerance: float
    cases: int = 0
    skipped: int = 0
    failures: int = 0
    max_deviation: float = 0.0

    def record(self, deviation: float, tolerance: float | None = None) -> None:
        self.cases += 1
        self.max_deviation = max(self.max_deviation, deviation)
        if deviation > (self.tolerance if tolerance is None else tolerance):
            self.failures += 1

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class VerificationSummary:
    n_max: int
    trials: int
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def skipped(self) -> int:
        return sum(check.skipped for check in self.checks)


def _random_amplitude(rng: np.random.Generator, radius: float) -> complex:
    r = radius * math.sqrt(rng.uniform())
    return complex(r * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))


def random_state(
    rng: np.random.Generator,
    modes: tuple[str, ...],
    max_terms: int = MAX_TERMS,
    radius: float = STATE_AMPLITUDE_LIMIT,
) -> StateSuperposition:
    """Random superposition with 1..max_terms terms and amplitudes in a disk."""
    n_terms = int(rng.integers(1, max_terms + 1))
    coeffs = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
    amps = [[_random_amplitude(rng, radius) for _ in modes] for _ in range(n_terms)]
    return StateSuperposition.from_terms(modes, zip(coeffs, amps))


def _weighted_gram(s: StateSuperposition) -> np.ndarray:
    c = s.coefficients()
    return np.conj(c)[:, None] * gram(s).entries * c[None, :]


def _check_overlaps(rng, n_max, trials, radius, settings) -> CheckResult:
    result = CheckResult("overlap vs Fock oracle", oracle_tolerance(settings=settings))
    for _ in range(trials):
        a, b = _random_amplitude(rng, radius), _random_amplitude(rng, radius)
        try:
            va, vb = coherent_to_fock(a, n_max, settings), coherent_to_fock(b, n_max, settings)
        except OracleRefusedError:
            result.skipped += 1
            continue
        deviation = abs(fock_overlap(va, vb) - coherent_overlap(a, b))
        result.record(deviation, oracle_tolerance(va, vb, settings=settings))
    return result


def _check_norms(rng, n_max, trials, radius, settings) -> CheckResult:
    result = CheckResult("superposition norm vs Fock oracle", NORM_TOLERANCE)
    for _ in range(trials):
        state = random_state(rng, ("m",), radius=radius)
        try:
            oracle = fock_superposition_norm(
                state.coefficients(), state.amplitudes()[:, 0], n_max, settings
            )
        except OracleRefusedError:
            result.skipped += 1
            continue
        # truncation error of the summed vector, relative to its size
        spill = sum(
            abs(c) * math.sqrt(tail_bound(a, n_max))
            for c, a in zip(state.coefficients(), state.amplitudes()[:, 0])
        )
        scale = max(1.0, oracle)
        result.record(
            abs(oracle - norm_squared(state)) / scale,
            NORM_TOLERANCE + 3.0 * spill**2 / scale,
        )
    return result


def _check_beam_splitter(rng, n_max, trials, radius, settings) -> CheckResult:
    result = CheckResult("beam splitter unitarity", UNITARITY_TOLERANCE)
    spec = BeamSplitterSpec("x", "y", "x", "y")
    for _ in range(trials):
        state = random_state(rng, ("x", "y"))
        after = apply_beam_splitter(state, spec)
        before_gram = _weighted_gram(state)
        scale = max(1.0, float(np.max(np.abs(before_gram))))
        result.record(float(np.max(np.abs(_weighted_gram(after) - before_gram))) / scale)
        result.record(abs(1.0 - fidelity(apply_beam_splitter(after, spec), state, settings)))
    return result


def _check_dispatch(rng, n_max, trials, radius, settings) -> CheckResult:
    """Post-BS Gram of the four (+-a, +-a) inputs against oracle overlaps."""
    result = CheckResult("beam splitter outputs vs Fock oracle", oracle_tolerance(settings=settings))
    for _ in range(trials):
        alpha = radius * rng.uniform(0.05, 1.0)
        inputs = StateSuperposition.from_terms(
            ("c", "d"),
            [(1.0, (sa * alpha, sd * alpha)) for sa in (1, -1) for sd in (1, -1)],
        )
        outputs = apply_beam_splitter(inputs, BeamSplitterSpec("c", "d", "e", "f"))
        amps = outputs.amplitudes()
        try:
            vectors = [[coherent_to_fock(a, n_max, settings) for a in row] for row in amps]
        except OracleRefusedError:
            result.skipped += 1
            continue
        analytic = gram(outputs).entries
        oracle = np.array(
            [
                [np.prod([fock_overlap(u, v) for u, v in zip(left, right)]) for right in vectors]
                for left in vectors
            ]
        )
        bound = oracle_tolerance(*[v for row in vectors for v in row], settings=settings)
        result.record(float(np.max(np.abs(oracle - analytic))), bound)
    return result


_CHECKS: tuple[Callable[..., CheckResult], ...] = (
    _check_overlaps,
    _check_norms,
    _check_beam_splitter,
    _check_dispatch,
)


def run_verification(
    n_max: int = 60,
    trials: int = 200,
    seed: int = 0,
    max_amplitude: float = 2.0,
    settings: Mapping[str, Any] | None = None,
) -> VerificationSummary:
    """Run every check ``trials`` times.

    Args:
        n_max: Fock cutoff for the oracle.
        trials: Cases per check, at least 1.
        seed: Seed of the shared random generator.
        max_amplitude: Radius of the disk oracle amplitudes are drawn from.
        settings: Optional tolerance overrides.

    Returns:
        Summary with per-check deviations, skip counts and a pass flag.

    Raises:
        InvalidConfigError: If ``trials`` or ``n_max`` is below 1.
    """
    if trials < 1:
        raise InvalidConfigError(f"trials must be at least 1, got {trials}")
    if n_max < 1:
        raise InvalidConfigError(f"n_max must be at least 1, got {n_max}")
    rng = np.random.default_rng(seed)
    summary = VerificationSummary(n_max=n_max, trials=trials, seed=seed)
    for check in _CHECKS:
        result = check(rng, n_max, trials, max_amplitude, settings)
        logger.debug(
            "%s: %d cases, %d skipped, max deviation %.3e",
            result.name,
            result.cases,
            result.skipped,
            result.max_deviation,
        )
        summary.checks.append(result)
    return summary
