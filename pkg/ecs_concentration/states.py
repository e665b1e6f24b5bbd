"""Finite superpositions of multimode coherent-state product terms.

A state is a list of terms ``coeff * |a_1>|a_2>...|a_n>`` over an ordered
registry of named modes. Coherent states are not orthogonal, so every norm,
overlap and fidelity goes through the Gram matrix of the terms:

    <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
          = exp(-|a - b|^2/2 + i Im(conj(a) b))

The second form is the one evaluated; it keeps the real part of the exponent
non-positive and gives an exact 1 on the diagonal.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateStateError,
    EmptyStateError,
    InvalidAmplitudeError,
    LabelCollisionError,
    ModeCountMismatchError,
    ToleranceViolationError,
    UnknownModeError,
)
from .settings import get_setting

__all__ = [
    "ModeAmplitude",
    "ModeLabel",
    "Term",
    "StateSuperposition",
    "GramMatrix",
    "coherent_overlap",
    "term_overlap",
    "gram",
    "cross_gram",
    "inner_product",
    "norm_squared",
    "normalize",
    "tensor",
    "simplify",
    "fidelity",
    "literal_n0",
]

ModeAmplitude = complex
ModeLabel = str


def check_amplitude(value: Any, what: str = "amplitude") -> complex:
    """Coerce to complex, rejecting non-numbers and NaN/Inf."""
    try:
        number = complex(value)
    except (TypeError, ValueError) as exc:
        raise InvalidAmplitudeError(f"{what} {value!r} is not a number") from exc
    if not cmath.isfinite(number):
        raise InvalidAmplitudeError(f"{what} {value!r} is not finite")
    return number


@dataclass(frozen=True)
class Term:
    """One product ket with its coefficient.

    Attributes:
        coeff: Complex coefficient of the ket.
        amps: Coherent amplitude on each registered mode, in registry order.
    """

    coeff: complex
    amps: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", check_amplitude(self.coeff, "coefficient"))
        object.__setattr__(self, "amps", tuple(check_amplitude(a) for a in self.amps))


@dataclass(frozen=True)
class StateSuperposition:
    """Immutable superposition of coherent product terms.

    Attributes:
        modes: Ordered, unique mode labels.
        terms: Terms whose ``amps`` follow the order of ``modes``.
    """

    modes: tuple[ModeLabel, ...]
    terms: tuple[Term, ...] = field(default=())

    def __post_init__(self) -> None:
        modes = tuple(str(m) for m in self.modes)
        if len(set(modes)) != len(modes):
            dupes = sorted(m for m, count in Counter(modes).items() if count > 1)
            raise LabelCollisionError(f"duplicate mode labels: {', '.join(dupes)}")
        terms = tuple(self.terms)
        for index, term in enumerate(terms):
            if len(term.amps) != len(modes):
                raise ModeCountMismatchError(
                    f"term {index} has {len(term.amps)} amplitudes for {len(modes)} modes"
                )
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(
        cls,
        modes: Sequence[ModeLabel],
        terms: Iterable[tuple[complex, Sequence[complex]]],
    ) -> StateSuperposition:
        """Build a state from ``(coeff, amps)`` pairs."""
        return cls(tuple(modes), tuple(Term(c, tuple(a)) for c, a in terms))

    @classmethod
    def from_arrays(
        cls, modes: Sequence[ModeLabel], coeffs: np.ndarray, amps: np.ndarray
    ) -> StateSuperposition:
        """Build a state from a coefficient vector and an (n_terms, n_modes) array."""
        amps = np.asarray(amps, dtype=complex).reshape(len(coeffs), len(modes))
        return cls(
            tuple(modes),
            tuple(Term(complex(c), tuple(complex(a) for a in row)) for c, row in zip(coeffs, amps)),
        )

    @classmethod
    def product(cls, amplitudes: Mapping[ModeLabel, complex], coeff: complex = 1.0) -> StateSuperposition:
        """Single product term with the given per-mode amplitudes."""
        return cls(tuple(amplitudes), (Term(coeff, tuple(amplitudes.values())),))

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def mode_index(self, label: ModeLabel) -> int:
        """Position of ``label`` in the registry.

        Raises:
            UnknownModeError: If the label is not registered.
        """
        try:
            return self.modes.index(label)
        except ValueError:
            raise UnknownModeError(label, self.modes) from None

    def coefficients(self) -> np.ndarray:
        return np.array([t.coeff for t in self.terms], dtype=complex)

    def amplitudes(self) -> np.ndarray:
        """Amplitude table of shape (n_terms, n_modes)."""
        return np.array([t.amps for t in self.terms], dtype=complex).reshape(
            self.n_terms, self.n_modes
        )

    def amplitudes_of(self, label: ModeLabel) -> np.ndarray:
        """Amplitude of every term on one mode."""
        return self.amplitudes()[:, self.mode_index(label)]

    def scaled(self, factor: complex) -> StateSuperposition:
        return StateSuperposition(
            self.modes, tuple(Term(t.coeff * factor, t.amps) for t in self.terms)
        )

    def without_modes(self, labels: Iterable[ModeLabel]) -> StateSuperposition:
        """Drop modes from the registry and from every term, keeping coefficients."""
        drop = {self.mode_index(label) for label in labels}
        keep = [i for i in range(self.n_modes) if i not in drop]
        return StateSuperposition(
            tuple(self.modes[i] for i in keep),
            tuple(Term(t.coeff, tuple(t.amps[i] for i in keep)) for t in self.terms),
        )


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Pairwise term overlaps of one state, coefficients excluded.

    Attributes:
        entries: Square complex matrix, ``entries[i, j] = <term_i|term_j>``.
    """

    entries: np.ndarray

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def diagonal_error(self) -> float:
        return float(np.max(np.abs(np.diag(self.entries) - 1.0), initial=0.0))

    def min_eigenvalue(self) -> float:
        hermitized = 0.5 * (self.entries + self.entries.conj().T)
        return float(np.linalg.eigvalsh(hermitized).min())

    def validate(self, settings: Mapping[str, Any] | None = None) -> None:
        """Check the Hermitian, unit-diagonal and PSD invariants.

        Raises:
            ToleranceViolationError: If any check fails.
        """
        tol = get_setting("HERMITIAN_TOLERANCE", settings)
        if self.hermiticity_error() > tol:
            raise ToleranceViolationError(
                f"Gram matrix not Hermitian (max deviation {self.hermiticity_error():.3e})"
            )
        if self.diagonal_error() > tol:
            raise ToleranceViolationError(
                f"Gram diagonal deviates from 1 by {self.diagonal_error():.3e}"
            )
        smallest = self.min_eigenvalue()
        if smallest < get_setting("PSD_TOLERANCE", settings):
            raise ToleranceViolationError(f"Gram matrix not PSD (min eigenvalue {smallest:.3e})")


def coherent_overlap(a: ModeAmplitude, b: ModeAmplitude) -> complex:
    """Return the coherent-state inner product ``<a|b>``.

    Args:
        a: Amplitude of the bra.
        b: Amplitude of the ket.

    Returns:
        ``exp(-|a|^2/2 - |b|^2/2 + conj(a) b)``; modulus at most 1, exactly 1
        when ``a == b``.

    Raises:
        InvalidAmplitudeError: If either amplitude is not finite.
    """
    a = check_amplitude(a)
    b = check_amplitude(b)
    diff = a - b
    exponent = complex(-0.5 * (diff.real**2 + diff.imag**2), (a.conjugate() * b).imag)
    return cmath.exp(exponent)


def _overlap_matrix(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Overlaps between rows of two (n, k) amplitude tables, product over modes."""
    diff = left[:, None, :] - right[None, :, :]
    real = -0.5 * np.sum(diff.real**2 + diff.imag**2, axis=-1)
    imag = np.sum((np.conj(left)[:, None, :] * right[None, :, :]).imag, axis=-1)
    return np.exp(real + 1j * imag)


def term_overlap(s: StateSuperposition, i: int, j: int) -> complex:
    """Overlap ``<term_i|term_j>`` of two terms of ``s``, coefficients excluded.

    Raises:
        IndexError: If ``i`` or ``j`` is out of range.
    """
    for index in (i, j):
        if not 0 <= index < s.n_terms:
            raise IndexError(f"term index {index} out of range for {s.n_terms} terms")
    if i == j:
        return 1.0 + 0.0j
    result = 1.0 + 0.0j
    for a, b in zip(s.terms[i].amps, s.terms[j].amps):
        result *= coherent_overlap(a, b)
    return result


def gram(s: StateSuperposition) -> GramMatrix:
    """Gram matrix of the terms of ``s``.

    Raises:
        EmptyStateError: If ``s`` has no terms.
    """
    if not s.terms:
        raise EmptyStateError("Gram matrix of a state with no terms")
    amps = s.amplitudes()
    return GramMatrix(_overlap_matrix(amps, amps))


def cross_gram(s1: StateSuperposition, s2: StateSuperposition) -> np.ndarray:
    """Matrix of ``<term_i of s1|term_j of s2>`` with positional mode matching."""
    if s1.n_modes != s2.n_modes:
        raise ModeCountMismatchError(f"{s1.n_modes} modes vs {s2.n_modes} modes")
    return _overlap_matrix(s1.amplitudes(), s2.amplitudes())


def inner_product(s1: StateSuperposition, s2: StateSuperposition) -> complex:
    """``<s1|s2>`` including coefficients; modes are matched by position."""
    if not s1.terms or not s2.terms:
        raise EmptyStateError("inner product with a state that has no terms")
    overlaps = cross_gram(s1, s2)
    return complex(np.conj(s1.coefficients()) @ overlaps @ s2.coefficients())


def norm_squared(s: StateSuperposition) -> float:
    """``<s|s>`` computed as ``c^dagger G c``, clamped at zero.

    Raises:
        EmptyStateError: If ``s`` has no terms.
    """
    coeffs = s.coefficients()
    value = float(np.real(np.conj(coeffs) @ gram(s).entries @ coeffs))
    return max(value, 0.0)


def normalize(
    s: StateSuperposition, settings: Mapping[str, Any] | None = None
) -> StateSuperposition:
    """Scale ``s`` to unit norm.

    Raises:
        EmptyStateError: If ``s`` has no terms.
        DegenerateStateError: If the norm is below the numeric floor.
    """
    value = norm_squared(s)
    if value <= get_setting("NUMERIC_FLOOR", settings):
        raise DegenerateStateError(f"cannot normalize a state with norm^2 {value:.3e}")
    return s.scaled(1.0 / math.sqrt(value))


def tensor(s1: StateSuperposition, s2: StateSuperposition) -> StateSuperposition:
    """Tensor product; modes of ``s1`` come first, terms in ``s1``-major order.

    Raises:
        LabelCollisionError: If the two states share a mode label.
    """
    shared = sorted(set(s1.modes) & set(s2.modes))
    if shared:
        raise LabelCollisionError(f"mode labels present in both states: {', '.join(shared)}")
    return StateSuperposition(
        s1.modes + s2.modes,
        tuple(Term(t1.coeff * t2.coeff, t1.amps + t2.amps) for t1 in s1.terms for t2 in s2.terms),
    )


def simplify(
    s: StateSuperposition, settings: Mapping[str, Any] | None = None
) -> StateSuperposition:
    """Merge terms with equal amplitude tuples and drop negligible terms.

    Each term is merged into the first earlier representative whose amplitudes
    agree componentwise within the merge tolerance, so representatives are
    pairwise distinct and a second pass changes nothing.
    """
    merge_tol = get_setting("MERGE_TOLERANCE", settings)
    drop_tol = get_setting("DROP_TOLERANCE", settings)

    representatives: list[np.ndarray] = []
    coeffs: list[complex] = []
    amps_kept: list[tuple[complex, ...]] = []
    for term in s.terms:
        row = np.array(term.amps, dtype=complex)
        for index, rep in enumerate(representatives):
            if np.all(np.abs(rep - row) <= merge_tol):
                coeffs[index] += term.coeff
                break
        else:
            representatives.append(row)
            coeffs.append(term.coeff)
            amps_kept.append(term.amps)

    return StateSuperposition(
        s.modes,
        tuple(Term(c, a) for c, a in zip(coeffs, amps_kept) if abs(c) > drop_tol),
    )


def fidelity(
    s1: StateSuperposition,
    s2: StateSuperposition,
    settings: Mapping[str, Any] | None = None,
) -> float:
    """Fidelity ``|<s1|s2>|^2 / (<s1|s1><s2|s2>)`` of two pure states.

    Modes are identified by position, so states with different labels but
    the same layout compare directly.

    Raises:
        ModeCountMismatchError: If the mode counts differ.
        DegenerateStateError: If either state has zero norm.
    """
    if s1.n_modes != s2.n_modes:
        raise ModeCountMismatchError(f"{s1.n_modes} modes vs {s2.n_modes} modes")
    floor = get_setting("NUMERIC_FLOOR", settings)
    n1 = norm_squared(s1)
    n2 = norm_squared(s2)
    if n1 <= floor or n2 <= floor:
        raise DegenerateStateError("fidelity with a zero-norm state")
    return abs(inner_product(s1, s2)) ** 2 / (n1 * n2)


def literal_n0(alpha: float) -> float:
    """GHZ-form normalization in its commonly printed form ``[2(1 + 2 e^{-6|alpha|^2})]^{-1/2}``.

    Comparison only: it disagrees with the Gram normalization
    ``[2(1 + e^{-6|alpha|^2})]^{-1/2}``, which is what the library uses.
    """
    return (2.0 * (1.0 + 2.0 * math.exp(-6.0 * abs(alpha) ** 2))) ** -0.5
