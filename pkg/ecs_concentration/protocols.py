"""End-to-end concentration pipelines for 3-mode GHZ-type entangled coherent states.

Both schemes take a partially entangled state
``N [c1 |a a a> + c2 |-a -a -a>]`` and, when post-selection succeeds, leave
Alice, Bob and Charlie with the maximally entangled
``N0 [|a a a> + |-a -a -a>]``:

* :func:`run_protocol_1` mixes Charlie's mode with a single-mode ancilla
  ``N2 [c2 |a> + c1 |-a>]`` on one beam splitter;
* :func:`run_protocol_2` phase-shifts a second copy by pi and mixes the two
  copies mode by mode on three beam splitters.

Post-selected states carry ``sqrt(2) alpha`` on the mixed modes; a second
beam splitter against vacuum and a photon-number measurement on one output
bring the amplitude back to ``alpha``.

Mode labels follow the usual naming of these schemes (a, b, c, d, e, f for the
ancilla scheme; a1..f2 and primed outputs for the two-copy scheme) so stage
dumps can be compared term by term with the hand derivation.
"""

from __future__ import annotations

import logging
import math
import numbers
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidConfigError, ToleranceViolationError
from .measurement import (
    ProtocolKind,
    measure_remove_modes,
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
from .settings import get_setting
from .states import (
    ModeLabel,
    StateSuperposition,
    fidelity,
    normalize,
    simplify,
    tensor,
)

__all__ = [
    "ProtocolKind",
    "ProtocolConfig",
    "Stage",
    "ProtocolReport",
    "SweepRow",
    "PeakPoint",
    "STAGE_DESCRIPTIONS",
    "build_ghz_ecs",
    "build_target_ghz_ecs",
    "run_protocol",
    "run_protocol_1",
    "run_protocol_2",
    "sweep",
    "find_peak",
    "analytic_peak",
]

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
DEFAULT_C1 = 1.0 / SQRT2

TARGET_MODES = ("a", "b", "c")

STAGE_DESCRIPTIONS: Mapping[str, str] = {
    "input": "partially entangled input(s) before any optics; two copies still unshifted",
    "after_phase_shift": "combined two-copy input, second copy phase-shifted by pi on a2, b2, c2",
    "after_bs1": "after BS1 on (c, d) -> (e, f)",
    "after_bs1_bs3": "after BS1-BS3 on (a1,a2), (b1,b2), (c1,c2)",
    "post_selected": "vacuum post-selection kept terms (unnormalized)",
    "after_bs2": "after vacuum injection and BS2 on e -> (e1, e2)",
    "after_bs4_bs6": "after vacuum injection and BS4-BS6 on d1, e1, f1",
    "measured": "after photon-number measurement without sign resolution",
    "amplified": "post-selected state renormalized, sqrt(2) amplitude kept",
}


@dataclass(frozen=True)
class ProtocolConfig:
    """Parameters of one concentration run.

    Attributes:
        alpha: Coherent amplitude of the shared state, at least ``MIN_ALPHA``.
        c1: First branch weight (beta or delta), >= 0.
        c2: Second branch weight (gamma or eta), >= 0; defaults to
            ``sqrt(1 - c1^2)``, which requires ``c1 < 1``.
        normalize_inputs: Rescale ``(c1, c2)`` onto the unit circle.
        keep_amplified: Stop after post-selection and keep the
            ``sqrt(2) alpha`` amplitude on the mixed modes.
    """

    alpha: float
    c1: float = DEFAULT_C1
    c2: float | None = None
    normalize_inputs: bool = False
    keep_amplified: bool = False

    def __post_init__(self) -> None:
        for name in ("alpha", "c1"):
            value = getattr(self, name)
            if not isinstance(value, numbers.Real) or not math.isfinite(value):
                raise InvalidConfigError(f"{name} must be a finite real number, got {value!r}")
        # amplitudes near VACUUM_TOLERANCE would read as vacuum
        min_alpha = get_setting("MIN_ALPHA")
        if self.alpha < min_alpha:
            raise InvalidConfigError(f"alpha must be at least {min_alpha:g}, got {self.alpha}")
        if self.c1 < 0:
            raise InvalidConfigError(f"c1 must be non-negative, got {self.c1}")

        c1 = float(self.c1)
        if self.c2 is None:
            if c1 >= 1:
                raise InvalidConfigError(f"c1 must be below 1 when c2 is omitted, got {c1}")
            c2 = math.sqrt(1.0 - c1 * c1)
        else:
            if not isinstance(self.c2, numbers.Real) or not math.isfinite(self.c2):
                raise InvalidConfigError(f"c2 must be a finite real number, got {self.c2!r}")
            if self.c2 < 0:
                raise InvalidConfigError(f"c2 must be non-negative, got {self.c2}")
            c2 = float(self.c2)
        if c1 == 0 and c2 == 0:
            raise InvalidConfigError("c1 and c2 cannot both be zero")

        if self.normalize_inputs:
            scale = math.hypot(c1, c2)
            c1, c2 = c1 / scale, c2 / scale

        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)


class Stage(NamedTuple):
    """A named intermediate state of a pipeline."""

    name: str
    state: StateSuperposition


@dataclass(frozen=True)
class ProtocolReport:
    """Stage-by-stage record of one run.

    Attributes:
        kind: Which scheme ran.
        config: The resolved configuration.
        stages: Intermediate states in pipeline order; the last has 3 modes.
        paper_probability: Closed-form success probability.
        exact_probability: Gram-exact norm^2 of the post-selected terms.
        final_fidelity: Fidelity of the last stage to the GHZ-form target.
        amplitude_check: Amplitude magnitude on the first mixed mode right
            after post-selection (``sqrt(2) alpha``).
    """

    kind: ProtocolKind
    config: ProtocolConfig
    stages: tuple[Stage, ...]
    paper_probability: float
    exact_probability: float
    final_fidelity: float
    amplitude_check: float
    target: StateSuperposition | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.stages:
            raise ToleranceViolationError("protocol report without stages")
        if self.stages[-1].state.n_modes != 3:
            raise ToleranceViolationError(
                f"final stage has {self.stages[-1].state.n_modes} modes, expected 3"
            )

    @property
    def final_state(self) -> StateSuperposition:
        return self.stages[-1].state

    def stage(self, name: str) -> StateSuperposition:
        """State recorded under ``name``.

        Raises:
            KeyError: If the pipeline has no stage of that name.
        """
        for stage in self.stages:
            if stage.name == name:
                return stage.state
        raise KeyError(f"no stage {name!r}; stages: {', '.join(s.name for s in self.stages)}")

    def check(self, settings: Mapping[str, Any] | None = None) -> None:
        """Raise if the final fidelity is not 1 within tolerance.

        Raises:
            ToleranceViolationError: On a fidelity deviation.
        """
        tol = get_setting("FIDELITY_TOLERANCE", settings)
        if abs(self.final_fidelity - 1.0) > tol:
            raise ToleranceViolationError(
                f"final fidelity {self.final_fidelity!r} deviates from 1 by more than {tol}"
            )

    def to_dict(self) -> dict[str, Any]:
        """Plain-data view used by the JSON renderer."""
        return {
            "protocol": int(self.kind),
            "alpha": self.config.alpha,
            "c1": self.config.c1,
            "c2": self.config.c2,
            "p_paper": self.paper_probability,
            "p_exact": self.exact_probability,
            "fidelity": self.final_fidelity,
            "amplitude_check": self.amplitude_check,
            "stages": [
                {
                    "name": stage.name,
                    "modes": list(stage.state.modes),
                    "terms": [
                        {
                            "coeff": [term.coeff.real, term.coeff.imag],
                            "amps": [[a.real, a.imag] for a in term.amps],
                        }
                        for term in stage.state.terms
                    ],
                }
                for stage in self.stages
            ],
        }


class SweepRow(NamedTuple):
    c1: float
    paper_probability: float
    exact_probability: float
    final_fidelity: float
    c2: float


class PeakPoint(NamedTuple):
    c1: float
    paper_probability: float


def build_ghz_ecs(
    amplitudes: Sequence[complex],
    modes: Sequence[ModeLabel],
    weights: tuple[float, float] = (1.0, 1.0),
    settings: Mapping[str, Any] | None = None,
) -> StateSuperposition:
    """Normalized ``w1 |a_1 ... a_n> + w2 |-a_1 ... -a_n>``.

    Zero weights drop their branch, so a degenerate weight pair gives a
    single product term.

    Raises:
        InvalidConfigError: If lengths disagree or both weights are zero.
    """
    if len(amplitudes) != len(modes):
        raise InvalidConfigError(f"{len(amplitudes)} amplitudes for {len(modes)} modes")
    plus = tuple(complex(a) for a in amplitudes)
    minus = tuple(-a for a in plus)
    state = simplify(
        StateSuperposition.from_terms(modes, [(weights[0], plus), (weights[1], minus)]),
        settings,
    )
    if not state.terms:
        raise InvalidConfigError("GHZ-form state needs a non-zero branch weight")
    return normalize(state, settings)


def build_target_ghz_ecs(
    alpha: float,
    modes: Sequence[ModeLabel] = TARGET_MODES,
    settings: Mapping[str, Any] | None = None,
) -> StateSuperposition:
    """Maximally entangled ``N0 [|a a a> + |-a -a -a>]`` with Gram normalization.

    Raises:
        InvalidConfigError: If ``alpha`` is not positive or ``modes`` is not 3 labels.
    """
    if not math.isfinite(alpha) or alpha <= 0:
        raise InvalidConfigError(f"alpha must be positive, got {alpha!r}")
    if len(modes) != 3:
        raise InvalidConfigError(f"target needs 3 modes, got {len(modes)}")
    return build_ghz_ecs((alpha,) * 3, modes, settings=settings)


def _max_magnitude(state: StateSuperposition, mode: ModeLabel) -> float:
    return float(np.max(np.abs(state.amplitudes_of(mode))))


def _split_and_measure(
    state: StateSuperposition,
    splitters: Sequence[BeamSplitterSpec],
    measured: Sequence[ModeLabel],
    settings: Mapping[str, Any] | None,
) -> tuple[StateSuperposition, StateSuperposition]:
    """Split each amplified mode against a fresh vacuum port, then measure."""
    for spec in splitters:
        state = apply_beam_splitter(inject_vacuum(state, spec.mode_in_2), spec)
    return state, measure_remove_modes(state, measured, settings)


def _finish(
    kind: ProtocolKind,
    cfg: ProtocolConfig,
    stages: list[Stage],
    outcome_state: StateSuperposition,
    mixed: Sequence[ModeLabel],
    splitters: Sequence[BeamSplitterSpec],
    measured: Sequence[ModeLabel],
    paper_probability: float,
    exact_probability: float,
    split_stage: str,
    settings: Mapping[str, Any] | None,
) -> ProtocolReport:
    amplitude_check = _max_magnitude(outcome_state, mixed[0])

    if cfg.keep_amplified:
        final = normalize(outcome_state, settings)
        amps = [
            SQRT2 * cfg.alpha if mode in mixed else cfg.alpha for mode in final.modes
        ]
        target = build_ghz_ecs(amps, final.modes, settings=settings)
        stages.append(Stage("amplified", final))
    else:
        split, final = _split_and_measure(outcome_state, splitters, measured, settings)
        target = build_target_ghz_ecs(cfg.alpha, final.modes, settings)
        stages.append(Stage(split_stage, split))
        stages.append(Stage("measured", final))

    report = ProtocolReport(
        kind=kind,
        config=cfg,
        stages=tuple(stages),
        paper_probability=paper_probability,
        exact_probability=exact_probability,
        final_fidelity=fidelity(final, target, settings),
        amplitude_check=amplitude_check,
        target=target,
    )
    logger.debug(
        "protocol %d alpha=%g c1=%g c2=%g: p_paper=%.12g p_exact=%.12g F=%.15f",
        int(kind),
        cfg.alpha,
        cfg.c1,
        cfg.c2,
        report.paper_probability,
        report.exact_probability,
        report.final_fidelity,
    )
    return report


def run_protocol_1(
    cfg: ProtocolConfig, settings: Mapping[str, Any] | None = None
) -> ProtocolReport:
    """Concentrate with one shared copy and a single-mode ancilla.

    Stages: ``input`` (shared state times ancilla), ``after_bs1``,
    ``post_selected`` (vacuum on f, unnormalized), ``after_bs2``,
    ``measured``.

    Raises:
        EmptySelectionError: If no term survives post-selection (a zero
            branch weight).
    """
    alpha, beta, gamma = cfg.alpha, cfg.c1, cfg.c2
    shared = build_ghz_ecs((alpha,) * 3, ("a", "b", "c"), (beta, gamma), settings)
    ancilla = build_ghz_ecs((alpha,), ("d",), (gamma, beta), settings)

    stages = [Stage("input", tensor(shared, ancilla))]
    mixed = apply_beam_splitter(stages[-1].state, BeamSplitterSpec("c", "d", "e", "f"))
    stages.append(Stage("after_bs1", mixed))

    paper_p = success_probability_paper(ProtocolKind.ANCILLA, cfg)
    outcome = post_select_vacuum(mixed, ["f"], paper_probability=paper_p, settings=settings)
    stages.append(Stage("post_selected", outcome.kept_state))

    return _finish(
        ProtocolKind.ANCILLA,
        cfg,
        stages,
        outcome.kept_state,
        ("e",),
        [BeamSplitterSpec("e", "e_aux", "e1", "e2")],
        ["e1"],
        outcome.paper_probability,
        outcome.exact_probability,
        "after_bs2",
        settings,
    )


def run_protocol_2(
    cfg: ProtocolConfig, settings: Mapping[str, Any] | None = None
) -> ProtocolReport:
    """Concentrate with two shared copies.

    Stages: ``input`` (both copies as shared, before the phase shift),
    ``after_phase_shift`` (the combined input the beam splitters act on),
    ``after_bs1_bs3``, ``post_selected`` (vacuum on d2, e2, f2,
    unnormalized), ``after_bs4_bs6``, ``measured``.

    Raises:
        EmptySelectionError: If no term survives post-selection.
        ToleranceViolationError: If the phase-shifted copy does not have the
            swapped-weight form.
    """
    alpha, delta, eta = cfg.alpha, cfg.c1, cfg.c2
    first_modes, second_modes = ("a1", "b1", "c1"), ("a2", "b2", "c2")
    first = build_ghz_ecs((alpha,) * 3, first_modes, (delta, eta), settings)
    second = build_ghz_ecs((alpha,) * 3, second_modes, (delta, eta), settings)
    stages = [Stage("input", tensor(first, second))]

    shifted = second
    for mode in second_modes:
        shifted = apply_phase_shift(shifted, PhaseShiftSpec(mode, math.pi))
    swapped = build_ghz_ecs((alpha,) * 3, second_modes, (eta, delta), settings)
    if abs(fidelity(shifted, swapped, settings) - 1.0) > get_setting("FIDELITY_TOLERANCE", settings):
        raise ToleranceViolationError("phase-shifted copy does not swap the branch weights")
    stages.append(Stage("after_phase_shift", tensor(first, shifted)))

    state = stages[-1].state
    for left, right, out in (("a1", "a2", "d"), ("b1", "b2", "e"), ("c1", "c2", "f")):
        state = apply_beam_splitter(state, BeamSplitterSpec(left, right, f"{out}1", f"{out}2"))
    stages.append(Stage("after_bs1_bs3", state))

    paper_p = success_probability_paper(ProtocolKind.TWO_COPIES, cfg)
    outcome = post_select_vacuum(
        state, ["d2", "e2", "f2"], paper_probability=paper_p, settings=settings
    )
    stages.append(Stage("post_selected", outcome.kept_state))

    return _finish(
        ProtocolKind.TWO_COPIES,
        cfg,
        stages,
        outcome.kept_state,
        ("d1", "e1", "f1"),
        [BeamSplitterSpec(m, f"{m}_aux", f"{m}'", f"{m}''") for m in ("d1", "e1", "f1")],
        ["d1''", "e1''", "f1''"],
        outcome.paper_probability,
        outcome.exact_probability,
        "after_bs4_bs6",
        settings,
    )


def run_protocol(
    kind: ProtocolKind | int,
    cfg: ProtocolConfig,
    settings: Mapping[str, Any] | None = None,
) -> ProtocolReport:
    """Dispatch to :func:`run_protocol_1` or :func:`run_protocol_2`."""
    if ProtocolKind.parse(kind) is ProtocolKind.ANCILLA:
        return run_protocol_1(cfg, settings)
    return run_protocol_2(cfg, settings)


def sweep(
    kind: ProtocolKind | int,
    alpha: float,
    points: int,
    *,
    workers: int | None = None,
    base: ProtocolConfig | None = None,
    settings: Mapping[str, Any] | None = None,
) -> list[SweepRow]:
    """Run a protocol across ``c1`` in (0, 1) with ``c2 = sqrt(1 - c1^2)``.

    ``c1`` takes the ``points`` interior values ``k / (points + 1)``.

    Args:
        kind: Which scheme to run.
        alpha: Coherent amplitude.
        points: Number of grid points, at least 2.
        workers: Evaluate points on a thread pool of this size; rows are
            returned in ``c1`` order either way.
        base: Template configuration (e.g. ``keep_amplified``); its weights
            are replaced per point.
        settings: Optional tolerance overrides.

    Raises:
        InvalidConfigError: On fewer than 2 points or a non-positive alpha.
    """
    kind = ProtocolKind.parse(kind)
    if isinstance(points, bool) or not isinstance(points, numbers.Integral) or points < 2:
        raise InvalidConfigError(f"sweep needs at least 2 points, got {points!r}")
    points = int(points)
    template = base or ProtocolConfig(alpha=alpha)
    configs = [
        replace(template, alpha=alpha, c1=k / (points + 1), c2=None, normalize_inputs=False)
        for k in range(1, points + 1)
    ]

    def evaluate(cfg: ProtocolConfig) -> SweepRow:
        report = run_protocol(kind, cfg, settings)
        return SweepRow(
            cfg.c1,
            report.paper_probability,
            report.exact_probability,
            report.final_fidelity,
            float(cfg.c2),  # type: ignore[arg-type]
        )

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, configs))
    else:
        rows = [evaluate(cfg) for cfg in configs]
    logger.debug("swept protocol %d at alpha=%g over %d points", int(kind), alpha, points)
    return rows


def find_peak(rows: Sequence[SweepRow]) -> PeakPoint:
    """Row with the largest closed-form probability; ties go to the smaller c1.

    Raises:
        InvalidConfigError: If ``rows`` is empty.
    """
    if not rows:
        raise InvalidConfigError("cannot locate the peak of an empty sweep")
    best = max(rows, key=lambda row: (row.paper_probability, -row.c1))
    return PeakPoint(best.c1, best.paper_probability)


def analytic_peak(kind: ProtocolKind | int, alpha: float) -> PeakPoint:
    """Maximize the closed-form probability over ``c1`` on the unit circle.

    Uses a bounded scalar search instead of a grid, as a cross-check on
    :func:`find_peak`.
    """
    kind = ProtocolKind.parse(kind)
    edge = 1e-9

    def negative_probability(c1: float) -> float:
        return -success_probability_paper(kind, ProtocolConfig(alpha=alpha, c1=c1))

    result = minimize_scalar(
        negative_probability,
        bounds=(edge, 1.0 - edge),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return PeakPoint(float(result.x), float(-result.fun))
