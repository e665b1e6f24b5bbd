"""Shared assertions and strategies for the test suite."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from ecs_concentration.states import StateSuperposition

amplitudes = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
coefficients = st.complex_numbers(
    min_magnitude=0.1, max_magnitude=5.0, allow_nan=False, allow_infinity=False
)


@st.composite
def superpositions(draw, modes=("x", "y"), max_terms=4):
    """Random superposition over ``modes`` with 1..max_terms terms."""
    n_terms = draw(st.integers(min_value=1, max_value=max_terms))
    terms = [
        (draw(coefficients), [draw(amplitudes) for _ in modes]) for _ in range(n_terms)
    ]
    return StateSuperposition.from_terms(modes, terms)


def assert_terms(test, state, modes, expected, tol=1e-12):
    """Check ``state`` holds exactly ``expected`` ``(coeff, amps)`` terms, in any order."""
    test.assertEqual(state.modes, tuple(modes))
    test.assertEqual(len(state.terms), len(expected))
    unmatched = list(state.terms)
    for coeff, amps in expected:
        for term in unmatched:
            if np.allclose(term.amps, amps, rtol=0.0, atol=tol):
                test.assertAlmostEqual(abs(term.coeff - coeff), 0.0, delta=tol)
                unmatched.remove(term)
                break
        else:
            test.fail(f"no term with amplitudes {amps} in {state.terms}")
