"""Tests for coherent superpositions, overlaps and normalization."""

import cmath
import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ecs_concentration.errors import (
    DegenerateStateError,
    EmptyStateError,
    InvalidAmplitudeError,
    LabelCollisionError,
    ModeCountMismatchError,
    UnknownModeError,
)
from ecs_concentration.states import (
    StateSuperposition,
    Term,
    coherent_overlap,
    fidelity,
    gram,
    inner_product,
    literal_n0,
    norm_squared,
    normalize,
    simplify,
    tensor,
    term_overlap,
)

from .helpers import amplitudes, superpositions


def ghz(alpha, modes=("a", "b", "c"), weights=(1.0, 1.0)):
    return StateSuperposition.from_terms(
        modes, [(weights[0], (alpha,) * len(modes)), (weights[1], (-alpha,) * len(modes))]
    )


class TestCoherentOverlap(unittest.TestCase):
    """Tests for the single-mode overlap <a|b>."""

    def test_self_overlap_is_one(self):
        """Test <a|a> = 1 exactly."""
        self.assertEqual(coherent_overlap(1.3 - 0.4j, 1.3 - 0.4j), 1.0 + 0.0j)

    def test_opposite_amplitudes(self):
        """Test <a|-a> = exp(-2|a|^2) for real a."""
        self.assertAlmostEqual(coherent_overlap(1.0, -1.0), math.exp(-2.0), places=15)

    def test_vacuum_overlap(self):
        """Test <0|a> = exp(-|a|^2 / 2)."""
        value = coherent_overlap(0.0, 0.5 + 0.5j)
        self.assertAlmostEqual(value.real, math.exp(-0.25), places=15)
        self.assertAlmostEqual(value.imag, 0.0, places=15)

    def test_phase_term(self):
        """Test the phase of <a|b> is Im(conj(a) b)."""
        a, b = 1.0 + 0.0j, 1.0j
        self.assertAlmostEqual(cmath.phase(coherent_overlap(a, b)), 1.0, places=14)

    def test_rejects_non_finite(self):
        """Test NaN and infinite amplitudes are rejected."""
        with self.assertRaises(InvalidAmplitudeError):
            coherent_overlap(float("nan"), 0.0)
        with self.assertRaises(InvalidAmplitudeError):
            coherent_overlap(0.0, complex(float("inf"), 0.0))

    def test_invalid_amplitude_is_value_error(self):
        """Test InvalidAmplitudeError can be caught as ValueError."""
        with self.assertRaises(ValueError):
            coherent_overlap("alpha", 0.0)

    @given(amplitudes, amplitudes)
    @settings(max_examples=200, deadline=None)
    def test_modulus_and_symmetry(self, a, b):
        """Test |<a|b>| = exp(-|a-b|^2/2) and <b|a> = conj(<a|b>)."""
        ab = coherent_overlap(a, b)
        ba = coherent_overlap(b, a)
        self.assertAlmostEqual(abs(ab), math.exp(-0.5 * abs(a - b) ** 2), places=12)
        self.assertAlmostEqual(abs(ab - ba.conjugate()), 0.0, places=12)
        self.assertLessEqual(abs(ab), 1.0 + 1e-15)


class TestStateSuperposition(unittest.TestCase):
    """Tests for construction and mode bookkeeping."""

    def test_duplicate_labels(self):
        """Test duplicate mode labels raise LabelCollisionError."""
        with self.assertRaises(LabelCollisionError):
            StateSuperposition(("a", "a"), ())

    def test_amplitude_count_mismatch(self):
        """Test a term with the wrong number of amplitudes is rejected."""
        with self.assertRaises(ModeCountMismatchError):
            StateSuperposition(("a", "b"), (Term(1.0, (0.5,)),))

    def test_non_finite_coefficient(self):
        """Test a NaN coefficient is rejected at construction."""
        with self.assertRaises(InvalidAmplitudeError):
            Term(float("nan"), (0.0,))

    def test_unknown_mode(self):
        """Test lookups of unregistered labels raise UnknownModeError."""
        state = ghz(1.0)
        with self.assertRaises(UnknownModeError) as ctx:
            state.mode_index("z")
        self.assertIsInstance(ctx.exception, LookupError)
        self.assertEqual(ctx.exception.label, "z")

    def test_amplitude_table(self):
        """Test amplitudes() has shape (n_terms, n_modes)."""
        state = ghz(0.5)
        self.assertEqual(state.amplitudes().shape, (2, 3))
        np.testing.assert_allclose(state.amplitudes_of("b"), [0.5, -0.5])

    def test_product(self):
        """Test the single-term product constructor."""
        state = StateSuperposition.product({"x": 1.0, "y": -1.0j})
        self.assertEqual(state.modes, ("x", "y"))
        self.assertEqual(state.terms[0].amps, (1.0 + 0j, -1.0j))

    def test_from_arrays(self):
        """Test building from a coefficient vector and an amplitude table."""
        state = StateSuperposition.from_arrays(
            ("a", "b"), np.array([1.0, 0.5j]), np.array([[1.0, 2.0], [0.0, -1.0j]])
        )
        self.assertEqual(state.modes, ("a", "b"))
        self.assertEqual(state.terms[1], Term(0.5j, (0j, -1.0j)))
        empty = StateSuperposition.from_arrays(("a",), np.zeros(0), np.zeros((0, 1)))
        self.assertEqual(len(empty), 0)

    def test_without_modes_keeps_coefficients(self):
        """Test dropping a mode keeps the remaining amplitudes and coefficients."""
        state = ghz(1.0, weights=(0.3, 0.7)).without_modes(["b"])
        self.assertEqual(state.modes, ("a", "c"))
        self.assertEqual([t.coeff for t in state.terms], [0.3, 0.7])


class TestGram(unittest.TestCase):
    """Tests for Gram matrices and norms."""

    def test_gram_of_ghz(self):
        """Test the off-diagonal entry of the GHZ-form Gram matrix."""
        entries = gram(ghz(1.0)).entries
        self.assertAlmostEqual(entries[0, 1].real, math.exp(-6.0), places=15)
        self.assertAlmostEqual(entries[0, 0].real, 1.0, places=15)

    def test_norm_of_ghz(self):
        """Test <s|s> = 2(1 + e^{-6 alpha^2}) for the unnormalized GHZ form."""
        self.assertAlmostEqual(norm_squared(ghz(0.5)), 2.0 * (1.0 + math.exp(-1.5)), places=13)

    def test_empty_state(self):
        """Test Gram and norm of a state without terms raise EmptyStateError."""
        empty = StateSuperposition(("a",), ())
        with self.assertRaises(EmptyStateError):
            gram(empty)
        with self.assertRaises(EmptyStateError):
            norm_squared(empty)

    def test_term_overlap_index(self):
        """Test out-of-range term indices raise IndexError."""
        state = ghz(1.0)
        self.assertAlmostEqual(term_overlap(state, 0, 1).real, math.exp(-6.0), places=15)
        with self.assertRaises(IndexError):
            term_overlap(state, 0, 2)

    @given(superpositions())
    @settings(max_examples=100, deadline=None)
    def test_gram_invariants(self, state):
        """Test Hermitian, unit-diagonal, PSD Gram and non-negative norm."""
        gram(state).validate()
        self.assertGreaterEqual(norm_squared(state), 0.0)


class TestNormalize(unittest.TestCase):
    """Tests for normalize, tensor, simplify and fidelity."""

    def test_normalize(self):
        """Test normalize() produces unit norm."""
        self.assertAlmostEqual(norm_squared(normalize(ghz(0.3, weights=(2.0, 1.0)))), 1.0, places=14)

    def test_normalize_zero_state(self):
        """Test a zero-norm state raises DegenerateStateError."""
        with self.assertRaises(DegenerateStateError):
            normalize(StateSuperposition.from_terms(("a",), [(0.0, (1.0,))]))

    def test_tensor_order_and_collision(self):
        """Test tensor places s1 modes first in s1-major term order."""
        left = StateSuperposition.from_terms(("a",), [(1.0, (1.0,)), (2.0, (-1.0,))])
        right = StateSuperposition.from_terms(("b",), [(3.0, (0.5,)), (5.0, (-0.5,))])
        product = tensor(left, right)
        self.assertEqual(product.modes, ("a", "b"))
        self.assertEqual([t.coeff for t in product.terms], [3.0, 5.0, 6.0, 10.0])
        with self.assertRaises(LabelCollisionError):
            tensor(left, left)

    @given(superpositions(("x", "y"), max_terms=3), superpositions(("u",), max_terms=3))
    @settings(max_examples=100, deadline=None)
    def test_tensor_norm_is_product(self, s1, s2):
        """Test the squared norm of a tensor product factorizes."""
        expected = norm_squared(s1) * norm_squared(s2)
        weight = float(np.sum(np.abs(s1.coefficients())) * np.sum(np.abs(s2.coefficients()))) ** 2
        self.assertLess(abs(norm_squared(tensor(s1, s2)) - expected), 1e-12 * weight)

    def test_simplify_merges_and_drops(self):
        """Test equal terms merge and cancelling terms disappear."""
        state = StateSuperposition.from_terms(
            ("a",), [(1.0, (1.0,)), (1.0, (1.0,)), (0.5, (2.0,)), (-0.5, (2.0,))]
        )
        simplified = simplify(state)
        self.assertEqual(len(simplified), 1)
        self.assertEqual(simplified.terms[0].coeff, 2.0)

    @given(superpositions(max_terms=5))
    @settings(max_examples=100, deadline=None)
    def test_simplify_idempotent(self, state):
        """Test simplify(simplify(s)) == simplify(s)."""
        once = simplify(state)
        self.assertEqual(simplify(once), once)

    def test_fidelity_ignores_labels(self):
        """Test fidelity matches modes by position."""
        s1 = ghz(1.0)
        s2 = ghz(1.0, modes=("x", "y", "z"))
        self.assertAlmostEqual(fidelity(s1, s2), 1.0, places=14)

    def test_fidelity_mode_count(self):
        """Test fidelity of states with different mode counts raises."""
        with self.assertRaises(ModeCountMismatchError):
            fidelity(ghz(1.0), ghz(1.0, modes=("a", "b")))

    def test_fidelity_of_orthogonal_like_branches(self):
        """Test fidelity between |aaa> and |-a-a-a> is e^{-12 a^2}."""
        plus = StateSuperposition.product({"a": 1.0, "b": 1.0, "c": 1.0})
        minus = StateSuperposition.product({"a": -1.0, "b": -1.0, "c": -1.0})
        self.assertAlmostEqual(fidelity(plus, minus), math.exp(-12.0), places=15)

    @given(superpositions(), superpositions())
    @settings(max_examples=100, deadline=None)
    def test_inner_product_conjugate_symmetry(self, s1, s2):
        """Test <s1|s2> = conj(<s2|s1>)."""
        forward = inner_product(s1, s2)
        backward = inner_product(s2, s1)
        scale = max(1.0, abs(forward))
        self.assertLess(abs(forward - backward.conjugate()) / scale, 1e-12)

    @given(st.floats(min_value=0.1, max_value=3.0))
    @settings(max_examples=50, deadline=None)
    def test_literal_n0_differs_from_gram_normalization(self, alpha):
        """Test the printed normalization constant only matches Gram's for large alpha."""
        gram_n0 = 1.0 / math.sqrt(norm_squared(ghz(alpha)))
        self.assertLessEqual(literal_n0(alpha), gram_n0 + 1e-15)
        if alpha >= 2.5:
            self.assertAlmostEqual(literal_n0(alpha), gram_n0, places=12)


if __name__ == "__main__":
    unittest.main()
