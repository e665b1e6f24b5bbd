"""Tests for the truncated Fock-basis oracle."""

import math
import unittest

import numpy as np
from scipy.stats import poisson

from ecs_concentration.errors import (
    EmptyStateError,
    FockLengthMismatchError,
    InvalidConfigError,
    OracleRefusedError,
)
from ecs_concentration.fock import (
    coherent_to_fock,
    fock_overlap,
    fock_superposition_norm,
    oracle_tolerance,
    tail_bound,
)
from ecs_concentration.settings import configure
from ecs_concentration.states import StateSuperposition, coherent_overlap, norm_squared


class TestCoherentToFock(unittest.TestCase):
    """Tests for the Fock expansion of a coherent state."""

    def test_coefficients(self):
        """Test c_n = e^{-|a|^2/2} a^n / sqrt(n!)."""
        alpha = 0.7 - 0.2j
        vector = coherent_to_fock(alpha, 20)
        for n in (0, 1, 5, 20):
            expected = math.exp(-0.5 * abs(alpha) ** 2) * alpha**n / math.sqrt(math.factorial(n))
            self.assertAlmostEqual(abs(vector.coeffs[n] - expected), 0.0, places=15)
        self.assertEqual(vector.n_max, 20)

    def test_norm_and_tail(self):
        """Test the kept weight is 1 minus the Poisson tail."""
        vector = coherent_to_fock(2.0, 60)
        self.assertAlmostEqual(vector.norm_squared(), 1.0 - vector.tail_bound, places=14)
        self.assertEqual(tail_bound(2.0, 60), float(poisson.sf(60, 4.0)))

    def test_vacuum(self):
        """Test |0> expands to the first basis vector."""
        vector = coherent_to_fock(0.0, 5)
        np.testing.assert_allclose(vector.coeffs, [1, 0, 0, 0, 0, 0])
        self.assertEqual(vector.tail_bound, 0.0)

    def test_refuses_large_amplitude(self):
        """Test |a| above the oracle range is refused."""
        with self.assertRaises(OracleRefusedError):
            coherent_to_fock(4.5, 200)

    def test_refuses_large_tail(self):
        """Test a cutoff that drops too much weight is refused with its bound."""
        with self.assertRaises(OracleRefusedError) as ctx:
            coherent_to_fock(2.0, 5)
        self.assertAlmostEqual(ctx.exception.tail_bound, poisson.sf(5, 4.0), places=15)

    def test_tail_limit_setting(self):
        """Test the tail limit can be relaxed through settings."""
        relaxed = configure(ORACLE_TAIL_LIMIT=0.5)
        self.assertEqual(coherent_to_fock(2.0, 5, relaxed).n_max, 5)

    def test_invalid_cutoff(self):
        """Test n_max below 1 is rejected."""
        with self.assertRaises(InvalidConfigError):
            coherent_to_fock(0.5, 0)


class TestFockOverlap(unittest.TestCase):
    """Tests for overlaps and norms computed in the Fock basis."""

    def test_matches_closed_form(self):
        """Test 200 random overlaps with |a| <= 2 agree within 1e-10."""
        rng = np.random.default_rng(2024)
        for _ in range(200):
            a, b = (complex(*rng.uniform(-1.4, 1.4, size=2)) for _ in range(2))
            value = fock_overlap(coherent_to_fock(a, 60), coherent_to_fock(b, 60))
            self.assertLess(abs(value - coherent_overlap(a, b)), 1e-10)

    def test_length_mismatch(self):
        """Test vectors with different cutoffs cannot be compared."""
        with self.assertRaises(FockLengthMismatchError):
            fock_overlap(coherent_to_fock(0.5, 10), coherent_to_fock(0.5, 20))

    def test_superposition_norms(self):
        """Test 50 random single-mode superposition norms agree within 1e-9."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            n_terms = int(rng.integers(1, 5))
            coeffs = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
            amps = rng.uniform(-1.4, 1.4, size=n_terms) + 1j * rng.uniform(-1.4, 1.4, size=n_terms)
            state = StateSuperposition.from_terms(("m",), [(c, (a,)) for c, a in zip(coeffs, amps)])
            oracle = fock_superposition_norm(coeffs, amps, 60)
            self.assertLess(abs(oracle - norm_squared(state)), 1e-9 * max(1.0, oracle))

    def test_superposition_validation(self):
        """Test empty and mismatched inputs are rejected."""
        with self.assertRaises(EmptyStateError):
            fock_superposition_norm([], [], 10)
        with self.assertRaises(InvalidConfigError):
            fock_superposition_norm([1.0], [0.5, 0.5], 10)

    def test_oracle_tolerance(self):
        """Test the tolerance is the summed tail bounds with a floor."""
        small = coherent_to_fock(0.1, 60)
        self.assertEqual(oracle_tolerance(small, small), 1e-10)
        loose = configure(ORACLE_TAIL_LIMIT=0.5)
        big = coherent_to_fock(2.0, 8, loose)
        self.assertAlmostEqual(oracle_tolerance(big, settings=loose), big.tail_bound, places=15)


if __name__ == "__main__":
    unittest.main()
