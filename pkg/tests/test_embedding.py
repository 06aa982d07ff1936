"""Tests for embedding.py file."""

import unittest

import numpy as np
from scipy.spatial.distance import pdist, squareform

from src.embedding import (
    EmbeddingResult,
    classical_mds,
    embed,
    embed2d,
    embed_sstress,
    euclidean_distances,
    procrustes_residual,
    smacof_refine,
    sstress,
    sstress_refine,
    stress,
)
from src.errors import DegenerateInput, DimensionMismatch
from src.generators import gen_gamma


class TestClassicalMds(unittest.TestCase):
    """Tests class for classical scaling."""

    def test_euclidean_input_recovered(self):
        """Test that distances of planar points are reproduced exactly."""
        points = np.random.default_rng(0).normal(size=(8, 2))
        result = classical_mds(squareform(pdist(points)), 2)
        self.assertEqual(result.coords.shape, (8, 2))
        self.assertEqual(result.dim, 2)
        self.assertTrue(np.allclose(euclidean_distances(result.coords), squareform(pdist(points)), atol=1e-9))
        self.assertAlmostEqual(result.stress, 0.0, delta=1e-12)

    def test_realizable_inputs(self):
        """Test an equilateral triangle and three collinear points."""
        equilateral = np.ones((3, 3)) - np.eye(3)
        self.assertLessEqual(classical_mds(equilateral, 2).stress, 1e-9)
        collinear = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
        self.assertLessEqual(classical_mds(collinear, 2).stress, 1e-9)
        self.assertGreater(classical_mds(gen_gamma(1).dissim, 2).stress, 0.0)

    def test_gamma_network_collapses(self):
        """Test that the gamma=1 network embeds on one axis with a at the origin."""
        for gamma in (1.0, 3.0):
            with self.subTest(gamma=gamma):
                result = classical_mds(gen_gamma(gamma).dissim, 2)
                self.assertTrue(np.allclose(result.coords[:, 0], [0.0, 5.5, -5.5], atol=1e-9))
                self.assertTrue(np.allclose(result.coords[:, 1], 0.0, atol=1e-6))
        self.assertAlmostEqual(classical_mds(gen_gamma(1).dissim, 2).stress, 40.5, delta=1e-9)

    def test_sign_canonical_and_deterministic(self):
        """Test that each axis has a positive first loading and reruns agree."""
        dissim = squareform(pdist(np.random.default_rng(1).normal(size=(6, 3))))
        first, second = classical_mds(dissim, 3), classical_mds(dissim, 3)
        self.assertTrue(np.array_equal(first.coords, second.coords))
        for axis in range(3):
            column = first.coords[:, axis]
            self.assertGreater(column[np.flatnonzero(np.abs(column) > 1e-9)[0]], 0.0)

    def test_extra_dimensions_are_zero(self):
        """Test that asking for more axes than points pads with zeros."""
        result = classical_mds([[0, 2], [2, 0]], 4)
        self.assertEqual(result.coords.shape, (2, 4))
        self.assertTrue(np.allclose(result.coords[:, 1:], 0.0))
        self.assertAlmostEqual(float(np.linalg.norm(result.coords[0] - result.coords[1])), 2.0, delta=1e-12)

    def test_errors(self):
        """Test too few points and non-square input."""
        with self.assertRaises(DegenerateInput):
            classical_mds([[0.0]], 2)
        with self.assertRaises(DimensionMismatch):
            classical_mds([[0.0, 1.0]], 2)


class TestSmacof(unittest.TestCase):
    """Tests class for stress majorization."""

    def test_gamma_network_refinement(self):
        """Test that one Guttman step reaches the optimum (gamma + 11) / 3 on the collapsed axis."""
        result = embed(gen_gamma(1).dissim, 2)
        self.assertAlmostEqual(result.stress_history[0], 40.5, delta=1e-9)
        self.assertAlmostEqual(result.stress, 27.0, delta=1e-6)
        self.assertAlmostEqual(float(result.coords[1, 0]), 4.0, delta=1e-6)

    def test_stress_never_increases(self):
        """Test monotone stress on random non-Euclidean inputs."""
        rng = np.random.default_rng(2)
        for _ in range(10):
            matrix = rng.uniform(0.5, 3.0, size=(7, 7))
            matrix = np.triu(matrix, 1) + np.triu(matrix, 1).T
            result = embed(matrix, 2)
            history = np.asarray(result.stress_history)
            self.assertTrue(np.all(np.diff(history) <= 1e-12 * history[:-1]))
            self.assertLessEqual(result.stress, classical_mds(matrix, 2).stress + 1e-9)
            self.assertAlmostEqual(result.stress, stress(result.coords, matrix), delta=1e-9)

    def test_fixed_point(self):
        """Test that an already optimal configuration stays put."""
        equilateral = np.ones((3, 3)) - np.eye(3)
        start = classical_mds(equilateral, 2)
        result = smacof_refine(start, equilateral)
        self.assertTrue(np.allclose(result.coords, start.coords, atol=1e-9))

    def test_zero_iterations(self):
        """Test that no iterations return the start unchanged."""
        start = classical_mds(gen_gamma(2).dissim, 2)
        result = smacof_refine(start, gen_gamma(2).dissim, iters=0)
        self.assertTrue(np.array_equal(result.coords, start.coords))
        self.assertEqual(result.stress_history, (start.stress,))

    def test_size_mismatch(self):
        """Test a start sized for another matrix."""
        start = EmbeddingResult(coords=np.zeros((2, 2)), stress=0.0)
        with self.assertRaises(DimensionMismatch):
            smacof_refine(start, gen_gamma(1).dissim)
        with self.assertRaises(DimensionMismatch):
            stress(np.zeros((2, 2)), gen_gamma(1).dissim)

    def test_embed2d(self):
        """Test the planar helper."""
        self.assertEqual(embed2d(gen_gamma(7).dissim).dim, 2)


class TestSstress(unittest.TestCase):
    """Tests class for S-stress descent."""

    def test_sstress_value(self):
        """Test squared-distance gaps on two points."""
        self.assertEqual(sstress(np.array([[0.0, 0.0], [2.0, 0.0]]), [[0.0, 1.0], [1.0, 0.0]]), 9.0)
        with self.assertRaises(DimensionMismatch):
            sstress(np.zeros((2, 2)), gen_gamma(1).dissim)

    def test_sstress_never_increases(self):
        """Test monotone S-stress on random non-Euclidean inputs."""
        rng = np.random.default_rng(4)
        for _ in range(10):
            matrix = rng.uniform(0.5, 3.0, size=(7, 7))
            matrix = np.triu(matrix, 1) + np.triu(matrix, 1).T
            start = classical_mds(matrix, 2)
            result = sstress_refine(start, matrix, iters=300)
            history = np.asarray(result.stress_history)
            self.assertTrue(np.all(np.diff(history) <= 0.0))
            self.assertLessEqual(result.stress, sstress(start.coords, matrix))
            self.assertAlmostEqual(result.stress, sstress(result.coords, matrix), delta=1e-9)

    def test_fixed_point(self):
        """Test that an exact embedding stays put."""
        equilateral = np.ones((3, 3)) - np.eye(3)
        start = classical_mds(equilateral, 2)
        result = sstress_refine(start, equilateral)
        self.assertTrue(np.allclose(result.coords, start.coords, atol=1e-9))
        self.assertAlmostEqual(result.stress, 0.0, delta=1e-18)

    def test_zero_iterations(self):
        """Test that no iterations return the start unchanged."""
        dissim = gen_gamma(2).dissim
        start = classical_mds(dissim, 2)
        result = sstress_refine(start, dissim, iters=0)
        self.assertTrue(np.array_equal(result.coords, start.coords))
        self.assertEqual(result.stress_history, (sstress(start.coords, dissim),))

    def test_size_mismatch(self):
        """Test a start sized for another matrix."""
        with self.assertRaises(DimensionMismatch):
            sstress_refine(EmbeddingResult(coords=np.zeros((2, 2)), stress=0.0), gen_gamma(1).dissim)

    def test_gamma_network(self):
        """Test that descent improves on classical scaling for a non-metric triangle."""
        dissim = gen_gamma(1).dissim
        result = embed_sstress(dissim, 3)
        self.assertEqual(result.dim, 3)
        self.assertLess(result.stress, sstress(classical_mds(dissim, 3).coords, dissim))
        self.assertGreater(len(result.stress_history), 1)


class TestProcrustes(unittest.TestCase):
    """Tests class for configuration alignment."""

    def test_rotated_copy(self):
        """Test that a rotated, scaled and shifted copy aligns exactly."""
        points = np.random.default_rng(3).normal(size=(5, 2))
        angle = 0.7
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        moved = 3.0 * points @ rotation + np.array([1.0, -2.0])
        self.assertAlmostEqual(procrustes_residual(points, moved), 0.0, delta=1e-12)

    def test_gamma_configurations_coincide(self):
        """Test that collapsed gamma embeddings are indistinguishable after alignment."""
        first = classical_mds(gen_gamma(1).dissim, 2).coords
        second = classical_mds(gen_gamma(3).dissim, 2).coords
        self.assertAlmostEqual(procrustes_residual(first, second), 0.0, delta=1e-9)

    def test_errors(self):
        """Test shape mismatches and coincident configurations."""
        with self.assertRaises(DimensionMismatch):
            procrustes_residual(np.zeros((3, 2)), np.zeros((4, 2)))
        with self.assertRaises(DegenerateInput):
            procrustes_residual(np.zeros((3, 2)), np.ones((3, 2)))
