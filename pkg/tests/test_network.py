"""Tests for network.py file."""

import itertools
import unittest

import numpy as np

import tests
from src.errors import (
    AsymmetricMatrix,
    DimensionMismatch,
    DuplicateLabel,
    InvalidCorrespondence,
    InvalidMapping,
    NonpositiveOffDiagonal,
    NonzeroDiagonal,
    ShapeMismatch,
    TooLarge,
    ValidationError,
)
from src.generators import gen_gamma
from src.network import (
    Correspondence,
    NodeMapping,
    are_isomorphic,
    induced_subnetwork,
    is_metric,
    permute_network,
    triangle_violations,
    validate_network,
)


def _assert_network_invariants(test: unittest.TestCase, net) -> None:
    n = net.size
    test.assertEqual(net.dissim.shape, (n, n))
    test.assertTrue(np.all(np.diag(net.dissim) == 0.0))
    test.assertTrue(np.array_equal(net.dissim, net.dissim.T))
    test.assertTrue(np.all(net.dissim[~np.eye(n, dtype=bool)] > 0.0))
    test.assertEqual(len(set(net.labels)), n)


class TestValidateNetwork(unittest.TestCase):
    """Tests class for network validation."""

    def test_minimal_network(self):
        """Test the minimal symmetric two-node case."""
        net = validate_network([[0, 1], [1, 0]])
        self.assertEqual(net.size, 2)
        self.assertEqual(net.labels, ("0", "1"))
        self.assertEqual(net.weight(0, 1), 1.0)
        _assert_network_invariants(self, net)

    def test_gamma_network(self):
        """Test the gamma=1 network with labels."""
        net = validate_network([[0, 1, 1], [1, 0, 11], [1, 11, 0]], ["a", "b", "c"])
        self.assertEqual(net.index_of("c"), 2)
        self.assertEqual(net.weight(1, 2), 11.0)
        self.assertEqual(len(net), 3)
        _assert_network_invariants(self, net)

    def test_single_node(self):
        """Test that a one-node network is valid."""
        self.assertEqual(validate_network([[0.0]]).size, 1)

    def test_asymmetric(self):
        """Test that an asymmetric pair is reported with its indices."""
        with self.assertRaises(AsymmetricMatrix) as context:
            validate_network([[0, 1], [2, 0]])
        self.assertEqual(context.exception.indices, (0, 1))

    def test_nonzero_diagonal(self):
        """Test that a nonzero self-dissimilarity is rejected."""
        with self.assertRaises(NonzeroDiagonal) as context:
            validate_network([[0, 1], [1, 0.5]])
        self.assertEqual(context.exception.indices, (1, 1))

    def test_nonpositive_off_diagonal(self):
        """Test that zero, negative and non-finite weights are rejected."""
        for matrix in ([[0, 0], [0, 0]], [[0, -1], [-1, 0]], [[0, np.inf], [np.inf, 0]]):
            with self.subTest(matrix=matrix), self.assertRaises(NonpositiveOffDiagonal):
                validate_network(matrix)

    def test_shape_errors(self):
        """Test non-square, empty, ragged and label-count mismatches."""
        for matrix in ([[0, 1, 2], [1, 0, 3]], [], [[0, 1], [1]]):
            with self.subTest(matrix=matrix), self.assertRaises(ShapeMismatch):
                validate_network(matrix)
        with self.assertRaises(ShapeMismatch):
            validate_network([[0, 1], [1, 0]], ["a"])

    def test_duplicate_labels(self):
        """Test that repeated labels are rejected."""
        with self.assertRaises(DuplicateLabel) as context:
            validate_network([[0, 1], [1, 0]], ["a", "a"])
        self.assertEqual(context.exception.indices, ("a",))

    def test_validation_errors_share_base(self):
        """Test that every validation failure is a ValidationError."""
        for error in (AsymmetricMatrix, NonzeroDiagonal, NonpositiveOffDiagonal, ShapeMismatch, DuplicateLabel):
            self.assertTrue(issubclass(error, ValidationError))

    def test_symmetrised_within_tolerance(self):
        """Test that sub-tolerance asymmetry is averaged away and the matrix is read-only."""
        net = validate_network([[0, 1.0], [1.0 + 1e-12, 0]])
        self.assertEqual(net.dissim[0, 1], net.dissim[1, 0])
        with self.assertRaises(ValueError):
            net.dissim[0, 1] = 5.0

    def test_random_networks_hold_invariants(self):
        """Test that random accepted networks satisfy every invariant."""
        rng = np.random.default_rng(3)
        for n in range(1, 7):
            _assert_network_invariants(self, tests.random_network(rng, n))

    def test_equals_and_to_dict(self):
        """Test equality within tolerance and the JSON-ready form."""
        net = validate_network([[0, 2], [2, 0]], ["u", "v"])
        self.assertTrue(net.equals(validate_network([[0, 2 + 1e-12], [2 + 1e-12, 0]], ["u", "v"])))
        self.assertFalse(net.equals(validate_network([[0, 2], [2, 0]], ["v", "u"])))
        self.assertEqual(net.to_dict(), {"labels": ["u", "v"], "dissim": [[0.0, 2.0], [2.0, 0.0]]})


class TestMappingsAndCorrespondences(unittest.TestCase):
    """Tests class for node maps and correspondences."""

    def test_node_mapping(self):
        """Test identity, indexing and validation."""
        mapping = NodeMapping.identity(3)
        self.assertEqual(mapping.assignment, (0, 1, 2))
        self.assertEqual(mapping[2], 2)
        self.assertEqual(len(mapping), 3)
        self.assertIs(mapping.validate(3, 3), mapping)
        with self.assertRaises(DimensionMismatch):
            mapping.validate(2, 3)
        with self.assertRaises(InvalidMapping):
            NodeMapping((0, 3)).validate(2, 3)

    def test_correspondence_coverage(self):
        """Test that both sides must be covered."""
        Correspondence.from_pairs([(0, 0), (0, 1)]).validate(1, 2)
        with self.assertRaises(InvalidCorrespondence):
            Correspondence.from_pairs([(0, 0)]).validate(1, 2)
        with self.assertRaises(InvalidCorrespondence):
            Correspondence.from_pairs([(0, 0), (0, 5)]).validate(1, 2)

    def test_correspondence_from_mapping(self):
        """Test the graph of a map and the sorted pair order."""
        correspondence = Correspondence.from_mapping(NodeMapping((1, 0, 1)))
        self.assertEqual(correspondence.sorted_pairs(), [(0, 1), (1, 0), (2, 1)])
        correspondence.validate(3, 2)


class TestIsomorphism(unittest.TestCase):
    """Tests class for isomorphism checking."""

    def test_relabelled_network_is_isomorphic(self):
        """Test that a permuted network is isomorphic to the original."""
        rng = np.random.default_rng(11)
        for n in range(1, 7):
            net = tests.random_network(rng, n)
            permuted = permute_network(net, rng.permutation(n))
            self.assertTrue(are_isomorphic(net, permuted))
            self.assertTrue(are_isomorphic(permuted, net))
            self.assertTrue(are_isomorphic(net, net))

    def test_gamma_networks_not_isomorphic(self):
        """Test that different gamma networks are not isomorphic."""
        self.assertFalse(are_isomorphic(gen_gamma(1), gen_gamma(2)))

    def test_random_distinct_networks(self):
        """Test against brute force over all 24 permutations of random 4-node networks."""
        rng = np.random.default_rng(5)
        for _ in range(10):
            a, b = tests.random_network(rng, 4), tests.random_network(rng, 4)
            brute = any(
                np.allclose(a.dissim, b.dissim[np.ix_(perm, perm)], atol=1e-9, rtol=0)
                for perm in itertools.permutations(range(4))
            )
            self.assertEqual(are_isomorphic(a, b), brute)
            self.assertFalse(brute)

    def test_same_weights_different_structure(self):
        """Test networks with equal weight multisets but no isomorphism."""
        a = validate_network([[0, 1, 1, 2], [1, 0, 2, 2], [1, 2, 0, 2], [2, 2, 2, 0]])
        b = validate_network([[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 1], [2, 2, 1, 0]])
        self.assertFalse(are_isomorphic(a, b))

    def test_size_mismatch_and_guard(self):
        """Test different sizes and the node-count guard."""
        rng = np.random.default_rng(0)
        self.assertFalse(are_isomorphic(tests.random_network(rng, 2), tests.random_network(rng, 3)))
        big = tests.random_network(rng, 9)
        with self.assertRaises(TooLarge):
            are_isomorphic(big, big)


class TestNetworkHelpers(unittest.TestCase):
    """Tests class for permutation, restriction and triangle checks."""

    def test_permute_network(self):
        """Test that node k of the result is node perm[k] of the input."""
        net = gen_gamma(1)
        permuted = permute_network(net, [2, 0, 1])
        self.assertEqual(permuted.labels, ("c", "a", "b"))
        self.assertEqual(permuted.weight(0, 2), 11.0)
        with self.assertRaises(DimensionMismatch):
            permute_network(net, [0, 0, 1])

    def test_induced_subnetwork(self):
        """Test restriction to a node subset."""
        sub = induced_subnetwork(gen_gamma(1), [2, 1])
        self.assertEqual(sub.labels, ("c", "b"))
        self.assertEqual(sub.weight(0, 1), 11.0)
        for nodes in ([], [0, 0], [3]):
            with self.subTest(nodes=nodes), self.assertRaises(DimensionMismatch):
                induced_subnetwork(gen_gamma(1), nodes)

    def test_triangle_violations_gamma_family(self):
        """Test that gamma <= 5 violates the triangle inequality and gamma >= 5.5 does not."""
        self.assertEqual(triangle_violations(gen_gamma(1)), [(1, 2, 0)])
        self.assertFalse(is_metric(gen_gamma(5)))
        self.assertTrue(is_metric(gen_gamma(5.5)))
        self.assertTrue(is_metric(gen_gamma(11)))

    def test_triangle_violations_brute_force(self):
        """Test against an explicit triple loop."""
        rng = np.random.default_rng(8)
        for _ in range(20):
            net = tests.random_network(rng, 5, low=0.1, high=3.0)
            expected = [
                (i, j, k)
                for i in range(5)
                for j in range(i + 1, 5)
                for k in range(5)
                if k not in (i, j) and net.dissim[i, j] > net.dissim[i, k] + net.dissim[k, j] + 1e-9
            ]
            self.assertEqual(triangle_violations(net), expected)
