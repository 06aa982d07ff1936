"""Tests for network_io.py and filesystem_utils.py files."""

import os
import shutil
import unittest

import numpy as np

import tests
from src import filesystem_utils, network_io
from src.errors import AsymmetricMatrix, ParseError
from src.generators import gen_gamma
from src.sampled_space import midpoint_augment


class TestNetworkIO(unittest.TestCase):
    """Tests class for network files."""

    def setUp(self) -> None:
        """Initialize tests."""
        self.temp_dir = os.path.join(tests.TEMP_DIR, "network_io")
        os.makedirs(self.temp_dir, exist_ok=True)
        return super().setUp()

    def tearDown(self) -> None:
        """Remove temp files."""
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        return super().tearDown()

    def test_load_json(self):
        """Test loading the gamma=1 JSON file."""
        self.assertTrue(network_io.load_network(tests.GAMMA1_PATH).equals(gen_gamma(1)))

    def test_load_csv(self):
        """Test loading a labelled CSV matrix."""
        net = network_io.load_network(tests.TWO_NODE_PATH)
        self.assertEqual(net.labels, ("u", "v"))
        self.assertEqual(net.weight(0, 1), 4.0)

    def test_load_asymmetric_csv(self):
        """Test that invariant violations surface as validation errors with indices."""
        with self.assertRaises(AsymmetricMatrix) as context:
            network_io.load_network(tests.ASYMMETRIC_PATH)
        self.assertEqual(context.exception.indices, (1, 2))

    def test_missing_file(self):
        """Test that a missing file is a parse error naming the path."""
        path = os.path.join(self.temp_dir, "missing.json")
        with self.assertRaises(ParseError) as context:
            network_io.load_network(path)
        self.assertEqual(context.exception.path, path)

    def test_malformed_files(self):
        """Test line and column reporting for malformed JSON and CSV."""
        cases = {
            "broken.json": ('{"dissim": [[0, 1],\n  [1, 0]', 2),
            "not_object.json": ("[[0, 1], [1, 0]]", 1),
            "short_row.csv": ("a,b\n0,1\n1\n", 3),
            "text_cell.csv": ("a,b\n0,x\n1,0\n", 2),
            "missing_row.csv": ("a,b\n0,1\n", 3),
        }
        for name, (content, line) in cases.items():
            path = os.path.join(self.temp_dir, name)
            filesystem_utils.write_text(path, content)
            with self.subTest(name=name), self.assertRaises(ParseError) as context:
                network_io.load_network(path)
            self.assertEqual(context.exception.line, line)
        with self.assertRaises(ParseError):
            network_io.load_network(self._write("empty.csv", ""))

    def test_labels_must_be_array(self):
        """Test that a label string is rejected instead of split into characters."""
        path = self._write("string_labels.json", '{"labels": "ab", "dissim": [[0, 1], [1, 0]]}')
        with self.assertRaises(ParseError) as context:
            network_io.load_network(path)
        self.assertIn("'labels' must be an array", str(context.exception))
        self.assertEqual(network_io.load_network(self._write("no_labels.json", '{"dissim": [[0, 1], [1, 0]]}')).labels, ("0", "1"))

    def test_load_tolerance(self):
        """Test that a looser tolerance admits a small asymmetry and averages it away."""
        path = self._write("near_symmetric.csv", "a,b\n0,1.0\n1.000001,0\n")
        with self.assertRaises(AsymmetricMatrix):
            network_io.load_network(path)
        net = network_io.load_network(path, tol=1e-5)
        self.assertAlmostEqual(net.weight(0, 1), 1.0000005, places=12)

    def test_save_and_reload(self):
        """Test that written networks reload exactly in both formats."""
        rng = np.random.default_rng(12)
        net = tests.random_network(rng, 5)
        for name in ("net.json", "net.csv"):
            with self.subTest(name=name):
                path = network_io.save_network(net, os.path.join(self.temp_dir, name))
                self.assertTrue(np.array_equal(network_io.load_network(path).dissim, net.dissim))

    def test_sampled_space_file(self):
        """Test that a saved midpoint space reloads with the same matrix."""
        space = midpoint_augment(gen_gamma(1))
        path = network_io.save_sampled_space(space, os.path.join(self.temp_dir, "space.json"))
        loaded = network_io.load_sampled_space(path)
        self.assertEqual(loaded.labels, space.labels)
        self.assertTrue(np.allclose(loaded.dissim, space.dissim, atol=1e-12))

    def test_sampled_space_requires_points(self):
        """Test that a plain network file is not a sampled space."""
        with self.assertRaises(ParseError):
            network_io.load_sampled_space(tests.GAMMA1_PATH)

    def test_sampled_space_vertex_order(self):
        """Test that points must start with the base vertices."""
        path = self._write(
            "bad_space.json",
            '{"labels": ["a", "b"], "dissim": [[0, 1], [1, 0]], "points": [[0, 1], [1, 0]]}',
        )
        with self.assertRaises(ParseError):
            network_io.load_sampled_space(path)

    def test_matrix_and_embedding_tables(self):
        """Test distance and embedding CSV tables."""
        matrix = np.array([[0.0, 1.0 / 3.0], [1.0 / 3.0, 0.0]])
        path = network_io.save_matrix_csv(["x", "y"], matrix, os.path.join(self.temp_dir, "distances.csv"))
        labels, loaded = network_io.load_matrix_csv(path)
        self.assertEqual(labels, ["x", "y"])
        self.assertTrue(np.array_equal(loaded, matrix))

        coords = np.array([[0.5, -1.0], [2.0, 0.25]])
        path = network_io.save_embedding_csv(["x", "y"], coords, ["er", "corr"], os.path.join(self.temp_dir, "e.csv"))
        with open(path, encoding="utf-8") as handle:
            self.assertEqual(handle.readline().strip(), "name,x,y,model")
        names, loaded_coords, models = network_io.load_embedding_csv(path)
        self.assertEqual((names, models), (["x", "y"], ["er", "corr"]))
        self.assertTrue(np.array_equal(loaded_coords, coords))

    def test_embedding_header_checked(self):
        """Test that an embedding table needs the expected header."""
        with self.assertRaises(ParseError):
            network_io.load_embedding_csv(self._write("wrong.csv", "a,b\n1,2\n"))

    def _write(self, name: str, content: str) -> str:
        return filesystem_utils.write_text(os.path.join(self.temp_dir, name), content)


class TestFilesystemUtils(unittest.TestCase):
    """Tests class for file system helpers."""

    def setUp(self) -> None:
        """Initialize tests."""
        self.temp_dir = os.path.join(tests.TEMP_DIR, "filesystem_utils")
        return super().setUp()

    def tearDown(self) -> None:
        """Remove temp files."""
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        return super().tearDown()

    def test_ensure_directory_exists(self):
        """Test nested creation and the absolute return path."""
        path = filesystem_utils.ensure_directory_exists(os.path.join(self.temp_dir, "a", "b"))
        self.assertTrue(os.path.isdir(path))
        self.assertTrue(os.path.isabs(path))
        self.assertEqual(filesystem_utils.ensure_directory_exists(path), path)

    def test_write_text_replaces(self):
        """Test that writing twice replaces content and leaves no temporary file."""
        target = os.path.join(self.temp_dir, "nested", "out.txt")
        filesystem_utils.write_text(target, "first\n")
        path = filesystem_utils.write_text(target, "second\n")
        with open(path, encoding="utf-8") as handle:
            self.assertEqual(handle.read(), "second\n")
        self.assertEqual(os.listdir(os.path.dirname(path)), ["out.txt"])
