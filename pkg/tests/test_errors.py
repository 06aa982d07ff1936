"""Tests for errors.py file."""

import unittest

from src import errors


class TestErrors(unittest.TestCase):
    """Tests class for the exception hierarchy."""

    def test_parse_error_location(self):
        """Test the path, line and column prefix."""
        error = errors.ParseError("bad cell", path="net.csv", line=3, column=2)
        self.assertEqual(str(error), "net.csv:3:2: bad cell")
        self.assertEqual((error.line, error.column), (3, 2))
        self.assertEqual(str(errors.ParseError("bad")), "bad")

    def test_too_large_message(self):
        """Test the guard description."""
        error = errors.TooLarge("d_PE maps |Y|^|X|", 16**16, 10**7)
        self.assertTrue(str(error).startswith("d_PE maps |Y|^|X|: "))
        self.assertEqual(error.limit, 10**7)

    def test_validation_indices(self):
        """Test that subclasses keep offending indices."""
        error = errors.AsymmetricMatrix("asymmetric", (0, 1))
        self.assertIsInstance(error, errors.ValidationError)
        self.assertEqual(error.indices, (0, 1))
        self.assertEqual(errors.ShapeMismatch("empty").indices, ())

    def test_hierarchy(self):
        """Test every error derives from the package base class."""
        for error_class in (
            errors.DimensionMismatch,
            errors.InvalidPoint,
            errors.DuplicatePoint,
            errors.InvalidMapping,
            errors.InvalidCorrespondence,
            errors.DegenerateInput,
            errors.InsufficientData,
            errors.ConfigInfeasible,
            errors.InvalidN,
            errors.InvalidGamma,
            errors.InvalidSigma,
            errors.InvalidFeatureDim,
            errors.DegenerateFeature,
        ):
            with self.subTest(error_class=error_class.__name__):
                self.assertTrue(issubclass(error_class, errors.NetmetricError))
        self.assertTrue(issubclass(errors.InvalidGamma, errors.GeneratorError))
