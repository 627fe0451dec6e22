import unittest

import aspecd.exceptions
import numpy as np

import lpga.analysis
import lpga.dataset
import lpga.pnorm


class TestOperatorNorm(unittest.TestCase):
    def setUp(self):
        self.analysis = lpga.analysis.OperatorNorm()
        self.dataset = lpga.dataset.OperatorDataset.from_matrix(
            np.ones((2, 2)), p=3
        )

    def test_instantiate_class(self):
        pass

    def test_has_appropriate_description(self):
        self.assertIn("operator norm", self.analysis.description.lower())

    def test_result_is_norm_estimate(self):
        analysis = self.dataset.analyse(self.analysis)
        self.assertIsInstance(analysis.result, lpga.pnorm.NormEstimate)
        self.assertAlmostEqual(2.0, analysis.result.value, places=6)

    def test_exponent_parameter_overrides_dataset(self):
        self.analysis.parameters["p"] = 1
        analysis = self.dataset.analyse(self.analysis)
        self.assertEqual(lpga.pnorm.NormMethod.EXACT_P1, analysis.result.method)

    def test_weights_of_dataset_are_used(self):
        dataset = lpga.dataset.OperatorDataset.from_matrix(
            np.array([[0, 0], [1, 0]]), weights=[1, 8], p=3
        )
        analysis = dataset.analyse(self.analysis)
        self.assertAlmostEqual(2.0, analysis.result.value)

    def test_exponent_below_one_raises(self):
        self.analysis.parameters["p"] = 0.5
        with self.assertRaises(ValueError):
            self.dataset.analyse(self.analysis)

    def test_not_applicable_to_vectors(self):
        self.dataset.data.data = np.ones(3)
        with self.assertRaises(aspecd.exceptions.NotApplicableToDatasetError):
            self.dataset.analyse(self.analysis)


class TestHermitianIdempotency(unittest.TestCase):
    def setUp(self):
        self.analysis = lpga.analysis.HermitianIdempotency()

    def test_has_appropriate_description(self):
        self.assertIn("hermitian", self.analysis.description.lower())

    def test_indicator(self):
        dataset = lpga.dataset.OperatorDataset.from_matrix(np.diag([1, 0]), p=3)
        analysis = dataset.analyse(self.analysis)
        self.assertIsInstance(analysis.result, lpga.pnorm.HermitianReport)
        self.assertTrue(analysis.result.is_hermitian)

    def test_projection_depends_on_exponent(self):
        matrix = np.ones((2, 2)) / 2
        for p, expected in ((2, True), (3, False)):
            with self.subTest(p=p):
                dataset = lpga.dataset.OperatorDataset.from_matrix(matrix, p=p)
                analysis = dataset.analyse(self.analysis)
                self.assertEqual(expected, analysis.result.is_hermitian)

    def test_too_few_samples_raise(self):
        dataset = lpga.dataset.OperatorDataset.from_matrix(np.eye(2))
        self.analysis.parameters["samples"] = 2
        with self.assertRaises(ValueError):
            dataset.analyse(self.analysis)


if __name__ == "__main__":
    unittest.main()
