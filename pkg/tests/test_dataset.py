import unittest

import numpy as np

import lpga.analysis
import lpga.dataset
import lpga.exceptions
from lpga import leavitt, spatial
from lpga.io.graph_file import bundled_graph


class TestOperatorDataset(unittest.TestCase):
    def test_instantiate_class(self):
        lpga.dataset.OperatorDataset()

    def test_from_matrix(self):
        dataset = lpga.dataset.OperatorDataset.from_matrix(np.eye(2), p=3)
        np.testing.assert_allclose(np.eye(2), dataset.matrix)
        np.testing.assert_allclose([1, 1], dataset.weights)
        self.assertEqual(3.0, dataset.p)
        self.assertEqual(["0", "1"], dataset.labels)

    def test_from_matrix_sets_calculation(self):
        dataset = lpga.dataset.OperatorDataset.from_matrix(np.eye(2), p=3)
        self.assertEqual(
            "spatial representation", dataset.metadata.calculation.type
        )
        self.assertEqual({"p": 3.0}, dataset.metadata.calculation.parameters)

    def test_nonsquare_matrix_raises(self):
        with self.assertRaises(lpga.exceptions.DimensionError):
            lpga.dataset.OperatorDataset.from_matrix(np.ones((2, 3)))

    def test_wrong_number_of_weights_raises(self):
        with self.assertRaises(lpga.exceptions.DimensionError):
            lpga.dataset.OperatorDataset.from_matrix(np.eye(2), weights=[1])

    def test_exponent_below_one_raises(self):
        with self.assertRaises(ValueError):
            lpga.dataset.OperatorDataset.from_matrix(np.eye(2), p=0)

    def test_from_family(self):
        graph = bundled_graph("a2")
        family = spatial.atomic_ck_family(
            graph, 3, weights={"v:0": 1, "w:0": 8}
        )
        element = leavitt.LeavittAlgebra(graph).s("a")
        dataset = lpga.dataset.OperatorDataset.from_family(
            spatial.represent(element, family), family, label="s_a"
        )
        self.assertEqual(["v:0", "w:0"], dataset.labels)
        np.testing.assert_allclose([1, 8], dataset.weights)
        self.assertEqual("s_a", dataset.label)
        analysis = dataset.analyse(lpga.analysis.OperatorNorm())
        self.assertAlmostEqual(1.0, analysis.result.value)


if __name__ == "__main__":
    unittest.main()
