import os
import unittest

import numpy as np

import lpga.exceptions
import lpga.spatial
import lpga.verify
import lpga.io.family_file
from lpga.io.graph_file import bundled_graph


class TestMatrixSerialisation(unittest.TestCase):
    def test_dense(self):
        content = lpga.io.family_file.matrix_to_dict(np.array([[1, 1j], [0, 0]]))
        self.assertEqual(
            {
                "format": "dense",
                "shape": [2, 2],
                "data": [[[1.0, 0.0], [0.0, 1.0]], [[0.0, 0.0], [0.0, 0.0]]],
            },
            content,
        )

    def test_sparse(self):
        content = lpga.io.family_file.matrix_to_dict(np.eye(2), sparse=True)
        self.assertEqual(
            [[0, 0, [1.0, 0.0]], [1, 1, [1.0, 0.0]]], content["entries"]
        )

    def test_large_matrices_are_sparse(self):
        size = lpga.io.family_file.SPARSE_THRESHOLD
        content = lpga.io.family_file.matrix_to_dict(np.eye(size))
        self.assertEqual("sparse", content["format"])
        self.assertEqual(size, len(content["entries"]))

    def test_sparse_from_dict(self):
        content = {"format": "sparse", "shape": [2, 2], "entries": [[1, 0, [0, 2]]]}
        matrix = lpga.io.family_file.matrix_from_dict(content)
        np.testing.assert_allclose(np.array([[0, 0], [2j, 0]]), matrix)

    def test_malformed_matrices_raise(self):
        for content in (
            {"shape": [2]},
            {"format": "banded", "shape": [1, 1], "data": [[[1, 0]]]},
            {"format": "dense", "shape": [2, 2], "data": [[[1, 0]]]},
            {"format": "sparse", "shape": [1, 1], "entries": [[0, 0, 1]]},
        ):
            with self.subTest(content=content):
                with self.assertRaises(lpga.exceptions.FileFormatError):
                    lpga.io.family_file.matrix_from_dict(content)


class TestFamilyFile(unittest.TestCase):
    def setUp(self):
        self.filename = "test-family.json"
        self.graph = bundled_graph("loop")
        self.family = lpga.spatial.atomic_ck_family(self.graph, 3)

    def tearDown(self):
        if os.path.exists(self.filename):
            os.remove(self.filename)

    def importer(self):
        return lpga.io.family_file.FamilyImporter(graph=self.graph)

    def test_to_dict(self):
        content = lpga.io.family_file.family_to_dict(self.family)
        self.assertEqual("loop", content["graph"])
        self.assertEqual(3.0, content["p"])
        self.assertEqual({"a": [1.0, 0.0]}, content["phases"])
        self.assertEqual(
            {"format": "dense", "shape": [1, 1], "data": [[[1.0, 0.0]]]},
            content["S"]["a"],
        )
        self.assertEqual(["v:0"], content["space"]["atoms"])

    def test_exported_file_can_be_read(self):
        family = lpga.spatial.atomic_ck_family(
            bundled_graph("chain3"), 3, phases={"b": 1j},
            weights={"u:0": 2, "v:0": 1, "w:0": 0.5},
        )
        exporter = lpga.io.family_file.FamilyExporter(target=self.filename)
        exporter.export_from(family)
        importer = lpga.io.family_file.FamilyImporter(
            source=self.filename, graph=family.graph
        )
        imported = importer.import_()
        self.assertEqual(family.space, imported.space)
        np.testing.assert_allclose(family.S["b"].matrix, imported.S["b"].matrix)
        self.assertIsNotNone(imported.S["b"].certificate)
        self.assertFalse(imported.is_exact)
        self.assertTrue(lpga.verify.check_ck_family(imported).passed)

    def test_sparse_export(self):
        exporter = lpga.io.family_file.FamilyExporter(sparse=True)
        text = exporter.export_from(self.family)
        self.assertIn('"sparse"', text)
        self.assertEqual(3.0, self.importer().import_from_text(text).p)

    def test_bare_matrix_gets_no_certificate(self):
        content = lpga.io.family_file.family_to_dict(self.family)
        content["S"]["a"]["data"] = [[[0.5, 0.0]]]
        family = self.importer().import_from_dict(content)
        self.assertIsNone(family.S["a"].certificate)
        self.assertFalse(lpga.verify.check_ck_family(family).passed)

    def test_other_graph_raises(self):
        content = lpga.io.family_file.family_to_dict(self.family)
        content["graph"] = "a2"
        with self.assertRaises(lpga.exceptions.GraphMismatchError):
            self.importer().import_from_dict(content)

    def test_missing_generator_raises(self):
        content = lpga.io.family_file.family_to_dict(self.family)
        del content["T"]["a"]
        with self.assertRaises(lpga.exceptions.FileFormatError):
            self.importer().import_from_dict(content)

    def test_matrix_not_fitting_space_raises(self):
        content = lpga.io.family_file.family_to_dict(self.family)
        content["E"]["v"] = lpga.io.family_file.matrix_to_dict(np.eye(2))
        with self.assertRaises(lpga.exceptions.FileFormatError):
            self.importer().import_from_dict(content)

    def test_inconsistent_space_raises(self):
        content = lpga.io.family_file.family_to_dict(self.family)
        content["space"]["edge_support"] = {}
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            self.importer().import_from_dict(content)


if __name__ == "__main__":
    unittest.main()
