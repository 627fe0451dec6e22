import os
import unittest

import lpga.exceptions
import lpga.io.mapping_file
from lpga.io.graph_file import bundled_graph


def write(filename, text):
    with open(filename, "w", encoding="utf-8") as file:
        file.write(text)


class TestMappingImporter(unittest.TestCase):
    def setUp(self):
        self.filename = "test-mapping.yaml"

    def tearDown(self):
        if os.path.exists(self.filename):
            os.remove(self.filename)

    def test_yaml(self):
        write(self.filename, "v: b\nw: 2\n")
        importer = lpga.io.mapping_file.MappingImporter(source=self.filename)
        self.assertEqual({"v": "b", "w": 2}, importer.import_())

    def test_json(self):
        write(self.filename, '{"v:0": 2.0, "v:1": 0.5}')
        importer = lpga.io.mapping_file.MappingImporter(source=self.filename)
        self.assertEqual({"v:0": 2.0, "v:1": 0.5}, importer.import_())

    def test_nested_mapping_raises(self):
        write(self.filename, "v:\n  w: b\n")
        importer = lpga.io.mapping_file.MappingImporter(source=self.filename)
        with self.assertRaises(lpga.exceptions.FileFormatError):
            importer.import_()

    def test_list_raises(self):
        write(self.filename, "- v\n- w\n")
        importer = lpga.io.mapping_file.MappingImporter(source=self.filename)
        with self.assertRaises(lpga.exceptions.FileFormatError):
            importer.import_()

    def test_missing_file_raises(self):
        importer = lpga.io.mapping_file.MappingImporter(source="nonexisting.yaml")
        with self.assertRaises(lpga.exceptions.FileFormatError):
            importer.import_()


class TestReadPolicy(unittest.TestCase):
    def setUp(self):
        self.filename = "test-policy.yaml"
        self.graph = bundled_graph("cuntz2")

    def tearDown(self):
        if os.path.exists(self.filename):
            os.remove(self.filename)

    def test_overrides_default(self):
        write(self.filename, "v: b\n")
        policy = lpga.io.mapping_file.read_policy(self.filename, self.graph)
        self.assertEqual("b", policy.special_edge("v"))

    def test_edge_not_ending_in_vertex_raises(self):
        write(self.filename, "v: c\n")
        with self.assertRaises(lpga.exceptions.PolicyError):
            lpga.io.mapping_file.read_policy(self.filename, self.graph)


class TestReadWeights(unittest.TestCase):
    def setUp(self):
        self.filename = "test-weights.yaml"

    def tearDown(self):
        if os.path.exists(self.filename):
            os.remove(self.filename)

    def test_weights_are_floats(self):
        write(self.filename, '"v:0": 2\n"w:0": 0.5\n')
        weights = lpga.io.mapping_file.read_weights(self.filename)
        self.assertEqual({"v:0": 2.0, "w:0": 0.5}, weights)
        self.assertIsInstance(weights["v:0"], float)

    def test_non_numeric_weight_raises(self):
        write(self.filename, '"v:0": heavy\n')
        with self.assertRaises(lpga.exceptions.FileFormatError):
            lpga.io.mapping_file.read_weights(self.filename)


if __name__ == "__main__":
    unittest.main()
