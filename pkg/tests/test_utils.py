import fractions
import unittest

import numpy as np
import sympy
from hypothesis import given, settings, strategies as st

import lpga.utils


class TestParseRational(unittest.TestCase):
    def test_fraction_string(self):
        self.assertEqual(fractions.Fraction(1, 2), lpga.utils.parse_rational("1/2"))

    def test_decimal_string_is_exact(self):
        self.assertEqual(fractions.Fraction(1, 4), lpga.utils.parse_rational(" 0.25 "))

    def test_sympy_rational(self):
        self.assertEqual(
            fractions.Fraction(1, 3), lpga.utils.parse_rational(sympy.Rational(1, 3))
        )

    def test_garbage_raises(self):
        with self.assertRaises(ValueError):
            lpga.utils.parse_rational("one half")


class TestGaussianRationals(unittest.TestCase):
    def setUp(self):
        self.field = lpga.utils.EXACT

    def test_convert_pair(self):
        value = self.field.convert(("1/2", "-1"))
        self.assertEqual(("1/2", "-1"), self.field.to_strings(value))

    def test_convert_complex(self):
        value = self.field.convert(0.5j)
        self.assertEqual(("0", "1/2"), self.field.to_strings(value))

    def test_to_complex(self):
        value = self.field.convert(("1/2", "-1"))
        self.assertEqual(0.5 - 1j, self.field.to_complex(value))

    def test_describe(self):
        self.assertEqual("3", self.field.describe(self.field.convert(3)))
        self.assertEqual("1i", self.field.describe(self.field.convert(1j)))
        self.assertEqual(
            "(1/2-1i)", self.field.describe(self.field.convert(("1/2", "-1")))
        )

    def test_is_unimodular(self):
        self.assertTrue(self.field.is_unimodular(self.field.convert(("3/5", "4/5"))))
        self.assertFalse(self.field.is_unimodular(self.field.convert(("1", "1"))))

    def test_conjugate(self):
        value = self.field.conjugate(self.field.convert(1j))
        self.assertEqual(-1j, self.field.to_complex(value))

    def test_conjugate_stays_exact(self):
        value = self.field.conjugate(self.field.convert(("3/5", "4/5")))
        self.assertIsInstance(value, sympy.QQ_I.dtype)
        self.assertEqual(("3/5", "-4/5"), self.field.to_strings(value))


class TestComplexNumbers(unittest.TestCase):
    def setUp(self):
        self.field = lpga.utils.NUMERIC

    def test_convert_pair(self):
        self.assertEqual(0.5 + 1j, self.field.convert(("1/2", "1")))

    def test_convert_exact_value(self):
        value = lpga.utils.EXACT.convert(("0", "1"))
        self.assertEqual(1j, self.field.convert(value))

    def test_tiny_values_are_zero(self):
        self.assertTrue(self.field.is_zero(1e-15))
        self.assertFalse(self.field.is_zero(1e-10))

    def test_is_unimodular(self):
        self.assertTrue(self.field.is_unimodular(np.exp(0.3j)))
        self.assertFalse(self.field.is_unimodular(1.1))


class TestCoefficientField(unittest.TestCase):
    def test_exact(self):
        self.assertIs(lpga.utils.EXACT, lpga.utils.coefficient_field(True))

    def test_numeric(self):
        self.assertIs(lpga.utils.NUMERIC, lpga.utils.coefficient_field(False))


class TestComplexPairs(unittest.TestCase):
    def test_parse_pair(self):
        self.assertEqual(("0", "1"), lpga.utils.parse_complex_pair("0, 1"))

    def test_parse_real_number(self):
        self.assertEqual(("2", "0"), lpga.utils.parse_complex_pair("2"))

    def test_parse_too_many_parts_raises(self):
        with self.assertRaises(ValueError):
            lpga.utils.parse_complex_pair("1,2,3")

    def test_parse_empty_part_raises(self):
        with self.assertRaises(ValueError):
            lpga.utils.parse_complex_pair(",1")

    def test_exact_unimodular_value(self):
        exact, numeric = lpga.utils.exact_or_numeric(("3/5", "4/5"))
        self.assertIsNotNone(exact)
        self.assertAlmostEqual(0.6 + 0.8j, numeric)

    def test_value_off_the_circle_is_numeric_only(self):
        exact, numeric = lpga.utils.exact_or_numeric(("1", "1"))
        self.assertIsNone(exact)
        self.assertEqual(1 + 1j, numeric)


class TestRandomGraph(unittest.TestCase):
    def test_reproducible(self):
        first = lpga.utils.random_graph(np.random.default_rng(7), 4, 6)
        second = lpga.utils.random_graph(np.random.default_rng(7), 4, 6)
        self.assertEqual(first, second)

    def test_names(self):
        graph = lpga.utils.random_graph(np.random.default_rng(0), 3, 2)
        self.assertEqual(("v0", "v1", "v2"), graph.vertices)
        self.assertEqual(("e00", "e01"), graph.edge_ids)

    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        n_vertices=st.integers(min_value=2, max_value=6),
        n_edges=st.integers(min_value=0, max_value=10),
    )
    @settings(max_examples=25, deadline=None)
    def test_acyclic(self, seed, n_vertices, n_edges):
        graph = lpga.utils.random_graph(
            np.random.default_rng(seed), n_vertices, n_edges, acyclic=True
        )
        self.assertTrue(graph.is_acyclic())
        self.assertEqual(n_edges, len(graph.edges))

    def test_acyclic_with_single_vertex_has_no_edges(self):
        graph = lpga.utils.random_graph(
            np.random.default_rng(0), 1, 3, acyclic=True
        )
        self.assertEqual((), graph.edges)

    def test_random_unimodular(self):
        value = lpga.utils.random_unimodular(np.random.default_rng(0))
        self.assertAlmostEqual(1.0, abs(value))


if __name__ == "__main__":
    unittest.main()
