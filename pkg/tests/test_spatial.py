import unittest

import numpy as np
import sympy
from hypothesis import given, settings, strategies as st

import lpga.exceptions
from lpga import graphs, leavitt, spatial
from lpga.io.graph_file import bundled_graph


def two_atoms(weights=None):
    return spatial.AtomicMeasureSpace(atoms=["x", "y"], weights=weights)


class TestAtomicMeasureSpace(unittest.TestCase):
    def test_weights_default_to_one(self):
        space = two_atoms()
        self.assertEqual({"x": 1.0, "y": 1.0}, space.weights)
        self.assertTrue(space.has_unit_weights())

    def test_nonpositive_weight_raises(self):
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            two_atoms(weights={"x": 0})

    def test_weight_of_unknown_atom_raises(self):
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            two_atoms(weights={"z": 1})

    def test_duplicate_atoms_raise(self):
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            spatial.AtomicMeasureSpace(atoms=["x", "x"])

    def test_index_of_unknown_atom_raises(self):
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            two_atoms().index("z")

    def test_weight_vector_follows_atom_order(self):
        space = two_atoms(weights={"y": 3})
        np.testing.assert_allclose([1.0, 3.0], space.weight_vector())

    def test_indicator(self):
        np.testing.assert_allclose(np.diag([0, 1]), two_atoms().indicator(["y"]))

    def test_validate_accepts_synthesised_space(self):
        family = spatial.atomic_ck_family(bundled_graph("chain3"), 2)
        family.space.validate(family.graph)

    def test_validate_requires_cover_of_regular_vertex(self):
        space = spatial.AtomicMeasureSpace(
            atoms=["v:0", "w:0"], vertex_of={"v:0": "v", "w:0": "w"}
        )
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            space.validate(bundled_graph("a2"))

    def test_validate_requires_atoms_per_vertex(self):
        space = spatial.AtomicMeasureSpace(
            atoms=["w:0"], vertex_of={"w:0": "w"}, edge_support={"a": ["w:0"]}
        )
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            space.validate(bundled_graph("a2"))

    def test_to_dict(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 2)
        dict_ = family.space.to_dict()
        self.assertEqual(["v:0", "w:0"], dict_["atoms"])
        self.assertEqual({"a": ["w:0"]}, dict_["edge_support"])


class TestSpatialSystem(unittest.TestCase):
    def test_create_sets_initial_and_final_set(self):
        system = spatial.SpatialSystem.create({"x": "y"})
        self.assertEqual(frozenset({"y"}), system.E)
        self.assertEqual(frozenset({"x"}), system.F)
        self.assertEqual(1.0, system.f["x"])

    def test_noninjective_point_map_raises(self):
        system = spatial.SpatialSystem.create({"x": "y", "z": "y"})
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            system.validate()

    def test_nonunimodular_phase_raises(self):
        system = spatial.SpatialSystem.create({"x": "y"}, {"x": 2})
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            system.validate()

    def test_atoms_outside_space_raise(self):
        system = spatial.SpatialSystem.create({"x": "z"})
        with self.assertRaises(lpga.exceptions.InvalidSystemError):
            system.validate(two_atoms())

    def test_reverse_inverts_point_map_and_conjugates(self):
        system = spatial.SpatialSystem.create({"x": "y"}, {"x": 1j})
        reverse = system.reverse()
        self.assertEqual({"y": "x"}, reverse.eta)
        self.assertAlmostEqual(-1j, reverse.f["y"])

    def test_rotated(self):
        system = spatial.SpatialSystem.identity(["x"]).rotated(1j)
        self.assertAlmostEqual(1j, system.f["x"])

    def test_to_dict(self):
        system = spatial.SpatialSystem.create({"x": "y"})
        self.assertEqual(
            {"E": ["y"], "F": ["x"], "eta": {"x": "y"}, "f": {"x": [1.0, 0.0]}},
            system.to_dict(),
        )


class TestSpatialPartialIsometries(unittest.TestCase):
    def setUp(self):
        self.space = two_atoms(weights={"x": 1, "y": 8})
        self.system = spatial.SpatialSystem.create({"y": "x"})

    def test_weight_factor(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        self.assertAlmostEqual(0.5, operator.matrix[1, 0].real)
        self.assertEqual(1, np.count_nonzero(operator.matrix))

    def test_exponent_below_one_raises(self):
        with self.assertRaises(ValueError):
            spatial.spi_matrix(self.space, self.system, 0.5)

    def test_reverse(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        reverse = spatial.spi_reverse(operator)
        self.assertAlmostEqual(2.0, reverse.matrix[0, 1].real)
        np.testing.assert_allclose(
            self.space.indicator(["y"]), operator.matrix @ reverse.matrix
        )
        np.testing.assert_allclose(
            self.space.indicator(["x"]), reverse.matrix @ operator.matrix
        )

    def test_compose_gives_indicator_of_final_set(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        product = spatial.spi_compose(operator, spatial.spi_reverse(operator))
        self.assertEqual({"y": "y"}, product.certificate.eta)
        np.testing.assert_allclose(self.space.indicator(["y"]), product.matrix)

    def test_compose_with_disjoint_sets_vanishes(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        product = spatial.spi_compose(operator, operator)
        self.assertFalse(np.any(product.matrix))
        self.assertEqual({}, product.certificate.eta)

    def test_compose_without_certificate_raises(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        bare = spatial.SpatialOperator(matrix=operator.matrix)
        with self.assertRaises(lpga.exceptions.MissingCertificateError):
            spatial.spi_compose(operator, bare)

    def test_coherence_residual(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        self.assertEqual(0.0, operator.coherence_residual())
        self.assertAlmostEqual(
            0.5, operator.with_matrix(2 * operator.matrix).coherence_residual()
        )

    def test_coherence_residual_without_certificate_raises(self):
        operator = spatial.SpatialOperator(matrix=np.eye(2))
        with self.assertRaises(lpga.exceptions.MissingCertificateError):
            operator.coherence_residual()

    def test_certificate_from_matrix(self):
        operator = spatial.spi_matrix(self.space, self.system, 3)
        system = spatial.certificate_from_matrix(operator.matrix, self.space, 3)
        self.assertEqual(self.system.eta, system.eta)

    def test_certificate_from_full_matrix_fails(self):
        self.assertIsNone(
            spatial.certificate_from_matrix(np.ones((2, 2)), self.space, 3)
        )

    def test_certificate_from_matrix_with_wrong_modulus_fails(self):
        matrix = np.array([[0, 0], [1, 0]])
        self.assertIsNone(spatial.certificate_from_matrix(matrix, self.space, 3))

    @given(
        angle=st.floats(min_value=-3.1, max_value=3.1),
        weight=st.floats(min_value=0.1, max_value=10.0),
        p=st.floats(min_value=1.0, max_value=8.0),
    )
    @settings(max_examples=25, deadline=None)
    def test_certificate_recovers_phase(self, angle, weight, p):
        space = two_atoms(weights={"y": weight})
        system = spatial.SpatialSystem.create({"y": "x"}, {"y": np.exp(1j * angle)})
        operator = spatial.spi_matrix(space, system, p)
        recovered = spatial.certificate_from_matrix(operator.matrix, space, p)
        self.assertEqual({"y": "x"}, recovered.eta)
        self.assertAlmostEqual(0.0, abs(recovered.f["y"] - np.exp(1j * angle)))


class TestAtomicSizeAssignment(unittest.TestCase):
    def test_chain(self):
        self.assertEqual(
            {"v": 1, "w": 1}, spatial.atomic_size_assignment(bundled_graph("a2"))
        )

    def test_source_size(self):
        sizes = spatial.atomic_size_assignment(bundled_graph("a2"), source_size=3)
        self.assertEqual({"v": 3, "w": 3}, sizes)

    def test_counts_add_up_at_regular_vertices(self):
        graph = graphs.Graph(
            vertices=["u", "v", "w"],
            edges=[("a", "u", "w"), ("b", "v", "w"), ("c", "u", "v")],
        )
        self.assertEqual(
            {"u": 1, "v": 1, "w": 2}, spatial.atomic_size_assignment(graph)
        )

    def test_cycle_without_entry(self):
        sizes = spatial.atomic_size_assignment(bundled_graph("loop"))
        self.assertEqual({"v": 1}, sizes)

    def test_infinite_receiver_gets_extra_atoms(self):
        graph = graphs.Graph(
            vertices=["v", "w"], edges=[("a", "v", "w")], infinite_receivers=["w"]
        )
        self.assertEqual({"v": 1, "w": 2}, spatial.atomic_size_assignment(graph))

    def test_cycle_with_entry_is_unsolvable(self):
        for name in ("loop_entry", "cuntz2"):
            with self.subTest(name=name):
                sizes = spatial.atomic_size_assignment(bundled_graph(name))
                self.assertFalse(sizes)
                self.assertIsInstance(sizes, spatial.Unsolvable)

    def test_nonpositive_source_size_raises(self):
        with self.assertRaises(ValueError):
            spatial.atomic_size_assignment(bundled_graph("a2"), source_size=0)


class TestAtomicCKFamily(unittest.TestCase):
    def setUp(self):
        self.graph = bundled_graph("a2")

    def test_atoms(self):
        family = spatial.atomic_ck_family(self.graph, 3)
        self.assertEqual(["v:0", "w:0"], family.space.atoms)
        self.assertEqual(2, family.dimension)

    def test_operators(self):
        family = spatial.atomic_ck_family(self.graph, 3)
        self.assertEqual(1, family.S["a"].matrix[1, 0])
        self.assertEqual(1, family.T["a"].matrix[0, 1])
        np.testing.assert_allclose(np.diag([1, 0]), family.E["v"].matrix)

    def test_weighted_operators(self):
        family = spatial.atomic_ck_family(
            self.graph, 3, weights={"v:0": 1, "w:0": 8}
        )
        self.assertAlmostEqual(0.5, family.S["a"].matrix[1, 0].real)
        self.assertAlmostEqual(2.0, family.T["a"].matrix[0, 1].real)
        np.testing.assert_allclose(
            family.E["w"].matrix, family.S["a"].matrix @ family.T["a"].matrix
        )
        self.assertFalse(family.is_exact)

    def test_rational_phase_keeps_family_exact(self):
        family = spatial.atomic_ck_family(self.graph, 3, phases={"a": "0.6,0.8"})
        self.assertTrue(family.is_exact)
        self.assertAlmostEqual(0.6 + 0.8j, family.S["a"].matrix[1, 0])

    def test_float_phase_makes_family_inexact(self):
        phase = complex(np.sqrt(0.5), np.sqrt(0.5))
        family = spatial.atomic_ck_family(self.graph, 3, phases={"a": phase})
        self.assertFalse(family.is_exact)

    def test_phase_of_unknown_edge_raises(self):
        with self.assertRaises(lpga.exceptions.UnknownEdgeError):
            spatial.atomic_ck_family(self.graph, 3, phases={"b": 1})

    def test_nonunimodular_phase_raises(self):
        with self.assertRaises(lpga.exceptions.NotUnimodularError):
            spatial.atomic_ck_family(self.graph, 3, phases={"a": 2})

    def test_unsolvable_graph_raises(self):
        with self.assertRaises(lpga.exceptions.UnsolvableAssignmentError):
            spatial.atomic_ck_family(bundled_graph("loop_entry"), 2)

    def test_rotated(self):
        family = spatial.atomic_ck_family(self.graph, 3).rotated(1j)
        self.assertAlmostEqual(1j, family.S["a"].matrix[1, 0])
        self.assertAlmostEqual(-1j, family.T["a"].matrix[0, 1])
        self.assertEqual(0.0, family.S["a"].coherence_residual())

    def test_rotated_without_reverse_keeps_t(self):
        family = spatial.atomic_ck_family(self.graph, 3)
        rotated = family.rotated(1j, rotate_reverse=False)
        np.testing.assert_allclose(family.T["a"].matrix, rotated.T["a"].matrix)

    def test_replace_loses_exactness(self):
        family = spatial.atomic_ck_family(self.graph, 3)
        replaced = family.replace(S={"a": family.T["a"]})
        self.assertFalse(replaced.is_exact)
        self.assertIs(family.T["a"], replaced.S["a"])

    def test_direct_sum(self):
        family = spatial.atomic_ck_family(self.graph, 3)
        total = family.direct_sum(family)
        self.assertEqual(["v:0#0", "w:0#0", "v:0#1", "w:0#1"], total.space.atoms)
        self.assertEqual(
            {"w:0#0": "v:0#0", "w:0#1": "v:0#1"}, total.S["a"].certificate.eta
        )
        self.assertTrue(total.is_exact)
        total.space.validate(self.graph)

    def test_direct_sum_of_different_exponents_raises(self):
        with self.assertRaises(lpga.exceptions.GraphMismatchError):
            spatial.atomic_ck_family(self.graph, 3).direct_sum(
                spatial.atomic_ck_family(self.graph, 2)
            )

    @given(
        weights=st.lists(
            st.floats(min_value=0.1, max_value=10.0), min_size=3, max_size=3
        ),
        p=st.floats(min_value=1.0, max_value=8.0),
    )
    @settings(max_examples=25, deadline=None)
    def test_relations_hold_for_any_weights(self, weights, p):
        graph = bundled_graph("chain3")
        family = spatial.atomic_ck_family(
            graph, p, weights=dict(zip(["u:0", "v:0", "w:0"], weights))
        )
        for edge in graph.edges:
            S, T = family.S[edge.id].matrix, family.T[edge.id].matrix
            np.testing.assert_allclose(S, S @ T @ S, atol=1e-9)
            np.testing.assert_allclose(family.E[edge.source].matrix, T @ S, atol=1e-9)


class TestRepresent(unittest.TestCase):
    def setUp(self):
        self.graph = bundled_graph("a2")
        self.algebra = leavitt.LeavittAlgebra(self.graph)
        self.family = spatial.atomic_ck_family(self.graph, 3)

    def test_vertex(self):
        np.testing.assert_allclose(
            np.diag([1, 0]), spatial.represent(self.algebra.e("v"), self.family)
        )

    def test_element(self):
        element = self.algebra.e("v") + self.algebra.s("a").scale(2)
        np.testing.assert_allclose(
            np.array([[1, 0], [2, 0]]), spatial.represent(element, self.family)
        )

    def test_element_of_other_graph_raises(self):
        other = leavitt.LeavittAlgebra(bundled_graph("loop"))
        with self.assertRaises(lpga.exceptions.GraphMismatchError):
            spatial.represent(other.e("v"), self.family)

    def test_exact(self):
        matrix = spatial.represent_exact(self.algebra.e("v"), self.family)
        self.assertEqual(sympy.Matrix([[1, 0], [0, 0]]), matrix.to_Matrix())

    def test_exact_with_phase(self):
        family = spatial.atomic_ck_family(self.graph, 3, phases={"a": ("0", "1")})
        matrix = spatial.represent_exact(self.algebra.s("a"), family)
        self.assertEqual(sympy.I, matrix.to_Matrix()[1, 0])

    def test_exact_reverse_conjugates_phase(self):
        family = spatial.atomic_ck_family(self.graph, 3, phases={"a": ("3/5", "4/5")})
        matrix = spatial.represent_exact(self.algebra.t("a"), family)
        self.assertEqual(
            sympy.Rational(3, 5) - sympy.I * sympy.Rational(4, 5),
            matrix.to_Matrix()[0, 1],
        )

    def test_exact_needs_exact_family(self):
        family = spatial.atomic_ck_family(
            self.graph, 3, weights={"v:0": 1, "w:0": 8}
        )
        with self.assertRaises(lpga.exceptions.PreconditionError):
            spatial.represent_exact(self.algebra.e("v"), family)

    def test_exact_agrees_with_numeric(self):
        element = self.algebra.s("a") + self.algebra.t("a").scale("1/2")
        exact = np.array(
            spatial.represent_exact(element, self.family).to_Matrix().tolist(),
            dtype=complex,
        )
        np.testing.assert_allclose(spatial.represent(element, self.family), exact)

    def test_support_of_vertex(self):
        self.assertEqual(
            frozenset({"w:0"}), spatial.support_of(self.algebra.e("w"), self.family)
        )

    def test_support_of_partial_isometry_raises(self):
        with self.assertRaises(lpga.exceptions.NotAnIndicatorError):
            spatial.support_of(self.algebra.s("a"), self.family)


if __name__ == "__main__":
    unittest.main()
