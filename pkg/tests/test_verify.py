import unittest

import numpy as np

import lpga.exceptions
import lpga.utils
from lpga import leavitt, spatial, verify
from lpga.io.graph_file import bundled_graph


class TestCheckCKFamily(unittest.TestCase):
    def test_synthesised_families_pass(self):
        for name, p in (("a2", 3), ("chain3", 1.5), ("loop", 2), ("loop", 4)):
            with self.subTest(graph=name, p=p):
                family = spatial.atomic_ck_family(bundled_graph(name), p)
                report = verify.check_ck_family(family)
                self.assertTrue(report.passed, report.to_text())

    def test_weighted_family_passes(self):
        family = spatial.atomic_ck_family(
            bundled_graph("a2"), 3, weights={"v:0": 1, "w:0": 8}
        )
        self.assertTrue(verify.check_ck_family(family).passed)

    def test_family_with_phase_passes(self):
        family = spatial.atomic_ck_family(bundled_graph("loop"), 3, phases={"a": 1j})
        self.assertTrue(verify.check_ck_family(family).passed)

    def test_direct_sum_passes(self):
        family = spatial.atomic_ck_family(bundled_graph("chain3"), 3)
        self.assertTrue(verify.check_ck_family(family.direct_sum(family)).passed)

    def test_swapped_operators_fail(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 3)
        broken = family.replace(S={"a": family.T["a"]})
        report = verify.check_ck_family(broken)
        self.assertFalse(report.passed)
        self.assertEqual("fail", report.verdict)

    def test_random_graphs_pass(self):
        rng = np.random.default_rng(17)
        families = 0
        while families < 20:
            acyclic = bool(rng.integers(2))
            graph = lpga.utils.random_graph(
                rng,
                int(rng.integers(2, 6)),
                int(rng.integers(0, 7)),
                acyclic=acyclic,
                name=f"random{families}",
            )
            if not spatial.atomic_size_assignment(graph):
                continue
            families += 1
            for p in (1.5, 2, 3):
                with self.subTest(graph=repr(graph), p=p):
                    family = spatial.atomic_ck_family(graph, p)
                    report = verify.check_ck_family(family)
                    self.assertTrue(report.passed, report.to_text())

    def test_report_records_dimension(self):
        family = spatial.atomic_ck_family(bundled_graph("chain3"), 2)
        report = verify.check_ck_family(family)
        self.assertEqual(3, report.results["dimension"])


class TestInjectivityOnLevel(unittest.TestCase):
    def test_cycle_without_entry_has_kernel(self):
        family = spatial.atomic_ck_family(bundled_graph("loop"), 3)
        report, witnesses = verify.injectivity_on_level(family, 1)
        self.assertFalse(report.passed)
        self.assertEqual(2, report.results["kernel_dimension"])
        self.assertEqual(3, report.results["basis_size"])
        self.assertTrue(report.results["exact"])
        self.assertEqual(2, len(witnesses))

    def test_witnesses_are_mapped_to_zero(self):
        family = spatial.atomic_ck_family(bundled_graph("loop"), 3)
        _, witnesses = verify.injectivity_on_level(family, 1)
        for witness in witnesses:
            self.assertFalse(witness.is_zero())
            self.assertFalse(np.any(spatial.represent(witness, family)))

    def test_acyclic_graph_has_trivial_kernel(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 3)
        report, witnesses = verify.injectivity_on_level(family, 1)
        self.assertTrue(report.passed)
        self.assertEqual(4, report.results["basis_size"])
        self.assertEqual([], witnesses)

    def test_numeric_mode_for_weighted_family(self):
        family = spatial.atomic_ck_family(
            bundled_graph("chain3"), 3, weights={"u:0": 2, "v:0": 1, "w:0": 5}
        )
        report, _ = verify.injectivity_on_level(family, 2)
        self.assertFalse(report.results["exact"])
        self.assertEqual(0, report.results["kernel_dimension"])

    def test_negative_level_raises(self):
        family = spatial.atomic_ck_family(bundled_graph("loop"), 3)
        with self.assertRaises(ValueError):
            verify.injectivity_on_level(family, -1)


class TestIsometryOnLevel(unittest.TestCase):
    def test_acyclic_graph(self):
        family = spatial.atomic_ck_family(bundled_graph("chain3"), 3)
        report = verify.isometry_on_level(family, 2, trials=3)
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(3, len(report.checks))

    def test_nonnegative_coefficients(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 3)
        report = verify.isometry_on_level(
            family, 1, trials=3, coefficients="nonnegative"
        )
        self.assertTrue(report.passed)
        self.assertLess(report.results["max_relative_deviation"], 1e-6)

    def test_given_elements(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 2)
        algebra = leavitt.LeavittAlgebra(family.graph)
        elements = [algebra.s("a").scale(3), algebra.e("v") + algebra.e("w")]
        report = verify.isometry_on_level(family, 1, elements=elements)
        self.assertTrue(report.passed)
        self.assertEqual(2, len(report.checks))

    def test_other_exponent_raises(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 3)
        with self.assertRaises(ValueError):
            verify.isometry_on_level(family, 1, p=2)

    def test_cyclic_graph_raises(self):
        family = spatial.atomic_ck_family(bundled_graph("loop"), 3)
        with self.assertRaises(lpga.exceptions.CyclicGraphError):
            verify.isometry_on_level(family, 1)


class TestGaugeEquivarianceCheck(unittest.TestCase):
    def setUp(self):
        self.family = spatial.atomic_ck_family(bundled_graph("loop"), 3)

    def test_rotation_intertwines(self):
        report = verify.gauge_equivariance_check(
            self.family, [1j, np.exp(0.7j)], level=2
        )
        self.assertTrue(report.passed, report.to_text())

    def test_rotating_s_only_fails(self):
        report = verify.gauge_equivariance_check(
            self.family, [1j], level=1, rotate_reverse=False
        )
        self.assertFalse(report.passed)

    def test_checks_are_labelled_by_z(self):
        report = verify.gauge_equivariance_check(self.family, [1j], level=1)
        self.assertTrue(
            all(check.name.startswith("z=0+1i: ") for check in report.checks)
        )


class TestUniquenessWitnessSuite(unittest.TestCase):
    def test_cycle_without_entry_raises(self):
        with self.assertRaises(lpga.exceptions.PreconditionError):
            verify.uniqueness_witness_suite(bundled_graph("loop"))

    def test_graph_without_finite_family(self):
        report = verify.uniqueness_witness_suite(
            bundled_graph("loop_entry"), level=1, trials=1
        )
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(
            "no finite representation", report.results["norm_checks"]
        )
        self.assertIn("norm checks", [check.name for check in report.checks])

    def test_weights_of_family_are_carried_over(self):
        family = spatial.atomic_ck_family(
            bundled_graph("chain3"), 3, weights={"u:0": 2, "v:0": 1, "w:0": 5}
        )
        report = verify.uniqueness_witness_suite(
            bundled_graph("chain3"), family=family, level=1, trials=1
        )
        self.assertEqual("numeric", report.results["norm_checks"])
        self.assertEqual("family", report.results["compression_weights"])

    def test_renamed_atoms_fall_back_to_unit_weights(self):
        family = spatial.atomic_ck_family(bundled_graph("chain3"), 3)
        report = verify.uniqueness_witness_suite(
            bundled_graph("chain3"), family=family.direct_sum(family), level=1, trials=1
        )
        self.assertEqual("unit", report.results["compression_weights"])

    def test_family_of_other_graph_raises(self):
        family = spatial.atomic_ck_family(bundled_graph("a2"), 2)
        with self.assertRaises(lpga.exceptions.GraphMismatchError):
            verify.uniqueness_witness_suite(bundled_graph("chain3"), family=family)

    def test_negative_level_raises(self):
        with self.assertRaises(ValueError):
            verify.uniqueness_witness_suite(bundled_graph("loop_entry"), level=-1)


class TestFixedPointAlgebraReport(unittest.TestCase):
    def test_cuntz_algebra(self):
        report = verify.fixed_point_algebra_report(bundled_graph("cuntz2"), 1)
        self.assertTrue(report.passed)
        self.assertEqual({"v": 4}, report.results["blocks"])
        self.assertTrue(report.results["inclusion_verified"])

    def test_graph_with_source(self):
        report = verify.fixed_point_algebra_report(bundled_graph("a2"), 1)
        self.assertTrue(report.passed)
        self.assertEqual({"v": 1, "w": 0}, report.results["blocks"])
        self.assertEqual(1, report.results["total_dimension"])
        self.assertIsNone(report.results["inclusion_verified"])

    def test_negative_level_raises(self):
        with self.assertRaises(ValueError):
            verify.fixed_point_algebra_report(bundled_graph("a2"), -1)


class TestOrthogonalSumNormCheck(unittest.TestCase):
    def test_sup_norm(self):
        for p in (1, 1.5, 2, 3, 7):
            with self.subTest(p=p):
                report = verify.orthogonal_sum_norm_check(p, trials=100)
                self.assertTrue(report.passed, report.to_text())
                self.assertLess(report.results["max_relative_deviation"], 1e-6)
                self.assertEqual(100, len(report.checks))

    def test_no_summands_raise(self):
        with self.assertRaises(ValueError):
            verify.orthogonal_sum_norm_check(3, max_terms=0)


if __name__ == "__main__":
    unittest.main()
