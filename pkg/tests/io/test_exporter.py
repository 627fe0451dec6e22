import json
import os
import unittest

import lpga.io.exporter
import lpga.report


class TestReportExporter(unittest.TestCase):
    def setUp(self):
        self.filename = "test-report.txt"
        self.report = lpga.report.VerificationReport(subject="CK family on a2")
        self.report.add_check(name="E_v idempotent")
        self.report.results["dimension"] = 2

    def tearDown(self):
        if os.path.exists(self.filename):
            os.remove(self.filename)

    def test_unknown_format_raises(self):
        with self.assertRaises(ValueError):
            lpga.io.exporter.ReportExporter(format_="xml")

    def test_json(self):
        text = lpga.io.exporter.ReportExporter().export_from(self.report)
        self.assertEqual(self.report.to_dict(), json.loads(text))
        self.assertTrue(text.endswith("\n"))

    def test_json_is_byte_stable(self):
        first = lpga.io.exporter.ReportExporter().export_from(self.report)
        second = lpga.io.exporter.ReportExporter().export_from(self.report)
        self.assertEqual(first, second)

    def test_text(self):
        exporter = lpga.io.exporter.ReportExporter(format_="text")
        self.assertEqual(
            self.report.to_text() + "\n", exporter.export_from(self.report)
        )

    def test_dict_as_json(self):
        text = lpga.io.exporter.ReportExporter().export_from({"normal_form": "e_v"})
        self.assertEqual({"normal_form": "e_v"}, json.loads(text))

    def test_write_to_target(self):
        exporter = lpga.io.exporter.ReportExporter(
            target=self.filename, format_="text"
        )
        exporter.export_from(self.report)
        with open(self.filename, encoding="utf-8") as file:
            self.assertEqual(exporter.text, file.read())


class TestToText(unittest.TestCase):
    def test_nested_dict(self):
        self.assertEqual(
            "a: 1\nb:\n  c: 0.5",
            lpga.io.exporter.to_text({"a": 1, "b": {"c": 0.5}}),
        )

    def test_list(self):
        self.assertEqual(
            "cycles:\n  - a\n  - ba",
            lpga.io.exporter.to_text({"cycles": ["a", "ba"]}),
        )

    def test_empty_and_missing_values(self):
        self.assertEqual(
            "witnesses: none\nshifted: -",
            lpga.io.exporter.to_text({"witnesses": [], "shifted": None}),
        )

    def test_floats_are_rounded(self):
        self.assertEqual("1.41421", lpga.io.exporter.to_text(2 ** 0.5))

    def test_report_is_indented(self):
        report = lpga.report.VerificationReport(subject="empty")
        self.assertEqual(
            "  empty: PASS", lpga.io.exporter.to_text(report, indent="  ")
        )


if __name__ == "__main__":
    unittest.main()
