"""Tests for reports, their ordering and serialisation, and the rules models."""

import json
import math
import unittest

import mpmath
import pydantic

from qlegendre import Branch, IdentityId, Precision, QBase, VerificationReport, VerificationRules
from qlegendre.report import Truncation, compare, params_record, reports_to_frame, sort_reports
from qlegendre.rules import DEFAULT_RULES, ToleranceRules


def make(identity=IdentityId.EULER, lhs=1.0, rhs=1.0, tolerance=1e-10, **params):
    return compare(identity, params_record(**params), lhs, rhs, tolerance, Truncation())


class TestCompare(unittest.TestCase):
    def test_relative_residual(self):
        report = make(lhs=1.0, rhs=1.0 + 1e-12)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.rel_residual, 1e-12, delta=1e-15)

    def test_failure(self):
        report = make(lhs=1.0, rhs=1.1)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.abs_residual, 0.1, places=14)

    def test_tiny_sides_use_absolute_test(self):
        report = make(lhs=3e-12, rhs=0.0)
        self.assertEqual(report.rel_residual, 1.0)
        self.assertTrue(report.passed)

    def test_scale_enters_denominator(self):
        report = compare(IdentityId.EULER, {}, 1e-3, 2e-3, 1e-2, Truncation(), scale=1.0)
        self.assertAlmostEqual(report.rel_residual, 1e-3, places=15)
        self.assertTrue(report.passed)

    def test_nan_fails(self):
        report = make(lhs=float("nan"), rhs=1.0)
        self.assertFalse(report.passed)
        self.assertEqual(report.rel_residual, math.inf)

    def test_extended_scalars(self):
        ctx = mpmath.MPContext()
        ctx.dps = 40
        report = make(lhs=ctx.mpf(1) / 3, rhs=ctx.mpf(1) / 3 + ctx.mpf(10) ** -30, tolerance=1e-25)
        self.assertTrue(report.passed)
        self.assertIsInstance(report.lhs, float)

    def test_report_is_frozen(self):
        report = make()
        with self.assertRaises(pydantic.ValidationError):
            report.passed = False


class TestRecords(unittest.TestCase):
    def test_params_record(self):
        record = params_record(branch=Branch.POS, x=mpmath.mpf(0.5), n=3, values=(1, 2.5), name="a")
        self.assertEqual(record, {"branch": "pos", "x": 0.5, "n": 3, "values": [1, 2.5], "name": "a"})

    def test_truncation_for_base(self):
        self.assertIsNone(Truncation.for_base(QBase(q=0.5)).dps)
        extended = Truncation.for_base(QBase(q=0.5, precision=Precision.EXTENDED, dps=50))
        self.assertEqual(extended.dps, 50)
        self.assertIs(extended.precision, Precision.EXTENDED)

    def test_sort_order(self):
        reports = [
            make(IdentityId.Q_BINOMIAL, p=2),
            make(IdentityId.EULER, t=0.5),
            make(IdentityId.Q_BINOMIAL, p=10),
            make(IdentityId.EULER, t=-0.5),
        ]
        ordered = sort_reports(reports)
        self.assertEqual(
            [(r.identity_id, next(iter(r.params.values()))) for r in ordered],
            [
                (IdentityId.EULER, -0.5),
                (IdentityId.EULER, 0.5),
                (IdentityId.Q_BINOMIAL, 2),
                (IdentityId.Q_BINOMIAL, 10),
            ],
        )

    def test_json_round_trip(self):
        report = make(t=0.25, q=0.5)
        restored = VerificationReport.model_validate(json.loads(report.model_dump_json()))
        self.assertEqual(restored, report)

    def test_frame(self):
        frame = reports_to_frame([make(t=0.25), make(lhs=1.0, rhs=2.0, t=0.5)])
        self.assertEqual(list(frame["passed"]), [True, False])
        self.assertIn("param_t", frame.columns)
        self.assertEqual(frame["precision"].iloc[0], "double")


class TestRules(unittest.TestCase):
    def test_defaults(self):
        self.assertEqual(DEFAULT_RULES.tolerances.addition_double, 1e-8)
        self.assertEqual(DEFAULT_RULES.tolerances.addition_extended, 1e-20)
        self.assertEqual(DEFAULT_RULES.truncation.nmax, 8)

    def test_override(self):
        rules = VerificationRules(tolerances=ToleranceRules(product=1e-6))
        self.assertEqual(rules.tolerances.product, 1e-6)
        self.assertEqual(rules.truncation.operator_dim, 50)

    def test_positive_tolerances(self):
        with self.assertRaises(pydantic.ValidationError):
            ToleranceRules(charlier=0.0)

    def test_serialisable(self):
        data = json.loads(DEFAULT_RULES.model_dump_json())
        self.assertEqual(VerificationRules.model_validate(data), DEFAULT_RULES)


if __name__ == "__main__":
    unittest.main()
