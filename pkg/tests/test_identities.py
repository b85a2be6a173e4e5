"""Tests for the orthogonality, addition and product relations."""

import unittest

from qlegendre import AdditionParams, CharlierKind, IdentityId, Precision, QBase
from qlegendre.exceptions import DomainError
from qlegendre.families import monic_big_q_jacobi00
from qlegendre.identities import (
    addition_lhs,
    addition_polynomiality,
    addition_rhs,
    addition_rhs_terms,
    closed_form_special_values,
    euler_identity,
    h_norm,
    orthogonality_big00,
    positive_kernel,
    product_formula,
    product_formula_reports,
    q_binomial_identity,
    q_charlier_orthogonality,
    q_integral_monomial,
    special_case_little,
    verify_addition,
    verify_h_norm,
)
from qlegendre.qcore import qpochhammer_infinite, qpochhammer_product


class TestOrthogonality(unittest.TestCase):
    def test_weight_mass(self):
        base = QBase(q=0.5)
        report = orthogonality_big00(0, 0, 1.0, 1.0, base)
        expected = 0.5 * qpochhammer_product((0.5, -1.0, -0.5), base)
        self.assertTrue(report.passed, report)
        self.assertAlmostEqual(report.rhs, expected, places=14)

    def test_off_diagonal(self):
        report = orthogonality_big00(0, 1, 1.0, 1.0, QBase(q=0.5))
        self.assertTrue(report.passed, report)
        self.assertEqual(report.rhs, 0.0)

    def test_diagonal_degree_three(self):
        report = orthogonality_big00(3, 3, 0.8, 0.2, QBase(q=0.6))
        self.assertTrue(report.passed, report)
        self.assertLessEqual(report.rel_residual, 1e-8)
        self.assertGreater(report.truncation.integral_terms, 0)

    def test_non_positive_endpoints_rejected(self):
        with self.assertRaises(DomainError):
            orthogonality_big00(1, 1, 1.0, 0.0, QBase(q=0.5))


class TestQCharlier(unittest.TestCase):
    def test_same_degree_zero_is_euler(self):
        base = QBase(q=0.5)
        report = q_charlier_orthogonality(0, 0, 1.5, base)
        self.assertTrue(report.passed, report)
        self.assertAlmostEqual(report.rhs, qpochhammer_infinite(-1.5, base), places=13)

    def test_same_off_diagonal(self):
        self.assertTrue(q_charlier_orthogonality(0, 1, 1.5, QBase(q=0.5)).passed)

    def test_cross_relation(self):
        report = q_charlier_orthogonality(1, 2, 1.5, QBase(q=0.5), CharlierKind.CROSS)
        self.assertTrue(report.passed, report)
        self.assertLessEqual(abs(report.lhs), 1e-10)

    def test_high_degrees_use_extended_precision(self):
        report = q_charlier_orthogonality(5, 5, 0.5, QBase(q=0.5))
        self.assertIs(report.truncation.precision, Precision.EXTENDED)
        self.assertTrue(report.passed, report)

    def test_parameter_must_be_positive(self):
        with self.assertRaises(DomainError):
            q_charlier_orthogonality(1, 1, -1.0, QBase(q=0.5))


class TestHNorm(unittest.TestCase):
    def test_closed_form_at_zero(self):
        base = QBase(q=0.5)
        expected = qpochhammer_infinite(-(0.25**-0.3), base.squared())
        self.assertAlmostEqual(h_norm(0, 0.3, base) / expected, 1.0, places=14)

    def test_direct_equals_closed(self):
        for x in range(4):
            report = verify_h_norm(x, 0.3, QBase(q=0.5))
            self.assertTrue(report.passed, report)

    def test_negative_index_rejected(self):
        with self.assertRaises(DomainError):
            h_norm(-1, 0.3, QBase(q=0.5))


class TestAddition(unittest.TestCase):
    def test_degree_zero_reduces_to_monic(self):
        base = QBase(q=0.5)
        for x in (-0.7, 0.1, 1.4):
            params = AdditionParams(l=0, p=3, x=x, c=0.9, d=0.4, base=base)
            expected = monic_big_q_jacobi00(3, x, 0.9, 0.4, base)
            self.assertAlmostEqual(addition_lhs(params), expected, places=14)
            self.assertAlmostEqual(addition_rhs(params), expected, places=14)

    def test_descending_terms_vanish_at_p_zero(self):
        params = AdditionParams(l=2, p=0, x=0.3, c=1.0, d=1.0, base=QBase(q=0.5))
        terms = addition_rhs_terms(params)
        self.assertEqual(len(terms), 5)
        self.assertEqual(terms[1], 0)
        self.assertEqual(terms[3], 0)
        self.assertTrue(verify_addition(params).passed)

    def test_double_precision(self):
        params = AdditionParams(l=3, p=2, x=-0.1, c=0.8, d=0.2, base=QBase(q=0.6))
        report = verify_addition(params)
        self.assertTrue(report.passed, report)
        self.assertLessEqual(report.rel_residual, 1e-8)
        self.assertEqual(report.params["l"], 3)

    def test_high_degree_upgrades_precision(self):
        params = AdditionParams(l=5, p=3, x=0.45, c=1.2, d=0.7, base=QBase(q=0.7))
        report = verify_addition(params)
        self.assertIs(report.truncation.precision, Precision.EXTENDED)
        self.assertIn("precision upgraded to extended", report.truncation.notes)
        self.assertLessEqual(report.rel_residual, 1e-20)

    def test_explicit_tolerance(self):
        params = AdditionParams(l=1, p=1, x=0.2, c=1.0, d=1.0, base=QBase(q=0.5))
        self.assertEqual(verify_addition(params, 1e-6).tolerance, 1e-6)

    def test_endpoints_must_be_positive(self):
        with self.assertRaises(ValueError):
            AdditionParams(l=1, p=1, x=0.2, c=-1.0, d=1.0, base=QBase(q=0.5))

    def test_polynomiality(self):
        report = addition_polynomiality(2, 3, 1.0, 0.5, QBase(q=0.5))
        self.assertIs(report.identity_id, IdentityId.ADDITION_POLYNOMIALITY)
        self.assertTrue(report.passed, report)

    def test_little_q_legendre_case(self):
        self.assertTrue(special_case_little(0, 3, 0.4, QBase(q=0.5)).passed)
        self.assertTrue(special_case_little(1, 0, 0.4, QBase(q=0.5)).passed)
        report = special_case_little(2, 3, -0.2, QBase(q=0.7))
        self.assertTrue(report.passed, report)

    def test_closed_form_special_values(self):
        reports = closed_form_special_values(2, 1, 3, 0.3, QBase(q=0.5))
        self.assertEqual(
            [r.identity_id for r in reports],
            [
                IdentityId.SPECIAL_VALUE_DUAL_KRAWTCHOUK,
                IdentityId.SPECIAL_VALUE_MONIC,
                IdentityId.SPECIAL_VALUE_BIG_LEGENDRE,
            ],
        )
        for report in reports:
            self.assertTrue(report.passed, report)


class TestProduct(unittest.TestCase):
    def test_trivial_degrees(self):
        report = product_formula(0, 0, 0, 1.0, 1.0, QBase(q=0.5))
        self.assertAlmostEqual(report.lhs, 1.0, places=15)
        self.assertTrue(report.passed, report)

    def test_top_order(self):
        report = product_formula(2, 2, 1, 1.0, 1.0, QBase(q=0.5))
        self.assertAlmostEqual(report.lhs, 1.0, places=15)
        self.assertTrue(report.passed, report)

    def test_both_pairings(self):
        reports = product_formula_reports(2, 1, 2, 1.0, 0.5, QBase(q=0.5))
        self.assertEqual(
            [r.identity_id for r in reports], [IdentityId.PRODUCT, IdentityId.PRODUCT_VARIANT]
        )
        for report in reports:
            self.assertTrue(report.passed, report)

    def test_variant_needs_p_at_least_m(self):
        reports = product_formula_reports(2, 2, 1, 1.0, 1.0, QBase(q=0.5))
        self.assertEqual(len(reports), 1)

    def test_order_outside_range(self):
        with self.assertRaises(DomainError):
            product_formula(1, 2, 0, 1.0, 1.0, QBase(q=0.5))

    def test_positive_kernel(self):
        report = positive_kernel(2, 1, 0.8, 0.6, QBase(q=0.5))
        self.assertIs(report.identity_id, IdentityId.POSITIVE_KERNEL)
        self.assertTrue(report.passed, report)


class TestQCalculus(unittest.TestCase):
    def test_euler(self):
        self.assertTrue(euler_identity(0.7, QBase(q=0.5)).passed)

    def test_q_binomial(self):
        self.assertTrue(q_binomial_identity(3, 0.2, QBase(q=0.5)).passed)

    def test_monomial_integral(self):
        report = q_integral_monomial(2, 0.9, QBase(q=0.5))
        self.assertTrue(report.passed, report)
        self.assertAlmostEqual(report.rhs, 0.9**3 * 0.5 / (1 - 0.125), places=14)


if __name__ == "__main__":
    unittest.main()
