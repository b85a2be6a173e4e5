"""Tests for the truncated operator, its eigenvectors and the operator identity."""

import math
import unittest
from unittest import mock

import numpy as np

from qlegendre import AdditionParams, Branch, Gauge, IdentityId, QBase, TruncatedRep
from qlegendre.exceptions import DomainError, TruncationTooSmall
from qlegendre.families import little_q_jacobi
from qlegendre.identities import h_norm
from qlegendre.operator import (
    SpectralPoint,
    addition_linkage,
    build_rho_matrix,
    coefficient_length,
    dual_orthogonality_as_q_integral,
    eigvec,
    eigvec_residual,
    gauge_equivalence,
    matrix_element_action,
    matrix_element_coefficient,
    norms_and_dual_orthogonality,
    operator_identity,
    predicted_spectrum,
    scalar_identity,
    spectral_point,
    spectrum_check,
    spectrum_table,
    truncated_spectrum,
)
from qlegendre.qcore import qpochhammer_finite


def rep(dim=60, sigma=0.3, q=0.5, gauge=Gauge.REAL_GAUGED):
    return TruncatedRep(dim=dim, sigma=sigma, base=QBase(q=q), gauge=gauge)


class TestMatrix(unittest.TestCase):
    def test_zero_diagonal_at_sigma_zero(self):
        matrix = build_rho_matrix(rep(dim=10, sigma=0.0))
        self.assertTrue(np.all(np.diag(matrix) == 0.0))

    def test_gauged_matrix_is_symmetric_tridiagonal(self):
        matrix = build_rho_matrix(rep(dim=12))
        np.testing.assert_array_equal(matrix, matrix.T)
        self.assertEqual(np.count_nonzero(np.triu(matrix, 2)), 0)
        self.assertAlmostEqual(matrix[0, 1], 0.5**0.3 * math.sqrt(1 - 0.25), places=15)

    def test_complex_matrix_is_hermitian(self):
        matrix = build_rho_matrix(rep(dim=12, gauge=Gauge.COMPLEX))
        np.testing.assert_allclose(matrix, matrix.conj().T)
        self.assertEqual(matrix[1, 0].real, 0.0)

    def test_gauge_equivalence(self):
        report = gauge_equivalence(0.3, QBase(q=0.5), 40)
        self.assertTrue(report.passed, report)

    def test_minimum_dimension(self):
        with self.assertRaises(ValueError):
            rep(dim=1)


class TestSpectrum(unittest.TestCase):
    def test_leading_eigenvalues(self):
        values = truncated_spectrum(rep(sigma=0.0))[:6]
        np.testing.assert_allclose(np.abs(values), [1, 1, 0.25, 0.25, 0.0625, 0.0625], atol=1e-12)
        np.testing.assert_allclose(np.sort(values[:2]), [-1, 1], atol=1e-12)

    def test_spectrum_reports_pass(self):
        reports = spectrum_check(rep(dim=60, sigma=0.3), 12)
        self.assertEqual(len(reports), 12)
        for report in reports:
            self.assertTrue(report.passed, report)

    def test_remaining_spectrum_accumulates_at_zero(self):
        values = truncated_spectrum(rep(dim=60, sigma=0.3))
        self.assertTrue(np.all(np.diff(np.abs(values)) <= 0))
        self.assertLess(np.max(np.abs(values[40:])), 1e-10)

    def test_larger_truncation_is_not_worse(self):
        coarse = spectrum_table(rep(dim=40, sigma=0.4, q=0.6), 10)
        fine = spectrum_table(rep(dim=80, sigma=0.4, q=0.6), 10)
        self.assertLessEqual(fine["deviation"].max(), coarse["deviation"].max() + 1e-14)

    def test_repeated_eigenvalue_cannot_cover_missing_point(self):
        r = rep(dim=60, sigma=0.3)
        values = truncated_spectrum(r).copy()
        values[1] = values[0]
        with mock.patch("qlegendre.operator.truncated_spectrum", return_value=values):
            reports = spectrum_check(r, 10)
            table = spectrum_table(r, 10)
        self.assertFalse(all(report.passed for report in reports))
        claimed = [(report.params["branch"], report.params["x"]) for report in reports]
        self.assertEqual(len(set(claimed)), len(claimed))
        self.assertEqual(len(set(zip(table["branch"], table["x"]))), 10)

    def test_every_point_claimed_once(self):
        reports = spectrum_check(rep(dim=80, sigma=0.0), 10)
        claimed = {(report.params["branch"], report.params["x"]) for report in reports}
        self.assertEqual(claimed, {(branch, x) for branch in ("neg", "pos") for x in range(5)})

    def test_predicted_spectrum_order(self):
        points = predicted_spectrum(0.3, 0.5, 3)
        self.assertEqual([p[1] for p in points], [Branch.NEG, Branch.POS, Branch.NEG])
        self.assertEqual(points[0][0], -1.0)

    def test_count_exceeds_dimension(self):
        with self.assertRaises(DomainError):
            spectrum_check(rep(dim=5), 6)

    def test_empty_table(self):
        table = spectrum_table(rep(dim=10), 0)
        self.assertEqual(len(table), 0)
        self.assertIn("eigenvalue", table.columns)


class TestEigenvectors(unittest.TestCase):
    def test_spectral_point_norms(self):
        base = QBase(q=0.5)
        neg = spectral_point(Branch.NEG, 0, 0.3, base)
        pos = spectral_point(Branch.POS, 2, 0.3, base)
        self.assertEqual(neg.lambda_, -1.0)
        self.assertAlmostEqual(neg.h, h_norm(0, -0.3, base), places=12)
        self.assertAlmostEqual(pos.lambda_, 0.25 ** (0.3 + 2), places=15)

    def test_alias(self):
        point = SpectralPoint(**{"lambda": 0.5, "branch": Branch.POS, "x": 0, "sigma": 0.0, "h": 1.0})
        self.assertEqual(point.lambda_, 0.5)
        self.assertIn("lambda", point.model_dump(by_alias=True))

    def test_first_coefficient_is_one(self):
        r = rep()
        for branch in Branch:
            for x in range(4):
                vec = eigvec(spectral_point(branch, x, 0.3, r.base), r)
                self.assertAlmostEqual(vec.coefficients[0], 1.0, places=14)
                self.assertEqual(vec.coefficients.shape, (60,))

    def test_residual(self):
        r = rep(dim=60, sigma=0.3, q=0.5)
        point = spectral_point(Branch.POS, 0, 0.3, r.base)
        self.assertLessEqual(eigvec_residual(point, r), 1e-10)
        self.assertAlmostEqual(
            eigvec_residual(point, r, "boundary"), eigvec_residual(point, r, "matvec"), places=14
        )

    def test_residual_in_complex_form(self):
        r = rep(dim=60, gauge=Gauge.COMPLEX)
        point = spectral_point(Branch.NEG, 1, 0.3, r.base)
        self.assertLessEqual(eigvec_residual(point, r), 1e-10)

    def test_branches_are_orthogonal(self):
        r = rep()
        u = eigvec(spectral_point(Branch.NEG, 0, 0.3, r.base), r)
        w = eigvec(spectral_point(Branch.POS, 0, 0.3, r.base), r)
        inner = float(np.dot(u.coefficients, w.coefficients))
        self.assertLess(abs(inner) / math.sqrt(u.point.h * w.point.h), 1e-10)

    def test_norm_matches_closed_form(self):
        r = rep()
        vec = eigvec(spectral_point(Branch.POS, 0, 0.3, r.base), r)
        self.assertAlmostEqual(vec.norm_squared() / vec.point.h, 1.0, places=10)

    def test_coefficient_length_grows_with_index(self):
        self.assertGreater(coefficient_length(10, 0.5), coefficient_length(5, 0.5))
        self.assertGreater(coefficient_length(5, 0.9), coefficient_length(5, 0.5))

    def test_norms_and_completeness(self):
        reports = norms_and_dual_orthogonality(rep(), 20, 2)
        kinds = {r.identity_id for r in reports}
        self.assertEqual(
            kinds,
            {IdentityId.EIGVEC_NORM, IdentityId.EIGVEC_ORTHOGONALITY, IdentityId.DUAL_ORTHOGONALITY},
        )
        self.assertEqual(sum(r.identity_id is IdentityId.DUAL_ORTHOGONALITY for r in reports), 6)
        for report in reports:
            self.assertTrue(report.passed, report)

    def test_completeness_as_q_integral(self):
        reports = dual_orthogonality_as_q_integral(rep(), 20, 2)
        self.assertEqual(len(reports), 12)
        for report in reports:
            self.assertTrue(report.passed, report)


class TestMatrixElements(unittest.TestCase):
    def test_diagonal_element(self):
        r = rep(q=0.5)
        for p in range(4):
            target, amplitude = matrix_element_action(2, 0, p, r)
            self.assertEqual(target, p)
            expected = little_q_jacobi(2, 0.25**p, 1, 1, QBase(q=0.25))
            self.assertAlmostEqual(amplitude, expected, places=13)

    def test_lowering_below_zero(self):
        self.assertEqual(matrix_element_action(1, -1, 0, rep()), (None, 0.0))

    def test_raising_element_recomputed(self):
        q, Q = 0.5, 0.25
        big = QBase(q=Q)
        poch = lambda k: qpochhammer_finite(Q, big, k)
        coefficient = q**-1 / poch(1) * math.sqrt(poch(3) / poch(1))
        self.assertAlmostEqual(matrix_element_coefficient(2, 1, QBase(q=q)), coefficient, places=13)
        expected = (
            coefficient
            * -1
            * q**4
            * math.sqrt(1 - Q**4)
            * little_q_jacobi(1, Q**3, Q, Q, big)
        )
        target, amplitude = matrix_element_action(2, 1, 3, rep(q=q))
        self.assertEqual(target, 4)
        self.assertAlmostEqual(amplitude, expected, places=13)

    def test_invalid_spin(self):
        with self.assertRaises(DomainError):
            matrix_element_action(1, 2, 0, rep())
        with self.assertRaises(DomainError):
            matrix_element_action(1.5, 0, 0, rep())


class TestOperatorIdentity(unittest.TestCase):
    def test_degree_zero(self):
        report = operator_identity(0, rep(dim=20))
        self.assertTrue(report.passed, report)
        self.assertAlmostEqual(report.lhs, 0.0, places=14)

    def test_degree_one(self):
        report = operator_identity(1, rep(dim=50, sigma=0.5, q=0.5))
        self.assertTrue(report.passed, report)
        self.assertLessEqual(report.rel_residual, 1e-10)

    def test_both_forms(self):
        for gauge in Gauge:
            for l in range(1, 4):
                report = operator_identity(l, rep(dim=40, sigma=0.3, gauge=gauge))
                self.assertTrue(report.passed, (gauge, report))

    def test_absolute_deviation_decides(self):
        report = operator_identity(4, rep(dim=50, sigma=0.8, q=0.5))
        self.assertGreater(report.abs_residual, 1e-9)
        self.assertLessEqual(report.rel_residual, 1e-9)
        self.assertFalse(report.passed)
        self.assertTrue(any(note.startswith("max entry deviation") for note in report.truncation.notes))

    def test_truncation_too_small(self):
        with self.assertRaises(TruncationTooSmall):
            operator_identity(2, rep(dim=4))


class TestScalarIdentity(unittest.TestCase):
    def test_degree_zero(self):
        report = scalar_identity(0, 3, 0.3, 0.4, QBase(q=0.6))
        self.assertTrue(report.passed, report)

    def test_spectral_point(self):
        base = QBase(q=0.6)
        point = spectral_point(Branch.NEG, 0, 0.3, base)
        report = scalar_identity(1, 1, 0.3, point, base)
        self.assertEqual(report.params["lam"], -1.0)
        self.assertTrue(report.passed, report)

    def test_non_spectral_point(self):
        for l in range(4):
            report = scalar_identity(l, 2, 0.3, 0.123, QBase(q=0.6))
            self.assertTrue(report.passed, report)

    def test_linkage_with_addition_formula(self):
        params = AdditionParams(l=2, p=1, x=0.3, c=0.8, d=0.5, base=QBase(q=0.5))
        reports = addition_linkage(params)
        self.assertEqual([r.params["side"] for r in reports], ["lhs", "rhs"])
        for report in reports:
            self.assertTrue(report.passed, report)


if __name__ == "__main__":
    unittest.main()
