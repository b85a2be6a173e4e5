"""Tests for the polynomial families, checked against hand expansions and direct sums."""

import math
import unittest

from qlegendre import BigQJacobiParams, DualQKrawtchoukParams, Family, MonicPath, QBase
from qlegendre.exceptions import DegreeOutOfRange, DomainError
from qlegendre.families import (
    al_salam_carlitz,
    big_q_jacobi,
    dual_q_krawtchouk,
    leading_coefficient,
    lattice_index,
    little_q_jacobi,
    monic_big_q_jacobi00,
    orthonormal_big_q_jacobi00,
    orthonormal_big_q_jacobi00_recurrence,
    q_charlier,
)
from qlegendre.identities import (
    al_salam_carlitz_dilation,
    closed_form_special_values,
    monic_path_agreement,
    scaling_identities,
)


def poch(a, q, k):
    return math.prod(1 - a * q**j for j in range(k))


def direct_sum(numerators, denominators, q, z, degree):
    """Term-by-term r+1 phi r sum used as an independent oracle."""
    total = 0.0
    for k in range(degree + 1):
        top = math.prod(poch(a, q, k) for a in numerators)
        bottom = math.prod(poch(b, q, k) for b in denominators) * poch(q, q, k)
        total += top / bottom * z**k
    return total


class TestBigQJacobi(unittest.TestCase):
    def test_degree_zero(self):
        params = BigQJacobiParams(a=0.3, b=0.7, c=1.2, d=0.4, base=QBase(q=0.5))
        self.assertEqual(big_q_jacobi(0, 0.9, params), 1)

    def test_degree_one_vanishes_at_origin(self):
        params = BigQJacobiParams(c=1.0, d=1.0, base=QBase(q=0.5))
        self.assertAlmostEqual(big_q_jacobi(1, 0.0, params), 0.0, places=14)

    def test_degree_two_against_direct_sum(self):
        q, c, d, x = 0.5, 0.7, 0.3, 0.2
        params = BigQJacobiParams(c=c, d=d, base=QBase(q=q))
        expected = direct_sum((q**-2, q**3, q * x / c), (q, -q * d / c), q, q, 2)
        self.assertAlmostEqual(big_q_jacobi(2, x, params), expected, places=13)

    def test_zero_c_rejected(self):
        params = BigQJacobiParams(c=0.0, d=1.0, base=QBase(q=0.5))
        with self.assertRaises(DomainError):
            big_q_jacobi(1, 0.3, params)

    def test_negative_degree_rejected(self):
        params = BigQJacobiParams(c=1.0, d=1.0, base=QBase(q=0.5))
        with self.assertRaises(DomainError):
            big_q_jacobi(-1, 0.3, params)

    def test_require_positive(self):
        with self.assertRaises(DomainError):
            BigQJacobiParams(c=1.0, d=-1.0, base=QBase(q=0.5)).require_positive()


class TestMonic(unittest.TestCase):
    def setUp(self):
        self.base = QBase(q=0.5)

    def test_degree_zero_and_one(self):
        self.assertEqual(monic_big_q_jacobi00(0, 0.3, 0.8, 0.2, self.base), 1)
        self.assertAlmostEqual(monic_big_q_jacobi00(1, 0.3, 0.8, 0.2, self.base), -0.3, places=15)

    def test_series_paths_agree_with_recurrence(self):
        for n in range(6):
            report = monic_path_agreement(n, 0.37, 0.8, 0.2, self.base)
            self.assertTrue(report.passed, report)

    def test_series_paths_undefined_at_origin(self):
        for path in (MonicPath.SERIES_C, MonicPath.SERIES_D):
            with self.assertRaises(DomainError):
                monic_big_q_jacobi00(2, 0.0, 0.8, 0.2, self.base, path)

    def test_series_at_lattice_point(self):
        # c/x = q^-1 truncates the series after one term
        value = monic_big_q_jacobi00(4, 0.4, 0.8, 0.2, self.base, MonicPath.SERIES_C)
        expected = monic_big_q_jacobi00(4, 0.4, 0.8, 0.2, self.base, MonicPath.RECURRENCE)
        self.assertAlmostEqual(value, expected, places=12)

    def test_orthonormal_paths_agree(self):
        for k in range(5):
            self.assertAlmostEqual(
                orthonormal_big_q_jacobi00(k, 0.25, 1.0, 0.5, self.base),
                orthonormal_big_q_jacobi00_recurrence(k, 0.25, 1.0, 0.5, self.base),
                places=10,
            )

    def test_al_salam_carlitz_dilation(self):
        self.assertAlmostEqual(al_salam_carlitz(1, 0.3, 0.5, self.base), 0.3 - 1.5, places=15)
        for n in range(5):
            self.assertTrue(al_salam_carlitz_dilation(n, 0.1, 1.3, 0.6, self.base).passed)

    def test_scaling(self):
        for report in scaling_identities(3, 0.2, 0.5, 0.7, 1.1, 0.4, self.base):
            self.assertTrue(report.passed, report)


class TestLittleQJacobi(unittest.TestCase):
    def test_origin(self):
        for n in range(5):
            self.assertEqual(little_q_jacobi(n, 0.0, 0.3, 0.6, QBase(q=0.5)), 1)

    def test_degree_one(self):
        for x in (-0.4, 0.2, 1.3):
            self.assertAlmostEqual(little_q_jacobi(1, x, 1, 1, QBase(q=0.5)), 1 - 1.5 * x, places=14)

    def test_degree_two_against_direct_sum(self):
        q, x = 0.6, 0.3
        a = b = q**2
        expected = direct_sum((q**-2, a * b * q**3), (a * q,), q, q * x, 2)
        self.assertAlmostEqual(little_q_jacobi(2, x, a, b, QBase(q=q)), expected, places=13)


class TestDualQKrawtchouk(unittest.TestCase):
    def setUp(self):
        self.params = DualQKrawtchoukParams(s=2.0, N=4, base=QBase(q=0.5))

    def test_trivial_values(self):
        for x in range(5):
            self.assertEqual(dual_q_krawtchouk(0, x, self.params), 1)
        for n in range(5):
            self.assertEqual(dual_q_krawtchouk(n, 0, self.params), 1)

    def test_against_direct_sum(self):
        q, N, x = 0.5, 4, 3
        expected = direct_sum((q**-2, q**-x, -0.5 * q ** (x - N)), (q**-N, 0.0), q, q, 2)
        self.assertAlmostEqual(dual_q_krawtchouk(2, x, self.params), expected, places=12)

    def test_lattice_point(self):
        self.assertAlmostEqual(self.params.lattice(1), 2 - 0.5 * 0.5**-3, places=14)

    def test_out_of_range(self):
        with self.assertRaises(DegreeOutOfRange):
            dual_q_krawtchouk(5, 1, self.params)
        with self.assertRaises(DomainError):
            dual_q_krawtchouk(1, 5, self.params)

    def test_chu_vandermonde_at_infinite_s(self):
        for l in range(1, 4):
            for m in range(l + 1):
                report = closed_form_special_values(l, m, 2, 0.3, QBase(q=0.5))[0]
                self.assertTrue(report.passed, report)


class TestQCharlier(unittest.TestCase):
    def test_trivial_values(self):
        base = QBase(q=0.5)
        self.assertEqual(q_charlier(0, 3.0, 1.5, base), 1)
        for n in range(4):
            self.assertEqual(q_charlier(n, 1.0, 1.5, base), 1)

    def test_lattice_point_against_direct_sum(self):
        q, a = 0.5, 1.5
        expected = direct_sum((q**-2, q**-1), (0.0,), q, -(q**3) / a, 2)
        self.assertAlmostEqual(q_charlier(2, q**-1, a, QBase(q=q)), expected, places=14)

    def test_parameter_must_be_positive(self):
        with self.assertRaises(DomainError):
            q_charlier(1, 2.0, 0.0, QBase(q=0.5))

    def test_lattice_index(self):
        base = QBase(q=0.5)
        self.assertEqual(lattice_index(8.0, base), 3)
        self.assertIsNone(lattice_index(3.0, base))
        self.assertIsNone(lattice_index(-1.0, base))


class TestLeadingCoefficient(unittest.TestCase):
    def test_monic_family(self):
        params = BigQJacobiParams(a=0.0, b=0.0, c=0.8, d=0.2, base=QBase(q=0.5))
        for n in range(5):
            self.assertEqual(leading_coefficient(Family.MONIC_BIG_Q_JACOBI00, n, params), 1.0)

    def test_little_q_jacobi_degree_one(self):
        params = BigQJacobiParams(c=1.0, d=1.0, base=QBase(q=0.5))
        self.assertAlmostEqual(leading_coefficient(Family.LITTLE_Q_JACOBI, 1, params), -1.5, places=9)

    def test_big_q_jacobi_degree_one(self):
        q = 0.5
        params = BigQJacobiParams(c=1.0, d=1.0, base=QBase(q=q))
        # P_1 = 1 - (1 + q)(1 - q x) / (1 + q), so the slope is q
        self.assertAlmostEqual(leading_coefficient(Family.BIG_Q_JACOBI, 1, params), q, places=9)

    def test_unsupported_family(self):
        params = BigQJacobiParams(c=1.0, d=1.0, base=QBase(q=0.5))
        with self.assertRaises(DomainError):
            leading_coefficient(Family.Q_CHARLIER, 1, params)


if __name__ == "__main__":
    unittest.main()
