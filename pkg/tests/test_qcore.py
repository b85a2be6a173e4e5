"""Tests for shifted factorials, terminating series and Jackson integrals."""

import math
import os
import unittest
from unittest import mock

import pydantic

from qlegendre import NonConvergence, Precision, QBase
from qlegendre.exceptions import DomainError
from qlegendre.qcore import (
    QIntegralSpec,
    SeriesSpec,
    euler_sum,
    euler_sum_detailed,
    fsum,
    phi_terminating,
    q_integral,
    qpochhammer_finite,
    qpochhammer_infinite,
    qpochhammer_infinite_detailed,
    reversed_qpochhammer,
)


class TestQBase(unittest.TestCase):
    def test_rejects_q_outside_unit_interval(self):
        for q in (0.0, 1.0, -0.5, 1.5):
            with self.assertRaises(pydantic.ValidationError):
                QBase(q=q)

    def test_default_tolerance_depends_on_precision(self):
        self.assertEqual(QBase(q=0.5).tol, 1e-16)
        self.assertAlmostEqual(QBase(q=0.5, precision=Precision.EXTENDED, dps=30).tol, 1e-28)

    def test_squared_keeps_policy(self):
        base = QBase(q=0.5, max_terms=123)
        squared = base.squared()
        self.assertEqual(squared.q, 0.25)
        self.assertEqual(squared.max_terms, 123)

    def test_extended_contexts_are_private(self):
        a = QBase(q=0.5, precision=Precision.EXTENDED, dps=30).ctx
        b = QBase(q=0.5, precision=Precision.EXTENDED, dps=60).ctx
        self.assertEqual(a.dps, 30)
        self.assertEqual(b.dps, 60)

    def test_from_env_reads_max_terms(self):
        with mock.patch.dict(os.environ, {"QLEG_MAX_TERMS": "17"}):
            self.assertEqual(QBase.from_env(q=0.5).max_terms, 17)


class TestQPochhammer(unittest.TestCase):
    def setUp(self):
        self.base = QBase(q=0.5)

    def test_empty_product(self):
        self.assertEqual(qpochhammer_finite(0.5, self.base, 0), 1)

    def test_two_factors(self):
        self.assertAlmostEqual(qpochhammer_finite(0.5, self.base, 2), 0.375, places=15)

    def test_vanishing_first_factor(self):
        self.assertEqual(qpochhammer_finite(1.0, self.base, 3), 0)

    def test_negative_length_rejected(self):
        with self.assertRaises(DomainError):
            qpochhammer_finite(0.5, self.base, -1)

    def test_reversed_product_vanishes_past_p(self):
        self.assertEqual(reversed_qpochhammer(2, self.base, 3), 0)
        expected = (1 - 0.25) * (1 - 0.5)
        self.assertAlmostEqual(reversed_qpochhammer(2, self.base, 2), expected, places=15)

    def test_infinite_product_trivial_values(self):
        self.assertEqual(qpochhammer_infinite(0, self.base), 1)
        self.assertEqual(qpochhammer_infinite(1, self.base), 0)

    def test_infinite_product_against_direct_product(self):
        direct = math.prod(1 - 0.5 * 0.5**k for k in range(200))
        value = qpochhammer_infinite(0.5, self.base)
        self.assertLessEqual(abs(value - direct) / direct, 1e-14)

    def test_infinite_product_records_tail(self):
        result = qpochhammer_infinite_detailed(0.5, self.base)
        self.assertGreater(result.terms, 0)
        self.assertLess(result.tail_bound, 1e-14)

    def test_log_space_product_near_one(self):
        base = QBase(q=0.995)
        direct = math.prod(1 - 0.3 * 0.995**k for k in range(20000))
        value = qpochhammer_infinite(0.3, base)
        self.assertLessEqual(abs(value - direct) / direct, 1e-10)

    def test_max_terms_raises(self):
        base = QBase(q=0.9, max_terms=5)
        with self.assertRaises(NonConvergence):
            qpochhammer_infinite(0.5, base)


class TestPhiTerminating(unittest.TestCase):
    def test_two_term_sum(self):
        base = QBase(q=0.5)
        spec = SeriesSpec(
            numerator_params=(2.0, 0.25),
            denominator_params=(0,),
            base=base,
            argument=0.1,
            degree=1,
        )
        self.assertAlmostEqual(phi_terminating(spec), 0.85, places=15)

    def test_degree_zero_is_one(self):
        spec = SeriesSpec(numerator_params=(0.3,), base=QBase(q=0.5), argument=7.0, degree=0)
        self.assertEqual(phi_terminating(spec), 1)

    def test_q_binomial_theorem(self):
        base = QBase(q=0.5)
        spec = SeriesSpec(numerator_params=(0.5**-3,), base=base, argument=0.2, degree=3)
        expected = qpochhammer_finite(0.5**-3 * 0.2, base, 3)
        self.assertAlmostEqual(phi_terminating(spec), expected, places=13)

    def test_non_terminating_spec_rejected(self):
        with self.assertRaises(pydantic.ValidationError):
            SeriesSpec(numerator_params=(0.3,), base=QBase(q=0.5), argument=0.1, degree=2)

    def test_vanishing_denominator_rejected(self):
        spec = SeriesSpec(
            numerator_params=(0.5**-2,),
            denominator_params=(2.0,),
            base=QBase(q=0.5),
            argument=0.1,
            degree=2,
        )
        with self.assertRaises(DomainError):
            phi_terminating(spec)

    def test_extended_precision_agrees_with_double(self):
        double = QBase(q=0.5)
        extended = double.extended(40)
        make = lambda base: SeriesSpec(
            numerator_params=(0.5**-4, 0.3), denominator_params=(0.7,), base=base, argument=0.5, degree=4
        )
        self.assertAlmostEqual(float(phi_terminating(make(extended))), phi_terminating(make(double)), places=13)


class TestEulerAndIntegrals(unittest.TestCase):
    def test_euler_sum_matches_product(self):
        base = QBase(q=0.5)
        self.assertAlmostEqual(euler_sum(0.7, base), qpochhammer_infinite(-0.7, base), places=14)

    def test_euler_sum_sums_once(self):
        base = QBase(q=0.95)
        with mock.patch("qlegendre.qcore.fsum", wraps=fsum) as counted:
            result = euler_sum_detailed(3.0, base)
        self.assertGreater(result.terms, 50)
        self.assertLessEqual(counted.call_count, 2)
        self.assertAlmostEqual(result.value / qpochhammer_infinite(-3.0, base), 1.0, places=12)

    def test_euler_sum_extended(self):
        base = QBase(q=0.5, precision=Precision.EXTENDED, dps=40)
        value = euler_sum(0.7, base)
        self.assertLess(abs(value - qpochhammer_infinite(-0.7, base)), 1e-35)

    def test_integral_of_one(self):
        spec = QIntegralSpec(lower=0.0, upper=1.0, base=QBase(q=0.5))
        self.assertAlmostEqual(q_integral(lambda t: 1, spec), 1.0, places=13)

    def test_integral_of_identity(self):
        spec = QIntegralSpec(lower=0.0, upper=1.0, base=QBase(q=0.5))
        self.assertAlmostEqual(q_integral(lambda t: t, spec), 2 / 3, places=13)

    def test_integral_over_symmetric_interval(self):
        spec = QIntegralSpec(lower=-0.2, upper=0.8, base=QBase(q=0.5))
        self.assertAlmostEqual(q_integral(lambda t: 1, spec), 1.0, places=13)


if __name__ == "__main__":
    unittest.main()
