import unittest


class TestSmokeImports(unittest.TestCase):
    def test_import_package(self) -> None:
        import qlegendre  # noqa: F401

    def test_import_core_symbols(self) -> None:
        from qlegendre import QBase, VerificationRunner, big_q_legendre, verify_addition  # noqa: F401

    def test_version(self) -> None:
        import qlegendre

        self.assertEqual(qlegendre.__pkg_name__, "qlegendre")
        self.assertIsInstance(qlegendre.__version__, str)


class TestSmokeModels(unittest.TestCase):
    def test_big_q_legendre_degree_zero(self) -> None:
        from qlegendre import QBase, big_q_legendre

        self.assertEqual(float(big_q_legendre(0, 0.3, 1.0, 1.0, QBase(q=0.5))), 1.0)

    def test_addition_formula_single_point(self) -> None:
        from qlegendre import AdditionParams, QBase, verify_addition

        params = AdditionParams(l=2, p=1, x=0.4, c=1.2, d=0.7, base=QBase(q=0.5))
        report = verify_addition(params)
        self.assertTrue(report.passed)
        self.assertLessEqual(report.rel_residual, 1e-8)


if __name__ == "__main__":
    unittest.main()
