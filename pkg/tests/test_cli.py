"""Tests for the command-line entry point."""

import contextlib
import io
import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from qlegendre import Suite
from qlegendre.cli import RunConfig, build_parser, main


def run(*argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv))
    return code, out.getvalue()


class TestEval(unittest.TestCase):
    def test_little_q_jacobi_degree_zero(self):
        code, out = run("eval", "little-q-jacobi", "--n", "0", "--x", "0.7", "--q", "0.5", "--format", "json")
        self.assertEqual(code, 0)
        row = json.loads(out.strip())
        self.assertEqual(row["family"], "little-q-jacobi")
        self.assertAlmostEqual(row["value"], 1.0, places=15)

    def test_monic_degree_one(self):
        code, out = run(
            "eval", "monic-big00", "--n", "1", "--c", "0.8", "--d", "0.2", "--x", "0.3", "--format", "json"
        )
        self.assertEqual(code, 0)
        self.assertAlmostEqual(json.loads(out.strip())["value"], -0.3, places=14)

    def test_points_and_csv(self):
        code, out = run("eval", "chebyshev", "--n", "2", "--points", "0.6,1.0", "--format", "csv")
        self.assertEqual(code, 0)
        lines = out.strip().splitlines()
        self.assertEqual(lines[0], "family,n,x,value")
        self.assertAlmostEqual(float(lines[1].split(",")[-1]), -0.28, places=14)
        self.assertAlmostEqual(float(lines[2].split(",")[-1]), 1.0, places=14)

    def test_human_default(self):
        code, out = run("eval", "jacobi", "--n", "1", "--x", "0.5")
        self.assertEqual(code, 0)
        self.assertIn("jacobi", out)

    def test_missing_points(self):
        code, _ = run("eval", "chebyshev", "--n", "2")
        self.assertEqual(code, 2)


class TestVerify(unittest.TestCase):
    def test_pinned_addition(self):
        code, out = run(
            "verify", "addition", "--l", "0", "--q", "0.5", "--c", "1", "--d", "1", "--p", "2", "--x", "0.3"
        )
        self.assertEqual(code, 0)
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), 1)
        record = json.loads(lines[0])
        self.assertEqual(record["identity_id"], "addition")
        self.assertTrue(record["passed"])

    def test_seed_reproduces_output(self):
        args = ["verify", "addition", "--q", "0.5", "--l", "1", "--p", "2"]
        code, first = run(*args, "--seed", "7")
        _, second = run(*args, "--seed", "7")
        _, other = run(*args, "--seed", "8")
        self.assertEqual(code, 0)
        self.assertEqual(len(first.splitlines()), 200)
        self.assertEqual(first, second)
        self.assertNotEqual(first, other)

    def test_tolerance_per_suite(self):
        args = ["verify", "addition", "--l", "0", "--q", "0.5", "--c", "1", "--d", "1", "--p", "2", "--x", "0.3"]
        _, out = run(*args, "--tol", "1e-6", "--tol", "addition=1e-3", "--tol", "product=1e-2")
        self.assertEqual(json.loads(out)["tolerance"], 1e-3)
        _, out = run(*args, "--tol", "product=1e-2", "--tol", "1e-6")
        self.assertEqual(json.loads(out)["tolerance"], 1e-6)

    def test_tolerance_pairs_parsed(self):
        args = build_parser().parse_args(["verify", "all", "--tol", "1e-8", "--tol", "operator=1e-6"])
        self.assertEqual(args.tol, [(None, 1e-8), (Suite.OPERATOR, 1e-6)])
        cfg = RunConfig.from_namespace(args)
        self.assertEqual(cfg.suite_config(Suite.OPERATOR).tolerance, 1e-6)
        self.assertEqual(cfg.suite_config(Suite.ADDITION).tolerance, 1e-8)

    def test_bad_tolerance(self):
        for value in ("nosuite=1e-6", "addition=small"):
            with self.assertRaises(SystemExit) as ctx, contextlib.redirect_stderr(io.StringIO()):
                build_parser().parse_args(["verify", "addition", "--tol", value])
            self.assertEqual(ctx.exception.code, 2)
        code, _ = run("verify", "addition", "--tol", "addition=-1")
        self.assertEqual(code, 2)

    def test_verbose_logs_suite_progress(self):
        args = ["verify", "addition", "--l", "0", "--q", "0.5", "--c", "1", "--d", "1", "--p", "2", "--x", "0.3"]
        with self.assertLogs("qlegendre.progress", level="INFO") as captured:
            code, _ = run(*args, "-v")
        self.assertEqual(code, 0)
        self.assertIn("suite addition started", captured.output[0])
        self.assertIn("1 reports, 0 failed", captured.output[-1])
        with self.assertNoLogs("qlegendre.progress", level="INFO"):
            run(*args)

    def test_invalid_q(self):
        code, _ = run("verify", "addition", "--q", "1.5")
        self.assertEqual(code, 2)

    def test_unknown_suite(self):
        with self.assertRaises(SystemExit) as ctx, contextlib.redirect_stderr(io.StringIO()):
            build_parser().parse_args(["verify", "no-such-suite"])
        self.assertEqual(ctx.exception.code, 2)

    def test_nonconvergence_exit_code(self):
        with mock.patch.dict(os.environ, {"QLEG_MAX_TERMS": "2"}):
            code, _ = run("verify", "charlier", "--q", "0.4")
        self.assertEqual(code, 3)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "reports.csv"
            code, out = run(
                "verify", "addition", "--l", "0", "--q", "0.5", "--c", "1", "--d", "1",
                "--p", "1", "--x", "0.2", "--format", "csv", "--output", str(path),
            )
            self.assertEqual(code, 0)
            self.assertEqual(out, "")
            text = path.read_text()
        self.assertTrue(text.startswith("identity_id,"))
        self.assertEqual(len(text.strip().splitlines()), 2)


class TestSpectrum(unittest.TestCase):
    def test_table(self):
        code, out = run("spectrum", "--sigma", "0", "--q", "0.5", "--dim", "60", "--count", "6")
        self.assertEqual(code, 0)
        lines = out.strip().splitlines()
        self.assertEqual(lines[0], "rank,eigenvalue,branch,x,predicted,deviation")
        self.assertEqual(len(lines), 7)

    def test_empty(self):
        code, out = run("spectrum", "--q", "0.5", "--count", "0")
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "rank,eigenvalue,branch,x,predicted,deviation")

    def test_count_exceeds_dim(self):
        code, _ = run("spectrum", "--dim", "10", "--count", "20")
        self.assertEqual(code, 2)


class TestLimitScan(unittest.TestCase):
    def test_little_q_jacobi(self):
        code, out = run("limit-scan", "little-q-jacobi", "--l", "1")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("p,"))


if __name__ == "__main__":
    unittest.main()
