"""
Command-line entry point.

``qlegendre eval``        evaluate a polynomial family at points
``qlegendre verify``      run a verification suite, reports as JSON lines
``qlegendre spectrum``    truncated spectrum against the point spectrum
``qlegendre limit-scan``  error table of a q -> 1 limit

Exit status: 0 when every report passed, 1 on any failed report, 2 on usage
or validation errors, 3 when a series or integral failed to converge.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence
import argparse
import logging
import sys

import pandas as pd
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError

from .classical import (
    LimitFamilyParams,
    LimitScanConfig,
    LimitScanResult,
    chebyshev_T,
    jacobi_R,
    kernel_limit_scan,
    limit_family_scan,
    ratio_asymptotic,
)
from .enums import Family, IdentityId, OutputFormat, Precision, Suite, VerificationEventType
from .events import VerificationEvent
from .exceptions import NonConvergence, QLegendreError
from .families import (
    BigQJacobiParams,
    DualQKrawtchoukParams,
    al_salam_carlitz,
    big_q_jacobi,
    dual_q_krawtchouk,
    little_q_jacobi,
    monic_big_q_jacobi00,
    q_charlier,
)
from .operator import TruncatedRep, spectrum_table
from .qcore import QBase
from .report import VerificationReport, reports_to_frame, sort_reports
from .runner import VerificationRunner
from .suites import SuiteConfig

__all__ = ["Command", "RunConfig", "SuiteProgress", "build_parser", "main"]

log = logging.getLogger("qlegendre")
progress_log = logging.getLogger("qlegendre.progress")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3


class Command(Enum):
    EVAL = "eval"
    VERIFY = "verify"
    SPECTRUM = "spectrum"
    LIMIT_SCAN = "limit-scan"


class RunConfig(BaseModel):
    """
    Validated command-line configuration.

    The seed determines every randomised draw, so two runs with equal
    configurations emit identical reports.
    """

    command: Command
    precision: Precision = Precision.DOUBLE
    dps: int = Field(default=40, ge=16)
    tolerance: Optional[float] = Field(default=None, gt=0.0)
    tolerances: dict[Suite, PositiveFloat] = Field(default_factory=dict)
    output: OutputFormat = OutputFormat.JSON
    output_path: Optional[Path] = None
    seed: int = Field(default=0, ge=0)
    q: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    sigma: Optional[float] = None
    c: Optional[float] = None
    d: Optional[float] = None
    l: Optional[int] = Field(default=None, ge=0)
    p: Optional[int] = Field(default=None, ge=0)
    x: Optional[float] = None
    dim: Optional[int] = Field(default=None, ge=2)
    count: Optional[int] = Field(default=None, ge=0)

    model_config = ConfigDict(frozen=True, extra="ignore")

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        values = {k: v for k, v in vars(args).items() if v is not None}
        values["command"] = args.command
        values["output"] = args.format
        values["output_path"] = args.output
        values["tolerance"] = None
        values["tolerances"] = {}
        for suite, value in args.tol or ():
            if suite is None:
                values["tolerance"] = value
            else:
                values["tolerances"][suite] = value
        return cls(**values)

    def base(self, default_q: float = 0.5) -> QBase:
        return QBase.from_env(
            q=self.q if self.q is not None else default_q,
            precision=self.precision,
            dps=self.dps,
        )

    def suite_config(self, suite: Optional[Suite] = None) -> SuiteConfig:
        """Suite configuration; a ``--tol SUITE=VALUE`` override beats the global one."""
        return SuiteConfig(
            precision=self.precision,
            dps=self.dps,
            seed=self.seed,
            q=self.q,
            sigma=self.sigma,
            c=self.c,
            d=self.d,
            l=self.l,
            p=self.p,
            x=self.x,
            dim=self.dim,
            count=self.count,
            tolerance=self.tolerances.get(suite, self.tolerance),
        )


# --------------------------------------------------------------------------- #
# output
# --------------------------------------------------------------------------- #


def _write(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _emit_table(frame: pd.DataFrame, cfg: RunConfig) -> None:
    if cfg.output is OutputFormat.CSV:
        text = frame.to_csv(index=False)
    elif cfg.output is OutputFormat.JSON:
        text = frame.to_json(orient="records", lines=True) if len(frame) else ""
        if text and not text.endswith("\n"):
            text += "\n"
    else:
        text = frame.to_string(index=False) + "\n"
    _write(text, cfg.output_path)


def _emit_reports(reports: Sequence[VerificationReport], cfg: RunConfig) -> None:
    if cfg.output is OutputFormat.JSON:
        _write("".join(r.model_dump_json() + "\n" for r in reports), cfg.output_path)
    elif cfg.output is OutputFormat.CSV:
        _write(reports_to_frame(reports).to_csv(index=False), cfg.output_path)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.identity_id.value} {r.params} "
            f"rel={r.rel_residual:.3e} tol={r.tolerance:.1e}"
            for r in reports
        ]
        failed = sum(not r.passed for r in reports)
        lines.append(f"{len(reports)} reports, {failed} failed")
        _write("\n".join(lines) + "\n", cfg.output_path)


# --------------------------------------------------------------------------- #
# commands
# --------------------------------------------------------------------------- #


def _points(args: argparse.Namespace) -> list[float]:
    if args.points:
        return [float(v) for v in args.points.split(",")]
    if args.x is not None:
        return [args.x]
    raise QLegendreError("eval needs --x or --points")


def _evaluator(family: Family, args: argparse.Namespace, base: QBase):
    n = args.n
    c = args.c if args.c is not None else 1.0
    d = args.d if args.d is not None else 1.0
    if family is Family.BIG_Q_JACOBI:
        params = BigQJacobiParams(a=args.a, b=args.b, c=c, d=d, base=base)
        return lambda x: big_q_jacobi(n, x, params)
    if family is Family.MONIC_BIG_Q_JACOBI00:
        return lambda x: monic_big_q_jacobi00(n, x, c, d, base)
    if family is Family.LITTLE_Q_JACOBI:
        return lambda x: little_q_jacobi(n, x, args.a, args.b, base)
    if family is Family.DUAL_Q_KRAWTCHOUK:
        params = DualQKrawtchoukParams(s=args.s, N=args.N, base=base)
        return lambda x: dual_q_krawtchouk(n, int(x), params)
    if family is Family.Q_CHARLIER:
        return lambda x: q_charlier(n, x, args.a, base)
    if family is Family.AL_SALAM_CARLITZ:
        return lambda x: al_salam_carlitz(n, x, args.a, base)
    if family is Family.JACOBI:
        return lambda x: jacobi_R(n, args.alpha, args.beta, x)
    return lambda x: chebyshev_T(n, x)


def _cmd_eval(args: argparse.Namespace, cfg: RunConfig) -> int:
    family = Family(args.family)
    evaluate = _evaluator(family, args, cfg.base())
    rows = [
        {"family": family.value, "n": args.n, "x": x, "value": float(evaluate(x))}
        for x in _points(args)
    ]
    _emit_table(pd.DataFrame(rows, columns=["family", "n", "x", "value"]), cfg)
    return EXIT_OK


class SuiteProgress:
    """Logs the start, wall time and outcome of every suite a runner completes."""

    def __init__(self, logger: logging.Logger = progress_log):
        self._logger = logger
        self._started: dict[str, float] = {}

    def attach(self, runner: VerificationRunner) -> None:
        runner.subscribe(VerificationEventType.SUITE_STARTED, self.on_started)
        runner.subscribe(VerificationEventType.SUITE_COMPLETED, self.on_completed)

    def on_started(self, event: VerificationEvent, runner: VerificationRunner) -> None:
        self._started[event.suite] = event.ts
        self._logger.info("suite %s started", event.suite)

    def on_completed(self, event: VerificationEvent, runner: VerificationRunner) -> None:
        elapsed = event.ts - self._started.pop(event.suite, event.ts)
        self._logger.info(
            "suite %s finished in %.2f s: %d reports, %d failed",
            event.suite,
            elapsed,
            event.payload["reports"],
            event.payload["failed"],
        )


def _cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    runner = VerificationRunner(exc_handling_mode="raise" if args.strict else "log")
    if args.verbose:
        SuiteProgress().attach(runner)
    suite = Suite(args.suite)
    suites = [s for s in Suite if s is not Suite.ALL] if suite is Suite.ALL else [suite]
    reports = sort_reports(
        report for s in suites for report in runner.run(s, cfg.suite_config(s))
    )
    _emit_reports(reports, cfg)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def _cmd_spectrum(args: argparse.Namespace, cfg: RunConfig) -> int:
    rep = TruncatedRep(
        dim=cfg.dim if cfg.dim is not None else 60,
        sigma=cfg.sigma if cfg.sigma is not None else 0.0,
        base=cfg.base(),
    )
    count = cfg.count if cfg.count is not None else 10
    if count > rep.dim:
        raise QLegendreError(f"--count {count} exceeds --dim {rep.dim}")
    _emit_table(spectrum_table(rep, count), cfg)
    return EXIT_OK


_SCAN_FAMILIES = {
    "big-q-jacobi": (Family.BIG_Q_JACOBI, IdentityId.LIMIT_BIG_Q_JACOBI),
    "little-q-jacobi": (Family.LITTLE_Q_JACOBI, IdentityId.LIMIT_LITTLE_Q_JACOBI),
    "dual-q-krawtchouk": (Family.DUAL_Q_KRAWTCHOUK, IdentityId.LIMIT_DUAL_Q_KRAWTCHOUK),
}


def _cmd_limit_scan(args: argparse.Namespace, cfg: RunConfig) -> int:
    p_values = tuple(int(v) for v in args.p_values.split(","))
    c = cfg.c if cfg.c is not None else 1.0
    d = cfg.d if cfg.d is not None else 1.0
    result: LimitScanResult
    if args.target in _SCAN_FAMILIES:
        family, target = _SCAN_FAMILIES[args.target]
        config = LimitScanConfig(r=args.r, p_values=p_values, target=target)
        params = LimitFamilyParams(
            n=cfg.l if cfg.l is not None else 2,
            alpha=args.alpha,
            beta=args.beta,
            c=c,
            d=d,
            m=args.m,
        )
        result = limit_family_scan(config, family, params)
    elif args.target == "ratio":
        x = cfg.x if cfg.x is not None else c + 1
        result = ratio_asymptotic(args.m, x, args.r, c, d, p_values)
    else:
        f = Polynomial([float(v) for v in args.poly.split(",")])
        result = kernel_limit_scan(f, args.m, args.r, c, d, p_values, degree=f.degree())
    _emit_table(result.to_frame(), cfg)
    return EXIT_OK if result.passed else EXIT_FAILED


# --------------------------------------------------------------------------- #
# parser
# --------------------------------------------------------------------------- #


def _tolerance(text: str) -> tuple[Optional[Suite], float]:
    name, _, value = text.rpartition("=")
    try:
        suite = Suite(name) if name else None
        tolerance = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected VALUE or SUITE=VALUE, got {text!r}") from None
    if suite is Suite.ALL:
        suite = None
    return suite, tolerance


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, help="base q in (0, 1)")
    common.add_argument("--sigma", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--d", type=float)
    common.add_argument("--l", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--x", type=float)
    common.add_argument("--dim", type=int)
    common.add_argument("--count", type=int)
    common.add_argument("--precision", type=Precision, choices=list(Precision), default=Precision.DOUBLE)
    common.add_argument("--dps", type=int, default=40, help="digits in extended precision")
    common.add_argument(
        "--tol",
        type=_tolerance,
        action="append",
        metavar="[SUITE=]VALUE",
        help="override the tolerances of one suite, or of all suites; repeatable",
    )
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", type=Path, help="write to this file instead of stdout")
    common.add_argument("--format", type=OutputFormat, choices=list(OutputFormat), default=None)
    common.add_argument("--verbose", "-v", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlegendre",
        description="q-orthogonal polynomials and the big q-Legendre addition formula",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p_eval = sub.add_parser("eval", parents=[common], help="Evaluate a polynomial family")
    p_eval.add_argument("family", choices=[f.value for f in Family])
    p_eval.add_argument("--n", type=int, default=0, help="degree")
    p_eval.add_argument("--points", type=str, default="", help="comma separated points")
    p_eval.add_argument("--a", type=float, default=1.0)
    p_eval.add_argument("--b", type=float, default=1.0)
    p_eval.add_argument("--alpha", type=float, default=0.0)
    p_eval.add_argument("--beta", type=float, default=0.0)
    p_eval.add_argument("--s", type=float, default=1.0)
    p_eval.add_argument("--N", type=int, default=4)
    p_eval.set_defaults(func=_cmd_eval, default_format=OutputFormat.HUMAN)

    p_verify = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    p_verify.add_argument("suite", choices=[s.value for s in Suite])
    p_verify.add_argument("--strict", action="store_true", help="let event handler errors propagate")
    p_verify.set_defaults(func=_cmd_verify, default_format=OutputFormat.JSON)

    p_spec = sub.add_parser("spectrum", parents=[common], help="Truncated spectrum")
    p_spec.set_defaults(func=_cmd_spectrum, default_format=OutputFormat.CSV)

    p_scan = sub.add_parser("limit-scan", parents=[common], help="Error table of a q -> 1 limit")
    p_scan.add_argument(
        "target", choices=[*_SCAN_FAMILIES, "ratio", "kernel"], help="limit to scan"
    )
    p_scan.add_argument("--r", type=float, default=0.5)
    p_scan.add_argument("--p-values", type=str, default="4,8,16,32")
    p_scan.add_argument("--m", type=int, default=0)
    p_scan.add_argument("--alpha", type=float, default=0.0)
    p_scan.add_argument("--beta", type=float, default=0.0)
    p_scan.add_argument("--poly", type=str, default="0,1", help="coefficients of f, lowest first")
    p_scan.set_defaults(func=_cmd_limit_scan, default_format=OutputFormat.CSV)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    _configure_logging(args.verbose)
    try:
        cfg = RunConfig.from_namespace(args)
        return int(args.func(args, cfg))
    except NonConvergence as exc:
        log.error("no convergence: %s", exc)
        return EXIT_NONCONVERGENCE
    except (ValidationError, QLegendreError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
