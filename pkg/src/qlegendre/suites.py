"""
Verification suites.

Each suite is a generator of reports over a parameter grid. Grid axes that
the configuration pins (``q``, ``l``, ``c`` ...) collapse to that value;
the others use the defaults below. Random draws come from
``numpy.random.default_rng([seed, stream])`` with a fixed stream per suite,
so a seed fully determines every suite's parameters.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence
import logging

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field

from .classical import (
    LimitFamilyParams,
    LimitScanConfig,
    classical_addition,
    classical_addition_parametric,
    classical_product,
    kernel_limit_scan,
    limit_family_scan,
    ratio_asymptotic,
    recurrence_limits,
)
from .enums import Branch, CharlierKind, Family, Gauge, IdentityId, Precision, Suite
from .identities import (
    AdditionParams,
    addition_polynomiality,
    al_salam_carlitz_dilation,
    closed_form_special_values,
    euler_identity,
    monic_path_agreement,
    orthogonality_big00,
    positive_kernel,
    product_formula_reports,
    q_binomial_identity,
    q_charlier_orthogonality,
    q_integral_monomial,
    scaling_identities,
    special_case_little,
    verify_addition,
    verify_h_norm,
)
from .operator import (
    TruncatedRep,
    addition_linkage,
    dual_orthogonality_as_q_integral,
    gauge_equivalence,
    norms_and_dual_orthogonality,
    operator_identity,
    scalar_identity,
    spectral_point,
    spectrum_check,
)
from .protocol import SuiteLike
from .qcore import QBase
from .report import VerificationReport
from .rules import DEFAULT_RULES, VerificationRules
from ._registered_suites import registered_suites

__all__ = ["SuiteConfig", "register_suite"]

log = logging.getLogger("qlegendre")


class SuiteConfig(BaseModel):
    """
    Parameters shared by all suites.

    Fields
    ------
    precision, dps
        Arithmetic mode of the bases built by the suites.
    seed
        Seed of the parameter draws.
    q, sigma, c, d, l, p, x, dim, count
        Optional pins of the corresponding grid axes.
    tolerance
        Overrides every verifier's tolerance when set.
    draws, points
        Number of seeded ``(c, d)`` pairs and of seeded evaluation points.
    rules
        Tolerances and truncation sizes.
    """

    precision: Precision = Precision.DOUBLE
    dps: int = Field(default=40, ge=16)
    seed: int = Field(default=0, ge=0)
    q: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    sigma: Optional[float] = None
    c: Optional[float] = Field(default=None, gt=0.0)
    d: Optional[float] = Field(default=None, gt=0.0)
    l: Optional[int] = Field(default=None, ge=0)
    p: Optional[int] = Field(default=None, ge=0)
    x: Optional[float] = None
    dim: Optional[int] = Field(default=None, ge=2)
    count: Optional[int] = Field(default=None, ge=0)
    tolerance: Optional[float] = Field(default=None, gt=0.0)
    draws: int = Field(default=20, ge=1)
    points: int = Field(default=10, ge=1)
    rules: VerificationRules = DEFAULT_RULES

    model_config = ConfigDict(frozen=True, extra="forbid")

    def base(self, q: float) -> QBase:
        return QBase.from_env(q=q, precision=self.precision, dps=self.dps)

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    def axis(self, name: str, default: Sequence) -> list:
        value = getattr(self, name)
        return [value] if value is not None else list(default)

    def cd_pairs(self, rng: np.random.Generator, default_draws: Optional[int] = None) -> list[tuple[float, float]]:
        if self.c is not None and self.d is not None:
            return [(self.c, self.d)]
        size = default_draws or self.draws
        pairs = rng.uniform(0.1, 2.0, size=(size, 2))
        return [
            (self.c if self.c is not None else float(c), self.d if self.d is not None else float(d))
            for c, d in pairs
        ]


def register_suite(suite: Suite) -> Callable[[SuiteLike], SuiteLike]:
    """Decorator adding a suite to ``registered_suites`` under its name."""

    def decorator(fn: SuiteLike) -> SuiteLike:
        registered_suites[suite.value] = fn
        return fn

    return decorator


@register_suite(Suite.ADDITION)
def addition_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Addition formula in double precision, and ``l = 5, 6`` in extended precision."""
    rng = config.rng(1)
    rules = config.rules
    extended_above = rules.truncation.extended_above_l
    for q in config.axis("q", (0.3, 0.5, 0.7, 0.9)):
        base = config.base(q)
        for c, d in config.cd_pairs(rng):
            xs = config.axis("x", rng.uniform(-d - 1, c + 1, size=config.points))
            for l in config.axis("l", range(extended_above + 1)):
                for p in config.axis("p", range(7)):
                    for x in xs:
                        params = AdditionParams(l=l, p=p, x=float(x), c=c, d=d, base=base)
                        yield verify_addition(params, config.tolerance, rules=rules)
    if config.l is not None:
        return
    # fewer (c, d) draws and one point per pair: extended precision is slow
    for q in config.axis("q", (0.3, 0.5, 0.7, 0.9)):
        base = config.base(q)
        for c, d in config.cd_pairs(rng, default_draws=2):
            xs = config.axis("x", rng.uniform(-d - 1, c + 1, size=1))
            for l in (extended_above + 1, extended_above + 2):
                for p in config.axis("p", range(7)):
                    for x in xs:
                        params = AdditionParams(l=l, p=p, x=float(x), c=c, d=d, base=base)
                        yield verify_addition(params, config.tolerance, rules=rules)


@register_suite(Suite.PRODUCT)
def product_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Product formula, its shifted variant and the positive-kernel case."""
    settings = [(1.0, 0.5, 0.5), (0.7, 1.3, 0.6)]
    if config.c is not None or config.d is not None or config.q is not None:
        c, d, q = settings[0]
        settings = [(config.c or c, config.d or d, config.q or q)]
    for c, d, q in settings:
        base = config.base(q)
        for l in config.axis("l", range(5)):
            for p in config.axis("p", range(5)):
                for m in range(l + 1):
                    yield from product_formula_reports(
                        l, m, p, c, d, base, tolerance=config.tolerance, rules=config.rules
                    )
                yield positive_kernel(l, p, c, d, base, rules=config.rules)


@register_suite(Suite.ORTHOGONALITY)
def orthogonality_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Orthogonality matrix of the monic big q-Jacobi polynomials and eigenvector norms."""
    c = config.c or 1.0
    d = config.d or 0.5
    q = config.q or 0.5
    base = config.base(q)
    for n in range(9):
        for m in range(n, 9):
            yield orthogonality_big00(n, m, c, d, base, tolerance=config.tolerance, rules=config.rules)
    for sigma in config.axis("sigma", (0.3, -0.3)):
        for x in range(6):
            yield verify_h_norm(x, sigma, base, tolerance=config.tolerance, rules=config.rules)


@register_suite(Suite.CHARLIER)
def charlier_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Both q-Charlier relations."""
    for q in config.axis("q", (0.4, 0.7)):
        base = config.base(q)
        for a in (0.5, 1.5, 3.0):
            for kind in CharlierKind:
                for n in range(7):
                    for m in range(n, 7):
                        yield q_charlier_orthogonality(
                            n, m, a, base, kind, tolerance=config.tolerance, rules=config.rules
                        )


@register_suite(Suite.OPERATOR)
def operator_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Spectrum, eigenvector norms, completeness and the operator identity."""
    rules = config.rules
    truncation = rules.truncation
    count = config.count if config.count is not None else 10
    for q in config.axis("q", (0.5, 0.7)):
        base = config.base(q).model_copy(update={"precision": Precision.DOUBLE})
        for sigma in config.axis("sigma", (0.0, 0.3, 1.0)):
            rep = TruncatedRep(dim=config.dim or truncation.spectrum_dim, sigma=sigma, base=base)
            yield from spectrum_check(rep, min(count, rep.dim), tolerance=config.tolerance, rules=rules)
            yield from norms_and_dual_orthogonality(
                rep, truncation.xmax, truncation.nmax, tolerance=config.tolerance, rules=rules
            )
            yield gauge_equivalence(sigma, base, min(rep.dim, 40))

    base = config.base(config.q or 0.5).model_copy(update={"precision": Precision.DOUBLE})
    rep = TruncatedRep(dim=config.dim or 20, sigma=config.sigma if config.sigma is not None else 0.3, base=base)
    yield from dual_orthogonality_as_q_integral(rep, 30, 3, rules=rules)

    for sigma in config.axis("sigma", (0.3, 0.8)):
        for gauge in Gauge:
            rep = TruncatedRep(
                dim=config.dim or truncation.operator_dim, sigma=sigma, base=base, gauge=gauge
            )
            for l in config.axis("l", range(4)):
                yield operator_identity(l, rep, tolerance=config.tolerance, rules=rules)

    rng = config.rng(5)
    for sigma in config.axis("sigma", (0.3,)):
        points = [spectral_point(branch, x, sigma, base) for branch in Branch for x in range(3)]
        lams = [pt.lambda_ for pt in points] + [0.123] + list(rng.uniform(-1.5, 1.5, config.points))
        for l in config.axis("l", range(4)):
            for p in config.axis("p", range(4)):
                for lam in lams:
                    yield scalar_identity(l, p, sigma, float(lam), base, tolerance=config.tolerance, rules=rules)


@register_suite(Suite.SPECIAL)
def special_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Little q-Legendre special case, closed-form special values, polynomiality."""
    rng = config.rng(6)
    for q in config.axis("q", (0.4, 0.8)):
        base = config.base(q)
        xs = config.axis("x", rng.uniform(-1.0, 2.0, size=config.points))
        for l in config.axis("l", range(5)):
            for p in config.axis("p", range(7)):
                for x in xs:
                    yield special_case_little(l, p, float(x), base, tolerance=config.tolerance, rules=config.rules)
                yield addition_polynomiality(l, p, 1.0, 0.5, base)
            for m in range(l + 1):
                yield from closed_form_special_values(l, m, m, float(xs[0]), base, rules=config.rules)


@register_suite(Suite.CONSISTENCY)
def consistency_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Independent evaluation paths, q-calculus identities and the linkage of the two scalar identities."""
    rng = config.rng(7)
    rules = config.rules
    for _ in range(100):
        q = config.q or float(rng.uniform(0.2, 0.9))
        c, d = config.cd_pairs(rng, default_draws=1)[0]
        n = int(rng.integers(0, 9))
        x = float(rng.uniform(-d - 1, c + 1))
        base = config.base(q)
        yield monic_path_agreement(n, x, c, d, base, tolerance=config.tolerance, rules=rules)
        yield al_salam_carlitz_dilation(n, x, c, d, base, rules=rules)
    for q in config.axis("q", (0.3, 0.6, 0.9)):
        base = config.base(q)
        for t in (-0.5, 0.25, 2.0):
            yield euler_identity(t, base)
        for p in range(6):
            yield q_binomial_identity(p, 0.7, base)
        for m in range(4):
            yield q_integral_monomial(m, 1.5, base)
        yield from scaling_identities(3, 0.4, 0.5, 0.8, 1.2, 0.7, base, rules=rules)
        for c, d in config.cd_pairs(rng, default_draws=3):
            for l in config.axis("l", range(4)):
                for p in config.axis("p", range(4)):
                    x = float(rng.uniform(-d - 1, c + 1))
                    yield from addition_linkage(AdditionParams(l=l, p=p, x=x, c=c, d=d, base=base), rules=rules)


@register_suite(Suite.LIMITS)
def limits_suite(config: SuiteConfig) -> Iterator[VerificationReport]:
    """Limit transitions to the classical polynomials and the classical formulas."""
    rules = config.rules
    cap = rules.tolerances.limit_cap
    rng = config.rng(8)
    families = [
        (Family.BIG_Q_JACOBI, LimitFamilyParams(n=2, alpha=1.0, beta=0.5, c=1.0, d=0.5)),
        (Family.BIG_Q_JACOBI, LimitFamilyParams(n=3, c=0.8, d=1.2)),
        (Family.LITTLE_Q_JACOBI, LimitFamilyParams(n=1)),
        (Family.LITTLE_Q_JACOBI, LimitFamilyParams(n=3, alpha=2.0, beta=1.0)),
        (Family.DUAL_Q_KRAWTCHOUK, LimitFamilyParams(n=2, m=1, c=1.0, d=0.5)),
        (Family.DUAL_Q_KRAWTCHOUK, LimitFamilyParams(n=4, m=2, c=0.7, d=1.1)),
    ]
    for family, params in families:
        target = {
            Family.BIG_Q_JACOBI: IdentityId.LIMIT_BIG_Q_JACOBI,
            Family.LITTLE_Q_JACOBI: IdentityId.LIMIT_LITTLE_Q_JACOBI,
            Family.DUAL_Q_KRAWTCHOUK: IdentityId.LIMIT_DUAL_Q_KRAWTCHOUK,
        }[family]
        cfg = LimitScanConfig(r=0.8, p_values=(4, 8, 16, 32), target=target, cap=cap)
        yield limit_family_scan(cfg, family, params).to_report()
    for m in (1, -1, 2):
        yield ratio_asymptotic(m, 2.0, 0.5, 1.0, 1.0, cap=cap).to_report()
    yield kernel_limit_scan(Polynomial([0.0, 1.0]), 1, 0.5, 1.0, 1.0, degree=1, cap=cap).to_report()
    yield from recurrence_limits(0.5, 1.0, 0.7, 1000, rules=rules)

    tolerance = config.tolerance
    for l in config.axis("l", range(9)):
        for _ in range(50):
            x, y = rng.uniform(-0.7, 0.7, size=2)
            t = float(rng.uniform(-1, 1))
            yield classical_addition(l, float(x), float(y), t, tolerance=tolerance, rules=rules)
            m = int(rng.integers(0, l + 1))
            yield classical_product(l, m, float(x), float(y), tolerance=tolerance, rules=rules)
        for _ in range(5):
            c, d = rng.uniform(0.2, 2.0, size=2)
            r = float(rng.uniform(0.1, 0.9))
            z = float(rng.uniform(-d, c))
            yield from classical_addition_parametric(l, float(c), float(d), r, z, tolerance=tolerance, rules=rules)
