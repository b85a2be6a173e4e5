"""
The q -> 1 limit layer.

Classical Jacobi, Legendre and Chebyshev evaluators, the classical Legendre
addition and product formulas, and convergence scans that follow the
q-families along ``q = r^(1/p)`` as ``p`` grows.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Callable, Optional, Union
import logging
import math

import numpy as np
import pandas as pd
from numpy.polynomial.chebyshev import chebgauss
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import special

from .enums import Family, IdentityId, Precision
from .exceptions import DegenerateRatio, DomainError
from .families import (
    BigQJacobiParams,
    big_q_jacobi,
    dual_q_krawtchouk_point,
    little_q_jacobi,
    monic_big_q_jacobi00,
    orthonormal_big_q_jacobi00,
    orthonormal_recurrence_coefficients,
)
from .identities import weight_big00
from .qcore import QBase, QIntegralSpec, q_integral_detailed
from .report import Truncation, VerificationReport, compare, params_record
from .rules import DEFAULT_RULES, VerificationRules

__all__ = [
    "jacobi_R",
    "chebyshev_T",
    "RhoMap",
    "LimitScanConfig",
    "LimitScanRow",
    "LimitScanResult",
    "LimitFamilyParams",
    "scan_base",
    "limit_family_scan",
    "limit_dual_q_krawtchouk",
    "ratio_asymptotic",
    "ratio_target",
    "recurrence_limits",
    "kernel_limit_scan",
    "arcsine_pairing",
    "classical_addition_terms",
    "classical_addition",
    "classical_addition_parametric",
    "classical_product",
]

log = logging.getLogger("qlegendre")

EXTENDED_ABOVE_Q = 0.99


# --------------------------------------------------------------------------- #
# classical polynomials
# --------------------------------------------------------------------------- #


def jacobi_R(n: int, alpha: float, beta: float, x: Any) -> Any:
    """
    Jacobi polynomial ``R_n^(alpha,beta)(x)`` normalised by ``R_n(1) = 1``.

    The unnormalised polynomial is generated by its three-term recurrence and
    divided by ``binom(n + alpha, n)``. ``x`` may be a scalar or an array.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if alpha <= -1 or beta <= -1:
        raise DomainError(f"alpha and beta must exceed -1, got {alpha}, {beta}")
    x = np.asarray(x, dtype=float)
    previous = np.ones_like(x)
    if n == 0:
        return previous if previous.ndim else float(previous)
    current = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    s = alpha + beta
    for k in range(2, n + 1):
        a = 2 * k * (k + s) * (2 * k + s - 2)
        b = (2 * k + s - 1) * ((2 * k + s) * (2 * k + s - 2) * x + alpha**2 - beta**2)
        c = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + s)
        previous, current = current, (b * current - c * previous) / a
    result = current / special.binom(n + alpha, n)
    return result if result.ndim else float(result)


def chebyshev_T(m: int, t: Any) -> Any:
    """Chebyshev polynomial of the first kind, ``T_m(cos theta) = cos(m theta)``; ``T_-m = T_m``."""
    m = abs(m)
    t = np.asarray(t, dtype=float)
    previous, current = np.ones_like(t), t.copy()
    if m == 0:
        current = previous
    for _ in range(m - 1):
        previous, current = current, 2 * t * current - previous
    return current if current.ndim else float(current)


class RhoMap:
    """
    ``rho(x) = x + sqrt(x^2 - 1)`` on the branch with ``|rho(x)| > 1``.

    Only real ``x`` off ``[-1, 1]`` are accepted.
    """

    def _root(self, x: float) -> float:
        if abs(x) <= 1:
            raise DomainError(f"rho is evaluated off [-1, 1] only, got {x}")
        return math.copysign(math.sqrt(x * x - 1), x)

    def __call__(self, x: float) -> float:
        return x + self._root(x)

    def inverse(self, x: float) -> float:
        """``1 / rho(x) = x - sqrt(x^2 - 1)``."""
        return x - self._root(x)

    def power(self, x: float, m: int) -> float:
        return self(x) ** m if m >= 0 else self.inverse(x) ** (-m)


# --------------------------------------------------------------------------- #
# scans
# --------------------------------------------------------------------------- #


class LimitScanConfig(BaseModel):
    """
    A scan along ``q = r^(1/p)``.

    Fields
    ------
    r
        Fixed in (0, 1).
    p_values
        Strictly increasing positive integers.
    target
        The relation scanned.
    cap
        The error at the largest ``p`` must be below this.
    floor
        Errors at or below this count as exact; a scan whose errors all stay
        below it passes without decreasing.
    """

    r: float = Field(..., gt=0.0, lt=1.0)
    p_values: tuple[int, ...] = (4, 8, 16, 32)
    target: IdentityId
    cap: float = Field(default=0.05, gt=0.0)
    floor: float = Field(default=1e-12, ge=0.0)

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("p_values")
    @classmethod
    def _strictly_increasing(cls, values: tuple[int, ...]) -> tuple[int, ...]:
        if not values:
            raise ValueError("p_values must not be empty")
        if values[0] < 1:
            raise ValueError("p_values must be positive")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("p_values must be strictly increasing")
        return values

    def q_values(self) -> list[float]:
        return [self.r ** (1.0 / p) for p in self.p_values]


class LimitScanRow(BaseModel):
    p: int
    q: float
    point: float
    q_value: float
    limit_value: float
    abs_error: float

    model_config = ConfigDict(frozen=True)


_COLUMNS = ["p", "q", "point", "q_value", "limit_value", "abs_error"]


class LimitScanResult(BaseModel):
    """Error table of a scan; one row per ``(p, point)``."""

    config: LimitScanConfig
    params: dict[str, Any] = Field(default_factory=dict)
    rows: tuple[LimitScanRow, ...] = ()

    model_config = ConfigDict(frozen=True)

    def errors(self) -> dict[int, float]:
        """Largest error over the points, per ``p`` that produced rows."""
        out: dict[int, float] = {}
        for row in self.rows:
            out[row.p] = max(out.get(row.p, 0.0), row.abs_error)
        return out

    @property
    def decreasing(self) -> bool:
        values = list(self.errors().values())
        floor = self.config.floor
        return all(b < a or b <= floor for a, b in zip(values, values[1:]))

    @property
    def passed(self) -> bool:
        values = list(self.errors().values())
        if not values:
            return False
        if max(values) <= self.config.floor:
            return True
        return values[-1] < self.config.cap and self.decreasing

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in self.rows], columns=_COLUMNS)

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> Optional[str]:
        return self.to_frame().to_csv(path, index=False)

    def to_report(self) -> VerificationReport:
        """Summarise as a report: the final error against zero, capped by ``cap``."""
        errors = self.errors()
        final = list(errors.values())[-1] if errors else math.inf
        report = compare(
            self.config.target,
            {**self.params, **params_record(r=self.config.r, p_values=self.config.p_values)},
            final,
            0.0,
            self.config.cap,
            Truncation(series_terms=len(self.rows), notes=(f"decreasing={self.decreasing}",)),
        )
        return report.model_copy(update={"passed": self.passed})


def scan_base(q: float, dps: int = 40) -> QBase:
    """Base for a scan point; extended precision above ``q = 0.99``."""
    if q > EXTENDED_ABOVE_Q:
        return QBase.from_env(q=q, precision=Precision.EXTENDED, dps=dps)
    return QBase.from_env(q=q)


class LimitFamilyParams(BaseModel):
    """
    Parameters of a family limit.

    For the big and little q-Jacobi families ``n`` is the degree and
    ``a = q^alpha``, ``b = q^beta``; for the dual q-Krawtchouk limit ``n`` is
    ``l`` and ``m`` the order, with ``s = c/d`` and ``N = 2l``.
    """

    n: int = Field(..., ge=0)
    alpha: float = Field(default=0.0, gt=-1.0)
    beta: float = Field(default=0.0, gt=-1.0)
    c: float = Field(default=1.0, gt=0.0)
    d: float = Field(default=1.0, gt=0.0)
    m: int = Field(default=0, ge=0)
    points: Optional[tuple[float, ...]] = None

    model_config = ConfigDict(frozen=True, extra="forbid")

    def record(self) -> dict[str, Any]:
        return params_record(**self.model_dump(exclude={"points"}))


def limit_dual_q_krawtchouk(l: int, m: int, c: float, d: float) -> float:
    """
    The ``q -> 1`` limit of ``R_(l-m)(q^-l - (d/c) q^-l; c/d, 2l; q)``:
    ``(m+1)_(l-m) / (l+m+1)_(l-m) (1 + d/c)^(l-m) R_(l-m)^(m,m)((c-d)/(c+d))``.
    """
    if not 0 <= m <= l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    k = l - m
    return float(
        special.poch(m + 1, k)
        / special.poch(l + m + 1, k)
        * (1 + d / c) ** k
        * jacobi_R(k, m, m, (c - d) / (c + d))
    )


def _family_pair(
    family: Family, params: LimitFamilyParams, base: QBase
) -> tuple[list[float], Callable[[float], Any], Callable[[float], float]]:
    q = base.q
    if family is Family.BIG_Q_JACOBI:
        c, d = params.c, params.d
        points = params.points or tuple(np.linspace(-d, c, 5))
        bq = BigQJacobiParams(a=q**params.alpha, b=q**params.beta, c=c, d=d, base=base)
        return (
            list(points),
            lambda x: big_q_jacobi(params.n, x, bq),
            lambda x: jacobi_R(params.n, params.alpha, params.beta, (2 * x + d - c) / (c + d)),
        )
    if family is Family.LITTLE_Q_JACOBI:
        points = params.points or tuple(np.linspace(0.0, 1.0, 5))
        return (
            list(points),
            lambda x: little_q_jacobi(params.n, x, q**params.alpha, q**params.beta, base),
            lambda x: jacobi_R(params.n, params.alpha, params.beta, 1 - 2 * x),
        )
    if family is Family.DUAL_Q_KRAWTCHOUK:
        l, m, c, d = params.n, params.m, params.c, params.d
        return (
            [l],
            lambda _: dual_q_krawtchouk_point(l - m, l, base.mpf(d) / base.mpf(c), 2 * l, base),
            lambda _: limit_dual_q_krawtchouk(l, m, c, d),
        )
    raise DomainError(f"no limit transition for family {family.value}")


_FAMILY_TARGETS = {
    Family.BIG_Q_JACOBI: IdentityId.LIMIT_BIG_Q_JACOBI,
    Family.LITTLE_Q_JACOBI: IdentityId.LIMIT_LITTLE_Q_JACOBI,
    Family.DUAL_Q_KRAWTCHOUK: IdentityId.LIMIT_DUAL_Q_KRAWTCHOUK,
}


def limit_family_scan(
    cfg: LimitScanConfig, family: Family, params: LimitFamilyParams
) -> LimitScanResult:
    """
    Follow a family to its Jacobi limit.

    Big q-Jacobi tends to ``R_n^(alpha,beta)((2x+d-c)/(c+d))``, little
    q-Jacobi to ``R_n^(alpha,beta)(1-2x)``, and the dual q-Krawtchouk value
    to :func:`limit_dual_q_krawtchouk`.
    """
    if family not in _FAMILY_TARGETS:
        raise DomainError(f"no limit transition for family {family.value}")
    rows = []
    for p, q in zip(cfg.p_values, cfg.q_values()):
        points, q_side, limit_side = _family_pair(family, params, scan_base(q))
        for point in points:
            value = float(q_side(point))
            limit = float(limit_side(point))
            rows.append(
                LimitScanRow(
                    p=p, q=q, point=float(point), q_value=value,
                    limit_value=limit, abs_error=abs(value - limit),
                )
            )
    result = LimitScanResult(
        config=cfg, params={"family": family.value, **params.record()}, rows=tuple(rows)
    )
    log.debug("%s scan errors %s", family.value, result.errors())
    return result


def ratio_target(m: int, x: float, r: float, c: float, d: float) -> float:
    """``(cdr(1-r))^(m/2) rho^m((x - r(c-d)) / (2 sqrt(rcd(1-r))))``."""
    amplitude = math.sqrt(r * c * d * (1 - r))
    return amplitude**m * RhoMap().power((x - r * (c - d)) / (2 * amplitude), m)


def _monic_ratio(p: int, m: int, x: float, c: float, d: float, base: QBase) -> Any:
    denominator = monic_big_q_jacobi00(p, x, c, d, base)
    if denominator == 0:
        raise DegenerateRatio(f"P^_{p}({x}) vanishes at q={base.q}")
    return monic_big_q_jacobi00(p + m, x, c, d, base) / denominator


def ratio_asymptotic(
    m: int,
    x: float,
    r: float,
    c: float,
    d: float,
    p_values: tuple[int, ...] = (8, 16, 32, 64),
    *,
    cap: float = DEFAULT_RULES.tolerances.limit_cap,
) -> LimitScanResult:
    """
    Ratio ``P^_(p+m)(x) / P^_p(x)`` at ``q = r^(1/p)`` against its limit
    :func:`ratio_target`.

    Points where ``P^_p(x)`` vanishes are logged and skipped.
    """
    if -d <= x <= c:
        raise DomainError(f"x={x} lies in [-d, c] = [{-d}, {c}]")
    cfg = LimitScanConfig(r=r, p_values=p_values, target=IdentityId.RATIO_ASYMPTOTIC, cap=cap)
    target = ratio_target(m, x, r, c, d)
    rows = []
    for p, q in zip(cfg.p_values, cfg.q_values()):
        if p + m < 0:
            continue
        try:
            value = float(_monic_ratio(p, m, x, c, d, scan_base(q)))
        except DegenerateRatio as exc:
            log.warning("skipping p=%d: %s", p, exc)
            continue
        rows.append(
            LimitScanRow(
                p=p, q=q, point=x, q_value=value, limit_value=target,
                abs_error=abs(value - target),
            )
        )
    return LimitScanResult(
        config=cfg,
        params=params_record(m=m, x=x, c=c, d=d),
        rows=tuple(rows),
    )


def recurrence_limits(
    r: float, c: float, d: float, n: int, *, rules: VerificationRules = DEFAULT_RULES
) -> list[VerificationReport]:
    """
    Limits of the orthonormal recurrence coefficients at ``q = r^(1/n)``:
    ``a_(n,n) -> sqrt(rcd(1-r))``, ``b_(n,n) -> r(c-d)``, and the consecutive
    differences ``a_k^2 - a_(k-1)^2``, ``b_k - b_(k-1)`` (largest over
    ``k <= 2n``) tend to zero.

    ``a_(n,n)`` approaches its limit at rate ``log(1/r)/n`` only, so the
    tolerance scales with that rate.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    base = scan_base(r ** (1.0 / n))
    rate = math.log(1 / r) / (n * (1 - r))
    size = max(1.0, c * d, abs(c - d))
    tolerance = 4 * size * rate
    a_nn, b_nn = orthonormal_recurrence_coefficients(n, c, d, base)
    squares = []
    shifts = []
    previous_a, previous_b = orthonormal_recurrence_coefficients(1, c, d, base)
    for k in range(2, 2 * n + 1):
        a_k, b_k = orthonormal_recurrence_coefficients(k, c, d, base)
        squares.append(abs(a_k**2 - previous_a**2))
        shifts.append(abs(b_k - previous_b))
        previous_a, previous_b = a_k, b_k
    record = params_record(r=r, c=c, d=d, n=n)
    truncation = Truncation.for_base(base)
    checks = [
        ("a", a_nn, math.sqrt(r * c * d * (1 - r))),
        ("b", b_nn, r * (c - d)),
        ("a_squared_step", max(squares, default=0.0), 0.0),
        ("b_step", max(shifts, default=0.0), 0.0),
    ]
    return [
        compare(
            IdentityId.RECURRENCE_LIMIT,
            {**record, "quantity": name},
            value,
            limit,
            tolerance,
            truncation,
            scale=size,
        )
        for name, value, limit in checks
    ]


def arcsine_pairing(f: Callable[[Any], Any], m: int, A: float, B: float, nodes: int) -> float:
    """``(1/pi) int f(z) T_m((z-B)/2A) / sqrt(4A^2 - (z-B)^2) dz`` over ``[B-2A, B+2A]``."""
    t, w = chebgauss(nodes)
    return float(np.sum(w * f(B + 2 * A * t) * chebyshev_T(m, t)) / math.pi)


def kernel_limit_scan(
    f: Callable[[Any], Any],
    m: int,
    r: float,
    c: float,
    d: float,
    p_values: tuple[int, ...] = (6, 12, 24),
    *,
    degree: int = 8,
    cap: float = DEFAULT_RULES.tolerances.limit_cap,
) -> LimitScanResult:
    """
    Pair ``f`` with ``p_p p_(p+m)`` (orthonormal, a=b=0) against the big
    q-Jacobi measure on ``[-d, c]`` and compare with the arcsine-kernel
    integral, ``A = sqrt(rcd(1-r))``, ``B = r(c-d)``.

    ``degree`` bounds the degree of ``f`` when it is a polynomial; it sets
    the Chebyshev-Gauss node count of the limit integral.
    """
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    A = math.sqrt(r * c * d * (1 - r))
    B = r * (c - d)
    target = arcsine_pairing(f, m, A, B, degree + m + 4)
    cfg = LimitScanConfig(r=r, p_values=p_values, target=IdentityId.KERNEL_LIMIT, cap=cap)
    rows = []
    for p, q in zip(cfg.p_values, cfg.q_values()):
        base = scan_base(q)

        def integrand(z: Any, p: int = p, base: QBase = base) -> Any:
            return (
                f(float(z))
                * orthonormal_big_q_jacobi00(p, z, c, d, base)
                * orthonormal_big_q_jacobi00(p + m, z, c, d, base)
                * weight_big00(z, c, d, base)
            )

        spec = QIntegralSpec(lower=-d, upper=c, base=base, tail_bound=1e-15)
        value = float(q_integral_detailed(integrand, spec).value)
        rows.append(
            LimitScanRow(
                p=p, q=q, point=float(m), q_value=value, limit_value=target,
                abs_error=abs(value - target),
            )
        )
    return LimitScanResult(
        config=cfg, params=params_record(m=m, c=c, d=d), rows=tuple(rows)
    )


# --------------------------------------------------------------------------- #
# classical addition and product formulas
# --------------------------------------------------------------------------- #


def _addition_weight(l: int, m: int) -> float:
    return special.factorial(l + m) / (special.factorial(l - m) * special.factorial(m) ** 2)


def classical_addition_terms(l: int, x: float, y: float, t: float) -> list[float]:
    """Summands of ``R_l(x) R_l(y) + 2 sum_m ... T_m(t)``, the ``m = 0`` term first."""
    root = math.sqrt((1 - x * x) * (1 - y * y))
    terms = [jacobi_R(l, 0, 0, x) * jacobi_R(l, 0, 0, y)]
    for m in range(1, l + 1):
        terms.append(
            2
            * _addition_weight(l, m)
            * 2.0 ** (-2 * m)
            * root**m
            * jacobi_R(l - m, m, m, x)
            * jacobi_R(l - m, m, m, y)
            * chebyshev_T(m, t)
        )
    return terms


def classical_addition(
    l: int,
    x: float,
    y: float,
    t: float,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """Addition formula for Legendre polynomials at ``xy + t sqrt((1-x^2)(1-y^2))``."""
    if not (-1 < x < 1 and -1 < y < 1 and -1 <= t <= 1):
        raise DomainError(f"need x, y in (-1, 1) and t in [-1, 1], got {x}, {y}, {t}")
    argument = x * y + t * math.sqrt((1 - x * x) * (1 - y * y))
    terms = classical_addition_terms(l, x, y, t)
    return compare(
        IdentityId.CLASSICAL_ADDITION,
        params_record(l=l, x=x, y=y, t=t),
        jacobi_R(l, 0, 0, argument),
        math.fsum(terms),
        tolerance if tolerance is not None else rules.tolerances.classical,
        Truncation(series_terms=len(terms)),
        scale=math.fsum(abs(v) for v in terms),
    )


def classical_addition_parametric(
    l: int,
    c: float,
    d: float,
    r: float,
    z: float,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    The addition formula written in ``(c, d, r, z)``:

    ``R_l((2z+d-c)/(c+d)) = R_l((d-c)/(c+d)) R_l(1-2r) + 2 sum_m
    (l+m)!/((l-m)!(m!)^2) (1+d/c)^-m (d r(1-r)/c)^(m/2)
    R^(m,m)_(l-m)((d-c)/(c+d)) R^(m,m)_(l-m)(1-2r) T_m((z - r(c-d))/(2 sqrt(rcd(1-r))))``.

    The second report compares its right side with the ``(x, y, t)`` form at
    ``x = (d-c)/(c+d)``, ``y = 1-2r`` and the same ``t``.
    """
    tolerance = tolerance if tolerance is not None else rules.tolerances.classical
    x = (d - c) / (c + d)
    y = 1 - 2 * r
    t = (z - r * (c - d)) / (2 * math.sqrt(r * c * d * (1 - r)))
    terms = [jacobi_R(l, 0, 0, x) * jacobi_R(l, 0, 0, y)]
    for m in range(1, l + 1):
        terms.append(
            2
            * _addition_weight(l, m)
            * (1 + d / c) ** (-m)
            * (d * r * (1 - r) / c) ** (m / 2)
            * jacobi_R(l - m, m, m, x)
            * jacobi_R(l - m, m, m, y)
            * chebyshev_T(m, t)
        )
    rhs = math.fsum(terms)
    scale = math.fsum(abs(v) for v in terms)
    record = params_record(l=l, c=c, d=d, r=r, z=z)
    reference = classical_addition_terms(l, x, y, t)
    return [
        compare(
            IdentityId.CLASSICAL_ADDITION_PARAMETRIC,
            {**record, "form": "parametric"},
            jacobi_R(l, 0, 0, (2 * z + d - c) / (c + d)),
            rhs,
            tolerance,
            Truncation(series_terms=len(terms)),
            scale=scale,
        ),
        compare(
            IdentityId.CLASSICAL_ADDITION_PARAMETRIC,
            {**record, "form": "identification"},
            rhs,
            math.fsum(reference),
            tolerance,
            Truncation(series_terms=len(terms)),
            scale=scale,
        ),
    ]


def classical_product(
    l: int,
    m: int,
    x: float,
    y: float,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    Product formula
    ``R^(m,m)_(l-m)(x) R^(m,m)_(l-m)(y) = 2^(2m) (l-m)!(m!)^2 / (pi (l+m)!)
    ((1-x^2)(1-y^2))^(-m/2) int R_l(xy + t sqrt(...)) T_m(t) / sqrt(1-t^2) dt``.

    The integral is evaluated by Chebyshev-Gauss quadrature with
    ``l + m + 4`` nodes, exact for the polynomial integrand.
    """
    if not 0 <= m <= l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    if not (-1 < x < 1 and -1 < y < 1):
        raise DomainError(f"need x, y in (-1, 1), got {x}, {y}")
    root = math.sqrt((1 - x * x) * (1 - y * y))
    nodes, weights = chebgauss(l + m + 4)
    integral = float(np.sum(weights * jacobi_R(l, 0, 0, x * y + nodes * root) * chebyshev_T(m, nodes)))
    constant = (
        2.0 ** (2 * m)
        * special.factorial(l - m)
        * special.factorial(m) ** 2
        / (math.pi * special.factorial(l + m))
    )
    return compare(
        IdentityId.CLASSICAL_PRODUCT,
        params_record(l=l, m=m, x=x, y=y),
        jacobi_R(l - m, m, m, x) * jacobi_R(l - m, m, m, y),
        constant * root ** (-m) * integral,
        tolerance if tolerance is not None else rules.tolerances.classical,
        Truncation(integral_terms=l + m + 4),
    )
