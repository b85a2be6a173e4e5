"""
Foundational q-calculus.

This module provides q-shifted factorials (finite and infinite), terminating
basic hypergeometric series, Euler's non-terminating sum and Jackson
q-integrals. Every routine works on the scalar context selected by the
:class:`QBase` it receives: ``mpmath.fp`` (native floats) in double mode or a
private multiprecision ``mpmath`` context in extended mode.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Callable, Iterable, Optional
import logging
import math
import os
import sys

import mpmath
from mpmath.ctx_mp import MPContext
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .enums import Precision
from .exceptions import DomainError, NonConvergence

__all__ = [
    "QBase",
    "SeriesSpec",
    "QIntegralSpec",
    "SeriesResult",
    "qpochhammer_finite",
    "qpochhammer_infinite",
    "qpochhammer_infinite_detailed",
    "qpochhammer_product",
    "reversed_qpochhammer",
    "phi_terminating",
    "phi_terminating_detailed",
    "euler_sum",
    "euler_sum_detailed",
    "jackson_sum",
    "q_integral",
    "q_integral_detailed",
    "fsum",
    "LOG_SPACE_THRESHOLD",
]

log = logging.getLogger("qlegendre")

LOG_SPACE_THRESHOLD = 0.99
"""Bases above this value accumulate infinite products in log space."""

# relative distance below which a parameter is treated as an exact q^{-j}
_LATTICE_SNAP = 1e-8


@lru_cache(maxsize=None)
def _extended_context(dps: int) -> MPContext:
    ctx = MPContext()
    ctx.dps = dps
    return ctx


class QBase(BaseModel):
    """
    Validated base of the q-calculus together with its truncation policy.

    Fields
    ------
    q
        The base, strictly inside (0, 1).
    eps
        Relative tolerance for infinite products and sums. When omitted it
        defaults to 1e-16 in double mode and ``10**-(dps-2)`` in extended mode.
    max_terms
        Cap on the length of every non-terminating sum or product.
    precision
        Scalar arithmetic mode.
    dps
        Decimal digits of the extended context; ignored in double mode.
    """

    q: float = Field(..., gt=0.0, lt=1.0)
    eps: Optional[float] = Field(default=None, gt=0.0)
    max_terms: int = Field(default=10_000, ge=1)
    precision: Precision = Precision.DOUBLE
    dps: int = Field(default=40, ge=16, le=2000)

    model_config = ConfigDict(frozen=True, extra="forbid")

    @classmethod
    def from_env(cls, **kwargs: Any) -> "QBase":
        """Build a base, letting ``QLEG_MAX_TERMS`` override ``max_terms``."""
        raw = os.environ.get("QLEG_MAX_TERMS")
        if raw is not None:
            kwargs["max_terms"] = int(raw)
        return cls(**kwargs)

    @property
    def ctx(self) -> Any:
        """The mpmath context scalar arithmetic runs on."""
        if self.precision is Precision.DOUBLE:
            return mpmath.fp
        return _extended_context(self.dps)

    @property
    def tol(self) -> float:
        """Effective relative tolerance."""
        if self.eps is not None:
            return self.eps
        if self.precision is Precision.DOUBLE:
            return 1e-16
        return 10.0 ** -(self.dps - 2)

    @property
    def unit_roundoff(self) -> float:
        if self.precision is Precision.DOUBLE:
            return sys.float_info.epsilon
        return 10.0 ** -self.dps

    @property
    def qv(self) -> Any:
        """The base as a scalar of the active context."""
        return self.ctx.mpf(self.q)

    def mpf(self, x: Any) -> Any:
        return self.ctx.mpf(x)

    def power(self, k: Any) -> Any:
        """q**k in the active context (k may be negative or fractional)."""
        return self.qv ** k

    def with_q(self, q: float) -> "QBase":
        return self.model_copy(update={"q": q})

    def squared(self) -> "QBase":
        """The same policy in base q**2."""
        return self.with_q(self.q * self.q)

    def extended(self, dps: Optional[int] = None) -> "QBase":
        """The same base switched to extended precision."""
        return self.model_copy(
            update={
                "precision": Precision.EXTENDED,
                "dps": dps if dps is not None else self.dps,
                "eps": None,
            }
        )


class SeriesResult(BaseModel):
    """
    Value of a sum or product together with its truncation record.

    Fields
    ------
    value
        The computed value, a scalar of the active context.
    terms
        Number of terms (or factors) that were used.
    tail_bound
        Bound on the neglected tail; 0 for finite sums.
    scale
        Sum of the absolute values of the terms. Used as the scale for
        relative residuals of alternating sums.
    """

    value: Any
    terms: int = Field(..., ge=0)
    tail_bound: float = Field(default=0.0, ge=0.0)
    scale: Any = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class SeriesSpec(BaseModel):
    """
    A terminating basic hypergeometric series.

    Zero denominator parameters stand for the factor ``(0;q)_k = 1``. The
    series is summed up to ``degree``; at least one numerator parameter must
    equal ``q**-degree``, so every omitted term vanishes.
    """

    numerator_params: tuple[Any, ...]
    denominator_params: tuple[Any, ...] = ()
    base: QBase
    argument: Any
    degree: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_termination(self) -> "SeriesSpec":
        if self.degree == 0:
            return self
        witness = self.base.q**self.degree
        if not any(
            abs(float(a) * witness - 1.0) <= _LATTICE_SNAP
            for a in self.numerator_params
        ):
            raise ValueError(
                f"no numerator parameter equals q^-{self.degree}; "
                "the series would not terminate"
            )
        return self


class QIntegralSpec(BaseModel):
    """
    Jackson q-integral over ``[lower, upper]``.

    The integral is the difference of the integrals from 0 to ``upper`` and
    from 0 to ``lower``. Each half stops once ``run`` consecutive increments
    are below ``tail_bound`` in absolute value.
    """

    lower: float
    upper: float
    base: QBase
    tail_bound: float = Field(default=1e-14, gt=0.0)
    run: int = Field(default=5, ge=1)

    model_config = ConfigDict(frozen=True, extra="forbid")


def fsum(base: QBase, terms: Iterable[Any]) -> Any:
    """Accurate sum in the active context."""
    if base.precision is Precision.DOUBLE:
        return math.fsum(terms)
    return base.ctx.fsum(terms)


def qpochhammer_finite(a: Any, base: QBase, n: int) -> Any:
    """Return ``(a;q)_n``, exactly 1 for ``n == 0``."""
    if n < 0:
        raise DomainError(f"Pochhammer length must be non-negative, got {n}")
    ctx = base.ctx
    a = ctx.mpf(a)
    q = base.qv
    result = ctx.mpf(1)
    power = ctx.mpf(1)
    for _ in range(n):
        result *= 1 - a * power
        power *= q
    return result


def reversed_qpochhammer(p: int, base: QBase, m: int) -> Any:
    """
    Return ``(q^p;q^{-1})_m``, the product of ``1 - q^(p-j)`` for j < m.

    The factor ``1 - q^0`` makes the result exactly zero when ``m > p``.
    """
    ctx = base.ctx
    q = base.qv
    result = ctx.mpf(1)
    for j in range(m):
        result *= 1 - q ** (p - j)
    return result


def qpochhammer_infinite_detailed(a: Any, base: QBase) -> SeriesResult:
    """
    Truncated infinite product ``(a;q)_inf`` with its certified tail.

    Factors are multiplied until ``|a q^k| < eps (1-q)``. The neglected factors
    then change the logarithm of the product by at most
    ``2 |a q^k| / (1-q)``, which is recorded as ``tail_bound``. For bases above
    :data:`LOG_SPACE_THRESHOLD` the logarithms are accumulated instead, and
    the first order of the tail is added in closed form.

    Raises
    ------
    NonConvergence
        If ``max_terms`` factors do not reach the stopping criterion.
    """
    ctx = base.ctx
    a = ctx.mpf(a)
    q = base.qv
    if a == 0:
        return SeriesResult(value=ctx.mpf(1), terms=0, tail_bound=0.0)
    if base.q > LOG_SPACE_THRESHOLD:
        return _log_space_product(a, base)

    threshold = base.tol * (1 - base.q)
    result = ctx.mpf(1)
    u = a
    for k in range(base.max_terms):
        if abs(u) < threshold:
            return SeriesResult(
                value=result, terms=k, tail_bound=float(2 * abs(u) / (1 - q))
            )
        factor = 1 - u
        if factor == 0:
            return SeriesResult(value=ctx.mpf(0), terms=k + 1, tail_bound=0.0)
        result *= factor
        u *= q
    log.debug("(a;q)_inf with a=%s, q=%s hit max_terms", a, base.q)
    raise NonConvergence(
        f"(a;q)_inf did not converge within {base.max_terms} factors "
        f"(a={float(a)!r}, q={base.q!r})"
    )


def _log_space_product(a: Any, base: QBase) -> SeriesResult:
    # log(1-u) = -u + r(u) with |r(u)| <= u^2 for |u| <= 1/2, so the tail from k
    # on equals -a q^k/(1-q) up to |a q^k|^2/(1-q^2).
    ctx = base.ctx
    q = base.qv
    threshold = math.sqrt(base.tol * (1 - base.q * base.q))
    logs: list[Any] = []
    negative = False
    u = a
    for k in range(base.max_terms):
        if abs(u) < min(threshold, 0.5):
            logs.append(-u / (1 - q))
            value = ctx.exp(ctx.fsum(logs))
            return SeriesResult(
                value=-value if negative else value,
                terms=k,
                tail_bound=float(u * u / (1 - q * q)),
            )
        factor = 1 - u
        if factor == 0:
            return SeriesResult(value=ctx.mpf(0), terms=k + 1, tail_bound=0.0)
        if factor < 0:
            negative = not negative
        logs.append(ctx.ln(abs(factor)))
        u *= q
    raise NonConvergence(
        f"log-space (a;q)_inf did not converge within {base.max_terms} factors "
        f"(a={float(a)!r}, q={base.q!r})"
    )


def qpochhammer_infinite(a: Any, base: QBase) -> Any:
    """Return ``(a;q)_inf``, see :func:`qpochhammer_infinite_detailed`."""
    return qpochhammer_infinite_detailed(a, base).value


def qpochhammer_product(
    params: Iterable[Any], base: QBase, n: Optional[int] = None
) -> Any:
    """
    Product of shifted factorials sharing one length.

    ``qpochhammer_product((a, b, c), base)`` is ``(a,b,c;q)_inf`` and with
    ``n`` given it is ``(a,b,c;q)_n``.
    """
    result = base.ctx.mpf(1)
    for a in params:
        if n is None:
            result *= qpochhammer_infinite(a, base)
        else:
            result *= qpochhammer_finite(a, base, n)
    return result


def phi_terminating_detailed(spec: SeriesSpec) -> SeriesResult:
    """
    Sum a terminating series term by term.

    Terms follow the ratio
    ``t_{k+1}/t_k = prod(1 - a q^k) / prod(1 - b q^k) * z / (1 - q^{k+1})``.

    Raises
    ------
    DomainError
        If a denominator factor ``1 - b q^k`` vanishes for some k < degree.
    """
    base = spec.base
    ctx = base.ctx
    q = base.qv
    z = ctx.mpf(spec.argument)
    nums = [ctx.mpf(a) for a in spec.numerator_params]
    dens = [ctx.mpf(b) for b in spec.denominator_params if b != 0]
    guard = 64 * base.unit_roundoff

    term = ctx.mpf(1)
    terms = [term]
    power = ctx.mpf(1)
    for k in range(spec.degree):
        numerator = z
        for a in nums:
            numerator *= 1 - a * power
        denominator = 1 - power * q
        for b in dens:
            factor = 1 - b * power
            if abs(factor) <= guard:
                raise DomainError(
                    f"denominator parameter {float(b)!r} equals q^-{k} "
                    f"inside the summation range (degree {spec.degree})"
                )
            denominator *= factor
        term = term * numerator / denominator
        terms.append(term)
        power *= q
    return SeriesResult(
        value=fsum(base, terms),
        terms=len(terms),
        scale=fsum(base, (abs(t) for t in terms)),
    )


def phi_terminating(spec: SeriesSpec) -> Any:
    """Return the value of a terminating basic hypergeometric series."""
    return phi_terminating_detailed(spec).value


def euler_sum_detailed(t: Any, base: QBase) -> SeriesResult:
    """
    Sum ``sum_n q^{n(n-1)/2} t^n / (q;q)_n`` which equals ``(-t;q)_inf``.

    Summation stops when the term ratio is below 1/2 and the current term is
    below ``eps`` relative to the partial sum; the remaining tail is then at
    most the current term.
    """
    ctx = base.ctx
    q = base.qv
    t = ctx.mpf(t)
    term = ctx.mpf(1)
    terms = [term]
    power = ctx.mpf(1)  # q^n
    running = term  # stopping test only; the value is summed accurately once
    for n in range(base.max_terms):
        ratio = power * t / (1 - power * q)
        term *= ratio
        terms.append(term)
        running += term
        power *= q
        if abs(ratio) < 0.5 and abs(term) <= base.tol * abs(running):
            return SeriesResult(
                value=fsum(base, terms),
                terms=len(terms),
                tail_bound=float(abs(term)),
                scale=fsum(base, (abs(x) for x in terms)),
            )
    raise NonConvergence(
        f"Euler sum did not converge within {base.max_terms} terms "
        f"(t={float(t)!r}, q={base.q!r})"
    )


def euler_sum(t: Any, base: QBase) -> Any:
    return euler_sum_detailed(t, base).value


def jackson_sum(
    f: Callable[[Any], Any], a: Any, base: QBase, tail_bound: float, run: int = 5
) -> SeriesResult:
    """
    Jackson integral of ``f`` from 0 to ``a``.

    Returns ``a(1-q) sum_k f(a q^k) q^k`` truncated after ``run`` consecutive
    increments below ``tail_bound``.
    """
    ctx = base.ctx
    a = ctx.mpf(a)
    if a == 0:
        return SeriesResult(value=ctx.mpf(0), terms=0, scale=ctx.mpf(0))
    q = base.qv
    weight = a * (1 - q)
    node = a
    power = ctx.mpf(1)
    increments: list[Any] = []
    small = 0
    for _ in range(base.max_terms):
        increment = weight * f(node) * power
        increments.append(increment)
        small = small + 1 if abs(increment) < tail_bound else 0
        if small >= run:
            return SeriesResult(
                value=fsum(base, increments),
                terms=len(increments),
                tail_bound=tail_bound,
                scale=fsum(base, (abs(x) for x in increments)),
            )
        node *= q
        power *= q
    raise NonConvergence(
        f"q-integral from 0 to {float(a)!r} did not settle within "
        f"{base.max_terms} nodes (q={base.q!r})"
    )


def q_integral_detailed(f: Callable[[Any], Any], spec: QIntegralSpec) -> SeriesResult:
    """Jackson q-integral over ``[spec.lower, spec.upper]`` with its term count."""
    upper = jackson_sum(f, spec.upper, spec.base, spec.tail_bound, spec.run)
    lower = jackson_sum(f, spec.lower, spec.base, spec.tail_bound, spec.run)
    return SeriesResult(
        value=upper.value - lower.value,
        terms=upper.terms + lower.terms,
        tail_bound=upper.tail_bound + lower.tail_bound,
        scale=upper.scale + lower.scale,
    )


def q_integral(f: Callable[[Any], Any], spec: QIntegralSpec) -> Any:
    """Return the Jackson q-integral of ``f`` over ``[spec.lower, spec.upper]``."""
    return q_integral_detailed(f, spec).value
