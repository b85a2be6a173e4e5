"""
Evaluators for the q-orthogonal polynomial families.

Each family is evaluated from its basic hypergeometric representation. The
monic big q-Jacobi polynomials with a=b=0 additionally have two series forms
and a three-term recurrence so that the paths can be compared against each
other.
"""

from __future__ import annotations

from typing import Any, Optional
import logging
import math

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.chebyshev import chebpts1
from pydantic import BaseModel, ConfigDict, Field

from .enums import Family, MonicPath
from .exceptions import DegreeOutOfRange, DomainError, IllConditioned
from .qcore import (
    QBase,
    SeriesResult,
    SeriesSpec,
    phi_terminating,
    phi_terminating_detailed,
    qpochhammer_finite,
    qpochhammer_product,
)

__all__ = [
    "BigQJacobiParams",
    "DualQKrawtchoukParams",
    "QCharlierParams",
    "big_q_jacobi",
    "big_q_legendre",
    "monic_big_q_jacobi00",
    "monic_big_q_jacobi00_detailed",
    "little_q_jacobi",
    "dual_q_krawtchouk",
    "dual_q_krawtchouk_point",
    "q_charlier",
    "al_salam_carlitz",
    "orthonormal_recurrence_coefficients",
    "orthonormal_big_q_jacobi00",
    "orthonormal_big_q_jacobi00_recurrence",
    "orthogonality_norm_big00",
    "leading_coefficient",
    "eigvec_leading_coefficient",
    "norm_series_leading_coefficient",
    "lattice_index",
]

log = logging.getLogger("qlegendre")

# |y q^j - 1| below this snaps y to the exact lattice value q^-j
LATTICE_TOLERANCE = 1e-10


class BigQJacobiParams(BaseModel):
    """
    Parameters of the big q-Jacobi polynomials ``P_n(x;a,b,c,d;q)``.

    Bare evaluation accepts any real parameters (``c`` non-zero). Identity
    verifiers call :meth:`require_positive` first.
    """

    a: float = 1.0
    b: float = 1.0
    c: float
    d: float
    base: QBase

    model_config = ConfigDict(frozen=True, extra="forbid")

    def require_positive(self) -> "BigQJacobiParams":
        if self.c <= 0 or self.d <= 0:
            raise DomainError(f"c and d must be positive, got c={self.c}, d={self.d}")
        return self


class DualQKrawtchoukParams(BaseModel):
    """
    Parameters of the dual q-Krawtchouk polynomials ``R_n(lambda(x);s,N;q)``.

    Fields
    ------
    s
        Positive lattice parameter; ``inf`` is allowed and drops the second
        lattice term.
    N
        Size of the family; degrees and lattice points run over ``0..N``.
    base
        The q-base.
    """

    s: float = Field(..., gt=0.0)
    N: int = Field(..., ge=0)
    base: QBase

    model_config = ConfigDict(frozen=True, extra="forbid")

    def lattice(self, x: int) -> Any:
        """The lattice point ``q^-x - s^-1 q^(x-N)``."""
        base = self.base
        return base.power(-x) - self._inverse_s() * base.power(x - self.N)

    def _inverse_s(self) -> Any:
        ctx = self.base.ctx
        if math.isinf(self.s):
            return ctx.mpf(0)
        return 1 / ctx.mpf(self.s)


class QCharlierParams(BaseModel):
    a: float = Field(..., gt=0.0)
    base: QBase

    model_config = ConfigDict(frozen=True, extra="forbid")


def lattice_index(y: Any, base: QBase, tolerance: float = LATTICE_TOLERANCE) -> Optional[int]:
    """
    Return j when ``y`` equals ``q^-j`` for an integer ``j >= 0`` up to
    ``tolerance`` (relative), otherwise None.
    """
    y = float(y)
    if y <= 0:
        return None
    j = round(math.log(y) / -math.log(base.q))
    if j < 0:
        return None
    if abs(y * base.q**j - 1.0) <= tolerance:
        return j
    return None


def big_q_jacobi(n: int, x: Any, params: BigQJacobiParams) -> Any:
    """
    Evaluate ``P_n(x;a,b,c,d;q)``, a terminating 3phi2 with unit argument.

    ``a = b = 1`` gives the big q-Legendre polynomials.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if params.c == 0:
        raise DomainError("big q-Jacobi polynomials need c != 0")
    base = params.base
    ctx = base.ctx
    q = base.qv
    a, b, c, d = (ctx.mpf(v) for v in (params.a, params.b, params.c, params.d))
    spec = SeriesSpec(
        numerator_params=(q**-n, a * b * q ** (n + 1), q * a * ctx.mpf(x) / c),
        denominator_params=(q * a, -q * a * d / c),
        base=base,
        argument=q,
        degree=n,
    )
    return phi_terminating(spec)


def big_q_legendre(n: int, x: Any, c: float, d: float, base: QBase) -> Any:
    return big_q_jacobi(n, x, BigQJacobiParams(a=1.0, b=1.0, c=c, d=d, base=base))


def _monic_recurrence(n: int, x: Any, c: Any, d: Any, base: QBase) -> Any:
    ctx = base.ctx
    q = base.qv
    previous, current = ctx.mpf(0), ctx.mpf(1)
    power = ctx.mpf(1)  # q^k
    for k in range(n):
        following = (x - power * (c - d)) * current
        if k > 0:
            following -= power / q * c * d * (1 - power) * previous
        previous, current = current, following
        power *= q
    return current


def _monic_series(
    n: int, x: Any, c: Any, d: Any, base: QBase, path: MonicPath
) -> SeriesResult:
    ctx = base.ctx
    q = base.qv
    if x == 0:
        raise DomainError(
            f"{path.value} is undefined at x=0; use the recurrence path"
        )
    if path is MonicPath.SERIES_C:
        if d == 0:
            raise DomainError("series_c needs d != 0")
        parameter, argument = c / x, -q * x / d
        prefactor = d**n
    else:
        if c == 0:
            raise DomainError("series_d needs c != 0")
        parameter, argument = -d / x, q * x / c
        prefactor = (-c) ** n
    prefactor *= q ** (n * (n - 1) // 2)

    degree = n
    j = lattice_index(parameter, base)
    if j is not None and j < n:
        parameter = q**-j
        degree = j
    spec = SeriesSpec(
        numerator_params=(q**-n, parameter),
        denominator_params=(0,),
        base=base,
        argument=argument,
        degree=degree,
    )
    result = phi_terminating_detailed(spec)
    return SeriesResult(
        value=prefactor * result.value,
        terms=result.terms,
        scale=abs(prefactor) * result.scale,
    )


def monic_big_q_jacobi00_detailed(
    n: int,
    x: Any,
    c: float,
    d: float,
    base: QBase,
    path: MonicPath = MonicPath.AUTO,
) -> SeriesResult:
    """
    Evaluate ``P^_n(x;0,0,c,d;q)`` and report the magnitude of its summands.

    For the recurrence paths the scale is the absolute value of the result.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    ctx = base.ctx
    x, c, d = ctx.mpf(x), ctx.mpf(c), ctx.mpf(d)
    if path in (MonicPath.RECURRENCE, MonicPath.AUTO):
        value = _monic_recurrence(n, x, c, d, base)
        return SeriesResult(value=value, terms=n + 1, scale=abs(value))
    return _monic_series(n, x, c, d, base, path)


def monic_big_q_jacobi00(
    n: int,
    x: Any,
    c: float,
    d: float,
    base: QBase,
    path: MonicPath = MonicPath.AUTO,
) -> Any:
    """
    Evaluate the monic big q-Jacobi polynomial ``P^_n(x;0,0,c,d;q)``.

    Parameters
    ----------
    n : int
        Degree.
    x : real
        Evaluation point.
    c, d : float
        Endpoints of the orthogonality interval ``[-d, c]``.
    base : QBase
        The q-base and precision.
    path : MonicPath
        ``SERIES_C`` and ``SERIES_D`` use the two 2phi1 forms; both raise
        :class:`DomainError` at ``x = 0``. ``RECURRENCE`` and ``AUTO`` iterate
        the three-term recurrence.

    Notes
    -----
    When ``c/x`` (or ``-d/x``) is a lattice point ``q^-j`` with ``j < n`` the
    series is summed exactly to degree ``j``.
    """
    return monic_big_q_jacobi00_detailed(n, x, c, d, base, path).value


def little_q_jacobi(n: int, x: Any, a: Any, b: Any, base: QBase) -> Any:
    """Evaluate ``p_n(x;a,b;q)``, equal to 1 at ``x = 0``."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    ctx = base.ctx
    q = base.qv
    a, b = ctx.mpf(a), ctx.mpf(b)
    spec = SeriesSpec(
        numerator_params=(q**-n, q ** (n + 1) * a * b),
        denominator_params=(q * a,),
        base=base,
        argument=q * ctx.mpf(x),
        degree=n,
    )
    return phi_terminating(spec)


def dual_q_krawtchouk(n: int, x: int, params: DualQKrawtchoukParams) -> Any:
    """
    Evaluate ``R_n(lambda(x);s,N;q)`` at the lattice point with index ``x``.

    Raises
    ------
    DegreeOutOfRange
        If ``n > N``.
    DomainError
        If ``x`` is not in ``0..N``.
    """
    return dual_q_krawtchouk_point(
        n, x, params._inverse_s(), params.N, params.base
    )


def dual_q_krawtchouk_point(
    n: int, x: int, inverse_s: Any, N: int, base: QBase
) -> Any:
    """
    Same as :func:`dual_q_krawtchouk` with ``1/s`` given as a scalar of the
    active context, so that ratios such as ``d/c`` keep their full precision.
    """
    if not 0 <= n <= N:
        raise DegreeOutOfRange(f"degree {n} outside 0..{N}")
    if not 0 <= x <= N:
        raise DomainError(f"lattice index {x} outside 0..{N}")
    q = base.qv
    spec = SeriesSpec(
        numerator_params=(q**-n, q**-x, -base.mpf(inverse_s) * q ** (x - N)),
        denominator_params=(q**-N, 0),
        base=base,
        argument=q,
        degree=min(n, x),
    )
    return phi_terminating(spec)


def q_charlier(n: int, y: Any, a: float, base: QBase) -> Any:
    """
    Evaluate ``c_n(y;a;q) = 2phi1(q^-n, y; 0; q, -q^(n+1)/a)``.

    If ``y`` is a lattice point ``q^-x`` with ``x < n`` the series is summed
    exactly to degree ``x``.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if a <= 0:
        raise DomainError(f"q-Charlier parameter must be positive, got {a}")
    ctx = base.ctx
    q = base.qv
    y = ctx.mpf(y)
    degree = n
    j = lattice_index(y, base)
    if j is not None and j < n:
        y = q**-j
        degree = j
    spec = SeriesSpec(
        numerator_params=(q**-n, y),
        denominator_params=(0,),
        base=base,
        argument=-(q ** (n + 1)) / ctx.mpf(a),
        degree=degree,
    )
    return phi_terminating(spec)


def al_salam_carlitz(n: int, x: Any, a: float, base: QBase) -> Any:
    """
    Al-Salam--Carlitz polynomial ``U_n^(a)(x;q)`` from its recurrence

    ``U_{k+1} = (x - (1+a) q^k) U_k + a q^(k-1) (1-q^k) U_{k-1}``.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    ctx = base.ctx
    q = base.qv
    x, a = ctx.mpf(x), ctx.mpf(a)
    previous, current = ctx.mpf(0), ctx.mpf(1)
    power = ctx.mpf(1)
    for k in range(n):
        following = (x - (1 + a) * power) * current
        if k > 0:
            following += a * power / q * (1 - power) * previous
        previous, current = current, following
        power *= q
    return current


def orthogonality_norm_big00(n: int, c: float, d: float, base: QBase) -> Any:
    """
    Squared norm of ``P^_n(.;0,0,c,d;q)`` for the weight ``(qx/c,-qx/d;q)_inf``:
    ``q^(n(n-1)/2) (cd)^n (q;q)_n (1-q) c (q,-d/c,-qc/d;q)_inf``.
    """
    ctx = base.ctx
    q = base.qv
    c, d = ctx.mpf(c), ctx.mpf(d)
    return (
        q ** (n * (n - 1) // 2)
        * (c * d) ** n
        * qpochhammer_finite(q, base, n)
        * (1 - q)
        * c
        * qpochhammer_product((q, -d / c, -q * c / d), base)
    )


def orthonormal_recurrence_coefficients(
    k: int, c: float, d: float, base: QBase
) -> tuple[Any, Any]:
    """
    Return ``(a_k, b_k)`` of the orthonormal recurrence
    ``x p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1}``.
    """
    ctx = base.ctx
    q = base.qv
    c, d = ctx.mpf(c), ctx.mpf(d)
    a_k = q ** (ctx.mpf(k - 1) / 2) * ctx.sqrt(c * d * (1 - q**k)) if k > 0 else ctx.mpf(0)
    b_k = q**k * (c - d)
    return a_k, b_k


def orthonormal_big_q_jacobi00(k: int, x: Any, c: float, d: float, base: QBase) -> Any:
    """Orthonormal polynomial ``P^_k / sqrt(h_k)`` for the weight of the big q-Jacobi case a=b=0."""
    ctx = base.ctx
    return monic_big_q_jacobi00(k, x, c, d, base) / ctx.sqrt(
        orthogonality_norm_big00(k, c, d, base)
    )


def orthonormal_big_q_jacobi00_recurrence(
    k: int, x: Any, c: float, d: float, base: QBase
) -> Any:
    ctx = base.ctx
    x = ctx.mpf(x)
    previous = ctx.mpf(0)
    current = 1 / ctx.sqrt(orthogonality_norm_big00(0, c, d, base))
    for j in range(k):
        a_j, b_j = orthonormal_recurrence_coefficients(j, c, d, base)
        a_next, _ = orthonormal_recurrence_coefficients(j + 1, c, d, base)
        previous, current = current, ((x - b_j) * current - a_j * previous) / a_next
    return current


def eigvec_leading_coefficient(n: int, sigma: float, base: QBase) -> Any:
    """
    Modulus of the leading coefficient of the n-th eigenvector coefficient:
    ``q^(-sigma n) q^(-n(n-1)/2) (q^2;q^2)_n^(-1/2)``.
    """
    ctx = base.ctx
    q = base.qv
    return (
        q ** (-ctx.mpf(sigma) * n)
        * q ** (-(n * (n - 1) // 2))
        / ctx.sqrt(qpochhammer_finite(q * q, base.squared(), n))
    )


def norm_series_leading_coefficient(x: int, sigma: float, base: QBase) -> Any:
    """``(-1)^x q^(2x(x+sigma))``, the coefficient of ``q^(-2nx)`` in the norm series."""
    ctx = base.ctx
    return (-1) ** x * base.qv ** (2 * x * (x + ctx.mpf(sigma)))


def _family_evaluator(family: Family, n: int, params: BigQJacobiParams):
    if family is Family.MONIC_BIG_Q_JACOBI00:
        return lambda t: float(monic_big_q_jacobi00(n, t, params.c, params.d, params.base))
    if family is Family.BIG_Q_JACOBI:
        return lambda t: float(big_q_jacobi(n, t, params))
    if family is Family.LITTLE_Q_JACOBI:
        return lambda t: float(little_q_jacobi(n, t, params.a, params.b, params.base))
    raise DomainError(f"no leading coefficient for family {family.value}")


def leading_coefficient(
    family: Family, n: int, params: BigQJacobiParams, *, rtol: float = 1e-9
) -> float:
    """
    Coefficient of ``x^n`` obtained from an interpolating fit.

    The fit uses ``n+1`` Chebyshev points on ``[-d-0.5, c+0.5]`` (``[-0.5, 1.5]``
    for the little q-Jacobi family) and is checked against 20 further points.

    Raises
    ------
    IllConditioned
        If the fit does not reproduce the check points to ``rtol``.
    """
    if family is Family.LITTLE_Q_JACOBI:
        lower, upper = -0.5, 1.5
    else:
        lower, upper = -params.d - 0.5, params.c + 0.5
    evaluate = _family_evaluator(family, n, params)

    half, mid = (upper - lower) / 2, (upper + lower) / 2
    nodes = mid + half * chebpts1(n + 1)
    values = np.array([evaluate(t) for t in nodes])
    fit = Polynomial.fit(nodes, values, deg=n)

    checks = np.linspace(lower, upper, 20) + half / 97
    expected = np.array([evaluate(t) for t in checks])
    scale = max(1.0, float(np.max(np.abs(expected))))
    residual = float(np.max(np.abs(fit(checks) - expected)))
    if residual > rtol * scale:
        raise IllConditioned(
            f"degree-{n} fit of {family.value} misses check points by {residual:.3e}"
        )
    coefficient = float(fit.convert().coef[-1]) if n > 0 else float(values[0])
    if family is Family.MONIC_BIG_Q_JACOBI00:
        if abs(coefficient - 1.0) > math.sqrt(rtol):
            raise IllConditioned(
                f"monic fit of degree {n} has leading coefficient {coefficient!r}"
            )
        return 1.0
    return coefficient
