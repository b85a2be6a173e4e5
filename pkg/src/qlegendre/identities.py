"""
Scalar identities: orthogonality of the monic big q-Jacobi and q-Charlier
polynomials, eigenvector norms, the big q-Legendre addition formula with its
little q-Legendre special case, and the q-integral product formula.

Every verifier returns a :class:`~qlegendre.report.VerificationReport`.
"""

from __future__ import annotations

from typing import Any, Callable, Optional
import logging

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.chebyshev import chebpts1
from pydantic import BaseModel, ConfigDict, Field

from .enums import CharlierKind, IdentityId, MonicPath, NormPath, Precision
from .exceptions import DomainError, NonConvergence
from .families import (
    BigQJacobiParams,
    DualQKrawtchoukParams,
    al_salam_carlitz,
    big_q_jacobi,
    dual_q_krawtchouk,
    dual_q_krawtchouk_point,
    little_q_jacobi,
    monic_big_q_jacobi00,
    monic_big_q_jacobi00_detailed,
    orthogonality_norm_big00,
    q_charlier,
)
from .qcore import (
    QBase,
    QIntegralSpec,
    SeriesResult,
    SeriesSpec,
    euler_sum_detailed,
    fsum,
    phi_terminating,
    q_integral_detailed,
    qpochhammer_finite,
    qpochhammer_infinite,
    qpochhammer_product,
    reversed_qpochhammer,
)
from .report import Truncation, VerificationReport, compare, params_record
from .rules import DEFAULT_RULES, VerificationRules

__all__ = [
    "AdditionParams",
    "orthogonality_big00",
    "q_charlier_orthogonality",
    "h_norm",
    "h_norm_detailed",
    "verify_h_norm",
    "addition_lhs",
    "addition_rhs",
    "addition_rhs_terms",
    "verify_addition",
    "addition_polynomiality",
    "special_case_little",
    "product_formula",
    "product_formula_variant",
    "product_formula_reports",
    "positive_kernel",
    "closed_form_special_values",
    "euler_identity",
    "q_binomial_identity",
    "q_integral_monomial",
    "monic_path_agreement",
    "scaling_identities",
    "al_salam_carlitz_dilation",
    "weight_big00",
    "lattice_sum",
]

log = logging.getLogger("qlegendre")


class AdditionParams(BaseModel):
    """
    Parameters of the big q-Legendre addition formula.

    Fields
    ------
    l
        Degree of the big q-Legendre polynomial.
    p
        Degree of the monic big q-Jacobi factor.
    x
        Real evaluation point.
    c, d
        Positive endpoints of ``[-d, c]``.
    base
        The q-base.
    """

    l: int = Field(..., ge=0)
    p: int = Field(..., ge=0)
    x: float
    c: float = Field(..., gt=0.0)
    d: float = Field(..., gt=0.0)
    base: QBase

    model_config = ConfigDict(frozen=True, extra="forbid")

    def record(self) -> dict[str, Any]:
        return params_record(
            l=self.l, p=self.p, x=self.x, c=self.c, d=self.d, q=self.base.q
        )


# --------------------------------------------------------------------------- #
# shared helpers
# --------------------------------------------------------------------------- #


def _upgrade(base: QBase, needed: bool, rules: VerificationRules) -> tuple[QBase, tuple[str, ...]]:
    if needed and base.precision is Precision.DOUBLE:
        return (
            base.extended(rules.truncation.extended_dps),
            ("precision upgraded to extended",),
        )
    return base, ()


def weight_big00(x: Any, c: Any, d: Any, base: QBase) -> Any:
    """The weight ``(qx/c, -qx/d; q)_inf`` of the monic big q-Jacobi polynomials."""
    q = base.qv
    return qpochhammer_product((q * x / c, -q * x / d), base)


def lattice_sum(
    term: Callable[[int], Any], base: QBase, *, start: int = 0, run: int = 3
) -> SeriesResult:
    """
    Sum ``term(x)`` over ``x = 0, 1, ...`` for superexponentially decaying terms.

    Summation stops once ``x >= start`` and ``run`` consecutive terms are
    below ``eps`` relative to the sum of absolute values while also
    decreasing by at least half. The tail is then bounded by twice the last
    term.

    Raises
    ------
    NonConvergence
        If ``max_terms`` terms do not reach the criterion.
    """
    terms: list[Any] = []
    absolute = 0
    streak = 0
    previous = None
    for x in range(base.max_terms):
        t = term(x)
        terms.append(t)
        absolute += abs(t)
        small = abs(t) <= base.tol * absolute
        decreasing = previous is not None and abs(t) <= 0.5 * abs(previous)
        streak = streak + 1 if (small and decreasing and x >= start) else 0
        previous = t
        if streak >= run:
            return SeriesResult(
                value=fsum(base, terms),
                terms=len(terms),
                tail_bound=float(2 * abs(t)),
                scale=absolute,
            )
    raise NonConvergence(
        f"lattice sum did not settle within {base.max_terms} terms (q={base.q!r})"
    )


def _integral_spec(
    c: Any, d: Any, base: QBase, expected: Any, rules: VerificationRules
) -> QIntegralSpec:
    tail = rules.truncation.integral_tail * max(float(abs(expected)), 1e-300)
    if base.precision is Precision.EXTENDED:
        tail *= base.tol / 1e-16
    return QIntegralSpec(
        lower=-float(d),
        upper=float(c),
        base=base,
        tail_bound=max(tail, 1e-300),
        run=rules.truncation.integral_run,
    )


# --------------------------------------------------------------------------- #
# orthogonality relations
# --------------------------------------------------------------------------- #


def orthogonality_big00(
    n: int,
    m: int,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    Check the orthogonality of ``P^_n`` and ``P^_m`` on ``[-d, c]``.

    The left side is the q-integral of ``P^_n P^_m`` against the weight; the
    right side is ``delta_{n,m} h_n``. Off-diagonal entries are compared
    relative to ``sqrt(h_n h_m)``.
    """
    BigQJacobiParams(c=c, d=d, base=base).require_positive()
    ctx = base.ctx
    c_, d_ = ctx.mpf(c), ctx.mpf(d)
    h_n = orthogonality_norm_big00(n, c, d, base)
    h_m = orthogonality_norm_big00(m, c, d, base)
    scale = ctx.sqrt(h_n * h_m)

    def integrand(t: Any) -> Any:
        return (
            monic_big_q_jacobi00(n, t, c, d, base)
            * monic_big_q_jacobi00(m, t, c, d, base)
            * weight_big00(t, c_, d_, base)
        )

    integral = q_integral_detailed(integrand, _integral_spec(c, d, base, scale, rules))
    rhs = h_n if n == m else ctx.mpf(0)
    if tolerance is None:
        tolerances = rules.tolerances
        tolerance = (
            tolerances.orthogonality_diagonal
            if n == m
            else tolerances.orthogonality_off_diagonal
        )
    return compare(
        IdentityId.ORTHOGONALITY,
        params_record(n=n, m=m, c=c, d=d, q=base.q),
        integral.value,
        rhs,
        tolerance,
        Truncation.for_base(
            base, integral_terms=integral.terms, tail_bound=integral.tail_bound
        ),
        scale=scale,
    )


def _charlier_norm(n: int, a: Any, base: QBase) -> Any:
    q = base.qv
    return (
        q**-n
        * qpochhammer_finite(q, base, n)
        * qpochhammer_finite(-q / a, base, n)
        * qpochhammer_infinite(-a, base)
    )


def q_charlier_orthogonality(
    n: int,
    m: int,
    a: float,
    base: QBase,
    kind: CharlierKind = CharlierKind.SAME,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    Check the discrete orthogonality of the q-Charlier polynomials on ``q^-x``.

    ``kind=SAME`` sums ``a^x q^(x(x-1)/2)/(q;q)_x c_n c_m(q^-x;a)`` against
    ``delta_{n,m} q^-n (q;q)_n (-q/a;q)_n (-a;q)_inf``. ``kind=CROSS`` sums
    ``(-1)^x q^(x(x-1)/2)/(q;q)_x c_n(q^-x;a) c_m(q^-x;1/a)``, which vanishes.
    Degrees above the extended-precision threshold are evaluated in extended
    precision.
    """
    if a <= 0:
        raise DomainError(f"q-Charlier parameter must be positive, got {a}")
    base, notes = _upgrade(
        base, max(n, m) > rules.truncation.extended_above_l, rules
    )
    ctx = base.ctx
    q = base.qv
    a_ = ctx.mpf(a)
    other = a_ if kind is CharlierKind.SAME else 1 / a_
    ratio = a_ if kind is CharlierKind.SAME else ctx.mpf(-1)

    weights: dict[int, Any] = {0: ctx.mpf(1)}

    def weight(x: int) -> Any:
        if x not in weights:
            weights[x] = weight(x - 1) * ratio * q ** (x - 1) / (1 - q**x)
        return weights[x]

    def term(x: int) -> Any:
        y = q**-x
        return weight(x) * q_charlier(n, y, a_, base) * q_charlier(m, y, other, base)

    total = lattice_sum(term, base, start=max(n, m) + 1)
    if kind is CharlierKind.SAME:
        identity_id = IdentityId.CHARLIER_SAME
        rhs = _charlier_norm(n, a_, base) if n == m else ctx.mpf(0)
        scale = ctx.sqrt(_charlier_norm(n, a_, base) * _charlier_norm(m, a_, base))
    else:
        identity_id = IdentityId.CHARLIER_CROSS
        rhs = ctx.mpf(0)
        scale = total.scale
    return compare(
        identity_id,
        params_record(n=n, m=m, a=a, q=base.q, kind=kind),
        total.value,
        rhs,
        tolerance if tolerance is not None else rules.tolerances.charlier,
        Truncation.for_base(
            base,
            series_terms=total.terms,
            tail_bound=total.tail_bound,
            notes=notes,
        ),
        scale=scale,
    )


# --------------------------------------------------------------------------- #
# eigenvector norms
# --------------------------------------------------------------------------- #


def h_norm_detailed(
    x: int, sigma: float, base: QBase, path: NormPath = NormPath.CLOSED
) -> SeriesResult:
    """
    Squared norm ``h_x`` of the eigenvector for ``q^(2 sigma + 2x)``.

    All quantities live in base ``Q = q^2``. The closed form is
    ``Q^-x (Q;Q)_x (-Q^(sigma+1);Q)_x (-Q^-sigma;Q)_inf``; the direct path
    sums ``(-1)^x Q^(x(x+sigma)) sum_n Q^(n(n-1)/2) Q^(-sigma n)/(Q;Q)_n
    phi_n Q^(-n x)`` with ``phi_n = 2phi1(Q^-x, Q^-n; 0; Q, -Q^(1+sigma+x))``.
    For the eigenvalues ``-q^(2x)`` pass ``-sigma``.
    """
    if x < 0:
        raise DomainError(f"eigenvector index must be non-negative, got {x}")
    big = base.squared()
    ctx = big.ctx
    Q = big.qv
    s = ctx.mpf(sigma)
    if path is NormPath.CLOSED:
        tail = qpochhammer_infinite(-(Q**-s), big)
        value = (
            Q**-x
            * qpochhammer_finite(Q, big, x)
            * qpochhammer_finite(-(Q ** (s + 1)), big, x)
            * tail
        )
        return SeriesResult(value=value, terms=x + 1, scale=abs(value))

    prefactor = (-1) ** x * Q ** (x * (x + s))
    argument = -(Q ** (1 + s + x))
    weights: dict[int, Any] = {0: ctx.mpf(1)}

    def weight(n: int) -> Any:
        # Q^(n(n-1)/2) Q^(-sigma n) / (Q;Q)_n
        if n not in weights:
            weights[n] = weight(n - 1) * Q ** (n - 1) * Q**-s / (1 - Q**n)
        return weights[n]

    def term(n: int) -> Any:
        degree = min(x, n)
        spec = SeriesSpec(
            numerator_params=(Q**-x, Q**-n),
            denominator_params=(0,),
            base=big,
            argument=argument,
            degree=degree,
        )
        return weight(n) * phi_terminating(spec) * Q ** (-n * x)

    total = lattice_sum(term, big, start=x + 1)
    return SeriesResult(
        value=prefactor * total.value,
        terms=total.terms,
        tail_bound=float(abs(prefactor)) * total.tail_bound,
        scale=abs(prefactor) * total.scale,
    )


def h_norm(x: int, sigma: float, base: QBase, path: NormPath = NormPath.CLOSED) -> Any:
    """Return the squared eigenvector norm ``h_x``, see :func:`h_norm_detailed`."""
    return h_norm_detailed(x, sigma, base, path).value


def verify_h_norm(
    x: int,
    sigma: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """Compare the direct and the closed-form eigenvector norms."""
    base, notes = _upgrade(base, x > 3, rules)
    direct = h_norm_detailed(x, sigma, base, NormPath.DIRECT)
    closed = h_norm_detailed(x, sigma, base, NormPath.CLOSED)
    return compare(
        IdentityId.H_NORM,
        params_record(x=x, sigma=sigma, q=base.q),
        direct.value,
        closed.value,
        tolerance if tolerance is not None else rules.tolerances.h_norm,
        Truncation.for_base(
            base, series_terms=direct.terms, tail_bound=direct.tail_bound, notes=notes
        ),
        scale=direct.scale,
    )


# --------------------------------------------------------------------------- #
# addition formula
# --------------------------------------------------------------------------- #


def _dual_krawtchouk_at_l(k: int, l: int, c: Any, d: Any, base: QBase) -> Any:
    """``R_k(q^-l - (d/c) q^-l; c/d, 2l; q)``."""
    return dual_q_krawtchouk_point(k, l, base.mpf(d) / base.mpf(c), 2 * l, base)


def _addition_prefactor(l: int, c: Any, d: Any, base: QBase) -> Any:
    """``(-1)^l q^(-l(l+1)/2) (-qd/c;q)_l / (q^(l+1);q)_l``."""
    q = base.qv
    return (
        (-1) ** l
        * q ** -(l * (l + 1) // 2)
        * qpochhammer_finite(-q * d / c, base, l)
        / qpochhammer_finite(q ** (l + 1), base, l)
    )


def addition_lhs(params: AdditionParams) -> Any:
    """Left side of the addition formula: the prefactor times ``P_l P^_p``."""
    base = params.base
    ctx = base.ctx
    c, d, x = ctx.mpf(params.c), ctx.mpf(params.d), ctx.mpf(params.x)
    legendre = big_q_jacobi(
        params.l, x, BigQJacobiParams(a=1.0, b=1.0, c=params.c, d=params.d, base=base)
    )
    return (
        _addition_prefactor(params.l, c, d, base)
        * legendre
        * monic_big_q_jacobi00(params.p, x, params.c, params.d, base)
    )


def addition_rhs_terms(params: AdditionParams) -> list[Any]:
    """
    Individual summands of the right side of the addition formula.

    The list holds the ``m = 0`` term followed by the descending and the
    ascending term for each ``m = 1..l``. Descending terms with ``m > p``
    are exactly zero.
    """
    base = params.base
    ctx = base.ctx
    q = base.qv
    l, p = params.l, params.p
    c, d, x = ctx.mpf(params.c), ctx.mpf(params.d), ctx.mpf(params.x)
    q_q = lambda k: qpochhammer_finite(q, base, k)  # noqa: E731
    monic = lambda k: monic_big_q_jacobi00(k, x, params.c, params.d, base)  # noqa: E731

    terms = [
        _dual_krawtchouk_at_l(l, l, c, d, base)
        * little_q_jacobi(l, q**p, 1, 1, base)
        * monic(p)
        / q_q(l)
    ]
    for m in range(1, l + 1):
        krawtchouk = _dual_krawtchouk_at_l(l - m, l, c, d, base)
        common = (-1) ** m * krawtchouk / (q_q(l - m) * q_q(m))

        falling = reversed_qpochhammer(p, base, m)
        if falling == 0:
            terms.append(ctx.mpf(0))
        else:
            terms.append(
                common
                * d**m
                * q ** (m * (p - l))
                * falling
                * little_q_jacobi(l - m, q ** (p - m), q**m, q**m, base)
                * monic(p - m)
            )

        terms.append(
            common
            * q ** (m * (m + 1) // 2 - l * m)
            / c**m
            * little_q_jacobi(l - m, q**p, q**m, q**m, base)
            * monic(p + m)
        )
    return terms


def addition_rhs(params: AdditionParams) -> Any:
    """Right side of the addition formula."""
    return fsum(params.base, addition_rhs_terms(params))


def verify_addition(
    params: AdditionParams,
    tol: Optional[float] = None,
    *,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    Evaluate both sides of the addition formula and compare them.

    Degrees ``l`` above ``rules.truncation.extended_above_l`` are evaluated in
    extended precision. The relative residual is taken against the larger of
    the two sides and the sum of the absolute values of the right-side terms.
    """
    base, notes = _upgrade(
        params.base, params.l > rules.truncation.extended_above_l, rules
    )
    if base is not params.base:
        params = params.model_copy(update={"base": base})
    lhs = addition_lhs(params)
    terms = addition_rhs_terms(params)
    rhs = fsum(base, terms)
    if tol is None:
        tol = (
            rules.tolerances.addition_extended
            if base.precision is Precision.EXTENDED
            else rules.tolerances.addition_double
        )
    return compare(
        IdentityId.ADDITION,
        params.record(),
        lhs,
        rhs,
        tol,
        Truncation.for_base(base, series_terms=len(terms), notes=notes),
        scale=fsum(base, (abs(t) for t in terms)),
    )


def addition_polynomiality(
    l: int,
    p: int,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: float = 1e-9,
) -> VerificationReport:
    """
    Fit both sides of the addition formula as polynomials of degree ``l+p``.

    The fit of ``lhs - rhs`` must have every coefficient below ``tolerance``
    times the largest coefficient of the fit of ``lhs``.
    """
    degree = l + p
    lower, upper = -d - 1.0, c + 1.0
    nodes = (upper + lower) / 2 + (upper - lower) / 2 * chebpts1(degree + 1)
    lhs_values, diff_values = [], []
    for t in nodes:
        params = AdditionParams(l=l, p=p, x=float(t), c=c, d=d, base=base)
        lhs = addition_lhs(params)
        lhs_values.append(float(lhs))
        diff_values.append(float(lhs - addition_rhs(params)))
    lhs_coef = Polynomial.fit(nodes, lhs_values, deg=degree).convert().coef
    diff_coef = Polynomial.fit(nodes, diff_values, deg=degree).convert().coef
    return compare(
        IdentityId.ADDITION_POLYNOMIALITY,
        params_record(l=l, p=p, c=c, d=d, q=base.q),
        float(np.max(np.abs(diff_coef))),
        0.0,
        tolerance,
        Truncation.for_base(base, series_terms=degree + 1),
        scale=float(np.max(np.abs(lhs_coef))),
    )


def special_case_little(
    l: int,
    p: int,
    x: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    The ``c = 1, d = 0`` case of the addition formula:

    ``p_l(x;1,1;q) (q^(1-p) x;q)_p = sum_m q^(m(m-l+p)) (q;q)_(l+m) /
    ((q;q)_(l-m) (q;q)_m^2) p_(l-m)(q^p;q^m,q^m;q) (q^(1-p-m) x;q)_(p+m)``.
    """
    ctx = base.ctx
    q = base.qv
    x_ = ctx.mpf(x)
    q_q = lambda k: qpochhammer_finite(q, base, k)  # noqa: E731
    lhs = little_q_jacobi(l, x_, 1, 1, base) * qpochhammer_finite(q ** (1 - p) * x_, base, p)
    terms = [
        q ** (m * (m - l + p))
        * q_q(l + m)
        / (q_q(l - m) * q_q(m) ** 2)
        * little_q_jacobi(l - m, q**p, q**m, q**m, base)
        * qpochhammer_finite(q ** (1 - p - m) * x_, base, p + m)
        for m in range(l + 1)
    ]
    return compare(
        IdentityId.SPECIAL_CASE_LITTLE,
        params_record(l=l, p=p, x=x, q=base.q),
        lhs,
        fsum(base, terms),
        tolerance if tolerance is not None else rules.tolerances.special_case,
        Truncation.for_base(base, series_terms=len(terms)),
        scale=fsum(base, (abs(t) for t in terms)),
    )


# --------------------------------------------------------------------------- #
# product formula
# --------------------------------------------------------------------------- #


def _product_constant(l: int, m: int, p: int, c: Any, d: Any, base: QBase) -> Any:
    q = base.qv
    numerator = (
        (-1) ** (l + m)
        * q ** (-(l * (l + 1) // 2) - (p * (p - 1) // 2) + m * (l - p - m))
        * c**-p
        * d ** (-p - m)
        * qpochhammer_finite(-q * d / c, base, l)
        * qpochhammer_finite(q, base, l - m)
    )
    denominator = (
        (1 - q)
        * c
        * qpochhammer_finite(q ** (l + 1), base, l)
        * qpochhammer_finite(q ** (m + 1), base, p)
        * qpochhammer_product((q, -d / c, -q * c / d), base)
    )
    return numerator / denominator


def _product_integral(
    l: int, p: int, k: int, c: float, d: float, base: QBase, expected: Any, rules: VerificationRules
) -> SeriesResult:
    ctx = base.ctx
    c_, d_ = ctx.mpf(c), ctx.mpf(d)
    legendre_params = BigQJacobiParams(a=1.0, b=1.0, c=c, d=d, base=base)

    def integrand(t: Any) -> Any:
        return (
            big_q_jacobi(l, t, legendre_params)
            * monic_big_q_jacobi00(p, t, c, d, base)
            * monic_big_q_jacobi00(k, t, c, d, base)
            * weight_big00(t, c_, d_, base)
        )

    return q_integral_detailed(integrand, _integral_spec(c, d, base, expected, rules))


def product_formula(
    l: int,
    m: int,
    p: int,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
    identity_id: IdentityId = IdentityId.PRODUCT,
) -> VerificationReport:
    """
    q-integral representation of ``R_(l-m) p_(l-m)(q^p;q^m,q^m;q)``.

    The left side is the product of the dual q-Krawtchouk value at the
    lattice point ``l`` and the little q-Jacobi value at ``q^p``. The right
    side is ``C`` times the q-integral of ``P_l P^_p P^_(p+m)`` against the
    weight on ``[-d, c]``.
    """
    if not 0 <= m <= l:
        raise DomainError(f"m must lie in 0..{l}, got {m}")
    BigQJacobiParams(c=c, d=d, base=base).require_positive()
    ctx = base.ctx
    q = base.qv
    c_, d_ = ctx.mpf(c), ctx.mpf(d)
    lhs = _dual_krawtchouk_at_l(l - m, l, c_, d_, base) * little_q_jacobi(
        l - m, q**p, q**m, q**m, base
    )
    constant = _product_constant(l, m, p, c_, d_, base)
    integral = _product_integral(l, p, p + m, c, d, base, 1 / abs(constant), rules)
    return compare(
        identity_id,
        params_record(l=l, m=m, p=p, c=c, d=d, q=base.q),
        lhs,
        constant * integral.value,
        tolerance if tolerance is not None else rules.tolerances.product,
        Truncation.for_base(
            base, integral_terms=integral.terms, tail_bound=integral.tail_bound
        ),
        scale=abs(constant) * integral.scale,
    )


def product_formula_variant(
    l: int,
    m: int,
    p: int,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    The product formula obtained by pairing the addition formula with
    ``P^_(p-m)`` instead of ``P^_(p+m)``; requires ``p >= m``.

    Only the descending term of index ``m`` survives the integration, so
    ``R_(l-m) p_(l-m)(q^(p-m);q^m,q^m;q)`` equals the q-integral of
    ``P_l P^_p P^_(p-m)`` times the left prefactor of the addition formula,
    divided by the descending coefficient and the norm ``h_(p-m)``.
    """
    if not 0 <= m <= l:
        raise DomainError(f"m must lie in 0..{l}, got {m}")
    if p < m:
        raise DomainError(f"the descending pairing needs p >= m, got p={p}, m={m}")
    BigQJacobiParams(c=c, d=d, base=base).require_positive()
    ctx = base.ctx
    q = base.qv
    c_, d_ = ctx.mpf(c), ctx.mpf(d)
    lhs = _dual_krawtchouk_at_l(l - m, l, c_, d_, base) * little_q_jacobi(
        l - m, q ** (p - m), q**m, q**m, base
    )
    descending = (
        (-1) ** m
        * d_**m
        * q ** (m * (p - l))
        * reversed_qpochhammer(p, base, m)
        / (qpochhammer_finite(q, base, l - m) * qpochhammer_finite(q, base, m))
    )
    constant = _addition_prefactor(l, c_, d_, base) / (
        descending * orthogonality_norm_big00(p - m, c, d, base)
    )
    integral = _product_integral(l, p, p - m, c, d, base, 1 / abs(constant), rules)
    return compare(
        IdentityId.PRODUCT_VARIANT,
        params_record(l=l, m=m, p=p, c=c, d=d, q=base.q),
        lhs,
        constant * integral.value,
        tolerance if tolerance is not None else rules.tolerances.product,
        Truncation.for_base(
            base, integral_terms=integral.terms, tail_bound=integral.tail_bound
        ),
        scale=abs(constant) * integral.scale,
    )


def product_formula_reports(
    l: int,
    m: int,
    p: int,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """The product formula and, when ``p >= m``, its descending variant."""
    reports = [product_formula(l, m, p, c, d, base, tolerance=tolerance, rules=rules)]
    if p >= m:
        reports.append(
            product_formula_variant(l, m, p, c, d, base, tolerance=tolerance, rules=rules)
        )
    return reports


def positive_kernel(
    l: int,
    p: int,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    The ``m = 0`` product formula as a transform with non-negative kernel.

    The kernel ``P^_p(x)^2 (qx/c,-qx/d;q)_inf`` is sampled at the first
    q-integration nodes of both halves; a negative sample fails the report.
    """
    report = product_formula(
        l,
        0,
        p,
        c,
        d,
        base,
        tolerance=tolerance,
        rules=rules,
        identity_id=IdentityId.POSITIVE_KERNEL,
    )
    ctx = base.ctx
    q = base.qv
    c_, d_ = ctx.mpf(c), ctx.mpf(d)
    nodes = [c_ * q**k for k in range(20)] + [-d_ * q**k for k in range(20)]
    negative = [
        float(t)
        for t in nodes
        if monic_big_q_jacobi00(p, t, c, d, base) ** 2 * weight_big00(t, c_, d_, base) < 0
    ]
    if negative:
        log.warning("negative kernel values at %s", negative)
        return report.model_copy(
            update={
                "passed": False,
                "truncation": report.truncation.model_copy(
                    update={"notes": report.truncation.notes + ("negative kernel",)}
                ),
            }
        )
    return report


def closed_form_special_values(
    l: int,
    m: int,
    p: int,
    x: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    Summation formulas that hold at ``c = 1, d = 0``.

    - ``R_(l-m)(q^-l; inf, 2l; q) = (q^(m+1);q)_(l-m) / (q^(l+m+1);q)_(l-m)``
    - ``P^_p(x;0,0,1,0;q) = (-1)^p q^(p(p-1)/2) (q^(1-p) x;q)_p``
    - ``P_l(x;1,1,1,0;q) = (-1)^l q^(l(l+1)/2) p_l(x;1,1;q)``
    """
    if not 0 <= m <= l:
        raise DomainError(f"m must lie in 0..{l}, got {m}")
    ctx = base.ctx
    q = base.qv
    x_ = ctx.mpf(x)
    tolerance = tolerance if tolerance is not None else rules.tolerances.consistency
    truncation = Truncation.for_base(base)

    krawtchouk = dual_q_krawtchouk(
        l - m, l, DualQKrawtchoukParams(s=float("inf"), N=2 * l, base=base)
    )
    chu_vandermonde = qpochhammer_finite(q ** (m + 1), base, l - m) / qpochhammer_finite(
        q ** (l + m + 1), base, l - m
    )
    monic = monic_big_q_jacobi00(p, x_, 1.0, 0.0, base, MonicPath.RECURRENCE)
    binomial = (-1) ** p * q ** (p * (p - 1) // 2) * qpochhammer_finite(
        q ** (1 - p) * x_, base, p
    )
    legendre = big_q_jacobi(l, x_, BigQJacobiParams(a=1.0, b=1.0, c=1.0, d=0.0, base=base))
    little = (-1) ** l * q ** (l * (l + 1) // 2) * little_q_jacobi(l, x_, 1, 1, base)
    return [
        compare(
            IdentityId.SPECIAL_VALUE_DUAL_KRAWTCHOUK,
            params_record(l=l, m=m, q=base.q),
            krawtchouk,
            chu_vandermonde,
            tolerance,
            truncation,
        ),
        compare(
            IdentityId.SPECIAL_VALUE_MONIC,
            params_record(p=p, x=x, q=base.q),
            monic,
            binomial,
            tolerance,
            truncation,
        ),
        compare(
            IdentityId.SPECIAL_VALUE_BIG_LEGENDRE,
            params_record(l=l, x=x, q=base.q),
            legendre,
            little,
            tolerance,
            truncation,
        ),
    ]


# --------------------------------------------------------------------------- #
# q-calculus and cross-path consistency
# --------------------------------------------------------------------------- #


def euler_identity(
    t: float, base: QBase, *, tolerance: float = 1e-12
) -> VerificationReport:
    """``sum_n q^(n(n-1)/2) t^n/(q;q)_n = (-t;q)_inf``."""
    total = euler_sum_detailed(t, base)
    return compare(
        IdentityId.EULER,
        params_record(t=t, q=base.q),
        total.value,
        qpochhammer_infinite(-base.mpf(t), base),
        tolerance,
        Truncation.for_base(base, series_terms=total.terms, tail_bound=total.tail_bound),
        scale=total.scale,
    )


def q_binomial_identity(
    p: int, z: float, base: QBase, *, tolerance: float = 1e-12
) -> VerificationReport:
    """``1phi0(q^-p;-;q,z) = (q^-p z;q)_p``."""
    q = base.qv
    spec = SeriesSpec(numerator_params=(q**-p,), base=base, argument=base.mpf(z), degree=p)
    return compare(
        IdentityId.Q_BINOMIAL,
        params_record(p=p, z=z, q=base.q),
        phi_terminating(spec),
        qpochhammer_finite(q**-p * base.mpf(z), base, p),
        tolerance,
        Truncation.for_base(base, series_terms=p + 1),
    )


def q_integral_monomial(
    m: int, a: float, base: QBase, *, tolerance: float = 1e-12
) -> VerificationReport:
    """``int_0^a x^m d_qx = a^(m+1) (1-q)/(1-q^(m+1))``."""
    ctx = base.ctx
    q = base.qv
    a_ = ctx.mpf(a)
    exact = a_ ** (m + 1) * (1 - q) / (1 - q ** (m + 1))
    spec = QIntegralSpec(
        lower=0.0,
        upper=a,
        base=base,
        tail_bound=max(float(abs(exact)) * base.tol * 1e-2, 1e-300),
    )
    integral = q_integral_detailed(lambda t: t**m, spec)
    return compare(
        IdentityId.Q_INTEGRAL_MONOMIAL,
        params_record(m=m, a=a, q=base.q),
        integral.value,
        exact,
        tolerance,
        Truncation.for_base(base, integral_terms=integral.terms),
    )


def monic_path_agreement(
    n: int,
    x: float,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    Compare both series forms of ``P^_n(x;0,0,c,d;q)`` with the recurrence.

    The report carries the worse of the two comparisons, each relative to the
    magnitude of the series summands.
    """
    if tolerance is None:
        tolerance = (
            rules.tolerances.consistency
            if base.precision is Precision.DOUBLE
            else 1e-25
        )
    recurrence = monic_big_q_jacobi00_detailed(n, x, c, d, base, MonicPath.RECURRENCE)
    reports = []
    for path in (MonicPath.SERIES_C, MonicPath.SERIES_D):
        series = monic_big_q_jacobi00_detailed(n, x, c, d, base, path)
        reports.append(
            compare(
                IdentityId.MONIC_PATHS,
                params_record(n=n, x=x, c=c, d=d, q=base.q, path=path),
                series.value,
                recurrence.value,
                tolerance,
                Truncation.for_base(base, series_terms=series.terms),
                scale=series.scale,
            )
        )
    return max(reports, key=lambda r: r.rel_residual)


def scaling_identities(
    n: int,
    x: float,
    a: float,
    b: float,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    ``P_n(x/d;a,b,c/d,1;q) = P_n(x;a,b,c,d;q)`` and
    ``P^_n(x/d;0,0,c/d,1;q) = d^-n P^_n(x;0,0,c,d;q)``.
    """
    ctx = base.ctx
    tolerance = tolerance if tolerance is not None else rules.tolerances.consistency
    x_, d_ = ctx.mpf(x), ctx.mpf(d)
    scaled = BigQJacobiParams(a=a, b=b, c=c / d, d=1.0, base=base)
    plain = BigQJacobiParams(a=a, b=b, c=c, d=d, base=base)
    truncation = Truncation.for_base(base, series_terms=n + 1)
    return [
        compare(
            IdentityId.SCALING,
            params_record(n=n, x=x, a=a, b=b, c=c, d=d, q=base.q, form="big"),
            big_q_jacobi(n, x_ / d_, scaled),
            big_q_jacobi(n, x_, plain),
            tolerance,
            truncation,
        ),
        compare(
            IdentityId.SCALING,
            params_record(n=n, x=x, c=c, d=d, q=base.q, form="monic"),
            monic_big_q_jacobi00(n, x_ / d_, c / d, 1.0, base),
            d_**-n * monic_big_q_jacobi00(n, x_, c, d, base),
            tolerance,
            truncation,
        ),
    ]


def al_salam_carlitz_dilation(
    n: int,
    x: float,
    c: float,
    d: float,
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """``P^_n(x;0,0,c,d;q) = c^n U_n^(-d/c)(x/c;q)``."""
    ctx = base.ctx
    c_ = ctx.mpf(c)
    return compare(
        IdentityId.AL_SALAM_CARLITZ_DILATION,
        params_record(n=n, x=x, c=c, d=d, q=base.q),
        monic_big_q_jacobi00(n, x, c, d, base),
        c_**n * al_salam_carlitz(n, ctx.mpf(x) / c_, -ctx.mpf(d) / c_, base),
        tolerance if tolerance is not None else rules.tolerances.consistency,
        Truncation.for_base(base, series_terms=n + 1),
    )
