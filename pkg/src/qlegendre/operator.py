"""
Truncated infinite-dimensional representation of the self-adjoint element
``rho_{sigma,inf}`` acting on ``l^2(Z_+)``.

Matrices are built in double precision with numpy. The default form is the
real symmetric tridiagonal matrix obtained from the Hermitian one by the
rescaling ``e_n -> i^n e_n``; the complex form is kept for cross-checks.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Sequence, Union
import logging
import math

import numpy as np
import pandas as pd
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .enums import Branch, Gauge, IdentityId, MonicPath
from .exceptions import DomainError, EigensolveFailure, TruncationTooSmall
from .families import (
    big_q_jacobi,
    BigQJacobiParams,
    dual_q_krawtchouk_point,
    eigvec_leading_coefficient,
    little_q_jacobi,
    monic_big_q_jacobi00,
)
from .identities import (
    AdditionParams,
    addition_lhs,
    addition_rhs_terms,
    h_norm,
    weight_big00,
)
from .qcore import (
    QBase,
    fsum,
    jackson_sum,
    qpochhammer_finite,
    qpochhammer_product,
    reversed_qpochhammer,
)
from .report import Truncation, VerificationReport, compare, params_record
from .rules import DEFAULT_RULES, VerificationRules

__all__ = [
    "TruncatedRep",
    "SpectralPoint",
    "EigvecCoefficients",
    "spectral_point",
    "build_rho_matrix",
    "gauge_matrix",
    "gauge_equivalence",
    "eigvec",
    "eigvec_by_recurrence",
    "eigvec_via_families",
    "eigvec_residual",
    "truncated_spectrum",
    "predicted_spectrum",
    "spectrum_check",
    "spectrum_table",
    "norms_and_dual_orthogonality",
    "dual_orthogonality_as_q_integral",
    "matrix_element_coefficient",
    "matrix_element_action",
    "spherical_constant",
    "spherical_coefficient",
    "operator_identity",
    "scalar_identity",
    "addition_linkage",
    "coefficient_length",
]

log = logging.getLogger("qlegendre")


class TruncatedRep(BaseModel):
    """
    Truncation of the representation to the basis ``e_0..e_{dim-1}``.

    Fields
    ------
    dim
        Number of basis vectors kept, at least 2.
    sigma
        Real parameter of ``rho_{sigma,inf}``.
    base
        The q-base; matrices are always built in double precision.
    gauge
        Matrix form, real gauged by default.
    """

    dim: int = Field(..., ge=2)
    sigma: float
    base: QBase
    gauge: Gauge = Gauge.REAL_GAUGED

    model_config = ConfigDict(frozen=True, extra="forbid")

    @property
    def q(self) -> float:
        return self.base.q

    def record(self) -> dict[str, Any]:
        return params_record(
            sigma=self.sigma, q=self.q, dim=self.dim, gauge=self.gauge
        )


class SpectralPoint(BaseModel):
    """
    A point of the spectrum: ``-q^(2x)`` on the negative branch or
    ``q^(2 sigma + 2x)`` on the positive branch, with the squared norm ``h``
    of the corresponding eigenvector.
    """

    lambda_: float = Field(..., alias="lambda")
    branch: Branch
    x: int = Field(..., ge=0)
    sigma: float
    h: float = Field(..., gt=0.0)

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class EigvecCoefficients(BaseModel):
    """Gauged (real) eigenvector coefficients ``p~_0 .. p~_{N}`` for a spectral point."""

    point: SpectralPoint
    coefficients: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("coefficients")
    @classmethod
    def _one_dimensional(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 1 or value.size == 0:
            raise ValueError("coefficients must be a non-empty vector")
        return value

    def norm_squared(self) -> float:
        return float(np.dot(self.coefficients, self.coefficients))


def spectral_point(branch: Branch, x: int, sigma: float, base: QBase) -> SpectralPoint:
    """Build the spectral point with its closed-form squared norm."""
    Q = base.q**2
    if branch is Branch.NEG:
        value = -(Q**x)
        h = h_norm(x, -sigma, base)
    else:
        value = Q ** (sigma + x)
        h = h_norm(x, sigma, base)
    return SpectralPoint(lambda_=value, branch=branch, x=x, sigma=sigma, h=float(h))


# --------------------------------------------------------------------------- #
# matrices
# --------------------------------------------------------------------------- #


def _bands(rep: TruncatedRep) -> tuple[np.ndarray, np.ndarray]:
    q, s = rep.q, rep.sigma
    n = np.arange(rep.dim, dtype=float)
    diagonal = -(q ** (2 * n)) * (1 - q ** (2 * s))
    k = n[:-1]
    off = q ** (s + k) * np.sqrt(1 - q ** (2 * k + 2))
    return diagonal, off


def build_rho_matrix(rep: TruncatedRep) -> np.ndarray:
    """
    Matrix of the truncated operator.

    Real gauged form: diagonal ``-q^(2n)(1-q^(2 sigma))`` and off-diagonal
    ``q^(sigma+n) sqrt(1-q^(2n+2))``. Complex form: the same diagonal, entry
    ``i q^(sigma+n) sqrt(1-q^(2n+2))`` below and its conjugate above.
    """
    diagonal, off = _bands(rep)
    if rep.gauge is Gauge.REAL_GAUGED:
        return np.diag(diagonal) + np.diag(off, 1) + np.diag(off, -1)
    return (
        np.diag(diagonal).astype(complex)
        + np.diag(-1j * off, 1)
        + np.diag(1j * off, -1)
    )


def gauge_matrix(dim: int) -> np.ndarray:
    """The unitary ``U = diag(i^n)``; ``U* M_complex U`` is the gauged matrix."""
    return np.diag(1j ** np.arange(dim))


def _eigvalsh(matrix_or_rep: Union[np.ndarray, TruncatedRep]) -> np.ndarray:
    try:
        if isinstance(matrix_or_rep, TruncatedRep):
            diagonal, off = _bands(matrix_or_rep)
            return scipy.linalg.eigh_tridiagonal(diagonal, off, eigvals_only=True)
        return np.linalg.eigvalsh(matrix_or_rep)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise EigensolveFailure(str(exc)) from exc


def truncated_spectrum(rep: TruncatedRep) -> np.ndarray:
    """Eigenvalues of the truncated matrix, ordered by decreasing modulus."""
    if rep.gauge is Gauge.REAL_GAUGED:
        values = _eigvalsh(rep)
    else:
        values = _eigvalsh(build_rho_matrix(rep))
    return values[np.argsort(-np.abs(values), kind="stable")]


def gauge_equivalence(
    sigma: float, base: QBase, dim: int, *, tolerance: float = 1e-12
) -> VerificationReport:
    """
    Compare the two matrix forms: the largest deviation between their spectra
    and between ``U* M_complex U`` and the gauged matrix.
    """
    real = TruncatedRep(dim=dim, sigma=sigma, base=base, gauge=Gauge.REAL_GAUGED)
    cplx = real.model_copy(update={"gauge": Gauge.COMPLEX})
    unitary = gauge_matrix(dim)
    rotated = unitary.conj().T @ build_rho_matrix(cplx) @ unitary
    entry_gap = float(np.max(np.abs(rotated - build_rho_matrix(real))))
    spectral_gap = float(
        np.max(np.abs(np.sort(truncated_spectrum(real)) - np.sort(truncated_spectrum(cplx))))
    )
    return compare(
        IdentityId.GAUGE_EQUIVALENCE,
        params_record(sigma=sigma, q=base.q, dim=dim),
        max(entry_gap, spectral_gap),
        0.0,
        tolerance,
        Truncation.for_base(base, dimension=dim),
    )


# --------------------------------------------------------------------------- #
# eigenvectors
# --------------------------------------------------------------------------- #


def coefficient_length(xmax: int, q: float, digits: float = 20.0) -> int:
    """
    Length after which the eigenvectors up to index ``xmax`` are negligible
    to ``digits`` decimal digits: coefficients decay like ``q^(j^2/2)`` past
    ``n = 2 xmax``.
    """
    j = math.ceil(math.sqrt(2 * digits * math.log(10) / -math.log(q))) + 4
    return 2 * xmax + j


def _poch_table(Q: float, size: int) -> np.ndarray:
    table = np.ones(size + 1)
    table[1:] = np.cumprod(1 - Q ** np.arange(1, size + 1))
    return table


def _coefficients(x: int, s: float, q: float, length: int) -> np.ndarray:
    # p~_n = sum_k (-1)^k q^((n-2k)^2/2 - n/2 - s(n-2k))
    #        sqrt((Q;Q)_n) (Q;Q)_x / ((Q;Q)_{n-k} (Q;Q)_{x-k} (Q;Q)_k),  Q = q^2
    poch = _poch_table(q * q, max(length, x) + 1)
    out = np.empty(length)
    for n in range(length):
        k = np.arange(min(n, x) + 1)
        j = n - 2 * k
        exponent = j * j / 2.0 - n / 2.0 - s * j
        terms = (
            (-1.0) ** k
            * q**exponent
            * math.sqrt(poch[n])
            * poch[x]
            / (poch[n - k] * poch[x - k] * poch[k])
        )
        out[n] = math.fsum(terms)
    return out


def eigvec(
    lambda_point: SpectralPoint, rep: TruncatedRep, length: Optional[int] = None
) -> EigvecCoefficients:
    """
    Gauged eigenvector coefficients
    ``p~_n = q^(-sigma n) q^(-n(n-1)/2) (q^2;q^2)_n^(-1/2) P^_n(lambda;0,0,q^(2 sigma),1;q^2)``.

    The monic polynomial is expanded through its series form, which
    terminates at the lattice index ``x`` of the spectral point; the powers
    of q are combined into one exponent so that no intermediate factor
    overflows. The negative branch is the positive one with ``-sigma`` and
    alternating signs.
    """
    size = rep.dim if length is None else length
    q = rep.q
    if lambda_point.branch is Branch.POS:
        values = _coefficients(lambda_point.x, rep.sigma, q, size)
    else:
        values = _coefficients(lambda_point.x, -rep.sigma, q, size)
        values *= (-1.0) ** np.arange(size)
    return EigvecCoefficients(point=lambda_point, coefficients=values)


def eigvec_by_recurrence(lam: float, rep: TruncatedRep) -> np.ndarray:
    """
    Iterate the gauged three-term recurrence
    ``lam p_n = a_n p_{n+1} + b_n p_n + a_{n-1} p_{n-1}`` from ``p_0 = 1``.

    Forward iteration loses accuracy quickly; use it for short vectors only.
    """
    diagonal, off = _bands(rep)
    values = np.zeros(rep.dim)
    values[0] = 1.0
    for n in range(rep.dim - 1):
        previous = off[n - 1] * values[n - 1] if n > 0 else 0.0
        values[n + 1] = ((lam - diagonal[n]) * values[n] - previous) / off[n]
    return values


def eigvec_via_families(lambda_point: SpectralPoint, rep: TruncatedRep) -> np.ndarray:
    """Eigenvector coefficients from the leading coefficient and the monic polynomials."""
    big = rep.base.squared()
    c = big.q**rep.sigma
    path = MonicPath.SERIES_C if lambda_point.branch is Branch.POS else MonicPath.SERIES_D
    return np.array(
        [
            float(eigvec_leading_coefficient(n, rep.sigma, rep.base))
            * float(monic_big_q_jacobi00(n, lambda_point.lambda_, c, 1.0, big, path))
            for n in range(rep.dim)
        ]
    )


def eigvec_residual(
    lambda_point: SpectralPoint,
    rep: TruncatedRep,
    mode: Literal["boundary", "matvec"] = "matvec",
) -> float:
    """
    ``||(M - lambda) v|| / ||v||`` for the truncated eigenvector.

    Interior rows satisfy the recurrence exactly, so the residual is carried by
    the last row; ``mode="boundary"`` returns that analytic term
    ``|a_{N} p~_{N+1}| / ||v||`` with ``N = dim - 1``.
    """
    full = eigvec(lambda_point, rep, rep.dim + 1).coefficients
    v = full[:-1]
    norm = float(np.linalg.norm(v))
    if mode == "boundary":
        q, s, n = rep.q, rep.sigma, rep.dim - 1
        a_n = q ** (s + n) * math.sqrt(1 - q ** (2 * n + 2))
        return abs(a_n * full[-1]) / norm
    matrix = build_rho_matrix(rep)
    if rep.gauge is Gauge.COMPLEX:
        v = gauge_matrix(rep.dim) @ v
    return float(np.linalg.norm(matrix @ v - lambda_point.lambda_ * v)) / norm


# --------------------------------------------------------------------------- #
# spectrum
# --------------------------------------------------------------------------- #


def predicted_spectrum(sigma: float, q: float, count: int) -> list[tuple[float, Branch, int]]:
    """The ``count`` largest-modulus points of ``{-q^(2x)} u {q^(2 sigma + 2x)}``."""
    points = []
    for x in range(count):
        points.append((-(q ** (2 * x)), Branch.NEG, x))
        points.append((q ** (2 * sigma + 2 * x), Branch.POS, x))
    points.sort(key=lambda item: (-abs(item[0]), item[1].value))
    return points[:count]


def _match(
    values: Sequence[float], points: list[tuple[float, Branch, int]]
) -> list[tuple[float, Branch, int]]:
    """Pair each value, in rank order, with the nearest point not yet taken."""
    free = list(points)
    matched = []
    for value in values:
        index = min(range(len(free)), key=lambda i: abs(free[i][0] - float(value)))
        matched.append(free.pop(index))
    return matched


def spectrum_check(
    rep: TruncatedRep,
    count: int,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    Match the ``count`` largest-modulus truncated eigenvalues against the
    point spectrum.

    Each eigenvalue is paired with the nearest predicted point that no
    higher-ranked eigenvalue has claimed, so a repeated eigenvalue cannot
    stand in for a missing point. The tolerance
    is the configured one plus ``q^(sigma + dim - 1)``, the size of the
    coupling cut off by the truncation.
    """
    if count > rep.dim:
        raise DomainError(f"count {count} exceeds the dimension {rep.dim}")
    values = truncated_spectrum(rep)[:count]
    points = predicted_spectrum(rep.sigma, rep.q, count + 2)
    allowance = rep.q ** (rep.sigma + rep.dim - 1)
    base_tol = tolerance if tolerance is not None else rules.tolerances.spectrum
    reports = []
    matches = _match(values, points)
    for rank, (value, (predicted, branch, x)) in enumerate(zip(values, matches)):
        reports.append(
            compare(
                IdentityId.SPECTRUM,
                params_record(rank=rank, branch=branch, x=x, **rep.record()),
                float(value),
                predicted,
                base_tol + allowance,
                Truncation.for_base(rep.base, dimension=rep.dim),
            )
        )
    return reports


def spectrum_table(rep: TruncatedRep, count: int) -> pd.DataFrame:
    """Table of (rank, eigenvalue, branch, x, predicted, deviation)."""
    values = truncated_spectrum(rep)[:count]
    points = predicted_spectrum(rep.sigma, rep.q, count + 2)
    rows = []
    matches = _match(values, points)
    for rank, (value, (predicted, branch, x)) in enumerate(zip(values, matches)):
        rows.append(
            {
                "rank": rank,
                "eigenvalue": float(value),
                "branch": branch.value,
                "x": x,
                "predicted": predicted,
                "deviation": abs(float(value) - predicted),
            }
        )
    return pd.DataFrame(rows, columns=["rank", "eigenvalue", "branch", "x", "predicted", "deviation"])


# --------------------------------------------------------------------------- #
# norms and completeness
# --------------------------------------------------------------------------- #


def norms_and_dual_orthogonality(
    rep: TruncatedRep,
    xmax: int,
    nmax: int,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    Check the eigenvectors for ``x <= xmax`` on both branches.

    - ``<v_x, v_x> = h_x`` per eigenvector, with the closed-form norm
      (``sigma`` replaced by ``-sigma`` on the negative branch);
    - the largest normalised inner product between distinct eigenvectors,
      per pair of branches;
    - the completeness relation ``sum_x u_x(n) u_x(m) + w_x(n) w_x(m) =
      delta_{n,m}`` for ``n <= m <= nmax``.

    Vectors are taken long enough for the indices involved, and never shorter
    than ``rep.dim``.
    """
    tolerance = tolerance if tolerance is not None else rules.tolerances.eigvec
    length = max(rep.dim, nmax + 1, coefficient_length(xmax, rep.q))
    truncation = Truncation.for_base(rep.base, dimension=length)
    vectors: dict[Branch, list[np.ndarray]] = {}
    points: dict[Branch, list[SpectralPoint]] = {}
    reports = []
    for branch in (Branch.NEG, Branch.POS):
        points[branch] = [spectral_point(branch, x, rep.sigma, rep.base) for x in range(xmax + 1)]
        vectors[branch] = [eigvec(pt, rep, length).coefficients for pt in points[branch]]
        for pt, v in zip(points[branch], vectors[branch]):
            reports.append(
                compare(
                    IdentityId.EIGVEC_NORM,
                    params_record(branch=branch, x=pt.x, **rep.record()),
                    math.fsum(v * v),
                    pt.h,
                    tolerance,
                    truncation,
                )
            )

    pairs = ((Branch.NEG, Branch.NEG), (Branch.POS, Branch.POS), (Branch.NEG, Branch.POS))
    for left, right in pairs:
        worst = 0.0
        for i, (u, pu) in enumerate(zip(vectors[left], points[left])):
            for j, (w, pw) in enumerate(zip(vectors[right], points[right])):
                if left is right and j <= i:
                    continue
                worst = max(worst, abs(math.fsum(u * w)) / math.sqrt(pu.h * pw.h))
        reports.append(
            compare(
                IdentityId.EIGVEC_ORTHOGONALITY,
                params_record(branches=f"{left.value}-{right.value}", xmax=xmax, **rep.record()),
                worst,
                0.0,
                tolerance,
                truncation,
            )
        )

    for n in range(nmax + 1):
        for m in range(n, nmax + 1):
            total = math.fsum(
                vec[n] * vec[m] / pt.h
                for branch in (Branch.NEG, Branch.POS)
                for vec, pt in zip(vectors[branch], points[branch])
            )
            reports.append(
                compare(
                    IdentityId.DUAL_ORTHOGONALITY,
                    params_record(n=n, m=m, xmax=xmax, **rep.record()),
                    total,
                    1.0 if n == m else 0.0,
                    tolerance,
                    truncation.model_copy(update={"series_terms": 2 * (xmax + 1)}),
                )
            )
    return reports


def dual_orthogonality_as_q_integral(
    rep: TruncatedRep,
    xmax: int,
    nmax: int,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    Identify the two halves of the completeness relation with Jackson
    integrals in base ``Q = q^2``.

    The sum over the negative branch equals the normalised q-integral of
    ``p~_n p~_m`` over ``[-1, 0]`` and the sum over the positive branch the
    one over ``[0, Q^sigma]``, for the weight ``(Qx/Q^sigma, -Qx;Q)_inf``.
    """
    tolerance = tolerance if tolerance is not None else rules.tolerances.eigvec
    big = rep.base.squared()
    ctx = big.ctx
    Q = big.qv
    c = Q**rep.sigma
    d = ctx.mpf(1)
    normaliser = (1 - Q) * c * qpochhammer_product((Q, -d / c, -Q * c / d), big)
    lc = [float(eigvec_leading_coefficient(n, rep.sigma, rep.base)) for n in range(nmax + 1)]
    points = {
        branch: [spectral_point(branch, x, rep.sigma, rep.base) for x in range(xmax + 1)]
        for branch in (Branch.NEG, Branch.POS)
    }
    vectors = {
        branch: [eigvec(pt, rep, nmax + 1).coefficients for pt in pts]
        for branch, pts in points.items()
    }
    reports = []
    for n in range(nmax + 1):
        for m in range(n, nmax + 1):

            def integrand(t: Any, n: int = n, m: int = m) -> Any:
                return (
                    monic_big_q_jacobi00(n, t, c, d, big)
                    * monic_big_q_jacobi00(m, t, c, d, big)
                    * weight_big00(t, c, d, big)
                )

            for branch, endpoint in ((Branch.NEG, -d), (Branch.POS, c)):
                half = jackson_sum(integrand, endpoint, big, tail_bound=1e-18)
                value = half.value if branch is Branch.POS else -half.value
                total = math.fsum(
                    vec[n] * vec[m] / pt.h for vec, pt in zip(vectors[branch], points[branch])
                )
                reports.append(
                    compare(
                        IdentityId.DUAL_Q_INTEGRAL,
                        params_record(n=n, m=m, branch=branch, xmax=xmax, **rep.record()),
                        total,
                        float(lc[n] * lc[m] * value / normaliser),
                        tolerance,
                        Truncation.for_base(
                            rep.base, series_terms=xmax + 1, integral_terms=half.terms
                        ),
                    )
                )
    return reports


# --------------------------------------------------------------------------- #
# matrix elements and the operator identity
# --------------------------------------------------------------------------- #


def _check_spin(l: Any, m: int) -> int:
    if isinstance(l, float):
        if not l.is_integer():
            raise DomainError(f"only integer spin is supported, got l={l}")
        l = int(l)
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    if abs(m) > l:
        raise DomainError(f"|m| must not exceed l={l}, got m={m}")
    return l


def matrix_element_coefficient(l: int, m: int, base: QBase) -> float:
    """``d^l_m = q^(-m(l-m)) / (q^2;q^2)_m * sqrt((q^2;q^2)_(l+m) / (q^2;q^2)_(l-m))`` for ``m >= 0``."""
    big = base.squared()
    Q = big.qv
    poch = lambda k: qpochhammer_finite(Q, big, k)  # noqa: E731
    return float(base.qv ** (-m * (l - m)) / poch(m) * big.ctx.sqrt(poch(l + m) / poch(l - m)))


def matrix_element_action(
    l: int, m: int, p: int, rep: TruncatedRep
) -> tuple[Optional[int], float]:
    """
    Action of ``pi(t^l_{0,m})`` on ``e_p`` in the untwisted basis.

    Returns the target index and the amplitude. For ``m >= 0`` the target is
    ``p + m`` with amplitude
    ``d^l_m (-1)^m q^(m(p+1)) sqrt((q^(2p+2);q^2)_m) p_(l-m)(q^(2p);q^(2m),q^(2m);q^2)``;
    for ``m = -mu < 0`` the target is ``p - mu`` with amplitude
    ``d^l_mu q^(mu(p-mu)) sqrt((q^(2p);q^-2)_mu) p_(l-mu)(q^(2(p-mu));q^(2mu),q^(2mu);q^2)``,
    and ``(None, 0.0)`` when ``p < mu``.
    """
    l = _check_spin(l, m)
    base = rep.base
    big = base.squared()
    q = base.qv
    Q = big.qv
    mu = abs(m)
    coefficient = matrix_element_coefficient(l, mu, base)
    if m >= 0:
        amplitude = (
            coefficient
            * (-1) ** m
            * q ** (m * (p + 1))
            * big.ctx.sqrt(qpochhammer_finite(Q ** (p + 1), big, m))
            * little_q_jacobi(l - m, Q**p, Q**m, Q**m, big)
        )
        return p + m, float(amplitude)
    if p < mu:
        return None, 0.0
    amplitude = (
        coefficient
        * q ** (mu * (p - mu))
        * big.ctx.sqrt(reversed_qpochhammer(p, big, mu))
        * little_q_jacobi(l - mu, Q ** (p - mu), Q**mu, Q**mu, big)
    )
    return p - mu, float(amplitude)


def spherical_coefficient(l: int, m: int, sigma: float, base: QBase) -> float:
    """
    Modulus part of ``c^{l,sigma}_m`` (the constant equals ``i^|m|`` times this):
    ``q^(-(l+sigma)|m| + m^2/2) / sqrt((q^2;q^2)_(l+|m|) (q^2;q^2)_(l-|m|))
    R_(l-|m|)(q^-2l - q^(-2l-2 sigma); q^(2 sigma), 2l; q^2)``.
    The value depends on ``|m|`` only.
    """
    mu = abs(m)
    big = base.squared()
    Q = big.qv
    q = base.qv
    poch = lambda k: qpochhammer_finite(Q, big, k)  # noqa: E731
    krawtchouk = dual_q_krawtchouk_point(l - mu, l, Q ** (-sigma), 2 * l, big)
    return float(
        q ** (-(l + sigma) * mu + mu * mu / 2.0)
        / big.ctx.sqrt(poch(l + mu) * poch(l - mu))
        * krawtchouk
    )


def spherical_constant(l: int, sigma: float, base: QBase) -> float:
    """``C_l(sigma) = (-1)^l q^(-l^2-l) (-q^(2-2 sigma);q^2)_l / (q^(2l+2);q^2)_l``."""
    big = base.squared()
    Q = big.qv
    return float(
        (-1) ** l
        * base.qv ** (-l * l - l)
        * qpochhammer_finite(-(Q ** (1 - sigma)), big, l)
        / qpochhammer_finite(Q ** (l + 1), big, l)
    )


def _big_legendre_matrix(l: int, matrix: np.ndarray, sigma: float, base: QBase) -> np.ndarray:
    # P_l(M;1,1,c,1;Q) = sum_k (Q^-l, Q^(l+1);Q)_k / ((Q, Q, -Q/c;Q)_k) Q^k prod_{j<k}(I - Q^(j+1) M / c)
    Q = base.q**2
    c = Q**sigma
    identity = np.eye(matrix.shape[0], dtype=matrix.dtype)
    result = np.zeros_like(matrix)
    running = identity.copy()
    coefficient = 1.0
    for k in range(l + 1):
        result = result + coefficient * running
        coefficient *= (
            (1 - Q ** (k - l))
            * (1 - Q ** (l + 1 + k))
            / ((1 - Q ** (k + 1)) ** 2 * (1 + Q ** (k + 1) / c))
            * Q
        )
        running = running @ (identity - Q ** (k + 1) * matrix / c)
    return result


def operator_identity(
    l: int,
    rep: TruncatedRep,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    Compare ``sum_m q^(-m/2) c^{l,sigma}_m pi(t^l_{0,m})`` with
    ``C_l(sigma) P_l(M;1,1,q^(2 sigma),1;q^2)`` on the top-left
    ``(dim-l) x (dim-l)`` block.

    In the gauged form the left side is real: the phase of the ``m``-th term
    becomes ``i^(|m|-m)``. In the complex form the result is rotated back
    with ``U = diag(i^n)`` and its imaginary part must vanish.

    Raises
    ------
    TruncationTooSmall
        If ``dim <= 2l``.
    """
    l = _check_spin(l, 0)
    if rep.dim <= 2 * l:
        raise TruncationTooSmall(f"dim={rep.dim} leaves no block for l={l}")
    tolerance = tolerance if tolerance is not None else rules.tolerances.operator_identity
    q = rep.q
    complex_mode = rep.gauge is Gauge.COMPLEX
    dtype = complex if complex_mode else float
    lhs = np.zeros((rep.dim, rep.dim), dtype=dtype)
    for m in range(-l, l + 1):
        weight = q ** (-m / 2) * spherical_coefficient(l, m, rep.sigma, rep.base)
        phase = 1j ** abs(m) if complex_mode else (-1) ** ((abs(m) - m) // 2)
        for p in range(rep.dim):
            target, amplitude = matrix_element_action(l, m, p, rep)
            if target is None or target >= rep.dim:
                continue
            lhs[target, p] += phase * weight * amplitude
    rhs = spherical_constant(l, rep.sigma, rep.base) * _big_legendre_matrix(
        l, build_rho_matrix(rep), rep.sigma, rep.base
    )
    notes: tuple[str, ...] = ()
    if complex_mode:
        unitary = gauge_matrix(rep.dim)
        lhs = unitary.conj().T @ lhs @ unitary
        rhs = unitary.conj().T @ rhs @ unitary
        imaginary = float(max(np.max(np.abs(lhs.imag)), np.max(np.abs(rhs.imag))))
        lhs, rhs = lhs.real, rhs.real
        notes = (f"max imaginary part {imaginary:.3e}",)
    block = rep.dim - l
    deviation = float(np.max(np.abs(lhs[:block, :block] - rhs[:block, :block])))
    scale = float(np.max(np.abs(rhs[:block, :block])))
    notes += (f"max entry deviation {deviation:.3e}", f"max entry {scale:.3e}")
    report = compare(
        IdentityId.OPERATOR_IDENTITY,
        params_record(l=l, **rep.record()),
        deviation,
        0.0,
        tolerance,
        Truncation.for_base(rep.base, dimension=rep.dim, notes=notes),
        scale=scale,
    )
    # entrywise contract: absolute deviation, whatever the size of the entries
    passed = deviation <= tolerance
    if complex_mode and imaginary > rules.tolerances.imaginary:
        log.warning("operator identity l=%d left imaginary part %.3e", l, imaginary)
        passed = False
    return report.model_copy(update={"passed": passed})


# --------------------------------------------------------------------------- #
# scalar identity from the eigenvector pairing
# --------------------------------------------------------------------------- #


def _scalar_sides(l: int, p: int, sigma: float, lam: Any, base: QBase) -> tuple[Any, list[Any]]:
    big = base.squared()
    ctx = big.ctx
    q = base.qv
    Q = big.qv
    s = ctx.mpf(sigma)
    c = Q**s
    lam = ctx.mpf(lam)
    poch = lambda k: qpochhammer_finite(Q, big, k)  # noqa: E731
    monic = lambda k: monic_big_q_jacobi00(k, lam, c, 1.0, big)  # noqa: E731
    krawtchouk = lambda k: dual_q_krawtchouk_point(k, l, Q**-s, 2 * l, big)  # noqa: E731

    legendre = big_q_jacobi(l, lam, BigQJacobiParams(a=1.0, b=1.0, c=float(c), d=1.0, base=big))
    lhs = (
        (-1) ** l
        * q ** (-l * l - l)
        * qpochhammer_finite(-(Q ** (1 - s)), big, l)
        / qpochhammer_finite(Q ** (l + 1), big, l)
        * legendre
        * monic(p)
    )
    terms = [krawtchouk(l) * little_q_jacobi(l, Q**p, 1, 1, big) * monic(p) / poch(l)]
    for m in range(1, l + 1):
        shared = (-1) ** m * krawtchouk(l - m) / (poch(l - m) * poch(m))
        falling = reversed_qpochhammer(p, big, m)
        if falling == 0:
            terms.append(ctx.mpf(0))
        else:
            terms.append(
                shared
                * q ** (2 * m * (p - l))
                * falling
                * little_q_jacobi(l - m, Q ** (p - m), Q**m, Q**m, big)
                * monic(p - m)
            )
        terms.append(
            shared
            * q ** (m * (m + 1) - 2 * m * (s + l))
            * little_q_jacobi(l - m, Q**p, Q**m, Q**m, big)
            * monic(p + m)
        )
    return lhs, terms


def scalar_identity(
    l: int,
    p: int,
    sigma: float,
    lambda_point: Union[SpectralPoint, float],
    base: QBase,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> VerificationReport:
    """
    The scalar identity obtained by pairing the operator identity with an
    eigenvector and dividing by the factor in front of ``P^_p``:

    ``(-1)^l q^(-l^2-l) (-q^(2-2 sigma);q^2)_l / (q^(2l+2);q^2)_l
    P_l(lambda) P^_p(lambda)`` equals the sum of the ``m = 0`` term and
    the descending and ascending terms in ``m = 1..l``. Both sides are
    polynomials in ``lambda``; any real ``lambda`` may be passed.
    """
    lam = lambda_point.lambda_ if isinstance(lambda_point, SpectralPoint) else lambda_point
    lhs, terms = _scalar_sides(l, p, sigma, lam, base)
    big = base.squared()
    return compare(
        IdentityId.SCALAR_IDENTITY,
        params_record(l=l, p=p, sigma=sigma, lam=lam, q=base.q),
        lhs,
        fsum(big, terms),
        tolerance if tolerance is not None else rules.tolerances.scalar_identity,
        Truncation.for_base(base, series_terms=len(terms)),
        scale=fsum(big, (abs(t) for t in terms)),
    )


def addition_linkage(
    params: AdditionParams,
    *,
    tolerance: Optional[float] = None,
    rules: VerificationRules = DEFAULT_RULES,
) -> list[VerificationReport]:
    """
    Substitute ``q^2 -> q``, ``q^(2 sigma) -> c/d`` and ``lambda -> x/d`` in
    the scalar identity and compare with the addition formula: both sides
    agree after multiplication by ``d^p``.
    """
    base = params.base
    small = base.with_q(math.sqrt(base.q))
    sigma = math.log(params.c / params.d) / math.log(base.q)
    lhs_pairing, terms_pairing = _scalar_sides(params.l, params.p, sigma, params.x / params.d, small)
    lhs413 = addition_lhs(params)
    terms413 = addition_rhs_terms(params)
    factor = params.d**params.p
    tolerance = tolerance if tolerance is not None else rules.tolerances.consistency
    truncation = Truncation.for_base(base, series_terms=len(terms413))
    scale = fsum(base, (abs(t) for t in terms413))
    return [
        compare(
            IdentityId.ADDITION_LINKAGE,
            {**params.record(), "side": "lhs"},
            factor * lhs_pairing,
            lhs413,
            tolerance,
            truncation,
            scale=scale,
        ),
        compare(
            IdentityId.ADDITION_LINKAGE,
            {**params.record(), "side": "rhs"},
            factor * fsum(small.squared(), terms_pairing),
            fsum(base, terms413),
            tolerance,
            truncation,
            scale=scale,
        ),
    ]
