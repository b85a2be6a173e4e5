from __future__ import annotations

from pydantic import BaseModel, Field

__all__ = [
    "ToleranceRules",
    "TruncationRules",
    "VerificationRules",
    "DEFAULT_RULES",
]


class ToleranceRules(BaseModel):
    """
    Relative tolerances applied by the verifiers.

    Fields
    ------
    addition_double, addition_extended
        Addition formula in double and in extended precision.
    product
        Product formula and its variant.
    orthogonality_diagonal
        Diagonal of the big q-Jacobi orthogonality matrix.
    orthogonality_off_diagonal
        Off-diagonal entries, relative to the geometric mean of the norms.
    charlier
        Both q-Charlier relations.
    h_norm
        Direct against closed-form eigenvector norms.
    special_case
        The little q-Legendre special case of the addition formula.
    consistency
        Agreement of independent evaluation paths.
    spectrum
        Truncated eigenvalues against the point spectrum (before the
        truncation allowance is added).
    eigvec
        Eigenvector norms and dual orthogonality.
    operator_identity
        Entrywise deviation of the matrix identity.
    imaginary
        Largest imaginary part left after gauging the complex form.
    scalar_identity
        The scalar identity obtained from the eigenvector pairing.
    classical
        Classical Legendre addition and product formulas.
    limit_cap
        Largest acceptable error at the final point of a limit scan.
    """

    addition_double: float = Field(default=1e-8, gt=0)
    addition_extended: float = Field(default=1e-20, gt=0)
    product: float = Field(default=1e-8, gt=0)
    orthogonality_diagonal: float = Field(default=1e-8, gt=0)
    orthogonality_off_diagonal: float = Field(default=1e-10, gt=0)
    charlier: float = Field(default=1e-9, gt=0)
    h_norm: float = Field(default=1e-10, gt=0)
    special_case: float = Field(default=1e-10, gt=0)
    consistency: float = Field(default=1e-10, gt=0)
    spectrum: float = Field(default=1e-8, gt=0)
    eigvec: float = Field(default=1e-8, gt=0)
    operator_identity: float = Field(default=1e-9, gt=0)
    imaginary: float = Field(default=1e-12, gt=0)
    scalar_identity: float = Field(default=1e-10, gt=0)
    classical: float = Field(default=1e-12, gt=0)
    limit_cap: float = Field(default=0.05, gt=0)


class TruncationRules(BaseModel):
    """
    Truncation sizes and precision policy.

    Fields
    ------
    integral_tail
        Tail bound of q-integrals, relative to the expected size of the
        integral.
    integral_run
        Consecutive small increments that end a q-integral.
    extended_above_l
        Degrees l above this switch the addition formula to extended
        precision.
    extended_dps
        Decimal digits used when precision is upgraded.
    spectrum_dim
        Matrix size for spectra, norms and dual orthogonality.
    operator_dim
        Matrix size for the operator identity.
    xmax, nmax
        Eigenvector indices and basis indices checked by the norm and dual
        orthogonality relations.
    """

    integral_tail: float = Field(default=1e-17, gt=0)
    integral_run: int = Field(default=5, ge=1)
    extended_above_l: int = Field(default=4, ge=0)
    extended_dps: int = Field(default=40, ge=16)
    spectrum_dim: int = Field(default=80, ge=2)
    operator_dim: int = Field(default=50, ge=2)
    xmax: int = Field(default=40, ge=0)
    nmax: int = Field(default=8, ge=0)


class VerificationRules(BaseModel):
    """
    Full configuration of a verification run.

    This config is intended to be:
    - serializable (stored next to the reports it produced)
    - explicit (every tolerance used by a suite lives here)

    Fields
    ------
    tolerances : ToleranceRules
        Relative tolerances per relation.
    truncation : TruncationRules
        Truncation sizes and precision policy.
    """

    tolerances: ToleranceRules = Field(default_factory=ToleranceRules)
    truncation: TruncationRules = Field(default_factory=TruncationRules)


DEFAULT_RULES = VerificationRules()
