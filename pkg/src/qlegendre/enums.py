from enum import Enum, auto

__all__ = [
    "Precision",
    "Family",
    "MonicPath",
    "NormPath",
    "CharlierKind",
    "Branch",
    "Gauge",
    "IdentityId",
    "Suite",
    "OutputFormat",
    "VerificationEventType",
]


class Precision(Enum):
    """
    Arithmetic mode used for scalar evaluations.

    Attributes
    ----------
    DOUBLE : str
        Native IEEE double precision (``mpmath.fp`` context).
    EXTENDED : str
        Multiprecision arithmetic with a configurable number of decimal digits
        (a private ``mpmath`` context, 40 digits by default).
    """

    DOUBLE = "double"
    EXTENDED = "extended"


class Family(Enum):
    """
    Polynomial families that can be evaluated.

    Attributes
    ----------
    BIG_Q_JACOBI : str
        Big q-Jacobi polynomials, a terminating 3phi2 series.
    MONIC_BIG_Q_JACOBI00 : str
        Monic big q-Jacobi polynomials with a=b=0.
    LITTLE_Q_JACOBI : str
        Little q-Jacobi polynomials, normalised to 1 at the origin.
    DUAL_Q_KRAWTCHOUK : str
        Dual q-Krawtchouk polynomials on a finite quadratic lattice.
    Q_CHARLIER : str
        q-Charlier polynomials.
    AL_SALAM_CARLITZ : str
        Al-Salam--Carlitz polynomials generated by their recurrence.
    JACOBI : str
        Classical Jacobi polynomials normalised at 1.
    CHEBYSHEV : str
        Chebyshev polynomials of the first kind.
    """

    BIG_Q_JACOBI = "big-q-jacobi"
    MONIC_BIG_Q_JACOBI00 = "monic-big00"
    LITTLE_Q_JACOBI = "little-q-jacobi"
    DUAL_Q_KRAWTCHOUK = "dual-q-krawtchouk"
    Q_CHARLIER = "q-charlier"
    AL_SALAM_CARLITZ = "al-salam-carlitz"
    JACOBI = "jacobi"
    CHEBYSHEV = "chebyshev"


class MonicPath(Enum):
    """
    Computation path for the monic big q-Jacobi polynomials.

    Attributes
    ----------
    SERIES_C : str
        The 2phi1 representation with the c/x parameter.
    SERIES_D : str
        The 2phi1 representation with the -d/x parameter.
    RECURRENCE : str
        The three-term recurrence seeded with P_{-1}=0, P_0=1.
    AUTO : str
        Recurrence everywhere; equivalent to RECURRENCE but never raises
        for x=0.
    """

    SERIES_C = "series_c"
    SERIES_D = "series_d"
    RECURRENCE = "recurrence"
    AUTO = "auto"


class NormPath(Enum):
    """How the squared eigenvector norms are computed."""

    DIRECT = "direct"
    CLOSED = "closed"


class CharlierKind(Enum):
    """Which q-Charlier relation is checked."""

    SAME = "same"
    CROSS = "cross"


class Branch(Enum):
    """
    Branch of the point spectrum.

    Attributes
    ----------
    NEG : str
        Eigenvalues -q^{2x}.
    POS : str
        Eigenvalues q^{2 sigma + 2x}.
    """

    NEG = "neg"
    POS = "pos"


class Gauge(Enum):
    """
    Matrix form of the truncated self-adjoint operator.

    Attributes
    ----------
    COMPLEX : str
        Hermitian tridiagonal matrix with the imaginary off-diagonal entries.
    REAL_GAUGED : str
        Real symmetric tridiagonal matrix obtained by the rescaling
        e_n -> i^n e_n.
    """

    COMPLEX = "complex"
    REAL_GAUGED = "real_gauged"


class IdentityId(Enum):
    """Identifiers of every checked relation, as they appear in reports."""

    # q-calculus
    EULER = "euler"
    Q_BINOMIAL = "q_binomial"
    Q_INTEGRAL_MONOMIAL = "q_integral_monomial"

    # families
    MONIC_PATHS = "monic_paths"
    AL_SALAM_CARLITZ_DILATION = "al_salam_carlitz_dilation"
    SCALING = "scaling"

    # scalar identities
    ORTHOGONALITY = "orthogonality_big00"
    CHARLIER_SAME = "q_charlier_same"
    CHARLIER_CROSS = "q_charlier_cross"
    H_NORM = "h_norm"
    ADDITION = "addition"
    ADDITION_POLYNOMIALITY = "addition_polynomiality"
    SPECIAL_CASE_LITTLE = "special_case_little"
    PRODUCT = "product"
    PRODUCT_VARIANT = "product_variant"
    POSITIVE_KERNEL = "positive_kernel"
    SPECIAL_VALUE_DUAL_KRAWTCHOUK = "special_value_dual_krawtchouk"
    SPECIAL_VALUE_MONIC = "special_value_monic"
    SPECIAL_VALUE_BIG_LEGENDRE = "special_value_big_legendre"

    # operator
    SPECTRUM = "spectrum"
    GAUGE_EQUIVALENCE = "gauge_equivalence"
    EIGVEC_NORM = "eigvec_norm"
    EIGVEC_ORTHOGONALITY = "eigvec_orthogonality"
    DUAL_ORTHOGONALITY = "dual_orthogonality"
    DUAL_Q_INTEGRAL = "dual_q_integral"
    OPERATOR_IDENTITY = "operator_identity"
    SCALAR_IDENTITY = "scalar_identity"
    ADDITION_LINKAGE = "addition_linkage"

    # classical
    CLASSICAL_ADDITION = "classical_addition"
    CLASSICAL_ADDITION_PARAMETRIC = "classical_addition_parametric"
    CLASSICAL_PRODUCT = "classical_product"
    RECURRENCE_LIMIT = "recurrence_limit"
    LIMIT_BIG_Q_JACOBI = "limit_big_q_jacobi"
    LIMIT_LITTLE_Q_JACOBI = "limit_little_q_jacobi"
    LIMIT_DUAL_Q_KRAWTCHOUK = "limit_dual_q_krawtchouk"
    RATIO_ASYMPTOTIC = "ratio_asymptotic"
    KERNEL_LIMIT = "kernel_limit"


class Suite(Enum):
    """Verification suites that can be run from the command line."""

    ADDITION = "addition"
    PRODUCT = "product"
    ORTHOGONALITY = "orthogonality"
    CHARLIER = "charlier"
    OPERATOR = "operator"
    SPECIAL = "special"
    CONSISTENCY = "consistency"
    LIMITS = "limits"
    ALL = "all"


class OutputFormat(Enum):
    """Serialisation of command output."""

    JSON = "json"
    CSV = "csv"
    HUMAN = "human"


class VerificationEventType(Enum):
    """
    Events emitted while a suite is running.

    Attributes
    ----------
    SUITE_STARTED : str
        A suite has started.
    REPORT_CREATED : str
        A report was produced (passed or not).
    REPORT_FAILED : str
        A report did not pass; emitted right after REPORT_CREATED.
    SUITE_COMPLETED : str
        A suite has finished.
    """

    SUITE_STARTED = auto()
    REPORT_CREATED = auto()
    REPORT_FAILED = auto()
    SUITE_COMPLETED = auto()
