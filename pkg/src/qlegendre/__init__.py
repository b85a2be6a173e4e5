from importlib.metadata import metadata

from .enums import (
    Precision,
    Family,
    MonicPath,
    NormPath,
    CharlierKind,
    Branch,
    Gauge,
    IdentityId,
    Suite,
    OutputFormat,
    VerificationEventType,
)
from .exceptions import (
    QLegendreError,
    NonConvergence,
    DomainError,
    DegreeOutOfRange,
    IllConditioned,
    EigensolveFailure,
    TruncationTooSmall,
    DegenerateRatio,
)
from .qcore import QBase, SeriesResult, SeriesSpec, QIntegralSpec
from .families import BigQJacobiParams, DualQKrawtchoukParams, big_q_jacobi, big_q_legendre
from .report import VerificationReport
from .rules import VerificationRules, DEFAULT_RULES
from .identities import AdditionParams, verify_addition, product_formula
from .operator import TruncatedRep, SpectralPoint, eigvec, operator_identity
from .classical import LimitScanConfig, LimitScanResult
from .protocol import EventHandler, SuiteLike
from .events import VerificationEvent
from .runner import VerificationRunner
from .suites import SuiteConfig

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
    "QLegendreError",
    "NonConvergence",
    "DomainError",
    "DegreeOutOfRange",
    "IllConditioned",
    "EigensolveFailure",
    "TruncationTooSmall",
    "DegenerateRatio",
    "QBase",
    "SeriesResult",
    "SeriesSpec",
    "QIntegralSpec",
    "BigQJacobiParams",
    "DualQKrawtchoukParams",
    "big_q_jacobi",
    "big_q_legendre",
    "VerificationReport",
    "VerificationRules",
    "DEFAULT_RULES",
    "AdditionParams",
    "verify_addition",
    "product_formula",
    "TruncatedRep",
    "SpectralPoint",
    "eigvec",
    "operator_identity",
    "LimitScanConfig",
    "LimitScanResult",
    "EventHandler",
    "SuiteLike",
    "VerificationEvent",
    "VerificationRunner",
    "SuiteConfig",
]

__pkg_name__ = "qlegendre"
__pkg_metadata__ = metadata(__pkg_name__)
__version__ = __pkg_metadata__["version"]
__description__ = __pkg_metadata__["summary"]
del __pkg_metadata__
