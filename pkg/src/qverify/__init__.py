"""Numerical verification of basic hypergeometric summation and integral identities."""

from .errors import (NonConvergence, OutsideAnnulus, PoleAtNegativeIndex,
                     PoleAtNonpositiveInteger, PoleInRange, QVerifyError,
                     SamplerStarved)
from .identities import (IdentityRecord, LimitReport, ParameterPoint,
                         PeriodicWeight, VerificationReport, WEIGHT_COS,
                         WEIGHT_ONE, WEIGHT_SIN, WEIGHT_SIN_COS, limit_check,
                         sample_domain, verify)
from .qcore import QBase, qgamma, qpoch_fin, qpoch_general_index, qpoch_inf
from .registry import registry

__version__ = "0.1.0"

__all__ = [
    "IdentityRecord",
    "LimitReport",
    "NonConvergence",
    "OutsideAnnulus",
    "ParameterPoint",
    "PeriodicWeight",
    "PoleAtNegativeIndex",
    "PoleAtNonpositiveInteger",
    "PoleInRange",
    "QBase",
    "QVerifyError",
    "SamplerStarved",
    "VerificationReport",
    "WEIGHT_COS",
    "WEIGHT_ONE",
    "WEIGHT_SIN",
    "WEIGHT_SIN_COS",
    "limit_check",
    "qgamma",
    "qpoch_fin",
    "qpoch_general_index",
    "qpoch_inf",
    "registry",
    "sample_domain",
    "verify",
]
