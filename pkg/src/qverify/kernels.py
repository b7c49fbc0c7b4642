"""Kernel backend dispatch.

The compiled extension is preferred under the default "double" profile and
the pure-Python module is both the fallback and the "pure" profile.  All
callers go through the thin wrappers here so the backend can be rebound at
runtime (precision.set_profile) without re-importing the world.
"""

import math

from . import _kernels_py
from . import precision

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_impl = _kernels_py
_backend = "pure"


def rebind(profile=None):
    global _impl, _backend
    prof = precision.resolve_profile(profile)
    if prof == "double" and _compiled is not None:
        _impl = _compiled
        _backend = "compiled"
    else:
        _impl = _kernels_py
        _backend = "pure"


def backend_name():
    return _backend


def available_backends():
    names = ["pure"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def qpoch_one(a, q, eps, max_terms):
    return _impl.qpoch_one(a, q, eps, max_terms)


def qpoch_ratio_scaled(nums, dens, q, eps, max_terms):
    return _impl.qpoch_ratio_scaled(nums, dens, q, eps, max_terms)


def qpoch_ratio(nums, dens, q, eps, max_terms):
    """Assembled convenience wrapper: plain complex value of the ratio."""
    mant, e2, terms, tail, conv, den_min = _impl.qpoch_ratio_scaled(
        nums, dens, q, eps, max_terms
    )
    return _impl.assemble(mant, e2, 0j), terms, tail, conv, den_min


def assemble(mant, exp2, logf):
    return _impl.assemble(mant, exp2, logf)


def bilateral_sum(nums, dens, z, q, vwp_a=None, eps=1e-15, max_terms=100000):
    use = 0 if vwp_a is None else 1
    return _impl.bilateral_sum(
        nums, dens, z, q, vwp_a if use else 0j, use, eps, max_terms
    )


def unilateral_sum(nums, dens, z, q, vwp_a=None, eps=1e-15, max_terms=100000):
    use = 0 if vwp_a is None else 1
    return _impl.unilateral_sum(
        nums, dens, z, q, vwp_a if use else 0j, use, eps, max_terms
    )


def jn_weighted_scaled(nu, wexp, x24, q, kind, eps=1e-15, max_terms=100000):
    return _impl.jn_weighted_scaled(nu, wexp, x24, q, kind, eps, max_terms)


LN2 = math.log(2.0)

rebind()
