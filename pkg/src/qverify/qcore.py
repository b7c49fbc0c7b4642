"""Scalar q-special-function layer.

Infinite and finite q-shifted factorials, the q-gamma function, the
quadratic h-product, and the two Jackson q-Bessel kinds.  Every operation
returns (value, TruncationReceipt) and raises a typed error instead of
letting a NaN or Inf escape.
"""

import cmath
import math
import operator
from dataclasses import dataclass

from . import kernels
from .errors import (
    BranchAmbiguity,
    NonConvergence,
    PoleAtNegativeIndex,
    PoleAtNonpositiveInteger,
    QVerifyError,
)

CNum = complex

_ZERO_TOL = 1e-14


@dataclass(frozen=True)
class QBase:
    """Base of the q-calculus together with truncation policy."""

    q: float
    trunc_eps: float = 1e-15
    max_terms: int = 100000

    def __post_init__(self):
        if isinstance(self.q, complex):
            raise ValueError("base q must be real; complex bases are not supported")
        q = float(self.q)
        if not 0.0 < q < 1.0:
            raise ValueError("base q must satisfy 0 < q < 1")
        if not self.trunc_eps > 0.0:
            raise ValueError("trunc_eps must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


@dataclass(frozen=True)
class TruncationReceipt:
    terms_used: int
    tail_bound: float
    converged: bool
    # L1 mass of the summed terms; roundoff in the reported value scales
    # with this rather than with the value itself when terms cancel.
    l1_mass: float = 0.0


def as_qbase(q):
    if isinstance(q, QBase):
        return q
    if isinstance(q, complex):
        raise ValueError("base q must be real; complex bases are not supported")
    return QBase(float(q))


def _ensure_finite(value, what):
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NonConvergence("%s produced a non-finite value" % what)
    return value


def qpoch_inf(a, q):
    """(a; q)_infinity."""
    qb = as_qbase(q)
    val, terms, tail, conv, _zero = kernels.qpoch_one(
        complex(a), qb.q, qb.trunc_eps, qb.max_terms
    )
    if not conv:
        raise NonConvergence("infinite q-product did not settle within max_terms")
    return _ensure_finite(val, "qpoch_inf"), TruncationReceipt(terms, tail, conv)


def qpoch_fin(a, q, n):
    """(a; q)_n for a signed integer index.

    Negative index uses (a;q)_{-m} = 1 / prod_{k=1..m} (1 - a q^{-k}); a
    vanishing factor there is a pole of the symbol.
    """
    qb = as_qbase(q)
    a = complex(a)
    n = operator.index(n)
    if n >= 0:
        p = 1.0 + 0j
        cur = a
        for _ in range(n):
            p *= 1.0 - cur
            cur *= qb.q
        return _ensure_finite(p, "qpoch_fin"), TruncationReceipt(n, 0.0, True)
    den = 1.0 + 0j
    cur = a
    for _ in range(-n):
        cur /= qb.q
        f = 1.0 - cur
        if abs(f) < _ZERO_TOL * (1.0 + abs(cur)):
            raise PoleAtNegativeIndex(
                "(a;q)_n with n = %d hits a vanishing factor" % n
            )
        den *= f
    return _ensure_finite(1.0 / den, "qpoch_fin"), TruncationReceipt(-n, 0.0, True)


def qpoch_multi(params, q, n=None):
    """Product of q-shifted factorials sharing index and base.

    n = None means the infinite symbol for every parameter.  Errors are
    re-raised with the offending parameter position prepended.
    """
    qb = as_qbase(q)
    total = 1.0 + 0j
    terms = 0
    tail = 0.0
    conv = True
    for idx, a in enumerate(params):
        try:
            if n is None:
                v, r = qpoch_inf(a, qb)
            else:
                v, r = qpoch_fin(a, qb, n)
        except QVerifyError as exc:
            raise type(exc)("parameter %d: %s" % (idx, exc)) from exc
        total *= v
        terms += r.terms_used
        tail = max(tail, r.tail_bound)
        conv = conv and r.converged
    return _ensure_finite(total, "qpoch_multi"), TruncationReceipt(terms, tail, conv)


def qpoch_general_index(a, q, lam):
    """(a; q)_lambda = (a;q)_inf / (a q^lambda; q)_inf with principal q^lambda.

    Computed as an interleaved ratio so bases close to 1 (where either
    product alone leaves double range) still evaluate.
    """
    qb = as_qbase(q)
    a = complex(a)
    qlam = cmath.exp(complex(lam) * math.log(qb.q))
    try:
        mant, e2, terms, tail, conv, den_min = kernels.qpoch_ratio_scaled(
            (a,), (a * qlam,), qb.q, qb.trunc_eps, qb.max_terms
        )
    except FloatingPointError:
        raise PoleAtNegativeIndex(
            "(a q^lambda; q)_inf vanishes; general-index symbol has a pole"
        ) from None
    if den_min < 1e-12:
        raise PoleAtNegativeIndex(
            "(a q^lambda; q)_inf vanishes to working precision"
        )
    if not conv:
        raise NonConvergence("general-index q-product did not settle")
    val = kernels.assemble(mant, e2, 0j)
    return _ensure_finite(val, "qpoch_general_index"), TruncationReceipt(
        terms, tail, True
    )


def qgamma(x, q):
    """Gamma_q(x) = (q;q)_inf (1-q)^{1-x} / (q^x;q)_inf.

    The two products are interleaved (their ratio stays in range for q
    close to 1 where each alone underflows) and the power term is folded in
    through the log-space assembler.
    """
    qb = as_qbase(q)
    x = complex(x)
    qx = cmath.exp(x * math.log(qb.q))
    try:
        mant, e2, terms, tail, conv, den_min = kernels.qpoch_ratio_scaled(
            (complex(qb.q),), (qx,), qb.q, qb.trunc_eps, qb.max_terms
        )
    except FloatingPointError:
        raise PoleAtNonpositiveInteger(
            "q-gamma pole: argument is a nonpositive integer to working precision"
        ) from None
    if den_min < 1e-12:
        raise PoleAtNonpositiveInteger(
            "q-gamma pole: argument is a nonpositive integer to working precision"
        )
    if not conv:
        raise NonConvergence("q-gamma products did not settle")
    val = kernels.assemble(mant, e2, (1.0 - x) * math.log(1.0 - qb.q))
    return _ensure_finite(val, "qgamma"), TruncationReceipt(terms, tail, True)


def h_product(x, a, q):
    """h(x; a) = prod_{n>=0} (1 - 2 a x q^n + a^2 q^{2n}), x real.

    a may be a single parameter or a sequence (the multi-parameter form is
    the product of the single ones).
    """
    if isinstance(x, complex):
        if abs(x.imag) > _ZERO_TOL * (1.0 + abs(x.real)):
            raise ValueError("h_product is defined for real x")
        x = x.real
    x = float(x)
    qb = as_qbase(q)
    if hasattr(a, "__iter__"):
        total = 1.0 + 0j
        terms = 0
        tail = 0.0
        conv = True
        for one in a:
            v, r = h_product(x, one, qb)
            total *= v
            terms += r.terms_used
            tail = max(tail, r.tail_bound)
            conv = conv and r.converged
        return _ensure_finite(total, "h_product"), TruncationReceipt(
            terms, tail, conv
        )
    av = complex(a)
    p = 1.0 + 0j
    cur = av
    cur2 = av * av
    k = 0
    one_m_q = 1.0 - qb.q
    guard = -1
    q2 = qb.q * qb.q
    while k < qb.max_terms:
        p *= 1.0 - 2.0 * cur * x + cur2
        cur *= qb.q
        cur2 *= q2
        k += 1
        bound = (2.0 * abs(cur) * abs(x) + abs(cur2)) / one_m_q
        if guard > 0:
            guard -= 1
            if guard == 0:
                return _ensure_finite(p, "h_product"), TruncationReceipt(
                    k, bound, True
                )
        elif guard < 0 and bound < qb.trunc_eps:
            guard = 3
    raise NonConvergence("h-product did not settle within max_terms")


def _qbessel(nu, x, q, kind):
    qb = as_qbase(q)
    nu = complex(nu)
    x = complex(x)
    lnq = math.log(qb.q)
    nu_int = abs(nu.imag) < _ZERO_TOL and abs(nu.real - round(nu.real)) < _ZERO_TOL
    if x.real < 0.0 and abs(x.imag) <= _ZERO_TOL * abs(x.real) and not nu_int:
        raise BranchAmbiguity(
            "q-Bessel of non-integer order on the negative real axis: "
            "principal branch would be an arbitrary choice"
        )
    if x == 0:
        if nu == 0:
            return 1.0 + 0j, TruncationReceipt(0, 0.0, True)
        if nu.real > 0:
            return 0j, TruncationReceipt(0, 0.0, True)
        raise ValueError("q-Bessel power factor diverges at x = 0 for Re nu <= 0")
    half = x / 2.0
    x24 = half * half
    if kind == 1 and abs(x24) >= 1.0:
        raise NonConvergence("kind-1 q-Bessel series needs |x/2| < 1")
    qnu1 = cmath.exp((nu + 1.0) * lnq)
    mant, e2, hterms, _htail, hconv, _dmin = kernels.qpoch_ratio_scaled(
        (qnu1,), (complex(qb.q),), qb.q, qb.trunc_eps, qb.max_terms
    )
    head = kernels.assemble(mant, e2, 0j)
    t = 1.0 + 0j
    s = 1.0 + 0j
    m = 0
    consec = 0
    conv = False
    qm = 1.0
    try:
        while m < qb.max_terms:
            qmp = qm
            m += 1
            qm *= qb.q
            fac = 1.0 - cmath.exp((nu + m) * lnq)
            if fac == 0:
                raise FloatingPointError
            t *= -x24 / ((1.0 - qm) * fac)
            if kind == 2:
                t *= cmath.exp((nu + m) * lnq) * qmp
            s += t
            mag = abs(t)
            if mag <= qb.trunc_eps * max(1.0, abs(s)):
                consec += 1
                if consec >= 3:
                    conv = True
                    break
            else:
                consec = 0
    except (FloatingPointError, ZeroDivisionError):
        raise PoleAtNonpositiveInteger(
            "q-Bessel series factor vanished (order at a negative integer)"
        ) from None
    if not (conv and hconv):
        raise NonConvergence("q-Bessel series did not settle within max_terms")
    power = cmath.exp(nu * cmath.log(half)) if nu != 0 else 1.0 + 0j
    val = head * s * power
    return _ensure_finite(val, "qbessel"), TruncationReceipt(
        hterms + m, abs(t), True
    )


def qbessel_j1(nu, x, q):
    """Jackson q-Bessel, first kind."""
    return _qbessel(nu, x, q, 1)


def qbessel_j2(nu, x, q):
    """Jackson q-Bessel, second kind (entire in x)."""
    return _qbessel(nu, x, q, 2)
