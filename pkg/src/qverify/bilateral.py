"""Bilateral and very-well-poised basic hypergeometric series.

Evaluation of two-sided series over the integers, their one-sided
specializations, and the closed product forms they sum to.  Convergence
domains are enforced before any term is computed: two-sided series live in
an annulus inner < |z| < 1, one-sided series in the unit disk.  The
very-well-poised factor (1 - a q^{2n})/(1 - a) is always applied directly,
never through the square-root parameter pair.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from . import kernels
from .errors import (
    NonConvergence,
    OutsideAnnulus,
    OutsideDisk,
    OutsideDomain,
    PoleInProduct,
    PoleInRange,
)
from .qcore import CNum, QBase, TruncationReceipt, as_qbase

ANNULUS_MARGIN = 1e-10
POLE_TOL = 1e-12

BILATERAL_KINDS = ("bilateral", "vwp-bilateral")
UNILATERAL_KINDS = ("unilateral", "vwp87")
_KINDS = BILATERAL_KINDS + UNILATERAL_KINDS

# Hard ceiling for the product-form two-sided sums; the q^{n^2} decay makes
# anything near this a sign of bad parameters, not slow convergence.
_THETA_CAP = 400


@dataclass(frozen=True)
class SeriesSpec:
    """One basic hypergeometric series, two-sided or one-sided.

    kind "bilateral": numerator and denominator lists of equal length r.
    kind "unilateral": r numerator and r-1 denominator parameters; the
    (q;q)_n factor is implicit.  The two vwp kinds additionally carry the
    special parameter in vwp_a and must have denominator[j] paired to
    q*vwp_a/numerator (checked at evaluation time, where the base is known).
    """

    numerator: Tuple[CNum, ...]
    denominator: Tuple[CNum, ...]
    argument: CNum
    kind: str = "bilateral"
    vwp_a: Optional[CNum] = None

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(v) for v in self.numerator))
        object.__setattr__(self, "denominator", tuple(complex(v) for v in self.denominator))
        object.__setattr__(self, "argument", complex(self.argument))
        if self.kind not in _KINDS:
            raise ValueError("unknown series kind %r" % (self.kind,))
        if not self.numerator:
            raise ValueError("series needs at least one numerator parameter")
        if self.kind in BILATERAL_KINDS:
            if len(self.numerator) != len(self.denominator):
                raise ValueError(
                    "two-sided series needs equal parameter counts, got %d/%d"
                    % (len(self.numerator), len(self.denominator))
                )
        else:
            if len(self.denominator) != len(self.numerator) - 1:
                raise ValueError(
                    "one-sided series needs r-1 denominator parameters, got %d/%d"
                    % (len(self.numerator), len(self.denominator))
                )
        is_vwp = self.kind in ("vwp87", "vwp-bilateral")
        if is_vwp and self.vwp_a is None:
            raise ValueError("kind %r requires vwp_a" % (self.kind,))
        if not is_vwp and self.vwp_a is not None:
            raise ValueError("vwp_a only makes sense for the vwp kinds")
        if self.vwp_a is not None:
            object.__setattr__(self, "vwp_a", complex(self.vwp_a))


@dataclass(frozen=True)
class AnnulusCheck:
    """Convergence-domain verdict for a series argument.

    inner is the lower convergence radius |b_1...b_r / a_1...a_r|; for the
    very-well-poised two-sided kind the pair factor shifts it down by q^-2.
    One-sided kinds have inner 0.  passes requires strict inequalities with
    an absolute margin of ANNULUS_MARGIN at both ends.
    """

    inner: float
    outer: float
    z_abs: float
    passes: bool


@dataclass(frozen=True)
class TwoTailReceipt:
    forward: TruncationReceipt
    backward: TruncationReceipt
    den_min: float
    annulus: AnnulusCheck


def annulus_of(spec: SeriesSpec, q) -> AnnulusCheck:
    qb = as_qbase(q)
    z_abs = abs(spec.argument)
    if spec.kind in UNILATERAL_KINDS:
        return AnnulusCheck(0.0, 1.0, z_abs, z_abs < 1.0 - ANNULUS_MARGIN)
    pnum = 1.0
    for v in spec.numerator:
        pnum *= abs(v)
    pden = 1.0
    for v in spec.denominator:
        pden *= abs(v)
    if pnum == 0.0:
        return AnnulusCheck(math.inf, 1.0, z_abs, False)
    inner = pden / pnum
    if spec.kind == "vwp-bilateral":
        inner /= qb.q * qb.q
    passes = inner + ANNULUS_MARGIN < z_abs < 1.0 - ANNULUS_MARGIN
    return AnnulusCheck(inner, 1.0, z_abs, passes)


def _check_vwp_pairing(spec: SeriesSpec, qb: QBase):
    if spec.vwp_a is None:
        return
    target = qb.q * spec.vwp_a
    if spec.kind == "vwp87":
        if abs(spec.numerator[0] - spec.vwp_a) > 1e-12 * (1.0 + abs(spec.vwp_a)):
            raise ValueError("vwp87 spec must lead with the special parameter")
        paired = zip(spec.denominator, spec.numerator[1:])
    else:
        paired = zip(spec.denominator, spec.numerator)
    for j, (d, n) in enumerate(paired):
        if abs(d * n - target) > 1e-9 * (1.0 + abs(target)):
            raise ValueError("vwp pairing broken at parameter %d" % j)


def rpsir_eval(spec: SeriesSpec, q, eps=None, max_terms=None):
    """Two-sided sum of spec over all integer indices.

    Returns (value, TwoTailReceipt).  Both tails are summed separately and
    each stops only after three consecutive terms fall below
    trunc_eps * max(1, |partial|); near-zero denominator Pochhammer factors
    abort with PoleInRange instead of producing a huge quotient.
    """
    qb = as_qbase(q)
    if spec.kind not in BILATERAL_KINDS:
        raise ValueError("rpsir_eval handles two-sided kinds; got %r" % (spec.kind,))
    _check_vwp_pairing(spec, qb)
    chk = annulus_of(spec, qb)
    if not chk.passes:
        raise OutsideAnnulus(
            "|z| = %.6g outside (%.6g, %.6g)" % (chk.z_abs, chk.inner, chk.outer)
        )
    e = qb.trunc_eps if eps is None else eps
    cap = qb.max_terms if max_terms is None else max_terms
    try:
        val, ft, bt, ftail, btail, conv, den_min = kernels.bilateral_sum(
            spec.numerator, spec.denominator, spec.argument, qb.q,
            vwp_a=spec.vwp_a, eps=e, max_terms=cap,
        )
    except FloatingPointError as exc:
        raise PoleInRange(str(exc)) from None
    if den_min < POLE_TOL:
        raise PoleInRange(
            "denominator factor within %.3g of zero in the summed range" % den_min
        )
    if not conv:
        raise NonConvergence(
            "two-sided sum used %d+%d terms without meeting the stopping rule" % (ft, bt)
        )
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise NonConvergence("two-sided sum produced a non-finite value")
    receipt = TwoTailReceipt(
        forward=TruncationReceipt(ft, ftail, conv),
        backward=TruncationReceipt(bt, btail, conv),
        den_min=den_min,
        annulus=chk,
    )
    return val, receipt


def rphis_eval(spec: SeriesSpec, q, eps=None, max_terms=None):
    """One-sided sum from index 0 with the implicit (q;q)_n factor."""
    qb = as_qbase(q)
    if spec.kind not in UNILATERAL_KINDS:
        raise ValueError("rphis_eval handles one-sided kinds; got %r" % (spec.kind,))
    _check_vwp_pairing(spec, qb)
    if abs(spec.argument) >= 1.0 - ANNULUS_MARGIN:
        raise OutsideDisk("|z| = %.6g not inside the unit disk" % abs(spec.argument))
    e = qb.trunc_eps if eps is None else eps
    cap = qb.max_terms if max_terms is None else max_terms
    try:
        val, terms, tail, conv, den_min = kernels.unilateral_sum(
            spec.numerator, spec.denominator, spec.argument, qb.q,
            vwp_a=spec.vwp_a, eps=e, max_terms=cap,
        )
    except FloatingPointError as exc:
        raise PoleInRange(str(exc)) from None
    if den_min < POLE_TOL:
        raise PoleInRange(
            "denominator factor within %.3g of zero in the summed range" % den_min
        )
    if not conv:
        raise NonConvergence("one-sided sum hit the %d-term cap" % cap)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise NonConvergence("one-sided sum produced a non-finite value")
    return val, TruncationReceipt(terms, tail, conv)


def w87_eval(a, b, c, d, e, f, z, q, eps=None, max_terms=None):
    """Very-well-poised one-sided series with special parameter a.

    Numerators (a, b, c, d, e, f), denominators qa/b ... qa/f, the implicit
    (q;q)_n, and the direct (1 - a q^{2n})/(1 - a) factor.
    """
    qb = as_qbase(q)
    aq = qb.q * complex(a)
    spec = SeriesSpec(
        numerator=(a, b, c, d, e, f),
        denominator=(aq / b, aq / c, aq / d, aq / e, aq / f),
        argument=z,
        kind="vwp87",
        vwp_a=a,
    )
    return rphis_eval(spec, qb, eps=eps, max_terms=max_terms)


def _ratio(nums, dens, qb: QBase, err=PoleInProduct) -> CNum:
    """Assembled ratio of infinite products with pole detection."""
    try:
        mant, e2, _terms, _tail, conv, den_min = kernels.qpoch_ratio_scaled(
            tuple(nums), tuple(dens), qb.q, qb.trunc_eps, qb.max_terms
        )
    except FloatingPointError as exc:
        raise err(str(exc)) from None
    if den_min < POLE_TOL:
        raise err("infinite product within %.3g of a zero denominator" % den_min)
    if not conv:
        raise NonConvergence("product ratio did not converge")
    return kernels.assemble(mant, e2, 0j)


def ramanujan_1psi1_rhs(a, b, z, q) -> CNum:
    """Product side of the 1psi1 sum: (q,b/a,az,q/az)_inf / (b,q/a,z,b/az)_inf."""
    qb = as_qbase(q)
    a = complex(a)
    b = complex(b)
    z = complex(z)
    if a == 0 or z == 0:
        raise OutsideAnnulus("a and z must be nonzero")
    inner = abs(b / a)
    if not (inner + ANNULUS_MARGIN < abs(z) < 1.0 - ANNULUS_MARGIN):
        raise OutsideAnnulus(
            "|z| = %.6g outside (%.6g, 1)" % (abs(z), inner)
        )
    qq = qb.q
    return _ratio(
        (qq, b / a, a * z, qq / (a * z)),
        (b, qq / a, z, b / (a * z)),
        qb,
    )


def bailey_6psi6_rhs(a, b, c, d, e, q) -> CNum:
    """Product side of the very-well-poised 6psi6 sum at z = q a^2/(bcde)."""
    qb = as_qbase(q)
    a, b, c, d, e = (complex(v) for v in (a, b, c, d, e))
    qq = qb.q
    z = qq * a * a / (b * c * d * e)
    if abs(z) >= 1.0 - ANNULUS_MARGIN:
        raise OutsideDomain("|qa^2/bcde| = %.6g not inside the unit disk" % abs(z))
    aq = a * qq
    return _ratio(
        (qq, aq, qq / a, aq / (b * c), aq / (b * d), aq / (b * e),
         aq / (c * d), aq / (c * e), aq / (d * e)),
        (qq / b, qq / c, qq / d, qq / e, aq / b, aq / c, aq / d, aq / e, z),
        qb,
    )


def psi22_twoterm_residual(a, b, c, d, alpha, q) -> float:
    """Relative residual of the two-term 2psi2 evaluation.

    LHS is 2psi2(a,b;c,d) minus (alpha/q) times a product factor times the
    alpha-shifted 2psi2, both at argument cd/(abq); RHS is the closed
    product.  alpha is an explicit input, never auto-chosen.
    """
    qb = as_qbase(q)
    a, b, c, d, alpha = (complex(v) for v in (a, b, c, d, alpha))
    qq = qb.q
    z2 = c * d / (a * b * qq)
    psi_a, _r1 = rpsir_eval(SeriesSpec((a, b), (c, d), z2), qb)
    psi_b, _r2 = rpsir_eval(
        SeriesSpec((a * qq / alpha, b * qq / alpha), (c * qq / alpha, d * qq / alpha), z2),
        qb,
    )
    pref = (alpha / qq) * _ratio(
        (qq / c, qq / d, alpha / a, alpha / b),
        (qq / a, qq / b, alpha / c, alpha / d),
        qb,
    )
    rhs = _ratio(
        (alpha, qq / alpha, c * d / (alpha * qq), alpha * qq * qq / (c * d),
         qq, c / a, c / b, d / a, d / b),
        (c / alpha, alpha * qq / c, d / alpha, alpha * qq / d,
         c, d, qq / a, qq / b, z2),
        qb,
    )
    lhs = psi_a - pref * psi_b
    return abs(lhs - rhs) / abs(rhs)


def wellpoised_2psi2_rhs(a, b, c, q) -> CNum:
    """Closed form of the well-poised product-term sum.

    (aq/bc;q)_inf/(-aq/bc;q)_inf times (q^2, aq, q/a, aq^2/b^2, aq^2/c^2)
    taken as base-q^2 products.
    """
    qb = as_qbase(q)
    a, b, c = complex(a), complex(b), complex(c)
    qq = qb.q
    zz = a * qq / (b * c)
    if abs(zz) >= 1.0 - ANNULUS_MARGIN:
        raise OutsideDomain("|aq/bc| = %.6g not inside the unit disk" % abs(zz))
    head = _ratio((zz,), (-zz,), qb)
    q2base = QBase(qq * qq, qb.trunc_eps, qb.max_terms)
    tail = _ratio(
        (qq * qq, a * qq, qq / a, a * qq * qq / (b * b), a * qq * qq / (c * c)),
        (),
        q2base,
    )
    return head * tail


def wellpoised_theta_sum(a, b, c, q, eps=None, max_terms=None):
    """Direct two-sided sum of the product-form terms.

    term(n) = (aq^{n+1}/b, aq^{n+1}/c, q^{1-n}/b, q^{1-n}/c; q)_inf
              * a^n (-1)^n q^{n^2}
    Terms are built in scaled mantissa/exponent form so the huge mid-range
    products cancel against a^n q^{n^2} without overflow.
    """
    qb = as_qbase(q)
    a, b, c = complex(a), complex(b), complex(c)
    qq = qb.q
    zz = a * qq / (b * c)
    if abs(zz) >= 1.0 - ANNULUS_MARGIN:
        raise OutsideDomain("|aq/bc| = %.6g not inside the unit disk" % abs(zz))
    e = qb.trunc_eps if eps is None else eps
    cap = max_terms if max_terms is not None else _THETA_CAP
    la = cmath.log(a)
    lq = math.log(qq)
    den_min = math.inf

    def term(n):
        nonlocal den_min
        qn1 = qq ** (n + 1)
        qmn = qq ** (1 - n)
        mant, e2, _t, _tl, conv, dmin = kernels.qpoch_ratio_scaled(
            (a * qn1 / b, a * qn1 / c, qmn / b, qmn / c), (), qq,
            e, qb.max_terms,
        )
        if dmin < den_min:
            den_min = dmin
        if not conv:
            raise NonConvergence("product factor did not converge at index %d" % n)
        sign = -1.0 if n % 2 else 1.0
        return sign * kernels.assemble(mant, e2, n * la + n * n * lq)

    def one_tail(step):
        total = 0j
        consec = 0
        n = 0 if step > 0 else -1
        used = 0
        last = 0.0
        while used < cap:
            t = term(n)
            total += t
            used += 1
            last = abs(t)
            if last <= e * max(1.0, abs(total)):
                consec += 1
                if consec >= 3:
                    return total, used, last, True
            else:
                consec = 0
            n += step
        return total, used, last, False

    fwd, fused, ftail, fok = one_tail(+1)
    bwd, bused, btail, bok = one_tail(-1)
    if not (fok and bok):
        raise NonConvergence("product-form sum hit the %d-term cap" % cap)
    chk = AnnulusCheck(0.0, 1.0, abs(zz), True)
    receipt = TwoTailReceipt(
        forward=TruncationReceipt(fused, ftail, fok),
        backward=TruncationReceipt(bused, btail, bok),
        den_min=den_min,
        annulus=chk,
    )
    return fwd + bwd, receipt


def w65_product(a, b, c, d, q) -> CNum:
    """Closed product for the summable very-well-poised one-sided case.

    Equals the vwp87-style series with numerators (a,b,c,d) at argument
    aq/(bcd): (aq, aq/bc, aq/bd, aq/cd)_inf / (aq/b, aq/c, aq/d, aq/bcd)_inf.
    """
    qb = as_qbase(q)
    a, b, c, d = (complex(v) for v in (a, b, c, d))
    aq = a * qb.q
    z = aq / (b * c * d)
    if abs(z) >= 1.0 - ANNULUS_MARGIN:
        raise OutsideDomain("|aq/bcd| = %.6g not inside the unit disk" % abs(z))
    return _ratio(
        (aq, aq / (b * c), aq / (b * d), aq / (c * d)),
        (aq / b, aq / c, aq / d, z),
        qb,
    )
