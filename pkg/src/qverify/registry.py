"""Catalogue of verifiable identities.

Each entry pairs two independent evaluation routes for the same quantity:
a series or quadrature on one side, a closed product / q-gamma / hypergeometric
expression on the other.  Samplers draw admissible parameter points
modulus-first so the constraint predicates reject almost nothing.
"""

import cmath
import math

from . import bilateral as bl
from . import foldquad as fq
from . import kernels
from .bilateral import POLE_TOL, SeriesSpec
from .errors import NonConvergence, PoleInRange
from .foldquad import IntegrandHandle, QuadratureConfig
from .identities import (
    IdentityRecord, ParameterPoint, receipt_dict,
)
from .qcore import QBase, qgamma, qpoch_general_index


def _qg(x, qb):
    """Value of Gamma_q, receipt dropped."""
    return qgamma(x, qb)[0]

TWO_PI_I = 2j * math.pi

# argument margin keeping product denominators off the positive real axis,
# where (x;q)_oo zeros live
ARG_MARGIN = 2e-3
# spec'd argument margin for the eta-kernel quartet integral
ETA_ARG_MARGIN = 1e-3


def _prod(qb, nums, dens=()):
    """Ratio of infinite q-Pochhammer products, assembled in log space."""
    return bl._ratio(tuple(complex(v) for v in nums),
                     tuple(complex(v) for v in dens), qb)


def _hterm(qb, nums, dens, logf):
    """Scaled product ratio times exp(logf); the fold-integrand workhorse."""
    mant, e2, _terms, _tail, conv, dmin = kernels.qpoch_ratio_scaled(
        tuple(nums), tuple(dens), qb.q, qb.trunc_eps, qb.max_terms)
    if dmin < POLE_TOL:
        raise PoleInRange("denominator product within %g of a zero" % POLE_TOL)
    if not conv:
        raise NonConvergence("product ratio did not converge")
    return kernels.assemble(mant, e2, logf)


def _line(f, decay="exponential", cfg=None):
    val, diag = fq.integrate_line(IntegrandHandle(f, decay), cfg)
    return val, {"quad": receipt_dict(diag)}


def _cell(f, cfg=None):
    val, diag = fq.integrate_cell(f, cfg)
    return val, {"quad": receipt_dict(diag)}


def _wint(w, cfg=None):
    """Unit-cell integral of the free weight."""
    val, _ = fq.integrate_cell(lambda x: complex(w(x)), cfg)
    return val


def _cu(rng, mlo, mhi, alo=-math.pi, ahi=math.pi):
    return cmath.rect(rng.uniform(mlo, mhi), rng.uniform(alo, ahi))


def _band(rng, re_lo, re_hi, im=0.25):
    return complex(rng.uniform(re_lo, re_hi), rng.uniform(-im, im))


def _decay_floor(q, base=0.2):
    """Smallest exponent whose fold window stays well under the cap.

    The two-sided fold cuts at roughly 37/(s * ln(1/q)) shifts for a rate
    q^s; keep that under ~700 with some slack.
    """
    return min(0.8, max(base, 0.062 / math.log(1.0 / q)))


def _off_real(v, margin=ARG_MARGIN):
    return abs(cmath.phase(complex(v))) > margin


def _phase_in(rng, lo, hi):
    s = 1.0 if rng.random() < 0.5 else -1.0
    return s * rng.uniform(lo, hi)


def _tr(receipt):
    return receipt_dict(receipt)


# absolute noise floor of a few-hundred-term summation whose largest term
# has modulus one (per-term roundoff accumulates as a short random walk)
_SERIES_NOISE = 1.5e-15


def _series_mass(spec, qb, cap=500):
    """Sum of term magnitudes the series walks through.

    A magnitude-only replay of the term recurrence, both directions for
    bilateral kinds.  The mass fixes the summation noise floor: every
    term carries relative roundoff, so the sum's absolute error scales
    with sum |t_n| no matter how small the total comes out.
    """
    q = qb.q
    w = spec.argument
    a = spec.vwp_a
    mass = 1.0
    peak = 1.0
    t = 1.0 + 0j
    qn = 1.0
    for _ in range(1, cap):
        r = w
        for x in spec.numerator:
            r *= 1.0 - x * qn
        for x in spec.denominator:
            r /= 1.0 - x * qn
        if spec.kind == "unilateral":
            r /= 1.0 - q * qn
        if a is not None:
            r *= (1.0 - a * qn * qn * q * q) / (1.0 - a * qn * qn)
        t *= r
        m = abs(t)
        mass += m
        if m > peak:
            peak = m
        qn *= q
        if m < 1e-6 * peak:
            break
    if spec.kind not in ("bilateral", "vwp-bilateral"):
        return mass
    t = 1.0 + 0j
    peak = 1.0
    bq = 1.0
    for _ in range(1, cap):
        bq *= q
        r = 1.0 / w
        for x in spec.denominator:
            r *= bq - x
        for x in spec.numerator:
            r /= bq - x
        if a is not None:
            r *= (bq * bq - a) / (bq * bq - a * q * q)
        t *= r
        m = abs(t)
        mass += m
        if m > peak:
            peak = m
        if m < 1e-6 * peak:
            break
    return mass


def _sum_resolvable(qb, value, tol, specs, scales=None):
    """Can direct summation certify the closed value at this tolerance?

    Compares |value| against the noise floor set by the term mass of
    each contributing series (rescaled by the prefactor it enters the
    verified combination with), keeping a factor-three margin under the
    tolerance.
    """
    floor = 3.0 * _SERIES_NOISE / tol
    mass = 1.0
    for i, spec in enumerate(specs):
        sc = 1.0 if scales is None else abs(scales[i])
        m = sc * _series_mass(spec, qb)
        if m > mass:
            mass = m
    return abs(complex(value)) >= floor * mass


# ---------------------------------------------------------------------------
# bilateral / unilateral series records


def _rec_1psi1():
    def lhs(pt, w):
        spec = SeriesSpec((pt.a,), (pt.b,), pt.z)
        val, tt = bl.rpsir_eval(spec, pt.q)
        return val, _tr(tt)

    def rhs(pt, w):
        return bl.ramanujan_1psi1_rhs(pt.a, pt.b, pt.z, pt.q), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        z = _cu(rng, 0.3, 0.85)
        a = _cu(rng, 0.5, 2.0)
        b = a * _cu(rng, 0.02 * abs(z), 0.8 * abs(z))
        return ParameterPoint(q=QBase(q), a=a, b=b, z=z)

    return IdentityRecord(
        id="ramanujan-1psi1-1.16",
        reference="Ramanujan 1psi1 sum, product form",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "z")),
            ("annulus", lambda pt:
                abs(pt.b / pt.a) + 1e-10 < abs(pt.z) < 1.0 - 1e-10),
            ("resolvable-scale", lambda pt: _sum_resolvable(
                pt.q, bl.ramanujan_1psi1_rhs(pt.a, pt.b, pt.z, pt.q), 1e-10,
                (SeriesSpec((pt.a,), (pt.b,), pt.z),))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-10,
    )


def _rec_qgauss():
    def lhs(pt, w):
        z = pt.c / (pt.a * pt.b)
        spec = SeriesSpec((pt.a, pt.b), (pt.c,), z, kind="unilateral")
        val, tr = bl.rphis_eval(spec, pt.q)
        return val, _tr(tr)

    def rhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        return _prod(pt.q, (c / a, c / b), (c, c / (a * b))), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        a = _cu(rng, 0.6, 1.6)
        b = _cu(rng, 0.6, 1.6)
        c = a * b * _cu(rng, 0.05, 0.8)
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c)

    return IdentityRecord(
        id="qgauss-1.17",
        reference="q-Gauss sum at the natural argument",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c")),
            ("disk", lambda pt: abs(pt.c / (pt.a * pt.b)) < 1.0 - 1e-10),
            ("resolvable-scale", lambda pt: _sum_resolvable(
                pt.q, _prod(pt.q, (pt.c / pt.a, pt.c / pt.b),
                            (pt.c, pt.c / (pt.a * pt.b))), 1e-10,
                (SeriesSpec((pt.a, pt.b), (pt.c,), pt.c / (pt.a * pt.b),
                            kind="unilateral"),))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-10,
    )


def _c18_prefactor(pt):
    a, b, c, d, al = pt.a, pt.b, pt.c, pt.d, pt.alpha
    qb = pt.q
    q = qb.q
    return (al / q) * _prod(
        qb, (q / c, q / d, al / a, al / b),
        (q / a, q / b, al / c, al / d))


def _c18_specs(pt):
    a, b, c, d, al = pt.a, pt.b, pt.c, pt.d, pt.alpha
    q = pt.q.q
    z2 = c * d / (a * b * q)
    return (SeriesSpec((a, b), (c, d), z2),
            SeriesSpec((a * q / al, b * q / al),
                       (c * q / al, d * q / al), z2))


def _c18_product(pt):
    a, b, c, d, al = pt.a, pt.b, pt.c, pt.d, pt.alpha
    qb = pt.q
    q = qb.q
    z2 = c * d / (a * b * q)
    return _prod(
        qb,
        (al, q / al, c * d / (al * q), al * q * q / (c * d),
         q, c / a, c / b, d / a, d / b),
        (c / al, al * q / c, d / al, al * q / d,
         c, d, q / a, q / b, z2))


def _rec_2psi2():
    def lhs(pt, w):
        spec_a, spec_b = _c18_specs(pt)
        va, ta = bl.rpsir_eval(spec_a, pt.q)
        vb, tb = bl.rpsir_eval(spec_b, pt.q)
        return va - _c18_prefactor(pt) * vb, \
            {"first": _tr(ta), "shifted": _tr(tb)}

    def rhs(pt, w):
        return _c18_product(pt), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        a = _cu(rng, 0.9, 1.5)
        b = _cu(rng, 0.9, 1.5)
        z2 = _cu(rng, 0.06, 0.75)
        cd = z2 * a * b * q
        r = math.sqrt(abs(cd))
        c = _cu(rng, 0.6 * r, 1.4 * r)
        d = cd / c
        alpha = cmath.rect(rng.uniform(0.5, 2.0),
                           rng.uniform(0.07, math.pi - 0.07))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, alpha=alpha)

    return IdentityRecord(
        id="psi22-twoterm-1.18",
        reference="two-term 2psi2 contiguous relation with free shift",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "alpha")),
            ("annulus", lambda pt:
                abs(pt.c * pt.d / (pt.a * pt.b)) + 1e-9
                < abs(pt.c * pt.d / (pt.a * pt.b * pt.q.q))
                < 1.0 - 1e-6),
            ("shift-window", lambda pt:
                0.4 <= abs(pt.alpha) <= 2.2
                and 0.0 < cmath.phase(pt.alpha) < math.pi),
            ("resolvable-scale", lambda pt: _sum_resolvable(
                pt.q, _c18_product(pt), 1e-9, _c18_specs(pt),
                scales=(1.0, _c18_prefactor(pt)))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-9,
    )


def _rec_6psi6():
    def lhs(pt, w):
        a, b, c, d, e = pt.a, pt.b, pt.c, pt.d, pt.e
        qb = pt.q
        q = qb.q
        z = q * a * a / (b * c * d * e)
        spec = SeriesSpec(
            (b, c, d, e),
            (a * q / b, a * q / c, a * q / d, a * q / e),
            z, kind="vwp-bilateral", vwp_a=a)
        val, tt = bl.rpsir_eval(spec, qb)
        return val, _tr(tt)

    def rhs(pt, w):
        return bl.bailey_6psi6_rhs(pt.a, pt.b, pt.c, pt.d, pt.e, pt.q), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        a = _cu(rng, 0.7, 1.2)
        zt = _cu(rng, 0.02, 0.8)
        b = _cu(rng, 0.8, 1.5)
        c = _cu(rng, 0.8, 1.5)
        d = _cu(rng, 0.8, 1.5)
        e = q * a * a / (zt * b * c * d)
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e)

    return IdentityRecord(
        id="bailey-6psi6-1.20",
        reference="Bailey very-well-poised 6psi6 sum, product form",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "e")),
            ("argument", lambda pt:
                1e-4 < abs(pt.q.q * pt.a ** 2 / (pt.b * pt.c * pt.d * pt.e))
                < 1.0 - 1e-10),
            ("resolvable-scale", lambda pt: _sum_resolvable(
                pt.q,
                bl.bailey_6psi6_rhs(pt.a, pt.b, pt.c, pt.d, pt.e, pt.q),
                1e-9,
                (SeriesSpec(
                    (pt.b, pt.c, pt.d, pt.e),
                    (pt.a * pt.q.q / pt.b, pt.a * pt.q.q / pt.c,
                     pt.a * pt.q.q / pt.d, pt.a * pt.q.q / pt.e),
                    pt.q.q * pt.a ** 2 / (pt.b * pt.c * pt.d * pt.e),
                    kind="vwp-bilateral", vwp_a=pt.a),))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-9,
    )


def _rec_wp2psi2():
    def lhs(pt, w):
        val, tt = bl.wellpoised_theta_sum(pt.a, pt.b, pt.c, pt.q)
        return val, _tr(tt)

    def rhs(pt, w):
        return bl.wellpoised_2psi2_rhs(pt.a, pt.b, pt.c, pt.q), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        b = _cu(rng, 1.0, 2.0)
        c = _cu(rng, 1.0, 2.0)
        a = _cu(rng, 0.05, 0.8) * b * c / q
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c)

    return IdentityRecord(
        id="wellpoised-2psi2-4.2",
        reference="well-poised 2psi2 theta-sum evaluation",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c")),
            ("argument", lambda pt:
                abs(pt.a * pt.q.q / (pt.b * pt.c)) < 1.0 - 1e-6),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
    )


def _rec_w87_threeterm():
    def lhs(pt, w):
        a, b, c, d, e, f = pt.a, pt.b, pt.c, pt.d, pt.e, pt.f
        qb = pt.q
        q = qb.q
        zz = a * b * c * d * e / (f * q ** 3)
        val, tr = bl.w87_eval(
            q * q / (e * e),
            q * f / e, q * q / (a * e), q * q / (b * e),
            q * q / (c * e), q * q / (d * e),
            zz, qb)
        return val, _tr(tr)

    def rhs(pt, w):
        a, b, c, d, e, f = pt.a, pt.b, pt.c, pt.d, pt.e, pt.f
        qb = pt.q
        q = qb.q
        q2, q3, q4 = q * q, q ** 3, q ** 4
        zz = a * b * c * d * e / (f * q3)
        t1 = _prod(
            qb,
            (q3 / e ** 2, c * d / q, a * c / q, a * d / q,
             b * q / d, b * q / a, e * f / q, f * q3 / (a * d * e)),
            (a * q / e, c * q / e, d * q / e, b * e / q,
             a * c * d * e / q3, b * q3 / (a * d * e),
             f * q / d, f * q / a))
        wmid, rmid = bl.w87_eval(
            b * q2 / (a * d * e),
            b / f, b * c / q, q2 / (a * d), q2 / (d * e), q2 / (a * e),
            f * q / c, qb)
        t2 = _prod(
            qb,
            (q3 / e ** 2, e * f / q, b * f, c * f, d * f, a * f,
             q2 / (a * e), q2 / (c * e), q2 / (d * e),
             b / f, a * c * d / (f * q2), f * q3 / (a * c * d)),
            (q / (e * f), a * q / e, b * q / e, c * q / e, d * q / e,
             b * e / q, f * q / a, f * q / c, f * q / d,
             a * c * d * e / q3, q4 / (a * c * d * e), q * f * f))
        wf2, rf2 = bl.w87_eval(
            f * f, q * f / a, q * f / b, q * f / c, q * f / d, q * f / e,
            zz, qb)
        return t1 * wmid - t2 * wf2, {"mid": _tr(rmid), "f2": _tr(rf2)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        f = _cu(rng, 0.35, 0.7, -0.5, 0.5)
        c = _cu(rng, max(0.3, q * abs(f) / 0.75), 1.1)
        zt = _cu(rng, 0.05, 0.7)
        prod_abde = zt * f * q ** 3 / c
        raw = [_cu(rng, 0.8, 1.2, -0.12, 0.12) for _ in range(4)]
        scale = (abs(prod_abde) / abs(raw[0] * raw[1] * raw[2] * raw[3])) ** 0.25
        a, b, d, e = (t * scale for t in raw)
        a *= cmath.exp(1j * cmath.phase(prod_abde / (a * b * d * e)))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e, f=f)

    return IdentityRecord(
        id="w87-transform-5.9",
        reference="three-term 8W7 transformation",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "e", "f")),
            ("argument", lambda pt:
                1e-4 < abs(pt.a * pt.b * pt.c * pt.d * pt.e
                           / (pt.f * pt.q.q ** 3)) < 0.8),
            ("mid-argument", lambda pt:
                1e-4 < abs(pt.f * pt.q.q / pt.c) < 0.8),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_8psi8_decomposition():
    def _xdep_w(pt):
        a, b, c, d, e, f, g = (pt.a, pt.b, pt.c, pt.d, pt.e, pt.f, pt.g)
        qb = pt.q
        q = qb.q
        x = pt.z.real
        lq = math.log(q)

        def qp(t):
            return cmath.exp(t * lq)

        zd = q * g * a * a / (b * c * d * e * f)
        return a, b, c, d, e, f, g, qb, q, x, qp, zd

    def lhs(pt, w):
        a, b, c, d, e, f, g, qb, q, x, qp, zd = _xdep_w(pt)
        ax1 = a * qp(x + 1.0)
        spec = SeriesSpec(
            (b * qp(x), c * qp(x), d * qp(x), e * qp(x), f * qp(x), ax1 / g),
            (ax1 / b, ax1 / c, ax1 / d, ax1 / e, ax1 / f, g * qp(x)),
            zd, kind="vwp-bilateral", vwp_a=a * qp(2.0 * x))
        val, tt = bl.rpsir_eval(spec, qb)
        return val, _tr(tt)

    def rhs(pt, w):
        a, b, c, d, e, f, g, qb, q, x, qp, zd = _xdep_w(pt)
        ax1 = a * qp(x + 1.0)
        qx1 = qp(1.0 - x)
        c1 = _prod(
            qb,
            (q, a * q / (b * f), a * q / (c * f), a * q / (d * f),
             a * q / (e * f), q * f / b, q * f / c, q * f / d, q * f / e),
            (q * f / g, a * q / (f * g), q * f * f / a))
        xdep1 = _prod(
            qb,
            (ax1 / g, qx1 / g, a * qp(2.0 * x + 1.0), qp(1.0 - 2.0 * x) / a),
            (ax1 / b, ax1 / c, ax1 / d, ax1 / e, ax1 / f,
             qx1 / b, qx1 / c, qx1 / d, qx1 / e, qx1 / f))
        w1, r1 = bl.w87_eval(
            f * f / a, b * f / a, c * f / a, d * f / a, e * f / a,
            q * f / g, zd, qb)
        c2 = _prod(
            qb,
            (q, a * q * q / (b * g), a * q * q / (c * g),
             a * q * q / (d * g), a * q * q / (e * g),
             g / b, g / c, g / d, g / e),
            (q * f / g, f * g / (a * q), a * q ** 3 / (g * g)))
        xdep2 = _prod(
            qb,
            (f * qp(x), f * qp(-x) / a,
             a * qp(2.0 * x + 1.0), qp(1.0 - 2.0 * x) / a),
            (g * qp(x), g * qp(-x) / a,
             ax1 / b, ax1 / c, ax1 / d, ax1 / e,
             qx1 / b, qx1 / c, qx1 / d, qx1 / e))
        w2, r2 = bl.w87_eval(
            a * q * q / (g * g), b * q / g, c * q / g, d * q / g,
            e * q / g, f * q / g, zd, qb)
        val = c1 * xdep1 * w1 + c2 * xdep2 * w2
        return val, {"first": _tr(r1), "second": _tr(r2)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        a = _cu(rng, 0.8, 1.1, -0.3, 0.3)
        b = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        c = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        d = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        e = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        f = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        g = _cu(rng, 0.6, 0.95, -0.2, 0.2)
        x = rng.uniform(0.05, 0.95)
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e, f=f, g=g,
                              z=complex(x))

    return IdentityRecord(
        id="psi88-decomposition-5.4",
        reference="8psi8 decomposition into two 8W7 series",
        constraints=(
            ("fields", lambda pt:
                pt.has("a", "b", "c", "d", "e", "f", "g", "z")),
            ("offset-real", lambda pt:
                abs(pt.z.imag) < 1e-12 and 0.0 <= pt.z.real <= 1.0),
            ("argument", lambda pt:
                1e-4 < abs(pt.q.q * pt.g * pt.a ** 2
                           / (pt.b * pt.c * pt.d * pt.e * pt.f)) < 0.85),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        notes="the lattice offset x rides in the real z slot",
    )


# ---------------------------------------------------------------------------
# line-integral records (q-gamma closed forms)


def _rec_ramanujan_integral():
    def lhs(pt, w):
        a, b = pt.a, pt.b
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(qb, (-qp(a + b + x),), (-qp(x),), a * x * lq)

        val, rec = _line(f)
        return -lq * val, rec

    def rhs(pt, w):
        a, b = pt.a, pt.b
        qb = pt.q
        val = (math.pi / cmath.sin(math.pi * a)) * _qg(b, qb) \
            / (_qg(1.0 - a, qb) * _qg(a + b, qb))
        return val, {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        a = _band(rng, min(flo + 0.05, 0.8), 0.92, im=0.25)
        b = _band(rng, min(flo + 0.1, 0.85), 1.6, im=0.3)
        return ParameterPoint(q=QBase(q), a=a, b=b)

    return IdentityRecord(
        id="ramanujan-integral-1.3",
        reference="Ramanujan q-beta integral on the half line, q-gamma form",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b")),
            ("decay", lambda pt:
                pt.a.real > _decay_floor(pt.q.q) - 1e-9
                and pt.b.real > _decay_floor(pt.q.q) - 1e-9),
            ("off-integer", lambda pt:
                abs(pt.a - round(pt.a.real)) > 1e-6),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_askey_roy():
    def lhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(
                qb, (-qp(b + c + x), -qp(a - c + 1.0 - x)),
                (-qp(x), -qp(1.0 - x)), c * x * lq)

        val, rec = _line(f)
        return -lq * val, rec

    def rhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        qb = pt.q
        val = (math.pi / cmath.sin(math.pi * c)) \
            * _qg(a, qb) * _qg(b, qb) \
            / (_qg(c, qb) * _qg(1.0 - c, qb) * _qg(a + b, qb))
        return val, {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        a = _band(rng, min(flo + 0.05, 0.8), 1.3, im=0.2)
        b = _band(rng, min(flo + 0.05, 0.8), 1.3, im=0.2)
        c = _band(rng, 0.12, 0.88, im=0.25)
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c)

    return IdentityRecord(
        id="askey-roy-1.7",
        reference="Askey-Roy line integral with free exponent, q-gamma form",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c")),
            ("decay", lambda pt:
                pt.a.real > _decay_floor(pt.q.q) - 1e-9
                and pt.b.real > _decay_floor(pt.q.q) - 1e-9),
            ("strip", lambda pt: 0.05 < pt.c.real < 0.95),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_symmetric_limit():
    def lhs(pt, w):
        a, b = pt.a, pt.b
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(qb, (-qp(b + x), -qp(a + 1.0 - x)),
                          (-qp(x), -qp(1.0 - x)), 0.0)

        val, rec = _line(f)
        return -lq * val, rec

    def rhs(pt, w):
        a, b = pt.a, pt.b
        qb = pt.q
        q = qb.q
        val = -math.log(q) / (1.0 - q) \
            * _qg(a, qb) * _qg(b, qb) / _qg(a + b, qb)
        return val, {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        a = _band(rng, min(flo + 0.05, 0.8), 1.4, im=0.25)
        b = _band(rng, min(flo + 0.05, 0.8), 1.4, im=0.25)
        return ParameterPoint(q=QBase(q), a=a, b=b)

    return IdentityRecord(
        id="symmetric-limit-1.8",
        reference="symmetric two-product line integral, q-gamma form",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b")),
            ("decay", lambda pt:
                pt.a.real > _decay_floor(pt.q.q) - 1e-9
                and pt.b.real > _decay_floor(pt.q.q) - 1e-9),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_euler_beta():
    def lhs(pt, w):
        a, b = pt.a, pt.b

        def f(u):
            if u > 0:
                lse = u + math.log1p(math.exp(-u))
            else:
                lse = math.log1p(math.exp(u))
            return cmath.exp(a * u - (a + b) * lse)

        return _line(f)

    def rhs(pt, w):
        ar, br = pt.a.real, pt.b.real
        val = math.exp(math.lgamma(ar) + math.lgamma(br)
                       - math.lgamma(ar + br))
        return complex(val), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        a = complex(rng.uniform(0.3, 2.5))
        b = complex(rng.uniform(0.3, 2.5))
        return ParameterPoint(q=QBase(q), a=a, b=b)

    def limit_eval(pt, q):
        qb = QBase(q)
        return _qg(pt.a, qb) * _qg(pt.b, qb) / _qg(pt.a + pt.b, qb)

    def limit_target(pt):
        ar, br = pt.a.real, pt.b.real
        return complex(math.exp(math.lgamma(ar) + math.lgamma(br)
                                - math.lgamma(ar + br)))

    return IdentityRecord(
        id="euler-beta-limit",
        reference="Euler beta integral and its q-gamma limit",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b")),
            ("real-positive", lambda pt:
                abs(pt.a.imag) < 1e-12 and abs(pt.b.imag) < 1e-12
                and pt.a.real > 0.2 and pt.b.real > 0.2),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
        limit_eval=limit_eval, limit_target=limit_target,
        notes="the base q plays no role in the two sides; it enters through "
              "the limit route only",
    )


# ---------------------------------------------------------------------------
# periodic-weight master folds


def _rec_master_fold():
    def lhs(pt, w):
        a, b, z = pt.a, pt.b, pt.z
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(
                qb, (b * qp(x), qp(1.0 - x) / a),
                (a * z * qp(x), qp(1.0 - x) / (a * z)), 0.0) * w(x)

        return _line(f)

    def rhs(pt, w):
        a, b, z = pt.a, pt.b, pt.z
        qb = pt.q
        coef = _prod(qb, (qb.q, b / a), (z, b / (a * z)))
        return coef * _wint(w), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        z = _cu(rng, 0.15, 0.72)
        az = cmath.rect(rng.uniform(0.12, 0.9), _phase_in(rng, 0.05, 3.1))
        a = az / z
        b = a * _cu(rng, 0.02 * abs(z), 0.55 * abs(z))
        return ParameterPoint(q=QBase(q), a=a, b=b, z=z)

    return IdentityRecord(
        id="master-fold-2.5",
        reference="periodic-weight master fold for the bilateral kernel",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "z")),
            ("annulus", lambda pt:
                abs(pt.b / pt.a) + 1e-10 < abs(pt.z) < 1.0 - 1e-10),
            ("pole-margin", lambda pt:
                abs(pt.a * pt.z) < 0.95 and _off_real(pt.a * pt.z, 0.02)),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        weight_slot="unit-periodic",
    )


def _rec_symmetric_master():
    def lhs(pt, w):
        a, b = pt.a, pt.b
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(qb, (-qp(b + x), -qp(a + 1.0 - x)),
                          (-qp(x), -qp(1.0 - x)), 0.0) * w(x)

        return _line(f)

    def rhs(pt, w):
        a, b = pt.a, pt.b
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        coef = _prod(qb, (qb.q, qp(a + b)), (qp(a), qp(b)))
        return coef * _wint(w), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        a = _band(rng, min(flo + 0.05, 0.8), 1.4, im=0.25)
        b = _band(rng, min(flo + 0.05, 0.8), 1.4, im=0.25)
        return ParameterPoint(q=QBase(q), a=a, b=b)

    return IdentityRecord(
        id="symmetric-master-2.6",
        reference="periodic-weight master fold, symmetric kernel",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b")),
            ("decay", lambda pt:
                pt.a.real > _decay_floor(pt.q.q) - 1e-9
                and pt.b.real > _decay_floor(pt.q.q) - 1e-9),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
        weight_slot="unit-periodic",
    )


def _g29(qb, c, x):
    lq = math.log(qb.q)

    def qp(t):
        return cmath.exp(t * lq)

    return _hterm(qb, (-qp(c + x), -qp(1.0 - c - x)),
                  (-qp(x), -qp(1.0 - x)), c * x * lq)


def _rec_askey_roy_master():
    def lhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(qb, (-qp(b + x), -qp(a + 1.0 - x)),
                          (-qp(x), -qp(1.0 - x)), c * x * lq) * w(x)

        return _line(f)

    def rhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        coef = _prod(qb, (qb.q, qp(a + b)), (qp(a + c), qp(b - c)))
        val, rec = _cell(lambda x: _g29(qb, c, x) * w(x))
        return coef * val, rec

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        c = _band(rng, 0.1, 0.7, im=0.2)
        s1 = rng.uniform(min(flo + 0.05, 0.8), 1.2)
        s2 = rng.uniform(min(flo + 0.05, 0.8), 1.2)
        a = complex(s1 - c.real, rng.uniform(-0.2, 0.2))
        b = complex(s2 + c.real, rng.uniform(-0.2, 0.2))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c)

    return IdentityRecord(
        id="askey-roy-master-2.9",
        reference="periodic-weight master fold with free exponent",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c")),
            ("decay", lambda pt:
                (pt.a + pt.c).real > _decay_floor(pt.q.q) - 1e-9
                and (pt.b - pt.c).real > _decay_floor(pt.q.q) - 1e-9),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
        weight_slot="unit-periodic",
    )


def _rec_g_of_c():
    def lhs(pt, w):
        c = pt.c
        qb = pt.q
        return _cell(lambda x: _g29(qb, c, x))

    def rhs(pt, w):
        c = pt.c
        qb = pt.q
        q = qb.q
        val = (1.0 - q) / math.log(1.0 / q) \
            * (math.pi / cmath.sin(math.pi * c)) \
            / (_qg(c, qb) * _qg(1.0 - c, qb))
        return val, {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        c = _band(rng, 0.1, 0.9, im=0.35)
        return ParameterPoint(q=QBase(q), c=c)

    return IdentityRecord(
        id="g-of-c-2.11",
        reference="unit-cell exponent integral in closed form",
        constraints=(
            ("fields", lambda pt: pt.has("c")),
            ("strip", lambda pt: 0.05 < pt.c.real < 0.95),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_askey_roy_combined():
    def lhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(qb, (-qp(b + x), -qp(a + 1.0 - x)),
                          (-qp(x), -qp(1.0 - x)), c * x * lq)

        val, rec = _line(f)
        return -lq * val, rec

    def rhs(pt, w):
        a, b, c = pt.a, pt.b, pt.c
        qb = pt.q
        val = (math.pi / cmath.sin(math.pi * c)) \
            * _qg(a + c, qb) * _qg(b - c, qb) \
            / (_qg(c, qb) * _qg(1.0 - c, qb) * _qg(a + b, qb))
        return val, {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        c = _band(rng, 0.1, 0.7, im=0.2)
        s1 = rng.uniform(min(flo + 0.05, 0.8), 1.2)
        s2 = rng.uniform(min(flo + 0.05, 0.8), 1.2)
        a = complex(s1 - c.real, rng.uniform(-0.2, 0.2))
        b = complex(s2 + c.real, rng.uniform(-0.2, 0.2))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c)

    return IdentityRecord(
        id="askey-roy-combined-2.12",
        reference="combined exponent line integral, q-gamma form",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c")),
            ("decay", lambda pt:
                (pt.a + pt.c).real > _decay_floor(pt.q.q) - 1e-9
                and (pt.b - pt.c).real > _decay_floor(pt.q.q) - 1e-9),
            ("strip", lambda pt: 0.05 < pt.c.real < 0.95),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_ramanujan_pair():
    def lhs(pt, w):
        al, be = pt.alpha, pt.beta
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(qb, (qp(al + x), qp(be - x)),
                          (-qp(0.5 + x), -qp(0.5 - x)), 0.0)

        return _line(f)

    def rhs(pt, w):
        al, be = pt.alpha, pt.beta
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        val = _prod(qb, (qb.q, qp(al + be - 1.0)),
                    (-qp(al - 0.5), -qp(be - 0.5)))
        return val, {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        flo = _decay_floor(q)
        al = _band(rng, 0.5 + min(flo + 0.05, 0.8), 2.0, im=0.25)
        be = _band(rng, 0.5 + min(flo + 0.05, 0.8), 2.0, im=0.25)
        return ParameterPoint(q=QBase(q), alpha=al, beta=be)

    def limit_eval(pt, q):
        al, be = pt.alpha, pt.beta
        qb = QBase(q)
        lq = math.log(q)

        def qp(t):
            return cmath.exp(t * lq)

        base = _prod(qb, (-1.0, -1.0, q, qp(al + be - 1.0)),
                     (q, q, -qp(al - 0.5), -qp(be - 0.5)))
        return base * cmath.exp((al + be - 2.0) * math.log1p(-q)) / 2.0

    def limit_target(pt):
        s = (pt.alpha + pt.beta).real
        return complex(2.0 ** (s - 2.0) / math.gamma(s - 1.0))

    return IdentityRecord(
        id="ramanujan-pair-2.13",
        reference="paired-exponent line integral with classical limit",
        constraints=(
            ("fields", lambda pt: pt.has("alpha", "beta")),
            ("decay", lambda pt:
                pt.alpha.real - 0.5 > _decay_floor(pt.q.q) - 1e-9
                and pt.beta.real - 0.5 > _decay_floor(pt.q.q) - 1e-9),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
        limit_eval=limit_eval, limit_target=limit_target,
    )


def _rec_qbessel_integral():
    def lhs(pt, w):
        lam, mu = pt.lam_p.real, pt.mu_p.real
        av, bv = pt.a.real, pt.b.real
        qb = pt.q
        q = qb.q
        lq = math.log(q)

        def qp(t):
            return cmath.exp(t * lq)

        wconst = _prod(qb, (-qp(lam + 0.5), -qp(mu + 0.5)))
        a24 = (av / 2.0) ** 2
        b24 = (bv / 2.0) ** 2

        def f(x):
            m1, e1, _t1, c1 = kernels.jn_weighted_scaled(
                lam + x, 0.5 + x, a24, q, 1, qb.trunc_eps, qb.max_terms)
            m2, e2, _t2, c2 = kernels.jn_weighted_scaled(
                mu - x, 0.5 - x, b24, q, 2, qb.trunc_eps, qb.max_terms)
            if not (c1 and c2):
                raise NonConvergence("weighted Bessel series stalled")
            return kernels.assemble(m1 * m2, e1 + e2, 0.0) * wconst

        return _line(f, decay="super-exponential")

    def rhs(pt, w):
        lam, mu = pt.lam_p.real, pt.mu_p.real
        av, bv = pt.a.real, pt.b.real
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        spec = SeriesSpec(
            (-qp(lam + 0.5), -((bv / av) ** 2) * qp(mu + 0.5)),
            (qp(lam + mu + 1.0),),
            -(av ** 2) / 4.0, kind="unilateral")
        series, rec = bl.rphis_eval(spec, qb)
        coef = _prod(qb, (qp(lam + mu + 1.0),), (qb.q,))
        return coef * series, _tr(rec)

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        lam = complex(rng.uniform(0.15, 2.0))
        mu = complex(rng.uniform(0.15, 2.0))
        a = complex(rng.uniform(0.1, 0.8))
        b = complex(rng.uniform(0.1, 0.8))
        return ParameterPoint(q=QBase(q), a=a, b=b, lam_p=lam, mu_p=mu)

    return IdentityRecord(
        id="qbessel-integral-2.15",
        reference="weighted q-Bessel product integral vs 2phi1",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "lam_p", "mu_p")),
            ("real-orders", lambda pt:
                abs(pt.lam_p.imag) < 1e-12 and abs(pt.mu_p.imag) < 1e-12
                and 0.0 < pt.lam_p.real <= 2.0 and 0.0 < pt.mu_p.real <= 2.0),
            ("small-arguments", lambda pt:
                abs(pt.a.imag) < 1e-12 and abs(pt.b.imag) < 1e-12
                and 0.0 < pt.a.real <= 0.8 and 0.0 < pt.b.real <= 0.8),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-6,
    )


# ---------------------------------------------------------------------------
# quartet kernel: folds, eta chain, measure equality


def quartet_product_side(a, b, c, d, qb):
    """Closed product the quartet fold and both measures evaluate to."""
    q = qb.q
    q3 = q ** 3
    return _prod(
        qb,
        (q, a * b / q, a * c / q, a * d / q,
         b * c / q, b * d / q, c * d / q),
        (a * b * c * d / q3,))


def _f_quartet(qb, alpha, params, x):
    lq = math.log(qb.q)

    def qp(t):
        return cmath.exp(t * lq)

    nums = []
    for t in params:
        nums.append(alpha * t * qp(x))
        nums.append(t * qp(-x) / alpha)
    dens = (alpha * alpha * qp(2.0 * x + 1.0),
            qp(1.0 - 2.0 * x) / (alpha * alpha))
    return _hterm(qb, nums, dens, 0.0)


def _quartet_admissible(pt, need_alpha):
    q3 = pt.q.q ** 3
    r = abs(pt.a * pt.b * pt.c * pt.d / q3)
    if not 1e-6 < r < 0.82:
        return False
    if need_alpha:
        if pt.alpha is None:
            return False
        if not 0.25 < abs(pt.alpha) < 3.5:
            return False
        if not _off_real(pt.alpha * pt.alpha):
            return False
    return True


# above these bases the closed-form values collapse like exp(-c/(1-q))
# below what double quadrature can resolve relatively; the samplers stay
# under them, and the quartet records additionally test the value-to-kernel
# ratio point by point
QUARTET_Q_CEIL = 0.80
ANTIPERIODIC_Q_CEIL = 0.78
RESOLVABLE_RATIO = 1e-4


def _scale_resolvable(value, kernel):
    """True when the expected value is large enough against the integrand
    magnitude for double-precision quadrature to resolve it relatively."""
    probe = max(abs(kernel(0.33)), abs(kernel(0.71)), 1e-300)
    return abs(complex(value)) >= RESOLVABLE_RATIO * probe


def _quartet_params(rng, q, mlo=0.55, mhi=0.92, im=0.25):
    s = q ** 0.75
    return tuple(_cu(rng, mlo * s, mhi * s, -im, im) for _ in range(4))


def _rec_quartet_fold():
    def lhs(pt, w):
        qb = pt.q
        params = (pt.a, pt.b, pt.c, pt.d)

        def f(x):
            return _f_quartet(qb, pt.alpha, params, x) * w(x)

        return _line(f)

    def rhs(pt, w):
        coef = quartet_product_side(pt.a, pt.b, pt.c, pt.d, pt.q)
        return coef * _wint(w), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, min(q_hi, QUARTET_Q_CEIL))
        a, b, c, d = _quartet_params(rng, q)
        alpha = cmath.rect(rng.uniform(0.7, 1.25), _phase_in(rng, 0.1, 1.45))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, alpha=alpha)

    return IdentityRecord(
        id="sixpsisix-fold-3.3",
        reference="periodic-weight fold of the very-well-poised kernel",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "alpha")),
            ("domain", lambda pt: _quartet_admissible(pt, True)),
            ("resolvable-scale", lambda pt: _scale_resolvable(
                quartet_product_side(pt.a, pt.b, pt.c, pt.d, pt.q),
                lambda x: _f_quartet(pt.q, pt.alpha,
                                     (pt.a, pt.b, pt.c, pt.d), x))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        weight_slot="unit-periodic",
    )


def _rec_askey_integral():
    def lhs(pt, w):
        qb = pt.q
        params = (pt.a, pt.b, pt.c, pt.d)

        def f(x):
            return _f_quartet(qb, 1j, params, x)

        return _line(f)

    def rhs(pt, w):
        return quartet_product_side(pt.a, pt.b, pt.c, pt.d, pt.q), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, min(q_hi, QUARTET_Q_CEIL))
        s = q ** 0.75
        a, b, c, d = (complex(rng.uniform(0.55 * s, 0.92 * s))
                      for _ in range(4))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d)

    return IdentityRecord(
        id="askey-3.4",
        reference="quartet product integral at unit weight",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d")),
            ("real-positive", lambda pt:
                all(abs(getattr(pt, n).imag) < 1e-12
                    and getattr(pt, n).real > 0.0
                    for n in ("a", "b", "c", "d"))),
            ("domain", lambda pt: _quartet_admissible(pt, False)),
            ("resolvable-scale", lambda pt: _scale_resolvable(
                quartet_product_side(pt.a, pt.b, pt.c, pt.d, pt.q),
                lambda x: _f_quartet(pt.q, 1j,
                                     (pt.a, pt.b, pt.c, pt.d), x))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _rec_u_integral():
    cfg = QuadratureConfig(panel_count=32, nodes_per_panel=16,
                           refine_tol=1e-13)

    def lhs(pt, w):
        f, g = pt.f, pt.g
        q = pt.q.q

        def integrand(y):
            s = 2.0 * y - 1.0
            om = 1.0 - s * s
            u = s / om
            jac = (1.0 + s * s) / (om * om)
            val = 1.0 / ((1.0 - f * f - f * u)
                         * (1.0 - q * q / (g * g) + q * u / g))
            return val * jac * 2.0

        return _cell(integrand, cfg)

    def rhs(pt, w):
        f, g = pt.f, pt.g
        q = pt.q.q
        val = TWO_PI_I / (f * (1.0 - q * f / g) * (1.0 + q / (f * g)))
        return val, {}

    def _poles_off_axis(pt):
        f, g = pt.f, pt.g
        q = pt.q.q
        u1 = (1.0 - f * f) / f
        u2 = -(1.0 - q * q / (g * g)) * g / q
        return abs(u1.imag) > 0.25 and abs(u2.imag) > 0.25

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        f = cmath.rect(rng.uniform(0.45, 1.1), rng.uniform(0.25, 2.85))
        g = cmath.rect(rng.uniform(0.45, 1.1), -rng.uniform(0.25, 2.85))
        return ParameterPoint(q=QBase(q), f=f, g=g)

    return IdentityRecord(
        id="eta-u-integral-3.11",
        reference="rational two-pole line integral, residue form",
        constraints=(
            ("fields", lambda pt: pt.has("f", "g")),
            ("half-planes", lambda pt:
                0.05 < cmath.phase(pt.f) < math.pi - 0.05
                and -math.pi + 0.05 < cmath.phase(pt.g) < -0.05),
            ("pole-margin", _poles_off_axis),
            ("nonzero-residue", lambda pt:
                abs(1.0 - pt.q.q * pt.f / pt.g) > 1e-6
                and abs(1.0 + pt.q.q / (pt.f * pt.g)) > 1e-6),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-10,
    )


def _eta_kernel(qb, f, g, x):
    lq = math.log(qb.q)

    def qp(t):
        return cmath.exp(t * lq)

    return _hterm(
        qb,
        (-qp(2.0 * x + 1.0), -qp(1.0 - 2.0 * x)),
        (f * qp(-x), qp(x + 1.0) / f, -f * qp(x), -qp(1.0 - x) / f,
         g * qp(-x), qp(x + 1.0) / g, -g * qp(x), -qp(1.0 - x) / g),
        0.0) * (qp(-x) + qp(x))


def _eta_closed(qb, f, g):
    q = qb.q
    return TWO_PI_I / (
        f * math.log(1.0 / q)
        * _prod(qb, (q, q, g / f, q * f / g, -f * g, -q / (f * g))))


def _rec_eta_closed():
    def lhs(pt, w):
        qb = pt.q
        return _cell(lambda x: _eta_kernel(qb, pt.f, pt.g, x))

    def rhs(pt, w):
        return _eta_closed(pt.q, pt.f, pt.g), {}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        f = cmath.rect(rng.uniform(0.4, 1.1), rng.uniform(0.12, 2.9))
        g = cmath.rect(rng.uniform(0.4, 1.1), -rng.uniform(0.12, 2.9))
        return ParameterPoint(q=QBase(q), f=f, g=g)

    return IdentityRecord(
        id="eta-closed-3.12",
        reference="unit-cell eta integral in closed form",
        constraints=(
            ("fields", lambda pt: pt.has("f", "g")),
            ("half-planes", lambda pt:
                0.03 < cmath.phase(pt.f) < math.pi - 0.03
                and -math.pi + 0.03 < cmath.phase(pt.g) < -0.03),
            ("product-margin", lambda pt:
                _off_real(-pt.f * pt.g, 0.02)),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-8,
    )


def _ismail_kernel(pt):
    qb = pt.q
    lq = math.log(qb.q)
    f, g = pt.f, pt.g
    params = (pt.a, pt.b, pt.c, pt.d)

    def qp(t):
        return cmath.exp(t * lq)

    def integrand(x):
        nums = []
        for t in params:
            nums.append(1j * t * qp(x))
            nums.append(-1j * t * qp(-x))
        dens = (f * qp(-x), qp(x + 1.0) / f, -f * qp(x),
                -qp(1.0 - x) / f,
                g * qp(-x), qp(x + 1.0) / g, -g * qp(x),
                -qp(1.0 - x) / g)
        return _hterm(qb, nums, dens, 0.0) * (qp(-x) + qp(x))

    return integrand


def _ismail_value(pt):
    a, b, c, d, f, g = pt.a, pt.b, pt.c, pt.d, pt.f, pt.g
    qb = pt.q
    q = qb.q
    q3 = q ** 3
    return TWO_PI_I * _prod(
        qb,
        (a * b / q, a * c / q, a * d / q,
         b * c / q, b * d / q, c * d / q),
        (q, g / f, q * f / g, -f * g, -q / (f * g),
         a * b * c * d / q3)) / (f * math.log(1.0 / q))


def _rec_quartet_beta():
    def lhs(pt, w):
        return _line(_ismail_kernel(pt))

    def rhs(pt, w):
        return _ismail_value(pt), {}

    def _not_real(v):
        ph = abs(cmath.phase(complex(v)))
        return ph > ETA_ARG_MARGIN and math.pi - ph > ETA_ARG_MARGIN

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, min(q_hi, QUARTET_Q_CEIL))
        a, b, c, d = _quartet_params(rng, q)
        f = cmath.rect(rng.uniform(0.4, 1.1), rng.uniform(0.12, 2.9))
        g = cmath.rect(rng.uniform(0.4, 1.1), -rng.uniform(0.12, 2.9))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, f=f, g=g)

    return IdentityRecord(
        id="ismail-masson-3.13",
        reference="quartet q-beta integral via the eta kernel",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "f", "g")),
            ("f-not-real", lambda pt: _not_real(pt.f)),
            ("g-not-real", lambda pt: _not_real(pt.g)),
            ("ratio-not-real", lambda pt: _not_real(pt.f / pt.g)),
            ("product-off-negative-axis", lambda pt:
                abs(cmath.phase(-pt.f * pt.g)) > ETA_ARG_MARGIN),
            ("domain", lambda pt: _quartet_admissible(pt, False)),
            ("resolvable-scale", lambda pt: _scale_resolvable(
                _ismail_value(pt), _ismail_kernel(pt))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        notes="neither f nor g may be real, their ratio must not be real, "
              "and their product must stay off the negative axis",
    )


def _rec_jackson_equality():
    def _g_of_t(pt):
        a, b, c, d, al = pt.a, pt.b, pt.c, pt.d, pt.alpha
        qb = pt.q
        q = qb.q

        def G(t):
            nums = (al * a * t, a / (al * t), al * b * t, b / (al * t),
                    al * c * t, c / (al * t), al * d * t, d / (al * t))
            dens = (q * al * al * t * t, q / (al * al * t * t))
            return _hterm(qb, nums, dens, 0.0)

        return G

    def lhs(pt, w):
        qb = pt.q
        params = (pt.a, pt.b, pt.c, pt.d)

        def f(x):
            return _f_quartet(qb, pt.alpha, params, x)

        return _line(f)

    def rhs(pt, w):
        qb = pt.q
        q = qb.q
        G = _g_of_t(pt)
        lq_inv = math.log(1.0 / q)

        def f(t):
            return G(t) / (t * lq_inv)

        val, rec = fq.jackson_qintegral(f, qb)
        return lq_inv / (1.0 - q) * val, {"lattice": _tr(rec)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, min(q_hi, QUARTET_Q_CEIL))
        a, b, c, d = _quartet_params(rng, q)
        alpha = cmath.rect(rng.uniform(0.7, 1.25), _phase_in(rng, 0.1, 1.45))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, alpha=alpha)

    return IdentityRecord(
        id="jackson-equality-3.14",
        reference="continuous vs discrete measure equality",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "alpha")),
            ("domain", lambda pt: _quartet_admissible(pt, True)),
            ("resolvable-scale", lambda pt: _scale_resolvable(
                quartet_product_side(pt.a, pt.b, pt.c, pt.d, pt.q),
                lambda x: _f_quartet(pt.q, pt.alpha,
                                     (pt.a, pt.b, pt.c, pt.d), x))),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-9,
    )


# ---------------------------------------------------------------------------
# anti-periodic records


def _rec_antiperiodic_fold():
    def lhs(pt, w):
        al, be, ga, de = pt.alpha, pt.beta, pt.gamma, pt.delta
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            return _hterm(
                qb,
                (qp(al + x), qp(be - x), qp(ga + x), qp(de - x)),
                (), ((al - be) * x + x * x) * lq) * w(x)

        return _line(f)

    def rhs(pt, w):
        al, be, ga, de = pt.alpha, pt.beta, pt.gamma, pt.delta
        qb = pt.q
        q = qb.q
        lq = math.log(q)
        qb2 = QBase(q * q, qb.trunc_eps, qb.max_terms)

        def qp(t):
            return cmath.exp(t * lq)

        coef = _prod(qb, (qp(al + de - 1.0),), (-qp(al + de - 1.0),)) \
            * _prod(qb2, (qp(al + be), qp(ga + de), q * q))

        def inner(y):
            return _hterm(
                qb2,
                (qp(al - be + 1.0 + 2.0 * y), qp(be - al + 1.0 - 2.0 * y)),
                (), ((al - be) * y + y * y) * lq) * w(y)

        val, rec = _cell(inner)
        return coef * val, rec

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, min(q_hi, ANTIPERIODIC_Q_CEIL))
        al = _band(rng, 0.9, 1.3, im=0.15)
        de = _band(rng, 1.0, 1.3, im=0.15)
        be = _band(rng, 0.7, 1.1, im=0.15)
        ga = al + de - be
        return ParameterPoint(q=QBase(q), alpha=al, beta=be, gamma=ga,
                              delta=de)

    return IdentityRecord(
        id="antiperiodic-4.4",
        reference="anti-periodic fold of the four-product kernel",
        constraints=(
            ("fields", lambda pt:
                pt.has("alpha", "beta", "gamma", "delta")),
            ("balance", lambda pt:
                abs(pt.alpha + pt.delta - pt.beta - pt.gamma) < 1e-12),
            ("decay", lambda pt:
                (pt.alpha + pt.delta).real > 1.6
                and (pt.alpha + pt.beta + pt.gamma + pt.delta).real > 2.05),
            ("resolvable-scale", lambda pt:
                pt.q.q <= ANTIPERIODIC_Q_CEIL),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        weight_slot="anti-periodic",
    )


def _rec_antiperiodic__qg():
    def _c45(pt, q):
        al, be, ga, de = pt.alpha, pt.beta, pt.gamma, pt.delta
        qb = QBase(q)
        qb2 = QBase(q * q)
        lam = al + de - 2.0
        head = qpoch_general_index(-q, qb, lam)[0] \
            / cmath.exp(lam * math.log(1.0 + q))
        return head * _qg(0.5, qb2) ** 2 / (
            _qg((al + be) / 2.0, qb2)
            * _qg((ga + de) / 2.0, qb2)
            * _qg(al + de - 1.0, qb))

    def lhs(pt, w):
        al, be, ga, de = pt.alpha, pt.beta, pt.gamma, pt.delta
        qb = pt.q
        q = qb.q
        lq = math.log(q)
        s = al + be + ga + de
        # the four reciprocal q-gamma factors are combined in one scaled
        # product so deep fold shifts cannot overflow on the way through
        ln1q = math.log1p(-q)

        def qp(t):
            return cmath.exp(t * lq)

        def f(x):
            nums = (qp(al + x), qp(be - x), qp(ga + x), qp(de - x))
            logf = (s - 4.0) * ln1q + ((al - be) * x + x * x) * lq
            return _hterm(qb, nums, (q, q, q, q), logf) * w(x)

        return _line(f)

    def rhs(pt, w):
        al, be = pt.alpha, pt.beta
        qb = pt.q
        q = qb.q
        lq = math.log(q)
        qb2 = QBase(q * q, qb.trunc_eps, qb.max_terms)
        coef = _c45(pt, q)

        def inner(y):
            zf = cmath.exp(((al - be) * y + y * y) * lq)
            return zf * w(y) / (
                _qg((al - be + 1.0) / 2.0 + y, qb2)
                * _qg((be - al + 1.0) / 2.0 - y, qb2))

        val, rec = _cell(inner)
        return coef * val, rec

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        al = _band(rng, 0.9, 1.3, im=0.12)
        de = _band(rng, 1.0, 1.3, im=0.12)
        be = _band(rng, 0.7, 1.1, im=0.12)
        ga = al + de - be
        return ParameterPoint(q=QBase(q), alpha=al, beta=be, gamma=ga,
                              delta=de)

    def limit_eval(pt, q):
        return _c45(pt, q)

    def limit_target(pt):
        al, be = pt.alpha.real, pt.beta.real
        ga, de = pt.gamma.real, pt.delta.real
        return complex(math.pi / (
            math.gamma((al + be) / 2.0) * math.gamma((ga + de) / 2.0)
            * math.gamma(al + de - 1.0)))

    return IdentityRecord(
        id="antiperiodic-qgamma-4.5",
        reference="anti-periodic reciprocal q-gamma integral",
        constraints=(
            ("fields", lambda pt:
                pt.has("alpha", "beta", "gamma", "delta")),
            ("balance", lambda pt:
                abs(pt.alpha + pt.delta - pt.beta - pt.gamma) < 1e-12),
            ("decay", lambda pt:
                (pt.alpha + pt.delta).real > 1.6
                and (pt.alpha + pt.beta + pt.gamma + pt.delta).real > 2.05),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        weight_slot="anti-periodic",
        limit_eval=limit_eval, limit_target=limit_target,
    )


# ---------------------------------------------------------------------------
# 8psi8 fold family


def _f58(pt):
    a, b, c, d, e, al = pt.a, pt.b, pt.c, pt.d, pt.e, pt.alpha
    f = _f_of(pt)
    qb = pt.q
    lq = math.log(qb.q)

    def qp(t):
        return cmath.exp(t * lq)

    def F(x):
        nums = []
        for t in (a, b, c, d, e):
            nums.append(t * al * qp(x))
            nums.append(t * qp(-x) / al)
        dens = (al * al * qp(2.0 * x + 1.0), qp(1.0 - 2.0 * x) / (al * al),
                f * al * qp(x), f * qp(-x) / al)
        return _hterm(qb, nums, dens, 0.0)

    return F


def _f_of(pt):
    """The sixth denominator parameter; computed for the balanced record."""
    if pt.f is not None:
        return pt.f
    return pt.a * pt.b * pt.c * pt.d * pt.e / pt.q.q ** 4


def _lam_pair(pt, w):
    """Unit-cell integral of the mapped e/f product-pair ratio."""
    al, e = pt.alpha, pt.e
    f = _f_of(pt)
    qb = pt.q
    lq = math.log(qb.q)

    def qp(t):
        return cmath.exp(t * lq)

    def L(x):
        return _hterm(
            qb,
            (al * qp(x + 1.0) / e, e * qp(-x) / al,
             al * e * qp(x), qp(1.0 - x) / (al * e)),
            (al * qp(x + 1.0) / f, f * qp(-x) / al,
             al * f * qp(x), qp(1.0 - x) / (al * f)),
            0.0) * w(x)

    return fq.integrate_cell(L)


def _alpha_pole_free(pt):
    al = pt.alpha
    f = _f_of(pt)
    if not 0.25 < abs(al) < 3.5:
        return False
    if not _off_real(al * al):
        return False
    return _off_real(f * al) and _off_real(f / al)


def _rec_8psi8_alpha():
    def lhs(pt, w):
        F = _f58(pt)
        return _line(lambda x: F(x) * w(x))

    def rhs(pt, w):
        a, b, c, d, e = pt.a, pt.b, pt.c, pt.d, pt.e
        f = pt.f
        qb = pt.q
        q = qb.q
        q2, q3 = q * q, q ** 3
        zz = a * b * c * d * e / (f * q3)
        c1 = _prod(
            qb,
            (q, a * q / e, b * q / e, c * q / e, d * q / e,
             a * e / q, b * e / q, c * e / q, d * e / q),
            (e * f / q, q * f / e, q3 / (e * e)))
        w1, r1 = bl.w87_eval(
            q2 / (e * e), q2 / (a * e), q2 / (b * e), q2 / (c * e),
            q2 / (d * e), q * f / e, zz, qb)
        c2 = _prod(
            qb,
            (q, a / f, b / f, c / f, d / f, a * f, b * f, c * f, d * f),
            (q / (e * f), q * f / e, q * f * f))
        w2, r2 = bl.w87_eval(
            f * f, q * f / a, q * f / b, q * f / c, q * f / d, q * f / e,
            zz, qb)
        lam, lrec = _lam_pair(pt, w)
        up = _wint(w)
        val = c1 * w1 * up + c2 * w2 * lam
        return val, {"first": _tr(r1), "second": _tr(r2),
                     "pair-quad": _tr(lrec)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        al = cmath.rect(rng.uniform(0.75, 1.2), _phase_in(rng, 0.12, 1.4))
        f = _cu(rng, 0.45, 0.8, -0.4, 0.4)
        zt = _cu(rng, 0.05, 0.7)
        target = zt * f * q ** 3
        raw = [_cu(rng, 0.8, 1.2, -0.12, 0.12) for _ in range(5)]
        scale = (abs(target) / abs(raw[0] * raw[1] * raw[2]
                                   * raw[3] * raw[4])) ** 0.2
        a, b, c, d, e = (t * scale for t in raw)
        a *= cmath.exp(1j * cmath.phase(target / (a * b * c * d * e)))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e, f=f,
                              alpha=al)

    return IdentityRecord(
        id="psi88-alpha-form-5.8",
        reference="8psi8 fold, argument-symmetric form",
        constraints=(
            ("fields", lambda pt:
                pt.has("a", "b", "c", "d", "e", "f", "alpha")),
            ("argument", lambda pt:
                1e-5 < abs(pt.a * pt.b * pt.c * pt.d * pt.e
                           / (pt.f * pt.q.q ** 3)) < 0.8),
            ("pole-margins", _alpha_pole_free),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-6,
        weight_slot="unit-periodic",
    )


def _rec_8psi8_relation():
    def lhs(pt, w):
        a, b, c, d, e, f, g = (pt.a, pt.b, pt.c, pt.d, pt.e, pt.f, pt.g)
        qb = pt.q
        lq = math.log(qb.q)

        def qp(t):
            return cmath.exp(t * lq)

        def F(x):
            ax1 = a * qp(x + 1.0)
            qx1 = qp(1.0 - x)
            nums = []
            for t in (b, c, d, e, f):
                nums.append(ax1 / t)
                nums.append(qx1 / t)
            dens = (a * qp(2.0 * x + 1.0), qp(1.0 - 2.0 * x) / a,
                    ax1 / g, qx1 / g)
            return _hterm(qb, nums, dens, 0.0) * w(x)

        return _line(F)

    def rhs(pt, w):
        a, b, c, d, e, f, g = (pt.a, pt.b, pt.c, pt.d, pt.e, pt.f, pt.g)
        qb = pt.q
        q = qb.q
        lq = math.log(q)
        z7 = q * g * a * a / (b * c * d * e * f)
        coef1 = _prod(
            qb,
            (q, a * q / (b * f), a * q / (c * f), a * q / (d * f),
             a * q / (e * f), q * f / b, q * f / c, q * f / d, q * f / e),
            (a * q / (f * g), q * f / g, q * f * f / a))
        w1, r1 = bl.w87_eval(
            f * f / a, b * f / a, c * f / a, d * f / a, e * f / a,
            q * f / g, z7, qb)
        coef2 = _prod(
            qb,
            (q, g / b, g / c, g / d, g / e,
             a * q * q / (b * g), a * q * q / (c * g),
             a * q * q / (d * g), a * q * q / (e * g)),
            (f * g / (a * q), a * q ** 3 / (g * g), q * f / g))
        w2, r2 = bl.w87_eval(
            a * q * q / (g * g), b * q / g, c * q / g, d * q / g,
            e * q / g, f * q / g, z7, qb)

        def qp(t):
            return cmath.exp(t * lq)

        def G(x):
            return _hterm(
                qb,
                (f * qp(x), qp(1.0 - x) / f,
                 a * qp(x + 1.0) / f, f * qp(-x) / a),
                (g * qp(x), qp(1.0 - x) / g,
                 a * qp(x + 1.0) / g, g * qp(-x) / a),
                0.0) * w(x)

        up = _wint(w)
        gval, grec = fq.integrate_cell(G)
        val = coef1 * w1 * up + coef2 * w2 * gval
        return val, {"first": _tr(r1), "second": _tr(r2),
                     "pair-quad": _tr(grec)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        a = cmath.rect(rng.uniform(0.8, 1.1), _phase_in(rng, 0.08, 0.5))
        g = cmath.rect(rng.uniform(0.6, 0.95), _phase_in(rng, 0.08, 0.5))
        b = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        c = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        d = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        e = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        f = _cu(rng, 0.9, 1.35, -0.15, 0.15)
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e, f=f, g=g)

    return IdentityRecord(
        id="psi88-relation-5.7",
        reference="8psi8 fold against two 8W7 multiples",
        constraints=(
            ("fields", lambda pt:
                pt.has("a", "b", "c", "d", "e", "f", "g")),
            ("argument", lambda pt:
                1e-5 < abs(pt.q.q * pt.g * pt.a ** 2
                           / (pt.b * pt.c * pt.d * pt.e * pt.f)) < 0.8),
            ("pole-margins", lambda pt:
                _off_real(pt.a) and _off_real(pt.g)
                and _off_real(pt.a / pt.g)),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-7,
        weight_slot="unit-periodic",
    )


def _rec_8psi8_combined():
    def lhs(pt, w):
        F = _f58(pt)
        return _line(lambda x: F(x) * w(x))

    def rhs(pt, w):
        a, b, c, d, e = pt.a, pt.b, pt.c, pt.d, pt.e
        f = pt.f
        qb = pt.q
        q = qb.q
        q2, q3, q4 = q * q, q ** 3, q ** 4
        zz = a * b * c * d * e / (f * q3)
        ca = _prod(
            qb,
            (q, a * c / q, a * d / q, c * d / q,
             a * e / q, c * e / q, d * e / q,
             b * q / a, b * q / d, b * q / e, f * q3 / (a * d * e)),
            (q * f / a, q * f / d, q * f / e,
             b * q3 / (a * d * e), a * c * d * e / q3))
        wa, ra = bl.w87_eval(
            b * q2 / (a * d * e),
            b / f, b * c / q, q2 / (a * d), q2 / (d * e), q2 / (a * e),
            f * q / c, qb)
        wb, rb = bl.w87_eval(
            f * f, q * f / a, q * f / b, q * f / c, q * f / d, q * f / e,
            zz, qb)
        br1 = _prod(
            qb,
            (q, a / f, b / f, c / f, d / f, a * f, b * f, c * f, d * f),
            (q * f / e, q / (e * f), q * f * f))
        br2 = _prod(
            qb,
            (q, a * f, b * f, c * f, d * f, b / f,
             a * e / q, c * e / q, d * e / q,
             q2 / (a * e), q2 / (c * e), q2 / (d * e)),
            (q * f / e, q / (e * f), q * f * f,
             f * q / a, f * q / c, f * q / d)) \
            * _prod(
                qb,
                (a * c * d / (f * q2), f * q3 / (a * c * d)),
                (a * c * d * e / q3, q4 / (a * c * d * e)))
        lam, lrec = _lam_pair(pt, w)
        up = _wint(w)
        val = ca * wa * up + wb * (br1 * lam - br2 * up)
        return val, {"mid": _tr(ra), "f2": _tr(rb), "pair-quad": _tr(lrec)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        al = cmath.rect(rng.uniform(0.75, 1.2), _phase_in(rng, 0.12, 1.4))
        f = _cu(rng, 0.4, 0.7, -0.45, 0.45)
        c = _cu(rng, max(0.3, q * abs(f) / 0.75), 1.15)
        zt = _cu(rng, 0.05, 0.65)
        target = zt * f * q ** 3 / c
        raw = [_cu(rng, 0.8, 1.2, -0.12, 0.12) for _ in range(4)]
        scale = (abs(target) / abs(raw[0] * raw[1] * raw[2] * raw[3])) ** 0.25
        a, b, d, e = (t * scale for t in raw)
        a *= cmath.exp(1j * cmath.phase(target / (a * b * d * e)))
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e, f=f,
                              alpha=al)

    return IdentityRecord(
        id="psi88-combined-5.10",
        reference="8psi8 fold combined two-term evaluation",
        constraints=(
            ("fields", lambda pt:
                pt.has("a", "b", "c", "d", "e", "f", "alpha")),
            ("argument", lambda pt:
                1e-5 < abs(pt.a * pt.b * pt.c * pt.d * pt.e
                           / (pt.f * pt.q.q ** 3)) < 0.8),
            ("mid-argument", lambda pt:
                1e-5 < abs(pt.f * pt.q.q / pt.c) < 0.8),
            ("pole-margins", _alpha_pole_free),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-6,
        weight_slot="unit-periodic",
    )


def _rec_8psi8_balanced():
    def lhs(pt, w):
        F = _f58(pt)
        return _line(lambda x: F(x) * w(x))

    def rhs(pt, w):
        a, b, c, d, e = pt.a, pt.b, pt.c, pt.d, pt.e
        qb = pt.q
        q = qb.q
        q2 = q * q
        f = _f_of(pt)
        t1 = _prod(
            qb,
            (q, a * b / q, a * c / q, a * d / q, a * e / q,
             b * c / q, b * d / q, b * e / q,
             c * d / q, c * e / q, d * e / q),
            (q * f / a, q * f / b, q * f / c, q * f / d, q * f / e))
        t2 = _prod(
            qb,
            (q, a * f, b * f, c * f, d * f,
             a / f, b / f, c / f, d / f),
            (q * f * f, q / (e * f), q * f / e))
        corr = _prod(
            qb,
            (a * e / q, b * e / q, c * e / q, d * e / q,
             q2 / (a * e), q2 / (b * e), q2 / (c * e), q2 / (d * e)),
            (a / f, b / f, c / f, d / f,
             q * f / a, q * f / b, q * f / c, q * f / d))
        w12, r12 = bl.w87_eval(
            f * f, q * f / a, q * f / b, q * f / c, q * f / d, q * f / e,
            complex(q), qb)
        lam, lrec = _lam_pair(pt, w)
        up = _wint(w)
        val = t1 * up + t2 * (lam - corr * up) * w12
        return val, {"f2": _tr(r12), "pair-quad": _tr(lrec)}

    def sampler(rng, q_lo, q_hi):
        q = rng.uniform(q_lo, q_hi)
        al = cmath.rect(rng.uniform(0.8, 1.15), _phase_in(rng, 0.15, 1.3))
        sgn = 1.0 if rng.random() < 0.5 else -1.0
        s = q ** 0.8
        vals = [cmath.rect(rng.uniform(0.75, 0.95) * s,
                           sgn * rng.uniform(0.03, 0.25))
                for _ in range(5)]
        a, b, c, d, e = vals
        return ParameterPoint(q=QBase(q), a=a, b=b, c=c, d=d, e=e, alpha=al)

    def _balanced_margins(pt):
        f = _f_of(pt)
        if not 1e-3 < abs(f) < 20.0:
            return False
        for t in (pt.a, pt.b, pt.c, pt.d, pt.e):
            if not _off_real(t * f):
                return False
        return _alpha_pole_free(pt)

    return IdentityRecord(
        id="psi88-balanced-5.12",
        reference="balanced 8psi8 fold with 6phi5 closure",
        constraints=(
            ("fields", lambda pt: pt.has("a", "b", "c", "d", "e", "alpha")),
            ("no-free-f", lambda pt: pt.f is None),
            ("pole-margins", _balanced_margins),
        ),
        lhs=lhs, rhs=rhs, sampler=sampler, tolerance=1e-6,
        weight_slot="unit-periodic",
        notes="the sixth parameter is pinned to abcde/q^4, making the fold "
              "argument exactly q",
    )


_REGISTRY = None


def registry():
    """All identity records keyed by id, built once per process."""
    global _REGISTRY
    if _REGISTRY is None:
        records = [
            _rec_euler_beta(),
            _rec_ramanujan_integral(),
            _rec_askey_roy(),
            _rec_symmetric_limit(),
            _rec_1psi1(),
            _rec_qgauss(),
            _rec_2psi2(),
            _rec_6psi6(),
            _rec_master_fold(),
            _rec_symmetric_master(),
            _rec_askey_roy_master(),
            _rec_g_of_c(),
            _rec_askey_roy_combined(),
            _rec_ramanujan_pair(),
            _rec_qbessel_integral(),
            _rec_quartet_fold(),
            _rec_askey_integral(),
            _rec_u_integral(),
            _rec_eta_closed(),
            _rec_quartet_beta(),
            _rec_jackson_equality(),
            _rec_wp2psi2(),
            _rec_antiperiodic_fold(),
            _rec_antiperiodic__qg(),
            _rec_8psi8_decomposition(),
            _rec_8psi8_relation(),
            _rec_8psi8_alpha(),
            _rec_w87_threeterm(),
            _rec_8psi8_combined(),
            _rec_8psi8_balanced(),
        ]
        reg = {}
        for rec in records:
            if rec.id in reg:
                raise ValueError("duplicate identity id %s" % rec.id)
            reg[rec.id] = rec
        _REGISTRY = reg
    return _REGISTRY
