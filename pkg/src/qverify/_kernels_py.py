"""Pure-Python numerical kernels (IEEE double).

Reference implementations of the hot inner loops: interleaved scaled
q-shifted-factorial ratio products, bilateral/unilateral series summation
with full-term stopping, and the weighted q-Bessel evaluator used by the
orthogonality-style integrands.  qverify._kernels is a compiled twin with
the same semantics; qverify.kernels picks one at import time.

Scaling convention: functions with a ``_scaled`` suffix return a mantissa
together with a base-2 exponent, value = mantissa * 2**exp2.  Rescaling by
2**±512 is exact, so the pair loses nothing against an unscaled product.
"""

import cmath
import math

LN2 = 0.6931471805599453

_RESCALE_HI = 1e150
_RESCALE_LO = 1e-150
_FACTOR_HI = 1e100
_FACTOR_LO = 1e-100
_TWO512 = 2.0 ** 512
_TWOM512 = 2.0 ** -512
_ZERO_TOL = 1e-14
_LOG_UNDERFLOW = -745.0
_LOG_OVERFLOW = 700.0


def qpoch_one(a, q, eps, max_terms):
    """Infinite product prod_{k>=0}(1 - a q^k).

    Returns (value, terms, tail_bound, converged, zero_index).  zero_index
    is the k of a factor that vanished to working precision, -1 if none;
    when a factor vanishes the value is exactly 0.  Stops at the first k
    with |a| q^k / (1-q) < eps, then takes three guard factors.
    """
    a = complex(a)
    if a == 0:
        return 1.0 + 0j, 0, 0.0, True, -1
    p = 1.0 + 0j
    cur = a
    k = 0
    one_m_q = 1.0 - q
    guard = -1
    while k < max_terms:
        if abs(1.0 - cur) < _ZERO_TOL * (1.0 + abs(cur)):
            return 0j, k + 1, 0.0, True, k
        p *= 1.0 - cur
        cur *= q
        k += 1
        if guard > 0:
            guard -= 1
            if guard == 0:
                return p, k, abs(cur) / one_m_q, True, -1
        elif guard < 0 and abs(cur) / one_m_q < eps:
            guard = 3
    return p, k, abs(cur) / one_m_q, False, -1


def qpoch_ratio_scaled(nums, dens, q, eps, max_terms):
    """Interleaved ratio of infinite q-products, base-2 scaled.

    value = prod_k [prod_j (1 - n_j q^k)] / [prod_i (1 - d_i q^k)]
    Returns (mantissa, exp2, terms, tail_bound, converged, den_min);
    den_min is the smallest relative denominator factor
    |1 - d q^k| / (1 + |d q^k|) seen, so callers can flag near-pole
    evaluations.  An exactly vanishing denominator factor raises
    FloatingPointError.
    """
    ncur = [complex(v) for v in nums]
    dcur = [complex(v) for v in dens]
    nn = len(ncur)
    nd = len(dcur)
    den_min = math.inf
    amax = 0.0
    for v in ncur:
        av = abs(v)
        if av > amax:
            amax = av
    for v in dcur:
        av = abs(v)
        if av > amax:
            amax = av
    if amax == 0.0:
        return 1.0 + 0j, 0, 0, 0.0, True, den_min
    p = 1.0 + 0j
    e2 = 0
    k = 0
    one_m_q = 1.0 - q
    guard = -1
    while k < max_terms:
        # rescale inside the factor loops, banding oversized factors
        # before they touch the running product: one factor can carry a
        # modulus near 1e300 when callers fold integrands far from the
        # unit cell, and p * f must stay inside double range
        for i in range(nn):
            f = 1.0 - ncur[i]
            ncur[i] *= q
            fm = abs(f.real) + abs(f.imag)
            while fm > _FACTOR_HI:
                f *= _TWOM512
                fm *= _TWOM512
                e2 += 512
            while 0.0 < fm < _FACTOR_LO:
                f *= _TWO512
                fm *= _TWO512
                e2 -= 512
            p *= f
            m = abs(p.real) + abs(p.imag)
            if m > _RESCALE_HI:
                p *= _TWOM512
                e2 += 512
            elif 0.0 < m < _RESCALE_LO:
                p *= _TWO512
                e2 -= 512
        for i in range(nd):
            d = dcur[i]
            f = 1.0 - d
            rel = abs(f) / (1.0 + abs(d))
            if rel < den_min:
                den_min = rel
            if f == 0:
                raise FloatingPointError(
                    "vanishing denominator factor in q-product ratio"
                )
            dcur[i] *= q
            fm = abs(f.real) + abs(f.imag)
            while fm > _FACTOR_HI:
                f *= _TWOM512
                fm *= _TWOM512
                e2 -= 512
            while fm < _FACTOR_LO:
                f *= _TWO512
                fm *= _TWO512
                e2 += 512
            p /= f
            m = abs(p.real) + abs(p.imag)
            if m > _RESCALE_HI:
                p *= _TWOM512
                e2 += 512
            elif 0.0 < m < _RESCALE_LO:
                p *= _TWO512
                e2 -= 512
        k += 1
        amax *= q
        if p == 0:
            return 0j, 0, k, 0.0, True, den_min
        if guard > 0:
            guard -= 1
            if guard == 0:
                return p, e2, k, amax / one_m_q, True, den_min
        elif guard < 0 and amax / one_m_q < eps:
            guard = 3
    return p, e2, k, amax / one_m_q, False, den_min


def assemble(mant, exp2, logf):
    """exp(log(mant) + exp2*ln2 + logf) with controlled range behaviour.

    Underflow of the total real log returns exactly 0; overflow raises,
    because a product that large means the caller chose a bad route.
    """
    mant = complex(mant)
    logf = complex(logf)
    if mant == 0:
        return 0j
    lr = math.log(abs(mant)) + exp2 * LN2 + logf.real
    if lr < _LOG_UNDERFLOW:
        return 0j
    if lr > _LOG_OVERFLOW:
        raise OverflowError("assembled product exceeds double range")
    return cmath.exp(cmath.log(mant) + exp2 * LN2 + logf)


def bilateral_sum(nums, dens, z, q, vwp_a, use_vwp, eps, max_terms):
    """Two-sided series sum over integer n with t_0 = 1.

    Forward term ratio is prod_j (1 - a_j q^n) / prod_j (1 - b_j q^n) * z.
    With use_vwp the factor (1 - vwp_a q^{2n})/(1 - vwp_a) multiplies every
    term and is part of the stopping test (it grows like q^{-2|n|} for
    n -> -inf, so stopping on the bare ratio term would quit too early).
    The backward recursion uses the exact rewrite
    (1 - c q^{-m}) = q^{-m} (q^m - c) pairwise, so no q^{-m} is ever formed.

    Returns (value, fwd_terms, bwd_terms, fwd_tail, bwd_tail, converged,
    den_min).
    """
    z = complex(z)
    nfix = [complex(v) for v in nums]
    dfix = [complex(v) for v in dens]
    r = len(nfix)
    if len(dfix) != r:
        raise ValueError("bilateral series needs equal parameter counts")
    den_min = math.inf
    vq = complex(vwp_a) if use_vwp else 0j
    vden = 1.0 - vq if use_vwp else 1.0 + 0j
    q2 = q * q

    total = 1.0 + 0j

    ncur = list(nfix)
    dcur = list(dfix)
    t = 1.0 + 0j
    v2 = vq
    consec = 0
    fconv = False
    ftail = 0.0
    n = 0
    while n < max_terms:
        num = 1.0 + 0j
        for i in range(r):
            num *= 1.0 - ncur[i]
            ncur[i] *= q
        den = 1.0 + 0j
        for i in range(r):
            d = dcur[i]
            f = 1.0 - d
            rel = abs(f) / (1.0 + abs(d))
            if rel < den_min:
                den_min = rel
            den *= f
            dcur[i] *= q
        if den == 0:
            raise FloatingPointError("vanishing denominator factor in bilateral term")
        t = t * num / den * z
        n += 1
        if use_vwp:
            v2 *= q2
            s_term = t * (1.0 - v2) / vden
        else:
            s_term = t
        total += s_term
        mag = abs(s_term)
        if mag <= eps * max(1.0, abs(total)):
            consec += 1
            if consec >= 3:
                fconv = True
                ftail = mag
                break
        else:
            consec = 0
    fterms = n

    s = 1.0 + 0j
    qm = 1.0
    q2m = 1.0
    consec = 0
    bconv = False
    btail = 0.0
    m = 0
    istep = 1.0 / (z * q2) if use_vwp else 1.0 / z
    while m < max_terms:
        qm *= q
        num = 1.0 + 0j
        den = 1.0 + 0j
        for i in range(r):
            num *= qm - dfix[i]
            f = qm - nfix[i]
            rel = abs(f) / (1.0 + abs(nfix[i]))
            if rel < den_min:
                den_min = rel
            den *= f
        if den == 0:
            raise FloatingPointError("vanishing denominator factor in bilateral term")
        s = s * num / den * istep
        m += 1
        if use_vwp:
            q2m *= q2
            s_term = s * (q2m - vq) / vden
        else:
            s_term = s
        total += s_term
        mag = abs(s_term)
        if mag <= eps * max(1.0, abs(total)):
            consec += 1
            if consec >= 3:
                bconv = True
                btail = mag
                break
        else:
            consec = 0
    bterms = m

    return total, fterms, bterms, ftail, btail, fconv and bconv, den_min


def unilateral_sum(nums, dens, z, q, vwp_a, use_vwp, eps, max_terms):
    """One-sided series sum with the implicit (q;q)_n denominator.

    Term ratio: prod_j (1 - a_j q^n) / [(1 - q^{n+1}) prod_i (1 - b_i q^n)]
    times z, with the same optional very-well-poised factor as
    bilateral_sum.  A term that becomes exactly 0 terminates the series.
    Returns (value, terms, tail, converged, den_min).
    """
    z = complex(z)
    ncur = [complex(v) for v in nums]
    dcur = [complex(v) for v in dens]
    nn = len(ncur)
    nd = len(dcur)
    den_min = math.inf
    vq = complex(vwp_a) if use_vwp else 0j
    vden = 1.0 - vq if use_vwp else 1.0 + 0j
    q2 = q * q
    v2 = vq
    total = 1.0 + 0j
    t = 1.0 + 0j
    qn1 = q
    consec = 0
    conv = False
    tail = 0.0
    n = 0
    while n < max_terms:
        num = 1.0 + 0j
        for i in range(nn):
            num *= 1.0 - ncur[i]
            ncur[i] *= q
        den = 1.0 - qn1
        qn1 *= q
        for i in range(nd):
            d = dcur[i]
            f = 1.0 - d
            rel = abs(f) / (1.0 + abs(d))
            if rel < den_min:
                den_min = rel
            den *= f
            dcur[i] *= q
        if den == 0:
            raise FloatingPointError("vanishing denominator factor in series term")
        t = t * num / den * z
        n += 1
        if use_vwp:
            v2 *= q2
            s_term = t * (1.0 - v2) / vden
        else:
            s_term = t
        total += s_term
        if t == 0:
            conv = True
            tail = 0.0
            break
        mag = abs(s_term)
        if mag <= eps * max(1.0, abs(total)):
            consec += 1
            if consec >= 3:
                conv = True
                tail = mag
                break
        else:
            consec = 0
    return total, n, tail, conv, den_min


def jn_weighted_scaled(nu, wexp, x24, q, kind, eps, max_terms):
    """Normalized q-Bessel value paired with its matching weight product.

    Computes, as a base-2 scaled real pair,

        (q^{nu+1};q)_inf / [(q;q)_inf (-q^{wexp};q)_inf] * S(x24)

    where S is the kind-1 or kind-2 series in x24 = (x/2)^2.  The head is
    accumulated in log space so deeply negative nu (far fold nodes, where
    q^{nu+1} overflows double) still evaluates; the pairing with the weight
    product at the same offset is what keeps the total bounded.  Returns
    (mantissa, exp2, terms, converged).
    """
    lnq = math.log(q)
    sign = 1.0
    lh = 0.0
    lstop = math.log(eps * (1.0 - q))
    j = 0
    guard = -1
    hconv = False
    while j < max_terms:
        la = (nu + 1 + j) * lnq
        lw = (wexp + j) * lnq
        lq = (1 + j) * lnq
        if la > 0.0:
            ea = math.exp(-la)
            if ea == 1.0:
                return 0.0, 0, j, True
            lh += la + math.log1p(-ea)
            sign = -sign
        else:
            ea = math.exp(la)
            if ea == 1.0:
                return 0.0, 0, j, True
            lh += math.log1p(-ea)
        lh -= math.log1p(-math.exp(lq))
        if lw > 0.0:
            lh -= lw + math.log1p(math.exp(-lw))
        else:
            lh -= math.log1p(math.exp(lw))
        j += 1
        if guard > 0:
            guard -= 1
            if guard == 0:
                hconv = True
                break
        elif guard < 0 and la < lstop and lw < lstop and lq < lstop:
            guard = 3
    if not math.isfinite(lh):
        return 0.0, 0, j, True

    s = 1.0
    t = 1.0
    qm = 1.0
    consec = 0
    sconv = False
    m = 0
    while m < max_terms:
        qm_prev = qm
        m += 1
        qm *= q
        lfac = (nu + m) * lnq
        if kind == 1:
            if lfac > 690.0:
                # the reciprocal factor is below double tiny; tail is dead
                sconv = True
                break
            bigq = math.exp(lfac) if lfac > -745.0 else 0.0
            om = 1.0 - bigq
            if om == 0.0:
                raise FloatingPointError("q-Bessel series factor vanished")
            t *= -x24 / ((1.0 - qm) * om)
        else:
            if lfac > 0.0:
                inv = math.exp(-lfac)
                if inv == 1.0:
                    raise FloatingPointError("q-Bessel series factor vanished")
                qratio = -1.0 / (1.0 - inv)
            else:
                bigq = math.exp(lfac) if lfac > -745.0 else 0.0
                om = 1.0 - bigq
                if om == 0.0:
                    raise FloatingPointError("q-Bessel series factor vanished")
                qratio = bigq / om
            t *= -x24 * qm_prev / (1.0 - qm) * qratio
        s += t
        at = abs(t)
        if at <= eps * max(1.0, abs(s)):
            consec += 1
            if consec >= 3:
                sconv = True
                break
        else:
            consec = 0

    e2 = int(math.floor(lh / LN2))
    mant = sign * math.exp(lh - e2 * LN2) * s
    am = abs(mant)
    if am > _RESCALE_HI:
        mant *= _TWOM512
        e2 += 512
    elif 0.0 < am < _RESCALE_LO:
        mant *= _TWO512
        e2 -= 512
    return mant, e2, j + m, hconv and sconv
