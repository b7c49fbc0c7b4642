# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics mirror qverify._kernels_py line for line.

Parameter lists are copied into fixed C buffers (cap 24, far above what any
caller builds), everything inside the loops is C double / double complex.
"""

from libc.math cimport INFINITY, atan2, cos, exp, fabs, floor, hypot
from libc.math cimport isfinite, ldexp, log, log1p, sin

DEF MAXP = 24

cdef double LN2 = 0.6931471805599453
cdef double RESCALE_HI = 1e150
cdef double RESCALE_LO = 1e-150
cdef double FACTOR_HI = 1e100
cdef double FACTOR_LO = 1e-100
cdef double TWO512 = ldexp(1.0, 512)
cdef double TWOM512 = ldexp(1.0, -512)
cdef double ZERO_TOL = 1e-14
cdef double LOG_UNDERFLOW = -745.0
cdef double LOG_OVERFLOW = 700.0


cdef inline double cxabs(double complex z):
    return hypot(z.real, z.imag)


cdef inline double complex cxexp(double complex w):
    cdef double e = exp(w.real)
    return e * cos(w.imag) + 1j * (e * sin(w.imag))


cdef inline double complex cxlog(double complex z):
    return log(hypot(z.real, z.imag)) + 1j * atan2(z.imag, z.real)


cdef int _fill(object seq, double complex *buf) except -1:
    cdef int n = len(seq)
    cdef int i
    if n > MAXP:
        raise ValueError("parameter list longer than kernel buffer")
    for i in range(n):
        buf[i] = seq[i]
    return n


def qpoch_one(a, double q, double eps, long max_terms):
    cdef double complex av = a
    cdef double complex p = 1.0
    cdef double complex cur
    cdef long k = 0
    cdef double one_m_q = 1.0 - q
    cdef int guard = -1
    if av == 0:
        return 1.0 + 0j, 0, 0.0, True, -1
    cur = av
    while k < max_terms:
        if cxabs(1.0 - cur) < ZERO_TOL * (1.0 + cxabs(cur)):
            return 0j, k + 1, 0.0, True, k
        p = p * (1.0 - cur)
        cur = cur * q
        k += 1
        if guard > 0:
            guard -= 1
            if guard == 0:
                return p, k, cxabs(cur) / one_m_q, True, -1
        elif guard < 0 and cxabs(cur) / one_m_q < eps:
            guard = 3
    return p, k, cxabs(cur) / one_m_q, False, -1


def qpoch_ratio_scaled(nums, dens, double q, double eps, long max_terms):
    cdef double complex nbuf[MAXP]
    cdef double complex dbuf[MAXP]
    cdef int nn = _fill(nums, nbuf)
    cdef int nd = _fill(dens, dbuf)
    cdef double den_min = INFINITY
    cdef double amax = 0.0
    cdef double av, rel, m
    cdef int i
    cdef long k = 0, e2 = 0
    cdef double complex p = 1.0
    cdef double complex d, f
    cdef double one_m_q = 1.0 - q
    cdef int guard = -1
    for i in range(nn):
        av = cxabs(nbuf[i])
        if av > amax:
            amax = av
    for i in range(nd):
        av = cxabs(dbuf[i])
        if av > amax:
            amax = av
    if amax == 0.0:
        return 1.0 + 0j, 0, 0, 0.0, True, den_min
    while k < max_terms:
        # rescale inside the factor loops, banding oversized factors
        # before they touch the running product: one factor can carry a
        # modulus near 1e300 when callers fold integrands far from the
        # unit cell, and p * f must stay inside double range
        for i in range(nn):
            f = 1.0 - nbuf[i]
            nbuf[i] = nbuf[i] * q
            m = fabs(f.real) + fabs(f.imag)
            while m > FACTOR_HI:
                f = f * TWOM512
                m = m * TWOM512
                e2 += 512
            while 0.0 < m < FACTOR_LO:
                f = f * TWO512
                m = m * TWO512
                e2 -= 512
            p = p * f
            m = fabs(p.real) + fabs(p.imag)
            if m > RESCALE_HI:
                p = p * TWOM512
                e2 += 512
            elif 0.0 < m < RESCALE_LO:
                p = p * TWO512
                e2 -= 512
        for i in range(nd):
            d = dbuf[i]
            f = 1.0 - d
            rel = cxabs(f) / (1.0 + cxabs(d))
            if rel < den_min:
                den_min = rel
            if f == 0:
                raise FloatingPointError(
                    "vanishing denominator factor in q-product ratio"
                )
            dbuf[i] = dbuf[i] * q
            m = fabs(f.real) + fabs(f.imag)
            while m > FACTOR_HI:
                f = f * TWOM512
                m = m * TWOM512
                e2 -= 512
            while m < FACTOR_LO:
                f = f * TWO512
                m = m * TWO512
                e2 += 512
            p = p / f
            m = fabs(p.real) + fabs(p.imag)
            if m > RESCALE_HI:
                p = p * TWOM512
                e2 += 512
            elif 0.0 < m < RESCALE_LO:
                p = p * TWO512
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
    cdef double complex mv = mant
    cdef double complex lf = logf
    cdef long e2 = exp2
    cdef double lr
    cdef double complex w
    if mv == 0:
        return 0j
    lr = log(cxabs(mv)) + e2 * LN2 + lf.real
    if lr < LOG_UNDERFLOW:
        return 0j
    if lr > LOG_OVERFLOW:
        raise OverflowError("assembled product exceeds double range")
    w = cxlog(mv) + e2 * LN2 + lf
    return cxexp(w)


def bilateral_sum(nums, dens, z, double q, vwp_a, int use_vwp,
                  double eps, long max_terms):
    cdef double complex nfix[MAXP]
    cdef double complex dfix[MAXP]
    cdef double complex ncur[MAXP]
    cdef double complex dcur[MAXP]
    cdef int r = _fill(nums, nfix)
    cdef int rd = _fill(dens, dfix)
    cdef double complex zv = z
    cdef double complex vq = vwp_a if use_vwp else 0
    cdef double complex vden = (1.0 - vq) if use_vwp else 1.0
    cdef double q2 = q * q
    cdef double den_min = INFINITY
    cdef double complex total = 1.0
    cdef double complex t = 1.0
    cdef double complex v2 = vq
    cdef double complex num, den, d, f, s_term, s, istep
    cdef double rel, mag, qm, q2m
    cdef int consec = 0, i
    cdef bint fconv = False, bconv = False
    cdef double ftail = 0.0, btail = 0.0
    cdef long n = 0, m = 0, fterms, bterms
    if rd != r:
        raise ValueError("bilateral series needs equal parameter counts")
    for i in range(r):
        ncur[i] = nfix[i]
        dcur[i] = dfix[i]
    while n < max_terms:
        num = 1.0
        for i in range(r):
            num = num * (1.0 - ncur[i])
            ncur[i] = ncur[i] * q
        den = 1.0
        for i in range(r):
            d = dcur[i]
            f = 1.0 - d
            rel = cxabs(f) / (1.0 + cxabs(d))
            if rel < den_min:
                den_min = rel
            den = den * f
            dcur[i] = dcur[i] * q
        if den == 0:
            raise FloatingPointError("vanishing denominator factor in bilateral term")
        t = t * num / den * zv
        n += 1
        if use_vwp:
            v2 = v2 * q2
            s_term = t * (1.0 - v2) / vden
        else:
            s_term = t
        total = total + s_term
        mag = cxabs(s_term)
        if mag <= eps * max(1.0, cxabs(total)):
            consec += 1
            if consec >= 3:
                fconv = True
                ftail = mag
                break
        else:
            consec = 0
    fterms = n

    s = 1.0
    qm = 1.0
    q2m = 1.0
    consec = 0
    istep = 1.0 / (zv * q2) if use_vwp else 1.0 / zv
    while m < max_terms:
        qm *= q
        num = 1.0
        den = 1.0
        for i in range(r):
            num = num * (qm - dfix[i])
            f = qm - nfix[i]
            rel = cxabs(f) / (1.0 + cxabs(nfix[i]))
            if rel < den_min:
                den_min = rel
            den = den * f
        if den == 0:
            raise FloatingPointError("vanishing denominator factor in bilateral term")
        s = s * num / den * istep
        m += 1
        if use_vwp:
            q2m *= q2
            s_term = s * (q2m - vq) / vden
        else:
            s_term = s
        total = total + s_term
        mag = cxabs(s_term)
        if mag <= eps * max(1.0, cxabs(total)):
            consec += 1
            if consec >= 3:
                bconv = True
                btail = mag
                break
        else:
            consec = 0
    bterms = m

    return total, fterms, bterms, ftail, btail, fconv and bconv, den_min


def unilateral_sum(nums, dens, z, double q, vwp_a, int use_vwp,
                   double eps, long max_terms):
    cdef double complex ncur[MAXP]
    cdef double complex dcur[MAXP]
    cdef int nn = _fill(nums, ncur)
    cdef int nd = _fill(dens, dcur)
    cdef double complex zv = z
    cdef double complex vq = vwp_a if use_vwp else 0
    cdef double complex vden = (1.0 - vq) if use_vwp else 1.0
    cdef double q2 = q * q
    cdef double complex v2 = vq
    cdef double complex total = 1.0
    cdef double complex t = 1.0
    cdef double qn1 = q
    cdef double den_min = INFINITY
    cdef double complex num, den, d, f, s_term
    cdef double rel, mag
    cdef double tail = 0.0
    cdef int consec = 0, i
    cdef bint conv = False
    cdef long n = 0
    while n < max_terms:
        num = 1.0
        for i in range(nn):
            num = num * (1.0 - ncur[i])
            ncur[i] = ncur[i] * q
        den = 1.0 - qn1
        qn1 *= q
        for i in range(nd):
            d = dcur[i]
            f = 1.0 - d
            rel = cxabs(f) / (1.0 + cxabs(d))
            if rel < den_min:
                den_min = rel
            den = den * f
            dcur[i] = dcur[i] * q
        if den == 0:
            raise FloatingPointError("vanishing denominator factor in series term")
        t = t * num / den * zv
        n += 1
        if use_vwp:
            v2 = v2 * q2
            s_term = t * (1.0 - v2) / vden
        else:
            s_term = t
        total = total + s_term
        if t == 0:
            conv = True
            tail = 0.0
            break
        mag = cxabs(s_term)
        if mag <= eps * max(1.0, cxabs(total)):
            consec += 1
            if consec >= 3:
                conv = True
                tail = mag
                break
        else:
            consec = 0
    return total, n, tail, conv, den_min


def jn_weighted_scaled(double nu, double wexp, double x24, double q,
                       int kind, double eps, long max_terms):
    cdef double lnq = log(q)
    cdef double sign = 1.0
    cdef double lh = 0.0
    cdef double lstop = log(eps * (1.0 - q))
    cdef long j = 0, m = 0
    cdef int guard = -1
    cdef bint hconv = False, sconv = False
    cdef double la, lw, lq, ea
    while j < max_terms:
        la = (nu + 1 + j) * lnq
        lw = (wexp + j) * lnq
        lq = (1 + j) * lnq
        if la > 0.0:
            ea = exp(-la)
            if ea == 1.0:
                return 0.0, 0, j, True
            lh += la + log1p(-ea)
            sign = -sign
        else:
            ea = exp(la)
            if ea == 1.0:
                return 0.0, 0, j, True
            lh += log1p(-ea)
        lh -= log1p(-exp(lq))
        if lw > 0.0:
            lh -= lw + log1p(exp(-lw))
        else:
            lh -= log1p(exp(lw))
        j += 1
        if guard > 0:
            guard -= 1
            if guard == 0:
                hconv = True
                break
        elif guard < 0 and la < lstop and lw < lstop and lq < lstop:
            guard = 3
    if not isfinite(lh):
        return 0.0, 0, j, True

    cdef double s = 1.0
    cdef double t = 1.0
    cdef double qm = 1.0
    cdef double qm_prev, lfac, bigq, om, qratio, inv, at
    cdef int consec = 0
    while m < max_terms:
        qm_prev = qm
        m += 1
        qm *= q
        lfac = (nu + m) * lnq
        if kind == 1:
            if lfac > 690.0:
                sconv = True
                break
            bigq = exp(lfac) if lfac > -745.0 else 0.0
            om = 1.0 - bigq
            if om == 0.0:
                raise FloatingPointError("q-Bessel series factor vanished")
            t *= -x24 / ((1.0 - qm) * om)
        else:
            if lfac > 0.0:
                inv = exp(-lfac)
                if inv == 1.0:
                    raise FloatingPointError("q-Bessel series factor vanished")
                qratio = -1.0 / (1.0 - inv)
            else:
                bigq = exp(lfac) if lfac > -745.0 else 0.0
                om = 1.0 - bigq
                if om == 0.0:
                    raise FloatingPointError("q-Bessel series factor vanished")
                qratio = bigq / om
            t *= -x24 * qm_prev / (1.0 - qm) * qratio
        s += t
        at = fabs(t)
        if at <= eps * max(1.0, fabs(s)):
            consec += 1
            if consec >= 3:
                sconv = True
                break
        else:
            consec = 0

    cdef long e2 = <long> floor(lh / LN2)
    cdef double mant = sign * exp(lh - e2 * LN2) * s
    cdef double am = fabs(mant)
    if am > RESCALE_HI:
        mant *= TWOM512
        e2 += 512
    elif 0.0 < am < RESCALE_LO:
        mant *= TWO512
        e2 -= 512
    return mant, e2, j + m, hconv and sconv
