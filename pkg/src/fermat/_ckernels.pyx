# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled counterparts of fermat._kernels_py (same contracts)."""

from libc.math cimport cbrt, sqrt
from libc.stdlib cimport free, malloc


cdef long _pow_mod(long x, long e, long ell) nogil:
    cdef long out = 1
    x %= ell
    while e:
        if e & 1:
            out = out * x % ell
        x = x * x % ell
        e >>= 1
    return out


def count_curve_points_prime(long ell, long p, long delta):
    cdef long d = delta % ell
    if d < 0:
        d += ell
    cdef long* roots = <long*> malloc(ell * sizeof(long))
    cdef long* xp = <long*> malloc(ell * sizeof(long))
    if roots == NULL or xp == NULL:
        free(roots); free(xp)
        raise MemoryError()
    cdef long x, t, w_count = 0, c_count = 0
    for x in range(ell):
        roots[x] = 0
    for x in range(ell):
        xp[x] = _pow_mod(x, p, ell)
        roots[xp[x]] += 1
    for x in range(ell):
        t = (d - xp[x]) % ell
        if t < 0:
            t += ell
        w_count += roots[t]
        t = x * ((d - x + ell) % ell) % ell
        c_count += roots[t]
    free(roots); free(xp)
    return w_count, c_count


cdef inline void _qmul(long a1, long b1, long a2, long b2,
                       long ell, long m0, long m1, long* oa, long* ob) nogil:
    cdef long bb = b1 * b2 % ell
    cdef long a = (a1 * a2 - bb * m0) % ell
    cdef long b = (a1 * b2 + a2 * b1 - bb * m1) % ell
    if a < 0:
        a += ell
    if b < 0:
        b += ell
    oa[0] = a
    ob[0] = b


cdef void _qpow(long a, long b, long e, long ell, long m0, long m1,
                long* oa, long* ob) nogil:
    cdef long ra = 1, rb = 0
    while e:
        if e & 1:
            _qmul(ra, rb, a, b, ell, m0, m1, &ra, &rb)
        _qmul(a, b, a, b, ell, m0, m1, &a, &b)
        e >>= 1
    oa[0] = ra
    ob[0] = rb


def count_curve_points_quad(long ell, long p, long delta, long m0, long m1):
    cdef long q = ell * ell
    cdef long d = delta % ell
    if d < 0:
        d += ell
    cdef long* roots = <long*> malloc(q * sizeof(long))
    cdef long* pa = <long*> malloc(q * sizeof(long))
    cdef long* pb = <long*> malloc(q * sizeof(long))
    if roots == NULL or pa == NULL or pb == NULL:
        free(roots); free(pa); free(pb)
        raise MemoryError()
    cdef long i, a, b, ra, rb, w_count = 0, c_count = 0
    for i in range(q):
        roots[i] = 0
    for i in range(q):
        a = i % ell
        b = i / ell
        _qpow(a, b, p, ell, m0, m1, &ra, &rb)
        pa[i] = ra
        pb[i] = rb
        roots[ra + ell * rb] += 1
    for i in range(q):
        a = i % ell
        b = i / ell
        # W: y^p = delta - x^p
        ra = (d - pa[i]) % ell
        if ra < 0:
            ra += ell
        rb = (ell - pb[i]) % ell
        w_count += roots[ra + ell * rb]
        # C: v^p = u (delta - u)
        _qmul(a, b, (d - a + ell) % ell, (ell - b) % ell, ell, m0, m1, &ra, &rb)
        c_count += roots[ra + ell * rb]
    free(roots); free(pa); free(pb)
    return w_count, c_count


cdef long _exact_cube_root(long n, bint* ok) nogil:
    cdef long m = n if n >= 0 else -n
    cdef long r = <long> cbrt(<double> m)
    while r * r * r > m:
        r -= 1
    while (r + 1) * (r + 1) * (r + 1) <= m:
        r += 1
    ok[0] = (r * r * r == m)
    return r if n >= 0 else -r


cdef long _gcd(long a, long b) nogil:
    cdef long t
    while b:
        t = a % b
        a = b
        b = t
    return a


def search_points(long delta, long hmax, long bound):
    """Same contract as the pure version; int64 range must suffice."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    if <double> delta * hmax * hmax * hmax + <double> bound * bound * bound >= 4.6e18:
        raise OverflowError("search range exceeds the compiled kernel's int64 budget")
    cdef bint ok9[9]
    cdef bint ok7[7]
    cdef bint ok13[13]
    cdef bint ok19[19]
    cdef long t
    for t in range(9):
        ok9[t] = False
    for t in range(7):
        ok7[t] = False
    for t in range(13):
        ok13[t] = False
    for t in range(19):
        ok19[t] = False
    for t in range(9):
        ok9[t * t * t % 9] = True
    for t in range(7):
        ok7[t * t * t % 7] = True
    for t in range(13):
        ok13[t * t * t % 13] = True
    for t in range(19):
        ok19[t * t * t % 19] = True

    found = set()
    cdef long c, y, ymax, x, m_val, r
    cdef bint ok
    for c in range(1, hmax + 1):
        m_val = delta * c * c * c
        ymax = <long> sqrt(<double> m_val / 3.0) + 2
        if ymax > bound:
            ymax = bound
        for y in range(ymax + 1):
            t = m_val - y * y * y
            r = t % 9
            if not ok9[r + 9 if r < 0 else r]:
                continue
            r = t % 7
            if not ok7[r + 7 if r < 0 else r]:
                continue
            r = t % 13
            if not ok13[r + 13 if r < 0 else r]:
                continue
            r = t % 19
            if not ok19[r + 19 if r < 0 else r]:
                continue
            x = _exact_cube_root(t, &ok)
            if not ok or (x if x >= 0 else -x) > bound:
                continue
            if _gcd(_gcd(x if x >= 0 else -x, y), c) == 1:
                found.add((x, y, c))
                found.add((y, x, c))
    return sorted(found)
