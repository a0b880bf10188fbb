"""Numpy implementations of the hot loops.

Same contracts as the compiled module fermat._ckernels; fermat.kernels picks
one at import.  Counting works on encoded field elements (index a + b*ell for
the quadratic extension) so power residue tables are plain arrays.
"""

from __future__ import annotations

import math

import numpy as np

_SIEVE_MODULI = (9, 7, 13, 19)


def _pow_mod_arr(x: np.ndarray, e: int, ell: int) -> np.ndarray:
    out = np.ones_like(x)
    base = x % ell
    while e:
        if e & 1:
            out = out * base % ell
        base = base * base % ell
        e >>= 1
    return out


def count_curve_points_prime(ell: int, p: int, delta: int) -> tuple[int, int]:
    """Affine point counts of W: x^p+y^p=delta and C: v^p=u(delta-u) over F_ell."""
    d = delta % ell
    x = np.arange(ell, dtype=np.int64)
    xp = _pow_mod_arr(x, p, ell)
    roots = np.bincount(xp, minlength=ell)
    w_count = int(roots[(d - xp) % ell].sum())
    c_count = int(roots[x * (d - x) % ell].sum())
    return w_count, c_count


def _quad_mul(a1, b1, a2, b2, ell, m0, m1):
    # (a1 + b1 t)(a2 + b2 t) with t^2 = -(m1 t + m0)
    bb = b1 * b2 % ell
    a = (a1 * a2 - bb * m0) % ell
    b = (a1 * b2 + a2 * b1 - bb * m1) % ell
    return a, b


def _quad_pow(a, b, e, ell, m0, m1):
    ra = np.ones_like(a)
    rb = np.zeros_like(b)
    while e:
        if e & 1:
            ra, rb = _quad_mul(ra, rb, a, b, ell, m0, m1)
        a, b = _quad_mul(a, b, a, b, ell, m0, m1)
        e >>= 1
    return ra, rb


def count_curve_points_quad(
    ell: int, p: int, delta: int, m0: int, m1: int
) -> tuple[int, int]:
    """Affine counts over F_{ell^2} = F_ell[t]/(t^2 + m1 t + m0)."""
    q = ell * ell
    d = delta % ell
    idx = np.arange(q, dtype=np.int64)
    a = idx % ell
    b = idx // ell
    pa, pb = _quad_pow(a, b, p, ell, m0, m1)
    roots = np.bincount(pa + ell * pb, minlength=q)
    # W: count y with y^p = delta - x^p
    wa, wb = (d - pa) % ell, (-pb) % ell
    w_count = int(roots[wa + ell * wb].sum())
    # C: count v with v^p = u(delta - u)
    ca, cb = _quad_mul(a, b, (d - a) % ell, (-b) % ell, ell, m0, m1)
    c_count = int(roots[ca + ell * cb].sum())
    return w_count, c_count


def _icbrt(n: int) -> int:
    """Floor cube root for n >= 0."""
    if n == 0:
        return 0
    r = int(round(n ** (1.0 / 3.0)))
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _exact_cube_root(n: int) -> int | None:
    if n >= 0:
        r = _icbrt(n)
        return r if r * r * r == n else None
    r = _icbrt(-n)
    return -r if r * r * r == -n else None


def _cube_masks():
    masks = []
    for m in _SIEVE_MODULI:
        ok = np.zeros(m, dtype=bool)
        for t in range(m):
            ok[pow(t, 3, m)] = True
        masks.append(ok)
    return masks


_MASKS = _cube_masks()


def search_points(delta: int, hmax: int, bound: int) -> list[tuple[int, int, int]]:
    """Primitive (a, b, c), 0 < c <= hmax, |a|,|b| <= bound, a^3 + b^3 = delta c^3.

    c-major scan; for each c the second coordinate y is capped at
    sqrt(M/3) + 2 (no solutions beyond, since y^3 - |x|^3 >= 3y^2 - 3y + 1),
    candidates are sieved by cube residues before the exact root test.
    """
    if delta <= 0:
        raise ValueError("delta must be positive here; negate coordinates outside")
    if delta * hmax ** 3 + bound ** 3 >= 1 << 62:
        return _search_points_bigint(delta, hmax, bound)
    found = set()
    masks = _MASKS
    for c in range(1, hmax + 1):
        m_val = delta * c * c * c
        ymax = min(bound, math.isqrt(m_val // 3) + 2)
        ys = np.arange(0, ymax + 1, dtype=np.int64)
        t = m_val - ys * ys * ys
        keep = np.ones(len(ys), dtype=bool)
        for mod, mask in zip(_SIEVE_MODULI, masks):
            keep &= mask[t % mod]
        for y in ys[keep]:
            y = int(y)
            x = _exact_cube_root(m_val - y * y * y)
            if x is None or abs(x) > bound:
                continue
            for a, b in ((x, y), (y, x)):
                if math.gcd(math.gcd(abs(a), abs(b)), c) == 1:
                    found.add((a, b, c))
    return sorted(found)


def _search_points_bigint(delta, hmax, bound):
    """Exact-int fallback above the int64 range."""
    found = set()
    masks = _MASKS
    for c in range(1, hmax + 1):
        m_val = delta * c * c * c
        ymax = min(bound, math.isqrt(m_val // 3) + 2)
        for y in range(ymax + 1):
            t = m_val - y * y * y
            if not all(mask[t % mod] for mod, mask in zip(_SIEVE_MODULI, masks)):
                continue
            x = _exact_cube_root(t)
            if x is None or abs(x) > bound:
                continue
            for a, b in ((x, y), (y, x)):
                if math.gcd(math.gcd(abs(a), abs(b)), c) == 1:
                    found.add((a, b, c))
    return sorted(found)
