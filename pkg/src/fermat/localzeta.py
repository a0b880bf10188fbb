"""Local arithmetic of the twisted curves W: X^p+Y^p = delta and
C: V^p = U(delta-U): brute-force point counts, the Jacobi-sum local
L-polynomial, zeta cross-checks, and the two torsion bounds.

Projective bookkeeping (historically the main bug source, hence verify_zeta):
the smooth model of C gains exactly one rational point at infinity for every
odd p; the plane Fermat curve W is smooth and gains the solutions of
t^p = -1, i.e. gcd(p, q-1) points when q = 1 mod p and one point otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from . import kernels
from .cyclotomic import CycInt
from .errors import BadReduction, NoWitnessBelow, ZetaMismatch
from .ffield import FieldSpec, MultCharacter, _field_log_table, char_of_order, make_field


@dataclass(frozen=True)
class TwistClass:
    """delta up to p-th powers: the curve only depends on this class."""

    p: int
    delta: int
    delta_free: int
    supp: frozenset

    @classmethod
    def make(cls, p: int, delta: int) -> "TwistClass":
        if delta == 0:
            raise ValueError("delta must be nonzero")
        if p < 3 or not sympy.isprime(p):
            raise ValueError("p must be an odd prime")
        free = 1
        for q, e in sympy.factorint(abs(delta)).items():
            free *= q ** (e % p)
        # -1 is a p-th power for odd p, so the class of delta has a positive
        # p-th-power-free representative
        supp = frozenset(sympy.factorint(free))
        return cls(p, delta, free, supp)

    def bad_primes(self) -> frozenset:
        return self.supp | {self.p}


def _num_pth_roots_generic(field: FieldSpec, p: int):
    """roots[encoded c] = #solutions of y^p = c, via the field's log table."""
    q = field.q
    table, _g = _field_log_table(field)
    roots = [0] * q
    if (q - 1) % p == 0:
        for n in range(1, q):
            roots[n] = p if table[n] % p == 0 else 0
    else:
        for n in range(1, q):
            roots[n] = 1
    roots[field.encode(field.zero())] = 1
    return roots


def _count_generic(field: FieldSpec, p: int, delta: int) -> tuple[int, int]:
    roots = _num_pth_roots_generic(field, p)
    d = field.from_int(delta)
    w_count = 0
    c_count = 0
    for u in field.elements():
        t = field.sub(d, field.pow(u, p))
        w_count += roots[field.encode(t)]
        c_count += roots[field.encode(field.mul(u, field.sub(d, u)))]
    return w_count, c_count


def _counts(field: FieldSpec, p: int, delta: int) -> tuple[int, int]:
    if field.f == 1:
        return kernels.count_curve_points_prime(field.ell, p, delta)
    if field.f == 2:
        m0, m1 = field.modulus[0], field.modulus[1]
        return kernels.count_curve_points_quad(field.ell, p, delta, m0, m1)
    return _count_generic(field, p, delta)


def _validate_morphism(field: FieldSpec, p: int, delta: int) -> int:
    """Enumerate W(F_q) and check psi(x, y) = (x^p, x y) lands on C; returns #W."""
    d = field.from_int(delta)
    # group the p-th power map's preimages once
    pre: dict = {}
    for y in field.elements():
        pre.setdefault(field.encode(field.pow(y, p)), []).append(y)
    count = 0
    for x in field.elements():
        xp = field.pow(x, p)
        for y in pre.get(field.encode(field.sub(d, xp)), ()):
            count += 1
            u, v = xp, field.mul(x, y)
            lhs = field.pow(v, p)
            rhs = field.mul(u, field.sub(d, u))
            if lhs != rhs:
                raise ZetaMismatch(1, "psi(W) on C", (x, y))
    return count


def count_points(
    curve: str,
    delta: int,
    field: FieldSpec,
    p: int = 3,
    projective: bool = False,
) -> int:
    """Exact point count of W_delta or C_delta over the given field.

    Counting W also replays the twisting morphism on every solution found.
    """
    if curve not in ("W", "C"):
        raise ValueError("curve must be 'W' or 'C'")
    if delta % field.ell == 0 or p == field.ell:
        raise BadReduction(f"char {field.ell} divides p*delta")
    w_count, c_count = _counts(field, p, delta)
    if curve == "W":
        checked = _validate_morphism(field, p, delta)
        assert checked == w_count
        if not projective:
            return w_count
        q = field.q
        t_solutions = math.gcd(p, q - 1) if (q - 1) % p == 0 else 1
        return w_count + t_solutions
    return c_count + (1 if projective else 0)


@dataclass(frozen=True)
class LocalLPolynomial:
    """Numerator P_v(T) of the local zeta function of the smooth model of C."""

    ell: int
    f: int
    coeffs: tuple[int, ...]
    provenance: str = "JacobiSum"

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def value_at_one(self) -> int:
        return sum(self.coeffs)

    def power_sums(self, kmax: int) -> list[int]:
        """Exact power sums of the reciprocal roots via Newton's identities."""
        c = list(self.coeffs[1:]) + [0] * kmax
        s: list[int] = []
        for k in range(1, kmax + 1):
            acc = -k * c[k - 1] if k - 1 < len(self.coeffs) - 1 else 0
            for j in range(1, k):
                if j <= len(self.coeffs) - 1:
                    acc -= c[j - 1] * s[k - j - 1]
            s.append(acc)
        return s

    def reciprocal_root_moduli(self) -> list[float]:
        import numpy as np

        roots = np.roots(list(reversed(self.coeffs)))
        return sorted(1.0 / abs(r) for r in roots)


@lru_cache(maxsize=None)
def _jacobi_beta_orbits(p: int, ell: int, delta_free: int):
    """One (exponent, jacobi) pair per Frobenius orbit of nontrivial characters."""
    f = sympy.n_order(ell, p)
    field = make_field(ell, f)
    chi = char_of_order(field, p)
    e_d2 = chi.eval_int(delta_free * delta_free % ell)
    seen = set()
    orbit_data = []
    for a in range(1, p):
        if a in seen:
            continue
        orbit = set()
        b = a
        while b not in orbit:
            orbit.add(b)
            b = b * ell % p
        seen |= orbit
        from .ffield import jacobi_sum

        j = jacobi_sum(chi.power(a), chi.power(a))
        orbit_data.append(((e_d2 * a) % p, j))
    return f, tuple(orbit_data)


def local_L_polynomial(tc: TwistClass, ell: int) -> LocalLPolynomial:
    """P_v(T) from character sums: product over character orbits of
    (1 - chi^a(delta^2) j(chi^a, chi^a) T^f), expanded exactly in Z[zeta_p]."""
    if ell in tc.bad_primes():
        raise BadReduction(f"{ell} divides p*delta")
    p = tc.p
    f, orbits = _jacobi_beta_orbits(p, ell, tc.delta_free)
    # polynomial in T over Z[zeta_p], coefficient list indexed by T-degree
    poly: list[CycInt] = [CycInt.from_int(p, 1)]
    for e, j in orbits:
        beta = CycInt.zeta_power(p, e) * j
        new = [CycInt.from_int(p, 0)] * (len(poly) + f)
        for k, c in enumerate(poly):
            new[k] = new[k] + c
            new[k + f] = new[k + f] - c * beta
        poly = new
    coeffs = []
    for c in poly:
        assert c.is_rational(), "L-polynomial coefficient not rational: normalization bug"
        coeffs.append(c.coeffs[0])
    assert coeffs[0] == 1 and len(coeffs) == p, "degree must be p-1 with constant 1"
    lp = LocalLPolynomial(ell, f, tuple(coeffs))
    assert lp.value_at_one() > 0
    return lp


def verify_zeta(tc: TwistClass, ell: int) -> dict:
    """Check #C~(F_{ell^k}) against the L-polynomial for k = 1 .. 2g, exactly."""
    lp = local_L_polynomial(tc, ell)
    g2 = tc.p - 1
    sums = lp.power_sums(g2)
    report = {"ell": ell, "coeffs": lp.coeffs, "counts": []}
    for k in range(1, g2 + 1):
        field = make_field(ell, k)
        actual = count_points("C", tc.delta_free, field, p=tc.p, projective=True)
        expected = ell ** k + 1 - sums[k - 1]
        report["counts"].append((k, actual))
        if actual != expected:
            raise ZetaMismatch(k, expected, actual)
    return report


def torsion_exclude(tc: TwistClass, q: int, ell_bound: int = 10 ** 6) -> dict:
    """Witness prime for the absence of q-torsion: least inert ell = 1 mod q
    of good reduction, where P_v(1) = 1 + ell = 2 mod q."""
    if tc.p != 3:
        raise ValueError("torsion exclusion is pinned to p=3")
    if q in (2, 3):
        raise ValueError("q | 2 D: use torsion_bound_M")
    for ell in sympy.primerange(2, ell_bound):
        if ell % 3 == 2 and ell % q == 1 and ell not in tc.bad_primes():
            pv1 = 1 + ell
            assert pv1 % q == 2 % q and pv1 % q != 0
            return {"q": q, "ell": ell, "Pv1": pv1, "Pv1_mod_q": pv1 % q}
    raise NoWitnessBelow(f"no witness prime below {ell_bound} for q={q}")


def torsion_bound_M(tc: TwistClass, c_bound: int = 6) -> dict:
    """M = prod over q | 2 D of q^{c_q}: torsion embeds in the M-torsion.

    For p=3, F=Q the relevant field tower is Q(omega, mu_{q^c}); Galois
    elements are unit classes u mod lcm(3, q^c), and the search wants
    u = 2 mod 3 whose restriction to Q(mu_{q^c}) has order > 1.
    """
    if tc.p != 3:
        raise ValueError("torsion bound is pinned to p=3")
    certificates = {}
    m_val = 1
    for q in (2, 3):
        found = None
        for c in range(1, c_bound + 1):
            level = math.lcm(3, q ** c)
            for u in range(1, level):
                if math.gcd(u, level) != 1 or u % 3 != 2:
                    continue
                order = sympy.n_order(u, q ** c) if q ** c > 2 else 1
                if order > 1:
                    found = (c, u, level)
                    break
            if found:
                break
        if not found:
            raise NoWitnessBelow(f"no Galois witness for q={q} below level q^{c_bound}")
        c_q, u, level = found
        certificates[q] = {"c_q": c_q, "witness_unit": u, "cyclotomic_level": level}
        m_val *= q ** c_q
    return {"M": m_val, "certificates": certificates}
