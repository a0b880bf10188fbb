"""Finite fields F_{ell^f}, multiplicative characters of exact order r,
and Gauss/Jacobi sums.

Fields are value objects: a prime ell, a degree f and a monic irreducible
modulus over F_ell.  Elements are coefficient tuples of length f.  A full
discrete-log table is built lazily per field (fields are capped at q <= 2^40,
tables at q <= 2^22) and shared read-only, so characters evaluate in O(1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dfield
from functools import lru_cache

import sympy

from .cyclotomic import CycInt
from .errors import (
    ExtensionFieldUnsupported,
    FieldMismatch,
    NoIrreducibleFound,
    NotPrime,
    OrderDoesNotDivide,
    OrderMismatch,
)

_MAX_Q = 1 << 40
_MAX_TABLE_Q = 1 << 22


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mulmod(a, b, modulus, ell):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    prod[i + j] = (prod[i + j] + ca * cb) % ell
    return _poly_divmod(prod, modulus, ell)


def _poly_divmod(p, modulus, ell):
    p = list(p)
    dm = len(modulus) - 1
    for i in range(len(p) - 1, dm - 1, -1):
        c = p[i]
        if c:
            p[i] = 0
            for j in range(dm):
                p[i - dm + j] = (p[i - dm + j] - c * modulus[j]) % ell
    del p[dm:]
    while len(p) < dm:
        p.append(0)
    return p


def _poly_powmod(base, e, modulus, ell):
    result = [1] + [0] * (len(modulus) - 2)
    base = list(base)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, modulus, ell)
        base = _poly_mulmod(base, base, modulus, ell)
        e >>= 1
    return result


def _poly_gcd(a, b, ell):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv = pow(b[-1], -1, ell)
        bm = [c * inv % ell for c in b]
        r = list(a)
        for i in range(len(r) - 1, len(bm) - 2, -1):
            c = r[i]
            if c:
                r[i] = 0
                for j in range(len(bm) - 1):
                    r[i - len(bm) + 1 + j] = (r[i - len(bm) + 1 + j] - c * bm[j]) % ell
        a, b = b, _poly_trim(r)
    return a


def _is_irreducible(modulus, ell, f):
    """Rabin test: x^(ell^f) = x mod m, and gcd(x^(ell^(f/t)) - x, m) = 1."""
    if f == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, ell ** f, modulus, ell)
    target = _poly_divmod([0, 1], modulus, ell)
    if xq != target:
        return False
    for t in sympy.primefactors(f):
        xk = _poly_powmod(x, ell ** (f // t), modulus, ell)
        diff = [(a - b) % ell for a, b in zip(xk, target)]
        if len(_poly_gcd(diff, modulus, ell)) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """F_{ell^f} presented as F_ell[x]/(modulus)."""

    ell: int
    f: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not sympy.isprime(self.ell):
            raise NotPrime(f"{self.ell} is not prime")
        if self.f < 1 or len(self.modulus) != self.f + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        if any(not 0 <= c < self.ell for c in self.modulus[:-1]):
            raise ValueError("modulus coefficients must be reduced mod ell")
        if self.ell ** self.f > _MAX_Q:
            raise ValueError(f"field size exceeds the 2^40 cap")
        if not _is_irreducible(list(self.modulus), self.ell, self.f):
            raise ValueError("modulus is reducible")

    @property
    def q(self) -> int:
        return self.ell ** self.f

    def zero(self):
        return (0,) * self.f

    def one(self):
        return (1,) + (0,) * (self.f - 1)

    def add(self, a, b):
        return tuple((x + y) % self.ell for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.ell for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.ell for x in a)

    def mul(self, a, b):
        if self.f == 1:
            return (a[0] * b[0] % self.ell,)
        return tuple(_poly_mulmod(list(a), list(b), list(self.modulus), self.ell))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.f == 1:
            return (pow(a[0], e, self.ell),)
        return tuple(_poly_powmod(list(a), e, list(self.modulus), self.ell))

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def from_int(self, n: int):
        """Embed a rational integer via the prime subfield."""
        return (n % self.ell,) + (0,) * (self.f - 1)

    def encode(self, a) -> int:
        n = 0
        for c in reversed(a):
            n = n * self.ell + c
        return n

    def decode(self, n: int):
        coeffs = []
        for _ in range(self.f):
            n, c = divmod(n, self.ell)
            coeffs.append(c)
        return tuple(coeffs)

    def elements(self):
        for n in range(self.q):
            yield self.decode(n)


def make_field(ell: int, f: int) -> FieldSpec:
    """Deterministic field: the lowest monic irreducible in encoded order."""
    if not sympy.isprime(ell):
        raise NotPrime(f"{ell} is not prime")
    if f < 1:
        raise ValueError("degree must be >= 1")
    if f == 1:
        return FieldSpec(ell, 1, (0, 1))
    for n in range(ell ** f):
        low = []
        m = n
        for _ in range(f):
            m, c = divmod(m, ell)
            low.append(c)
        modulus = tuple(low) + (1,)
        if _is_irreducible(list(modulus), ell, f):
            return FieldSpec(ell, f, modulus)
    raise NoIrreducibleFound(f"no irreducible of degree {f} over F_{ell}")


@lru_cache(maxsize=128)
def _field_log_table(spec: FieldSpec) -> tuple[tuple[int, ...], int]:
    """(dlog table indexed by encoded element, encoded generator).

    The generator is the least element (encoded order) of multiplicative
    order q-1; the table is built by one pass through its powers.
    """
    q = spec.q
    if q > _MAX_TABLE_Q:
        raise ValueError("field too large for a dense log table")
    fact = sympy.factorint(q - 1)
    gen = None
    for n in range(2, q):
        g = spec.decode(n)
        if all(
            spec.pow(g, (q - 1) // p) != spec.one() for p in fact
        ):
            gen = g
            break
    assert gen is not None
    table = [-1] * q
    cur = spec.one()
    for k in range(q - 1):
        table[spec.encode(cur)] = k
        cur = spec.mul(cur, gen)
    return tuple(table), spec.encode(gen)


def least_generator(spec: FieldSpec):
    return spec.decode(_field_log_table(spec)[1])


def dlog(spec: FieldSpec, x) -> int:
    """Discrete log base the canonical generator.

    Dense table for small fields, baby-step giant-step above the table cap.
    """
    if all(c == 0 for c in x):
        raise ZeroDivisionError("log of zero")
    if spec.q <= _MAX_TABLE_Q:
        return _field_log_table(spec)[0][spec.encode(x)]
    return _bsgs(spec, x)


def _bsgs(spec: FieldSpec, x) -> int:
    q = spec.q
    g = least_generator_large(spec)
    m = math.isqrt(q - 1) + 1
    baby = {}
    cur = spec.one()
    for j in range(m):
        baby.setdefault(spec.encode(cur), j)
        cur = spec.mul(cur, g)
    giant = spec.inv(spec.pow(g, m))
    cur = x
    for i in range(m + 1):
        j = baby.get(spec.encode(cur))
        if j is not None:
            return (i * m + j) % (q - 1)
        cur = spec.mul(cur, giant)
    raise ArithmeticError("BSGS failed; generator invalid")


@lru_cache(maxsize=32)
def least_generator_large(spec: FieldSpec):
    fact = sympy.factorint(spec.q - 1)
    for n in range(2, spec.q):
        g = spec.decode(n)
        if all(spec.pow(g, (spec.q - 1) // p) != spec.one() for p in fact):
            return g
    raise ArithmeticError("no generator found")


@dataclass(frozen=True)
class MultCharacter:
    """Order-r character chi with chi(g) = zeta_r^base_exponent.

    Values are exponents in Z/r; None encodes chi(0).
    """

    field: FieldSpec
    order: int
    base_exponent: int = 1
    _table: tuple = dfield(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.order < 2:
            raise OrderDoesNotDivide("character order must be >= 2")
        if (self.field.q - 1) % self.order:
            raise OrderDoesNotDivide(
                f"{self.order} does not divide q-1 = {self.field.q - 1}"
            )
        if math.gcd(self.base_exponent, self.order) != 1:
            raise OrderMismatch("character does not have exact order r")

    @property
    def generator(self):
        return least_generator(self.field)

    def eval(self, x) -> int | None:
        """Exponent e with chi(x) = zeta_r^e, or None for x = 0."""
        if all(c == 0 for c in x):
            return None
        k = dlog(self.field, x)
        return (k * self.base_exponent) % self.order

    def eval_int(self, n: int) -> int | None:
        return self.eval(self.field.from_int(n))

    def power(self, a: int) -> "MultCharacter":
        if math.gcd(a, self.order) != 1:
            raise OrderMismatch("power does not preserve exact order")
        return MultCharacter(self.field, self.order, (self.base_exponent * a) % self.order)


def char_of_order(field: FieldSpec, r: int) -> MultCharacter:
    """Canonical character: chi(g) = zeta_r for the least generator g."""
    return MultCharacter(field, r)


def _cyc_from_exponent_counts(r: int, counts) -> CycInt:
    acc = CycInt.from_int(r, 0)
    for e, c in enumerate(counts):
        if c:
            acc = acc + CycInt.zeta_power(r, e) * c
    return acc


def jacobi_sum(chi1: MultCharacter, chi2: MultCharacter) -> CycInt:
    """j(chi1, chi2) = -sum over a != 0, 1 of chi1(a) chi2(1-a), exact in Z[zeta_r]."""
    if chi1.field != chi2.field:
        raise FieldMismatch("characters live on different fields")
    if chi1.order != chi2.order:
        raise OrderMismatch("characters have different orders")
    spec = chi1.field
    r = chi1.order
    table, _g = _field_log_table(spec)
    e1, e2 = chi1.base_exponent, chi2.base_exponent
    counts = [0] * r
    one = spec.one()
    for a in spec.elements():
        if all(c == 0 for c in a) or a == one:
            continue
        k1 = table[spec.encode(a)]
        k2 = table[spec.encode(spec.sub(one, a))]
        counts[(k1 * e1 + k2 * e2) % r] += 1
    return -_cyc_from_exponent_counts(r, counts)


def gauss_sum(chi: MultCharacter) -> complex:
    """sum_{t in F_ell^x} chi(t) exp(2*pi*i*t/ell); prime fields only."""
    spec = chi.field
    if spec.f != 1:
        raise ExtensionFieldUnsupported("extension-field Gauss sums are out of scope")
    ell = spec.ell
    table, _g = _field_log_table(spec)
    r, e0 = chi.order, chi.base_exponent
    zeta_r = [cmath.exp(2j * cmath.pi * k / r) for k in range(r)]
    acc = 0j
    for t in range(1, ell):
        acc += zeta_r[(table[t] * e0) % r] * cmath.exp(2j * cmath.pi * t / ell)
    return acc
