"""Exact arithmetic in Z[zeta_r] for r in {3, 4, 5, 7}.

Elements are stored in the power basis 1, z, ..., z^(phi(r)-1) reduced mod the
r-th cyclotomic polynomial.  The full prime machinery (prime_above,
primary_associate, ideals) is only provided for r = 3, where Z[omega] has
class number one and every ideal is tracked by a canonical generator.

Conventions pinned here and recorded in every toolchain fingerprint:
  * omega = zeta_3 embeds as exp(2*pi*i/3);
  * "primary" means the associate congruent to 2 mod 3;
  * the split prime above ell is the primary generator with omega-coefficient > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .errors import (
    NotAUnit,
    NotCoprimeToLambda,
    NotPrime,
    OrderMismatch,
    SearchExhausted,
    UnitInput,
    UnsupportedOrder,
)

SUPPORTED_ORDERS = (3, 4, 5, 7)


def _phi(r: int) -> int:
    return 2 if r == 4 else r - 1


@lru_cache(maxsize=None)
def _monomial_reduction(r: int) -> tuple[tuple[int, ...], ...]:
    """Rows give z^k in the power basis for k = 0 .. 2*(phi-1)."""
    phi = _phi(r)
    rows = []
    for k in range(phi):
        row = [0] * phi
        row[k] = 1
        rows.append(tuple(row))
    for k in range(phi, 2 * phi - 1):
        if r == 4:
            prev = rows[k - 2]
            rows.append(tuple(-c for c in prev))
        else:
            # prime r: z^(r-1) = -(1 + z + ... + z^(r-2)), higher powers shift
            prev = rows[k - 1]
            # multiply by z: shift, reduce overflow of z^(phi)
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                for i in range(phi):
                    shifted[i] -= top
            rows.append(tuple(shifted))
    return tuple(rows)


class CycInt:
    """Element of Z[zeta_r] in the power basis."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r: int, coeffs):
        if r not in SUPPORTED_ORDERS:
            raise UnsupportedOrder(f"root order {r} not supported")
        phi = _phi(r)
        cs = list(coeffs)
        if len(cs) > phi:
            raise ValueError("coefficient vector too long; reduce before constructing")
        cs += [0] * (phi - len(cs))
        self.r = r
        self.coeffs = tuple(int(c) for c in cs)

    @classmethod
    def from_int(cls, r: int, n: int) -> "CycInt":
        return cls(r, [n])

    @classmethod
    def zeta_power(cls, r: int, k: int) -> "CycInt":
        """z^k as an element, any integer k."""
        k %= r
        phi = _phi(r)
        if k < phi:
            coeffs = [0] * phi
            coeffs[k] = 1
            return cls(r, coeffs)
        if r == 4:  # k in {2, 3}
            coeffs = [0, 0]
            coeffs[k - 2] = -1
            return cls(r, coeffs)
        # prime r, k in {phi .. r-1}; only k = r-1 occurs and equals -(1+...+z^(r-2))
        return cls(r, [-1] * phi)

    def _check(self, other: "CycInt"):
        if self.r != other.r:
            raise OrderMismatch(f"mixed root orders {self.r} and {other.r}")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycInt(self.r, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycInt(self.r, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CycInt(self.r, [-a for a in self.coeffs])

    def _coerce(self, other):
        if isinstance(other, int):
            return CycInt.from_int(self.r, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        phi = _phi(self.r)
        prod = [0] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        red = _monomial_reduction(self.r)
        out = [0] * phi
        for k, c in enumerate(prod):
            if c:
                row = red[k]
                for i in range(phi):
                    out[i] += c * row[i]
        return CycInt(self.r, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers live in the fraction field")
        result = CycInt.from_int(self.r, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.r == other.r and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.r, self.coeffs))

    def __repr__(self):
        return f"CycInt(r={self.r}, {list(self.coeffs)})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def galois(self, i: int) -> "CycInt":
        """Apply sigma_i: z -> z^i; i must be a unit mod r."""
        if math.gcd(i, self.r) != 1:
            raise NotAUnit(f"{i} is not a unit mod {self.r}")
        out = CycInt.from_int(self.r, 0)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + CycInt.zeta_power(self.r, (k * i) % self.r) * c
        return out

    def conj(self) -> "CycInt":
        return self.galois(self.r - 1)

    def norm(self) -> int:
        """Product of all complex embeddings; an exact rational integer."""
        prod = CycInt.from_int(self.r, 1)
        for i in range(1, self.r):
            if math.gcd(i, self.r) == 1:
                prod = prod * self.galois(i)
        assert prod.is_rational(), "norm failed to land in Z"
        return prod.coeffs[0]

    def embed(self, k: int = 1) -> complex:
        """Complex value at zeta_r -> exp(2*pi*i*k/r)."""
        z = cmath.exp(2j * cmath.pi * k / self.r)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def divides(self, other: "CycInt") -> bool:
        q = exact_divide(other, self)
        return q is not None


def cyc_arith(a: CycInt, b: CycInt | None, op: str):
    """Dispatch helper: op in {add, mul, conj, norm}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    if op == "norm":
        return a.norm()
    raise ValueError(f"unknown op {op!r}")


def galois_apply(a: CycInt, i: int) -> CycInt:
    return a.galois(i)


def exact_divide(a: CycInt, b: CycInt) -> CycInt | None:
    """a / b if b divides a in Z[zeta_r], else None."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero in Z[zeta_r]")
    nb = b.norm()
    # a/b = a * prod(sigma_i(b), i != 1) / Norm(b)
    cof = CycInt.from_int(a.r, 1)
    for i in range(2, a.r):
        if math.gcd(i, a.r) == 1:
            cof = cof * b.galois(i)
    num = a * cof
    if any(c % nb for c in num.coeffs):
        return None
    return CycInt(a.r, [c // nb for c in num.coeffs])


# ---------------------------------------------------------------------------
# r = 3 specifics: units, primary normalization, primes (class number one)

def omega() -> CycInt:
    return CycInt(3, [0, 1])


def eisenstein(a: int, b: int) -> CycInt:
    return CycInt(3, [a, b])


LAMBDA = eisenstein(1, -1)  # 1 - omega, the ramified prime above 3


@lru_cache(maxsize=1)
def units3() -> tuple[CycInt, ...]:
    w = omega()
    one = CycInt.from_int(3, 1)
    us = [one, w, w * w]
    return tuple(us + [-u for u in us])


def lambda_valuation(a: CycInt) -> int:
    """v_lambda(a) for nonzero a in Z[omega]."""
    if a.r != 3:
        raise UnsupportedOrder("lambda valuation requires r=3")
    if a.is_zero():
        raise ValueError("valuation of zero")
    v = 0
    cur = a
    while True:
        x, y = cur.coeffs
        if (x + y) % 3 != 0:
            return v
        nxt = exact_divide(cur, LAMBDA)
        assert nxt is not None
        cur = nxt
        v += 1


def is_primary(a: CycInt) -> bool:
    x, y = a.coeffs
    return x % 3 == 2 and y % 3 == 0


def primary_associate(a: CycInt) -> CycInt:
    """The unique associate of a congruent to 2 mod 3 (classical cubic convention)."""
    if a.r != 3:
        raise UnsupportedOrder("primary normalization requires r=3")
    if a.is_zero():
        raise UnitInput("zero has no primary associate")
    n = abs(a.norm())
    if n == 1:
        raise UnitInput("units have no primary associate")
    if n % 3 == 0:
        raise NotCoprimeToLambda("input shares the ramified prime 1-omega")
    hits = [u * a for u in units3() if is_primary(u * a)]
    assert len(hits) == 1, "primary associate must be unique"
    return hits[0]


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime of Z[omega] with its canonical generator (class number one)."""

    ell: int
    f: int
    generator: CycInt
    ramified: bool = False

    def norm(self) -> int:
        return self.ell ** self.f

    @property
    def split(self) -> bool:
        return self.f == 1 and not self.ramified

    def conjugate(self) -> "PrimeIdeal":
        if not self.split:
            return self
        return PrimeIdeal(self.ell, self.f, primary_associate(self.generator.conj()))

    def omega_residue(self) -> int:
        """For a split prime: the integer omega is congruent to mod this prime."""
        if not self.split:
            raise ValueError("omega residue only defined at split primes")
        a, b = self.generator.coeffs
        # a + b*omega = 0 mod w  =>  omega = -a/b
        return (-a * pow(b, -1, self.ell)) % self.ell

    def key(self) -> tuple:
        if self.ramified:
            return (self.ell, "r")
        if self.f == 2:
            return (self.ell, "i")
        b = self.generator.coeffs[1]
        return (self.ell, "s+" if b > 0 else "s-")

    def __repr__(self):
        kind = "ram" if self.ramified else ("inert" if self.f == 2 else "split")
        return f"PrimeIdeal({self.ell}, {kind}, gen={list(self.generator.coeffs)})"


def _cornacchia_norm_form(ell: int) -> tuple[int, int] | None:
    """Some (a, b) with a^2 - a*b + b^2 = ell for ell = 1 mod 3, via x^2+3y^2=4ell."""
    from sympy.ntheory.residue_ntheory import sqrt_mod

    m = 4 * ell
    root = sqrt_mod(-3, m)
    if root is None:  # pragma: no cover
        return None
    root = int(root)
    for x0 in {root, m - root}:
        if not m // 2 < x0 < m:
            continue
        a, b = m, x0
        limit = math.isqrt(m)
        while b > limit:
            a, b = b, a % b
        y2, rem = divmod(m - b * b, 3)
        if rem:
            continue
        y = math.isqrt(y2)
        if y * y != y2:
            continue
        x = b
        if (x + y) % 2:  # x, y always share parity when x^2+3y^2 = 0 mod 4
            continue
        return (x + y) // 2, y
    return None


def prime_above(ell: int, r: int = 3) -> PrimeIdeal:
    """The canonical prime of Z[omega] above ell.

    Split ell: primary generator with positive omega-coefficient (pinned
    choice between the two conjugate primes).  Inert ell: (ell) itself.
    ell = 3: the ramified prime (1 - omega).
    """
    if r != 3:
        raise UnsupportedOrder("prime decomposition implemented for r=3 only")
    if not sympy.isprime(ell):
        raise NotPrime(f"{ell} is not prime")
    if ell == 3:
        return PrimeIdeal(3, 1, LAMBDA, ramified=True)
    if ell % 3 == 2:
        return PrimeIdeal(ell, 2, CycInt.from_int(3, ell))
    gen = None
    if ell > 5000:
        ab = _cornacchia_norm_form(ell)
        if ab is not None:
            gen = eisenstein(*ab)
            assert gen.norm() == ell
    if gen is None:
        bound = math.isqrt(4 * ell) + 1
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                if a * a - a * b + b * b == ell:
                    gen = eisenstein(a, b)
                    break
            if gen is not None:
                break
        if gen is None:
            raise SearchExhausted(f"no generator of norm {ell} within bound {bound}")
    gen = primary_associate(gen)
    if gen.coeffs[1] < 0:
        gen = primary_associate(gen.conj())
    assert gen.coeffs[1] > 0
    return PrimeIdeal(ell, 1, gen)


def canonical_generator(a: CycInt) -> CycInt:
    """Deterministic associate: lambda part split off, remainder made primary."""
    if a.is_zero():
        return a
    v = lambda_valuation(a)
    core = a
    for _ in range(v):
        core = exact_divide(core, LAMBDA)
    if abs(core.norm()) == 1:
        core = CycInt.from_int(3, 1)
    else:
        core = primary_associate(core)
    out = core
    for _ in range(v):
        out = out * LAMBDA
    return out
