"""Integral ideals of Z[omega] as explicit prime factorizations.

Class number one lets every ideal carry a canonical generator; the
factorization form is what the symbol machinery, the coefficient engines and
the imaginary/real decomposition actually consume.  Prime keys are
("r", 3) for the ramified prime, ("i", q) for inert q, and ("s+", ell) /
("s-", ell) for the pinned split prime and its conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import sympy

from .cyclotomic import CycInt, PrimeIdeal, canonical_generator, prime_above


@lru_cache(maxsize=None)
def prime_by_key(key: tuple) -> PrimeIdeal:
    ell, tag = key
    if tag == "r":
        return prime_above(3)
    if tag == "i":
        return prime_above(ell)
    w = prime_above(ell)
    return w if tag == "s+" else w.conjugate()


def key_of_prime(w: PrimeIdeal) -> tuple:
    if w.ramified:
        return (3, "r")
    if w.f == 2:
        return (w.ell, "i")
    return (w.ell, "s+" if w.generator.coeffs[1] > 0 else "s-")


@dataclass(frozen=True)
class LIdeal:
    """Integral ideal given by its sorted prime factorization."""

    factors: tuple  # ((key, exponent), ...) sorted by key

    @classmethod
    def from_dict(cls, d: dict) -> "LIdeal":
        items = tuple(sorted((k, e) for k, e in d.items() if e))
        assert all(e > 0 for _, e in items), "integral ideals only"
        return cls(items)

    @classmethod
    def one(cls) -> "LIdeal":
        return cls(())

    @classmethod
    def from_prime(cls, w: PrimeIdeal, e: int = 1) -> "LIdeal":
        return cls.from_dict({key_of_prime(w): e})

    @classmethod
    def from_int(cls, n: int) -> "LIdeal":
        """The ideal n Z[omega] for a nonzero rational integer."""
        d: dict = {}
        for q, e in sympy.factorint(abs(n)).items():
            if q == 3:
                d[(3, "r")] = 2 * e
            elif q % 3 == 2:
                d[(q, "i")] = e
            else:
                d[(q, "s+")] = e
                d[(q, "s-")] = e
        return cls.from_dict(d)

    @classmethod
    def from_element(cls, a: CycInt) -> "LIdeal":
        """Factor the principal ideal (a)."""
        from .cyclotomic import exact_divide

        n = abs(a.norm())
        assert n != 0
        d: dict = {}
        rest = a
        for q, e in sympy.factorint(n).items():
            if q == 3:
                d[(3, "r")] = e
                continue
            if q % 3 == 2:
                d[(q, "i")] = e // 2
                continue
            w = prime_by_key((q, "s+"))
            k = 0
            cur = rest
            while True:
                nxt = exact_divide(cur, w.generator)
                if nxt is None:
                    break
                cur, k = nxt, k + 1
            if k:
                d[(q, "s+")] = k
            if e - k:
                d[(q, "s-")] = e - k
        return cls.from_dict(d)

    def exponents(self) -> dict:
        return dict(self.factors)

    def norm(self) -> int:
        n = 1
        for (ell, tag), e in self.factors:
            n *= (ell if tag in ("s+", "s-", "r") else ell * ell) ** e
        return n

    def is_one(self) -> bool:
        return not self.factors

    def mul(self, other: "LIdeal") -> "LIdeal":
        d = dict(self.factors)
        for k, e in other.factors:
            d[k] = d.get(k, 0) + e
        return LIdeal.from_dict(d)

    def divide(self, other: "LIdeal") -> "LIdeal":
        d = dict(self.factors)
        for k, e in other.factors:
            d[k] = d.get(k, 0) - e
            if d[k] < 0:
                raise ValueError("not divisible")
        return LIdeal.from_dict(d)

    def power(self, e: int) -> "LIdeal":
        return LIdeal(tuple((k, x * e) for k, x in self.factors)) if e else LIdeal.one()

    def conj(self) -> "LIdeal":
        d = {}
        for (ell, tag), e in self.factors:
            if tag == "s+":
                d[(ell, "s-")] = e
            elif tag == "s-":
                d[(ell, "s+")] = e
            else:
                d[(ell, tag)] = e
        return LIdeal.from_dict(d)

    def is_coprime(self, other: "LIdeal") -> bool:
        keys = {k for k, _ in self.factors}
        return not any(k in keys for k, _ in other.factors)

    def coprime_to_lambda(self) -> bool:
        return all(tag != "r" for (_, tag), _ in self.factors)

    def generator(self) -> CycInt:
        g = CycInt.from_int(3, 1)
        for key, e in self.factors:
            g = g * prime_by_key(key).generator ** e
        return canonical_generator(g)

    def primes(self):
        return [(prime_by_key(k), e) for k, e in self.factors]

    # --- structure used by the double Dirichlet series -----------------

    def real_part(self) -> int:
        """Largest rational h with h Z[omega] dividing the ideal."""
        d = self.exponents()
        h = 1
        seen = set()
        for (ell, tag), e in self.factors:
            if ell in seen:
                continue
            seen.add(ell)
            if tag == "i":
                h *= ell ** e
            elif tag == "r":
                h *= 3 ** (e // 2)
            else:
                m = min(d.get((ell, "s+"), 0), d.get((ell, "s-"), 0))
                h *= ell ** m
        return h

    def imaginary_real_split(self) -> tuple["LIdeal", int]:
        """Unique factorization ideal = (imaginary part) * (h Z[omega])."""
        h = self.real_part()
        return self.divide(LIdeal.from_int(h)), h

    def is_imaginary(self) -> bool:
        return self.real_part() == 1

    def power_free_part(self, r: int) -> "LIdeal":
        return LIdeal.from_dict({k: e % r for k, e in self.factors})

    def power_pure_part(self, r: int) -> "LIdeal":
        """Full prime powers with exponent divisible by r (the h2-style part)."""
        return LIdeal.from_dict({k: e for k, e in self.factors if e % r == 0})

    def radical(self) -> "LIdeal":
        return LIdeal.from_dict({k: 1 for k, _ in self.factors})

    def sort_key(self):
        return (self.norm(), self.generator().coeffs)

    def __repr__(self):
        if not self.factors:
            return "LIdeal(1)"
        parts = [f"{k}^{e}" if e > 1 else f"{k}" for k, e in self.factors]
        return "LIdeal(" + " * ".join(parts) + ")"


@lru_cache(maxsize=8)
def prime_ideals_upto(x: int, include_ramified: bool = False) -> tuple[PrimeIdeal, ...]:
    """All primes of Z[omega] of norm <= x, sorted by (norm, split tag)."""
    out = []
    if include_ramified and x >= 3:
        out.append((3, 0, prime_above(3)))
    for ell in sympy.primerange(2, x + 1):
        if ell == 3:
            continue
        if ell % 3 == 1:
            w = prime_above(ell)
            out.append((ell, 1, w))
            out.append((ell, 2, w.conjugate()))
        elif ell * ell <= x:
            out.append((ell * ell, 1, prime_above(ell)))
    out.sort(key=lambda t: (t[0], t[1]))
    return tuple(w for _, _, w in out)


def ideals_upto(x: int, coprime_lambda: bool = True) -> list[tuple[LIdeal, int]]:
    """All integral ideals of norm <= x in deterministic (norm, generator) order."""
    primes = prime_ideals_upto(x, include_ramified=not coprime_lambda)
    items: list[tuple[LIdeal, int]] = []

    def rec(i: int, cur: dict, norm: int):
        items.append((LIdeal.from_dict(cur), norm))
        for j in range(i, len(primes)):
            w = primes[j]
            n2 = norm * w.norm()
            if n2 > x:
                break  # primes are norm-sorted
            k = key_of_prime(w)
            cur[k] = cur.get(k, 0) + 1
            rec(j, cur, n2)
            cur[k] -= 1
            if not cur[k]:
                del cur[k]

    rec(0, {}, 1)
    items.sort(key=lambda t: (t[1], t[0].sort_key()[1]))
    return items


def imaginary_ideals_upto(x: int) -> list[tuple[LIdeal, int]]:
    """Imaginary ideals (no rational divisor besides 1) of norm <= x."""
    return [(a, n) for a, n in ideals_upto(x) if a.is_imaginary()]
