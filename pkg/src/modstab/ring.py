"""Exact arithmetic in Z_d and in the integers.

Units and their inverses, extended-Euclid Bezout certificates, prime
factorization by trial division, and the CRT split/recombine pair that
underpins every per-prime-power computation in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BothZero, InvalidParams, ModuliNotCoprime, ModulusMismatch, NotAUnit


@dataclass(frozen=True)
class Modulus:
    """The ring size d >= 2 of Z_d."""

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise InvalidParams(f"modulus must be an integer >= 2, got {self.d!r}")

    def __int__(self):
        return self.d

    def __index__(self):
        return self.d


ModulusLike = Union[Modulus, int]


def as_modulus(d: ModulusLike) -> Modulus:
    return d if isinstance(d, Modulus) else Modulus(int(d))


@dataclass(frozen=True)
class Residue:
    """An element of Z_d, stored canonically in [0, d)."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        m = as_modulus(self.modulus)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "value", int(self.value) % m.d)

    @property
    def d(self) -> int:
        return self.modulus.d

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"{self.d} vs {other.d}")
            return other
        return Residue(int(other), self.modulus)

    def __add__(self, other):
        other = self._coerce(other)
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Residue(self.value - other.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class PrimeFactorization:
    """d as an ordered product of prime powers p^m, primes strictly increasing."""

    d: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, m in self.factors:
            if p <= prev or m < 1 or not is_prime(p):
                raise InvalidParams(f"bad factorization of {self.d}: {self.factors}")
            prev = p
            prod *= p**m
        if prod != self.d:
            raise InvalidParams(f"factors of {self.d} multiply to {prod}")

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**m for p, m in self.factors)


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check, intended for desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    if a == 0 and b == 0:
        raise BothZero("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def inverse_mod(a: int, d: int) -> int:
    """Inverse of a in Z_d; raises NotAUnit when gcd(a, d) != 1."""
    g, x, _ = bezout(a % d if a % d else d, d)
    if g != 1:
        raise NotAUnit(f"gcd({a % d}, {d}) = {g}")
    return x % d


def unit_inverse(a: Residue) -> Residue:
    """Multiplicative inverse of a unit of Z_d."""
    return Residue(inverse_mod(a.value, a.d), a.modulus)


def factorize(d: int) -> PrimeFactorization:
    """Prime factorization of d >= 2 by trial division."""
    if d < 2:
        raise InvalidParams(f"need d >= 2, got {d}")
    rest = d
    factors = []
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            m = 0
            while rest % p == 0:
                rest //= p
                m += 1
            factors.append((p, m))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return PrimeFactorization(d, tuple(factors))


def crt_split(x: Residue) -> list[Residue]:
    """Image of x under the ring isomorphism Z_d -> prod Z_{p_i^{m_i}}."""
    return [Residue(x.value % q, Modulus(q)) for q in factorize(x.d).prime_powers]


def crt_combine(parts: Sequence[Residue]) -> Residue:
    """Inverse of crt_split: recombine residues over pairwise coprime moduli."""
    if not parts:
        raise InvalidParams("nothing to combine")
    moduli = [p.d for p in parts]
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise ModuliNotCoprime(f"{moduli[i]} and {moduli[j]}")
    total = math.prod(moduli)
    acc = 0
    for part, q in zip(parts, moduli):
        rest = total // q
        acc += part.value * rest * inverse_mod(rest, q)
    return Residue(acc, Modulus(total))


def residues(values: Iterable[int], d: ModulusLike) -> list[Residue]:
    m = as_modulus(d)
    return [Residue(v, m) for v in values]
