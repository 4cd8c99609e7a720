"""Exact integer primitives: factorization, multiplicative order of 2, the weight k(d)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

FACTOR_LIMIT = 2**64


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization of {self.n}: {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


def factorize(n: int) -> Factorization:
    """Trial division; inputs here never exceed a few hundred thousand."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n >= FACTOR_LIMIT:
        raise ValueError("factorize is limited to 64-bit inputs")
    out: List[Tuple[int, int]] = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; these bases are exact below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n).factors:
        result -= result // p
    return result


@lru_cache(maxsize=1 << 16)
def mult_order_2(d: int) -> int:
    """Smallest t >= 1 with 2**t == 1 (mod d).

    Computed by stripping prime factors from phi(d) while the power stays 1,
    so the cost is a handful of modular exponentiations. By convention the
    order modulo 1 is 1.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError(f"order of 2 is undefined modulo even or nonpositive d={d}")
    if d == 1:
        return 1
    t = euler_phi(d)
    for q, _ in factorize(t).factors:
        while t % q == 0 and pow(2, t // q, d) == 1:
            t //= q
    return t


def k_value(d: int) -> Fraction:
    """Multiplicative weight: prod (p-2)^-1 over p | d, zero unless d is odd and squarefree."""
    if d < 1:
        raise ValueError("k_value requires d >= 1")
    if d % 2 == 0:
        return Fraction(0)
    den = 1
    for p, e in factorize(d).factors:
        if e >= 2:
            return Fraction(0)
        den *= p - 2
    return Fraction(1, den)


def is_two_primitive_root(d: int) -> bool:
    if d < 3 or d % 2 == 0:
        raise ValueError("is_two_primitive_root expects odd d >= 3")
    return mult_order_2(d) == euler_phi(d)


def odd_squarefree_upto(D: int) -> List[int]:
    """Odd squarefree d <= D (the only d with k(d) != 0), increasing."""
    if D < 1:
        return []
    flags = bytearray([1]) * (D + 1)
    flags[0] = 0
    for i in range(0, D + 1, 2):
        flags[i] = 0
    q = 3
    while q * q <= D:
        for m in range(q * q, D + 1, q * q):
            flags[m] = 0
        q += 2
    return [d for d in range(1, D + 1) if flags[d]]
