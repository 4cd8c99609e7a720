"""Outward-rounded real intervals with an exact rational fast path.

Endpoints are binary floating values (mpmath's mpf tuples) at ``PREC`` bits,
rounded down for the lower end and up for the upper end. When both operands
of an arithmetic operation carry an exact rational value the result keeps it,
and the endpoints are the outward rounding of that exact value.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Tuple, Union

from mpmath.libmp import (
    finf,
    fninf,
    from_rational,
    mpf_cmp,
    round_ceiling,
    round_floor,
    to_rational,
)
from mpmath.libmp.libmpi import mpi_add, mpi_div, mpi_exp, mpi_log, mpi_mul, mpi_neg, mpi_sub

PREC = 128

Number = Union[int, Fraction, str]
Operand = Union["CertifiedInterval", int, Fraction]


def _frac(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("pass floats as strings or Fractions; a float is already rounded")
    return Fraction(x)


def _down(q: Fraction, prec: int = PREC):
    return from_rational(q.numerator, q.denominator, prec, round_floor)


def _up(q: Fraction, prec: int = PREC):
    return from_rational(q.numerator, q.denominator, prec, round_ceiling)


def _to_fraction(m) -> Fraction:
    if m in (finf, fninf):
        raise OverflowError("unbounded interval endpoint")
    p, q = to_rational(m)
    return Fraction(int(p), int(q))


class CertifiedInterval:
    __slots__ = ("_lo", "_hi", "exact")

    def __init__(self, lo, hi, exact: Optional[Fraction] = None):
        if mpf_cmp(lo, hi) > 0:
            raise ValueError("interval lower endpoint exceeds upper endpoint")
        self._lo = lo
        self._hi = hi
        self.exact = exact

    # construction

    @classmethod
    def point(cls, x: Number) -> "CertifiedInterval":
        q = _frac(x)
        return cls(_down(q), _up(q), q)

    @classmethod
    def from_bounds(cls, lo: Number, hi: Number) -> "CertifiedInterval":
        a, b = _frac(lo), _frac(hi)
        if a == b:
            return cls.point(a)
        return cls(_down(a), _up(b))

    @classmethod
    def _coerce(cls, x: Operand) -> "CertifiedInterval":
        if isinstance(x, CertifiedInterval):
            return x
        return cls.point(x)

    # endpoints

    @property
    def lo(self) -> Fraction:
        return _to_fraction(self._lo)

    @property
    def hi(self) -> Fraction:
        return _to_fraction(self._hi)

    @property
    def mpi(self) -> Tuple:
        return self._lo, self._hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __float__(self) -> float:
        return self.mid()

    def contains(self, x: Number) -> bool:
        q = _frac(x)
        return self.lo <= q <= self.hi

    def is_exact(self) -> bool:
        return self.exact is not None

    # arithmetic

    def _binary(self, other: Operand, exact_op, mpi_op) -> "CertifiedInterval":
        o = self._coerce(other)
        if self.exact is not None and o.exact is not None:
            return CertifiedInterval.point(exact_op(self.exact, o.exact))
        lo, hi = mpi_op(self.mpi, o.mpi, PREC)
        return CertifiedInterval(lo, hi)

    def __add__(self, other: Operand) -> "CertifiedInterval":
        return self._binary(other, lambda a, b: a + b, mpi_add)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "CertifiedInterval":
        return self._binary(other, lambda a, b: a - b, mpi_sub)

    def __rsub__(self, other: Operand) -> "CertifiedInterval":
        return self._coerce(other) - self

    def __mul__(self, other: Operand) -> "CertifiedInterval":
        return self._binary(other, lambda a, b: a * b, mpi_mul)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "CertifiedInterval":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        return self._binary(o, lambda a, b: a / b, mpi_div)

    def __rtruediv__(self, other: Operand) -> "CertifiedInterval":
        return self._coerce(other) / self

    def __neg__(self) -> "CertifiedInterval":
        if self.exact is not None:
            return CertifiedInterval.point(-self.exact)
        lo, hi = mpi_neg(self.mpi)
        return CertifiedInterval(lo, hi)

    def log(self) -> "CertifiedInterval":
        if self.lo <= 0:
            raise ValueError("log of an interval reaching zero or below")
        if self.exact == 1:
            return CertifiedInterval.point(0)
        lo, hi = mpi_log(self.mpi, PREC)
        return CertifiedInterval(lo, hi)

    def exp(self) -> "CertifiedInterval":
        if self.exact == 0:
            return CertifiedInterval.point(1)
        lo, hi = mpi_exp(self.mpi, PREC)
        return CertifiedInterval(lo, hi)

    def __pow__(self, n: int) -> "CertifiedInterval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        if self.exact is not None:
            return CertifiedInterval.point(self.exact**n)
        if self.lo < 0:
            raise ValueError("integer powers are implemented for nonnegative intervals")
        result = CertifiedInterval.point(1)
        for _ in range(n):
            result = result * self
        return result

    # certified comparisons: True only when it holds for every pair of members

    def certainly_lt(self, other: Operand) -> bool:
        return self.hi < self._coerce(other).lo

    def certainly_gt(self, other: Operand) -> bool:
        return self.lo > self._coerce(other).hi

    def hull(self, other: "CertifiedInterval") -> "CertifiedInterval":
        lo = self._lo if mpf_cmp(self._lo, other._lo) <= 0 else other._lo
        hi = self._hi if mpf_cmp(self._hi, other._hi) >= 0 else other._hi
        return CertifiedInterval(lo, hi)

    # display

    def lower_str(self, digits: int = 10) -> str:
        return _decimal(self.lo, digits, math.floor)

    def upper_str(self, digits: int = 10) -> str:
        return _decimal(self.hi, digits, math.ceil)

    def report(self, digits: int = 10) -> dict:
        out = {
            "lower": self.lower_str(digits),
            "lower_rounding": "down",
            "upper": self.upper_str(digits),
            "upper_rounding": "up",
        }
        if self.exact is not None:
            out["exact"] = f"{self.exact.numerator}/{self.exact.denominator}"
        return out

    def __repr__(self) -> str:
        return f"[{self.lower_str(12)}, {self.upper_str(12)}]"


def _decimal(q: Fraction, digits: int, rnd) -> str:
    scaled = rnd(q * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def interval_sum(terms, exact: bool = True) -> CertifiedInterval:
    """Sum in the given order. ``exact=False`` rounds each partial sum outward instead."""
    if exact:
        total = Fraction(0)
        for t in terms:
            total += t
        return CertifiedInterval.point(total)
    acc = CertifiedInterval.point(0)
    for t in terms:
        step = t if isinstance(t, CertifiedInterval) else CertifiedInterval.point(t)
        acc = CertifiedInterval(*mpi_add(acc.mpi, step.mpi, PREC))
    return acc


def log2_interval() -> CertifiedInterval:
    return CertifiedInterval.point(2).log()
