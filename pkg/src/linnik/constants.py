"""Published constants, reference tables, the C2 partial sums and the C3 tail estimate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from mpmath.libmp import from_rational, mpf_add, round_ceiling, round_floor

from .interval import PREC, CertifiedInterval
from .ntcore import k_value, mult_order_2

# Wrench's enclosure of prod_{p>2} (1 - (p-1)^-2)
C0 = CertifiedInterval.from_bounds("0.6601618158", "0.6601618159")
# from 1.2783521041 < C2*C0 < 1.2784421041 combined with the C0 enclosure
C2 = CertifiedInterval.from_bounds("1.93642", "1.93656")

C1_CHEN = Fraction("7.8342")
C1_WU = Fraction("7.8209")

C_UNCONDITIONAL = Fraction(109, 154)
C_PINTZ_RUZSA = Fraction(3, 5)
C_GRH = Fraction(1, 2)


@dataclass(frozen=True)
class ConstantSet:
    C0: CertifiedInterval
    C1: CertifiedInterval
    C2: CertifiedInterval
    C3: CertifiedInterval
    lam: CertifiedInterval
    c: Fraction

    def __post_init__(self) -> None:
        for name in ("C0", "C1", "C2", "C3", "lam"):
            if getattr(self, name).lo <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.c <= 1:
            raise ValueError("c must lie in (0, 1]")
        if self.lam.hi >= 1:
            raise ValueError("lambda must be < 1")

    @classmethod
    def build(cls, C3, lam, c, C0=None, C1=C1_WU, C2=None) -> "ConstantSet":
        def iv(x):
            return x if isinstance(x, CertifiedInterval) else CertifiedInterval.point(x)

        return cls(
            C0=iv(C0 if C0 is not None else globals()["C0"]),
            C1=iv(C1),
            C2=iv(C2 if C2 is not None else globals()["C2"]),
            C3=iv(C3),
            lam=iv(lam),
            c=Fraction(c),
        )


# (C3, lambda, c) on top of C0 = 0.6601618159, C1 = 7.8209, C2 = 1.93656.
# Published thresholds: 11.4549, 6.1432, 11.0953, 6.09353.
PRESETS: Dict[str, Tuple[str, str, Fraction]] = {
    "hbp-uncond": ("2.96169", "0.862327", C_UNCONDITIONAL),
    "hbp-grh": ("2.96169", "0.716344", C_GRH),
    "new-uncond": ("3.02858417", "0.8594000", C_UNCONDITIONAL),
    "new-grh": ("3.011112", "0.7163436", C_GRH),
}

PUBLISHED_K_REAL = {
    "hbp-uncond": Fraction("11.4549"),
    "hbp-grh": Fraction("6.1432"),
    "new-uncond": Fraction("11.0953"),
    "new-grh": Fraction("6.09353"),
}


def preset(name: str, full_intervals: bool = True) -> ConstantSet:
    """The published quintuples.

    With ``full_intervals`` C0 and C2 enter as their enclosures, otherwise as
    the upper endpoints used in the worked example.
    """
    try:
        C3, lam, c = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    if full_intervals:
        return ConstantSet.build(C3, lam, c)
    return ConstantSet.build(C3, lam, c, C0="0.6601618159", C2="1.93656")


# Published historical lower bounds for C3 at small D.
C3_HISTORICAL = {5: Fraction("2.7895"), 11: Fraction("2.8096"), 21: Fraction("2.96169")}
C3_PUBLISHED = {6: Fraction("3.011112"), 11: Fraction("3.02858417")}
C3_PUBLISHED_D = 40000
C3_PUBLISHED_MODULUS = 255255


@dataclass(frozen=True)
class ReferenceTableRow:
    problem: str
    required_c: Fraction
    old_lambda: str
    new_lambda: str
    old_K: int
    new_K: int


REFERENCE_TABLE = (
    ReferenceTableRow("A", Fraction(3, 4), "0.887167", "0.8844473", 46, 45),
    ReferenceTableRow("B", Fraction(3, 4), "0.887167", "0.8844473", 35, 34),
    ReferenceTableRow("C", Fraction(19, 21), "0.965411", "0.9642399", 341, 330),
    ReferenceTableRow("D", Fraction(113, 126), "0.961917", "0.9606646", 106, 102),
    ReferenceTableRow("E", Fraction(53, 63), "0.935746", "0.9339489", 211, 205),
    ReferenceTableRow("F", Fraction(109, 126), "0.947313", "0.9457435", 161, 156),
    ReferenceTableRow("G", Fraction(109, 154), "0.862327", "0.8594000", 63, 62),
    ReferenceTableRow("G (GRH)", Fraction(1, 2), "0.716344", "0.7163436", 31, 31),
    ReferenceTableRow("H", Fraction(3, 4), "0.887167", "0.8844473", 142, 138),
    ReferenceTableRow("I", Fraction(19, 21), "0.965411", "0.9642399", 1432, 1319),
    ReferenceTableRow("J", Fraction(3, 4), "0.887167", "0.8844473", 332, 323),
)


def c2_partial_sum(d_max: int) -> CertifiedInterval:
    """Enclosure of sum_{m <= d_max} k(2m-1) / ord_{2m-1}(2).

    Terms are rounded outward one at a time, since the exact common
    denominator grows far too quickly to keep.
    """
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    lo = hi = from_rational(0, 1, PREC, round_floor)
    for m in range(1, d_max + 1):
        n = 2 * m - 1
        k = k_value(n)
        if k == 0:
            continue
        den = k.denominator * mult_order_2(n)
        lo = mpf_add(lo, from_rational(1, den, PREC, round_floor), PREC, round_floor)
        hi = mpf_add(hi, from_rational(1, den, PREC, round_ceiling), PREC, round_ceiling)
    return CertifiedInterval(lo, hi)


def c3_tail_bound(D: int) -> CertifiedInterval:
    """Upper bound for 2 * sum_{d > D} k(d)/d, namely 2 * int_D^inf dt/(t(t-2)) = log(D/(D-2))."""
    if D <= 2:
        raise ValueError("tail bound needs D > 2")
    return CertifiedInterval.point(Fraction(D, D - 2)).log()
