"""Smallest admissible number of powers of two from lam^(K-2) < C3 / ((C1-2) C2 + c C0^-1 log 2)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

from .constants import ConstantSet
from .interval import CertifiedInterval, log2_interval


@dataclass(frozen=True)
class KThresholdResult:
    denominator: CertifiedInterval
    ratio: CertifiedInterval
    k_real: Optional[CertifiedInterval]
    k_int: int
    all_admissible: bool = False

    def report(self, digits: int = 6) -> dict:
        out = {
            "denominator": self.denominator.report(digits + 4),
            "ratio": self.ratio.report(digits + 4),
            "k_int": self.k_int,
            "all_admissible": self.all_admissible,
        }
        if self.k_real is not None:
            out["k_real"] = self.k_real.report(digits)
        return out


def denominator(cs: ConstantSet) -> CertifiedInterval:
    return (cs.C1 - 2) * cs.C2 + CertifiedInterval.point(cs.c) / cs.C0 * log2_interval()


def inequality_holds(cs: ConstantSet, K: int) -> bool:
    """Certified: lam^(K-2) < C3 / denominator for every member of the enclosures."""
    ratio = cs.C3 / denominator(cs)
    return (cs.lam ** (K - 2)).certainly_lt(ratio)


def solve_k(cs: ConstantSet) -> KThresholdResult:
    den = denominator(cs)
    ratio = cs.C3 / den
    if ratio.lo >= 1:
        # lam^(K-2) <= 1 <= ratio for every K >= 2
        return KThresholdResult(den, ratio, None, 2, all_admissible=True)
    if ratio.hi >= 1:
        raise ValueError("C3 / denominator straddles 1; tighten the inputs")
    k_real = 2 + ratio.log() / cs.lam.log()
    k_int = max(3, math.floor(k_real.hi) + 1)
    while not (cs.lam ** (k_int - 2)).certainly_lt(ratio):
        k_int += 1
    return KThresholdResult(den, ratio, k_real, k_int)


def solve_k_selfconsistent(
    c3_of_k: Callable[[int], CertifiedInterval],
    lam,
    c,
    K_range: Iterable[int] = range(3, 21),
    C0=None,
    C1=None,
    C2=None,
) -> Tuple[Optional[int], Optional[KThresholdResult]]:
    """First K in ``K_range`` certified admissible when C3 itself is computed with that K.

    ``c3_of_k`` returns the C3 enclosure for a given K (for instance
    ``lambda K: c3_lower_bound(D, K)``); only its lower end is used.
    Returns ``(None, None)`` when no K in range qualifies.
    """
    extra = {}
    if C0 is not None:
        extra["C0"] = C0
    if C1 is not None:
        extra["C1"] = C1
    if C2 is not None:
        extra["C2"] = C2
    for K in K_range:
        c3 = c3_of_k(K)
        cs = ConstantSet.build(CertifiedInterval.point(c3.lo), lam, c, **extra)
        if inequality_holds(cs, K):
            return K, solve_k(cs)
    return None, None
