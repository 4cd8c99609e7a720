"""Joint minimization of the C3 sum over residue classes of N that can actually occur.

Minimizing each d separately may pick classes of N that contradict each other
(say N == 0 mod 15 together with N == 1 mod 3). Here N runs over the classes
a mod M; each d only sees a mod gcd(d, M), and takes its worst class among the
residues mod d compatible with that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .interval import CertifiedInterval
from .ntcore import factorize
from .residues import h_vector

DEFAULT_MODULUS = 15015
FULL_MODULUS = 255255


@dataclass(frozen=True)
class AdmissibilityConfig:
    modulus: int = DEFAULT_MODULUS
    # N is even, but every coupled modulus is odd, so parity never binds
    n_even: bool = True

    def __post_init__(self) -> None:
        M = self.modulus
        if M < 1 or M % 2 == 0 or not factorize(M).is_squarefree():
            raise ValueError(f"admissibility modulus must be odd and squarefree, got {M}")


def class_minima(counts: Sequence[int], g: int) -> Tuple[int, ...]:
    """Entry r is the least count over residues i == r (mod g); g must divide len(counts)."""
    d = len(counts)
    if d % g:
        raise ValueError("g must divide d")
    return tuple(min(counts[r::g]) for r in range(g))


def constrained_h_min(d: int, K: int, a: int, M: int) -> int:
    g = math.gcd(d, M)
    counts = h_vector(d, K).counts
    return min(counts[a % g::g])


@dataclass(frozen=True)
class Contribution:
    """One d's share: ``weight * class_mins[a mod g]`` with weight 2 k(d) / ord_d(2)^K."""

    d: int
    g: int
    weight: Fraction
    class_mins: Tuple[int, ...]


def admissible_c3_min(
    contributions: Iterable[Contribution], M: int
) -> Tuple[int, CertifiedInterval]:
    """Least class a mod M of sum_d weight_d * class_mins_d[a mod g_d], and its exact value.

    Contributions are pooled per divisor g of M, every class is scored in
    floating point, and all classes within a proven rounding margin of the
    floating minimum are rescored exactly. Ties resolve to the smallest class.
    """
    pooled: Dict[int, List[Fraction]] = {}
    n_terms = 0
    for c in contributions:
        if M % c.g or len(c.class_mins) != c.g:
            raise ValueError(f"contribution for d={c.d} does not match modulus {M}")
        row = pooled.setdefault(c.g, [Fraction(0)] * c.g)
        for r, m in enumerate(c.class_mins):
            row[r] += c.weight * m
        n_terms += 1
    if not pooled:
        return 0, CertifiedInterval.point(0)

    classes = np.arange(M, dtype=np.int64)
    approx = np.zeros(M, dtype=np.float64)
    for g in sorted(pooled):
        approx += np.asarray([float(x) for x in pooled[g]])[classes % g]
    # each pooled value is rounded once, then at most len(pooled) additions
    n_ops = 2 * len(pooled) + 2
    err = n_ops * 2.0**-52 * float(approx.max())
    cutoff = approx.min() + 2 * err + 1e-300
    candidates = np.flatnonzero(approx <= cutoff)

    best_a = -1
    best = None
    for a in candidates.tolist():
        val = sum((row[a % g] for g, row in sorted(pooled.items())), Fraction(0))
        if best is None or val < best:
            best, best_a = val, a
    return best_a, CertifiedInterval.point(best)
