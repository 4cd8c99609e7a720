"""The sum G_L(x) = sum_{j<L} e(2^j x) and rigorous enclosures of meas{x : |G_L(x)| > lam L}."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from .interval import CertifiedInterval

TWO_PI = 2 * math.pi
Real = Union[float, Fraction, str]

# quarter turns at which cos or sin reaches +-1: (position in turns, axis, value)
_EXTREMES = [
    (0.25, "im", 1.0), (0.5, "re", -1.0), (0.75, "im", -1.0), (1.0, "re", 1.0),
    (1.25, "im", 1.0), (1.5, "re", -1.0), (1.75, "im", -1.0),
]


def _pad(L: int) -> float:
    # bound on accumulated float error: argument reduction, libm cos/sin, L additions
    return 4e-15 * L * (L + 2) + 1e-14


def g_eval(L: int, x: Real) -> complex:
    if L < 1:
        raise ValueError("L must be >= 1")
    if isinstance(x, (Fraction, str)):
        q = Fraction(x)
        total = 0j
        for j in range(L):
            t = (q * 2**j) % 1
            total += complex(math.cos(TWO_PI * t), math.sin(TWO_PI * t))
        return total
    return complex(g_eval_many(L, np.asarray([float(x)]))[0])


def g_eval_many(L: int, xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.float64)
    total = np.zeros(xs.shape, dtype=np.complex128)
    for j in range(L):
        t = np.mod(np.ldexp(xs, j), 1.0)  # scaling by 2^j is exact
        total += np.exp(1j * TWO_PI * t)
    return total


def _range_arrays(L: int, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Lower and upper bounds of |G_L| over each [a_i, b_i] (dyadic endpoints)."""
    n = a.shape[0]
    re_lo = np.zeros(n)
    re_hi = np.zeros(n)
    im_lo = np.zeros(n)
    im_hi = np.zeros(n)
    width = b - a
    for j in range(L):
        s = np.mod(np.ldexp(a, j), 1.0)
        w = np.ldexp(width, j)
        e = s + w
        c0, s0 = np.cos(TWO_PI * s), np.sin(TWO_PI * s)
        c1, s1 = np.cos(TWO_PI * e), np.sin(TWO_PI * e)
        tr_lo, tr_hi = np.minimum(c0, c1), np.maximum(c0, c1)
        ti_lo, ti_hi = np.minimum(s0, s1), np.maximum(s0, s1)
        for q, axis, val in _EXTREMES:
            hit = (s <= q) & (q <= e)
            if axis == "re":
                (tr_lo if val < 0 else tr_hi)[hit] = val
            else:
                (ti_lo if val < 0 else ti_hi)[hit] = val
        full = w >= 1.0
        tr_lo[full] = ti_lo[full] = -1.0
        tr_hi[full] = ti_hi[full] = 1.0
        re_lo += tr_lo
        re_hi += tr_hi
        im_lo += ti_lo
        im_hi += ti_hi
    pad = _pad(L)
    re_lo -= pad
    im_lo -= pad
    re_hi += pad
    im_hi += pad
    dx = np.maximum(np.maximum(re_lo, -re_hi), 0.0)
    dy = np.maximum(np.maximum(im_lo, -im_hi), 0.0)
    box_lo = np.hypot(dx, dy) * (1 - 1e-15)
    box_hi = np.hypot(np.maximum(-re_lo, re_hi), np.maximum(-im_lo, im_hi)) * (1 + 1e-15)

    # centred form: |G(x) - G(m)| <= 2 pi (2^L - 1) |x - m|
    mid = a + width / 2
    gm = np.abs(g_eval_many(L, mid))
    radius = TWO_PI * (2.0**L - 1) * (width / 2) * (1 + 1e-15) + pad
    lo = np.maximum(np.maximum(box_lo, gm - radius), 0.0)
    hi = np.minimum(np.minimum(box_hi, gm + radius), L + pad)
    return lo, hi


def g_range(L: int, a: Real, b: Real) -> Tuple[float, float]:
    """Bounds containing |G_L(x)| for every x in [a, b]."""
    a_, b_ = float(a), float(b)
    if not 0 <= b_ - a_ <= 1:
        raise ValueError("need a <= b <= a + 1")
    lo, hi = _range_arrays(L, np.asarray([a_]), np.asarray([b_]))
    return float(lo[0]), float(hi[0])


@dataclass
class ExpSumConfig:
    L: int
    lam: Real
    tolerance: float = 1e-4
    max_depth: int = 48
    max_intervals: Optional[int] = None

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= Fraction(self.lam) < 1:
            raise ValueError("lambda must lie in [0, 1)")
        if self.max_depth > 52:
            raise ValueError("max_depth above 52 loses exact dyadic endpoints")
        if self.max_intervals is None:
            self.max_intervals = max(64 * 2**self.L, 2**16)


ACCEPTED, REJECTED, AMBIGUOUS = "accepted", "rejected", "ambiguous"


@dataclass
class MeasureEnclosure:
    delta_lo: Fraction
    delta_hi: Fraction
    ambiguous_mass: Fraction
    intervals_examined: int
    budget_exceeded: bool = False
    profile: Optional[List[Tuple[Fraction, Fraction, str]]] = field(default=None, repr=False)

    def contains(self, x: Real) -> bool:
        return self.delta_lo <= Fraction(x) <= self.delta_hi

    @property
    def width(self) -> Fraction:
        return self.delta_hi - self.delta_lo


def delta_enclosure(config: ExpSumConfig, profile: bool = False) -> MeasureEnclosure:
    """Two-sided bounds on the measure of {x in [0,1] : |G_L(x)| > lam L}.

    Dyadic intervals are refined level by level. Intervals where |G_L| provably
    exceeds the threshold count towards both bounds, intervals provably below
    it towards neither. Refinement stops once the still-undecided mass is at
    most ``tolerance`` (or the depth or interval budget runs out); that mass is
    charged to the upper bound only. All masses are exact dyadic rationals.
    """
    L = config.L
    thr = Fraction(config.lam) * L
    thr_f = float(thr)
    thr_up = math.nextafter(thr_f, math.inf) if thr_f <= thr else thr_f
    thr_dn = math.nextafter(thr_f, -math.inf) if thr_f >= thr else thr_f

    accepted = Fraction(0)
    ambiguous = Fraction(0)
    examined = 0
    over_budget = False
    prof: Optional[List[Tuple[Fraction, Fraction, str]]] = [] if profile else None

    depth = 0
    idx = np.zeros(1, dtype=np.int64)
    while idx.size:
        scale = 2.0**-depth
        a = idx.astype(np.float64) * scale
        b = a + scale
        lo, hi = _range_arrays(L, a, b)
        examined += idx.size
        acc = lo > thr_up
        rej = hi <= thr_dn
        und = ~(acc | rej)
        unit = Fraction(1, 2**depth)
        accepted += int(acc.sum()) * unit
        if prof is not None:
            for cls, mask in ((ACCEPTED, acc), (REJECTED, rej)):
                prof.extend((int(i) * unit, (int(i) + 1) * unit, cls) for i in idx[mask])
        idx = idx[und]
        pending = idx.size * unit
        stop = (
            pending <= config.tolerance
            or depth >= config.max_depth
            or examined + 2 * idx.size > config.max_intervals
        )
        if stop:
            if idx.size and pending > config.tolerance:
                over_budget = True
            ambiguous += pending
            if prof is not None:
                prof.extend((int(i) * unit, (int(i) + 1) * unit, AMBIGUOUS) for i in idx)
            break
        idx = np.concatenate([2 * idx, 2 * idx + 1])
        idx.sort()
        depth += 1

    return MeasureEnclosure(
        delta_lo=accepted,
        delta_hi=accepted + ambiguous,
        ambiguous_mass=ambiguous,
        intervals_examined=examined,
        budget_exceeded=over_budget,
        profile=prof,
    )


def write_profile(enc: MeasureEnclosure, path: str) -> None:
    if enc.profile is None:
        raise ValueError("enclosure was computed without a profile")
    with open(path, "w", encoding="utf-8") as f:
        f.write("start\tend\tclass\n")
        for s, e, cls in sorted(enc.profile):
            f.write(f"{float(s)!r}\t{float(e)!r}\t{cls}\n")


def exceptional_threshold(L: int, c: Real) -> CertifiedInterval:
    """exp(-c L), which equals N^(-c/log 2) when N = 2^L."""
    return CertifiedInterval.point(-Fraction(c) * L).exp()


def lambda_for_c(
    L: int,
    c: Real,
    grid_step: Real = Fraction(1, 1000),
    tolerance: Optional[float] = None,
) -> Optional[Fraction]:
    """Smallest grid value lam with a certified measure bound below exp(-c L).

    Returns None when no lam < 1 on the grid can be certified. The search is a
    bisection over grid points, relying on the upper bound being nonincreasing
    in lam.
    """
    step = Fraction(grid_step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    target = exceptional_threshold(L, c).lo
    if tolerance is None:
        tolerance = float(target) / 256

    def ok(i: int) -> bool:
        enc = delta_enclosure(ExpSumConfig(L, i * step, tolerance=tolerance))
        return enc.delta_hi < target

    n = math.ceil(1 / step) - 1  # largest i with i*step < 1
    if n < 0 or not ok(n):
        return None
    lo_i, hi_i = -1, n  # ok(hi_i) holds; lo_i is a sentinel below the grid
    if ok(0):
        return Fraction(0)
    lo_i = 0
    while hi_i - lo_i > 1:
        m = (lo_i + hi_i) // 2
        if ok(m):
            hi_i = m
        else:
            lo_i = m
    return hi_i * step


def power_moment(L: int, power: int, n_points: Optional[int] = None) -> float:
    """int_0^1 |G_L(x)|^power dx by the midpoint rule.

    For even ``power`` the integrand is a trigonometric polynomial of degree
    below (power/2) * 2^(L-1), and the default grid is fine enough to integrate
    it without aliasing.
    """
    if n_points is None:
        n_points = max(power, 2) * 2**L
    xs = (np.arange(n_points) + 0.5) / n_points
    vals = np.abs(g_eval_many(L, xs)) ** power
    return float(math.fsum(vals) / n_points)
