"""Brute-force search for n = p + q + 2^v1 + ... + 2^vr with p, q prime and every v >= 1."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .ntcore import is_prime

DEFAULT_SIEVE_LIMIT = 10**7
SEGMENT = 1 << 20


def segmented_sieve(limit: int, segment: int = SEGMENT) -> np.ndarray:
    """Boolean primality table for 0..limit, sieved one segment at a time."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    flags = np.zeros(limit + 1, dtype=bool)
    root = math.isqrt(limit)
    small = np.ones(root + 1, dtype=bool)
    small[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if small[p]:
            small[p * p::p] = False
    base_primes = np.flatnonzero(small)
    for lo in range(0, limit + 1, segment):
        hi = min(lo + segment, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base_primes:
            start = max(p * p, (lo + p - 1) // p * p)
            if start >= hi:
                continue
            seg[start - lo::p] = False
        flags[lo:hi] = seg
    flags[:2] = False
    return flags


class PrimeTable:
    def __init__(self, limit: int = DEFAULT_SIEVE_LIMIT):
        self.limit = limit
        self.flags = segmented_sieve(limit)
        self._lookup = self.flags.tobytes()
        self.primes: List[int] = np.flatnonzero(self.flags).tolist()

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise ValueError(f"{n} exceeds the sieve limit {self.limit}")
        return n >= 2 and self._lookup[n] == 1

    def goldbach_pair(self, m: int) -> Optional[Tuple[int, int]]:
        """(p, q) with p <= q, p + q = m, p as small as possible."""
        if m < 4 or m > self.limit:
            return None
        look = self._lookup
        for p in self.primes:
            if 2 * p > m:
                return None
            if look[m - p]:
                return p, m - p
        return None


@dataclass(frozen=True)
class RepresentationWitness:
    n: int
    p: int
    q: int
    exponents: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.exponents)

    def validate(self) -> None:
        """Recheck with trial division, independently of any sieve."""
        if self.n % 2:
            raise AssertionError(f"{self.n} is odd")
        if any(v < 1 for v in self.exponents):
            raise AssertionError(f"exponent below 1 in {self.exponents}")
        if self.p + self.q + sum(2**v for v in self.exponents) != self.n:
            raise AssertionError(f"witness does not sum to {self.n}")
        if not (is_prime(self.p) and is_prime(self.q)):
            raise AssertionError(f"{self.p} or {self.q} is not prime")

    def tsv(self) -> str:
        exps = ",".join(map(str, self.exponents)) or "-"
        return f"{self.n}\t{self.r}\t{self.p}\t{self.q}\t{exps}"


def _multisets(r: int, budget: int, lowest: int = 1) -> Iterator[Tuple[int, ...]]:
    """Nondecreasing exponent tuples of length r whose powers sum to at most budget."""
    if r == 0:
        yield ()
        return
    v = lowest
    # the remaining r powers are each at least 2^v
    while r * 2**v <= budget:
        for rest in _multisets(r - 1, budget - 2**v, v):
            yield (v,) + rest
        v += 1


def _check_n(n: int) -> None:
    if n % 2 or n < 4:
        raise ValueError(f"n must be even and >= 4, got {n}")


def min_powers(
    n: int, r_max: int, table: Optional[PrimeTable] = None
) -> Optional[RepresentationWitness]:
    """Witness with the fewest powers of two (at most r_max), or None."""
    _check_n(n)
    if table is None:
        table = PrimeTable(max(n, 4))
    if n > table.limit:
        raise ValueError(f"{n} exceeds the sieve limit {table.limit}")
    for r in range(r_max + 1):
        for exps in _multisets(r, n - 4):
            pair = table.goldbach_pair(n - sum(2**v for v in exps))
            if pair:
                return RepresentationWitness(n, pair[0], pair[1], exps)
    return None


def min_powers_naive(n: int, r_max: int) -> Optional[RepresentationWitness]:
    """Same search with trial-division primality and no sieve, for cross-checking."""
    _check_n(n)
    for r in range(r_max + 1):
        for exps in _multisets(r, n - 4):
            m = n - sum(2**v for v in exps)
            for p in range(2, m // 2 + 1):
                if is_prime(p) and is_prime(m - p):
                    return RepresentationWitness(n, p, m - p, exps)
    return None


@dataclass
class SweepResult:
    histogram: Dict[int, int] = field(default_factory=dict)
    exceptions: List[int] = field(default_factory=list)
    witnesses: List[RepresentationWitness] = field(default_factory=list)


_worker_table: Optional[PrimeTable] = None


def _init_worker(limit: int) -> None:
    global _worker_table
    _worker_table = PrimeTable(limit)


def _sweep_chunk(args: Tuple[Sequence[int], int]) -> List[Tuple[int, Optional[RepresentationWitness]]]:
    ns, r_max = args
    return [(n, min_powers(n, r_max, _worker_table)) for n in ns]


def sweep(
    start: int,
    stop: int,
    r_max: int,
    workers: int = 1,
    table: Optional[PrimeTable] = None,
    keep_witnesses: bool = True,
) -> SweepResult:
    """Every even n with start <= n <= stop, in increasing order."""
    first = max(start + (start % 2), 4)
    ns = list(range(first, stop + 1, 2))
    res = SweepResult()
    if not ns:
        return res
    limit = table.limit if table else max(stop, 4)
    if stop > limit:
        raise ValueError(f"range end {stop} exceeds the sieve limit {limit}")

    if workers <= 1:
        global _worker_table
        _worker_table = table or PrimeTable(limit)
        outcomes = _sweep_chunk((ns, r_max))
    else:
        size = max(1, len(ns) // (4 * workers))
        chunks = [(ns[i:i + size], r_max) for i in range(0, len(ns), size)]
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(limit,)) as pool:
            outcomes = [x for part in pool.map(_sweep_chunk, chunks) for x in part]

    hist: Counter = Counter()
    for n, w in outcomes:
        if w is None:
            res.exceptions.append(n)
        else:
            hist[w.r] += 1
            if keep_witnesses:
                res.witnesses.append(w)
    res.histogram = dict(sorted(hist.items()))
    return res
