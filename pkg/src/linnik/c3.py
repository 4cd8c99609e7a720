"""Certified lower bounds for C3 = 2 sum_{d <= D} k(d) H(d; N, K) ord_d(2)^-K, minimized over N."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from .admissibility import AdmissibilityConfig, Contribution, admissible_c3_min, class_minima
from .constants import c3_tail_bound
from .interval import CertifiedInterval, interval_sum
from .ntcore import k_value, mult_order_2, odd_squarefree_upto
from .residues import h_vector

log = logging.getLogger(__name__)

EXACT_SUM_LIMIT = 5000
CHECKPOINT_MAGIC = "# linnik-c3 v1"


class CheckpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class DTerm:
    d: int
    eps: int
    k: Fraction
    digest: str
    h_min: int
    class_mins: Optional[Tuple[int, ...]] = None

    def weight(self, K: int) -> Fraction:
        return 2 * self.k / Fraction(self.eps) ** K

    def term(self, K: int) -> Fraction:
        return self.weight(K) * self.h_min


def compute_term(d: int, K: int, modulus: int = 1) -> DTerm:
    vec = h_vector(d, K)
    g = math.gcd(d, modulus)
    mins = class_minima(vec.counts, g) if modulus > 1 else None
    return DTerm(d, vec.eps, k_value(d), vec.digest(), min(vec.counts), mins)


def _compute_star(args: Tuple[int, int, int]) -> DTerm:
    return compute_term(*args)


# checkpoint file: header line, then one tab-separated record per d


def _header(K: int, modulus: int) -> str:
    return f"{CHECKPOINT_MAGIC} K={K} modulus={modulus}\n"


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _format_record(t: DTerm, K: int) -> str:
    mins = ",".join(map(str, t.class_mins)) if t.class_mins is not None else "-"
    return "\t".join(
        [str(t.d), str(t.eps), _frac_str(t.k), t.digest, _frac_str(t.term(K)), str(t.h_min), mins]
    ) + "\n"


def _parse_record(line: str, K: int, modulus: int) -> DTerm:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 7:
        raise ValueError("wrong field count")
    d, eps = int(fields[0]), int(fields[1])
    k = Fraction(fields[2])
    h = int(fields[5])
    mins = None if fields[6] == "-" else tuple(int(x) for x in fields[6].split(","))
    t = DTerm(d, eps, k, fields[3], h, mins)
    if eps != mult_order_2(d) or k != k_value(d):
        raise ValueError("order or weight disagrees with recomputation")
    if Fraction(fields[4]) != t.term(K):
        raise ValueError("stored term disagrees with its factors")
    if modulus > 1 and (mins is None or len(mins) != math.gcd(d, modulus) or min(mins) != h):
        raise ValueError("class minima missing or inconsistent")
    return t


def load_checkpoint(path: str, K: int, modulus: int) -> List[DTerm]:
    """Records from an earlier run, in d order. A final line lacking its newline is dropped."""
    if not os.path.exists(path):
        return []
    with open(path, encoding="utf-8") as f:
        text = f.read()
    if not text:
        return []
    lines = text.split("\n")
    partial = lines.pop()  # "" when the file ends with a newline
    if partial:
        log.warning("discarding partially written checkpoint line: %.40r", partial)
    if not lines:
        return []
    if lines[0] + "\n" != _header(K, modulus):
        raise CheckpointError(
            f"checkpoint {path} was written for different parameters: {lines[0]!r}"
        )
    expected = 1
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            t = _parse_record(line, K, modulus)
        except (ValueError, ZeroDivisionError) as exc:
            raise CheckpointError(f"{path}:{lineno}: corrupt record ({exc})") from None
        if t.d != expected:
            raise CheckpointError(f"{path}:{lineno}: records out of sequence at d={t.d}")
        out.append(t)
        expected = _next_odd_squarefree(t.d)
    return out


def _next_odd_squarefree(d: int) -> int:
    n = d + 2
    while k_value(n) == 0:
        n += 2
    return n


def c3_terms(
    D: int,
    K: int,
    modulus: int = 1,
    workers: int = 1,
    checkpoint: Optional[str] = None,
) -> List[DTerm]:
    """Per-d data for every odd squarefree d <= D, in increasing d."""
    ds = odd_squarefree_upto(D)
    done: List[DTerm] = []
    sink = None
    if checkpoint:
        done = [t for t in load_checkpoint(checkpoint, K, modulus) if t.d <= D]
        fresh = not os.path.exists(checkpoint) or os.path.getsize(checkpoint) == 0
        if not fresh:
            _truncate_partial(checkpoint)
        sink = open(checkpoint, "a", encoding="utf-8")
        if fresh:
            sink.write(_header(K, modulus))
        if done:
            log.info("resuming after d=%d (%d records)", done[-1].d, len(done))
    todo = ds[len(done):]
    try:
        for t in _run(todo, K, modulus, workers):
            done.append(t)
            if sink:
                sink.write(_format_record(t, K))
                sink.flush()
    finally:
        if sink:
            sink.close()
    return done


def _truncate_partial(path: str) -> None:
    with open(path, "rb+") as f:
        data = f.read()
        keep = data.rfind(b"\n") + 1
        if keep != len(data):
            f.truncate(keep)


def _run(ds: List[int], K: int, modulus: int, workers: int) -> Iterator[DTerm]:
    if workers <= 1 or len(ds) < 2:
        for d in ds:
            yield compute_term(d, K, modulus)
        return
    # largest d first would balance better, but map keeps results in submission order
    chunk = max(1, len(ds) // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_compute_star, [(d, K, modulus) for d in ds], chunksize=chunk)


@dataclass
class C3Result:
    D: int
    K: int
    bound: CertifiedInterval
    unrestricted: CertifiedInterval
    tail: Optional[CertifiedInterval]
    modulus: int = 1
    worst_class: Optional[int] = None


def assemble(
    terms: List[DTerm], K: int, D: int, modulus: int = 1, exact: Optional[bool] = None
) -> C3Result:
    if exact is None:
        exact = D <= EXACT_SUM_LIMIT
    unrestricted = interval_sum((t.term(K) for t in terms), exact=exact)
    bound, worst = unrestricted, None
    if modulus > 1:
        worst, bound = admissible_c3_min(
            (Contribution(t.d, len(t.class_mins), t.weight(K), t.class_mins) for t in terms),
            modulus,
        )
    tail = c3_tail_bound(D) if D > 2 else None
    return C3Result(D, K, bound, unrestricted, tail, modulus, worst)


def c3_lower_bound(
    D: int,
    K: int,
    admissibility: Optional[AdmissibilityConfig] = None,
    workers: int = 1,
    checkpoint: Optional[str] = None,
    exact: Optional[bool] = None,
) -> CertifiedInterval:
    """Enclosure of the finite sum, which is itself a lower bound for C3.

    Without admissibility every d takes its own worst class of N; with it the
    classes are chosen jointly modulo the configured modulus.
    """
    return c3_report(D, K, admissibility, workers, checkpoint, exact).bound


def c3_report(
    D: int,
    K: int,
    admissibility: Optional[AdmissibilityConfig] = None,
    workers: int = 1,
    checkpoint: Optional[str] = None,
    exact: Optional[bool] = None,
) -> C3Result:
    if D < 1:
        raise ValueError("D must be >= 1")
    if K < 1:
        raise ValueError("K must be >= 1")
    modulus = admissibility.modulus if admissibility else 1
    terms = c3_terms(D, K, modulus, workers, checkpoint)
    return assemble(terms, K, D, modulus, exact)
