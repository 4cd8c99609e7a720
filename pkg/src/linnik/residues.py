"""Residue-class counts of sums of K powers of two modulo an odd d.

``counts[i]`` is the number of exponent tuples (v_1..v_K), 1 <= v_j <= ord_d(2),
with 2**v_1 + ... + 2**v_K == i (mod d); the count H(d; N, K) is
``counts[N % d]``.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .ntcore import is_prime, is_two_primitive_root, mult_order_2

BRUTEFORCE_BUDGET = 10**7


@dataclass(frozen=True)
class ResidueCountVector:
    d: int
    K: int
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.d:
            raise ValueError("counts must have one entry per residue")

    @property
    def eps(self) -> int:
        return mult_order_2(self.d)

    def total(self) -> int:
        return sum(self.counts)

    def h(self, N: int) -> int:
        return self.counts[N % self.d]

    def digest(self) -> str:
        text = ",".join(map(str, self.counts)).encode()
        return hashlib.sha256(text).hexdigest()[:16]


def _check_args(d: int, K: int) -> None:
    if d < 1 or d % 2 == 0:
        raise ValueError(f"d must be odd and positive, got {d}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")


def _initial_vector(d: int, K: int, eps: int) -> List[int]:
    # one power free, the other K-1 parked at 2**1
    W = [0] * d
    base = 2 * (K - 1)
    p = 1
    for _ in range(eps):
        p = (2 * p) % d
        W[(base + p) % d] += 1
    return W


def _offsets(d: int, eps: int) -> List[int]:
    """Rotation amounts 2**j - 2 (mod d), j = 1..eps; j = 1 is the unrotated copy."""
    out = []
    p = 1
    for _ in range(eps):
        p = (2 * p) % d
        out.append((p - 2) % d)
    return out


def _rotation_rounds_plain(d: int, K: int, j_max: Optional[int] = None) -> List[int]:
    """Rotate-and-add on a W/Y buffer pair, one round per extra power of two.

    Each round adds the copies rotated by 2**j - 2 for j = 2..j_max to the
    round's starting vector. ``j_max`` must equal the order of 2 for the counts
    to cover every tuple; stopping one short drops the exponent eps.
    """
    eps = mult_order_2(d)
    if j_max is None:
        j_max = eps
    W = _initial_vector(d, K, eps)
    Y = [0] * d
    offsets = _offsets(d, eps)[1:j_max]
    for _ in range(2, K + 1):
        base = W[:]
        for r in offsets:
            for i in range(d):
                Y[(i + r) % d] = base[i]
            for i in range(d):
                W[i] += Y[i]
    return W


def _pack(values: Iterable[int], nbytes: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _unpack(x: int, d: int, nbytes: int) -> List[int]:
    raw = x.to_bytes(d * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(d)]


def _rotation_rounds_packed(d: int, K: int) -> List[int]:
    """Same rounds as the plain loop, with each vector packed into one integer.

    Slot i of the packed integer holds W[i]. Rotating by r is a shift by r slots
    followed by folding the overflow back to slot 0, so summing all eps rotated
    copies is one multiplication by the packed offset indicator and one fold.
    Every slot value is bounded by eps**K, so slots never carry into each other.
    """
    eps = mult_order_2(d)
    W = _initial_vector(d, K, eps)
    if K == 1 or d == 1:
        return W
    nbytes = (eps**K).bit_length() // 8 + 1
    slot = 8 * nbytes
    indicator = [0] * d
    for r in _offsets(d, eps):
        indicator[r] += 1
    S = _pack(indicator, nbytes)
    P = _pack(W, nbytes)
    mask = (1 << (slot * d)) - 1
    for _ in range(2, K + 1):
        prod = P * S
        P = (prod & mask) + (prod >> (slot * d))
    return _unpack(P, d, nbytes)


def h_vector(d: int, K: int, method: str = "packed") -> ResidueCountVector:
    """Counts for every residue class modulo d.

    ``method="plain"`` runs the buffer-pair loop literally (O(K d eps) big-integer
    additions); ``"packed"`` performs identical rounds on packed integers.
    """
    _check_args(d, K)
    if method == "packed":
        counts = _rotation_rounds_packed(d, K)
    elif method == "plain":
        counts = _rotation_rounds_plain(d, K)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ResidueCountVector(d, K, tuple(counts))


def h_min(d: int, K: int, allowed_residues: Optional[Iterable[int]] = None) -> int:
    vec = h_vector(d, K)
    if allowed_residues is None:
        return min(vec.counts)
    allowed = {a % d for a in allowed_residues}
    if not allowed:
        raise ValueError("allowed_residues must be nonempty")
    return min(vec.counts[a] for a in allowed)


def h_bruteforce(d: int, K: int, budget: int = BRUTEFORCE_BUDGET) -> ResidueCountVector:
    """Enumerate every exponent tuple and histogram the sums of its powers mod d."""
    _check_args(d, K)
    eps = mult_order_2(d)
    if eps**K > budget:
        raise ValueError(f"brute force over {eps}**{K} tuples exceeds budget {budget}")
    powers = [pow(2, v, d) for v in range(1, eps + 1)]
    inner_len = min(K, 3)
    inner = np.zeros(1, dtype=np.int64)
    for _ in range(inner_len):
        inner = (inner[:, None] + np.asarray(powers, dtype=np.int64)[None, :]).ravel()
    counts = np.zeros(d, dtype=np.int64)
    for prefix in itertools.product(powers, repeat=K - inner_len):
        counts += np.bincount((inner + sum(prefix)) % d, minlength=d)
    return ResidueCountVector(d, K, tuple(int(c) for c in counts))


def h_closed_form(d: int, K: int, n_divisible: bool) -> int:
    """Count for N == 0 (``n_divisible``) or any fixed N != 0 mod a prime d with 2 primitive.

    When 2 generates (Z/d)^* the powers of two run over all d - 1 nonzero
    residues, which is what the formula counts; for prime powers the powers of
    two miss the non-units and the formula does not apply.
    """
    if d < 3 or d % 2 == 0 or not is_two_primitive_root(d):
        raise ValueError(f"2 is not a primitive root modulo {d}")
    if not is_prime(d):
        raise ValueError(f"closed form needs prime d; {d} is a prime power")
    sign = -1 if K % 2 else 1
    if n_divisible:
        num = (d - 1) ** K + sign * (d - 1)
    else:
        num = (d - 1) ** K - sign
    q, rem = divmod(num, d)
    assert rem == 0
    return q
