"""Sample spaces of bit strings, bias metrics, and the Alon-Goldreich-
Hastad-Peralta (AGHP) small-bias construction.

A sample space is an ordered multiset of equal-length bit strings carrying
the uniform distribution; duplicates keep their multiplicity.  The bias of
a space at a nonzero test vector alpha is |E[(-1)^(alpha . s)]|, and a
space is epsilon-biased when that never exceeds epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .bitlin import BitVector
from .errors import (
    CapacityError,
    DimensionError,
    InvalidTestError,
    UnsupportedDegreeError,
)
from .gf2ext import field_spec

# Exhaustive bias scans allocate 2^n histogram bins; 24 bits = 16M bins.
MAX_EXHAUSTIVE_BITS = 24


class SampleSpace:
    """Ordered multiset of n-bit strings with uniform weights."""

    __slots__ = ("n", "strings", "_words")

    def __init__(self, n: int, strings: Sequence[BitVector]):
        strings = tuple(strings)
        if not strings:
            raise DimensionError("a sample space needs at least one string")
        for s in strings:
            if s.n != n:
                raise DimensionError(f"string length {s.n} != space length {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "strings", strings)
        object.__setattr__(self, "_words", None)

    def __setattr__(self, *_):
        raise AttributeError("SampleSpace is immutable")

    @property
    def size(self) -> int:
        return len(self.strings)

    def words(self) -> np.ndarray:
        """Packed words of all strings as a uint64 array (cached)."""
        if self._words is None:
            arr = np.fromiter((s.word for s in self.strings), dtype=np.uint64,
                              count=len(self.strings))
            object.__setattr__(self, "_words", arr)
        return self._words

    @classmethod
    def full_cube(cls, n: int) -> "SampleSpace":
        if n > MAX_EXHAUSTIVE_BITS:
            raise CapacityError(f"full cube on {n} bits exceeds the desk-scale cap")
        return cls(n, [BitVector(n, w) for w in range(1 << n)])

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "SampleSpace":
        vecs = [BitVector.from_string(s) for s in strings]
        if not vecs:
            raise DimensionError("a sample space needs at least one string")
        return cls(vecs[0].n, vecs)

    def to_text(self) -> str:
        lines = [f"n={self.n} size={self.size}"]
        lines.extend(s.to_string() for s in self.strings)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SampleSpace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("space file must start with 'n=<n> size=<m>'")
        head = dict(tok.split("=", 1) for tok in lines[0].split())
        n, size = int(head["n"]), int(head["size"])
        if len(lines) - 1 != size:
            raise ValueError(f"header says {size} strings, file has {len(lines) - 1}")
        return cls(n, [BitVector.from_string(ln.strip()) for ln in lines[1:]])

    def __repr__(self) -> str:
        return f"SampleSpace(n={self.n}, size={self.size})"


@dataclass(frozen=True)
class BiasReport:
    """Worst linear test found over a space."""

    max_bias: float
    witness: BitVector
    scanned: int


@dataclass(frozen=True)
class VaziraniReport:
    """Measured k-wise independence statistics against the bias bounds."""

    k: int
    epsilon_k: float
    max_point_deviation: float
    point_bound: float
    max_marginal_distance: float
    marginal_bound: float
    subsets_checked: int
    violations: int


def aghp_space(r: int, s: int) -> SampleSpace:
    """The GF(2^r) power construction: 2^(2r) strings of length r*s.

    A string is indexed by a pair (x, y) of field elements; its bit at
    position i*r + j - 1 (i in 0..s-1, j in 1..r) is the GF(2) dot product
    of the coordinate vector of x^i shifted into basis slot j with y.
    Enumeration is x outer, y inner, both in integer order.  The resulting
    space has bias at most (s - 1) / 2^r.
    """
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    if r > 16:
        raise UnsupportedDegreeError(
            f"building all 2^(2r) strings is limited to r <= 16, got {r}"
        )
    spec = field_spec(r)
    q = 1 << r
    n_bits = r * s
    strings = []
    for xw in range(q):
        # words[i*r + (j-1)] = coordinate word of v_j * x^i
        words = []
        pw = 1  # x^0 = 1, including for x = 0
        for i in range(s):
            for j in range(r):
                words.append(spec._mul_word(pw, 1 << j))
            pw = spec._mul_word(pw, xw)
        for yw in range(q):
            z = 0
            for pos, w in enumerate(words):
                if bin(w & yw).count("1") & 1:
                    z |= 1 << pos
            strings.append(BitVector(n_bits, z))
    return SampleSpace(n_bits, strings)


def bias_at(S: SampleSpace, alpha: BitVector) -> float:
    """|mean over S of (-1)^(alpha . s)| for a nonzero test vector."""
    if alpha.n != S.n:
        raise DimensionError(f"test length {alpha.n} != space length {S.n}")
    if alpha.is_zero():
        raise InvalidTestError("bias at the zero vector is identically 1")
    parities = _parity_u64(S.words() & np.uint64(alpha.word))
    return abs(1.0 - 2.0 * parities.mean())


def max_bias(S: SampleSpace, max_weight: int | None = None) -> BiasReport:
    """Maximum bias over nonzero test vectors, with an achieving witness.

    Without max_weight the scan is exhaustive over all 2^n - 1 tests via a
    parity (Walsh-Hadamard) transform of the empirical distribution;
    otherwise only tests of Hamming weight <= max_weight are scanned.
    """
    n = S.n
    if max_weight is None:
        if n > MAX_EXHAUSTIVE_BITS:
            raise CapacityError(
                f"exhaustive scan over {n} bits exceeds {MAX_EXHAUSTIVE_BITS}; "
                "pass max_weight or subsample the space"
            )
        probs = np.zeros(1 << n)
        np.add.at(probs, S.words().astype(np.int64), 1.0 / S.size)
        coeffs = _fwht(probs)
        mags = np.abs(coeffs)
        mags[0] = -1.0  # the empty test is not a linear test
        best = int(np.argmax(mags))
        return BiasReport(float(mags[best]), BitVector(n, best), (1 << n) - 1)
    best_bias, best_word, scanned = -1.0, 1, 0
    words = S.words()
    for w in range(1, max_weight + 1):
        for pos in combinations(range(n), w):
            aw = 0
            for p in pos:
                aw |= 1 << p
            parities = _parity_u64(words & np.uint64(aw))
            b = abs(1.0 - 2.0 * parities.mean())
            scanned += 1
            if b > best_bias:
                best_bias, best_word = b, aw
    return BiasReport(best_bias, BitVector(n, best_word), scanned)


def marginal_distance(S: SampleSpace, W: Iterable[int]) -> float:
    """L1 distance of the marginal on bit positions W from uniform.

    Positions are 0-based.  Returns sum over beta in {0,1}^|W| of
    |Pr[S restricted to W = beta] - 2^-|W||.
    """
    positions = sorted(set(W))
    if not positions:
        raise InvalidTestError("marginal over the empty position set")
    if len(positions) > 20:
        raise CapacityError(f"marginal over {len(positions)} positions exceeds 20")
    if positions[0] < 0 or positions[-1] >= S.n:
        raise DimensionError(f"positions {positions} out of range for n={S.n}")
    words = S.words()
    sub = np.zeros(len(words), dtype=np.int64)
    for k, p in enumerate(positions):
        sub |= (((words >> np.uint64(p)) & np.uint64(1)) << k).astype(np.int64)
    k = len(positions)
    counts = np.bincount(sub, minlength=1 << k)
    return float(np.abs(counts / S.size - 2.0 ** -k).sum())


def vazirani_report(S: SampleSpace, k: int) -> VaziraniReport:
    """Check the k-wise independence bounds implied by the bias epsilon_k.

    epsilon_k is the maximum bias over tests of weight <= k.  Over every
    position subset of size k, each point probability must deviate from
    2^-k by at most (1 - 2^-k) * epsilon_k, and the marginal L1 distance
    from uniform must be at most sqrt(2^k - 1) * epsilon_k.
    """
    if k < 1:
        raise InvalidTestError("need k >= 1")
    if k > 10:
        raise CapacityError(f"k={k} exceeds the supported 10")
    if S.n > MAX_EXHAUSTIVE_BITS:
        raise CapacityError(f"n={S.n} exceeds {MAX_EXHAUSTIVE_BITS}")
    if k > S.n:
        raise DimensionError(f"k={k} exceeds string length {S.n}")
    eps = max_bias(S, max_weight=k).max_bias
    point_bound = (1.0 - 2.0 ** -k) * eps
    marginal_bound = (2.0 ** k - 1.0) ** 0.5 * eps
    words = S.words()
    max_point_dev = 0.0
    max_marg = 0.0
    violations = 0
    subsets = 0
    slack = 1e-12
    for pos in combinations(range(S.n), k):
        sub = np.zeros(len(words), dtype=np.int64)
        for j, p in enumerate(pos):
            sub |= (((words >> np.uint64(p)) & np.uint64(1)) << j).astype(np.int64)
        probs = np.bincount(sub, minlength=1 << k) / S.size
        devs = np.abs(probs - 2.0 ** -k)
        point_dev = float(devs.max())
        marg = float(devs.sum())
        max_point_dev = max(max_point_dev, point_dev)
        max_marg = max(max_marg, marg)
        if point_dev > point_bound + slack or marg > marginal_bound + slack:
            violations += 1
        subsets += 1
    return VaziraniReport(
        k=k,
        epsilon_k=eps,
        max_point_deviation=max_point_dev,
        point_bound=point_bound,
        max_marginal_distance=max_marg,
        marginal_bound=marginal_bound,
        subsets_checked=subsets,
        violations=violations,
    )


def _fwht(v: np.ndarray) -> np.ndarray:
    """In-place-style unnormalized Walsh-Hadamard transform (returns array)."""
    v = v.copy()
    n = len(v)
    h = 1
    while h < n:
        v = v.reshape(-1, 2, h)
        top = v[:, 0, :] + v[:, 1, :]
        bot = v[:, 0, :] - v[:, 1, :]
        v[:, 0, :] = top
        v[:, 1, :] = bot
        v = v.reshape(n)
        h *= 2
    return v


def _parity_u64(x: np.ndarray) -> np.ndarray:
    """Bit parity of each element of a uint64 array, as 0/1 floats."""
    x = x.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(shift)
    return (x & np.uint64(1)).astype(np.float64)
