"""Randomizing channels built from uniform mixtures of Pauli conjugations.

A channel is a list of phase-free Pauli labels (a, b) with weights summing
to one; applying it to a state rho yields sum_k w_k P_k rho P_k^dagger.
The channel's quality certificate comes from its Fourier coefficients
c(u, v) = E[(-1)^(a.v + b.u)]: the mixture scales the X^u Z^v component of
the input by exactly c(u, v), so 2^(n/2) times the largest nontrivial
|c(u, v)| upper-bounds the trace distance of any output from the
maximally mixed state.
"""

from __future__ import annotations

import math

import numpy as np

from .bitlin import BitVector
from .errors import CapacityError, DimensionError
from .linalg import DensityMatrix, make_rng
from .pauli import PauliOp
from .smallbias import SampleSpace, _fwht

# Dense verification paths allocate 4^n coefficient tables.
MAX_CHANNEL_QUBITS = 8


class PauliChannel:
    """Uniform (or explicitly weighted) mixture of Pauli conjugations."""

    __slots__ = ("n", "ops", "weights", "source", "key_bits", "_ia", "_ib")

    def __init__(self, n, ops, weights=None, source=None, key_bits=None):
        ops = tuple(ops)
        if not ops:
            raise DimensionError("a channel needs at least one operator")
        for op in ops:
            if op.n != n:
                raise DimensionError(f"operator on {op.n} qubits in an {n}-qubit channel")
        if weights is None:
            weights = np.full(len(ops), 1.0 / len(ops))
        else:
            weights = np.asarray(weights, dtype=np.float64)
            if weights.shape != (len(ops),):
                raise DimensionError("need one weight per operator")
            if weights.min() < 0 or abs(weights.sum() - 1.0) > 1e-12:
                raise ValueError("weights must be nonnegative and sum to 1")
        if key_bits is None:
            key_bits = max(1, math.ceil(math.log2(len(ops))))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "key_bits", key_bits)
        object.__setattr__(self, "_ia", None)
        object.__setattr__(self, "_ib", None)
        weights.setflags(write=False)

    def __setattr__(self, *_):
        raise AttributeError("PauliChannel is immutable")

    @property
    def size(self) -> int:
        return len(self.ops)

    def label_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Basis-index encodings of the X and Z parts of every operator."""
        if self._ia is None:
            ia = np.fromiter((op.a.to_index() for op in self.ops), dtype=np.int64,
                             count=self.size)
            ib = np.fromiter((op.b.to_index() for op in self.ops), dtype=np.int64,
                             count=self.size)
            object.__setattr__(self, "_ia", ia)
            object.__setattr__(self, "_ib", ib)
        return self._ia, self._ib

    def is_uniform(self) -> bool:
        return bool(np.all(self.weights == 1.0 / self.size))

    def to_text(self) -> str:
        lines = [f"n={self.n} m={self.size}"]
        uniform = self.is_uniform()
        for op, w in zip(self.ops, self.weights):
            if uniform:
                lines.append(op.to_string())
            else:
                lines.append(f"{op.to_string()} w={w:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PauliChannel":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("channel file must start with 'n=<n> m=<m>'")
        head = dict(tok.split("=", 1) for tok in lines[0].split())
        n, m = int(head["n"]), int(head["m"])
        if len(lines) - 1 != m:
            raise ValueError(f"header says {m} operators, file has {len(lines) - 1}")
        ops, weights = [], []
        for ln in lines[1:]:
            parts = ln.split()
            ops.append(PauliOp.from_string(parts[0]).phase_free())
            if len(parts) == 2 and parts[1].startswith("w="):
                weights.append(float(parts[1][2:]))
            elif len(parts) == 1:
                weights.append(None)
            else:
                raise ValueError(f"malformed channel line {ln!r}")
        has_w = [w is not None for w in weights]
        if any(has_w) and not all(has_w):
            raise ValueError("either every line or no line may carry a weight")
        if all(has_w):
            return cls(n, ops, np.array(weights))
        strings = [op.a.concat(op.b) for op in ops]
        return cls(n, ops, source=SampleSpace(2 * n, strings))

    def __repr__(self) -> str:
        return f"PauliChannel(n={self.n}, m={self.size})"


class FourierTable:
    """All coefficients c(u, v) of a channel, as a 2^n x 2^n array."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, c: np.ndarray):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", c)
        c.setflags(write=False)

    def __setattr__(self, *_):
        raise AttributeError("FourierTable is immutable")

    def coeff(self, u: BitVector, v: BitVector) -> float:
        return float(self.c[u.to_index(), v.to_index()])

    def max_nontrivial(self) -> float:
        """Largest |c(u, v)| over (u, v) != (0, 0)."""
        mags = np.abs(self.c).ravel().copy()
        mags[0] = -1.0
        return float(mags.max())


def channel_from_space(S: SampleSpace) -> PauliChannel:
    """Uniform Pauli channel keyed by a sample space of (a | b) strings.

    Each 2n-bit string splits into the X part (first n bits) and the Z
    part; duplicates keep their multiplicity.
    """
    if S.n % 2:
        raise DimensionError(f"space strings have odd length {S.n}")
    n = S.n // 2
    ops = []
    for s in S.strings:
        a, b = s.split(n)
        ops.append(PauliOp(n, a, b))
    return PauliChannel(n, ops, source=S)


def qotp(n: int) -> PauliChannel:
    """The perfect pad: the uniform mixture over all 4^n Pauli labels.

    Maps every input state exactly to I / 2^n and uses 2n key bits.
    """
    if n > MAX_CHANNEL_QUBITS:
        raise CapacityError(f"full pad on {n} qubits exceeds {MAX_CHANNEL_QUBITS}")
    ch = channel_from_space(SampleSpace.full_cube(2 * n))
    return PauliChannel(n, ch.ops, source=ch.source, key_bits=2 * n)


def aghp_channel(n: int, epsilon: float) -> PauliChannel:
    """Shortest-key explicit channel with certified quality epsilon.

    Picks the smallest field degree r such that, with s = ceil(2n / r),
    the construction bias (s - 1) / 2^r is at most epsilon * 2^(-n/2);
    strings are truncated to 2n bits (bias over tests supported on a
    prefix is unaffected).  When the sample space would be as large as
    the full pad (2^(2r) >= 4^n, including every epsilon <= 2^(-n/2)),
    the full pad itself is returned.  key_bits records min(2r, 2n).
    """
    if not 0 < epsilon <= 2:
        raise ValueError(f"epsilon must be in (0, 2], got {epsilon}")
    if n > MAX_CHANNEL_QUBITS:
        raise CapacityError(f"dense verification limited to {MAX_CHANNEL_QUBITS} qubits")
    target = epsilon * 2.0 ** (-n / 2.0)
    best_r = None
    for r in range(1, n + 1):
        s = -(-2 * n // r)
        if (s - 1) / 2.0 ** r <= target:
            best_r = r
            break
    if best_r is None or 2 * best_r >= 2 * n:
        return qotp(n)
    r = best_r
    s = -(-2 * n // r)
    from .smallbias import aghp_space

    space = aghp_space(r, s)
    mask = (1 << (2 * n)) - 1
    truncated = SampleSpace(2 * n, [BitVector(2 * n, t.word & mask) for t in space.strings])
    ch = channel_from_space(truncated)
    return PauliChannel(n, ch.ops, source=truncated, key_bits=2 * r)


def random_pauli_channel(n: int, m: int, seed: int) -> PauliChannel:
    """m Pauli labels drawn i.i.d. uniform with replacement."""
    if m < 1:
        raise DimensionError(f"need m >= 1, got {m}")
    g = make_rng(seed)
    words = g.integers(0, 1 << (2 * n), size=m, dtype=np.int64)
    strings = [BitVector(2 * n, int(w)) for w in words]
    return channel_from_space(SampleSpace(2 * n, strings))


def apply_channel(C: PauliChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_k w_k P_k rho P_k^dagger via index permutations and sign flips.

    Conjugation by X^a Z^b maps entry (j, k) to (j xor a, k xor a) with
    sign (-1)^(b.j + b.k); phases cancel.  Work is O(m d^2), chunked over
    operators to bound memory.
    """
    d = 1 << C.n
    mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    if mat.shape != (d, d):
        raise DimensionError(f"state dimension {mat.shape} != 2^{C.n}")
    ia, ib = C.label_arrays()
    idx = np.arange(d, dtype=np.int64)
    out = np.zeros((d, d), dtype=np.complex128)
    chunk = max(1, (1 << 20) // (d * d))
    for k0 in range(0, C.size, chunk):
        ia_c = ia[k0:k0 + chunk]
        ib_c = ib[k0:k0 + chunk]
        w_c = C.weights[k0:k0 + chunk]
        perm = idx[None, :] ^ ia_c[:, None]
        signs = 1.0 - 2.0 * _parity_i64(ib_c[:, None] & idx[None, :])
        block = mat[perm[:, :, None], perm[:, None, :]]
        block *= signs[:, :, None] * signs[:, None, :]
        out += np.tensordot(w_c, block, axes=1)
    return DensityMatrix(out, validate=False)


def fourier_coeffs(C: PauliChannel) -> FourierTable:
    """The full table c(u, v) = sum_k w_k (-1)^(a_k.v + b_k.u).

    Computed as a parity transform of the weight histogram over the 4^n
    label pairs; O(4^n n) rather than O(m 4^n).
    """
    if C.n > MAX_CHANNEL_QUBITS:
        raise CapacityError(f"coefficient table limited to {MAX_CHANNEL_QUBITS} qubits")
    n = C.n
    ia, ib = C.label_arrays()
    hist = np.zeros(1 << (2 * n))
    np.add.at(hist, (ia << n) | ib, C.weights)
    transformed = _fwht(hist)
    # index (v << n) | u carries coefficient c(u, v)
    c = transformed.reshape(1 << n, 1 << n).T.copy()
    return FourierTable(n, c)


def certified_epsilon(C: PauliChannel) -> float:
    """2^(n/2) times the largest nontrivial Fourier magnitude.

    Every output of the channel is within this trace distance of the
    maximally mixed state.
    """
    return 2.0 ** (C.n / 2.0) * fourier_coeffs(C).max_nontrivial()


def _parity_i64(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> shift
    return (x & 1).astype(np.float64)
