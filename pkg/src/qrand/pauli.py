"""Symplectic-encoded Pauli operators, their action on states, basis-string
reductions, and stabilizer groups.

An n-qubit Pauli is stored as i^phase * X^a Z^b with a, b binary strings of
length n and the phase an exact power of i (mod 4); the letter Y at one
position carries a = b = 1 and one factor of i.  Bit j of a string acts on
qubit j + 1, and kets index the computational basis with qubit 1 as the
most significant bit.
"""

from __future__ import annotations

import numpy as np

from .bitlin import BitMatrix, BitVector, gf2_dot, gf2_rank, symplectic
from .errors import (
    CapacityError,
    DependentGeneratorsError,
    DimensionError,
    InconsistentSignsError,
    NotAbelianError,
)
from .linalg import StateVector

_PHASE = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)
_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_LETTER_AB = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


class PauliOp:
    """i^phase * X^a Z^b on n qubits."""

    __slots__ = ("n", "a", "b", "phase")

    def __init__(self, n: int, a: BitVector, b: BitVector, phase: int = 0):
        if a.n != n or b.n != n:
            raise DimensionError(f"strings of length {a.n}/{b.n} for {n} qubits")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "phase", phase & 3)

    def __setattr__(self, *_):
        raise AttributeError("PauliOp is immutable")

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n, BitVector.zeros(n), BitVector.zeros(n))

    @classmethod
    def from_string(cls, text: str) -> "PauliOp":
        """Parse "<prefix><letters>" with prefix in {"", "i", "-", "-i"}."""
        phase = 0
        body = text
        for pfx, ph in (("-i", 3), ("i", 1), ("-", 2)):
            if text.startswith(pfx):
                phase = ph
                body = text[len(pfx):]
                break
        if not body:
            raise ValueError(f"empty Pauli body in {text!r}")
        aw = bw = 0
        for j, ch in enumerate(body):
            try:
                abit, bbit = _LETTER_AB[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r} in {text!r}") from None
            aw |= abit << j
            bw |= bbit << j
            if ch == "Y":
                phase = (phase + 1) & 3
        n = len(body)
        return cls(n, BitVector(n, aw), BitVector(n, bw), phase)

    def to_string(self) -> str:
        letters = []
        y_count = 0
        for j in range(self.n):
            letter = "IXZY"[self.a.get(j) + 2 * self.b.get(j)]
            if letter == "Y":
                y_count += 1
            letters.append(letter)
        return _PREFIX[(self.phase - y_count) & 3] + "".join(letters)

    def phase_free(self) -> "PauliOp":
        return PauliOp(self.n, self.a, self.b)

    def dense(self) -> np.ndarray:
        """The 2^n x 2^n matrix, built from index permutation and signs."""
        d = 1 << self.n
        ia = self.a.to_index()
        ib = self.b.to_index()
        M = np.zeros((d, d), dtype=np.complex128)
        coeff = _PHASE[self.phase]
        for c in range(d):
            sign = -1.0 if bin(c & ib).count("1") & 1 else 1.0
            M[c ^ ia, c] = coeff * sign
        return M

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PauliOp)
            and (self.n, self.a, self.b, self.phase)
            == (other.n, other.a, other.b, other.phase)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.a, self.b, self.phase))

    def __repr__(self) -> str:
        return f"PauliOp('{self.to_string()}')"


def pauli_mul(P: PauliOp, Q: PauliOp) -> PauliOp:
    """Product in normal form: commuting Q's X block past P's Z block
    contributes (-1)^(b_P . a_Q)."""
    if P.n != Q.n:
        raise DimensionError(f"operator sizes differ: {P.n} vs {Q.n}")
    phase = (P.phase + Q.phase + 2 * gf2_dot(P.b, Q.a)) & 3
    return PauliOp(P.n, P.a ^ Q.a, P.b ^ Q.b, phase)


def pauli_commutes(P: PauliOp, Q: PauliOp) -> bool:
    """True iff the symplectic inner product of the labels is 0."""
    if P.n != Q.n:
        raise DimensionError(f"operator sizes differ: {P.n} vs {Q.n}")
    return symplectic((P.a, P.b), (Q.a, Q.b)) == 0


def pauli_apply(P: PauliOp, psi: StateVector) -> StateVector:
    """Basis-wise action |c> -> i^phase * (-1)^(b.c) |c xor a|."""
    d = 1 << P.n
    if psi.dim != d:
        raise DimensionError(f"state dim {psi.dim} != 2^{P.n}")
    ia = P.a.to_index()
    ib = P.b.to_index()
    idx = np.arange(d)
    signs = 1.0 - 2.0 * _parity(idx & ib)
    out = np.empty(d, dtype=np.complex128)
    out[idx ^ ia] = _PHASE[P.phase] * signs * psi.vec
    return StateVector(out, validate=False)


def sigma_v(V: str, p: tuple[BitVector, BitVector]) -> BitVector:
    """Per-qubit reduction of a Pauli label by a basis string.

    Position j contributes a_j when V_j = Z, b_j when V_j = X, and
    a_j xor b_j when V_j = Y; positions with V_j = I are dropped.
    """
    a, b = p
    if len(V) != a.n or a.n != b.n:
        raise DimensionError(f"basis string length {len(V)} != label length {a.n}")
    bits = []
    for j, ch in enumerate(V):
        if ch == "Z":
            bits.append(a.get(j))
        elif ch == "X":
            bits.append(b.get(j))
        elif ch == "Y":
            bits.append(a.get(j) ^ b.get(j))
        elif ch != "I":
            raise ValueError(f"invalid basis letter {ch!r}")
    return BitVector.from_bits(bits)


class StabilizerGroup:
    """n independent, pairwise-commuting Pauli generators without -I.

    Row i of G holds the label (a_i | b_i); the actual generator operator
    is (-1)^signs_i times the Hermitian representative i^(a_i . b_i)
    X^(a_i) Z^(b_i).
    """

    __slots__ = ("n", "G", "signs")

    def __init__(self, n: int, G: BitMatrix, signs: BitVector):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "signs", signs)

    def __setattr__(self, *_):
        raise AttributeError("StabilizerGroup is immutable")

    def generator(self, i: int) -> PauliOp:
        """Hermitian generator operator for row i, including its sign."""
        a, b = self.G.row(i).split(self.n)
        phase = (gf2_dot(a, b) + 2 * self.signs.get(i)) & 3
        return PauliOp(self.n, a, b, phase)

    def generator_strings(self) -> list[str]:
        return [self.generator(i).to_string() for i in range(self.n)]

    def __repr__(self) -> str:
        return f"StabilizerGroup({self.generator_strings()})"


def stab_validate(G: BitMatrix, signs: BitVector | None = None) -> StabilizerGroup:
    """Check full rank and pairwise commutation, then build the group."""
    if G.cols % 2:
        raise DimensionError(f"generator matrix must have 2n columns, got {G.cols}")
    n = G.cols // 2
    labels = [G.row(i).split(n) for i in range(G.rows)]
    for i in range(G.rows):
        for j in range(i + 1, G.rows):
            if symplectic(labels[i], labels[j]):
                raise NotAbelianError(f"generators {i} and {j} anti-commute")
    if G.rows != n or gf2_rank(G) != n:
        raise DependentGeneratorsError(
            f"need exactly {n} independent generator rows, got {G.rows} of rank {gf2_rank(G)}"
        )
    if signs is None:
        signs = BitVector.zeros(n)
    if signs.n != n:
        raise DimensionError(f"sign vector length {signs.n} != {n}")
    return StabilizerGroup(n, G, signs)


def stab_dual(group: StabilizerGroup) -> BitMatrix:
    """Swap the (a | b) halves of every generator row.

    The result H satisfies G H^T = 0 over GF(2) and has rank n, so it maps
    each Pauli label to the index of the basis state it sends the
    stabilizer state to.
    """
    n = group.n
    rows = []
    for i in range(n):
        a, b = group.G.row(i).split(n)
        rows.append(b.concat(a))
    return BitMatrix(rows, 2 * n)


def stab_state(group: StabilizerGroup) -> StateVector:
    """The unique joint +1 eigenvector, via the dense projector product.

    The first nonzero amplitude is made real positive.
    """
    n = group.n
    if n > 10:
        raise CapacityError(f"dense projector limited to 10 qubits, got {n}")
    d = 1 << n
    proj = np.eye(d, dtype=np.complex128)
    for i in range(n):
        gd = group.generator(i).dense()
        proj = proj @ ((np.eye(d, dtype=np.complex128) + gd) / 2.0)
    rank = proj.trace().real
    if rank < 0.5:
        raise InconsistentSignsError("sign assignment stabilizes nothing")
    if abs(rank - 1.0) > 1e-9:
        raise InconsistentSignsError(f"projector rank {rank} is not 1")
    col = int(np.argmax(np.abs(np.diag(proj))))
    vec = proj[:, col] / np.sqrt(proj[col, col].real)
    first = np.flatnonzero(np.abs(vec) > 1e-12)[0]
    vec = vec * (np.abs(vec[first]) / vec[first])
    return StateVector.normalized(vec)


def _parity(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x).copy()
    for shift in (16, 8, 4, 2, 1):
        x ^= x >> shift
    return (x & 1).astype(np.float64)
