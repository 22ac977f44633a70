"""Vectors and matrices over GF(2), plus the symplectic inner product.

Bit strings are stored packed in a single Python integer, little-endian:
bit j of the integer is the j-th character of the written string, so the
leftmost character of "101" is bit 0.  All values are immutable.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionError


class BitVector:
    """An immutable bit string of fixed length."""

    __slots__ = ("n", "word")

    def __init__(self, n: int, word: int = 0):
        if n < 0:
            raise DimensionError(f"length must be >= 0, got {n}")
        if word < 0 or word >> n:
            raise DimensionError(f"word 0x{word:x} has bits beyond length {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "word", word)

    def __setattr__(self, *_):
        raise AttributeError("BitVector is immutable")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse a left-to-right bit string, e.g. "101"."""
        word = 0
        for j, ch in enumerate(s):
            if ch == "1":
                word |= 1 << j
            elif ch != "0":
                raise ValueError(f"invalid bit character {ch!r}")
        return cls(len(s), word)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        word = 0
        n = 0
        for b in bits:
            if b:
                word |= 1 << n
            n += 1
        return cls(n, word)

    def get(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(f"bit index {j} out of range for length {self.n}")
        return (self.word >> j) & 1

    def to_string(self) -> str:
        return "".join("1" if (self.word >> j) & 1 else "0" for j in range(self.n))

    def to_index(self) -> int:
        """Integer with bit 0 as the most significant digit.

        This is the computational-basis index of the ket labelled by the
        string, e.g. "0100" -> 4.
        """
        idx = 0
        for j in range(self.n):
            idx = (idx << 1) | ((self.word >> j) & 1)
        return idx

    @classmethod
    def from_index(cls, idx: int, n: int) -> "BitVector":
        """Inverse of to_index."""
        word = 0
        for j in range(n):
            if (idx >> (n - 1 - j)) & 1:
                word |= 1 << j
        return cls(n, word)

    def weight(self) -> int:
        return bin(self.word).count("1")

    def is_zero(self) -> bool:
        return self.word == 0

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.n + other.n, self.word | (other.word << self.n))

    def split(self, k: int) -> tuple["BitVector", "BitVector"]:
        """Split into the first k bits and the remaining n - k."""
        if not 0 <= k <= self.n:
            raise DimensionError(f"cannot split length {self.n} at {k}")
        return BitVector(k, self.word & ((1 << k) - 1)), BitVector(self.n - k, self.word >> k)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.word ^ other.word)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.word & other.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and self.n == other.n and self.word == other.word

    def __hash__(self) -> int:
        return hash((self.n, self.word))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"BitVector('{self.to_string()}')"


def gf2_dot(u: BitVector, v: BitVector) -> int:
    """Parity of the bitwise AND of two equal-length vectors."""
    if u.n != v.n:
        raise DimensionError(f"length mismatch: {u.n} vs {v.n}")
    return bin(u.word & v.word).count("1") & 1


def symplectic(p: tuple[BitVector, BitVector], q: tuple[BitVector, BitVector]) -> int:
    """Symplectic inner product a.d + b.c mod 2 for p = (a, b), q = (c, d).

    Value 1 means the Pauli operators labelled by p and q anti-commute.
    """
    a, b = p
    c, d = q
    if not (a.n == b.n == c.n == d.n):
        raise DimensionError("all four vectors must share one length")
    return gf2_dot(a, d) ^ gf2_dot(b, c)


class BitMatrix:
    """Immutable row-major matrix over GF(2)."""

    __slots__ = ("rows", "cols", "row_data")

    def __init__(self, rows_: Sequence[BitVector], cols: int | None = None):
        rows_ = tuple(rows_)
        if cols is None:
            if not rows_:
                raise DimensionError("empty matrix needs an explicit column count")
            cols = rows_[0].n
        for r in rows_:
            if r.n != cols:
                raise DimensionError(f"row length {r.n} != column count {cols}")
        object.__setattr__(self, "rows", len(rows_))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "row_data", rows_)

    def __setattr__(self, *_):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def from_strings(cls, strings: Sequence[str], cols: int | None = None) -> "BitMatrix":
        return cls([BitVector.from_string(s) for s in strings], cols)

    def row(self, i: int) -> BitVector:
        return self.row_data[i]

    def mul_vec(self, v: BitVector) -> BitVector:
        """Matrix-vector product over GF(2); result has one bit per row."""
        if v.n != self.cols:
            raise DimensionError(f"vector length {v.n} != column count {self.cols}")
        word = 0
        for i, r in enumerate(self.row_data):
            if bin(r.word & v.word).count("1") & 1:
                word |= 1 << i
        return BitVector(self.rows, word)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.cols == other.cols
            and self.row_data == other.row_data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.row_data))

    def __repr__(self) -> str:
        body = ", ".join(r.to_string() for r in self.row_data)
        return f"BitMatrix([{body}], cols={self.cols})"


def _rref(M: BitMatrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (row words, pivot column list).

    Pivoting is deterministic: first nonzero column, topmost remaining row.
    """
    words = [r.word for r in M.row_data]
    pivots = []
    rank = 0
    for col in range(M.cols):
        bit = 1 << col
        pivot_row = None
        for i in range(rank, len(words)):
            if words[i] & bit:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        words[rank], words[pivot_row] = words[pivot_row], words[rank]
        for i in range(len(words)):
            if i != rank and words[i] & bit:
                words[i] ^= words[rank]
        pivots.append(col)
        rank += 1
    return words[:rank], pivots


def gf2_rank(M: BitMatrix) -> int:
    """Rank over GF(2) via row elimination."""
    return len(_rref(M)[0])


def gf2_kernel(M: BitMatrix) -> BitMatrix:
    """Basis of the right kernel {v : Mv = 0}, one vector per row.

    The basis is deterministic: one vector per non-pivot column of the
    reduced echelon form, in ascending column order.  Row count equals
    cols - rank(M).
    """
    words, pivots = _rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        word = 1 << free
        for i, p in enumerate(pivots):
            if (words[i] >> free) & 1:
                word |= 1 << p
        basis.append(BitVector(M.cols, word))
    return BitMatrix(basis, M.cols)


def row_space_contains(M: BitMatrix, v: BitVector) -> bool:
    """True iff v lies in the GF(2) span of M's rows."""
    if v.n != M.cols:
        raise DimensionError(f"vector length {v.n} != column count {M.cols}")
    extended = BitMatrix(tuple(M.row_data) + (v,), M.cols)
    return gf2_rank(extended) == gf2_rank(M)
