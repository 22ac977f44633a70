"""Arithmetic in the binary extension fields GF(2^r), 1 <= r <= 32.

Field elements are coefficient vectors of polynomials of degree < r over
GF(2) in the standard basis {1, x, ..., x^(r-1)}.  The modulus for each
degree comes from a compiled-in table of primitive polynomials; each entry
is re-verified at construction time by checking that x has multiplicative
order exactly 2^r - 1.
"""

from __future__ import annotations

from functools import lru_cache

from .bitlin import BitVector
from .errors import DimensionError, InternalInvariantError, UnsupportedDegreeError

# Primitive polynomial for each degree, encoded as an integer whose bit i is
# the coefficient of x^i (bit r is always set).  Entries are standard
# low-weight primitive polynomials; primitivity is re-checked at load.
_PRIMITIVE_POLY = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: (1 << 12) | (1 << 6) | (1 << 4) | (1 << 1) | 1,
    13: (1 << 13) | (1 << 4) | (1 << 3) | (1 << 1) | 1,
    14: (1 << 14) | (1 << 10) | (1 << 6) | (1 << 1) | 1,
    15: (1 << 15) | (1 << 1) | 1,
    16: (1 << 16) | (1 << 12) | (1 << 3) | (1 << 1) | 1,
    17: (1 << 17) | (1 << 3) | 1,
    18: (1 << 18) | (1 << 7) | 1,
    19: (1 << 19) | (1 << 5) | (1 << 2) | (1 << 1) | 1,
    20: (1 << 20) | (1 << 3) | 1,
    21: (1 << 21) | (1 << 2) | 1,
    22: (1 << 22) | (1 << 1) | 1,
    23: (1 << 23) | (1 << 5) | 1,
    24: (1 << 24) | (1 << 7) | (1 << 2) | (1 << 1) | 1,
    25: (1 << 25) | (1 << 3) | 1,
    26: (1 << 26) | (1 << 6) | (1 << 2) | (1 << 1) | 1,
    27: (1 << 27) | (1 << 5) | (1 << 2) | (1 << 1) | 1,
    28: (1 << 28) | (1 << 3) | 1,
    29: (1 << 29) | (1 << 2) | 1,
    30: (1 << 30) | (1 << 23) | (1 << 2) | (1 << 1) | 1,
    31: (1 << 31) | (1 << 3) | 1,
    32: (1 << 32) | (1 << 22) | (1 << 2) | (1 << 1) | 1,
}


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (n < 2^64 desk scale)."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


class FieldElement:
    """An element of GF(2^r), held as an r-bit coefficient vector."""

    __slots__ = ("value",)

    def __init__(self, value: BitVector):
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    @property
    def degree(self) -> int:
        return self.value.n

    @property
    def word(self) -> int:
        return self.value.word

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldElement) and self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"FieldElement('{self.value.to_string()}')"


class FieldSpec:
    """GF(2^r) with a fixed, verified primitive modulus."""

    __slots__ = ("degree", "modulus", "_mod_word")

    def __init__(self, degree: int, modulus: BitVector):
        if modulus.n != degree + 1 or not modulus.get(degree):
            raise InternalInvariantError(
                f"modulus must have degree exactly {degree}"
            )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_mod_word", modulus.word)
        self._verify_primitive()

    def __setattr__(self, *_):
        raise AttributeError("FieldSpec is immutable")

    def element(self, word: int) -> FieldElement:
        return FieldElement(BitVector(self.degree, word))

    def zero(self) -> FieldElement:
        return self.element(0)

    def one(self) -> FieldElement:
        return self.element(1)

    def x(self) -> FieldElement:
        """The class of the polynomial x (reduces to 1 when r = 1)."""
        return self.element(1 if self.degree == 1 else 2)

    def order(self) -> int:
        return (1 << self.degree) - 1

    def _mul_word(self, a: int, b: int) -> int:
        # Carry-less multiply into a 2r-bit accumulator, then reduce the
        # high bits from the top down.
        r = self.degree
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            a <<= 1
            b >>= 1
        for i in range(2 * r - 2, r - 1, -1):
            if (acc >> i) & 1:
                acc ^= self._mod_word << (i - r)
        return acc

    def _verify_primitive(self):
        order = self.order()
        xw = 1 if self.degree == 1 else 2
        w = 1
        # square-and-multiply on raw words (gf_pow is not yet trusted here)
        base, k = xw, order
        while k:
            if k & 1:
                w = self._mul_word(w, base)
            base = self._mul_word(base, base)
            k >>= 1
        if w != 1:
            raise InternalInvariantError(
                f"x^(2^{self.degree}-1) != 1 for modulus 0x{self._mod_word:x}"
            )
        for p in _prime_factors(order):
            base, k, w = xw, order // p, 1
            while k:
                if k & 1:
                    w = self._mul_word(w, base)
                base = self._mul_word(base, base)
                k >>= 1
            if w == 1:
                raise InternalInvariantError(
                    f"x has order dividing (2^{self.degree}-1)/{p}; "
                    f"modulus 0x{self._mod_word:x} is not primitive"
                )

    def __repr__(self) -> str:
        return f"FieldSpec(GF(2^{self.degree}), modulus=0x{self._mod_word:x})"


@lru_cache(maxsize=None)
def field_spec(r: int) -> FieldSpec:
    """The table's verified GF(2^r) for 1 <= r <= 32."""
    if r not in _PRIMITIVE_POLY:
        raise UnsupportedDegreeError(f"degree {r} outside supported range 1..32")
    return FieldSpec(r, BitVector(r + 1, _PRIMITIVE_POLY[r]))


def gf_mul(spec: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    """Product in GF(2^r)."""
    if a.degree != spec.degree or b.degree != spec.degree:
        raise DimensionError(
            f"elements of degree {a.degree}/{b.degree} in GF(2^{spec.degree})"
        )
    return spec.element(spec._mul_word(a.word, b.word))


def gf_pow(spec: FieldSpec, a: FieldElement, k: int) -> FieldElement:
    """a^k by square-and-multiply; a^0 = 1 (including 0^0)."""
    if a.degree != spec.degree:
        raise DimensionError(f"element of degree {a.degree} in GF(2^{spec.degree})")
    if k < 0:
        raise ValueError("exponent must be >= 0")
    result = 1
    base = a.word
    while k:
        if k & 1:
            result = spec._mul_word(result, base)
        base = spec._mul_word(base, base)
        k >>= 1
    return spec.element(result)
