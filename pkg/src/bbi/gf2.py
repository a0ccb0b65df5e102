"""Bit vectors, polynomials over GF(2), and modular integers.

Everything is packed into Python ints.  A BitVec of width n stores its
coordinates in the low n bits of an int, index 0 being the least
significant bit.  A Gf2Poly stores coefficient i of X^i in bit i, so the
int 0b1011 is X^3 + X + 1.  Addition in both cases is XOR.  All values
are immutable; operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BitVec:
    """Element of GF(2)^width, little-endian: bit(0) is the LSB."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value:#x} does not fit width {self.width}")

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.width != other.width:
            raise ValueError("width mismatch")
        return BitVec(self.value ^ other.value, self.width)

    def __int__(self) -> int:
        return self.value

    def bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise ValueError("bit index out of range")
        return (self.value >> i) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def extract(self, start: int, width: int) -> "BitVec":
        """Contiguous sub-vector: bits start .. start+width-1."""
        if start < 0 or width < 1 or start + width > self.width:
            raise ValueError("extract window out of range")
        return BitVec((self.value >> start) & ((1 << width) - 1), width)

    def concat(self, other: "BitVec") -> "BitVec":
        """self occupies the low indices, other the high ones."""
        return BitVec(self.value | (other.value << self.width), self.width + other.width)

    def rotl(self, k: int) -> "BitVec":
        k %= self.width
        v = ((self.value << k) | (self.value >> (self.width - k))) & ((1 << self.width) - 1)
        return BitVec(v, self.width)

    def hex(self) -> str:
        return f"0x{self.value:0{(self.width + 3) // 4}x}"

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2); bit i of `bits` is the coefficient of X^i."""

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("negative coefficient mask")

    @classmethod
    def from_coeffs(cls, coeffs) -> "Gf2Poly":
        """Coefficients lowest degree first."""
        v = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                v |= 1 << i
        return cls(v)

    @classmethod
    def from_terms(cls, degrees) -> "Gf2Poly":
        v = 0
        for d in degrees:
            v ^= 1 << d
        return cls(v)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    @property
    def constant_term(self) -> int:
        return self.bits & 1

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        a, b, acc = self.bits, other.bits, 0
        while a:
            if a & 1:
                acc ^= b
            a >>= 1
            b <<= 1
        return Gf2Poly(acc)

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        if other.bits == 0:
            raise ZeroDivisionError("division by zero polynomial")
        r, d, q = self.bits, other.bits, 0
        dn = d.bit_length()
        while r.bit_length() >= dn:
            shift = r.bit_length() - dn
            q ^= 1 << shift
            r ^= d << shift
        return Gf2Poly(q), Gf2Poly(r)

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[0]

    def reciprocal(self) -> "Gf2Poly":
        """X^deg * p(1/X): the coefficient sequence reversed."""
        if self.bits == 0:
            return self
        d = self.degree
        v = 0
        for i in range(d + 1):
            if (self.bits >> i) & 1:
                v |= 1 << (d - i)
        return Gf2Poly(v)

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            if (self.bits >> i) & 1:
                parts.append("1" if i == 0 else ("X" if i == 1 else f"X^{i}"))
        return " + ".join(parts)


ZERO = Gf2Poly(0)
ONE = Gf2Poly(1)
X = Gf2Poly(2)


def _mod_int(a: int, b: int) -> int:
    bn = b.bit_length()
    while a.bit_length() >= bn:
        a ^= b << (a.bit_length() - bn)
    return a


def gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Monic gcd; gcd(0, 0) is rejected."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    x, y = a.bits, b.bits
    while y:
        x, y = y, _mod_int(x, y)
    return Gf2Poly(x)


def lcm(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Monic lcm; lcm(0, 0) is rejected, lcm with one zero argument is 0."""
    if a.is_zero and b.is_zero:
        raise ValueError("lcm(0, 0) is undefined")
    if a.is_zero or b.is_zero:
        return ZERO
    return (a * b) // gcd(a, b)


def powmod(a: Gf2Poly, e: int, mod: Gf2Poly) -> Gf2Poly:
    """a^e reduced by mod."""
    if e < 0:
        raise ValueError("negative exponent")
    if mod.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    acc = ONE % mod
    base = a % mod
    while e:
        if e & 1:
            acc = (acc * base) % mod
        base = (base * base) % mod
        e >>= 1
    return acc


def mulmod(a: Gf2Poly, b: Gf2Poly, mod: Gf2Poly) -> Gf2Poly:
    if mod.is_zero:
        raise ZeroDivisionError("zero modulus")
    return (a * b) % mod


def order(p: Gf2Poly, bound: int = 1 << 20) -> int | None:
    """Least N >= 1 with X^N = 1 mod p, or None if no N <= bound works.

    Requires p(0) != 0 (otherwise X is a zero divisor and no such N
    exists) and deg p >= 1.  Plain iteration: multiply by X and reduce,
    which is a shift and a conditional XOR per step.
    """
    if p.constant_term == 0:
        raise ValueError("order requires a nonzero constant term")
    if p.degree < 1:
        raise ValueError("order requires degree >= 1")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    m = p.bits
    d = p.degree
    s = 1  # X^0
    for n in range(1, bound + 1):
        s <<= 1
        if (s >> d) & 1:
            s ^= m
        if s == 1:
            return n
    return None


@dataclass(frozen=True)
class IntMod:
    """Integer fully reduced modulo a fixed modulus >= 2."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "IntMod"):
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")

    def __add__(self, other: "IntMod") -> "IntMod":
        self._check(other)
        return IntMod(self.value + other.value, self.modulus)

    def __sub__(self, other: "IntMod") -> "IntMod":
        self._check(other)
        return IntMod(self.value - other.value, self.modulus)

    def __mul__(self, other: "IntMod") -> "IntMod":
        self._check(other)
        return IntMod(self.value * other.value, self.modulus)

    def pow(self, e: int) -> "IntMod":
        return IntMod(pow(self.value, e, self.modulus), self.modulus)

    def inverse(self) -> "IntMod":
        return IntMod(pow(self.value, -1, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value
