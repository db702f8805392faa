"""Exact arithmetic in Z[zeta], zeta a primitive cube root of unity.

Elements are stored on the basis {1, zeta} with zeta^2 rewritten as
-1 - zeta, so a pair (x, y) means x + y*zeta and the representation is
canonical.  All integers are arbitrary precision; nothing in this module
may silently truncate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .primes import is_probable_prime


class PrimeType(enum.Enum):
    SPLIT = "split"        # ell = 1 (mod 3), two primes above ell
    INERT = "inert"        # ell = 2 (mod 3)
    RAMIFIED = "ramified"  # ell = 3 = -zeta^2 * (1 - zeta)^2


@dataclass(frozen=True, eq=False)
class EisensteinInt:
    x: int = 0
    y: int = 0

    @classmethod
    def from_int(cls, n: int) -> EisensteinInt:
        return cls(n, 0)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.x}, {self.y})"

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        return f"{self.x}{self.y:+}*zeta"

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.y == 0 and self.x == other
        if isinstance(other, EisensteinInt):
            return self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self) -> int:
        # rational values hash like their int so z == n implies equal hashes
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y))

    def __add__(self, other: int | EisensteinInt) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.x + other, self.y)
        if isinstance(other, EisensteinInt):
            return EisensteinInt(self.x + other.x, self.y + other.y)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.x, -self.y)

    def __sub__(self, other: int | EisensteinInt) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.x - other, self.y)
        if isinstance(other, EisensteinInt):
            return EisensteinInt(self.x - other.x, self.y - other.y)
        return NotImplemented

    def __rsub__(self, other: int | EisensteinInt) -> EisensteinInt:
        return (-self) + other

    def __mul__(self, other: int | EisensteinInt) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.x * other, self.y * other)
        if isinstance(other, EisensteinInt):
            # (x1 + y1 z)(x2 + y2 z), z^2 = -1 - z
            return EisensteinInt(
                self.x * other.x - self.y * other.y,
                self.x * other.y + self.y * other.x - self.y * other.y,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> EisensteinInt:
        if n < 0:
            raise ValueError("negative powers leave Z[zeta]")
        out = EisensteinInt(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> EisensteinInt:
        return EisensteinInt(self.x - self.y, -self.y)

    def norm(self) -> int:
        return self.x * self.x - self.x * self.y + self.y * self.y

    def __complex__(self) -> complex:
        return self.x + self.y * _ZETA_NUMERIC


_ZETA_NUMERIC = complex(-0.5, 0.8660254037844386467637231707529362)  # (-1+sqrt(-3))/2

ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
ZETA = EisensteinInt(0, 1)


def mul(z: EisensteinInt, w: EisensteinInt) -> EisensteinInt:
    return z * w


def conj(z: EisensteinInt) -> EisensteinInt:
    return z.conj()


def norm(z: EisensteinInt) -> int:
    return z.norm()


def classify_prime(ell: int) -> PrimeType:
    if ell < 2 or not is_probable_prime(ell):
        raise ValueError(f"classify_prime needs a prime, got {ell}")
    if ell == 3:
        return PrimeType.RAMIFIED
    return PrimeType.SPLIT if ell % 3 == 1 else PrimeType.INERT


def divides_above(ell: int, z: EisensteinInt) -> bool:
    """True iff some prime of Z[zeta] above ell divides z.

    Split ell: ell | norm(z).  Inert ell: ell stays prime, so it divides z
    iff it divides both coordinates.  ell = 3: the ramified prime (1 - zeta)
    divides z iff 3 | norm(z).
    """
    kind = classify_prime(ell)
    if kind is PrimeType.INERT:
        return z.x % ell == 0 and z.y % ell == 0
    return z.norm() % ell == 0
