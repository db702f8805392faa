"""Quadratic and cubic Dirichlet characters unramified outside N.

Quadratic characters are Kronecker symbols keyed by fundamental
discriminant.  Cubic characters are built from local components: the
conductor-9 pair at 3 (the only 3-power conductor a cubic character can
have) and, for primes q = 1 (mod 3) dividing N, the conductor-q pair
against a fixed primitive root.  Values are never floats: they live in
mu_6 union {0}, encoded as an exponent of zeta_6.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .primes import factorize


@dataclass(frozen=True)
class CharValue:
    """zeta_6^exponent, or the absorbing zero (exponent None)."""

    exponent: int | None

    @classmethod
    def zero(cls) -> "CharValue":
        return cls(None)

    @classmethod
    def one(cls) -> "CharValue":
        return cls(0)

    @classmethod
    def minus_one(cls) -> "CharValue":
        return cls(3)

    @classmethod
    def omega(cls, k: int = 1) -> "CharValue":
        return cls((2 * k) % 6)

    @classmethod
    def from_sign(cls, s: int) -> "CharValue":
        if s == 0:
            return cls.zero()
        return cls.one() if s == 1 else cls.minus_one()

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def is_one(self) -> bool:
        return self.exponent == 0

    @property
    def is_minus_one(self) -> bool:
        return self.exponent == 3

    def __mul__(self, other: "CharValue") -> "CharValue":
        if not isinstance(other, CharValue):
            return NotImplemented
        if self.exponent is None or other.exponent is None:
            return CharValue(None)
        return CharValue((self.exponent + other.exponent) % 6)

    def as_complex(self) -> complex:
        if self.exponent is None:
            return 0j
        return cmath.exp(1j * cmath.pi * self.exponent / 3)

    def __str__(self) -> str:
        if self.exponent is None:
            return "0"
        return {0: "1", 1: "zeta6", 2: "omega", 3: "-1", 4: "omega^2", 5: "zeta6^5"}[self.exponent]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full extension of the Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    # Jacobi loop on odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


@lru_cache(maxsize=None)
def _dlog_table(q: int, g: int) -> dict:
    table = {}
    acc = 1 % q
    k = 0
    while acc not in table:
        table[acc] = k
        acc = acc * g % q
        k += 1
    return table


@dataclass(frozen=True)
class CubicLocal:
    modulus: int
    generator: int
    exponent: int  # 1 or 2: generator maps to omega^exponent


@dataclass(frozen=True)
class DirichletCharacter:
    order: int
    discriminant: int | None = None          # order 2: fundamental discriminant
    components: tuple[CubicLocal, ...] = ()  # order 3: local pieces

    def __post_init__(self):
        if self.order == 2:
            if self.discriminant is None or self.components:
                raise ValueError("order-2 characters are keyed by a discriminant only")
        elif self.order == 3:
            if self.discriminant is not None or not self.components:
                raise ValueError("order-3 characters need local components")
        else:
            raise ValueError(f"unsupported order {self.order}")

    @property
    def modulus(self) -> int:
        if self.order == 2:
            return abs(self.discriminant)
        return math.prod(c.modulus for c in self.components)

    conductor = modulus

    @property
    def label(self) -> str:
        if self.order == 2:
            return f"kronecker({self.discriminant}|.)"
        parts = ", ".join(
            f"{c.generator} -> omega^{c.exponent} mod {c.modulus}" for c in self.components
        )
        return f"cubic[{parts}]"

    def __str__(self) -> str:
        return self.label


def evaluate(chi: DirichletCharacter, n: int) -> CharValue:
    """chi(n) as a CharValue; completely multiplicative in n, 0 on non-units."""
    if chi.order == 2:
        return CharValue.from_sign(kronecker(chi.discriminant, n))
    if math.gcd(n, chi.modulus) != 1:
        return CharValue.zero()
    acc = 0
    for comp in chi.components:
        dlog = _dlog_table(comp.modulus, comp.generator)[n % comp.modulus]
        acc = (acc + comp.exponent * dlog) % 3
    return CharValue.omega(acc) if acc else CharValue.one()


def enumerate_quadratic(N: int) -> list[DirichletCharacter]:
    """All nontrivial quadratic characters unramified outside N, as Kronecker
    symbols of the fundamental discriminants supported on the primes of N."""
    if N < 1:
        raise ValueError("N must be positive")
    support = sorted(factorize(N)) if N > 1 else []
    discs = [1]
    for p in support:
        if p == 2:
            continue
        pstar = p if p % 4 == 1 else -p
        discs += [d * pstar for d in discs]
    if 2 in support:
        discs = [d * t for d in discs for t in (1, -4, 8, -8)]
    ds = sorted(set(discs) - {1})
    return [DirichletCharacter(order=2, discriminant=d) for d in ds]


def _primitive_root(q: int) -> int:
    phi = q - 1
    prime_factors = list(factorize(phi))
    for g in range(2, q):
        if all(pow(g, phi // r, q) != 1 for r in prime_factors):
            return g
    raise ValueError(f"no primitive root mod {q}")


def enumerate_cubic(N: int) -> list[DirichletCharacter]:
    """All nontrivial cubic characters with conductor supported on primes(N).

    Local building blocks: conductor 9 at the prime 3 (any 3-power conductor
    cubic character factors through (Z/9)*), conductor q at primes q = 1
    (mod 3); primes q = 2 (mod 3) and the prime 2 contribute nothing since
    3 does not divide phi(q^a).  Products over the local blocks, excluding
    the everywhere-trivial combination.
    """
    if N < 1:
        raise ValueError("N must be positive")
    support = sorted(factorize(N)) if N > 1 else []
    locals_: list[tuple[int, int]] = []
    for p in support:
        if p == 3:
            locals_.append((9, 2))
        elif p % 3 == 1:
            locals_.append((p, _primitive_root(p)))
    chars = []
    for combo in product((0, 1, 2), repeat=len(locals_)):
        if not any(combo):
            continue
        comps = tuple(
            CubicLocal(q, g, e) for (q, g), e in zip(locals_, combo) if e
        )
        chars.append(DirichletCharacter(order=3, components=comps))
    return chars
