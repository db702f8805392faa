"""Dense univariate polynomials over Z and Z[zeta], with exact resultants.

The resultant path is the computational core of the sieve and is kept
division-free end to end: Sylvester or multiplication matrices evaluated
with the Berkowitz algorithm, so it works unchanged over both coefficient
domains.  Floating point is quarantined in complex_roots, which exists
only to feed the numeric cross-check oracles and never the certifying
path.
"""

from __future__ import annotations

import cmath
import enum
import math
from typing import Iterable, Sequence

import numpy as np

from .eisenstein import EisensteinInt


class Domain(enum.Enum):
    RATIONAL_INT = "RationalInt"
    EISENSTEIN = "Eisenstein"


Scalar = int | EisensteinInt


def _coerce_scalar(c, domain: Domain) -> Scalar:
    if domain is Domain.EISENSTEIN:
        if isinstance(c, EisensteinInt):
            return c
        if isinstance(c, int) and not isinstance(c, bool):
            return EisensteinInt(c, 0)
        raise TypeError(f"cannot coerce {c!r} into Z[zeta]")
    if isinstance(c, EisensteinInt):
        if c.y != 0:
            raise TypeError(f"{c!r} is not a rational integer")
        return c.x
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    raise TypeError(f"cannot coerce {c!r} into Z")


class UniPoly:
    """Polynomial with ascending coefficients and a coefficient-domain tag.

    The zero polynomial has an empty coefficient tuple and degree -1;
    otherwise the leading coefficient is nonzero and degree = len - 1.
    """

    __slots__ = ("coeffs", "domain")

    coeffs: tuple[Scalar, ...]
    domain: Domain

    def __init__(self, coeffs: Iterable[Scalar], domain: Domain | None = None):
        cs = list(coeffs)
        if domain is None:
            has_eis = any(isinstance(c, EisensteinInt) for c in cs)
            domain = Domain.EISENSTEIN if has_eis else Domain.RATIONAL_INT
        cs = [_coerce_scalar(c, domain) for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.coeffs[-1] == 1

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r}, {self.domain.value})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.domain is other.domain and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.domain, self.coeffs))

    def __call__(self, v):
        out = 0
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    def __add__(self, other: UniPoly) -> UniPoly:
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return UniPoly(a, _join(self.domain, other.domain))

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs], self.domain)

    def __sub__(self, other: UniPoly) -> UniPoly:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero or other.is_zero:
                return UniPoly([], _join(self.domain, other.domain))
            return UniPoly(
                _convolve(self.coeffs, other.coeffs),
                _join(self.domain, other.domain),
            )
        if isinstance(other, (int, EisensteinInt)):
            return UniPoly([c * other for c in self.coeffs], None)
        return NotImplemented

    __rmul__ = __mul__


def _join(a: Domain, b: Domain) -> Domain:
    return Domain.EISENSTEIN if Domain.EISENSTEIN in (a, b) else Domain.RATIONAL_INT


def _convolve(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def det_division_free(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by the Berkowitz algorithm.

    Division-free, so exact over any commutative ring whose elements support
    +, -, * with int 0/1 as absorbing/initial values; O(n^4) ring products.
    """
    n = len(rows)
    if n == 0:
        return 1
    for row in rows:
        if len(row) != n:
            raise ValueError("determinant needs a square matrix")
    # p holds the characteristic polynomial det(xI - A_r) of the leading
    # principal r x r submatrix, descending coefficients.
    p: list = [1, -rows[0][0]]
    for r in range(1, n):
        corner = rows[r][r]
        row_r = rows[r][:r]
        col_r = [rows[i][r] for i in range(r)]
        t: list = [1, -corner]
        v = col_r
        for k in range(r):
            t.append(-_dot(row_r, v))
            if k != r - 1:
                v = [_dot(rows[i][:r], v) for i in range(r)]
        newp: list = []
        for i in range(r + 2):
            acc = 0
            for j in range(min(i, r) + 1):
                if i - j < len(t):
                    acc = acc + t[i - j] * p[j]
            newp.append(acc)
        p = newp
    d = p[-1]  # = det(-A) = (-1)^n det(A)
    return -d if n % 2 else d


def _dot(a: Sequence, b: Sequence):
    acc = 0
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def resultant(f: UniPoly, g: UniPoly) -> Scalar:
    """Res(f, g) = det of the Sylvester matrix, f-rows first.

    With this convention Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the
    roots of f, so Res(x - a, x - b) = a - b.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is not defined")
    if f.domain is not g.domain:
        raise ValueError("resultant needs both polynomials over the same domain")
    m, n = f.degree, g.degree
    size = m + n
    if size == 0:
        return 1
    rows = [[0] * size for _ in range(size)]
    fd = f.coeffs[::-1]
    gd = g.coeffs[::-1]
    for i in range(n):
        for k, c in enumerate(fd):
            rows[i][i + k] = c
    for j in range(m):
        for k, c in enumerate(gd):
            rows[n + j][j + k] = c
    return det_division_free(rows)


def _reduce_mod_monic(cs: list, f: Sequence[Scalar]) -> list:
    """In-place reduction of cs modulo the monic polynomial f (ascending)."""
    n = len(f) - 1
    for k in range(len(cs) - 1, n - 1, -1):
        c = cs[k]
        if c:
            for t in range(n + 1):
                cs[k - n + t] = cs[k - n + t] - c * f[t]
    del cs[n:]
    while len(cs) < n:
        cs.append(0)
    return cs


def _pow_x_mod(f: UniPoly, d: int) -> list:
    """Coefficients (length deg f) of x^d modulo monic f, by binary powering."""
    n = f.degree
    fc = f.coeffs
    if n == 0:
        return []
    if d < n:
        return [0] * d + [1] + [0] * (n - d - 1)
    result = [1] + [0] * (n - 1)
    base = _reduce_mod_monic([0, 1], fc)
    while d:
        if d & 1:
            result = _reduce_mod_monic(_convolve(result, base), fc)
        d >>= 1
        if d:
            base = _reduce_mod_monic(_convolve(base, base), fc)
    return result


def resultant_with_binomial(f: UniPoly, d: int, cst: Scalar) -> Scalar:
    """Res(f, x^d - cst) for monic f, i.e. prod (alpha^d - cst) over f's roots.

    x^d is reduced modulo f by repeated squaring first, then the resultant is
    the determinant of the multiplication-by-(x^d - cst) matrix on the quotient
    basis 1, x, ..., x^(n-1); that keeps the matrix n x n no matter how large
    d is, which is what makes conductor-sized exponents feasible.
    """
    if f.is_zero:
        raise ValueError("resultant of the zero polynomial is not defined")
    if not f.is_monic:
        raise ValueError("resultant_with_binomial needs a monic polynomial")
    if d < 1:
        raise ValueError("binomial degree must be >= 1")
    n = f.degree
    if n == 0:
        return 1
    cst = _coerce_scalar(cst, f.domain)
    h = _pow_x_mod(f, d)
    h[0] = h[0] - cst
    cols = [list(h)]
    for _ in range(n - 1):
        cols.append(_reduce_mod_monic([0] + list(cols[-1]), f.coeffs))
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return det_division_free(rows)


class RootRefinementError(RuntimeError):
    """Numeric roots failed to reproduce the input polynomial; nothing is
    silently truncated, callers must treat the roots as unavailable."""


def complex_roots(f: UniPoly) -> list[complex]:
    """All deg(f) roots as complex floats (companion matrix + Newton polish).

    Non-certifying by design: exact Eisenstein coefficients are embedded via
    zeta -> (-1 + sqrt(-3))/2.  The returned multiset is certified to
    re-expand to the (scaled) input coefficients within 1e-6, else
    RootRefinementError is raised.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no root multiset")
    if f.degree == 0:
        return []
    k = 0
    while not f.coeffs[k]:
        k += 1
    zero_roots = [0j] * k
    cs = [complex(c) for c in f.coeffs[k:]]
    n = len(cs) - 1
    if n == 0:
        return zero_roots
    # scale x = R*t so |b_0| = 1 = b_n: keeps p^18-sized spreads conditioned
    radius = abs(cs[0] / cs[-1]) ** (1.0 / n)
    if not (math.isfinite(radius) and radius > 0):
        radius = 1.0
    scaled = [cs[i] / cs[-1] * radius ** (i - n) for i in range(n + 1)]
    roots = [complex(t) * radius for t in np.roots(scaled[::-1])]
    deriv = [i * cs[i] for i in range(1, n + 1)]
    for idx, r in enumerate(roots):
        for _ in range(4):
            dv = _horner(deriv, r)
            if dv == 0:
                break
            step = _horner(cs, r) / dv
            if not (math.isfinite(step.real) and math.isfinite(step.imag)):
                break
            r -= step
        roots[idx] = r
    recon = [1 + 0j]  # ascending product of (t - r/R), stays ascending below
    for r in roots:
        recon = [a - (r / radius) * b for a, b in zip([0j] + recon, recon + [0j])]
    tol = 1e-6 * max(1.0, max(abs(b) for b in scaled))
    for i in range(n + 1):
        if abs(recon[i] - scaled[i]) > tol:
            raise RootRefinementError(
                f"root refinement failed at coefficient {i}: "
                f"|{recon[i]} - {scaled[i]}| > {tol}"
            )
    return zero_roots + roots


def _horner(ascending: Sequence[complex], v: complex) -> complex:
    out = 0j
    for c in reversed(ascending):
        out = out * v + c
    return out
