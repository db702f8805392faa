"""Brute-force oracles for the algebraic identities the checkers lean on.

Everything here is deliberately independent of the certifying path: the
characteristic polynomial of a sampled matrix is computed by a Leibniz
determinant plus exact Lagrange interpolation, never by the Berkowitz
routine in polyarith, and nothing imports the conditions or sieve
modules.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .frobdata import FrobeniusRecord, charpoly, exterior_square
from .polyarith import UniPoly, complex_roots
from .primes import primes_up_to

DEFAULT_SEED = 271828

_FIELD_PRIMES = tuple(q for q in primes_up_to(101) if q >= 7)

# (permutation, sign) pairs of S_4, the whole Leibniz expansion
_S4 = tuple(
    (perm, _sign)
    for perm in itertools.permutations(range(4))
    for _sign in [
        (-1) ** sum(
            1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
    ]
)


class OracleCounterexample(AssertionError):
    """An identity oracle found a violating sample."""

    def __init__(self, message: str, witness):
        super().__init__(f"{message}: {witness!r}")
        self.witness = witness


def leibniz_det4(rows) -> int:
    """4x4 determinant as the full 24-term permutation sum."""
    total = 0
    for perm, sign in _S4:
        term = sign
        for i in range(4):
            term *= rows[i][perm[i]]
        total += term
    return total


def charpoly_ts(rows) -> tuple[int, int, int, int]:
    """(t1, t2, t3, t4) of det(xI - M) = x^4 + t1 x^3 + ... + t4.

    Five Leibniz evaluations at x = 0..4 plus exact Lagrange
    interpolation over Q; independent of the division-free charpoly
    used everywhere else.
    """
    values = []
    for lam in range(5):
        shifted = [
            [(lam if i == j else 0) - rows[i][j] for j in range(4)]
            for i in range(4)
        ]
        values.append(leibniz_det4(shifted))
    coeffs = [Fraction(0)] * 5
    for k, yk in enumerate(values):
        basis = [Fraction(1)]
        denom = 1
        for j in range(5):
            if j == k:
                continue
            denom *= k - j
            # multiply the accumulated basis polynomial by (x - j)
            basis = [Fraction(0)] + basis
            for idx in range(len(basis) - 1):
                basis[idx] -= j * basis[idx + 1]
        scale = Fraction(yk, denom)
        for idx, b in enumerate(basis):
            coeffs[idx] += scale * b
    assert coeffs[4] == 1, "interpolated charpoly is not monic"
    assert all(c.denominator == 1 for c in coeffs)
    return (int(coeffs[3]), int(coeffs[2]), int(coeffs[1]), int(coeffs[0]))


@dataclass(frozen=True)
class FiniteFieldMatrix:
    """4x4 matrix over F_q for a small prime q <= 101."""

    q: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.q not in _FIELD_PRIMES and self.q not in (2, 3, 5):
            raise ValueError(f"q must be a prime <= 101, got {self.q}")
        if len(self.entries) != 4 or any(len(r) != 4 for r in self.entries):
            raise ValueError("entries must be 4x4")
        object.__setattr__(
            self, "entries",
            tuple(tuple(e % self.q for e in row) for row in self.entries))

    def __matmul__(self, other: "FiniteFieldMatrix") -> "FiniteFieldMatrix":
        if self.q != other.q:
            raise ValueError("mismatched fields")
        rows = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(4))
                % self.q
                for j in range(4))
            for i in range(4))
        return FiniteFieldMatrix(self.q, rows)

    def scaled(self, c: int) -> "FiniteFieldMatrix":
        return FiniteFieldMatrix(
            self.q, tuple(tuple(c * e for e in row) for row in self.entries))

    def charpoly_ts(self) -> tuple[int, int, int, int]:
        return tuple(t % self.q for t in charpoly_ts(self.entries))

    @classmethod
    def identity(cls, q: int) -> "FiniteFieldMatrix":
        return cls(q, tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))


def quartic_from_roots(roots) -> tuple[int, int, int, int]:
    """(t1, t2, t3, t4) of prod (x - r), expanded exactly."""
    cs = [1]
    for r in roots:
        cs = [0] + cs
        for idx in range(len(cs) - 1):
            cs[idx] -= r * cs[idx + 1]
    assert len(cs) == 5
    return (cs[3], cs[2], cs[1], cs[0])


def opposite_identity_residual(t) -> int:
    t1, t2, t3, t4 = t
    return t3 * t3 + t4 * t1 * t1 - t1 * t2 * t3


def sum_zero_identity_residual(t) -> int:
    t1, t2, t3, t4 = t
    return t1 * t1 * t2 + t4 - t3 * t1


def reciprocal_residuals(t, multiplier: int) -> tuple[int, int]:
    t1, t2, t3, t4 = t
    return (t3 - multiplier * t1, t4 - multiplier * multiplier)


def random_monomial_matrix(q: int, rng: random.Random, kind: str) -> FiniteFieldMatrix:
    """M[sigma(j), j] = d_j with nonzero d_j and sigma of the given kind
    ("odd": transposition or 4-cycle; "three-cycle": 3-cycle plus fixed
    point)."""
    if kind == "odd":
        perms = [p for p, s in _S4 if s == -1]
    elif kind == "three-cycle":
        perms = [
            p for p, s in _S4
            if s == 1 and sum(p[i] == i for i in range(4)) == 1
        ]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    sigma = rng.choice(perms)
    rows = [[0] * 4 for _ in range(4)]
    for j in range(4):
        rows[sigma[j]][j] = rng.randrange(1, q)
    return FiniteFieldMatrix(q, tuple(tuple(r) for r in rows))


_J = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def _form_value(M: FiniteFieldMatrix):
    # M^T J M mod q, as a plain tuple of tuples
    q = M.q
    jm = [
        [sum(_J[i][k] * M.entries[k][j] for k in range(4)) % q for j in range(4)]
        for i in range(4)
    ]
    return tuple(
        tuple(
            sum(M.entries[k][i] * jm[k][j] for k in range(4)) % q
            for j in range(4))
        for i in range(4))


def random_symplectic_similitude(
        q: int, rng: random.Random) -> tuple[FiniteFieldMatrix, int]:
    """(M, m) with M^T J M = m J, built from random symplectic
    transvections times a multiplier block and a scalar."""
    M = FiniteFieldMatrix.identity(q)
    for _ in range(rng.randrange(3, 7)):
        v = [rng.randrange(q) for _ in range(4)]
        if not any(v):
            v[rng.randrange(4)] = 1
        c = rng.randrange(q)
        jv = [sum(_J[i][k] * v[k] for k in range(4)) % q for i in range(4)]
        t = tuple(
            tuple((int(i == j) + c * v[i] * jv[j]) % q for j in range(4))
            for i in range(4))
        M = M @ FiniteFieldMatrix(q, t)
    m = rng.randrange(1, q)
    block = FiniteFieldMatrix(
        q, ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, m, 0), (0, 0, 0, m)))
    u = rng.randrange(1, q)
    M = (M @ block).scaled(u)
    multiplier = (m * u * u) % q
    expected = tuple(
        tuple((multiplier * _J[i][j]) % q for j in range(4)) for i in range(4))
    assert _form_value(M) == expected, "sampler broke the symplectic form"
    return M, multiplier


def opposite_root_identity_check(trials: int, seed: int | None = None) -> bool:
    """t3^2 + t4 t1^2 = t1 t2 t3 whenever two roots are opposite.

    Each trial checks one exact integer root multiset {a, -a, b, g} and
    the charpoly of one odd monomial matrix over a random F_q.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    for _ in range(trials):
        alpha, beta, gamma = (rng.randrange(-50, 51) for _ in range(3))
        roots = (alpha, -alpha, beta, gamma)
        t = quartic_from_roots(roots)
        if opposite_identity_residual(t) != 0:
            raise OracleCounterexample(
                "opposite-root identity failed on integer roots",
                {"roots": roots, "t": t})
        q = rng.choice(_FIELD_PRIMES)
        M = random_monomial_matrix(q, rng, "odd")
        ts = M.charpoly_ts()
        if opposite_identity_residual(ts) % q != 0:
            raise OracleCounterexample(
                "opposite-root identity failed on an odd monomial matrix",
                {"q": q, "entries": M.entries, "t": ts})
    return True


def sum_zero_identity_check(trials: int, seed: int | None = None) -> bool:
    """t1^2 t2 + t4 = t3 t1 whenever three roots sum to zero."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    for _ in range(trials):
        alpha, beta, gamma = (rng.randrange(-50, 51) for _ in range(3))
        roots = (alpha, beta, -alpha - beta, gamma)
        t = quartic_from_roots(roots)
        if sum_zero_identity_residual(t) != 0:
            raise OracleCounterexample(
                "zero-sum identity failed on integer roots",
                {"roots": roots, "t": t})
        q = rng.choice(_FIELD_PRIMES)
        M = random_monomial_matrix(q, rng, "three-cycle")
        ts = M.charpoly_ts()
        if sum_zero_identity_residual(ts) % q != 0:
            raise OracleCounterexample(
                "zero-sum identity failed on a three-cycle monomial matrix",
                {"q": q, "entries": M.entries, "t": ts})
    return True


def reciprocal_pairs_check(trials: int, seed: int | None = None) -> bool:
    """t3 = m t1 and t4 = m^2 for symplectic similitudes with multiplier m."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    for _ in range(trials):
        q = rng.choice(_FIELD_PRIMES)
        M, m = random_symplectic_similitude(q, rng)
        ts = M.charpoly_ts()
        r3, r4 = reciprocal_residuals(ts, m)
        if r3 % q != 0 or r4 % q != 0:
            raise OracleCounterexample(
                "reciprocal-pairs identity failed on a symplectic similitude",
                {"q": q, "entries": M.entries, "multiplier": m, "t": ts})
    return True


def _multisets_close(xs, ys, tol: float) -> bool:
    if len(xs) != len(ys):
        return False
    pool = list(ys)
    for x in xs:
        best = min(range(len(pool)), key=lambda k: abs(pool[k] - x))
        if abs(pool[best] - x) > tol * max(1.0, abs(x)):
            return False
        pool.pop(best)
    return True


def exterior_square_numeric_check(rec: FrobeniusRecord, tol: float = 1e-6) -> bool:
    """Roots of the sextic = pairwise products of roots of the quartic,
    as multisets within relative tol."""
    quartic_roots = complex_roots(charpoly(rec))
    products = [
        quartic_roots[i] * quartic_roots[j]
        for i in range(4) for j in range(i + 1, 4)
    ]
    sextic_roots = complex_roots(exterior_square(rec))
    return _multisets_close(products, sextic_roots, tol)


def purity_numeric_check(rec: FrobeniusRecord, tol: float = 1e-6) -> bool:
    """All four roots sit on |z| = p^(3/2), checked after the exact Weil
    bound N(a) <= 16 p^3 (a violated bound fails without computing any
    roots)."""
    if rec.a.norm() > 16 * rec.p**3:
        return False
    target = rec.p ** 1.5
    return all(
        abs(abs(root) - target) <= tol * target
        for root in complex_roots(charpoly(rec)))
