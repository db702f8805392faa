"""Integer primality, factorization and small-prime utilities.

Everything here is exact and deterministic.  Miller-Rabin uses the fixed
12-prime base set, which is a proven-deterministic test for n < 3.3e24;
callers that may see larger integers (residual cofactors of sieve gcds)
must treat a positive verdict as "probable" and say so in their reports.
"""

from __future__ import annotations

import bisect
import math

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# deterministic range for the base set above (Sorenson-Webster)
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_sieve_cache: tuple[int, list[int]] = (1, [])


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by a bytearray Eratosthenes sieve (cached)."""
    global _sieve_cache
    if limit < 2:
        return []
    cached_limit, cached = _sieve_cache
    if limit > cached_limit:
        flags = bytearray([1]) * (limit + 1)
        flags[0] = flags[1] = 0
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        cached = [i for i in range(limit + 1) if flags[i]]
        _sieve_cache = (limit, cached)
        return list(cached)
    return cached[: bisect.bisect_right(cached, limit)]


def trial_division(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Factor out every prime <= bound from n > 0.

    Returns (factors, residual) with n = residual * prod(p**e), residual = 1
    or free of prime factors <= bound.  A residual that can be recognized as
    prime for free (n < p^2 during the scan, or n <= bound^2 at the end) is
    folded into the factors.
    """
    if n <= 0:
        raise ValueError("trial_division needs n > 0")
    factors: dict[int, int] = {}
    proven_prime = False
    for p in primes_up_to(bound):
        if p * p > n:
            proven_prime = n > 1
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if n > 1 and (proven_prime or n <= bound * bound):
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2 or k == 1:
        return n
    if k >= n.bit_length():
        return 1
    x = 1 << -(-n.bit_length() // k)  # upper-ish starting point
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def perfect_power(n: int) -> tuple[int, int] | None:
    """Smallest base b with b**k == n (k >= 2), or None."""
    if n < 4:
        return None
    for k in range(n.bit_length(), 1, -1):
        b = _iroot(n, k)
        if b >= 2 and b**k == n:
            return b, k
    return None


def _pollard_rho(n: int, max_steps: int | None = None) -> int:
    """A nontrivial factor of composite n (Brent's cycle variant).

    With max_steps set, gives up after that many iterations in total and
    returns 0; unbounded otherwise.
    """
    if n % 2 == 0:
        return 2
    budget = max_steps if max_steps is not None else -1
    seed = 1
    while True:
        seed += 1
        x = y = 2
        c = seed
        d = 1
        while d == 1:
            if budget == 0:
                return 0
            budget -= 1
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Full factorization of n >= 1.  Intended for moderate n (group orders,
    conductors); the sieve's thousand-digit resultants never come through here."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    factors, residual = trial_division(n, 10_000)
    stack = [residual] if residual > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        power = perfect_power(m)
        if power is not None:
            b, k = power
            for _ in range(k):
                stack.append(b)
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def bounded_factorize(
    n: int,
    trial_bound: int = 10**6,
    rho_steps: int = 200_000,
    hard_bits: int = 512,
) -> tuple[set[int], list[int]]:
    """Best-effort factorization of n >= 1 into certified primes.

    Returns (primes, unresolved): primes is the set of prime factors that
    were proven prime (trial division, or Miller-Rabin inside its
    deterministic range); unresolved collects cofactors that were too large
    (over hard_bits), probable primes beyond the deterministic range, or
    composites rho could not split within rho_steps.  Callers must treat a
    nonempty unresolved list as an incomplete enumeration.
    """
    if n < 1:
        raise ValueError("bounded_factorize needs n >= 1")
    factors, residual = trial_division(n, trial_bound)
    primes = set(factors)
    unresolved: list[int] = []
    stack = [residual] if residual > 1 else []
    while stack:
        m = stack.pop()
        if m in primes:
            continue
        if m.bit_length() > hard_bits:
            unresolved.append(m)
            continue
        if is_probable_prime(m):
            if m < MR_DETERMINISTIC_BOUND:
                primes.add(m)
            else:
                unresolved.append(m)
            continue
        power = perfect_power(m)
        if power is not None:
            stack.append(power[0])
            continue
        d = _pollard_rho(m, max_steps=rho_steps)
        if d in (0, m):
            unresolved.append(m)
            continue
        stack.append(d)
        stack.append(m // d)
    return primes, sorted(set(unresolved))


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    out = 1
    for p, e in factorize(n).items():
        out *= (p - 1) * p ** (e - 1)
    return out
