import random

import pytest

from frobsieve.primes import (
    euler_phi,
    factorize,
    is_probable_prime,
    perfect_power,
    primes_up_to,
    trial_division,
)


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10**5)) == 9592
    # cached path must still respect smaller limits
    assert primes_up_to(10) == [2, 3, 5, 7]


def test_is_probable_prime_small():
    ps = set(primes_up_to(2000))
    for n in range(2000):
        assert is_probable_prime(n) == (n in ps)


def test_is_probable_prime_carmichael_and_big():
    for n in (561, 1105, 1729, 2465, 294409, 56052361):
        assert not is_probable_prime(n)
    assert is_probable_prime(2**127 - 1)
    assert not is_probable_prime(2**128 + 1)


def test_trial_division():
    assert trial_division(2**10 * 3**5 * 7, 10) == ({2: 10, 3: 5, 7: 1}, 1)
    # residual below bound^2 is recognized as prime
    assert trial_division(997 * 4, 100) == ({2: 2, 997: 1}, 1)
    # genuinely hard residual is passed through untouched
    big = (2**89 - 1) * (2**107 - 1)
    factors, residual = trial_division(12 * big, 1000)
    assert factors == {2: 2, 3: 1} and residual == big
    with pytest.raises(ValueError):
        trial_division(0, 10)


def test_perfect_power():
    assert perfect_power(8) == (2, 3)
    assert perfect_power(3**48) == (3, 48)
    assert perfect_power(36) == (6, 2)
    assert perfect_power(2) is None
    assert perfect_power(12) is None
    assert perfect_power((2**61 - 1) ** 2) == (2**61 - 1, 2)


def test_factorize_random_roundtrip():
    rng = random.Random(4242)
    for _ in range(60):
        n = rng.randint(1, 10**12)
        fs = factorize(n)
        prod = 1
        for p, e in fs.items():
            assert is_probable_prime(p)
            prod *= p**e
        assert prod == n


def test_factorize_semiprime():
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q) == {p: 1, q: 1}


def test_euler_phi():
    assert euler_phi(1) == 1
    assert euler_phi(1728) == 576
    assert euler_phi(9) == 6
    known = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert [euler_phi(n) for n in range(1, 13)] == known
