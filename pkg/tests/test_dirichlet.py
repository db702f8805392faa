import math
import random
from math import gcd

import pytest

from frobsieve.dirichlet import (
    CharValue,
    CubicLocal,
    DirichletCharacter,
    enumerate_cubic,
    enumerate_quadratic,
    evaluate,
    kronecker,
)
from frobsieve.frobdata import scholten_dataset


def test_char_value_algebra():
    one = CharValue.one()
    zero = CharValue.zero()
    m1 = CharValue.minus_one()
    w = CharValue.omega()
    assert one.is_one and zero.is_zero and m1.is_minus_one
    assert (m1 * m1) == one
    assert (w * w * w) == one
    assert (w * w) == CharValue.omega(2)
    assert (zero * w).is_zero and (w * zero).is_zero
    for v in (one, m1, w, CharValue.omega(2), CharValue(1), CharValue(5)):
        z = v.as_complex()
        assert abs(abs(z) - 1.0) < 1e-12
        assert abs(z**6 - 1.0) < 1e-12
    # exponent arithmetic matches the complex embedding
    for e1 in range(6):
        for e2 in range(6):
            prod = CharValue(e1) * CharValue(e2)
            assert abs(prod.as_complex() - CharValue(e1).as_complex() * CharValue(e2).as_complex()) < 1e-12


def test_kronecker_against_euler_criterion():
    # on odd primes the symbol is the Legendre symbol
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 97):
        squares = {pow(x, 2, p) for x in range(1, p)}
        for a in range(-2 * p, 2 * p):
            expect = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert kronecker(a, p) == expect, (a, p)


def test_kronecker_two_and_units():
    assert kronecker(-3, 5) == -1
    assert kronecker(5, 1) == 1
    assert kronecker(1, 0) == 1 and kronecker(-1, 0) == 1 and kronecker(7, 0) == 0
    # (a|2) per a mod 8
    for a, want in ((1, 1), (7, 1), (3, -1), (5, -1), (4, 0)):
        assert kronecker(a, 2) == want
    # multiplicativity in the bottom argument
    rng = random.Random(7)
    for _ in range(300):
        a = rng.randint(-60, 60)
        m = rng.randint(1, 90)
        n = rng.randint(1, 90)
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_quadratic_enumeration_level_six():
    chars = enumerate_quadratic(6)
    assert len(chars) == 7
    ds = sorted(c.discriminant for c in chars)
    assert ds == [-24, -8, -4, -3, 8, 12, 24]
    # squarefree kernels are the expected quadratic fields
    kernels = set()
    for d in ds:
        k = d
        for q in (2, 3):
            while k % (q * q) == 0:
                k //= q * q
        kernels.add(k)
    assert kernels == {-1, 2, -2, 3, -3, 6, -6}
    for c in chars:
        assert c.modulus == abs(c.discriminant)


def test_quadratic_enumeration_small_levels():
    assert enumerate_quadratic(1) == []
    assert [c.discriminant for c in enumerate_quadratic(3)] == [-3]
    assert sorted(c.discriminant for c in enumerate_quadratic(2)) == [-8, -4, 8]
    with pytest.raises(ValueError):
        enumerate_quadratic(0)


def test_quadratic_chars_are_all_homs_mod_24():
    # oracle: brute-force every nontrivial hom (Z/24)* -> {+-1}
    units = [n for n in range(24) if gcd(n, 24) == 1]
    homs = []
    for mask in range(2 ** len(units)):
        f = {u: (1 if mask >> i & 1 else -1) for i, u in enumerate(units)}
        if f[1] != 1:
            continue
        if all(f[a * b % 24] == f[a] * f[b] for a in units for b in units):
            homs.append(tuple(f[u] for u in units))
    nontrivial = {h for h in homs if set(h) == {1, -1}}
    assert len(nontrivial) == 7
    tables = set()
    for c in enumerate_quadratic(6):
        tab = []
        for u in units:
            v = evaluate(c, u)
            assert v.is_one or v.is_minus_one
            tab.append(1 if v.is_one else -1)
        tables.add(tuple(tab))
    assert tables == nontrivial


def test_cubic_enumeration_level_six():
    chars = enumerate_cubic(6)
    assert len(chars) == 2
    for c in chars:
        assert c.order == 3
        assert c.modulus == 9
    # conjugate pair: pointwise product is trivial on units
    c1, c2 = chars
    for n in range(1, 30):
        if gcd(n, 9) != 1:
            continue
        assert (evaluate(c1, n) * evaluate(c2, n)).is_one


def test_cubic_enumeration_matches_brute_force_count():
    # characters of 3-smooth modulus up to 2^6 * 3^3 = 1728: the number of
    # cubic ones is [U : U^3] where U = (Z/1728)*
    m = 1728
    units = [x for x in range(m) if gcd(x, m) == 1]
    cubes = {x * x % m * x % m for x in units}
    assert len(cubes) == 192
    n_nontrivial = len(units) // len(cubes) - 1
    assert n_nontrivial == len(enumerate_cubic(6)) == 2


def test_cubic_enumeration_small_levels():
    assert enumerate_cubic(1) == []
    assert enumerate_cubic(2) == []
    assert len(enumerate_cubic(3)) == 2  # conductor 9 is unramified outside 3
    # a split prime contributes its own conductor-q pair
    chars = enumerate_cubic(7)
    assert len(chars) == 2 and all(c.modulus == 7 for c in chars)
    assert len(enumerate_cubic(21)) == 8  # (3^2 - 1) combinations of two local blocks


def test_cubic_dlog_evaluation():
    # the character sending 2 to omega is trivial on 17 = 2^3 mod 9
    chars = enumerate_cubic(6)
    chi = next(c for c in chars if evaluate(c, 2) == CharValue.omega(1))
    assert evaluate(chi, 17).is_one
    assert evaluate(chi, 4) == CharValue.omega(2)
    assert evaluate(chi, 1).is_one
    assert evaluate(chi, 3).is_zero and evaluate(chi, 0).is_zero
    # values land in {0, 1, omega, omega^2}: exponents None or even
    for n in range(40):
        v = evaluate(chi, n)
        assert v.exponent is None or v.exponent % 2 == 0


def test_complete_multiplicativity():
    rng = random.Random(11)
    chars = enumerate_quadratic(6) + enumerate_cubic(6)
    for chi in chars:
        for _ in range(200):
            a = rng.randint(0, 3000)
            b = rng.randint(0, 3000)
            assert evaluate(chi, a * b) == evaluate(chi, a) * evaluate(chi, b)


def test_periodicity_and_unit_support():
    for chi in enumerate_quadratic(6) + enumerate_cubic(6):
        m = chi.modulus
        for n in range(m):
            assert evaluate(chi, n) == evaluate(chi, n + m) == evaluate(chi, n + 5 * m)
            assert evaluate(chi, n).is_zero == (gcd(n, m) != 1)


def test_every_character_is_nontrivial_on_dataset_primes():
    ds = scholten_dataset()
    ps = [rec.p for rec in ds.records]
    for chi in enumerate_quadratic(ds.N):
        assert any(evaluate(chi, p).is_minus_one for p in ps), chi.label
    for chi in enumerate_cubic(ds.N):
        hits = [p for p in ps if not evaluate(chi, p).is_one and not evaluate(chi, p).is_zero]
        assert hits, chi.label


def test_character_constructor_guards():
    with pytest.raises(ValueError):
        DirichletCharacter(order=2)
    with pytest.raises(ValueError):
        DirichletCharacter(order=3)
    with pytest.raises(ValueError):
        DirichletCharacter(order=4, discriminant=5)
    with pytest.raises(ValueError):
        DirichletCharacter(order=2, discriminant=-3, components=(CubicLocal(9, 2, 1),))
    c = DirichletCharacter(order=3, components=(CubicLocal(9, 2, 1),))
    assert c.modulus == 9 and "omega" in c.label
    q = DirichletCharacter(order=2, discriminant=-3)
    assert "kronecker" in q.label and str(q) == q.label
