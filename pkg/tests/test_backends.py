import random

import numpy as np
import pytest

from frobsieve import _kernels_numpy
from frobsieve.backend import get_kernels
from frobsieve.eisenstein import EisensteinInt, divides_above
from frobsieve.frobdata import charpoly, exterior_square, scholten_dataset
from frobsieve.polyarith import UniPoly, resultant_with_binomial
from frobsieve.primes import primes_up_to
from frobsieve.residual import phase_b_scan
from frobsieve.sieve import SieveConfig, mult_order, run_sieve


@pytest.fixture(scope="module")
def numba_kernels():
    mod, name = get_kernels("numba")
    assert name == "numba"
    return mod


def _quartic_arrays(f, p, d, ells):
    n = len(ells)
    ellv = np.array(ells, np.int64)
    coeffs = np.empty((n, 5, 2), np.int64)
    for idx, c in enumerate(f.coeffs):
        coeffs[:, idx, 0] = c.x
        coeffs[:, idx, 1] = c.y
    cmods = np.empty((n, 4), np.int64)
    for i in range(4):
        cmods[:, i] = [pow(p, i * d, m) for m in ells]
    inert = (ellv % 3 == 2).astype(np.uint8)
    return ellv, coeffs, cmods, inert


def _sextic_arrays(q, p, d, ells):
    n = len(ells)
    ellv = np.array(ells, np.int64)
    coeffs = np.empty((n, 7), np.int64)
    for idx, c in enumerate(q.coeffs):
        coeffs[:, idx] = [c % m for m in ells]
    cmods = np.empty((n, 5), np.int64)
    for i in range(1, 6):
        cmods[:, i - 1] = [pow(p, i * d, m) for m in ells]
    return ellv, coeffs, cmods


def test_quartic_kernel_matches_bigint_resultants(numba_kernels):
    # ground truth: exact resultant, then the prime-above divisibility test
    ds = scholten_dataset()
    ells = primes_up_to(200)
    for rec in ds.records[:3]:
        d = mult_order(rec.p, 1728)
        f = charpoly(rec)
        ellv, coeffs, cmods, inert = _quartic_arrays(f, rec.p, d, ells)
        for mod in (numba_kernels, _kernels_numpy):
            hits = mod.eis_quartic_binomial_hits(ellv, coeffs, d, cmods, inert)
            for t, ell in enumerate(ells):
                if ell == rec.p:
                    continue  # resultant arithmetic mod p is not used there
                for i in range(4):
                    r = resultant_with_binomial(f, d, rec.p ** (i * d))
                    expected = divides_above(ell, r) if isinstance(
                        r, EisensteinInt) else (r % ell == 0)
                    assert bool(hits[t, i]) == expected, (rec.p, ell, i)


def test_sextic_kernel_matches_bigint_resultants(numba_kernels):
    ds = scholten_dataset()
    ells = primes_up_to(200)
    for rec in ds.records[:3]:
        d = mult_order(rec.p, 1728)
        q = exterior_square(rec)
        ellv, coeffs, cmods = _sextic_arrays(q, rec.p, d, ells)
        for mod in (numba_kernels, _kernels_numpy):
            hits = mod.sextic_binomial_hits(ellv, coeffs, d, cmods)
            for t, ell in enumerate(ells):
                if ell == rec.p:
                    continue
                for i in range(1, 6):
                    r = resultant_with_binomial(q, d, rec.p ** (i * d))
                    assert bool(hits[t, i - 1]) == (r % ell == 0), (rec.p, ell, i)


def test_kernels_on_random_synthetic_quartics(numba_kernels):
    # small exponents keep the exact resultants cheap to recompute
    rng = random.Random(7)
    ells = [m for m in primes_up_to(120) if m > 3]
    for _ in range(6):
        cs = [EisensteinInt(rng.randrange(-9, 10), rng.randrange(-9, 10))
              for _ in range(4)]
        f = UniPoly(cs + [EisensteinInt(1, 0)])
        d = rng.choice([2, 3, 5, 8])
        cst = rng.randrange(1, 50)
        n = len(ells)
        ellv = np.array(ells, np.int64)
        coeffs = np.empty((n, 5, 2), np.int64)
        for idx, c in enumerate(f.coeffs):
            coeffs[:, idx, 0] = c.x
            coeffs[:, idx, 1] = c.y
        cmods = np.empty((n, 4), np.int64)
        for i in range(4):
            cmods[:, i] = [pow(cst, i, m) for m in ells]
        inert = (ellv % 3 == 2).astype(np.uint8)
        got_nb = numba_kernels.eis_quartic_binomial_hits(ellv, coeffs, d, cmods, inert)
        got_np = _kernels_numpy.eis_quartic_binomial_hits(ellv, coeffs, d, cmods, inert)
        assert np.array_equal(got_nb, got_np)
        for i in range(4):
            r = resultant_with_binomial(f, d, cst**i)
            for t, ell in enumerate(ells):
                expected = divides_above(ell, r) if isinstance(
                    r, EisensteinInt) else (r % ell == 0)
                assert bool(got_np[t, i]) == expected, (cs, d, cst, ell, i)


def test_kernels_on_random_synthetic_sextics(numba_kernels):
    rng = random.Random(11)
    ells = [m for m in primes_up_to(120) if m > 3]
    for _ in range(6):
        cs = [rng.randrange(-40, 41) for _ in range(6)] + [1]
        q = UniPoly(cs)
        d = rng.choice([2, 3, 4, 6])
        cst = rng.randrange(1, 50)
        n = len(ells)
        ellv = np.array(ells, np.int64)
        coeffs = np.empty((n, 7), np.int64)
        for idx, c in enumerate(q.coeffs):
            coeffs[:, idx] = [c % m for m in ells]
        cmods = np.empty((n, 5), np.int64)
        for i in range(1, 6):
            cmods[:, i - 1] = [pow(cst, i, m) for m in ells]
        got_nb = numba_kernels.sextic_binomial_hits(ellv, coeffs, d, cmods)
        got_np = _kernels_numpy.sextic_binomial_hits(ellv, coeffs, d, cmods)
        assert np.array_equal(got_nb, got_np)
        for i in range(1, 6):
            r = resultant_with_binomial(q, d, cst**i)
            for t, ell in enumerate(ells):
                assert bool(got_np[t, i - 1]) == (r % ell == 0), (cs, d, cst, ell, i)


def test_backend_selection(monkeypatch):
    mod, name = get_kernels("numpy")
    assert name == "numpy" and mod is _kernels_numpy
    monkeypatch.setenv("FROBSIEVE_BACKEND", "numpy")
    mod, name = get_kernels()
    assert name == "numpy"
    monkeypatch.setenv("FROBSIEVE_BACKEND", "")
    mod, name = get_kernels()
    assert name in ("numba", "numpy")
    with pytest.raises(ValueError):
        get_kernels("cython")
    monkeypatch.setenv("FROBSIEVE_BACKEND", "cuda")
    with pytest.raises(ValueError):
        get_kernels()


def test_phase_b_scan_agrees_across_backends():
    ds = scholten_dataset()
    got_np = phase_b_scan(ds, lmax=500, backend="numpy")
    got_nb = phase_b_scan(ds, lmax=500, backend="numba")
    assert got_np["per_step"] == got_nb["per_step"]
    assert got_np["backend"] == "numpy" and got_nb["backend"] == "numba"


def test_phase_b_scan_matches_gcd_route():
    # the scan and the bound-factoring route must agree prime by prime
    ds = scholten_dataset()
    cfg = SieveConfig()
    report = run_sieve(ds, cfg)
    scan = phase_b_scan(ds, cfg, lmax=2000, backend="numpy")
    for outcome in report.steps:
        assert outcome.complete
        expected = sorted(p for p in outcome.candidate_primes if p <= 2000)
        assert scan["per_step"][outcome.step] == expected, outcome.step


def test_phase_b_scan_rejects_bad_lmax():
    ds = scholten_dataset()
    with pytest.raises(ValueError):
        phase_b_scan(ds, lmax=1)
    with pytest.raises(ValueError):
        phase_b_scan(ds, lmax=2**31)
