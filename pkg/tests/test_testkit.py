import random

import pytest

from frobsieve.eisenstein import EisensteinInt
from frobsieve.frobdata import FrobeniusRecord, scholten_dataset
from frobsieve.polyarith import UniPoly, complex_roots
from frobsieve.testkit import (
    DEFAULT_SEED,
    FiniteFieldMatrix,
    OracleCounterexample,
    charpoly_ts,
    exterior_square_numeric_check,
    leibniz_det4,
    opposite_identity_residual,
    opposite_root_identity_check,
    purity_numeric_check,
    quartic_from_roots,
    random_monomial_matrix,
    random_symplectic_similitude,
    reciprocal_pairs_check,
    reciprocal_residuals,
    sum_zero_identity_check,
    sum_zero_identity_residual,
    _multisets_close,
)


def test_leibniz_det4_examples():
    assert leibniz_det4([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]) == 1
    assert leibniz_det4([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]) == -1
    assert leibniz_det4([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 7]]) == 210
    # permanent-vs-determinant separation on a dense matrix
    rows = [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16]]
    assert leibniz_det4(rows) == 0  # rank 2


def test_charpoly_ts_against_expanded_roots():
    rng = random.Random(3)
    for _ in range(25):
        roots = [rng.randrange(-9, 10) for _ in range(4)]
        # companion-free ground truth: diagonal matrix with those roots
        rows = [[roots[i] if i == j else 0 for j in range(4)] for i in range(4)]
        assert charpoly_ts(rows) == quartic_from_roots(roots)


def test_charpoly_ts_is_conjugation_invariant():
    rng = random.Random(5)
    q = 13
    for _ in range(10):
        M = random_monomial_matrix(q, rng, "odd")
        # conjugate by a random invertible triangular matrix
        rows = [[0] * 4 for _ in range(4)]
        for i in range(4):
            rows[i][i] = rng.randrange(1, q)
            for j in range(i + 1, 4):
                rows[i][j] = rng.randrange(q)
        P = FiniteFieldMatrix(q, tuple(tuple(r) for r in rows))
        det = 1
        for i in range(4):
            det = det * P.entries[i][i] % q
        inv_rows = _invert_mod(P.entries, q)
        Pinv = FiniteFieldMatrix(q, inv_rows)
        conjugated = (Pinv @ M) @ P
        assert conjugated.charpoly_ts() == M.charpoly_ts()


def _invert_mod(rows, q):
    aug = [list(r) + [int(i == j) for j in range(4)] for i, r in enumerate(rows)]
    for col in range(4):
        pivot = next(r for r in range(col, 4) if aug[r][col] % q)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, q)
        aug[col] = [v * inv % q for v in aug[col]]
        for r in range(4):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(v - f * w) % q for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[4:]) for row in aug)


def test_opposite_identity_pinned_examples():
    t = quartic_from_roots((2, -2, 3, 5))
    assert t == (-8, 11, 32, -60)
    t1, t2, t3, t4 = t
    assert t3 * t3 + t4 * t1 * t1 == -2816
    assert t1 * t2 * t3 == -2816
    assert opposite_identity_residual(t) == 0

    t_bad = quartic_from_roots((1, 2, 3, 4))
    t1, t2, t3, t4 = t_bad
    assert t3 * t3 + t4 * t1 * t1 == 4900
    assert t1 * t2 * t3 == 17500
    assert opposite_identity_residual(t_bad) != 0


def test_opposite_identity_generic_failure_rate():
    rng = random.Random(17)
    failures = 0
    for _ in range(100):
        roots = [rng.randrange(1, 30) for _ in range(4)]  # all positive: no pair
        failures += opposite_identity_residual(quartic_from_roots(roots)) != 0
    assert failures > 0


def test_opposite_identity_four_cycle_over_f13():
    rng = random.Random(29)
    sigma = (1, 2, 3, 0)
    for _ in range(20):
        rows = [[0] * 4 for _ in range(4)]
        for j in range(4):
            rows[sigma[j]][j] = rng.randrange(1, 13)
        M = FiniteFieldMatrix(13, tuple(tuple(r) for r in rows))
        assert opposite_identity_residual(M.charpoly_ts()) % 13 == 0


def test_sum_zero_identity_pinned_examples():
    t = quartic_from_roots((1, 2, -3, 7))
    t1, t2, t3, t4 = t
    assert t1 * t1 * t2 + t4 == t3 * t1 == -385
    assert sum_zero_identity_residual(t) == 0

    t_bad = quartic_from_roots((1, 1, 1, 1))
    t1, t2, t3, t4 = t_bad
    assert t1 * t1 * t2 + t4 == 97
    assert t3 * t1 == 16
    assert sum_zero_identity_residual(t_bad) != 0


def test_sum_zero_three_cycle_over_f7():
    rng = random.Random(31)
    for _ in range(30):
        M = random_monomial_matrix(7, rng, "three-cycle")
        assert sum_zero_identity_residual(M.charpoly_ts()) % 7 == 0


def test_reciprocal_identity_matrix_and_diagonal():
    ts = FiniteFieldMatrix.identity(11).charpoly_ts()
    assert ts == ((-4) % 11, 6, (-4) % 11, 1)
    assert all(r % 11 == 0 for r in reciprocal_residuals(ts, 1))
    # diag(u, v, m/u, m/v) over F_11 with u=2, v=3, m=5
    u, v, m = 2, 3, 5
    rows = ((u, 0, 0, 0), (0, v, 0, 0),
            (0, 0, m * pow(u, -1, 11) % 11, 0), (0, 0, 0, m * pow(v, -1, 11) % 11))
    M = FiniteFieldMatrix(11, rows)
    assert all(r % 11 == 0 for r in reciprocal_residuals(M.charpoly_ts(), m))


def test_reciprocal_200_samples_over_f11():
    rng = random.Random(37)
    for _ in range(200):
        M, m = random_symplectic_similitude(11, rng)
        r3, r4 = reciprocal_residuals(M.charpoly_ts(), m)
        assert r3 % 11 == 0 and r4 % 11 == 0


def test_monomial_matrix_shape():
    rng = random.Random(41)
    M = random_monomial_matrix(13, rng, "odd")
    nonzero = [(i, j) for i in range(4) for j in range(4) if M.entries[i][j]]
    assert len(nonzero) == 4
    assert sorted(j for _, j in nonzero) == [0, 1, 2, 3]
    assert sorted(i for i, _ in nonzero) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        random_monomial_matrix(13, rng, "even")


def test_finite_field_matrix_guards():
    with pytest.raises(ValueError):
        FiniteFieldMatrix(4, tuple(tuple([0] * 4) for _ in range(4)))
    with pytest.raises(ValueError):
        FiniteFieldMatrix(103, tuple(tuple([0] * 4) for _ in range(4)))
    with pytest.raises(ValueError):
        FiniteFieldMatrix(7, ((1, 2), (3, 4)))
    M = FiniteFieldMatrix(7, tuple(tuple(range(j, j + 4)) for j in range(0, 28, 7)))
    assert all(0 <= e < 7 for row in M.entries for e in row)


def test_identity_checks_run_clean():
    assert opposite_root_identity_check(500) is True
    assert sum_zero_identity_check(500) is True
    assert reciprocal_pairs_check(500) is True


def test_identity_checks_are_seeded():
    assert opposite_root_identity_check(50, seed=DEFAULT_SEED) is True
    assert opposite_root_identity_check(50, seed=99991) is True
    with pytest.raises(ValueError):
        opposite_root_identity_check(0)
    with pytest.raises(ValueError):
        sum_zero_identity_check(-3)
    with pytest.raises(ValueError):
        reciprocal_pairs_check(0)


def test_oracle_counterexample_carries_witness():
    exc = OracleCounterexample("boom", {"roots": (1, 2, 3, 4)})
    assert exc.witness == {"roots": (1, 2, 3, 4)}
    assert "roots" in str(exc)


def test_exterior_square_numeric_on_dataset():
    ds = scholten_dataset()
    for rec in ds.records:
        assert exterior_square_numeric_check(rec)


def test_exterior_square_synthetic_products():
    # quartic with roots 1,2,3,4; sextic with roots = pairwise products
    quartic = UniPoly([24, -50, 35, -10, 1])
    products = [2, 3, 4, 6, 8, 12]
    cs = [1]
    for r in products:
        cs = [0] + cs
        for idx in range(len(cs) - 1):
            cs[idx] -= r * cs[idx + 1]
    sextic = UniPoly(cs)
    got = sorted(z.real for z in complex_roots(sextic))
    assert got == pytest.approx(products, rel=1e-9)
    assert _multisets_close(
        [a * b for k, a in enumerate([1, 2, 3, 4])
         for b in [1, 2, 3, 4][k + 1:]],
        complex_roots(sextic), 1e-6)
    assert _multisets_close(complex_roots(quartic), [1, 2, 3, 4], 1e-6)


def test_purity_numeric_on_dataset():
    ds = scholten_dataset()
    for rec in ds.records:
        assert purity_numeric_check(rec)


def test_purity_rejects_weil_violation_before_roots():
    rec = FrobeniusRecord(5, EisensteinInt(50, 0), 0)
    # norm(a) = 2500 > 16 * 125 = 2000: fails on the bound alone
    assert purity_numeric_check(rec) is False


def test_purity_on_explicit_pure_square():
    # x^4 + 2 p^3 x^2 + p^6 = (x^2 + p^3)^2: roots on the pure circle
    rec = FrobeniusRecord(7, EisensteinInt(0, 0), 2 * 7**3)
    assert purity_numeric_check(rec) is True


def test_multiset_close_rejects_mismatch():
    assert not _multisets_close([1.0, 2.0], [1.0], 1e-6)
    assert not _multisets_close([1.0, 2.0], [1.0, 2.1], 1e-6)
    assert _multisets_close([1.0 + 0j, 2.0], [2.0, 1.0 + 5e-7], 1e-6)
