"""Exhaustive small-prime confirmation scan.

run_sieve finds candidates by factoring gcd bounds and then confirms
them; this module skips the bound arithmetic entirely and re-tests the
per-step divisibility predicates directly for every prime ell <= lmax,
using a kernel backend for the two resultant steps.  On [2, lmax] the
scan must agree with the candidate sets of the gcd route, which checks
the bound bookkeeping and the kernels against each other.
"""

from __future__ import annotations

import numpy as np

from .backend import get_kernels
from .conditions import a_square_is_rational, step3_expression, step4_expression
from .dirichlet import enumerate_cubic, enumerate_quadratic, evaluate
from .frobdata import Dataset, charpoly, exterior_square
from .primes import primes_up_to
from .sieve import SieveConfig, STEP_NAMES, _a_square_difference, mult_order

_ELL_LIMIT = 2**30


def _record_arrays(ds: Dataset, cfg: SieveConfig, ells: np.ndarray, kernels):
    """Per-record kernel sweeps for the two resultant steps.

    Returns two bool arrays of shape (records, primes): entry [r, t]
    says record r accepts ells[t] (divisibility hit or ell = p_r).
    """
    n = ells.shape[0]
    inert = (ells % 3 == 2).astype(np.uint8)
    ok1 = np.zeros((len(ds.records), n), bool)
    ok2 = np.zeros((len(ds.records), n), bool)
    ell_list = [int(m) for m in ells]
    for r, rec in enumerate(ds.records):
        d = mult_order(rec.p, cfg.conductor)
        escape = ells == rec.p

        f = charpoly(rec).coeffs
        quartic = np.empty((n, 5, 2), np.int64)
        for idx, c in enumerate(f):
            quartic[:, idx, 0] = c.x  # |p^6| < 2^30: raw int64 is safe
            quartic[:, idx, 1] = c.y
        cmods4 = np.empty((n, 4), np.int64)
        for i in range(4):
            pid = rec.p ** (i * d)
            cmods4[:, i] = [pid % m for m in ell_list]
        hits4 = kernels.eis_quartic_binomial_hits(ells, quartic, d, cmods4, inert)
        ok1[r] = hits4.any(axis=1) | escape

        q = exterior_square(rec).coeffs  # ints; p^18 overflows int64
        sextic = np.empty((n, 7), np.int64)
        for idx, c in enumerate(q):
            sextic[:, idx] = [c % m for m in ell_list]
        cmods6 = np.empty((n, 5), np.int64)
        for i in range(1, 6):
            pid = rec.p ** (i * d)
            cmods6[:, i - 1] = [pid % m for m in ell_list]
        hits6 = kernels.sextic_binomial_hits(ells, sextic, d, cmods6)
        ok2[r] = hits6.any(axis=1) | escape
    return ok1, ok2


def _per_character_scan(ds, ells, characters, qualifies, accepts):
    """Primes accepted, for some character, by all its qualifying records."""
    out = np.zeros(ells.shape[0], bool)
    for chi in characters:
        qualifying = [rec for rec in ds.records if qualifies(chi, rec)]
        if not qualifying:
            continue  # inconclusive in the gcd route; contributes nothing
        ok = np.ones(ells.shape[0], bool)
        for rec in qualifying:
            vec = np.fromiter(
                (accepts(rec, int(m)) for m in ells), bool, count=ells.shape[0])
            ok &= vec | (ells == rec.p)
        out |= ok
    return out


def phase_b_scan(ds: Dataset, cfg: SieveConfig | None = None,
                 lmax: int = 10_000, backend: str | None = None) -> dict:
    """Scan all primes ell <= lmax against every step's predicate.

    Returns {"backend", "lmax", "per_step": {step name: sorted primes}}.
    """
    if cfg is None:
        cfg = SieveConfig()
    if not 2 <= lmax < _ELL_LIMIT:
        raise ValueError(f"lmax must be in [2, {_ELL_LIMIT})")
    kernels, name = get_kernels(backend)
    ells = np.array(primes_up_to(lmax), np.int64)
    ok1, ok2 = _record_arrays(ds, cfg, ells, kernels)

    quadratic = enumerate_quadratic(ds.N)
    cubic = enumerate_cubic(ds.N)

    s3 = _per_character_scan(
        ds, ells, quadratic,
        lambda chi, rec: evaluate(chi, rec.p).is_minus_one and step3_expression(rec) != 0,
        lambda rec, ell: step3_expression(rec) % ell == 0,
    )
    s4 = _per_character_scan(
        ds, ells, cubic,
        lambda chi, rec: (lambda v: not v.is_one and not v.is_zero)(
            evaluate(chi, rec.p)) and bool(step4_expression(rec)),
        lambda rec, ell: step4_expression(rec).norm() % ell == 0,
    )
    s5 = _per_character_scan(
        ds, ells, quadratic,
        lambda chi, rec: evaluate(chi, rec.p).is_minus_one and rec.a != 0,
        lambda rec, ell: rec.a.norm() % ell == 0,
    )

    selfdual = [rec for rec in ds.records if not a_square_is_rational(rec.a)]
    s6 = np.ones(ells.shape[0], bool) if selfdual else np.zeros(ells.shape[0], bool)
    s7 = s6.copy()
    for rec in selfdual:
        z = _a_square_difference(rec)
        nz = z.norm()
        escape = ells == rec.p
        s6 &= np.fromiter(
            (nz % int(m) == 0 for m in ells), bool, count=ells.shape[0]) | escape
        s7 &= np.fromiter(
            ((rec.b != 0 and rec.b % int(m) == 0)
             or (z.x % int(m) == 0 and z.y % int(m) == 0) for m in ells),
            bool, count=ells.shape[0]) | escape
    s7 &= ells % 3 == 2

    vectors = (ok1.all(axis=0), ok2.all(axis=0), s3, s4, s5, s6, s7)
    per_step = {
        step: [int(m) for m in ells[vec]]
        for step, vec in zip(STEP_NAMES, vectors)
    }
    return {"backend": name, "lmax": lmax, "per_step": per_step}
