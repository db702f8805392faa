"""Seven-step sieve bounding the primes with non-maximal image.

Each step handles one degeneration scenario.  Phase A enumerates
candidates: per record a divisibility bound B_r is computed (always a
multiple of the record prime, so ell = p_r never slips through), the
bounds are intersected by gcd across records, and the gcd is factored.
Phase B confirms every candidate against each record's flag predicate
directly.  The final set is the union over steps minus the exclusion
ledger; anything inconclusive (a character with no qualifying record,
an unfactored residual cofactor) is surfaced in the report, never
dropped.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

from .conditions import a_square_is_rational, check_all, step3_expression, step4_expression
from .dirichlet import enumerate_cubic, enumerate_quadratic, evaluate
from .eisenstein import EisensteinInt, PrimeType, classify_prime, conj, divides_above
from .frobdata import Dataset, FrobeniusRecord, charpoly, exterior_square
from .polyarith import resultant_with_binomial
from .primes import bounded_factorize, euler_phi, factorize, primes_up_to

logger = logging.getLogger(__name__)

STEP_NAMES = tuple(f"step-{k}" for k in range(1, 8))

_EXCLUSION_MODES = ("none", "D1D2")


@dataclass(frozen=True)
class SieveConfig:
    conductor: int = 1728  # 27 * 64, the fake uniform conductor
    cutoff: int = 11
    exclusion: str = "D1D2"
    trial_bound: int = 10**6
    rho_steps: int = 200_000
    residual_bits: int = 512
    step4_both_variants: bool = False

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError("conductor must be >= 1")
        if self.cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        if self.exclusion not in _EXCLUSION_MODES:
            raise ValueError(f"exclusion mode must be one of {_EXCLUSION_MODES}")

    def to_json_dict(self) -> dict:
        return {
            "conductor": self.conductor,
            "cutoff": self.cutoff,
            "exclusion": self.exclusion,
            "trial_bound": self.trial_bound,
            "rho_steps": self.rho_steps,
            "residual_bits": self.residual_bits,
            "step4_both_variants": self.step4_both_variants,
        }


def mult_order(p: int, c: int) -> int:
    """Multiplicative order of p mod c (order 1 when c = 1)."""
    if c < 1:
        raise ValueError("modulus must be >= 1")
    if c == 1:
        return 1
    if math.gcd(p, c) != 1:
        raise ValueError(f"{p} is not a unit mod {c}")
    order = euler_phi(c)
    for q in factorize(order):
        while order % q == 0 and pow(p, order // q, c) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class CandidateHit:
    prime: int
    contributing_records: tuple[int, ...]
    reason: str
    character: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "contributing_records": list(self.contributing_records),
            "character": self.character,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class StepOutcome:
    step: str
    hits: tuple[CandidateHit, ...]
    complete: bool
    inconclusive: tuple[str, ...] = ()
    unresolved: tuple[int, ...] = ()

    @property
    def candidate_primes(self) -> frozenset:
        return frozenset(h.prime for h in self.hits)

    def to_json_dict(self) -> dict:
        return {
            "step": self.step,
            "candidates": [h.to_json_dict() for h in sorted(
                self.hits, key=lambda h: (h.prime, h.character or ""))],
            "complete": self.complete,
            "inconclusive": list(self.inconclusive),
            "unresolved": [str(u) for u in self.unresolved],
        }


class _Constraint:
    """One record's contribution to a step: a bound and a flag predicate."""

    __slots__ = ("record_prime", "bound", "flag")

    def __init__(self, record_prime: int, bound: int, flag):
        self.record_prime = record_prime
        self.bound = bound
        self.flag = flag


def _enumerate_and_confirm(constraints, cfg: SieveConfig):
    """Phase A gcd-and-factor, then Phase B per-candidate confirmation.

    Returns (confirmed primes, unresolved cofactors, complete flag).
    """
    g = 0
    for con in constraints:
        g = math.gcd(g, con.bound)
    if g == 0:
        # every bound vanished: no finite enumeration from these records
        return set(), [], False
    primes, unresolved = bounded_factorize(
        g, cfg.trial_bound, cfg.rho_steps, cfg.residual_bits)
    confirmed = {
        ell for ell in primes
        if all(con.record_prime == ell or con.flag(ell) for con in constraints)
    }
    return confirmed, unresolved, not unresolved


def _norm_to_int(r) -> int:
    # resultants over the Eisenstein domain may collapse to plain ints
    # when every entry is rational; norm(n) = n^2 then
    return r.norm() if isinstance(r, EisensteinInt) else r * r


def step1_reducible(ds: Dataset, cfg: SieveConfig) -> StepOutcome:
    """Quartic binomial resultants at d = ord(p mod c), i in 0..3."""
    constraints = []
    for rec in ds.records:
        d = mult_order(rec.p, cfg.conductor)
        f = charpoly(rec)
        norms = [
            _norm_to_int(resultant_with_binomial(f, d, rec.p ** (i * d)))
            for i in range(4)
        ]
        constraints.append(_Constraint(
            rec.p,
            rec.p * math.prod(norms),
            lambda ell, norms=norms: any(n % ell == 0 for n in norms),
        ))
    if not constraints:
        return StepOutcome("step-1", (), False, ("no records",))
    confirmed, unresolved, complete = _enumerate_and_confirm(constraints, cfg)
    recs = tuple(rec.p for rec in ds.records)
    hits = tuple(
        CandidateHit(ell, recs, "divides every record's quartic binomial resultant bound")
        for ell in sorted(confirmed)
    )
    return StepOutcome("step-1", hits, complete, (), tuple(unresolved))


def step2_exterior(ds: Dataset, cfg: SieveConfig) -> StepOutcome:
    """Exterior-square sextic binomial resultants, i in 1..5."""
    constraints = []
    for rec in ds.records:
        d = mult_order(rec.p, cfg.conductor)
        q = exterior_square(rec)
        values = [
            abs(resultant_with_binomial(q, d, rec.p ** (i * d)))
            for i in range(1, 6)
        ]
        constraints.append(_Constraint(
            rec.p,
            rec.p * math.prod(values),
            lambda ell, values=values: any(v % ell == 0 for v in values),
        ))
    if not constraints:
        return StepOutcome("step-2", (), False, ("no records",))
    confirmed, unresolved, complete = _enumerate_and_confirm(constraints, cfg)
    recs = tuple(rec.p for rec in ds.records)
    hits = tuple(
        CandidateHit(ell, recs, "divides every record's sextic binomial resultant bound")
        for ell in sorted(confirmed)
    )
    return StepOutcome("step-2", hits, complete, (), tuple(unresolved))


def _per_character_step(step, ds, cfg, characters, qualifies, constraint, reason):
    hits = []
    inconclusive = []
    unresolved_all = []
    complete = True
    for chi in characters:
        qualifying = [rec for rec in ds.records if qualifies(chi, rec)]
        if not qualifying:
            inconclusive.append(chi.label)
            complete = False
            continue
        constraints = [constraint(rec) for rec in qualifying]
        confirmed, unresolved, ok = _enumerate_and_confirm(constraints, cfg)
        recs = tuple(rec.p for rec in qualifying)
        hits.extend(
            CandidateHit(ell, recs, reason, chi.label) for ell in sorted(confirmed))
        unresolved_all.extend(unresolved)
        complete = complete and ok
    if not characters:
        # nothing to check at this level: vacuously complete
        return StepOutcome(step, (), True, ("no characters in scope",))
    return StepOutcome(
        step, tuple(hits), complete, tuple(inconclusive),
        tuple(sorted(set(unresolved_all))))


def step3_monomial_odd(ds: Dataset, cfg: SieveConfig, characters=None) -> StepOutcome:
    """Per quadratic psi with psi(p) = -1: p^3(a^2+conj(a)^2) - N(a) b."""
    if characters is None:
        characters = enumerate_quadratic(ds.N)
    return _per_character_step(
        "step-3", ds, cfg, characters,
        lambda chi, rec: evaluate(chi, rec.p).is_minus_one and step3_expression(rec) != 0,
        lambda rec: _Constraint(
            rec.p,
            rec.p * abs(step3_expression(rec)),
            lambda ell, e=step3_expression(rec): e % ell == 0,
        ),
        "divides p^3(a^2+conj(a)^2) - N(a) b for every qualifying record",
    )


def _step4_literal_expression(rec: FrobeniusRecord) -> EisensteinInt:
    # the printed formula without the p^3 weight; kept behind a config
    # switch for cross-checking
    return rec.a * rec.a * rec.b + (rec.p**6 - rec.a.norm())


def step4_monomial_cubic(ds: Dataset, cfg: SieveConfig, characters=None) -> StepOutcome:
    """Per cubic phi with phi(p) != 1: a^2 b + p^6 - p^3 N(a), flagged
    through primes above ell."""
    if characters is None:
        characters = enumerate_cubic(ds.N)

    def qualifies(chi, rec):
        v = evaluate(chi, rec.p)
        return not v.is_one and not v.is_zero and bool(step4_expression(rec))

    outcome = _per_character_step(
        "step-4", ds, cfg, characters, qualifies,
        lambda rec: _Constraint(
            rec.p,
            rec.p * step4_expression(rec).norm(),
            lambda ell, e=step4_expression(rec): divides_above(ell, e),
        ),
        "divides N(a^2 b + p^6 - p^3 N(a)) for every qualifying record",
    )
    if not cfg.step4_both_variants:
        return outcome

    def qualifies_literal(chi, rec):
        v = evaluate(chi, rec.p)
        return not v.is_one and not v.is_zero and bool(_step4_literal_expression(rec))

    literal = _per_character_step(
        "step-4", ds, cfg, characters, qualifies_literal,
        lambda rec: _Constraint(
            rec.p,
            rec.p * _step4_literal_expression(rec).norm(),
            lambda ell, e=_step4_literal_expression(rec): divides_above(ell, e),
        ),
        "divides N(a^2 b + p^6 - N(a)) for every qualifying record [unweighted variant]",
    )
    return StepOutcome(
        "step-4",
        outcome.hits + literal.hits,
        outcome.complete and literal.complete,
        outcome.inconclusive + tuple(
            x for x in literal.inconclusive if x not in outcome.inconclusive),
        tuple(sorted(set(outcome.unresolved + literal.unresolved))),
    )


def step5_index2(ds: Dataset, cfg: SieveConfig, characters=None) -> StepOutcome:
    """Per quadratic mu with mu(p) = -1: the trace a itself."""
    if characters is None:
        characters = enumerate_quadratic(ds.N)
    return _per_character_step(
        "step-5", ds, cfg, characters,
        lambda chi, rec: evaluate(chi, rec.p).is_minus_one and rec.a != 0,
        lambda rec: _Constraint(
            rec.p,
            rec.p * rec.a.norm(),
            lambda ell, a=rec.a: divides_above(ell, a),
        ),
        "divides N(a) for every qualifying record",
    )


def _a_square_difference(rec: FrobeniusRecord) -> EisensteinInt:
    sq = rec.a * rec.a
    return sq - conj(sq)


def step6_selfdual(ds: Dataset, cfg: SieveConfig) -> StepOutcome:
    """Records with a^2 irrational: a^2 - conj(a)^2 through primes above ell."""
    qualifying = [rec for rec in ds.records if not a_square_is_rational(rec.a)]
    if not qualifying:
        return StepOutcome("step-6", (), False, ("no record with irrational a^2",))
    constraints = [
        _Constraint(
            rec.p,
            rec.p * _a_square_difference(rec).norm(),
            lambda ell, z=_a_square_difference(rec): divides_above(ell, z),
        )
        for rec in qualifying
    ]
    confirmed, unresolved, complete = _enumerate_and_confirm(constraints, cfg)
    recs = tuple(rec.p for rec in qualifying)
    hits = tuple(
        CandidateHit(ell, recs, "divides N(a^2 - conj(a)^2) for every qualifying record")
        for ell in sorted(confirmed)
    )
    return StepOutcome("step-6", hits, complete, (), tuple(unresolved))


def step7_scalar_extension(ds: Dataset, cfg: SieveConfig) -> StepOutcome:
    """Inert ell only: ell | b, or a^2 congruent to a rational mod every
    prime above ell (componentwise test on a^2 - conj(a)^2)."""
    qualifying = [rec for rec in ds.records if not a_square_is_rational(rec.a)]
    if not qualifying:
        return StepOutcome("step-7", (), False, ("no record with irrational a^2",))
    constraints = []
    for rec in qualifying:
        z = _a_square_difference(rec)
        cg = math.gcd(abs(z.x), abs(z.y))
        constraints.append(_Constraint(
            rec.p,
            rec.p * (abs(rec.b) if rec.b else 1) * cg,
            lambda ell, b=rec.b, z=z: (b != 0 and b % ell == 0)
            or (z.x % ell == 0 and z.y % ell == 0),
        ))
    confirmed, unresolved, complete = _enumerate_and_confirm(constraints, cfg)
    inert_only = {ell for ell in confirmed if ell % 3 == 2}
    recs = tuple(rec.p for rec in qualifying)
    hits = tuple(
        CandidateHit(ell, recs,
                     "inert prime dividing b or both components of a^2 - conj(a)^2"
                     " for every qualifying record")
        for ell in sorted(inert_only)
    )
    return StepOutcome("step-7", hits, complete, (), tuple(unresolved))


class ImageLabel(str, Enum):
    PSL4 = "PSL4"
    DET_SQUARE = "DetSquareSubgroup"
    PSU4 = "PSU4"
    EXCLUDED = "Excluded"
    SMALL = "Small"
    BAD_REDUCTION = "BadReduction"
    POSSIBLY_EXCEPTIONAL = "PossiblyExceptional"


def is_excluded(ell: int) -> tuple[bool, str]:
    """D1/D2 membership with the reason spelled out."""
    kind = classify_prime(ell)
    if kind is PrimeType.RAMIFIED:
        return True, "ramified at 3"
    if kind is PrimeType.SPLIT:
        if ell % 27 == 1:
            return True, f"D1: {ell} = 1 mod 27"
        if ell % 32 == 1:
            return True, f"D1: {ell} = 1 mod 32"
        return False, ""
    if ell % 27 == 26:
        return True, f"D2: {ell} = -1 mod 27"
    if ell % 16 in (1, 15):
        return True, f"D2: {ell} = +-1 mod 16"
    return False, ""


def exclusion_densities(limit: int) -> dict[str, float]:
    """Fraction of split / inert primes below limit that D1/D2 excludes."""
    split = inert = split_exc = inert_exc = 0
    for ell in primes_up_to(limit - 1):
        kind = classify_prime(ell)
        if kind is PrimeType.RAMIFIED:
            continue
        hit = is_excluded(ell)[0]
        if kind is PrimeType.SPLIT:
            split += 1
            split_exc += hit
        else:
            inert += 1
            inert_exc += hit
    return {"split": split_exc / split, "inert": inert_exc / inert}


@dataclass(frozen=True)
class SieveReport:
    N: int
    config: SieveConfig
    steps: tuple[StepOutcome, ...]
    excluded: tuple[tuple[int, str], ...]
    final: tuple[int, ...]
    labels: dict = field(default_factory=dict)
    conditions_passed: bool = True

    @property
    def union_candidates(self) -> frozenset:
        return frozenset().union(*(s.candidate_primes for s in self.steps))

    @property
    def complete(self) -> bool:
        return all(s.complete for s in self.steps)

    @property
    def inconclusive(self) -> tuple[str, ...]:
        out = []
        for s in self.steps:
            for label in s.inconclusive:
                out.append(f"{s.step}: {label}")
            for u in s.unresolved:
                out.append(f"{s.step}: unresolved residual {u}")
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {
            "config": {"N": self.N, **self.config.to_json_dict()},
            "conditions_passed": self.conditions_passed,
            "per_step": [s.to_json_dict() for s in self.steps],
            "inconclusive": list(self.inconclusive),
            "excluded": [{"prime": p, "reason": r} for p, r in self.excluded],
            "final": list(self.final),
            "labels": {str(k): v for k, v in sorted(self.labels.items())},
        }


def expected_image(ell: int, report: SieveReport) -> ImageLabel:
    """Image type of the mod-ell projective representation."""
    if report.N % ell == 0:
        return ImageLabel.BAD_REDUCTION
    if ell <= report.config.cutoff:
        return ImageLabel.SMALL
    if classify_prime(ell) is PrimeType.RAMIFIED:
        # residue degree does not fit the split/inert dichotomy
        return ImageLabel.EXCLUDED
    if report.config.exclusion == "D1D2" and is_excluded(ell)[0]:
        return ImageLabel.EXCLUDED
    if ell in report.final:
        return ImageLabel.POSSIBLY_EXCEPTIONAL
    if classify_prime(ell) is PrimeType.SPLIT:
        return ImageLabel.PSL4 if ell % 4 == 3 else ImageLabel.DET_SQUARE
    return ImageLabel.PSU4


def run_sieve(ds: Dataset, cfg: SieveConfig | None = None, label_primes=()) -> SieveReport:
    """Run all seven steps and assemble the report.

    Deterministic given (ds, cfg).  A failing precondition (check_all)
    only warns: the sieve output is still well defined, just not backed
    by the image-theoretic interpretation.
    """
    if cfg is None:
        cfg = SieveConfig()
    conds = check_all(ds)
    if not conds.passed:
        for res in conds.results:
            if not res.passed:
                logger.warning("%s failed: %s", res.condition, res.detail)
    quadratic = enumerate_quadratic(ds.N)
    cubic = enumerate_cubic(ds.N)
    steps = (
        step1_reducible(ds, cfg),
        step2_exterior(ds, cfg),
        step3_monomial_odd(ds, cfg, quadratic),
        step4_monomial_cubic(ds, cfg, cubic),
        step5_index2(ds, cfg, quadratic),
        step6_selfdual(ds, cfg),
        step7_scalar_extension(ds, cfg),
    )
    union = sorted(frozenset().union(*(s.candidate_primes for s in steps)))
    excluded = []
    final = []
    for ell in union:
        if ds.N % ell == 0:
            excluded.append((ell, f"divides N = {ds.N}"))
        elif ell <= cfg.cutoff:
            excluded.append((ell, f"below cutoff {cfg.cutoff}"))
        elif cfg.exclusion == "D1D2" and is_excluded(ell)[0]:
            excluded.append((ell, is_excluded(ell)[1]))
        else:
            final.append(ell)
    report = SieveReport(
        N=ds.N,
        config=cfg,
        steps=steps,
        excluded=tuple(excluded),
        final=tuple(final),
        conditions_passed=conds.passed,
    )
    if label_primes:
        labels = {ell: expected_image(ell, report).value for ell in label_primes}
        report = SieveReport(
            N=report.N, config=report.config, steps=report.steps,
            excluded=report.excluded, final=report.final, labels=labels,
            conditions_passed=report.conditions_passed,
        )
    return report
