"""Seven nondegeneracy conditions on a Frobenius dataset.

Each condition is existential over records: one good prime is enough,
and every PASS is backed by reproducible witnesses (all qualifying
record/character pairs are reported, not just the first).  Conditions
3-5 quantify over Dirichlet characters and pass only when every
character in scope has a witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dirichlet import DirichletCharacter, enumerate_cubic, enumerate_quadratic, evaluate
from .eisenstein import EisensteinInt
from .frobdata import Dataset, FrobeniusRecord, charpoly, exterior_square
from .polyarith import resultant_with_binomial
from .primes import euler_phi


def degrees_with_phi_at_most(bound: int) -> tuple[int, ...]:
    if bound < 1:
        raise ValueError("bound must be positive")
    # phi(d) >= sqrt(d/2), so the scan range 2*bound^2 is exhaustive
    return tuple(d for d in range(1, 2 * bound * bound + 1) if euler_phi(d) <= bound)


# degrees a Frobenius eigenvalue ratio of multiplicative order d could hide in
D8 = degrees_with_phi_at_most(8)
D12 = degrees_with_phi_at_most(12)


def trace_square_sum(a: EisensteinInt) -> int:
    """a^2 + conj(a)^2, always an ordinary integer."""
    return 2 * a.x * a.x - 2 * a.x * a.y - a.y * a.y


def step3_expression(rec: FrobeniusRecord) -> int:
    """p^3 (a^2 + conj(a)^2) - N(a) b."""
    return rec.p**3 * trace_square_sum(rec.a) - rec.a.norm() * rec.b


def step4_expression(rec: FrobeniusRecord) -> EisensteinInt:
    """a^2 b + p^6 - p^3 N(a)."""
    return rec.a * rec.a * rec.b + (rec.p**6 - rec.p**3 * rec.a.norm())


def a_square_is_rational(a: EisensteinInt) -> bool:
    return (a * a).y == 0


@dataclass(frozen=True)
class ConditionWitness:
    condition: str
    primes: tuple[int, ...]
    expression: str
    character: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "condition": self.condition,
            "primes": list(self.primes),
            "character": self.character,
            "expression": self.expression,
        }


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    passed: bool
    witnesses: tuple[ConditionWitness, ...]
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "condition": self.condition,
            "passed": self.passed,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ConditionsReport:
    results: tuple[ConditionResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, condition: str) -> ConditionResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "results": [r.to_json_dict() for r in self.results],
        }


def _binomial_resultants_all_nonzero(f, p: int, exponents, degrees) -> bool:
    for i in exponents:
        for d in degrees:
            if not resultant_with_binomial(f, d, p ** (i * d)):
                return False
    return True


def check_condition_1(ds: Dataset) -> ConditionResult:
    """Some record's quartic has no eigenvalue alpha with alpha^d = p^(i d),
    i in 0..3, over the degrees phi(d) <= 8."""
    witnesses = []
    for rec in ds.records:
        if _binomial_resultants_all_nonzero(charpoly(rec), rec.p, range(4), D8):
            witnesses.append(ConditionWitness(
                "condition-1", (rec.p,),
                f"Res(Pol_{rec.p}, x^d - {rec.p}^(i*d)) != 0 for all i in 0..3,"
                f" d in D8 ({4 * len(D8)} resultants)",
            ))
    return ConditionResult(
        "condition-1", bool(witnesses), tuple(witnesses),
        "" if witnesses else "every record has a vanishing binomial resultant",
    )


def check_condition_2(ds: Dataset) -> ConditionResult:
    """Same for the exterior-square sextic, i in 1..5, degrees phi(d) <= 12."""
    witnesses = []
    for rec in ds.records:
        if _binomial_resultants_all_nonzero(exterior_square(rec), rec.p, range(1, 6), D12):
            witnesses.append(ConditionWitness(
                "condition-2", (rec.p,),
                f"Res(Q_{rec.p}, x^d - {rec.p}^(i*d)) != 0 for all i in 1..5,"
                f" d in D12 ({5 * len(D12)} resultants)",
            ))
    return ConditionResult(
        "condition-2", bool(witnesses), tuple(witnesses),
        "" if witnesses else "every record has a vanishing binomial resultant",
    )


def _per_character(ds, characters, condition, qualifies, expression):
    witnesses = []
    missing = []
    for chi in characters:
        found = False
        for rec in ds.records:
            if qualifies(chi, rec):
                witnesses.append(ConditionWitness(
                    condition, (rec.p,), expression(rec), chi.label))
                found = True
        if not found:
            missing.append(chi.label)
    if not characters:
        return ConditionResult(condition, True, (), "no characters in scope at this level")
    return ConditionResult(
        condition, not missing, tuple(witnesses),
        "" if not missing else "no qualifying record for " + ", ".join(missing),
    )


def check_condition_3(ds: Dataset, characters=None) -> ConditionResult:
    """Each quadratic psi has a record with psi(p) = -1 and
    p^3(a^2 + conj(a)^2) - N(a) b != 0."""
    chars = enumerate_quadratic(ds.N) if characters is None else characters
    return _per_character(
        ds, chars, "condition-3",
        lambda chi, rec: evaluate(chi, rec.p).is_minus_one and step3_expression(rec) != 0,
        lambda rec: f"p^3 (a^2 + conj(a)^2) - N(a) b = {step3_expression(rec)}",
    )


def check_condition_4(ds: Dataset, characters=None) -> ConditionResult:
    """Each cubic phi has a record with phi(p) != 1 and
    a^2 b + p^6 - p^3 N(a) != 0."""
    chars = enumerate_cubic(ds.N) if characters is None else characters

    def qualifies(chi, rec):
        v = evaluate(chi, rec.p)
        return not v.is_one and not v.is_zero and bool(step4_expression(rec))

    return _per_character(
        ds, chars, "condition-4", qualifies,
        lambda rec: f"a^2 b + p^6 - p^3 N(a) = {step4_expression(rec)}",
    )


def check_condition_5(ds: Dataset, characters=None) -> ConditionResult:
    """Each quadratic mu has a record with mu(p) = -1 and a != 0."""
    chars = enumerate_quadratic(ds.N) if characters is None else characters
    return _per_character(
        ds, chars, "condition-5",
        lambda chi, rec: evaluate(chi, rec.p).is_minus_one and rec.a != 0,
        lambda rec: f"a = {rec.a} != 0",
    )


def check_condition_6(ds: Dataset) -> ConditionResult:
    """Some record has a^2 irrational (equivalently a != +-conj(a))."""
    witnesses = [
        ConditionWitness(
            "condition-6", (rec.p,),
            f"a^2 = {rec.a * rec.a} has nonzero zeta coefficient")
        for rec in ds.records if not a_square_is_rational(rec.a)
    ]
    return ConditionResult(
        "condition-6", bool(witnesses), tuple(witnesses),
        "" if witnesses else "a^2 is rational for every record",
    )


def check_condition_7(ds: Dataset) -> ConditionResult:
    """Some record has b != 0 and a^2 irrational."""
    witnesses = [
        ConditionWitness(
            "condition-7", (rec.p,),
            f"b = {rec.b} != 0 and a^2 = {rec.a * rec.a} is irrational")
        for rec in ds.records
        if rec.b != 0 and not a_square_is_rational(rec.a)
    ]
    return ConditionResult(
        "condition-7", bool(witnesses), tuple(witnesses),
        "" if witnesses else "no record with b != 0 and a^2 irrational",
    )


def check_all(ds: Dataset, quadratic=None, cubic=None) -> ConditionsReport:
    if quadratic is None:
        quadratic = enumerate_quadratic(ds.N)
    if cubic is None:
        cubic = enumerate_cubic(ds.N)
    return ConditionsReport((
        check_condition_1(ds),
        check_condition_2(ds),
        check_condition_3(ds, quadratic),
        check_condition_4(ds, cubic),
        check_condition_5(ds, quadratic),
        check_condition_6(ds),
        check_condition_7(ds),
    ))
