"""Frobenius characteristic-polynomial data.

A record is one good prime p with trace a in Z[zeta] and rational-integer
quadratic coefficient b; its characteristic polynomial is

    Pol_p(x) = x^4 - a x^3 + b x^2 - p^3 conj(a) x + p^6

and purity pins every complex root to |alpha| = p^(3/2), equivalently
norm(a) <= 16 p^3 for the trace.  The exterior-square polynomial Q_p is
the monic sextic whose roots are the pairwise products of Pol_p's roots.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .eisenstein import EisensteinInt, conj, norm
from .polyarith import Domain, UniPoly
from .primes import is_probable_prime


class DatasetError(ValueError):
    pass


class DatasetParseError(DatasetError):
    """Malformed document: not JSON, wrong field types, unreadable file."""


class DatasetInvariantError(DatasetError):
    """Well-formed document whose content violates a dataset invariant."""


@dataclass(frozen=True)
class FrobeniusRecord:
    p: int
    a: EisensteinInt
    b: int


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Dataset:
    N: int
    records: tuple[FrobeniusRecord, ...]
    twist: object = None  # free-form metadata, stored but never interpreted

    @property
    def traces_generate_field(self) -> bool:
        """True iff some trace lies outside Z, so the a_p generate Q(zeta)."""
        return any(rec.a.y != 0 for rec in self.records)

    def truncated(self, k: int) -> "Dataset":
        return Dataset(self.N, self.records[:k], self.twist)


def charpoly(rec: FrobeniusRecord) -> UniPoly:
    """x^4 - a x^3 + b x^2 - p^3 conj(a) x + p^6 over Z[zeta], ascending."""
    p3 = rec.p**3
    return UniPoly(
        [p3 * p3, -p3 * conj(rec.a), rec.b, -rec.a, 1],
        Domain.EISENSTEIN,
    )


def verify_record(rec: FrobeniusRecord) -> VerifyResult:
    """Purity bound plus the conjugation functional equation of Pol_p.

    The functional equation conj(c_k) * p^(3k) = p^6 * c_(4-k) holds for any
    record assembled from (p, a, b) with b rational; it is re-asserted on the
    assembled coefficients as a defense against malformed construction.
    """
    problems = []
    na = norm(rec.a)
    bound = 16 * rec.p**3
    if na > bound:
        problems.append(f"purity violated: norm(a) = {na} > 16*p^3 = {bound}")
    cs = charpoly(rec).coeffs
    p3 = rec.p**3
    for k in range(5):
        if conj(cs[k]) * p3**k != p3**2 * cs[4 - k]:
            problems.append(f"functional equation fails at coefficient {k}")
    return VerifyResult(not problems, tuple(problems))


def _exterior_from_elementary(e1, e2, e3, e4) -> list:
    """Coefficients (ascending) of the monic sextic with roots r_i r_j, i < j,
    where e1..e4 are the elementary symmetric functions of r_1..r_4."""
    c5 = -e2
    c4 = e1 * e3 - e4
    c3 = -(e1 * e1 * e4 - 2 * e2 * e4 + e3 * e3)
    c2 = e4 * (e1 * e3 - e4)
    c1 = -e2 * e4 * e4
    c0 = e4 * e4 * e4
    return [c0, c1, c2, c3, c4, c5, 1]


def exterior_square(rec: FrobeniusRecord) -> UniPoly:
    """Q_p(x), the degree-6 charpoly of the exterior square, over Z.

    With e1 = a, e2 = b, e3 = p^3 conj(a), e4 = p^6 every coefficient is a
    rational integer: e1*e3 = p^3 norm(a) and e1^2 e4 + e3^2 = p^6 (a^2 +
    conj(a)^2), both fixed by conjugation.
    """
    p3 = rec.p**3
    coeffs = _exterior_from_elementary(rec.a, rec.b, p3 * conj(rec.a), p3 * p3)
    out = []
    for c in coeffs:
        if isinstance(c, EisensteinInt):
            if c.y != 0:
                raise AssertionError(f"exterior-square coefficient {c} not rational")
            c = c.x
        out.append(c)
    return UniPoly(out, Domain.RATIONAL_INT)


def _require(cond: bool, where: str, message: str, parse: bool = False):
    if not cond:
        cls = DatasetParseError if parse else DatasetInvariantError
        raise cls(f"{where}: {message}")


def _as_int(value, where: str, field: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DatasetParseError(f"{where}: field '{field}' must be an integer, got {value!r}")
    return value


def load_dataset(source) -> Dataset:
    """Parse and validate a dataset document.

    `source` is a parsed dict, a file path, or a readable file object.  Every
    violation is reported with its record location.  An empty record list is
    accepted (the traces_generate_field flag turns false); everything else
    that breaks an invariant raises.
    """
    doc = _read_document(source)
    _require(isinstance(doc, dict), "document", "top level must be an object", parse=True)
    _require("N" in doc, "document", "missing field 'N'", parse=True)
    _require("records" in doc, "document", "missing field 'records'", parse=True)
    N = _as_int(doc["N"], "document", "N")
    _require(N >= 1, "document", f"N must be positive, got {N}")
    raw_records = doc["records"]
    _require(isinstance(raw_records, list), "document", "'records' must be an array", parse=True)

    records = []
    seen: set[int] = set()
    for i, raw in enumerate(raw_records):
        where = f"records[{i}]"
        _require(isinstance(raw, dict), where, "must be an object", parse=True)
        for key in ("p", "a", "b"):
            _require(key in raw, where, f"missing field '{key}'", parse=True)
        p = _as_int(raw["p"], where, "p")
        b = _as_int(raw["b"], where, "b")
        a_raw = raw["a"]
        _require(
            isinstance(a_raw, list) and len(a_raw) == 2,
            where,
            "field 'a' must be a pair [x, y]",
            parse=True,
        )
        a = EisensteinInt(_as_int(a_raw[0], where, "a[0]"), _as_int(a_raw[1], where, "a[1]"))
        _require(is_probable_prime(p), where, f"p = {p} is not prime")
        _require(math.gcd(p, N) == 1, where, f"p = {p} divides N = {N}")
        _require(p not in seen, where, f"duplicate prime p = {p}")
        seen.add(p)
        rec = FrobeniusRecord(p, a, b)
        verdict = verify_record(rec)
        _require(verdict.ok, where, "; ".join(verdict.problems) or "invalid record")
        records.append(rec)

    return Dataset(N, tuple(records), doc.get("twist"))


def _read_document(source):
    if isinstance(source, dict):
        return source
    if hasattr(source, "read"):
        text = source.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DatasetParseError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetParseError(f"invalid JSON: {exc}") from exc


def scholten_dataset() -> Dataset:
    """The bundled 8-record dataset (p = 5 ... 29, level N = 6)."""
    path = resources.files(__package__) / "data" / "scholten.json"
    with resources.as_file(path) as concrete:
        return load_dataset(concrete)
