"""Command-line front end: reproducible batch runs with JSON reports.

The JSON report always goes to stdout (or to --output, written
atomically); human-readable diagnostics go to stderr so stdout stays
machine-parseable.  Reports embed a manifest and are byte-identical for
identical inputs, flags, and seed; wall-clock timing is only recorded
under --timing, since it would break that guarantee.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time

from . import __version__
from .conditions import check_all
from .frobdata import (
    DatasetInvariantError,
    DatasetParseError,
    load_dataset,
    scholten_dataset,
    verify_record,
)
from .primes import primes_up_to
from .sieve import (
    ImageLabel,
    SieveConfig,
    SieveReport,
    expected_image,
    is_excluded,
    run_sieve,
)
from .testkit import (
    DEFAULT_SEED,
    OracleCounterexample,
    exterior_square_numeric_check,
    opposite_root_identity_check,
    purity_numeric_check,
    reciprocal_pairs_check,
    sum_zero_identity_check,
)

EXIT_OK = 0
EXIT_USAGE = 2          # bad flags, unreadable or unparseable input
EXIT_INVARIANT = 3      # dataset loaded but violates an invariant
EXIT_CONDITIONS = 4     # a divisibility condition failed
EXIT_INCONCLUSIVE = 5   # a sieve step could not be completed
EXIT_NONEMPTY = 6       # sieve completed with a nonempty final set

_BUNDLED = "bundled:scholten"


class _CliExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("FROBSIEVE_SEED", "").strip()
    if env:
        try:
            return int(env)
        except ValueError:
            raise _CliExit(EXIT_USAGE, f"FROBSIEVE_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _load(path: str | None):
    try:
        if path is None:
            return scholten_dataset(), _BUNDLED
        return load_dataset(path), path
    except DatasetParseError as exc:
        raise _CliExit(EXIT_USAGE, f"parse error: {exc}")
    except DatasetInvariantError as exc:
        raise _CliExit(EXIT_INVARIANT, f"invariant violation: {exc}")


def _manifest(command: str, input_path: str | None, config: dict,
              seed: int, elapsed: float | None) -> dict:
    return {
        "command": command,
        "input": input_path,
        "config": {**config, "seed": seed},
        "version": __version__,
        "elapsed_seconds": elapsed,
    }


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".frobsieve-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(doc: dict, output: str | None):
    text = json.dumps(doc, indent=2) + "\n"
    if output:
        _write_atomic(output, text)
    else:
        sys.stdout.write(text)


def _note(message: str):
    print(message, file=sys.stderr)


def cmd_verify_data(args) -> int:
    start = time.perf_counter()
    ds, label = _load(args.path)
    rows = []
    all_ok = True
    for rec in ds.records:
        verdict = verify_record(rec)
        all_ok = all_ok and verdict.ok
        rows.append({
            "p": rec.p,
            "a": str(rec.a),
            "b": rec.b,
            "norm_a": rec.a.norm(),
            "purity_bound": 16 * rec.p**3,
            "ok": verdict.ok,
            "problems": list(verdict.problems),
        })
        _note(f"p={rec.p}: a={rec.a} b={rec.b} norm(a)={rec.a.norm()}"
              f" <= {16 * rec.p ** 3}: {'ok' if verdict.ok else 'INVALID'}")
    generates = ds.traces_generate_field
    valid = all_ok and generates
    elapsed = time.perf_counter() - start if args.timing else None
    doc = {
        "manifest": _manifest("verify-data", label, {}, _resolve_seed(args), elapsed),
        "N": ds.N,
        "record_count": len(ds.records),
        "records": rows,
        "traces_generate_field": generates,
        "valid": valid,
    }
    _emit(doc, args.output)
    if not generates:
        _note("invariant violation: traces are all rational, they do not"
              " generate the quadratic field")
        return EXIT_INVARIANT
    if not all_ok:
        return EXIT_INVARIANT
    _note(f"{len(ds.records)} records valid")
    return EXIT_OK


def cmd_check_conditions(args) -> int:
    start = time.perf_counter()
    ds, label = _load(args.path)
    report = check_all(ds)
    for res in report.results:
        status = "PASS" if res.passed else "FAIL"
        suffix = f" ({res.detail})" if res.detail else ""
        _note(f"{res.condition}: {status}{suffix}")
        for w in res.witnesses:
            chi = f" [{w.character}]" if w.character else ""
            _note(f"  witness p in {list(w.primes)}{chi}: {w.expression}")
    elapsed = time.perf_counter() - start if args.timing else None
    doc = {
        "manifest": _manifest(
            "check-conditions", label, {}, _resolve_seed(args), elapsed),
        "N": ds.N,
        "conditions": report.to_json_dict(),
        "passed": report.passed,
    }
    _emit(doc, args.output)
    return EXIT_OK if report.passed else EXIT_CONDITIONS


def cmd_sieve(args) -> int:
    start = time.perf_counter()
    ds, label = _load(args.path)
    try:
        cfg = SieveConfig(
            conductor=args.conductor,
            cutoff=args.cutoff,
            exclusion="D1D2" if args.exclude_d1d2 else "none",
        )
    except ValueError as exc:
        raise _CliExit(EXIT_USAGE, f"usage error: {exc}")
    for rec in ds.records:
        if math.gcd(rec.p, cfg.conductor) != 1:
            raise _CliExit(
                EXIT_USAGE,
                f"usage error: conductor {cfg.conductor} shares a factor"
                f" with record prime {rec.p}")
    label_primes = tuple(primes_up_to(args.lmax)) if args.lmax else ()
    report = run_sieve(ds, cfg, label_primes)
    elapsed = time.perf_counter() - start if args.timing else None
    doc = {
        "manifest": _manifest(
            "sieve", label,
            {"conductor": cfg.conductor, "cutoff": cfg.cutoff,
             "exclusion": cfg.exclusion, "lmax": args.lmax},
            _resolve_seed(args), elapsed),
        **report.to_json_dict(),
    }
    _emit(doc, args.output)
    for step in report.steps:
        primes = sorted(step.candidate_primes)
        state = "complete" if step.complete else "INCOMPLETE"
        _note(f"{step.step}: candidates {primes} ({state})")
    _note(f"final exceptional set: {list(report.final)}")
    if not report.complete:
        for item in report.inconclusive:
            _note(f"inconclusive: {item}")
        return EXIT_INCONCLUSIVE
    if report.final:
        return EXIT_NONEMPTY
    return EXIT_OK


def _report_from_json(path: str) -> SieveReport:
    try:
        with open(path) as fh:
            doc = json.load(fh)
        raw = dict(doc["config"])
        n = raw.pop("N")
        raw.pop("seed", None)
        cfg = SieveConfig(**{
            k: raw[k] for k in (
                "conductor", "cutoff", "exclusion", "trial_bound",
                "rho_steps", "residual_bits", "step4_both_variants",
            ) if k in raw
        })
        return SieveReport(
            N=n, config=cfg, steps=(), excluded=(),
            final=tuple(doc["final"]))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise _CliExit(EXIT_USAGE, f"cannot use sieve report {path}: {exc}")


def classify_statement(ell: int, label: ImageLabel, n: int) -> str:
    if label is ImageLabel.PSL4:
        return f"PSL(4, {ell}), Galois over Q, unramified outside {n * ell}"
    if label is ImageLabel.PSU4:
        return f"PSU(4, {ell}), Galois over Q, unramified outside {n * ell}"
    if label is ImageLabel.EXCLUDED:
        return f"Excluded ({is_excluded(ell)[1]})"
    return label.value


def cmd_classify(args) -> int:
    if args.report:
        report = _report_from_json(args.report)
    else:
        ds, _ = _load(args.data)
        report = run_sieve(ds)
    try:
        label = expected_image(args.ell, report)
    except ValueError as exc:
        raise _CliExit(EXIT_USAGE, f"usage error: {exc}")
    print(classify_statement(args.ell, label, report.N))
    return EXIT_OK


def cmd_oracle(args) -> int:
    start = time.perf_counter()
    seed = _resolve_seed(args)
    suites = {}
    passed = True
    identity_suites = (
        ("opposite-root", opposite_root_identity_check),
        ("sum-zero", sum_zero_identity_check),
        ("reciprocal-pairs", reciprocal_pairs_check),
    )
    for name, check in identity_suites:
        try:
            check(args.trials, seed=seed)
            suites[name] = {"trials": args.trials, "passed": True,
                            "counterexample": None}
            _note(f"{name}: {args.trials} trials, no counterexample")
        except OracleCounterexample as exc:
            suites[name] = {"trials": args.trials, "passed": False,
                            "counterexample": repr(exc.witness)}
            _note(f"{name}: COUNTEREXAMPLE {exc.witness!r}")
            passed = False
    ds, label = _load(args.data)
    for name, check in (("exterior-square-numeric", exterior_square_numeric_check),
                        ("purity-numeric", purity_numeric_check)):
        failures = [rec.p for rec in ds.records if not check(rec)]
        suites[name] = {"records": len(ds.records), "passed": not failures,
                        "failing_primes": failures}
        _note(f"{name}: {len(ds.records) - len(failures)}/{len(ds.records)} records pass")
        passed = passed and not failures
    elapsed = time.perf_counter() - start if args.timing else None
    doc = {
        "manifest": _manifest("oracle", label, {"trials": args.trials}, seed, elapsed),
        "suites": suites,
        "passed": passed,
    }
    _emit(doc, args.output)
    return EXIT_OK if passed else 1


def _add_common(sp):
    sp.add_argument("--output", "-o", metavar="PATH",
                    help="write the JSON report here instead of stdout")
    sp.add_argument("--timing", action="store_true",
                    help="record wall-clock time in the manifest"
                         " (breaks byte-for-byte reproducibility)")
    sp.add_argument("--seed", type=int, default=None,
                    help="RNG seed (default: FROBSIEVE_SEED or built-in)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobsieve",
        description="Certify maximal Galois image from Frobenius"
                    " characteristic-polynomial data.")
    parser.add_argument("--version", action="version",
                        version=f"frobsieve {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-data",
                       help="load and validate a dataset file")
    v.add_argument("path", nargs="?", default=None,
                   help="dataset JSON (default: bundled records)")
    _add_common(v)
    v.set_defaults(handler=cmd_verify_data)

    c = sub.add_parser("check-conditions",
                       help="check the seven large-image conditions")
    c.add_argument("path", nargs="?", default=None)
    _add_common(c)
    c.set_defaults(handler=cmd_check_conditions)

    s = sub.add_parser("sieve", help="run the seven-step exceptional-prime sieve")
    s.add_argument("path", nargs="?", default=None)
    s.add_argument("--conductor", type=int, default=1728,
                   help="fake uniform conductor c (default 1728 = 27*64)")
    s.add_argument("--cutoff", type=int, default=11,
                   help="discard candidates <= this bound (default 11)")
    s.add_argument("--exclude-d1d2", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="apply the D1/D2 congruence exclusions (default on)")
    s.add_argument("--lmax", type=int, default=None,
                   help="also emit image labels for all primes <= LMAX")
    _add_common(s)
    s.set_defaults(handler=cmd_sieve)

    k = sub.add_parser("classify", help="image label for one prime")
    k.add_argument("--ell", type=int, required=True)
    k.add_argument("--report", metavar="PATH",
                   help="reuse a previous sieve report instead of re-running")
    k.add_argument("--data", metavar="PATH", default=None,
                   help="dataset for the inline sieve run (default: bundled)")
    _add_common(k)
    k.set_defaults(handler=cmd_classify)

    o = sub.add_parser("oracle", help="run the identity and numeric oracles")
    o.add_argument("--trials", type=int, default=500)
    o.add_argument("--data", metavar="PATH", default=None)
    _add_common(o)
    o.set_defaults(handler=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliExit as exc:
        _note(str(exc))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
