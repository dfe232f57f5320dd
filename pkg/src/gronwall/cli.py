"""Command-line front end.

Every subcommand wraps one library entry point and renders its result in
one of three formats (pretty, csv, jsonl). Output for a fixed configuration
is byte-identical across runs and worker counts; scans merge their blocks
in order before anything is printed.

Exit codes, uniform across subcommands:
    0  success / all checks passed
    1  a violation or counterexample was found (including golden-table diffs)
    2  a required comparison could not be certified at the precision cap
    3  usage or resource errors (bad arguments, budget exceeded)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .arith import BudgetExceeded, divisor_sigma, factorize
from .enclosure import (
    DEFAULT_PRECISION,
    DEFAULT_PRECISION_CAP,
    PrecisionExhausted,
    StraddlesBoundary,
    Tri,
    truncate3,
)
from .ga import (
    CertificationError,
    GAVerdict,
    certify_four,
    extraordinary_probe,
    ga1_check_criterion,
    ga1_check_direct,
    prop_2p_scan,
    prop_pq_scan,
)
from .gfun import g_truncate3, g_value
from .robin import lagarias_check, lagarias_sweep, robin_exceptions, scan_range
from .superabundant import sa_enumerate

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 3

_FORMATS = ("pretty", "csv", "jsonl")
_ENV_PREFIX = "GRONWALL_"
_DEFAULT_MEMORY_BUDGET = 1 << 29  # bytes; sieves use 8-byte cells


@dataclass(frozen=True)
class RunConfig:
    precision_start: int = DEFAULT_PRECISION
    precision_cap: int = DEFAULT_PRECISION_CAP
    memory_budget: int = _DEFAULT_MEMORY_BUDGET
    output_format: str = "pretty"
    strict_i: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if self.precision_start > self.precision_cap:
            raise ValueError("precision_start must not exceed precision_cap")
        if self.memory_budget <= 0:
            raise ValueError("memory_budget must be positive")
        if self.output_format not in _FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def sieve_elements(self) -> int:
        return max(1, self.memory_budget // 8)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the contract here says 3."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse override
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _env(name: str, fallback):
    raw = os.environ.get(_ENV_PREFIX + name)
    if raw is None:
        return fallback
    if isinstance(fallback, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(fallback, int):
        try:
            return int(raw)
        except ValueError:
            raise SystemExit(EXIT_USAGE)
    return raw


def _build_parser() -> _Parser:
    parser = _Parser(prog="gronwall", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--precision",
        type=int,
        default=_env("PRECISION", DEFAULT_PRECISION),
        help="starting working precision in bits (default 128)",
    )
    parser.add_argument(
        "--precision-cap",
        type=int,
        default=_env("PRECISION_CAP", DEFAULT_PRECISION_CAP),
        help="precision ceiling; undecidable-below-this comparisons exit 2",
    )
    parser.add_argument(
        "--format",
        choices=_FORMATS,
        default=_env("FORMAT", "pretty"),
        help="output format (default pretty)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=_env("WORKERS", os.cpu_count() or 1),
        help="worker processes for range scans (default: available units)",
    )
    parser.add_argument(
        "--memory-budget",
        type=int,
        default=_env("MEMORY_BUDGET", _DEFAULT_MEMORY_BUDGET),
        help="sieve memory budget in bytes (default 512 MiB)",
    )
    parser.add_argument(
        "--strict-i",
        action="store_true",
        default=_env("STRICT_I", False),
        help="use strict > in GA condition (i); see the ga module notes",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="sum of divisors")
    p.add_argument("n", type=int)

    p = sub.add_parser("g", help="G(n) = sigma(n)/(n log log n), truncated to 3 decimals")
    p.add_argument("n", type=int)

    p = sub.add_parser("table1", help="recompute and diff the 26-row violation table")
    p.add_argument("--golden", default=None, help="path to an alternative golden CSV")

    p = sub.add_parser("scan", help="certify G(n) < e^gamma over a range of n > 5040")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)

    p = sub.add_parser("sa", help="enumerate superabundant numbers up to a limit")
    p.add_argument("limit", type=int)

    p = sub.add_parser("ga1", help="classify n (or a range) and check method agreement")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", dest="range_", nargs=2, type=int, metavar=("LO", "HI"))

    p = sub.add_parser("probe", help="probe n for extraordinariness up to a multiplier bound")
    p.add_argument("n", type=int)
    p.add_argument("--amax", type=int, required=True)

    sub.add_parser("certify4", help="replay the certified argument that 4 is extraordinary")

    p = sub.add_parser("props", help="scan the 2p / odd-semiprime GA1 propositions")
    p.add_argument("--2p", dest="two_p", type=int, metavar="PMAX")
    p.add_argument("--pq", dest="pq", type=int, metavar="BOUND")

    p = sub.add_parser("lagarias", help="harmonic-number divisor inequality checks")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", dest="range_", nargs=2, type=int, metavar=("LO", "HI"))
    p.add_argument("--variant", choices=("strict", "doubled"), default="strict")

    return parser


# ---------------------------------------------------------------------------
# rendering


def _emit(rows: list[dict], fields: list[str], schema: str, cfg: RunConfig, out) -> None:
    """Render rows in the configured format with a fixed field order."""
    if cfg.output_format == "jsonl":
        for row in rows:
            record = {"schema": schema}
            record.update({k: row.get(k) for k in fields})
            print(json.dumps(record, separators=(",", ":")), file=out)
        return
    if cfg.output_format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow(["" if row.get(k) is None else row.get(k) for k in fields])
        return
    if not rows:
        return
    cells = [[str(row.get(k)) if row.get(k) is not None else "" for k in fields] for row in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) for i, f in enumerate(fields)]
    print("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip(), file=out)
    for c in cells:
        print("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip(), file=out)


def _tri_word(t: Tri) -> str:
    return {Tri.TRUE: "true", Tri.FALSE: "false", Tri.INDETERMINATE: "indeterminate"}[t]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_sigma(args, cfg: RunConfig, out) -> int:
    f = factorize(args.n)
    sigma = divisor_sigma(f)
    if cfg.output_format == "pretty":
        print(sigma, file=out)
        return EXIT_OK
    rows = [{"n": args.n, "sigma": sigma, "abundancy": str(Fraction(sigma, args.n))}]
    _emit(rows, ["n", "sigma", "abundancy"], "sigma", cfg, out)
    return EXIT_OK


def _cmd_g(args, cfg: RunConfig, out) -> int:
    if args.n < 2:
        raise ValueError("G(n) needs n >= 2 (log log 1 is undefined)")
    f = factorize(args.n)
    rendered = g_truncate3(args.n, start=cfg.precision_start, cap=cfg.precision_cap, factorization=f)
    if args.n == 2:
        print("warning: log log 2 < 0, so G(2) is negative", file=sys.stderr)
    if cfg.output_format == "pretty":
        print(rendered, file=out)
        return EXIT_OK
    sigma = divisor_sigma(f)
    rows = [{"n": args.n, "sigma": sigma, "abundancy": str(Fraction(sigma, args.n)), "g": rendered}]
    _emit(rows, ["n", "sigma", "abundancy", "g"], "g", cfg, out)
    return EXIT_OK


_TABLE1_FIELDS = ["r", "sa", "factorization", "sigma", "abundancy", "g", "p_witness", "g_11r"]


def _table1_rows(cfg: RunConfig) -> list[dict]:
    records = robin_exceptions(start=cfg.precision_start, cap=cfg.precision_cap)
    rows = []
    for rec in records:
        rows.append(
            {
                "r": str(rec.r),
                "sa": "1" if rec.is_sa else "0",
                "factorization": str(rec.factorization),
                "sigma": str(rec.sigma),
                "abundancy": truncate3(rec.abundancy),
                "g": truncate3(rec.g),
                "p_witness": "" if rec.witness_prime is None else str(rec.witness_prime),
                "g_11r": truncate3(rec.g_11r),
            }
        )
    return rows


def _load_golden(path: str | None) -> list[dict]:
    if path is None:
        text = resources.files("gronwall.data").joinpath("table1_golden.csv").read_text()
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    reader = csv.DictReader(io.StringIO(text))
    return [dict(row) for row in reader]


def _cmd_table1(args, cfg: RunConfig, out) -> int:
    computed = _table1_rows(cfg)
    golden = _load_golden(args.golden)
    _emit(computed, _TABLE1_FIELDS, "table1", cfg, out)
    diffs = []
    if len(computed) != len(golden):
        diffs.append(f"row count: computed {len(computed)} != golden {len(golden)}")
    for crow, grow in zip(computed, golden):
        for field in _TABLE1_FIELDS:
            if str(crow.get(field, "")) != str(grow.get(field, "")):
                diffs.append(
                    f"row r={crow['r']} column {field}: "
                    f"computed {crow.get(field, '')!r} != golden {grow.get(field, '')!r}"
                )
    if diffs:
        for d in diffs:
            print(f"diff: {d}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_scan(args, cfg: RunConfig, out) -> int:
    report = scan_range(
        args.lo,
        args.hi,
        workers=cfg.workers,
        start=cfg.precision_start,
        cap=cfg.precision_cap,
        max_elements=cfg.sieve_elements,
    )
    rows = [{"kind": "violation", "n": n, "g": truncate3(g)} for n, g in report.violations]
    rows += [{"kind": "indeterminate", "n": n, "g": None} for n in report.indeterminates]
    max_n, max_g = report.max_g
    rows.append({"kind": "max", "n": max_n, "g": truncate3(max_g)})
    _emit(rows, ["kind", "n", "g"], "scan", cfg, out)
    if report.violations:
        return EXIT_VIOLATION
    if report.indeterminates:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _cmd_sa(args, cfg: RunConfig, out) -> int:
    entries = sa_enumerate(args.limit, max_elements=cfg.sieve_elements, precision=cfg.precision_start)
    rows = []
    for e in entries:
        rows.append(
            {
                "s": e.s,
                "factorization": str(e.factorization),
                "abundancy": f"{e.abundancy.numerator}/{e.abundancy.denominator}",
                "g": None if e.g is None else truncate3(e.g),
            }
        )
    _emit(rows, ["s", "factorization", "abundancy", "g"], "sa", cfg, out)
    return EXIT_OK


def _ga1_row(n: int, cfg: RunConfig) -> tuple[dict, bool, bool]:
    """Classify n both ways; returns (row, methods_agree, any_indeterminate)."""
    f = factorize(n)
    direct = ga1_check_direct(
        n, factorization=f, strict=cfg.strict_i, start=cfg.precision_start, cap=cfg.precision_cap
    )
    criterion = ga1_check_criterion(
        n, factorization=f, strict=cfg.strict_i, start=cfg.precision_start, cap=cfg.precision_cap
    )
    agree = direct.verdict is criterion.verdict and direct.witness == criterion.witness
    indet = GAVerdict.INDETERMINATE in (direct.verdict, criterion.verdict)
    row = {
        "n": n,
        "verdict": direct.verdict.value,
        "witness": direct.witness,
        "undecided": ",".join(map(str, direct.undecided)) or None,
        "agreement": "yes" if agree else "no",
    }
    return row, agree, indet


def _cmd_ga1(args, cfg: RunConfig, out) -> int:
    fields = ["n", "verdict", "witness", "undecided", "agreement"]
    if (args.n is None) == (args.range_ is None):
        raise ValueError("ga1 needs exactly one of: a single n, or --range LO HI")
    if args.n is not None:
        row, agree, indet = _ga1_row(args.n, cfg)
        _emit([row], fields, "ga1", cfg, out)
        if not agree:
            return EXIT_VIOLATION
        return EXIT_INDETERMINATE if indet else EXIT_OK
    lo, hi = args.range_
    if lo < 2 or hi < lo:
        raise ValueError("ga1 --range needs 2 <= LO <= HI")
    rows, disagreements, indets, checked = [], 0, 0, 0
    for n in range(max(lo, 4), hi + 1):
        f = factorize(n)
        if len(f.pairs) == 1 and f.pairs[0][1] == 1:
            continue  # primes are out of scope for GA1
        row, agree, indet = _ga1_row(n, cfg)
        checked += 1
        disagreements += 0 if agree else 1
        indets += 1 if indet else 0
        if row["verdict"] == GAVerdict.GA1.value or not agree:
            rows.append(row)
    rows.append(
        {
            "n": f"[{lo},{hi}]",
            "verdict": f"checked={checked}",
            "witness": None,
            "undecided": str(indets) if indets else None,
            "agreement": "yes" if not disagreements else f"no ({disagreements})",
        }
    )
    _emit(rows, fields, "ga1", cfg, out)
    if disagreements:
        return EXIT_VIOLATION
    return EXIT_INDETERMINATE if indets else EXIT_OK


def _cmd_probe(args, cfg: RunConfig, out) -> int:
    report = extraordinary_probe(
        args.n, args.amax, start=cfg.precision_start, cap=cfg.precision_cap
    )
    ci = report.condition_i
    if cfg.output_format == "pretty":
        print(f"n = {report.n}", file=out)
        label = "certified" if ci.verdict is not GAVerdict.INDETERMINATE else "indeterminate"
        witness = f" (witness p = {ci.witness})" if ci.witness is not None else ""
        print(f"condition (i): {ci.verdict.value}{witness} [{label}]", file=out)
        if report.multiple_witnesses:
            listed = ", ".join(map(str, report.multiple_witnesses))
            print(
                f"condition (ii): refuted for a <= {report.a_max}; "
                f"certified witnesses a = {listed} [certified]",
                file=out,
            )
        else:
            print(f"condition (ii): {report.condition_ii_status} [scan, not a proof]", file=out)
        flag_word = "true" if report.gronwall_flag else "false"
        print(
            f"G(n) < e^gamma: {flag_word} [certified; implication for condition (ii) "
            "is theorem-conditional]",
            file=out,
        )
        if report.undecided_multiples:
            print(f"undecided multipliers: {report.undecided_multiples}", file=out)
    else:
        row = {
            "n": report.n,
            "a_max": report.a_max,
            "condition_i": ci.verdict.value,
            "condition_i_witness": ci.witness,
            "condition_i_label": "certified"
            if ci.verdict is not GAVerdict.INDETERMINATE
            else "indeterminate",
            "condition_ii_status": report.condition_ii_status,
            "multiple_witnesses": ",".join(map(str, report.multiple_witnesses)) or None,
            "gronwall_flag": report.gronwall_flag,
            "gronwall_flag_label": "theorem-conditional",
        }
        _emit(
            [row],
            list(row.keys()),
            "probe",
            cfg,
            out,
        )
    undecided = report.undecided_multiples or ci.verdict is GAVerdict.INDETERMINATE
    return EXIT_INDETERMINATE if undecided else EXIT_OK


def _cmd_certify4(args, cfg: RunConfig, out) -> int:
    trace = certify_four(start=cfg.precision_start, cap=cfg.precision_cap)
    rows = [{"step": i + 1, "kind": s.kind, "claim": s.label, "detail": s.detail}
            for i, s in enumerate(trace.steps)]
    _emit(rows, ["step", "kind", "claim", "detail"], "certify4", cfg, out)
    return EXIT_OK


def _cmd_props(args, cfg: RunConfig, out) -> int:
    if args.two_p is None and args.pq is None:
        raise ValueError("props needs --2p PMAX and/or --pq BOUND")
    rows, violations, indets = [], 0, 0
    if args.two_p is not None:
        report = prop_2p_scan(args.two_p, start=cfg.precision_start, cap=cfg.precision_cap)
        for p, is_ga1 in report.entries:
            if is_ga1 != (p == 2 or p > 5):
                violations += 1
                rows.append({"scan": "2p", "n": 2 * p, "note": f"p={p} breaks the predicate"})
        indets += len(report.indeterminates)
        rows.append(
            {
                "scan": "2p",
                "n": f"p<={args.two_p}",
                "note": f"checked={len(report.entries)} predicate_violations={violations}",
            }
        )
    if args.pq is not None:
        report = prop_pq_scan(args.pq, start=cfg.precision_start, cap=cfg.precision_cap)
        for n, _ in report.entries:
            violations += 1
            rows.append({"scan": "pq", "n": n, "note": "odd semiprime classified GA1"})
        indets += len(report.indeterminates)
        rows.append(
            {
                "scan": "pq",
                "n": f"pq<={args.pq}",
                "note": f"violations={len(report.entries)}",
            }
        )
    _emit(rows, ["scan", "n", "note"], "props", cfg, out)
    if violations:
        return EXIT_VIOLATION
    return EXIT_INDETERMINATE if indets else EXIT_OK


def _cmd_lagarias(args, cfg: RunConfig, out) -> int:
    if (args.n is None) == (args.range_ is None):
        raise ValueError("lagarias needs exactly one of: a single n, or --range LO HI")
    if args.n is not None:
        verdict = lagarias_check(
            args.n, variant=args.variant, start=cfg.precision_start, cap=cfg.precision_cap
        )
        _emit(
            [{"n": args.n, "variant": args.variant, "holds": _tri_word(verdict)}],
            ["n", "variant", "holds"],
            "lagarias",
            cfg,
            out,
        )
        if verdict is Tri.FALSE:
            return EXIT_VIOLATION
        return EXIT_INDETERMINATE if verdict is Tri.INDETERMINATE else EXIT_OK
    lo, hi = args.range_
    report = lagarias_sweep(
        lo,
        hi,
        variant=args.variant,
        start=cfg.precision_start,
        cap=cfg.precision_cap,
        max_elements=cfg.sieve_elements,
    )
    rows = [{"n": n, "variant": args.variant, "holds": "false"} for n in report.violations]
    rows += [{"n": n, "variant": args.variant, "holds": "indeterminate"} for n in report.indeterminates]
    rows.append(
        {
            "n": f"[{lo},{hi}]",
            "variant": args.variant,
            "holds": "true" if report.clean else "see rows above",
        }
    )
    _emit(rows, ["n", "variant", "holds"], "lagarias", cfg, out)
    if report.violations:
        return EXIT_VIOLATION
    return EXIT_INDETERMINATE if report.indeterminates else EXIT_OK


_COMMANDS = {
    "sigma": _cmd_sigma,
    "g": _cmd_g,
    "table1": _cmd_table1,
    "scan": _cmd_scan,
    "sa": _cmd_sa,
    "ga1": _cmd_ga1,
    "probe": _cmd_probe,
    "certify4": _cmd_certify4,
    "props": _cmd_props,
    "lagarias": _cmd_lagarias,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            # Lowering just the cap (e.g. to force indeterminacy) should not
            # be a usage error, so the start follows the cap downward.
            precision_start=min(args.precision, args.precision_cap),
            precision_cap=args.precision_cap,
            memory_budget=args.memory_budget,
            output_format=args.format,
            strict_i=args.strict_i,
            workers=args.workers,
        )
        return _COMMANDS[args.command](args, cfg, out)
    except (PrecisionExhausted, StraddlesBoundary) as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
