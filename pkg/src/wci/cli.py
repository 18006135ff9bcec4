"""Command-line surface: classification, table reproduction, and searches.

Subcommands:
  classify    invariants and the combinatorial smoothness verdict for one pair
  enumerate   generator tables by variance, with optional golden-table diffing
  sigma       the parametric catalogue of variance-<=-c series
  degree-one  anticanonical-degree-one families in the enumerated corpus
  nef         nef partition maps, morphisms, and exact partitions as JSON
  conjectures batch sweeps of the degree-count bound and the morphism search

Exit codes: 0 success, 1 discrepancy or missing certificate, 2 usage error,
3 internal assertion failure.  WCI_THREADS sets the worker count for sweeps;
all output is deterministic and byte-identical across thread counts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .core import Family, Pair, family_json_record, invariants
from .degree_one import in_class_P, is_degree_one, tilde_reduce
from .enumeration import GeneratorRecord, enumerate_all
from .nef import (
    classify_morphism,
    conjecture_main_check,
    find_minimal_morphism,
    find_nef_map,
    find_nef_partition,
    nef_slacks,
)
from .series import expand, sigma_c
from .smoothness import InternalSearchError, is_combinatorially_smooth
from . import tables

OK = 0
DISCREPANCY = 1
USAGE = 2
INTERNAL = 3

FULL_CORPUS_MAX_VARIANCE = 4
MAX_VARIANCE = 7


class UsageError(Exception):
    pass


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated integer list, got {text!r}")
    if any(v < 1 for v in values):
        raise UsageError(f"{what} must be positive, got {text!r}")
    return values


def _records(variance: int, kind: str) -> tuple[GeneratorRecord, ...]:
    with_semi = kind in ("semiseries", "all")
    records = enumerate_all(variance, include_semiseries=with_semi)
    if kind == "semiseries":
        return tuple(r for r in records if r.kind == "semiseries")
    if kind == "series":
        return tuple(r for r in records if r.kind == "series")
    if kind == "pn":
        return tuple(r for r in records if r.kind == "series" and not r.weighted)
    return records


def _corpus(variance_cap: int) -> list[GeneratorRecord]:
    """Full corpus through variance 4, series-only beyond (the published range)."""
    out: list[GeneratorRecord] = []
    for r in range(variance_cap + 1):
        out.extend(enumerate_all(r, include_semiseries=r <= FULL_CORPUS_MAX_VARIANCE))
    return out


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args: argparse.Namespace) -> int:
    weights = _ints(args.weights, "--weights/-a")
    degrees = _ints(args.degrees, "--degrees/-d") if args.degrees else ()
    try:
        family = Family(degrees, weights)
    except ValueError as exc:
        raise UsageError(str(exc))
    verdict = is_combinatorially_smooth(family)
    report = invariants(family, combinatorially_smooth=bool(verdict))
    if args.json:
        record = family_json_record(family, report)
        record["smoothness"] = verdict.to_json_dict() if args.explain else {
            "ok": bool(verdict),
            "reason": verdict.reason,
        }
        print(json.dumps(record, indent=2))
    else:
        record = family_json_record(family, report)
        print(f"ambient: {record['ambient']}")
        print(f"degrees: {','.join(str(d) for d in family.degrees) or '-'}")
        for key, value in record["invariants"].items():
            print(f"{key}: {value}")
        if not verdict:
            print(f"reason: {verdict.reason}")
        if args.explain:
            print("witness:")
            print(json.dumps(verdict.to_json_dict(), indent=2))
    if args.require_smooth and not verdict:
        return DISCREPANCY
    return OK


# ---------------------------------------------------------------------------
# enumerate


def _golden_slice(variance: int, path: str | None) -> tuple[str, tuple[tables.TableRow, ...]]:
    table = "table2_variance_0_4" if variance <= FULL_CORPUS_MAX_VARIANCE else "table3_series_5_7"
    if path:
        return table, tables.load_golden_file(path)
    rows = tuple(r for r in tables.load_golden(table) if r.variance == str(variance))
    return table, rows


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.variance < 0 or args.variance > args.cap:
        raise UsageError(f"--variance must lie in 0..{args.cap}")
    if args.variance > FULL_CORPUS_MAX_VARIANCE and args.kind in ("semiseries", "all"):
        if args.kind == "semiseries":
            raise UsageError(
                f"semiseries enumeration is supported through variance {FULL_CORPUS_MAX_VARIANCE}"
            )
        args.kind = "series"
    records = _records(args.variance, args.kind)
    rows = tables.rows_from_records(records)
    report = None
    if args.golden is not None:
        table, golden_rows = _golden_slice(args.variance, args.golden or None)
        report = tables.diff_rows(table, golden_rows, rows)
    if args.format == "json":
        payload: dict = {"rows": [row.to_json_dict() for row in rows]}
        if report is not None:
            payload["golden"] = report.to_json_dict()
        print(json.dumps(payload, indent=2))
    else:
        print(tables.render_rows(rows, args.format), end="")
        if report is not None:
            print()
            status = "OK" if report.ok else "MISMATCH"
            allowlisted = sum(1 for e in report.entries if e.allowlisted)
            print(f"golden: {status} ({len(report.entries)} discrepancies, {allowlisted} allowlisted)")
            for e in report.entries:
                suffix = " [allowlisted]" if e.allowlisted else ""
                print(f"  {e.row_key} {e.field}: table={e.table_value} computed={e.computed_value}{suffix}")
    if report is not None and not report.ok:
        return DISCREPANCY
    return OK


# ---------------------------------------------------------------------------
# sigma


def cmd_sigma(args: argparse.Namespace) -> int:
    if args.c < 0 or args.c > args.cap:
        raise UsageError(f"--c must lie in 0..{args.cap}")
    rows = tables.rows_from_parametric(sigma_c(args.c, instantiate_to=args.instantiate_to))
    print(tables.render_rows(rows, args.format), end="")
    return OK


# ---------------------------------------------------------------------------
# degree-one


def cmd_degree_one(args: argparse.Namespace) -> int:
    if args.variance < 0 or args.variance > MAX_VARIANCE:
        raise UsageError(f"--variance must lie in 0..{MAX_VARIANCE}")
    corpus = [rec.family for rec in _corpus(args.variance)]
    corpus_rows = tables.rows_from_families(corpus)
    found: list[Family] = []
    rows: list[tables.TableRow] = []
    for fam, row in zip(corpus, corpus_rows):
        if is_degree_one(fam):
            found.append(fam)
            rows.append(row)
        for l in range(args.expansions + 1):
            for m in range(args.expansions + 1):
                if (l, m) == (0, 0):
                    continue
                expanded = expand(fam, l, m)
                if is_degree_one(expanded):
                    found.append(expanded)
                    rows.append(tables.row_from_family(expanded, f"{row.no}+{l},{m}"))
    if args.format == "json":
        payload = []
        for fam in found:
            record = family_json_record(fam)
            reduced = tilde_reduce(fam)
            record["degree_one"] = {
                "in_class_p": in_class_P(fam),
                "reduced_degrees": list(reduced.degrees),
                "reduced_weights": list(reduced.weights),
                "reduction_effectively_empty": reduced.effectively_empty,
            }
            payload.append(record)
        print(json.dumps(payload, indent=2))
    else:
        print(tables.render_rows(tuple(rows), args.format), end="")
    return OK


# ---------------------------------------------------------------------------
# nef


def cmd_nef(args: argparse.Namespace) -> int:
    weights = _ints(args.weights, "--weights")
    degrees = _ints(args.degrees, "--degrees") if args.degrees else ()
    try:
        pair = Pair(degrees, weights)
    except ValueError as exc:
        raise UsageError(str(exc))
    payload: dict = {"weights": list(pair.weights), "degrees": list(pair.degrees)}
    missing = False

    if args.minimal:
        morphism = find_minimal_morphism(pair)
        if morphism is None:
            payload["minimal_morphism"] = None
            missing = True
        else:
            payload["minimal_morphism"] = {
                **morphism.to_json_dict(),
                "classification": classify_morphism(pair, morphism),
            }
    if args.partition:
        part = find_nef_partition(pair)
        payload["partition"] = part.to_json_dict() if part else None
        missing = missing or part is None
    if not (args.minimal or args.partition):
        vmap = find_nef_map(pair, strong=args.strong)
        key = "strong_map" if args.strong else "map"
        if vmap is None:
            payload[key] = None
            missing = True
        else:
            payload[key] = {
                **vmap.to_json_dict(),
                "slacks": list(nef_slacks(pair, vmap)),
            }
    print(json.dumps(payload, indent=2))
    return DISCREPANCY if missing else OK


# ---------------------------------------------------------------------------
# conjectures


def _sweep_row(fam: Family) -> tuple[bool, bool, int, int, int, int]:
    bound_ok = conjecture_main_check(fam)
    nice = find_nef_partition(fam, nice=True) is not None
    return (bound_ok, nice, fam.coindex, fam.linear_system_dim, fam.dimension, fam.variance)


def _morphism_row(fam: Family) -> bool:
    return find_minimal_morphism(fam) is not None


def _thread_count() -> int:
    raw = os.environ.get("WCI_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"WCI_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _parallel_map(fn, items):
    workers = _thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    from multiprocessing import Pool

    with Pool(workers) as pool:
        return pool.map(fn, items)


def cmd_conjectures(args: argparse.Namespace) -> int:
    cap = args.variance_cap
    if cap < 0 or cap > MAX_VARIANCE:
        raise UsageError(f"--variance-cap must lie in 0..{MAX_VARIANCE}")
    generators = [rec.family for rec in _corpus(cap)]
    families: list[Family] = []
    for fam in generators:
        for l in range(args.expansions + 1):
            for m in range(args.expansions + 1):
                families.append(expand(fam, l, m) if (l, m) != (0, 0) else fam)

    rows = _parallel_map(_sweep_row, families)
    morphisms = _parallel_map(_morphism_row, generators)

    bound_failures = sum(1 for row in rows if not row[0])
    nice_found = sum(1 for row in rows if row[1])
    low_coindex = [row for row in rows if row[2] <= 8]
    low_coindex_ok = sum(1 for row in low_coindex if row[1])
    ample = [row for row in rows if row[3] >= row[4] and row[5] < 14]
    ample_ok = sum(1 for row in ample if row[1])
    morphism_failures = [generators[i] for i, ok in enumerate(morphisms) if not ok]

    print(f"variance cap: {cap}")
    print(f"generators: {len(generators)}")
    print(f"families including expansions (l,m <= {args.expansions}): {len(families)}")
    print(f"degree-count bound violations: {bound_failures}")
    print(f"nice nef partitions: {nice_found}/{len(families)}")
    print(f"  coindex <= 8: {low_coindex_ok}/{len(low_coindex)}")
    print(f"  unit system >= dimension, variance < 14: {ample_ok}/{len(ample)}")
    print(f"minimal-morphism failures: {len(morphism_failures)}")
    for fam in morphism_failures:
        record = family_json_record(fam)
        print(f"  candidate counterexample: {record['ambient']} degrees {list(fam.degrees)}")

    bad = (
        bound_failures > 0
        or morphism_failures
        or low_coindex_ok < len(low_coindex)
        or ample_ok < len(ample)
    )
    return DISCREPANCY if bad else OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wci",
        description="classify, enumerate, and search weighted complete intersections",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="invariants and smoothness verdict for one pair")
    p.add_argument("-a", "--weights", required=True, help="comma-separated weights")
    p.add_argument("-d", "--degrees", default="", help="comma-separated degrees")
    p.add_argument("--explain", action="store_true", help="attach the failing witness")
    p.add_argument("--require-smooth", action="store_true", help="exit 1 unless combinatorially smooth")
    p.add_argument("--json", action="store_true", help="emit a JSON record")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("enumerate", help="generator table for one variance")
    p.add_argument("--variance", type=int, required=True)
    p.add_argument("--kind", choices=("series", "semiseries", "pn", "all"), default="all")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--golden", nargs="?", const="", default=None,
                   help="diff against the packaged golden table, or a CSV path")
    p.add_argument("--cap", type=int, default=MAX_VARIANCE, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("sigma", help="parametric catalogue of low-variance series")
    p.add_argument("--c", type=int, required=True, help="variance ceiling of the catalogue")
    p.add_argument("--instantiate-to", type=int, default=3,
                   help="validate instantiations for quadric-section counts 0..M")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--cap", type=int, default=4, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_sigma)

    p = sub.add_parser("degree-one", help="anticanonical-degree-one families in the corpus")
    p.add_argument("--variance", type=int, required=True)
    p.add_argument("--expansions", type=int, default=2, help=argparse.SUPPRESS)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(handler=cmd_degree_one)

    p = sub.add_parser("nef", help="nef maps, morphisms, partitions as JSON certificates")
    p.add_argument("--weights", required=True, help="comma-separated weights")
    p.add_argument("--degrees", default="", help="comma-separated degrees")
    p.add_argument("--strong", action="store_true", help="require strictly positive slack")
    p.add_argument("--minimal", action="store_true", help="search a minimal morphism")
    p.add_argument("--partition", action="store_true", help="search an exact partition")
    p.set_defaults(handler=cmd_nef)

    p = sub.add_parser("conjectures", help="batch bound checks and morphism sweeps")
    p.add_argument("--variance-cap", type=int, default=4)
    p.add_argument("--expansions", type=int, default=2, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_conjectures)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (AssertionError, InternalSearchError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
