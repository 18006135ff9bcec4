"""Golden classification tables: rows, parsing, diffing, rendering.

The package ships CSV transcriptions of the three classification tables
(the variance-2 parametric family catalogue, the variance-0..4 generator
table, and the variance-5..7 series table) plus a versioned allowlist of
suspected typos.  Each allowlist entry records the printed value, the
recomputed value, and a derivation note; the diff machinery matches rows by
their parsed weight/degree multisets so that formatting drift in one field
never decouples a row from its golden counterpart.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from .core import (
    Family,
    anticanonical_degree,
    h0_anticanonical,
    is_sporadic,
    render_ambient,
    render_degrees,
)
from .enumeration import GeneratorRecord
from .series import ParametricFamily

HEADER = ("no", "variance", "ambient", "degrees", "dimension", "degree", "h0_or_index", "sporadic")

# row labels are positional bookkeeping, not classification content
DIFF_FIELDS = HEADER[1:]

GOLDEN_TABLES = {
    "table1_sigma_2": "table1_sigma_2.csv",
    "table2_variance_0_4": "table2_variance_0_4.csv",
    "table3_series_5_7": "table3_series_5_7.csv",
}

ALLOWLIST_FILE = "allowlist.csv"


def parse_ambient(text: str) -> tuple[int, ...]:
    """Weight multiset of an ambient string like P^7 or P(1^4,2^2,3).

    Raises ValueError on parametric strings (exponents containing m).
    """
    s = text.strip()
    if s.startswith("P^"):
        return (1,) * (int(s[2:]) + 1)
    if s.startswith("P(") and s.endswith(")"):
        weights: list[int] = []
        for part in s[2:-1].split(","):
            if "^" in part:
                base, exp = part.split("^", 1)
                weights.extend([int(base)] * int(exp))
            else:
                weights.append(int(part))
        if not weights:
            raise ValueError(f"empty ambient {text!r}")
        return tuple(sorted(weights))
    raise ValueError(f"unrecognized ambient string {text!r}")


def parse_degrees(text: str) -> tuple[int, ...]:
    """Degree multiset of a comma-separated degrees cell ('' means none)."""
    s = text.strip()
    if not s:
        return ()
    return tuple(sorted(int(part) for part in s.split(",")))


@dataclass(frozen=True)
class TableRow:
    """One printed table row; every field kept as its exact string form."""

    no: str
    variance: str
    ambient: str
    degrees: str
    dimension: str
    degree: str
    h0_or_index: str
    sporadic: str

    @property
    def row_key(self) -> str:
        return f"{self.ambient}|{self.degrees}"

    def family_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(weight multiset, degree multiset); ValueError on parametric rows."""
        return parse_ambient(self.ambient), parse_degrees(self.degrees)

    def to_json_dict(self) -> dict:
        return {field: getattr(self, field) for field in HEADER}


def _sporadic_str(flag: bool) -> str:
    return "Sporadic" if flag else "Non-sporadic"


def row_from_family(family: Family, label: str) -> TableRow:
    deg = anticanonical_degree(family)
    return TableRow(
        no=label,
        variance=str(family.variance),
        ambient=render_ambient(family.weights),
        degrees=render_degrees(family.degrees),
        dimension=str(family.dimension),
        degree=str(deg.numerator) if deg.denominator == 1 else str(deg),
        h0_or_index=str(h0_anticanonical(family)),
        sporadic=_sporadic_str(is_sporadic(family)),
    )


def _is_line_then_conic(prev: Family, cur: Family) -> bool:
    # a plane conic is the line in its quadric re-embedding: one variety,
    # two representations, one row label
    return (prev.degrees, prev.weights) == ((), (1, 1)) and (cur.degrees, cur.weights) == (
        (2,),
        (1, 1, 1),
    )


def rows_from_families(families: Iterable[Family]) -> tuple[TableRow, ...]:
    """Numbered rows, one per family, in the given (sorted) order.

    Labels count per variance; the codimension-0 line and its conic
    representation share a label.
    """
    rows: list[TableRow] = []
    counters: dict[int, int] = {}
    prev: Family | None = None
    label = ""
    for fam in families:
        r = fam.variance
        if prev is None or not _is_line_then_conic(prev, fam):
            counters[r] = counters.get(r, 0) + 1
            label = f"{r}.{counters[r]}"
        rows.append(row_from_family(fam, label))
        prev = fam
    return tuple(rows)


def rows_from_records(records: Iterable[GeneratorRecord]) -> tuple[TableRow, ...]:
    return rows_from_families(rec.family for rec in records)


def rows_from_parametric(parametrics: Iterable[ParametricFamily]) -> tuple[TableRow, ...]:
    """Rows for a parametric catalogue; sporadic rows get primed labels."""
    rows: list[TableRow] = []
    plain = 0
    primed = 0
    for pf in parametrics:
        if pf.sporadic:
            primed += 1
            label = f"{primed}'"
        else:
            plain += 1
            label = str(plain)
        rows.append(
            TableRow(
                no=label,
                variance=str(pf.variance),
                ambient=pf.ambient_string(),
                degrees=pf.degrees_string(),
                dimension=pf.dimension_string(),
                degree=pf.degree_string(),
                h0_or_index=str(pf.index),
                sporadic=_sporadic_str(pf.sporadic),
            )
        )
    return tuple(rows)


# ---------------------------------------------------------------------------
# golden corpus


def _rows_from_csv_text(text: str, source: str) -> tuple[TableRow, ...]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != HEADER:
        raise ValueError(f"unexpected header in {source}: {reader.fieldnames}")
    return tuple(TableRow(**{field: row[field] for field in HEADER}) for row in reader)


def _data_text(name: str) -> str:
    return resources.files("wci").joinpath("tables").joinpath(name).read_text(encoding="utf-8")


def load_golden(table: str) -> tuple[TableRow, ...]:
    if table not in GOLDEN_TABLES:
        raise ValueError(f"unknown table {table!r}; expected one of {sorted(GOLDEN_TABLES)}")
    name = GOLDEN_TABLES[table]
    return _rows_from_csv_text(_data_text(name), name)


def load_golden_file(path: str) -> tuple[TableRow, ...]:
    with open(path, encoding="utf-8") as fh:
        return _rows_from_csv_text(fh.read(), path)


@dataclass(frozen=True)
class AllowlistEntry:
    """A documented table-vs-recomputation divergence with its derivation."""

    table: str
    row_key: str
    field: str
    table_value: str
    computed_value: str
    note: str

    @property
    def key(self) -> tuple[str, str, str, str, str]:
        return (self.table, self.row_key, self.field, self.table_value, self.computed_value)


def load_allowlist() -> tuple[AllowlistEntry, ...]:
    reader = csv.DictReader(io.StringIO(_data_text(ALLOWLIST_FILE)))
    return tuple(AllowlistEntry(**row) for row in reader)


# ---------------------------------------------------------------------------
# diffing


@dataclass(frozen=True)
class Discrepancy:
    table: str
    row_key: str
    field: str
    table_value: str
    computed_value: str
    allowlisted: bool

    @property
    def key(self) -> tuple[str, str, str, str, str]:
        return (self.table, self.row_key, self.field, self.table_value, self.computed_value)

    def to_json_dict(self) -> dict:
        return {
            "table": self.table,
            "row_key": self.row_key,
            "field": self.field,
            "table_value": self.table_value,
            "computed_value": self.computed_value,
            "allowlisted": self.allowlisted,
        }


@dataclass(frozen=True)
class DiscrepancyReport:
    """All golden-vs-computed mismatches for one table, each exactly once."""

    table: str
    entries: tuple[Discrepancy, ...]
    unused_allowlist: tuple[AllowlistEntry, ...]

    @property
    def ok(self) -> bool:
        """No mismatch outside the allowlist."""
        return all(e.allowlisted for e in self.entries)

    @property
    def matches_allowlist_exactly(self) -> bool:
        return self.ok and not self.unused_allowlist

    def to_json_dict(self) -> dict:
        return {
            "table": self.table,
            "ok": self.ok,
            "entries": [e.to_json_dict() for e in self.entries],
            "unused_allowlist": [list(e.key) for e in self.unused_allowlist],
        }


def diff_rows(
    table: str,
    golden_rows: Sequence[TableRow],
    computed_rows: Sequence[TableRow],
    allowlist: Sequence[AllowlistEntry] | None = None,
) -> DiscrepancyReport:
    """Field-by-field comparison keyed by parsed weight/degree multisets."""
    if allowlist is None:
        allowlist = load_allowlist()
    relevant = [e for e in allowlist if e.table == table]
    allowed = {e.key for e in relevant}

    def row_index_key(row: TableRow):
        # parametric rows (exponents in m) fall back to their raw strings
        try:
            return row.family_key()
        except ValueError:
            return ("raw", row.row_key)

    def indexed(rows: Sequence[TableRow], which: str) -> dict:
        out: dict = {}
        for row in rows:
            k = row_index_key(row)
            if k in out:
                raise ValueError(f"duplicate family {k} in {which} rows of {table}")
            out[k] = row
        return out

    golden = indexed(golden_rows, "golden")
    computed = indexed(computed_rows, "computed")
    entries: list[Discrepancy] = []

    def record(row_key: str, field: str, tv: str, cv: str) -> None:
        k = (table, row_key, field, tv, cv)
        entries.append(Discrepancy(table, row_key, field, tv, cv, k in allowed))

    for grow in golden_rows:
        crow = computed.get(row_index_key(grow))
        if crow is None:
            record(grow.row_key, "presence", "present", "missing")
            continue
        for field in DIFF_FIELDS:
            tv = getattr(grow, field)
            cv = getattr(crow, field)
            if tv != cv:
                record(grow.row_key, field, tv, cv)
    for crow in computed_rows:
        if row_index_key(crow) not in golden:
            record(crow.row_key, "presence", "missing", "present")

    used = {e.key for e in entries if e.allowlisted}
    unused = tuple(e for e in relevant if e.key not in used)
    return DiscrepancyReport(table, tuple(entries), unused)


# ---------------------------------------------------------------------------
# rendering


def render_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow([getattr(row, field) for field in HEADER])
    return buf.getvalue()


def render_markdown(rows: Sequence[TableRow]) -> str:
    lines = [
        "| " + " | ".join(HEADER) + " |",
        "|" + "|".join(" --- " for _ in HEADER) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(getattr(row, field) for field in HEADER) + " |")
    return "\n".join(lines) + "\n"


def render_json(rows: Sequence[TableRow]) -> str:
    return json.dumps([row.to_json_dict() for row in rows], indent=2) + "\n"


def render_rows(rows: Sequence[TableRow], fmt: str) -> str:
    if fmt == "md":
        return render_markdown(rows)
    if fmt == "csv":
        return render_csv(rows)
    if fmt == "json":
        return render_json(rows)
    raise ValueError(f"unknown format {fmt!r}")
