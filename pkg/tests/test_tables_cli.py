"""Golden tables, diff reports, and the command-line surface."""
from __future__ import annotations

import json

import pytest

from wci import enumerate_all
from wci import tables
from wci.cli import main
from wci.tables import (
    AllowlistEntry,
    TableRow,
    diff_rows,
    load_allowlist,
    load_golden,
    parse_ambient,
    parse_degrees,
    render_csv,
    render_markdown,
    rows_from_families,
)


# ---------------------------------------------------------------- parsing


def test_parse_ambient():
    assert parse_ambient("P^3") == (1, 1, 1, 1)
    assert parse_ambient("P(1^4,2^2,3)") == (1, 1, 1, 1, 2, 2, 3)
    assert parse_ambient("P(1^2,2,3)") == (1, 1, 2, 3)
    with pytest.raises(ValueError):
        parse_ambient("P^(4+2m)")


def test_parse_degrees():
    assert parse_degrees("") == ()
    assert parse_degrees("4,6") == (4, 6)
    assert parse_degrees("6,4") == (4, 6)
    with pytest.raises(ValueError):
        parse_degrees("2^(m+1)")


def test_row_keys():
    row = TableRow("2.4", "2", "P(1^4,2^2,3)", "4,6", "4", "2", "4", "Sporadic")
    assert row.row_key == "P(1^4,2^2,3)|4,6"
    assert row.family_key() == ((1, 1, 1, 1, 2, 2, 3), (4, 6))


# ---------------------------------------------------------- golden corpus


@pytest.mark.parametrize("table", sorted(tables.GOLDEN_TABLES))
def test_golden_tables_roundtrip_byte_identical(table):
    rows = load_golden(table)
    raw = tables._data_text(tables.GOLDEN_TABLES[table])
    assert render_csv(rows) == raw


def test_allowlist_has_nine_documented_entries():
    entries = load_allowlist()
    assert len(entries) == 9
    assert {e.table for e in entries} == {
        "table2_variance_0_4",
        "table3_series_5_7",
    }


def test_row_labels_share_variance_zero_convention():
    rows = rows_from_families(
        [rec.family for rec in enumerate_all(0)]
    )
    assert [r.no for r in rows] == ["0.1", "0.1"]
    assert rows[0].ambient == "P^1"
    assert rows[1].ambient == "P^2"


def test_rows_from_families_match_golden_slice(small_corpus):
    computed = rows_from_families([rec.family for rec in small_corpus])
    golden = [
        r
        for r in load_golden("table2_variance_0_4")
        if int(r.variance) <= 3
    ]
    assert [r.no for r in computed] == [r.no for r in golden]
    assert [r.ambient for r in computed] == [r.ambient for r in golden]
    assert [r.degrees for r in computed] == [r.degrees for r in golden]


# ----------------------------------------------------------------- diffing


def _rows():
    return rows_from_families([rec.family for rec in enumerate_all(2)])


def test_diff_rows_clean_when_identical():
    rows = _rows()
    report = diff_rows("table2_variance_0_4", rows, rows, allowlist=())
    assert report.ok
    assert report.matches_allowlist_exactly
    assert report.entries == ()


def test_diff_rows_flags_field_changes():
    rows = _rows()
    tampered = list(rows)
    tampered[0] = TableRow(
        rows[0].no, rows[0].variance, rows[0].ambient, rows[0].degrees,
        rows[0].dimension, "999", rows[0].h0_or_index, rows[0].sporadic,
    )
    report = diff_rows("table2_variance_0_4", tampered, rows, allowlist=())
    assert not report.ok
    assert len(report.entries) == 1
    entry = report.entries[0]
    assert entry.field == "degree"
    assert (entry.table_value, entry.computed_value) == ("999", rows[0].degree)
    assert not entry.allowlisted


def test_diff_rows_allowlist_consumption():
    rows = _rows()
    tampered = list(rows)
    tampered[0] = TableRow(
        rows[0].no, rows[0].variance, rows[0].ambient, rows[0].degrees,
        rows[0].dimension, "999", rows[0].h0_or_index, rows[0].sporadic,
    )
    entry = AllowlistEntry(
        table="table2_variance_0_4",
        row_key=rows[0].row_key,
        field="degree",
        table_value="999",
        computed_value=rows[0].degree,
        note="synthetic",
    )
    report = diff_rows("table2_variance_0_4", tampered, rows, allowlist=(entry,))
    assert report.ok
    assert report.matches_allowlist_exactly
    # an unused allowlist entry is reported
    spare = AllowlistEntry(
        table="table2_variance_0_4",
        row_key="P^99|7",
        field="degree",
        table_value="1",
        computed_value="2",
        note="never matches",
    )
    report = diff_rows(
        "table2_variance_0_4", tampered, rows, allowlist=(entry, spare)
    )
    assert report.ok
    assert not report.matches_allowlist_exactly
    assert len(report.unused_allowlist) == 1


def test_diff_rows_reports_presence_mismatches():
    rows = _rows()
    report = diff_rows("table2_variance_0_4", rows[:-1], rows, allowlist=())
    assert not report.ok
    assert any(e.field == "presence" for e in report.entries)


def test_render_markdown_has_header_row():
    text = render_markdown(_rows())
    lines = text.splitlines()
    assert lines[0].startswith("| no |")
    assert set(lines[1].replace("|", "").strip()) <= {"-", " "}


# -------------------------------------------------------------------- CLI


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_classify_text(capsys):
    code, out, _ = run_cli(capsys, ["classify", "-a", "1,1,2,3", "-d", "6"])
    assert code == 0
    assert "variance: 1" in out
    assert "combinatorially_smooth: True" in out


def test_cli_classify_json_shape(capsys):
    code, out, _ = run_cli(
        capsys, ["classify", "-a", "1,1,2,3", "-d", "6", "--json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["invariants"]["variance"] == 1
    assert payload["smoothness"]["ok"] is True


def test_cli_classify_explain_attaches_witness(capsys):
    code, out, _ = run_cli(
        capsys,
        ["classify", "-a", "1,1,1,1,1,6,10,15", "-d", "2,3,5,30", "--json",
         "--explain"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["smoothness"]["combinatorially_smooth"] is False
    assert payload["smoothness"]["reason"]


def test_cli_classify_require_smooth_exit(capsys):
    code, _, _ = run_cli(
        capsys,
        ["classify", "-a", "1,1,1,1,1,6,10,15", "-d", "2,3,5,30",
         "--require-smooth"],
    )
    assert code == 1


def test_cli_classify_usage_error(capsys):
    code, _, err = run_cli(capsys, ["classify", "-a", "1,banana", "-d", "6"])
    assert code == 2


def test_cli_enumerate_csv_and_golden(capsys):
    code, out, _ = run_cli(
        capsys, ["enumerate", "--variance", "2", "--format", "csv", "--golden"]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "no,variance,ambient,degrees,dimension,degree,h0_or_index,sporadic"
    assert len([l for l in lines if l and l[0].isdigit()]) == 7
    assert any(l.startswith("golden: OK") for l in lines)


def test_cli_enumerate_json(capsys):
    code, out, _ = run_cli(
        capsys, ["enumerate", "--variance", "1", "--format", "json", "--golden"]
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 3
    assert payload["golden"]["ok"] is True


def test_cli_enumerate_rejects_out_of_range(capsys):
    assert run_cli(capsys, ["enumerate", "--variance", "9"])[0] == 2
    assert (
        run_cli(
            capsys,
            ["enumerate", "--variance", "5", "--kind", "semiseries"],
        )[0]
        == 2
    )


def test_cli_sigma_counts(capsys):
    code, out, _ = run_cli(capsys, ["sigma", "--c", "2", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 11
    assert [row["h0_or_index"] for row in payload[:5]] == ["3", "2", "1", "1", "1"]


def test_cli_degree_one_lists_table_labels(capsys):
    code, out, _ = run_cli(
        capsys, ["degree-one", "--variance", "2", "--format", "csv"]
    )
    assert code == 0
    labels = [l.split(",")[0] for l in out.splitlines()[1:] if l]
    assert labels == ["1.1", "2.3"]


def test_cli_nef_default_map(capsys):
    code, out, _ = run_cli(
        capsys, ["nef", "--weights", "1,1,1,1,2,2,3", "--degrees", "4,6"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["map"] is not None


def test_cli_nef_missing_certificate_exits_nonzero(capsys):
    code, out, _ = run_cli(
        capsys,
        ["nef", "--weights", "1,1,1,1,1,6,10,15", "--degrees", "2,3,5,30",
         "--partition"],
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["partition"] is None


def test_cli_nef_minimal_morphism(capsys):
    code, out, _ = run_cli(
        capsys,
        ["nef", "--weights", "6,10,15", "--degrees", "30,30", "--minimal"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["minimal_morphism"]["classification"] == "minimal"


def test_cli_conjectures_smoke(capsys):
    code, out, _ = run_cli(
        capsys, ["conjectures", "--variance-cap", "1", "--expansions", "1"]
    )
    assert code == 0
    assert "degree-count bound violations: 0" in out
    assert "minimal-morphism failures: 0" in out


def test_cli_rejects_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_conjectures_deterministic_across_thread_counts(capsys, monkeypatch):
    argv = ["conjectures", "--variance-cap", "1", "--expansions", "1"]
    monkeypatch.setenv("WCI_THREADS", "1")
    code1, out1, _ = run_cli(capsys, argv)
    monkeypatch.setenv("WCI_THREADS", "2")
    code2, out2, _ = run_cli(capsys, argv)
    assert (code1, out1) == (code2, out2)
    assert code1 == 0
