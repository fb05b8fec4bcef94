import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from wildram.cli import main
from wildram.scan import CSV_COLUMNS, ScanConfig, parse_family, run_scan, scan_record


def test_parse_family():
    fam = parse_family("2^(2k+1)*(2r+1);k=1..6;r=-50..49")
    vals = fam.values()
    assert len(vals) == 600
    assert 8 in vals and -2**13 * 99 in vals
    fam = parse_family("-1+4^(k)*(8r+3);k=2..3;r=0..1")
    assert fam.values() == [47, 175, 191, 703]


@pytest.mark.parametrize("bad", ["2^k*(r)", "2^(k)*(r);k=1..2", "x;k=1..2;r=1..2"])
def test_parse_family_rejects(bad):
    with pytest.raises(ValueError):
        parse_family(bad)


def test_families_deduplicate_range():
    cfg = ScanConfig(-10, 10, [parse_family("2^(2k+1)*(2r+1);k=1..1;r=-1..0")])
    assert cfg.values() == list(range(-10, 11))


def test_small_range_report():
    report = run_scan(ScanConfig(-10, 10))
    assert len(report.records) == 21
    assert report.ok
    assert [r.c for r in report.records] == list(range(-10, 11))
    by_c = {r.c: r for r in report.records}
    assert by_c[1].filtration == [8, 8, 4, 4, 2, 2, 1]
    assert by_c[8].filtration == [8, 8, 4, 4, 2, 2, 2, 2, 1]
    assert by_c[3].row_id == "D4/421/2"
    assert by_c[0].galois == "degenerate(0)"


def test_family_all_totally_ramified():
    report = run_scan(ScanConfig(1, 0, [parse_family("2^(2k+1)*(2r+1);k=1..6;r=-50..49")], filtration=False))
    assert len(report.records) == 600
    assert all((r.e, r.f, r.g) == (8, 1, 1) and r.agree for r in report.records)


def test_report_matches_schema():
    report = run_scan(ScanConfig(-30, 30))
    schema = json.loads(resources.files("wildram").joinpath("schema/scan_report.schema.json").read_text())
    jsonschema.validate(json.loads(report.to_json()), schema)


def test_csv_columns():
    text = run_scan(ScanConfig(-3, 3)).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 8


def test_deterministic_across_workers():
    a = run_scan(ScanConfig(-300, 300, jobs=1)).to_json()
    b = run_scan(ScanConfig(-300, 300, jobs=2)).to_json()
    assert a == b


def test_record_captures_errors(monkeypatch):
    import wildram.scan as scan

    def boom(c, precision=None):
        raise scan.WildramError("synthetic")

    monkeypatch.setattr(scan, "oracle_efg_with_precision", boom)
    rec = scan_record(5)
    assert not rec.agree and "synthetic" in rec.error


def test_cli_classify(capsys):
    assert main(["classify", "1", "--filtration"]) == 0
    out = capsys.readouterr().out
    assert "(8,1,1)" in out and "[8, 8, 4, 4, 2, 2, 1]" in out


def test_cli_classify_json(capsys):
    assert main(["classify", "-9", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["galois"] == "V4" and doc["oracle"]["triple"] == [4, 1, 1]
    assert main(["classify", "0", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["classifier"]["triple"] == [1, 1, 1]


def test_cli_classify_lattice(capsys):
    assert main(["classify", "2", "--lattice", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["lattice"]["nodes"]) == 10


def test_cli_errors_exit_nonzero(capsys):
    assert main(["classify", "3", "--filtration"]) == 2
    assert "NotTotallyRamified" in capsys.readouterr().err


def test_cli_scan_to_file(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["scan", "--from", "-5", "--to", "5", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)


def test_cli_scan_exit_code_on_discrepancy(monkeypatch, tmp_path):
    import wildram.scan as scan
    from wildram.triple import EfgTriple

    monkeypatch.setattr(scan, "oracle_efg_with_precision", lambda c, p=None: (EfgTriple(2, 1, 4), 64))
    assert main(["scan", "--from", "1", "--to", "2", "--out", str(tmp_path / "x.json"), "--no-filtration"]) == 1


def test_cli_dump_rows(capsys):
    assert main(["dump-rows", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["groups"]["D4"]["(2,2,2)"]) == 7
    assert main(["dump-rows", "--format", "markdown"]) == 0
    assert capsys.readouterr().out.startswith("| row |")
