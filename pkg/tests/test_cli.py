import json
import random
import shutil
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from league_ledger import (
    CountryCode,
    RankingSnapshot,
    UniversityEntry,
    load_store,
    rank_countries,
    score_all,
    top_n_filter,
)
from league_ledger.cli import main


@pytest.fixture(scope="module")
def schema():
    path = resources.files("league_ledger") / "data" / "report.schema.json"
    return json.loads(path.read_text(encoding="utf-8"))


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_rank_w_first_row(capsys, store_root):
    status, out, _ = run(capsys, "rank", "--store", store_root, "--source", "webometrics", "--edition", "2012-01", "--method", "W")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "position,code,country,count,score"
    assert lines[1] == "1,USA,United States of America,2883,18943854"


def test_rank_ar_first_row(capsys, store_root):
    status, out, _ = run(capsys, "rank", "--store", store_root, "--source", "webometrics", "--edition", "2012-01", "--method", "ar")
    assert status == 0
    assert out.splitlines()[1] == "1,SWE,Sweden,43,3487.88"


def test_rank_precision(capsys, store_root):
    _, out, _ = run(capsys, "rank", "--store", store_root, "--source", "webometrics", "--edition", "2012-01", "--method", "ar", "--precision", "4")
    assert out.splitlines()[1] == "1,SWE,Sweden,43,3487.8837"


def test_store_from_environment(capsys, store_root, monkeypatch):
    monkeypatch.setenv("LEAGUE_LEDGER_STORE", store_root)
    status, out, _ = run(capsys, "rank", "--source", "qs", "--edition", "2012-01")
    assert status == 0 and out.splitlines()[1].startswith("1,USA,")


def test_store_flag_overrides_environment(capsys, store_root, monkeypatch, tmp_path):
    monkeypatch.setenv("LEAGUE_LEDGER_STORE", str(tmp_path))
    status, _, _ = run(capsys, "rank", "--store", store_root, "--source", "qs", "--edition", "2012-01")
    assert status == 0


def _synthetic_store(root: Path, rng: random.Random, n=1000):
    codes = ["Sweden", "Norway", "Finland", "Denmark", "Iceland"]
    lines = ["rank,name,country"]
    for r in range(1, n + 1):
        lines.append(f"{r},U{r},{rng.choice(codes)}")
    (root / "wr").mkdir(parents=True)
    (root / "wr" / "2012-01.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_rank_top_n_uses_m_of_n(capsys, tmp_path):
    _synthetic_store(tmp_path, random.Random(11))
    status, out, _ = run(capsys, "rank", "--store", str(tmp_path), "--source", "wr", "--edition", "2012-01", "--top-n", "500", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["meta"]["m"] == 500
    snap = top_n_filter(load_store(tmp_path)["wr", "2012-01"], 500)
    expected = rank_countries(score_all(snap), "W")
    assert [(r["code"], r["count"], r["score"]) for r in doc["rows"]] == [
        (row.score.country.code, row.score.count, row.score.w) for row in expected.rows
    ]


def test_rank_missing_snapshot(capsys, store_root):
    status, out, err = run(capsys, "rank", "--store", store_root, "--source", "webometrics", "--edition", "2014-01")
    assert status == 2 and out == "" and "not found" in err


def test_rank_parse_failure(capsys, tmp_path):
    (tmp_path / "wr").mkdir()
    (tmp_path / "wr" / "2012-01.csv").write_text("rank,title\n1,x\n", encoding="utf-8")
    status, _, err = run(capsys, "rank", "--store", str(tmp_path), "--source", "wr", "--edition", "2012-01")
    assert status == 3 and "2012-01.csv" in err


def test_usage_errors(capsys, store_root, monkeypatch):
    monkeypatch.delenv("LEAGUE_LEDGER_STORE", raising=False)
    assert run(capsys, "rank", "--source", "qs", "--edition", "2012-01")[0] == 64
    assert run(capsys, "rank", "--store", store_root, "--source", "qs")[0] == 64
    assert run(capsys, "rank", "--store", store_root, "--source", "qs", "--edition", "2012-01", "--method", "median")[0] == 64
    assert run(capsys, "rank", "--store", store_root, "--source", "qs", "--edition", "2012-01", "--precision", "11")[0] == 64
    assert run(capsys, "rank", "--store", store_root, "--source", "qs", "--edition", "2012-01", "--top-n", "0")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "compare", "--store", store_root, "--source", "qs", "--edition", "2012-01")[0] == 64


def test_edition_can_be_written_out(capsys, store_root):
    status, out, _ = run(capsys, "rank", "--store", store_root, "--source", "webometrics", "--edition", "July 2013")
    assert status == 0


def test_diff_summary(capsys, store_root):
    status, out, _ = run(capsys, "diff", "--store", store_root, "--source", "webometrics", "--before", "2012-01", "--after", "2013-07")
    assert status == 0
    assert "# max_gain: Pakistan (PAK) +5" in out
    assert "# max_drop: Romania (ROU) -9" in out
    assert "ROU,Romania,24,33,-9" in out
    assert "PAK,Pakistan,40,35,5" in out


def test_diff_identical_editions(capsys, store_root):
    status, out, _ = run(capsys, "diff", "--store", store_root, "--source", "webometrics", "--before", "2013-01", "--after", "2013-01", "--format", "json")
    assert status == 0
    assert {r["delta"] for r in json.loads(out)["rows"]} == {0}


def test_diff_disjoint_countries(capsys, tmp_path):
    (tmp_path / "wr").mkdir()
    (tmp_path / "wr" / "2012-01.csv").write_text("rank,name,country\n1,A,Sweden\n", encoding="utf-8")
    (tmp_path / "wr" / "2012-07.csv").write_text("rank,name,country\n1,B,Norway\n", encoding="utf-8")
    status, out, _ = run(capsys, "diff", "--store", str(tmp_path), "--source", "wr", "--before", "2012-01", "--after", "2012-07")
    assert status == 4 and out == ""


def test_diff_missing_edition(capsys, store_root):
    status, _, _ = run(capsys, "diff", "--store", store_root, "--source", "qs", "--before", "2012-01", "--after", "2013-07")
    assert status == 2


def test_compare_pinned_similarity(capsys, store_root):
    status, out, _ = run(
        capsys, "compare", "--store", store_root, "--source", "qs", "--source", "webometrics",
        "--edition", "2012-01", "--top-n", "500", "--format", "json",
    )
    assert status == 0
    summary = json.loads(out)["summary"]
    assert summary["spearman_rho"] == pytest.approx(0.6345514950166113, abs=1e-12)
    assert summary["kendall_tau_b"] == pytest.approx(0.4610917537746806, abs=1e-12)
    assert summary["common_countries"] == 42


def test_compare_with_itself(capsys, store_root):
    status, out, _ = run(capsys, "compare", "--store", store_root, "--source", "qs", "--source", "qs", "--edition", "2012-01")
    assert status == 0
    assert "# spearman_rho: 1.000000000000" in out


def test_compare_insufficient_overlap(capsys, tmp_path):
    for src, country in (("a", "Sweden"), ("b", "Norway")):
        (tmp_path / src).mkdir()
        (tmp_path / src / "2012-01.csv").write_text(f"rank,name,country\n1,A,{country}\n2,B,Sweden\n", encoding="utf-8")
    status, _, err = run(capsys, "compare", "--store", str(tmp_path), "--source", "a", "--source", "b", "--edition", "2012-01")
    assert status == 5 and "share 1" in err


def test_compare_missing_source(capsys, store_root):
    status, _, _ = run(capsys, "compare", "--store", store_root, "--source", "qs", "--source", "the", "--edition", "2012-01")
    assert status == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["rank", "--source", "webometrics", "--edition", "2012-01"],
        ["rank", "--source", "webometrics", "--edition", "2013-07", "--method", "ar", "--top-n", "500"],
        ["diff", "--source", "webometrics", "--before", "2012-01", "--after", "2013-07"],
        ["compare", "--source", "qs", "--source", "webometrics", "--edition", "2012-01", "--top-n", "500"],
        ["validate"],
    ],
)
def test_json_output_validates_against_schema(capsys, store_root, schema, argv):
    status, out, _ = run(capsys, *argv, "--store", store_root, "--format", "json")
    assert status == 0
    jsonschema.validate(json.loads(out), schema)


def test_validate_clean_store(capsys, store_root):
    status, out, _ = run(capsys, "validate", "--store", store_root)
    assert status == 0
    assert "# status: ok" in out


def _copy_store(store_root, tmp_path):
    dest = tmp_path / "store"
    shutil.copytree(store_root, dest)
    return dest


def test_validate_reports_unmapped_name(capsys, store_root, tmp_path):
    root = _copy_store(store_root, tmp_path)
    qs = root / "qs" / "2012-01.csv"
    n_lines = len(qs.read_text(encoding="utf-8").splitlines())
    with open(qs, "a", encoding="utf-8") as fh:
        fh.write("500,Lost University,Atlantis\n")
    status, out, _ = run(capsys, "validate", "--store", str(root))
    assert status == 1
    assert f"qs/2012-01.csv line {n_lines + 1}: unmapped country 'Atlantis'" in out


def test_validate_reports_negative_rank(capsys, tmp_path):
    from league_ledger import parse_snapshot

    (tmp_path / "wr").mkdir()
    path = tmp_path / "wr" / "2012-01.csv"
    path.write_text("rank,name,country\n1,A,Sweden\n-3,B,Norway\n", encoding="utf-8")
    _, report = parse_snapshot(path.read_bytes(), "wr", "2012-01")
    assert report.rejected_rows == 1
    status, out, _ = run(capsys, "validate", "--store", str(tmp_path))
    assert status == 1
    for warning in report.warnings:
        assert f"wr/2012-01.csv {warning}" in out


def test_validate_flags_bad_files(capsys, tmp_path):
    (tmp_path / "wr").mkdir()
    (tmp_path / "wr" / "2012-01.csv").write_text("rank,title\n1,x\n", encoding="utf-8")
    (tmp_path / "wr" / "notes.txt").write_text("x", encoding="utf-8")
    status, out, _ = run(capsys, "validate", "--store", str(tmp_path))
    assert status == 1
    assert "missing column" in out and "notes.txt" in out


def test_out_file_written_atomically(capsys, store_root, tmp_path):
    dest = tmp_path / "rank.md"
    status, out, _ = run(capsys, "rank", "--store", store_root, "--source", "qs", "--edition", "2012-01", "--format", "markdown", "--out", str(dest))
    assert status == 0 and out == ""
    assert dest.read_text(encoding="utf-8").startswith("| position |")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["rank.md"]


def test_no_output_file_on_failure(capsys, store_root, tmp_path):
    dest = tmp_path / "rank.csv"
    status, _, _ = run(capsys, "rank", "--store", store_root, "--source", "qs", "--edition", "2019-01", "--out", str(dest))
    assert status == 2
    assert list(tmp_path.iterdir()) == []


@pytest.mark.parametrize("fmt", ["csv", "json", "markdown"])
def test_formats_agree_on_ranking_data(capsys, store_root, fmt):
    import csv as _csv
    import io

    base = ["rank", "--store", store_root, "--source", "webometrics", "--edition", "2012-01", "--method", "ar"]
    _, out_csv, _ = run(capsys, *base, "--format", "csv")
    reference = [(r["code"], int(r["count"]), r["score"]) for r in _csv.DictReader(io.StringIO(out_csv))]
    _, out, _ = run(capsys, *base, "--format", fmt)
    if fmt == "json":
        rows = [(r["code"], r["count"], f"{r['score']:.2f}") for r in json.loads(out)["rows"]]
    elif fmt == "markdown":
        rows = []
        for line in out.splitlines()[2:]:
            cells = [c.strip() for c in line.strip("|").split("|")]
            rows.append((cells[1], int(cells[3]), cells[4]))
    else:
        rows = reference
    assert rows == reference


def test_module_entry_point(store_root):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "league_ledger", "rank", "--store", store_root, "--source", "qs", "--edition", "2012-01"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.splitlines()[1].startswith("1,USA,")
