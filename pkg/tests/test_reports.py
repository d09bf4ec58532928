import json

from dynagrid.engines import CostLedger
from dynagrid.reports import (
    bench_csv,
    inputs_digest,
    ledger_to_csv,
    ledger_to_json,
    report_json,
    resolve_report_path,
)


def test_inputs_digest_is_order_insensitive_and_stable():
    d1 = inputs_digest(a=[[1, 2]], b=[[3]])
    d2 = inputs_digest(b=[[3]], a=[[1, 2]])
    assert d1 == d2
    assert d1 != inputs_digest(a=[[1, 2]], b=[[4]])
    assert len(d1) == 64


def test_report_json_is_key_sorted():
    text = report_json({"zebra": 1, "alpha": 2})
    assert text.index('"alpha"') < text.index('"zebra"')
    assert text.endswith("\n")


def test_ledger_csv_and_json_rows():
    ledger = CostLedger(weight_updates=4, queries=2, query_ns=500,
                        weight_update_ns=100)
    csv_text = ledger_to_csv(ledger)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "operation,count,total_ns"
    assert "weight_update,4,100" in lines
    assert "query,2,500" in lines

    rows = json.loads(ledger_to_json(ledger))
    by_op = {r["operation"]: r for r in rows}
    assert by_op["query"]["count"] == 2
    assert by_op["insertion"]["count"] == 0


def test_bench_csv_has_pinned_columns():
    row = {"engine": "naive", "kernel": "python", "n": 2, "n_alpha": 2,
           "n_beta": 2, "x": 3, "updates": 4, "queries": 4,
           "update_ns_total": 10, "query_ns_total": 20}
    text = bench_csv([row])
    assert text.splitlines()[0] == ("engine,kernel,n,n_alpha,n_beta,x,"
                                    "updates,queries,update_ns_total,query_ns_total")


def test_resolve_report_path(tmp_path, monkeypatch):
    absolute = tmp_path / "abs.json"
    assert resolve_report_path(str(absolute), None) == absolute
    monkeypatch.setenv("DYNAGRID_REPORT_DIR", str(tmp_path))
    assert resolve_report_path("rel.json", None) == tmp_path / "rel.json"
    assert resolve_report_path("rel.json", str(tmp_path / "flag")) == \
        tmp_path / "flag" / "rel.json"
