"""Run-report JSON and ledger CSV plumbing.

Reports are byte-deterministic for a fixed configuration: keys are
sorted, no timestamps are embedded, and wall-clock numbers stay out of
reports (they live in the separate ledger/bench exports).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from pathlib import Path

from dynagrid.engines import CostLedger


def inputs_digest(**named) -> str:
    payload = json.dumps(named, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def resolve_report_path(path: str, report_dir: str | None) -> Path:
    """Relative paths land in the report directory (flag or env override)."""
    p = Path(path)
    if p.is_absolute():
        return p
    base = report_dir or os.environ.get("DYNAGRID_REPORT_DIR") or "."
    return Path(base) / p


def write_report(path: Path, report: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report_json(report), encoding="utf-8")


def ledger_rows(ledger: CostLedger) -> list[tuple[str, int, int]]:
    return ledger.rows()


def ledger_to_csv(ledger: CostLedger) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["operation", "count", "total_ns"])
    for row in ledger.rows():
        writer.writerow(row)
    return buf.getvalue()


def ledger_to_json(ledger: CostLedger) -> str:
    payload = [{"operation": op, "count": count, "total_ns": ns}
               for op, count, ns in ledger.rows()]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


BENCH_COLUMNS = ["engine", "kernel", "n", "n_alpha", "n_beta", "x",
                 "updates", "queries", "update_ns_total", "query_ns_total"]


def bench_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
