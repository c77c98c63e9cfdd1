#!/usr/bin/env python3
"""Rebuild every embedded reference table and print a one-line verdict each.

Exit status is the worst per-table exit code, so a nonzero status means some
unflagged cell moved outside its print tolerance.
"""

import sys

from bondtaylor.cli import main as cli_main
from bondtaylor.tables import TABLE_IDS, build_table


def main() -> int:
    worst = 0
    for table_id in TABLE_IDS:
        report = build_table(table_id)
        n_pass, n_flag, n_fail = report.counts()
        verdict = "ok" if report.passed else "MISMATCH"
        print(f"{table_id:16s} {verdict:8s} "
              f"({n_pass} pass, {n_flag} flagged, {n_fail} fail)")
        if not report.passed:
            worst = 3
    return worst


def dump(table_id: str) -> int:
    # full per-cell CSV for one table, same output as the CLI
    return cli_main(["table", "--id", table_id, "--format", "csv"])


if __name__ == "__main__":
    if len(sys.argv) > 1:
        raise SystemExit(dump(sys.argv[1]))
    raise SystemExit(main())
