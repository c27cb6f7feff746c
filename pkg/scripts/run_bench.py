#!/usr/bin/env python3
"""Benchmark the engine optimizations against each other on the fixtures.

Runs one configuration sweep per optimization axis (hyperplane ordering,
adjacency test, dimensional prefilter, vertex representation), writes one CSV
per sweep through the `bench` subcommand, and prints a compact summary of
time and peak memory per instance.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conedd.cli import main as cli_main

SWEEPS = {
    "ordering": "order=input,position,lexpos,lexrand:1,dynamic",
    "adjacency": "adjacency=comb,alg",
    "prefilter": "prefilter=off,basic,extended",
    "representation": "rep=full,inner",
}

VARIED_COLUMN = {
    "ordering": "order",
    "adjacency": "adjacency",
    "prefilter": "prefilter",
    "representation": "rep",
}


def summarize(csv_path: Path, varied: str) -> list[str]:
    lines = []
    with open(csv_path, newline="") as handle:
        for row in csv.DictReader(handle):
            if row["status"] != "ok":
                lines.append(f"  {row['instance']:<16} {row[varied]:<12} {row['status']}")
                continue
            lines.append(
                f"  {row['instance']:<16} {row[varied]:<12} "
                f"{float(row['time_ms']):>10.1f} ms  "
                f"{int(row['peak_mem_bytes']):>12,} B  "
                f"max|Vi|={row['max_vi']:>6}  rays={row['final_count']}"
            )
    return lines


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--fixtures",
        default=str(Path(__file__).resolve().parent.parent / "fixtures"),
        help="directory holding the fixture files",
    )
    parser.add_argument("--out-dir", default="bench_out", help="directory for the CSVs")
    parser.add_argument(
        "--instances",
        default="gieseking.cone,onetet.tri,s2xs1.tri,loop9.tri",
        help="comma-separated fixture names",
    )
    parser.add_argument(
        "--sweeps",
        default=",".join(SWEEPS),
        help=f"comma-separated subset of: {', '.join(SWEEPS)}",
    )
    args = parser.parse_args()

    fixtures = Path(args.fixtures)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    inputs = ",".join(str(fixtures / name) for name in args.instances.split(",") if name)

    worst = 0
    for sweep in [s for s in args.sweeps.split(",") if s]:
        if sweep not in SWEEPS:
            parser.error(f"unknown sweep {sweep!r}")
        out_csv = out_dir / f"{sweep}.csv"
        code = cli_main(["bench", "--input", inputs, "--matrix", SWEEPS[sweep], "--out", str(out_csv)])
        worst = max(worst, code)
        print(f"{sweep} ({SWEEPS[sweep]}) -> {out_csv}")
        print("\n".join(summarize(out_csv, VARIED_COLUMN[sweep])))
        print()
    return worst


if __name__ == "__main__":
    sys.exit(main())
