#!/usr/bin/env python3
"""Write every table and graph for both models into an output directory.

    python3 scripts/reproduce_tables.py out/

Produces Markdown tables, edge lists, DOT files and JSON reports; the
Markdown and edge files are the ones compared against tests/golden/.
"""

import argparse
from pathlib import Path

from torsion_obstruction import cli

RUNS = {
    "x0_32_f27_points.md": ["enumerate", "--model", "x0_32"],
    "x0_32_f27_twists.md": ["twists", "--model", "x0_32"],
    "x0_32_f27_involutions.md": ["graph", "--model", "x0_32"],
    "x0_32_f27_graph_omega.txt": ["graph", "--model", "x0_32", "--branch", "omega", "--edges"],
    "x0_32_f27_graph_omega_prime.txt": ["graph", "--model", "x0_32", "--branch", "omega_prime", "--edges"],
    "x0_32_f27.dot": ["graph", "--model", "x0_32", "--branch", "both", "--format", "dot"],
    "x0_32_f27_report.json": ["verify", "--model", "x0_32", "--branch", "both", "--format", "json"],
    "x0_24_f125_points.md": ["enumerate", "--model", "x0_24"],
    "x0_24_f125_twists.md": ["twists", "--model", "x0_24"],
    "x0_24_f125_involutions.md": ["graph", "--model", "x0_24"],
    "x0_24_f125.dot": ["graph", "--model", "x0_24", "--format", "dot"],
    "x0_24_f125_report.json": ["verify", "--model", "x0_24", "--format", "json"],
    "x0_32_torsion.md": ["torsion", "--model", "x0_32"],
    "x0_24_torsion.md": ["torsion", "--model", "x0_24"],
    "x0_32_cusps.md": ["cusps", "--model", "x0_32"],
    "x0_24_cusps.md": ["cusps", "--model", "x0_24"],
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, argv in RUNS.items():
        code = cli.main(argv + ["--output", str(args.outdir / name)])
        print(f"{code}  {name}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
