#!/usr/bin/env python3
"""Run the elimination over a range of residue fields and tabulate verdicts.

    python3 scripts/sweep_primes.py --model x0_24 --primes 5 7 --degrees 1 2 3

Only the residue degree 3 cases at p = 3 (X0(32)) and p = 5 (X0(24)) carry the
argument; other fields are exploratory and FAIL rows are expected there.
"""

import argparse
import time

from torsion_obstruction.errors import ObstructionError
from torsion_obstruction.models import get_model
from torsion_obstruction.obstruction import run_obstruction


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="x0_32")
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    model = get_model(args.model)
    branch = "both" if len(model.branches) > 1 else None
    print("| p | n | candidates | verdict | seconds |")
    print("|---|---|---|---|---|")
    for p in args.primes:
        for n in args.degrees:
            t0 = time.perf_counter()
            try:
                report = run_obstruction(model, p, n, model.level, branch)
            except ObstructionError as exc:
                print(f"| {p} | {n} | - | skipped: {exc} | - |")
                continue
            dt = time.perf_counter() - t0
            if report.hasse_excluded:
                count, verdict = 0, "PASS (Hasse)"
            else:
                count = sum(len(b.graph.rows) for b in report.branches[:1])
                verdict = "PASS" if report.passed else "FAIL"
            print(f"| {p} | {n} | {count} | {verdict} | {dt:.2f} |")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
