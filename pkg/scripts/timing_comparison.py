"""Serial wall-clock comparison of the four methods on every benchmark case.

Absolute times depend on the machine; the point is the ordering (direct and
gradient methods are orders of magnitude faster than the GA).
"""
import argparse
import csv
import statistics
from pathlib import Path

from eqsolve import GaConfig
from eqsolve.bench import Kind, registry, run_case


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5, help="runs per deterministic method")
    ap.add_argument("--seeds", type=int, default=5, help="GA seeds per case")
    ap.add_argument("--out", default="results/timing.csv")
    args = ap.parse_args()

    table = []
    for case in registry():
        methods = ["gauss"] if case.kind is Kind.LINEAR else ["newton", "lm"]
        rows = []
        for _ in range(args.repeats):
            rows += run_case(case, methods)
        rows += run_case(case, ["ga"], GaConfig(), seeds=range(args.seeds))
        for m in methods + ["ga"]:
            times = [r.elapsed_ms for r in rows if r.method == m]
            table.append((case.id, m, statistics.median(times), len(times)))
            print(f"{case.id:20s} {m:7s} median {statistics.median(times):10.3f} ms  (n={len(times)})")

    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["case", "method", "median_ms", "runs"])
        w.writerows((c, m, f"{t:.3f}", n) for c, m, t, n in table)
    print(f"written to {path}")


if __name__ == "__main__":
    main()
