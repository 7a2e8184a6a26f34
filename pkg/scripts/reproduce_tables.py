"""Rebuild the linear and nonlinear comparison tables.

Runs Gaussian elimination and the GA on the linear cases, and Newton, LM and
the GA on the nonlinear cases, then prints a compact table next to the
published values and writes the full CSV/JSON/Markdown reports.
"""
import argparse
from pathlib import Path

import numpy as np

from eqsolve import GaConfig
from eqsolve.bench import emit_report, run_case, suite


def fmt(x):
    return "(" + ", ".join(f"{v:.4f}" for v in x) + ")" if x else "-"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--out-dir", default="results/tables")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seeds = range(args.seeds)

    rows = []
    for kind, methods in (("linear", ["gauss", "ga"]), ("nonlinear", ["newton", "lm", "ga"])):
        print(f"\n== {kind} systems ==")
        for case in suite(kind):
            case_rows = run_case(case, methods, GaConfig(), seeds=seeds)
            rows += case_rows
            print(f"{case.id}")
            for ref in case.references:
                mark = "" if ref.consistent else "  [fails substitution]"
                print(f"  {'reference':8s} {fmt(ref.values)}  ({ref.source}){mark}")
            for m in methods:
                mrows = [r for r in case_rows if r.method == m]
                if m == "ga":
                    best = min(mrows, key=lambda r: r.residual_norms[0] if r.residual_norms else np.inf)
                    med = np.median([r.residual_norms[0] for r in mrows if r.residual_norms])
                    print(f"  {'ga':8s} {fmt(best.solutions[0] if best.solutions else None)}  "
                          f"best residual {best.residual_norms[0]:.2e}, median {med:.2e} over {len(mrows)} seeds")
                else:
                    r = mrows[0]
                    norm = r.residual_norms[0] if r.residual_norms else float("nan")
                    print(f"  {m:8s} {fmt(r.solutions[0] if r.solutions else None)}  residual {norm:.2e}"
                          f"{'' if r.converged else '  (not converged)'}")
    for fmt_name, ext in (("csv", "csv"), ("json", "json"), ("markdown", "md")):
        emit_report(rows, fmt_name, out / f"tables.{ext}")
    print(f"\nreports written to {out}")


if __name__ == "__main__":
    main()
