"""Convergence traces for the two benchmark systems.

Writes one CSV per (system, method) with the best GA fitness per generation
or the residual norm per Newton/LM iteration, ready for plotting.
"""
import argparse
from pathlib import Path

from eqsolve import GaConfig, ga_solve, lm_solve, newton_solve
from eqsolve.bench import emit_trace, get_case


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", default="results/traces")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for case_id in ("benchmark-linear", "benchmark-nonlinear"):
        case = get_case(case_id)
        s = case.system
        reports = {
            "ga": ga_solve(s, GaConfig(seed=args.seed)).report,
            "newton": newton_solve(s, case.default_x0),
            "lm": lm_solve(s, case.default_x0),
        }
        for name, rep in reports.items():
            path = out / f"{case_id}-{name}.csv"
            emit_trace(rep, path)
            first, last = rep.trace[0][1], rep.trace[-1][1]
            print(f"{case_id:20s} {name:6s} {len(rep.trace):4d} points  {first:.3e} -> {last:.3e}  "
                  f"({rep.stop_reason})")
    print(f"traces written to {out}")


if __name__ == "__main__":
    main()
