"""Command line: ``solve``, ``bench`` and ``trace`` subcommands.

Exit status: 0 success, 1 solver did not converge, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from ..errors import InvalidConfig, NonSquare, NotLinear, ParseError, SolverError
from ..expr import parse_system
from ..ga import GaConfig, GaResult
from ..lm import LmConfig
from ..newton import NewtonConfig
from ..report import Method
from ..solve import run_method
from .harness import report_row, run_case
from .output import FORMATS, emit_report, emit_trace, format_number
from .registry import SUITES, BenchmarkCase, Kind, suite

EXIT_OK, EXIT_NOT_CONVERGED, EXIT_USAGE = 0, 1, 2

_CONFIG_CLASSES = {"ga": GaConfig, "newton": NewtonConfig, "lm": LmConfig}


class UsageError(Exception):
    pass


def _convert(value: str, current):
    if isinstance(current, bool):
        if value.lower() in ("1", "true", "yes", "on"):
            return True
        if value.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {value!r}")
    if isinstance(current, int):
        return int(value)
    if "," in value:
        return tuple(float(v) for v in value.split(","))
    return float(value)


def parse_config_text(text: str, source: str = "<config>"):
    """Apply ``key = value`` lines to fresh GA, Newton and LM configs.

    A bare key updates every config that has the field; ``ga.``,
    ``newton.`` and ``lm.`` prefixes restrict it to one.
    """
    updates = {name: {} for name in _CONFIG_CLASSES}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        targets = list(_CONFIG_CLASSES)
        if "." in key:
            prefix, key = key.split(".", 1)
            if prefix not in _CONFIG_CLASSES:
                raise UsageError(f"{source}:{lineno}: unknown section {prefix!r}")
            targets = [prefix]
        hit = False
        for name in targets:
            defaults = _CONFIG_CLASSES[name]()
            if key in {f.name for f in dataclasses.fields(defaults)}:
                try:
                    updates[name][key] = _convert(value, getattr(defaults, key))
                except ValueError as exc:
                    raise UsageError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
                hit = True
        if not hit:
            raise UsageError(f"{source}:{lineno}: unknown setting {key!r}")
    try:
        return tuple(_CONFIG_CLASSES[name](**updates[name]) for name in ("ga", "newton", "lm"))
    except InvalidConfig as exc:
        raise UsageError(f"{source}: {exc}") from None


def _load_configs(path):
    if path is None:
        return GaConfig(), NewtonConfig(), LmConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from None
    return parse_config_text(text, str(path))


def _read_system(source, variables):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise UsageError(f"--system: cannot read {source}: {exc.strerror}") from None
    names = None if variables is None else [v.strip() for v in variables.split(",") if v.strip()]
    try:
        return parse_system(text, names), text
    except ParseError as exc:
        raise UsageError(f"--system {source}: {exc}") from None


def _parse_vector(text, flag):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None


def _run_single(args):
    system, text = _read_system(args.system, args.variables)
    ga_cfg, newton_cfg, lm_cfg = _load_configs(args.config)
    x0 = None if getattr(args, "x0", None) is None else _parse_vector(args.x0, "--x0")
    if x0 is not None and len(x0) != system.n:
        raise UsageError(f"--x0: expected {system.n} values for variables {list(system.variables)}")
    try:
        out = run_method(system, args.method, x0, ga_cfg, newton_cfg, lm_cfg, seed=args.seed)
    except (NotLinear, NonSquare) as exc:
        raise UsageError(f"method {args.method} cannot solve this system: {exc}") from None
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, system, text, EXIT_NOT_CONVERGED
    report = out.report if isinstance(out, GaResult) else out
    return report, system, text, (EXIT_OK if report.converged else EXIT_NOT_CONVERGED)


def _print_report(report, system):
    status = "converged" if report.converged else "not converged"
    print(f"method: {report.method.value}  ({status}, {report.stop_reason})")
    print(f"variables: {', '.join(system.variables)}")
    for x, norm in zip(report.solutions, report.residual_norms):
        print(f"solution: {'; '.join(format_number(v) for v in x)}   residual_norm: {norm:.3e}")
    print(f"iterations: {report.iterations}   elapsed_ms: {report.elapsed * 1e3:.3f}")
    if report.error:
        print(f"note: {report.error}")


def cmd_solve(args) -> int:
    report, system, text, code = _run_single(args)
    if report is None:
        return code
    _print_report(report, system)
    if args.out:
        case_id = "stdin" if args.system == "-" else Path(args.system).stem
        case = BenchmarkCase(case_id, text, Kind.LINEAR, (), variables=system.variables)
        emit_report([report_row(case, report, args.seed if report.method is Method.GA else None)],
                    args.format, args.out)
    return code


def cmd_trace(args) -> int:
    report, system, _, code = _run_single(args)
    if report is None:
        return code
    emit_trace(report, args.out)
    print(f"wrote {len(report.trace)} trace points to {args.out}")
    return code


def _methods_for(case, requested):
    if requested is None:
        return ["gauss", "ga"] if case.kind is Kind.LINEAR else ["newton", "lm", "ga"]
    # elimination only applies to linear systems
    return [m for m in requested if not (m == "gauss" and case.kind is not Kind.LINEAR)]


def cmd_bench(args) -> int:
    ga_cfg, newton_cfg, lm_cfg = _load_configs(args.config)
    requested = None
    if args.methods:
        requested = [m.strip() for m in args.methods.split(",") if m.strip()]
        bad = [m for m in requested if m not in {x.value for x in Method}]
        if bad:
            raise UsageError(f"--methods: unknown method(s) {bad}")
    if args.seeds < 1:
        raise UsageError("--seeds must be >= 1")
    seeds = [args.base_seed + i for i in range(args.seeds)]
    out_dir = Path(args.out_dir)
    trace_dir = out_dir / "traces"
    trace_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for case in suite(args.suite):
        case_rows = run_case(case, _methods_for(case, requested), ga_cfg, newton_cfg, lm_cfg, seeds)
        for r in case_rows:
            status = "ok " if r.converged else "-- "
            norm = f"{r.residual_norms[0]:.2e}" if r.residual_norms else "n/a"
            seed = "" if r.seed is None else f" seed={r.seed}"
            print(f"{status}{r.case:20s} {r.method:7s}{seed:9s} residual={norm} {r.note}".rstrip())
            if r.report is not None and r.report.trace:
                suffix = "" if r.seed is None else f"-seed{r.seed}"
                emit_trace(r.report, trace_dir / f"{r.case}-{r.method}{suffix}.csv")
        rows.extend(case_rows)
    ext = {"csv": "csv", "json": "json", "markdown": "md"}
    for fmt in FORMATS:
        emit_report(rows, fmt, out_dir / f"report.{ext[fmt]}", canonical=args.canonical)
    print(f"{len(rows)} rows written to {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqsolve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def single(p, methods):
        p.add_argument("--system", required=True, help="equation file, or - for stdin")
        p.add_argument("--method", required=True, choices=methods)
        p.add_argument("--x0", help="starting point for newton/lm, e.g. 5,2")
        p.add_argument("--seed", type=int, help="GA seed")
        p.add_argument("--config", help="key = value overrides for ga/newton/lm settings")
        p.add_argument("--variables", help="explicit variable order, e.g. x1,x2,x3")

    p = sub.add_parser("solve", help="solve one system")
    single(p, ["ga", "newton", "lm", "gauss"])
    p.add_argument("--out", help="write a report row to this file")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run the benchmark suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.add_argument("--methods", help="comma-separated subset of gauss,newton,lm,ga")
    p.add_argument("--seeds", type=int, default=10, help="GA runs per case")
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--out-dir", default="bench_out")
    p.add_argument("--config")
    p.add_argument("--canonical", action="store_true", help="zero the timing column for byte-stable output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("trace", help="write a convergence trace CSV")
    single(p, ["ga", "newton", "lm"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_trace)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(cli_main())
