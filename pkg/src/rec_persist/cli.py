"""Command-line front end.

Subcommands: analytic (formula evaluation), simulate (Monte Carlo runs),
sweep (grid experiments with CSV/SVG output), oracle (exact
small-instance baselines), selftest (built-in consistency checks).

Exit codes: 0 success, 1 selftest or numerical failure, 2 usage or
parameter error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import analytic, oracle, sweep
from .errors import ParameterError, QuadratureError, SizeLimitError
from .model import LossSemantics, PlacementStrategy, RecParams, SystemParams
from .selftest import run_selftest
from .simulator import SimConfig, WorkloadClass, simulate

__all__ = ["main"]

_METHODS = {
    "sum": analytic.Method.EXACT_SUM,
    "integral": analytic.Method.INTEGRAL,
    "asymptotic": analytic.Method.ASYMPTOTIC,
    "beta-exact": analytic.Method.BETA_EXACT,
}

_SIM_CSV_COLUMNS = (
    "strategy", "p", "q", "r", "N", "D", "trials", "seed",
    "mean_empirical", "std_error", "min", "max", "semantics",
)


def _add_rec_flags(parser, required: bool = True) -> None:
    parser.add_argument("--p", type=int, required=required, help="data chunks")
    parser.add_argument("--q", type=int, required=required, help="parity chunks")
    parser.add_argument("--r", type=int, required=required,
                        help="replicas per chunk")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rec-persist",
        description=(
            "Expected data persistency of replicated erasure codes under "
            "random and symmetric placement."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser(
        "analytic", help="evaluate a persistency formula",
    )
    p_an.add_argument("--strategy", choices=["random", "symmetric"],
                      required=True)
    _add_rec_flags(p_an)
    p_an.add_argument("--nodes", type=int, required=True)
    p_an.add_argument("--docs", type=int, required=True)
    p_an.add_argument(
        "--method", choices=sorted(_METHODS), required=True,
        help="sum: finite survival sum (random only); integral: quadrature "
             "form; asymptotic: leading term; beta-exact: closed p=1 form",
    )
    p_an.add_argument("--tol", type=float,
                      default=analytic.DEFAULT_QUADRATURE_TOL,
                      help="relative quadrature tolerance")

    p_sim = sub.add_parser("simulate", help="run seeded Monte Carlo trials")
    p_sim.add_argument("--strategy", choices=["random", "symmetric"],
                       required=True)
    _add_rec_flags(p_sim, required=False)
    p_sim.add_argument("--nodes", type=int, required=True)
    p_sim.add_argument("--docs", type=int)
    p_sim.add_argument(
        "--class", dest="classes", action="append", metavar="P,Q,R,DOCS",
        help="workload class as four comma-separated integers; repeat for "
             "mixed workloads (cannot be combined with --p/--q/--r/--docs)",
    )
    p_sim.add_argument("--trials", type=int, default=500)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--semantics", choices=["multiset", "per-cluster"],
                       help="loss rule override (default depends on strategy)")

    p_sw = sub.add_parser(
        "sweep", help="simulate a node grid and emit CSV + SVG",
    )
    source = p_sw.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", metavar="PATH",
                        help="JSON sweep config (schema_version 1)")
    source.add_argument("--preset", choices=sorted(sweep.PRESETS),
                        help="built-in figure parameterization")
    p_sw.add_argument("--out", metavar="DIR", default=".",
                      help="output directory (default: current)")
    p_sw.add_argument("--trials", type=int,
                      help="override trials per grid point")
    p_sw.add_argument("--points", type=int,
                      help="truncate each node grid to its first K points")

    p_or = sub.add_parser(
        "oracle", help="exact small-instance baselines (rational arithmetic)",
    )
    p_or.add_argument(
        "--what",
        choices=["symmetric-exact", "brute-symmetric", "brute-random",
                 "group-poly"],
        required=True,
    )
    _add_rec_flags(p_or)
    p_or.add_argument("--nodes", type=int)
    p_or.add_argument("--docs", type=int)
    p_or.add_argument("--semantics", choices=["multiset", "per-cluster"],
                      default="per-cluster")

    p_st = sub.add_parser("selftest", help="run built-in consistency checks")
    p_st.add_argument("--level", choices=["quick", "full"], default="quick")

    return parser


def _cmd_analytic(args) -> int:
    rec = RecParams(args.p, args.q, args.r)
    system = SystemParams(args.nodes, args.docs)
    strategy = PlacementStrategy(args.strategy)
    method = _METHODS[args.method]
    if strategy is PlacementStrategy.RANDOM:
        result = analytic.expect_random(rec, system, method, tol=args.tol)
    else:
        result = analytic.expect_symmetric(rec, system, method, tol=args.tol)
    print(
        f"E[X] = {result.value!r}  "
        f"[{strategy.value} placement, method {result.method.value}]"
    )
    if result.error_bound is None:
        print("additive error bound: none (asymptotic leading term)")
    else:
        print(f"additive error bound: {result.error_bound!r}")
    bound = "none" if result.error_bound is None else repr(result.error_bound)
    print(
        "RESULT "
        f"strategy={strategy.value} method={args.method} "
        f"p={rec.p} q={rec.q} r={rec.r} nodes={system.nodes} "
        f"docs={system.docs} value={result.value!r} error_bound={bound}"
    )
    return 0


def _parse_class(text: str) -> WorkloadClass:
    parts = text.split(",")
    if len(parts) != 4:
        raise ParameterError(
            f"--class expects P,Q,R,DOCS (four integers), got {text!r}"
        )
    try:
        p, q, r, docs = (int(part) for part in parts)
    except ValueError:
        raise ParameterError(
            f"--class expects four integers, got {text!r}"
        ) from None
    return WorkloadClass(RecParams(p, q, r), docs)


def _sim_classes(args) -> tuple[WorkloadClass, ...]:
    single = [v for v in (args.p, args.q, args.r, args.docs) if v is not None]
    if args.classes:
        if single:
            raise ParameterError(
                "--class cannot be combined with --p/--q/--r/--docs"
            )
        return tuple(_parse_class(text) for text in args.classes)
    if len(single) != 4:
        raise ParameterError(
            "simulate needs either --p --q --r --docs or at least one --class"
        )
    return (WorkloadClass(RecParams(args.p, args.q, args.r), args.docs),)


def _join(values) -> str:
    return ";".join(str(v) for v in values)


def _cmd_simulate(args) -> int:
    classes = _sim_classes(args)
    semantics = LossSemantics(args.semantics) if args.semantics else None
    config = SimConfig(
        strategy=PlacementStrategy(args.strategy),
        classes=classes,
        nodes=args.nodes,
        trials=args.trials,
        master_seed=args.seed,
        semantics=semantics,
    )
    summary = simulate(config)
    print(
        f"mean E[X] = {summary.mean!r} +/- {summary.std_error!r} (std error), "
        f"trials={summary.trials}, min={summary.minimum}, "
        f"max={summary.maximum}"
    )
    if summary.out_of_theory:
        print(
            "note: no matching closed formula (mixed workload or symmetric "
            "preconditions unmet); simulation-only result"
        )
    row = (
        config.strategy.value,
        _join(c.rec.p for c in classes),
        _join(c.rec.q for c in classes),
        _join(c.rec.r for c in classes),
        str(config.nodes),
        _join(c.docs for c in classes),
        str(summary.trials),
        str(config.master_seed),
        repr(summary.mean),
        repr(summary.std_error),
        str(summary.minimum),
        str(summary.maximum),
        config.resolved_semantics.value,
    )
    print(",".join(_SIM_CSV_COLUMNS))
    print(",".join(row))
    return 0


def _cmd_sweep(args) -> int:
    if args.config is not None:
        specs = sweep.load_config(args.config)
    else:
        specs = [sweep.preset_spec(args.preset)]
    overrides = {}
    if args.trials is not None:
        if args.trials < 1:
            raise ParameterError(f"--trials must be >= 1, got {args.trials}")
        overrides["trials"] = args.trials
    if args.points is not None and args.points < 1:
        raise ParameterError(f"--points must be >= 1, got {args.points}")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for spec in specs:
        if args.points is not None:
            overrides["nodes"] = spec.nodes[: args.points]
        if overrides:
            spec = dataclasses.replace(spec, **overrides)
        rows = sweep.run_sweep(spec)
        csv_path = out_dir / f"{spec.name}.csv"
        svg_path = out_dir / f"{spec.name}.svg"
        sweep.rows_to_csv(rows, csv_path)
        sweep.rows_to_svg(spec, rows, svg_path)
        print(f"wrote {csv_path} and {svg_path} ({len(rows)} points)")
    return 0


def _cmd_oracle(args) -> int:
    rec = RecParams(args.p, args.q, args.r)
    semantics = LossSemantics(args.semantics)
    if args.what == "group-poly":
        poly = oracle.group_polynomial(rec, semantics)
        print(
            f"alive counts a_t for t = 0..{poly.degree} [{semantics.value}]:"
        )
        print(" ".join(str(c) for c in poly.coeffs))
        return 0
    if args.nodes is None:
        raise ParameterError(f"--nodes is required for --what {args.what}")
    if args.what == "brute-random":
        system = SystemParams(args.nodes, 1 if args.docs is None else args.docs)
        value = oracle.brute_force_random(rec, system)
        label = "exhaustive placement enumeration, random strategy"
    else:
        docs = args.docs
        if docs is None:
            docs = max(1, args.nodes // rec.fragments)
        system = SystemParams(args.nodes, docs)
        if args.what == "symmetric-exact":
            value = oracle.exact_symmetric_expectation(rec, system, semantics)
            label = f"group polynomial count, {semantics.value}"
        else:
            value = oracle.brute_force_symmetric(rec, system, semantics)
            label = f"exhaustive subset enumeration, {semantics.value}"
    print(f"E[X] = {value} = {float(value)!r}  [{label}]")
    return 0


def _cmd_selftest(args) -> int:
    results = run_selftest(level=args.level)
    for res in results:
        print(f"{'PASS' if res.ok else 'FAIL'} {res.name}: {res.detail}")
    failed = sum(1 for res in results if not res.ok)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


_COMMANDS = {
    "analytic": _cmd_analytic,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
    "selftest": _cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
