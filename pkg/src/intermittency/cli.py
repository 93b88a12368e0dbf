"""Command line interface.

Subcommands:

* ``experiment`` -- Monte-Carlo grid sweep; writes one CSV (and figure) per
  (scenario, ell, p0) into an output directory.
* ``trace``      -- per-period forecast trace for a single generated series.
* ``asymptotic`` -- closed-form obsolescence error limits, exact sums where
  available, and truncated simulation values.

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

import argparse
import sys
from pathlib import Path

from .asymptotics import (
    ObsolescenceSetup,
    asymptotic_cfe,
    asymptotic_cse,
    exact_les_sums,
    simulate_decay,
)
from .demand import DemandScenario, LogarithmicDist, ScenarioKind
from .forecasters import ForecasterKind, SmoothingParams
from . import harness

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

_SCENARIO_NAMES = {k.value: k for k in ScenarioKind}
_METHOD_NAMES = {k.value: k for k in ForecasterKind}


def _parse_scenarios(text: str):
    out = []
    for name in text.split(","):
        name = name.strip().lower()
        if name not in _SCENARIO_NAMES:
            raise ValueError(f"unknown scenario {name!r}; choose from {sorted(_SCENARIO_NAMES)}")
        out.append(_SCENARIO_NAMES[name])
    return tuple(out)


def _parse_methods(text: str):
    out = []
    for name in text.split(","):
        name = name.strip().lower()
        if name not in _METHOD_NAMES:
            raise ValueError(f"unknown method {name!r}; choose from {sorted(_METHOD_NAMES)}")
        out.append(_METHOD_NAMES[name])
    return tuple(out)


def _parse_floats(text: str):
    return tuple(float(v) for v in text.split(",") if v.strip())


_CONFIG_PARSERS = {
    "scenario": ("scenarios", _parse_scenarios),
    "scenarios": ("scenarios", _parse_scenarios),
    "ell": ("ell_values", _parse_floats),
    "p0": ("p0_values", _parse_floats),
    "alpha_grid": ("alpha_grid", _parse_floats),
    "beta_grid": ("beta_grid", _parse_floats),
    "methods": ("methods", _parse_methods),
    "runs": ("runs", int),
    "init_len": ("init_len", int),
    "eval_len": ("eval_len", int),
    "seed": ("seed", int),
}


def _experiment_config(args) -> harness.ExperimentConfig:
    fields = {}
    if args.config:
        for key, raw in harness.parse_config_file(args.config).items():
            if key not in _CONFIG_PARSERS:
                raise ValueError(f"unknown config key {key!r}")
            name, parse = _CONFIG_PARSERS[key]
            fields[name] = parse(raw)
    # explicit flags override file values
    overrides = {
        "scenarios": args.scenario and _parse_scenarios(args.scenario),
        "ell_values": args.ell and _parse_floats(args.ell),
        "p0_values": args.p0 and _parse_floats(args.p0),
        "alpha_grid": args.alpha_grid and _parse_floats(args.alpha_grid),
        "beta_grid": args.beta_grid and _parse_floats(args.beta_grid),
        "methods": args.methods and _parse_methods(args.methods),
        "runs": args.runs,
        "init_len": args.init_len,
        "eval_len": args.eval_len,
        "seed": args.seed,
    }
    fields.update({k: v for k, v in overrides.items() if v is not None})
    return harness.ExperimentConfig(**fields)


def _cmd_experiment(args) -> int:
    config = _experiment_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = harness.run_experiment(config, jobs=args.jobs)
    for table in tables:
        csv_path = out_dir / harness.table_filename(table)
        harness.emit_csv(table, csv_path)
        print(f"wrote {csv_path}")
        if not args.no_plot:
            from . import plots

            fig_path = csv_path.with_suffix(".png")
            plots.plot_table(table, fig_path)
            print(f"wrote {fig_path}")
    summary = harness.winner_summary(tables)
    print("winner summary (diagnostic, best grid value per method):")
    for kind, measures in summary.items():
        parts = " ".join(f"{m}={k.value.upper()}" for m, k in measures.items())
        print(f"  {kind.value}: {parts}")
    return EXIT_OK


def _cmd_trace(args) -> int:
    if args.ell is not None and args.fixed_size is not None:
        raise ValueError("--ell and --fixed-size are mutually exclusive")
    fixed = args.fixed_size
    if args.ell is None and fixed is None:
        fixed = 1
    kind = _parse_scenarios(args.scenario)[0]
    # sizes distribution is unused in fixed-size mode
    sizes = LogarithmicDist(args.ell if args.ell is not None else 0.9)
    scenario = DemandScenario(kind=kind, p0=args.p0, sizes=sizes, init_len=0,
                              eval_len=args.horizon)
    methods = _parse_methods(args.methods)
    params = SmoothingParams(args.alpha, args.beta)
    trace = harness.trace_forecasts(
        scenario, methods, params, args.seed,
        tsb_beta=args.tsb_beta, fixed_size=fixed,
    )
    path = harness.emit_csv(trace, args.out)
    print(f"wrote {path}")
    if not args.no_plot:
        from . import plots

        fig_path = path.with_suffix(".png")
        plots.plot_trace(trace, fig_path)
        print(f"wrote {fig_path}")
    return EXIT_OK


def _cmd_asymptotic(args) -> int:
    kind = _parse_methods(args.method)[0]
    setup = ObsolescenceSetup(kind=kind, f0=args.f0, beta=args.beta, tau_hat0=args.tau_hat0)
    cfe = asymptotic_cfe(setup)
    cse = asymptotic_cse(setup)
    print(f"method={kind.value.upper()} f0={setup.f0:g} tau_hat0={setup.tau_hat0:g} "
          f"beta={setup.beta:g} ell={setup.ell:g}")
    print(f"asymptotic CFE: {'divergent' if cfe == float('inf') else format(cfe, '.10g')}")
    print(f"asymptotic CSE: {cse:.10g}")
    if kind is ForecasterKind.LES:
        exact_cfe, exact_cse = exact_les_sums(setup, round_ell=True)
        print(f"exact finite sums (ell rounded to {round(setup.ell)}): "
              f"CFE {exact_cfe:.10g}, CSE {exact_cse:.10g}")
    trace = simulate_decay(setup, args.horizon)
    print(f"simulated horizon={args.horizon}: CFE {trace.cfe:.10g}, CSE {trace.cse:.10g}")
    if args.out:
        from . import plots

        path = Path(args.out)
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write("t,forecast\n")
                for t, v in enumerate(trace.forecasts):
                    fh.write(f"{t},{v:.17g}\n")
        except OSError as exc:
            raise OSError(f"cannot write csv to {path}: {exc}") from exc
        print(f"wrote {path}")
        fig_path = path.with_suffix(".png")
        plots.plot_decay(setup, trace, fig_path)
        print(f"wrote {fig_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intermittency",
        description="Intermittent-demand forecasting benchmark toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    exp = sub.add_parser("experiment", help="run the Monte-Carlo grid sweep")
    exp.add_argument("--config", help="flat key=value config file")
    exp.add_argument("--scenario", help="comma list: stationary,decreasing,sudden")
    exp.add_argument("--ell", help="comma list of size-distribution parameters")
    exp.add_argument("--p0", help="comma list of occurrence probabilities")
    exp.add_argument("--alpha-grid", help="comma list of alpha values")
    exp.add_argument("--beta-grid", help="comma list of beta values")
    exp.add_argument("--methods", help="comma list: ses,cr,sba,sy,levseg,tsb,hes,les")
    exp.add_argument("--runs", type=int)
    exp.add_argument("--init-len", type=int)
    exp.add_argument("--eval-len", type=int)
    exp.add_argument("--seed", type=int)
    exp.add_argument("--jobs", type=int, default=1, help="parallel table workers")
    exp.add_argument("--out", default="results", help="output directory")
    exp.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    exp.set_defaults(func=_cmd_experiment)

    tr = sub.add_parser("trace", help="per-period forecast trace")
    tr.add_argument("--scenario", default="sudden")
    tr.add_argument("--p0", type=float, default=0.25)
    tr.add_argument("--ell", type=float, help="logarithmic demand sizes")
    tr.add_argument("--fixed-size", type=int, default=None,
                    help="constant demand size (size 1 is the default when --ell is absent)")
    tr.add_argument("--methods", default="sba,tsb,hes,les")
    tr.add_argument("--alpha", type=float, default=0.1)
    tr.add_argument("--beta", type=float, default=0.1)
    tr.add_argument("--tsb-beta", type=float, default=0.02,
                    help="probability smoothing weight used by TSB only")
    tr.add_argument("--seed", type=int, default=1)
    tr.add_argument("--horizon", type=int, default=200)
    tr.add_argument("--out", default="trace.csv")
    tr.add_argument("--no-plot", action="store_true")
    tr.set_defaults(func=_cmd_trace)

    asy = sub.add_parser("asymptotic", help="obsolescence error report")
    asy.add_argument("--method", required=True, help="tsb, hes or les")
    asy.add_argument("--f0", type=float, default=1.0)
    asy.add_argument("--tau-hat0", type=float, default=1.0, dest="tau_hat0")
    asy.add_argument("--beta", type=float, default=0.1)
    asy.add_argument("--horizon", type=int, default=100_000)
    asy.add_argument("--out", help="optional decay trace CSV (figure alongside)")
    asy.set_defaults(func=_cmd_asymptotic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
