"""Command-line entry point and scenario runner.

Exit codes: 0 success, 1 other solver error, 2 configuration error,
3 no sign change in the root bracket, 4 I/O error.
"""

import argparse
import logging
import sys
import time
from dataclasses import dataclass, replace

from . import __version__
from .config import ScenarioConfig, SweepSpec, parse_config, validate
from .errors import BracketingError, ConfigError, ElastocapError
from .geometry import geometry_diagnostics
from .serialize import to_csv, to_json
from .sphere import pressure_sweep, relax, solve_stretch, stress_profile

log = logging.getLogger("elastocap")

EXIT_OK, EXIT_SOLVER, EXIT_CONFIG, EXIT_BRACKET, EXIT_IO = 0, 1, 2, 3, 4

SWEEP_COLUMNS = ("p_hat_o", "x", "lambda_o", "strain", "gamma0_over_mu_Ri", "e_c",
                 "p_f_over_mu", "residual")
SOLUTION_COLUMNS = ("p_hat_o", "x", "lambda_o", "residual", "gamma0_over_mu_Ri",
                    "sigma_i_over_mu", "e_c", "e_c_hat", "p_f_over_mu", "J0")
PROFILE_COLUMNS = ("R", "sigma_rr", "sigma_hoop", "pressure")
GEOMETRY_COLUMNS = ("fixture", "check", "residual")
GEOMETRY_TOL = 1e-6


@dataclass
class RunRecord:
    """Outcome of :func:`run`.

    ``payload`` is the exact text written.  ``wall_clock`` is logged but never
    part of the payload, so payloads are reproducible byte for byte.
    """

    config: dict
    version: str
    tolerances: dict
    wall_clock: float
    payload: str
    format: str


def _solution_row(sol):
    return (sol.p_hat_o, sol.x, sol.lambda_o, sol.residual, sol.gamma0, sol.sigma_i, sol.e_c,
            sol.e_c_hat, sol.p_f, sol.J0)


def _compute(cfg):
    """Return ``(columns, rows, extra)`` for the configured mode."""
    opts = cfg.options
    if cfg.mode in ("relax", "solve"):
        sol = relax(cfg.problem, opts) if cfg.mode == "relax" else solve_stretch(cfg.problem,
                                                                                 None, opts)
        return SOLUTION_COLUMNS, [_solution_row(sol)], {"roots": list(sol.roots)}
    if cfg.mode == "sweep":
        rows = pressure_sweep(cfg.problem, cfg.sweep.grid(), opts)
        data = [(r.p_hat_o, r.x, r.lambda_o, r.strain, r.gamma0, r.e_c, r.p_f, r.residual)
                for r in rows]
        return SWEEP_COLUMNS, data, {"lambda_o_star": rows[0].lambda_o - rows[0].strain}
    if cfg.mode == "stress-profile":
        prof = stress_profile(cfg.problem, None, cfg.samples, opts)
        return PROFILE_COLUMNS, prof.rows(), {"x": prof.x, "p_hat_o": prof.p_hat_o}
    rows = geometry_diagnostics(cfg.fd_step)
    return GEOMETRY_COLUMNS, rows, {"fd_step": cfg.fd_step, "tolerance": GEOMETRY_TOL,
                                    "all_pass": all(r[2] < GEOMETRY_TOL for r in rows)}


def render(cfg):
    """Payload text for ``cfg`` (pure: no files touched)."""
    columns, rows, extra = _compute(cfg)
    if cfg.format == "csv":
        return to_csv(columns, rows)
    echo = cfg.echo()
    # where the payload is written is not part of its content
    echo["output"].pop("path", None)
    doc = {
        "artifact": "elastocap",
        "version": __version__,
        "mode": cfg.mode,
        "config": echo,
        "result": extra,
        "columns": list(columns),
        "rows": [list(r) for r in rows],
    }
    return to_json(doc)


def _tolerances(cfg):
    o = cfg.options
    return {"xtol": o.xtol, "ftol": o.ftol, "quad_tol": o.quad_tol, "quad_depth": o.quad_depth,
            "bracket": list(o.bracket), "scan": o.scan, "fd_step": cfg.fd_step}


def run(cfg: ScenarioConfig, out=None):
    """Solve the scenario and write the payload.

    The payload goes to ``cfg.output_path`` when set, else to ``out`` (a text
    stream), else nowhere.  Solver and I/O errors propagate.
    """
    start = time.perf_counter()
    payload = render(cfg)
    elapsed = time.perf_counter() - start
    if cfg.output_path is not None:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    elif out is not None:
        out.write(payload)
    log.info("mode %s finished in %.3f s", cfg.mode, elapsed)
    return RunRecord(config=cfg.echo(), version=__version__, tolerances=_tolerances(cfg),
                     wall_clock=elapsed, payload=payload, format=cfg.format)


# ---------------------------------------------------------------------------
# argparse front end


def _bracket(text):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected lo,hi")
    return lo, hi


def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=default, help="scenario TOML file")
    parser.add_argument("--out", default=default, help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=default)
    parser.add_argument("--bracket", type=_bracket, default=default, metavar="LO,HI")
    parser.add_argument("--scan", type=int, default=default, metavar="N")
    parser.add_argument("--tol", type=float, default=default, metavar="TOL")
    parser.add_argument("-v", "--verbose", action="store_true",
                        default=argparse.SUPPRESS if suppress else False)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="elastocap",
        description="Equilibrium of a pressurized spherical cavity with surface eigenstrain.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        return p

    add("relax", "relaxed state at zero applied pressure")
    p = add("solve", "equilibrium at one applied pressure")
    p.add_argument("--p-hat-o", type=float, dest="p_hat_o", metavar="P")
    p = add("sweep", "strain against applied pressure")
    p.add_argument("--from", type=float, dest="sweep_from", metavar="P")
    p.add_argument("--to", type=float, dest="sweep_to", metavar="P")
    p.add_argument("--count", type=int, dest="sweep_count", metavar="N")
    p = add("stress-profile", "stress across the shell")
    p.add_argument("--samples", type=int, metavar="N")
    add("geometry-check", "curvature identity residuals for reference fixtures")
    return parser


def config_from_args(args):
    """Merge a config file (if any) with command-line overrides."""
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        cfg = parse_config(text)
    else:
        cfg = ScenarioConfig()
    mode = args.command or cfg.mode
    changes = {"mode": mode}
    if args.out is not None:
        changes["output_path"] = args.out
    if args.format is not None:
        changes["output_format"] = args.format
    opt = {}
    if args.bracket is not None:
        opt["bracket"] = args.bracket
    if args.scan is not None:
        opt["scan"] = args.scan
    if args.tol is not None:
        opt["xtol"] = args.tol
    if opt:
        try:
            changes["options"] = replace(cfg.options, **opt)
        except ElastocapError as exc:
            raise ConfigError(f"solver override: {exc}") from exc
    if getattr(args, "p_hat_o", None) is not None and cfg.problem is not None:
        changes["problem"] = cfg.problem.with_pressure(args.p_hat_o)
    if mode == "sweep":
        base = cfg.sweep
        start, stop, count = (getattr(args, k, None) for k in ("sweep_from", "sweep_to",
                                                               "sweep_count"))
        start = start if start is not None else (base.start if base else None)
        stop = stop if stop is not None else (base.stop if base else None)
        count = count if count is not None else (base.count if base else None)
        if None not in (start, stop, count):
            changes["sweep"] = SweepSpec(float(start), float(stop), int(count))
    if getattr(args, "samples", None) is not None:
        changes["samples"] = args.samples
    return validate(replace(cfg, **changes))


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(args)
        run(cfg, out=sys.stdout)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BracketingError as exc:
        print(f"solver error: {exc}\n{exc.scan_table()}", file=sys.stderr)
        return EXIT_BRACKET
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ElastocapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
