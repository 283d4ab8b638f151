"""Scenario files: parsing, validation and a canonical echo.

A scenario is a TOML document::

    mode = "sweep"                  # relax | solve | sweep | stress-profile | geometry-check

    [problem.nondimensional]        # or dimensional keys directly under [problem]
    alpha = 1.5
    xi = 0.1
    eta = 0.2
    omega_s = 0.1

    [solver]
    bracket = [0.2, 5.0]
    scan = 4000
    tol = 1e-12

    [sweep]
    from = 0.0
    to = 0.5
    count = 51

    [output]
    path = "sweep.csv"
    format = "csv"

Dimensional keys (any consistent unit system, e.g. SI): ``R_i``, ``R_o``
[m], ``mu``, ``kappa_f``, ``p_o`` [Pa], ``mu_s``, ``kappa_s`` [N/m], plus
the dimensionless ``omega_s``, ``omega_l`` and the boolean ``wet``.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from .errors import ConfigError, DomainError
from .sphere import NondimensionalProblem, SolverOptions, SphereProblem

MODES = ("relax", "solve", "sweep", "stress-profile", "geometry-check")
FORMATS = ("csv", "json")

NONDIM_KEYS = ("alpha", "xi", "eta", "eta_f", "p_hat_o", "omega_s", "omega_l", "wet")
DIM_KEYS = ("R_i", "R_o", "mu", "mu_s", "kappa_s", "kappa_f", "p_o", "omega_s", "omega_l", "wet")
SOLVER_KEYS = ("bracket", "scan", "tol", "ftol", "quad_tol", "quad_depth", "fd_step")
SWEEP_KEYS = ("from", "to", "count")
OUTPUT_KEYS = ("path", "format", "samples")
TOP_KEYS = ("mode", "problem", "solver", "sweep", "output")


@dataclass(frozen=True)
class SweepSpec:
    start: float
    stop: float
    count: int

    def grid(self):
        if self.count == 1:
            return [self.start]
        step = (self.stop - self.start) / (self.count - 1)
        pts = [self.start + i * step for i in range(self.count)]
        pts[-1] = self.stop
        return pts


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario with every default filled in."""

    mode: str = "relax"
    problem: Optional[NondimensionalProblem] = None
    dimensional: Optional[SphereProblem] = None
    options: SolverOptions = field(default_factory=SolverOptions)
    sweep: Optional[SweepSpec] = None
    samples: int = 101
    fd_step: float = 1e-4
    output_path: Optional[str] = None
    output_format: Optional[str] = None

    @property
    def format(self):
        if self.output_format is not None:
            return self.output_format
        return "csv" if self.mode in ("sweep", "stress-profile") else "json"

    def echo(self):
        """Nested dict that :func:`parse_config` maps back to this config."""
        out = {"mode": self.mode}
        if self.dimensional is not None:
            d = self.dimensional
            out["problem"] = {k: getattr(d, k) for k in DIM_KEYS}
        elif self.problem is not None:
            out["problem"] = {"nondimensional": self.problem.as_dict()}
        o = self.options
        out["solver"] = {"bracket": list(o.bracket), "scan": o.scan, "tol": o.xtol,
                         "ftol": o.ftol, "quad_tol": o.quad_tol, "quad_depth": o.quad_depth,
                         "fd_step": self.fd_step}
        if self.sweep is not None:
            out["sweep"] = {"from": self.sweep.start, "to": self.sweep.stop,
                            "count": self.sweep.count}
        output = {"format": self.format, "samples": self.samples}
        if self.output_path is not None:
            output["path"] = self.output_path
        out["output"] = output
        return out


# ---------------------------------------------------------------------------
# Value checkers; each error names the full key path.


def _number(path, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{path}: must be finite")
    return value


def _integer(path, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{path}: must be at least {minimum}, got {value}")
    return value


def _boolean(path, value):
    if not isinstance(value, bool):
        raise ConfigError(f"{path}: expected true or false, got {value!r}")
    return value


def _table(path, value):
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected a table")
    return value


def _reject_unknown(path, table, allowed):
    for key in table:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise ConfigError(f"{where}: unknown key")


def _params(path, table, keys):
    out = {}
    for key in keys:
        if key in table:
            conv = _boolean if key == "wet" else _number
            out[key] = conv(f"{path}.{key}", table[key])
    return out


# ---------------------------------------------------------------------------


def _parse_problem(doc):
    if "problem" not in doc:
        return None, None
    prob = _table("problem", doc["problem"])
    nd_table = prob.get("nondimensional")
    dim_part = {k: v for k, v in prob.items() if k != "nondimensional"}
    _reject_unknown("problem", dim_part, DIM_KEYS)
    if nd_table is not None and dim_part:
        raise ConfigError("problem: both a dimensional block ([problem] keys "
                          f"{sorted(dim_part)}) and [problem.nondimensional] are present; "
                          "give exactly one")
    if nd_table is None and not dim_part:
        raise ConfigError("problem: neither dimensional keys nor [problem.nondimensional] given")
    try:
        if nd_table is not None:
            nd_table = _table("problem.nondimensional", nd_table)
            _reject_unknown("problem.nondimensional", nd_table, NONDIM_KEYS)
            if "alpha" not in nd_table:
                raise ConfigError("problem.nondimensional.alpha: missing required key")
            return NondimensionalProblem(**_params("problem.nondimensional", nd_table,
                                                   NONDIM_KEYS)), None
        for key in ("R_i", "R_o", "mu"):
            if key not in dim_part:
                raise ConfigError(f"problem.{key}: missing required key")
        dim = SphereProblem(**_params("problem", dim_part, DIM_KEYS))
        return dim.nondimensional(), dim
    except DomainError as exc:
        raise ConfigError(f"problem: {exc}") from exc


def _parse_solver(doc):
    table = _table("solver", doc.get("solver", {}))
    _reject_unknown("solver", table, SOLVER_KEYS)
    kw = {}
    if "bracket" in table:
        b = table["bracket"]
        if not isinstance(b, list) or len(b) != 2:
            raise ConfigError("solver.bracket: expected [lo, hi]")
        kw["bracket"] = (_number("solver.bracket[0]", b[0]), _number("solver.bracket[1]", b[1]))
    if "scan" in table:
        kw["scan"] = _integer("solver.scan", table["scan"], 2)
    if "tol" in table:
        kw["xtol"] = _number("solver.tol", table["tol"])
    for key in ("ftol", "quad_tol"):
        if key in table:
            kw[key] = _number(f"solver.{key}", table[key])
    if "quad_depth" in table:
        kw["quad_depth"] = _integer("solver.quad_depth", table["quad_depth"], 1)
    fd_step = _number("solver.fd_step", table["fd_step"]) if "fd_step" in table else 1e-4
    if not fd_step > 0.0:
        raise ConfigError("solver.fd_step: must be positive")
    try:
        return SolverOptions(**kw), fd_step
    except DomainError as exc:
        raise ConfigError(f"solver: {exc}") from exc


def parse_config(text):
    """Parse and validate a scenario document.

    Raises
    ------
    ConfigError
        On malformed TOML, unknown keys, missing or non-numeric values, or a
        problem section with both or neither parameter block.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc
    return config_from_dict(doc)


def config_from_dict(doc):
    _reject_unknown("", doc, TOP_KEYS)
    mode = doc.get("mode", "relax")
    if mode not in MODES:
        raise ConfigError(f"mode: expected one of {', '.join(MODES)}, got {mode!r}")
    problem, dimensional = _parse_problem(doc)
    options, fd_step = _parse_solver(doc)

    sweep = None
    if "sweep" in doc:
        table = _table("sweep", doc["sweep"])
        _reject_unknown("sweep", table, SWEEP_KEYS)
        for key in SWEEP_KEYS:
            if key not in table:
                raise ConfigError(f"sweep.{key}: missing required key")
        sweep = SweepSpec(_number("sweep.from", table["from"]), _number("sweep.to", table["to"]),
                          _integer("sweep.count", table["count"], 1))

    output = _table("output", doc.get("output", {}))
    _reject_unknown("output", output, OUTPUT_KEYS)
    fmt = output.get("format")
    if fmt is not None and fmt not in FORMATS:
        raise ConfigError(f"output.format: expected csv or json, got {fmt!r}")
    path = output.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError("output.path: expected a string")
    samples = _integer("output.samples", output["samples"], 2) if "samples" in output else 101

    cfg = ScenarioConfig(mode=mode, problem=problem, dimensional=dimensional, options=options,
                         sweep=sweep, samples=samples, fd_step=fd_step, output_path=path,
                         output_format=fmt)
    validate(cfg)
    return cfg


def validate(cfg):
    """Mode-dependent requirements; raises :class:`ConfigError`."""
    if cfg.mode != "geometry-check" and cfg.problem is None:
        raise ConfigError(f"problem: required for mode {cfg.mode!r}")
    if cfg.mode == "sweep":
        if cfg.sweep is None:
            raise ConfigError("sweep: required for mode 'sweep'")
        if cfg.sweep.count < 2:
            raise ConfigError("sweep.count: must be at least 2 for mode 'sweep'")
    if cfg.samples < 2:
        raise ConfigError("output.samples: must be at least 2")
    return cfg


def dump_toml(echo):
    """Render :meth:`ScenarioConfig.echo` as TOML (floats at full precision)."""

    def scalar(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            return repr(v)
        if isinstance(v, str):
            return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
        if isinstance(v, (list, tuple)):
            return "[" + ", ".join(scalar(x) for x in v) + "]"
        raise TypeError(f"cannot render {v!r}")

    lines = []
    tables = []

    def emit(prefix, table):
        plain = [(k, v) for k, v in table.items() if not isinstance(v, dict)]
        if prefix and plain:
            lines.append(f"[{prefix}]")
        for k, v in plain:
            lines.append(f"{k} = {scalar(v)}")
        if prefix and plain:
            lines.append("")
        for k, v in table.items():
            if isinstance(v, dict):
                tables.append((f"{prefix}.{k}" if prefix else k, v))

    emit("", echo)
    if lines:
        lines.append("")
    while tables:
        prefix, table = tables.pop(0)
        emit(prefix, table)
    return "\n".join(lines).rstrip() + "\n"
