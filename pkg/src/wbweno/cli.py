"""Command-line front end.

    wbweno run --case sw-subcritical --scheme wb --order 3 --cells 100
    wbweno converge --case linear-smooth --scheme wb --weights linear --cells-list 100,200,400
    wbweno timing --case sw-mass --cells-list 200,400 --repeats 3
    wbweno list-cases | list-schemes

Every flag can also be given in a ``key=value`` config file (``--config``);
flags on the command line win. Exit codes: 0 success, 2 configuration error,
3 numerical abort.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .grid import convergence_order, l1_error
from .models import G_DEFAULT
from .schemes import NumericalError, SPLITTINGS, scheme_label
from .testcases import CASE_NAMES, get_case, make_scheme, reference_solution, simulate
from .time_integration import StepAbort, TimeConfig, parse_dt_rule

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

CLI_SCHEMES = {"weno": "standard", "wb": "wb", "wb1": "wb1", "wbwar": "wbwar", "wbmc": "wbmc"}
COMPONENT_NAMES = {1: ("u",), 2: ("h", "q")}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    case: str = "linear-smooth"
    scheme: str = "wb"
    order: int = 3
    cells: int | None = None
    weights: str = "nonlinear"
    splitting: str = "glf"
    singular: str | None = None
    dt: str = "cfl"
    cfl: float = 0.5
    tfinal: float | None = None
    g: float = G_DEFAULT
    out: str = "out"
    seed: int = 0
    extension: str = "exact"
    pert_center: float = -0.5
    reference: bool = False
    cells_list: str = ""
    repeats: int = 1
    schemes: str = ""

    def validate(self):
        if self.case not in CASE_NAMES:
            raise ConfigError(f"unknown case {self.case!r}")
        if self.scheme not in CLI_SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; expected one of {sorted(CLI_SCHEMES)}")
        if self.order not in (3, 5):
            raise ConfigError("order must be 3 or 5")
        if self.weights not in ("nonlinear", "linear"):
            raise ConfigError("weights must be nonlinear or linear")
        if self.splitting not in SPLITTINGS:
            raise ConfigError(f"splitting must be one of {SPLITTINGS}")
        if self.singular not in (None, "centered", "upwind"):
            raise ConfigError("singular must be centered or upwind")
        if self.cells is not None and self.cells < self.order + 2:
            raise ConfigError(f"need at least {self.order + 2} cells for order {self.order}")
        if self.tfinal is not None and not self.tfinal >= 0:
            raise ConfigError("tfinal must be non-negative")
        if not self.g > 0:
            raise ConfigError("g must be positive")
        try:
            parse_dt_rule(self.dt)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


_INT_KEYS = {"order", "cells", "seed", "repeats"}
_FLOAT_KEYS = {"cfl", "tfinal", "g", "pert_center"}
_BOOL_KEYS = {"reference"}


def _coerce(key, value):
    if value is None:
        return None
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {value!r}") from None
    if key in _BOOL_KEYS:
        if isinstance(value, bool):
            return value
        return str(value).strip().lower() in ("1", "true", "yes", "on")
    return value


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; dashes in keys are allowed."""
    out = {}
    known = set(RunConfig.__dataclass_fields__)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


# --------------------------------------------------------------------------
# CSV / report


def format_float(v: float) -> str:
    return repr(float(v))


def write_csv(path, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    rows = zip(*(np.asarray(columns[c], dtype=float) for c in names))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        w.writerow([format_float(v) for v in r])
    Path(path).write_text(buf.getvalue())


def read_csv(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        names = next(r)
        data = [[float(v) for v in row] for row in r]
    arr = np.array(data, dtype=float).reshape(-1, len(names))
    return {n: arr[:, j] for j, n in enumerate(names)}


def write_report(path, items: dict) -> None:
    lines = []
    for k, v in items.items():
        if isinstance(v, float):
            v = format_float(v)
        lines.append(f"{k}={v}")
    Path(path).write_text("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# commands


@dataclass
class RunReport:
    U: np.ndarray
    x: np.ndarray
    errors: np.ndarray | None
    wall_time: float
    steps: int
    mass_series: list = field(default_factory=list)
    mass_deviation: float | None = None
    meta: dict = field(default_factory=dict)


def _scheme_for(cfg: RunConfig, case, family=None):
    return make_scheme(case, CLI_SCHEMES[family or cfg.scheme], cfg.order, cfg.weights, cfg.splitting,
                       cfg.singular, cfg.extension)


def _time_for(cfg: RunConfig, case):
    rule, val = parse_dt_rule(cfg.dt)
    t_final = case.t_final if cfg.tfinal is None else cfg.tfinal
    return TimeConfig(t_final, cfg.cfl, rule, val)


def run_case(cfg: RunConfig, family=None, cells=None, write=True) -> RunReport:
    np.random.seed(cfg.seed)
    case = get_case(cfg.case, cfg.g, cfg.pert_center)
    scheme = _scheme_for(cfg, case, family)
    tc = _time_for(cfg, case)
    n = cells or cfg.cells or case.n_cells
    t0 = time.perf_counter()
    sim = simulate(case, scheme, n, tc)
    wall = time.perf_counter() - t0
    x = sim.grid.x
    exact = case.exact(x, tc.t_final) if case.exact is not None else None
    if exact is None and cfg.reference:
        exact = reference_solution(case, n, t_final=tc.t_final)
    errors = l1_error(sim.U, exact, sim.grid) if exact is not None else None
    meta = {
        "case": case.name,
        "scheme": scheme_label(scheme),
        "family": scheme.family,
        "order": cfg.order,
        "cells": n,
        "weights": cfg.weights,
        "splitting": scheme.splitting,
        "singular": scheme.singular_source,
        "extension": scheme.extension,
        "dt_rule": tc.describe(),
        "cfl": tc.cfl,
        "t_final": tc.t_final,
        "g": cfg.g,
        "seed": cfg.seed,
        "steps": sim.result.steps,
        "wall_time": wall,
    }
    rep = RunReport(sim.U, x, errors, wall, sim.result.steps, meta=meta)
    names = COMPONENT_NAMES[case.model.n_comp]
    if errors is not None:
        for nm, e in zip(names, errors):
            meta[f"l1_error_{nm}"] = float(e)
    if sim.mass is not None:
        rep.mass_series = sim.mass.series
        rep.mass_deviation = sim.mass.max_relative_deviation
        meta["mass_max_rel_deviation"] = rep.mass_deviation
    if write:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"{case.name}_{scheme_label(scheme)}_{n}"
        cols = {"x": x}
        for nm, comp in zip(names, sim.U):
            cols[nm] = comp
        if exact is not None:
            for nm, comp in zip(names, exact):
                cols[f"exact_{nm}"] = comp
        write_csv(out / f"{stem}.csv", cols)
        if rep.mass_series:
            write_csv(out / f"{stem}_mass.csv", {"step": np.arange(len(rep.mass_series)),
                                                 "mass": np.asarray(rep.mass_series)})
        write_report(out / f"{stem}_report.txt", meta)
    return rep


def _cells_list(cfg, default):
    if not cfg.cells_list:
        return default
    try:
        return [int(c) for c in cfg.cells_list.split(",") if c.strip()]
    except ValueError:
        raise ConfigError(f"bad cells list {cfg.cells_list!r}") from None


def convergence_suite(cfg: RunConfig, cells=None, families=None):
    case = get_case(cfg.case, cfg.g, cfg.pert_center)
    cells = cells or _cells_list(cfg, [100, 200, 400, 800])
    families = families or ([s.strip() for s in cfg.schemes.split(",") if s.strip()] or [cfg.scheme])
    rows = []
    for fam in families:
        errs = []
        for n in cells:
            rep = run_case(cfg, fam, n, write=False)
            if rep.errors is None:
                raise ConfigError(f"case {case.name} has no exact solution; pass reference=true")
            errs.append(rep.errors)
        errs = np.array(errs)
        orders = [convergence_order(errs[:, c], cells) for c in range(errs.shape[1])]
        label = scheme_label(_scheme_for(cfg, case, fam))
        for j, n in enumerate(cells):
            rows.append((label, n, errs[j], [o[j] for o in orders]))
    return rows


def timing_suite(cfg: RunConfig, cells=None, families=None, repeats=None):
    cells = cells or _cells_list(cfg, [100, 200, 400])
    families = families or ([s.strip() for s in cfg.schemes.split(",") if s.strip()] or list(CLI_SCHEMES))
    repeats = repeats or cfg.repeats
    case = get_case(cfg.case, cfg.g, cfg.pert_center)
    admissible = [f for f in families if not (f in ("wbwar", "wbmc") and case.model.n_comp != 2)]
    table = {}
    for n in cells:
        for fam in admissible:
            ts = [run_case(cfg, fam, n, write=False).wall_time for _ in range(repeats)]
            table[(fam, n)] = float(np.mean(ts))
    out = []
    for n in cells:
        base = table.get(("weno", n))
        for fam in admissible:
            ratio = table[(fam, n)] / base if base else float("nan")
            out.append((fam, n, table[(fam, n)], ratio))
    return out


def _fmt_order(o):
    if o is None:
        return "-"
    if isinstance(o, str):
        return o
    return f"{o:.3f}"


def build_parser():
    p = argparse.ArgumentParser(prog="wbweno", description="Well-balanced WENO finite-difference experiments")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--config")
        sp.add_argument("--case", choices=CASE_NAMES)
        sp.add_argument("--scheme", choices=sorted(CLI_SCHEMES))
        sp.add_argument("--order", type=int, choices=(3, 5))
        sp.add_argument("--cells", type=int)
        sp.add_argument("--weights", choices=("nonlinear", "linear"))
        sp.add_argument("--splitting", choices=SPLITTINGS)
        sp.add_argument("--singular", choices=("centered", "upwind"))
        sp.add_argument("--dt", help="cfl | dx53 | fixed:<dt>")
        sp.add_argument("--cfl", type=float)
        sp.add_argument("--tfinal", type=float)
        sp.add_argument("--g", type=float)
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--extension", choices=("exact", "numeric"))
        sp.add_argument("--pert-center", dest="pert_center", type=float)
        sp.add_argument("--reference", action="store_const", const=True, default=None,
                        help="measure errors against a cached fine-mesh solution when no exact one exists")

    common(sub.add_parser("run", help="run one case with one scheme"))
    c = sub.add_parser("converge", help="refinement ladder with L1 errors and orders")
    common(c)
    c.add_argument("--cells-list", dest="cells_list")
    c.add_argument("--schemes", help="comma separated scheme names")
    t = sub.add_parser("timing", help="wall-clock ratios against standard WENO")
    common(t)
    t.add_argument("--cells-list", dest="cells_list")
    t.add_argument("--schemes")
    t.add_argument("--repeats", type=int)
    sub.add_parser("list-cases")
    sub.add_parser("list-schemes")
    return p


def resolve_config(args) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for key in RunConfig.__dataclass_fields__:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = _coerce(key, v)
    try:
        return RunConfig(**values).validate()
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG

    if args.verb == "list-cases":
        for name in CASE_NAMES:
            case = get_case(name)
            print(f"{name:28s} {case.model.name:14s} [{case.domain[0]:g}, {case.domain[1]:g}] "
                  f"t={case.t_final:g}  {case.description}")
        return EXIT_OK
    if args.verb == "list-schemes":
        for cli_name, fam in CLI_SCHEMES.items():
            print(f"{cli_name:6s} {fam}")
        return EXIT_OK

    try:
        cfg = resolve_config(args)
        if args.verb == "run":
            rep = run_case(cfg)
            for k, v in rep.meta.items():
                print(f"{k}={format_float(v) if isinstance(v, float) else v}")
        elif args.verb == "converge":
            rows = convergence_suite(cfg)
            out = Path(cfg.out)
            out.mkdir(parents=True, exist_ok=True)
            ncomp = len(rows[0][2])
            names = COMPONENT_NAMES[ncomp]
            header = ["scheme", "cells"] + [f"{h}_{nm}" for nm in names for h in ("error", "order")]
            lines = [",".join(header)]
            for label, n, errs, orders in rows:
                cells_ = [label, str(n)]
                for e, o in zip(errs, orders):
                    cells_ += [format_float(e), _fmt_order(o)]
                lines.append(",".join(cells_))
            text = "\n".join(lines) + "\n"
            (out / f"{cfg.case}_convergence.csv").write_text(text)
            print(text, end="")
        elif args.verb == "timing":
            rows = timing_suite(cfg)
            out = Path(cfg.out)
            out.mkdir(parents=True, exist_ok=True)
            lines = ["scheme,cells,seconds,ratio_to_weno,threads"]
            lines += [f"{f},{n},{format_float(s)},{format_float(r)},1" for f, n, s, r in rows]
            text = "\n".join(lines) + "\n"
            (out / f"{cfg.case}_timing.csv").write_text(text)
            print(text, end="")
    except (ConfigError, KeyError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (StepAbort, NumericalError) as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
