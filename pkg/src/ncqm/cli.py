"""Command-line front end.

Exit codes: 0 success, 1 verification or convergence failure, 2 internal
error, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import output, scenario
from .fock import (
    CSV_HEADER,
    GaussianFamilySpec,
    SimUnits,
    StateVector,
    TruncationSpec,
    build_phase_ops,
    central_difference_slopes,
    eigenspectrum,
    first_order_shift,
    minimize_uncertainty,
    oscillator_at,
    oscillator_perturbation,
    sweep,
    tilde_transform,
    uncertainty_pair,
)
from .fock.ops import ResourceError as FockResourceError
from .fock.spectra import CONVERGENCE_TOL, degeneracy_groups
from .fock.sweep import Row, build_hamiltonian, parse_grid
from .weyl import (
    DomainError,
    ParseError,
    ResourceError,
    derive_be_condition,
    parse_binding,
    parse_operator_expression,
    render,
    verify_ghq_algebra,
)

EXIT_OK, EXIT_FAIL, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64
MAX_PARAM = 0.5
MAX_LEVELS = 64
SLOPE_STEP = 1e-4
SLOPE_RTOL = 1e-5
ROBERTSON_TOL = 1e-9
SATURATION_HEADER = ("state", "pair", "delta_a", "delta_b", "product", "bound", "saturation")


class UsageError(Exception):
    """Invalid command line, config file or parameter range."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    eta_bar: float = 0.0
    theta_bar: float = 0.0
    impose_be: bool = False
    n: int = 24
    n_larger: int = 32
    margin: int = 4
    k: int = 6
    format: str = "csv"
    out: str | None = None

    def validate(self) -> "RunConfig":
        cfg = replace(self, theta_bar=self.eta_bar) if self.impose_be else self
        for name in ("eta_bar", "theta_bar"):
            v = getattr(cfg, name)
            if not (np.isfinite(v) and 0.0 <= v <= MAX_PARAM):
                raise UsageError(f"{name} must lie in [0, {MAX_PARAM}], got {v}")
        if not 2 <= cfg.n < cfg.n_larger <= MAX_LEVELS:
            raise UsageError(f"need 2 <= n < n_larger <= {MAX_LEVELS}, got n={cfg.n}, n_larger={cfg.n_larger}")
        if not (1 <= cfg.margin and 2 * cfg.margin < cfg.n):
            raise UsageError(f"need 1 <= margin < n/2, got margin={cfg.margin}, n={cfg.n}")
        if not 1 <= cfg.k <= cfg.n**2 // 4:
            raise UsageError(f"k must lie in [1, n^2/4] = [1, {cfg.n**2 // 4}], got {cfg.k}")
        if cfg.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {cfg.format!r}")
        return cfg

    @property
    def units(self) -> SimUnits:
        return SimUnits(self.eta_bar, self.theta_bar, self.impose_be)


_CONFIG_TYPES = {f.name: f.type for f in fields(RunConfig)}
_CONFIG_TYPES.update({"hamiltonian": "str", "b_field": "float", "charge": "float", "mass": "float", "omega": "float"})


def _convert(key: str, raw: str):
    kind = _CONFIG_TYPES[key]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
        if kind == "bool":
            low = raw.strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
    except ValueError:
        raise UsageError(f"config key {key!r}: cannot read {raw!r} as {kind}") from None
    return raw.strip()


def read_config(path: str) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment, dashes in keys are allowed."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _convert(key, value)
    return out


def _settings(args: argparse.Namespace) -> dict:
    """Defaults < config file < explicit flags."""
    merged = read_config(args.config) if getattr(args, "config", None) else {}
    for key in _CONFIG_TYPES:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _run_config(settings: dict) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in settings.items() if k in known}).validate()


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _table(header: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "json":
        return output.to_json([dict(zip(header, r)) for r in rows])
    return output.to_csv(header, rows)


# subcommands ----------------------------------------------------------------


def cmd_verify_algebra(args) -> int:
    cfg_out = _settings(args).get("out")
    algebra = verify_ghq_algebra()
    derivation = derive_be_condition()
    lines = algebra.lines() + [""] + derivation.lines()
    ok = algebra.passed and derivation.passed
    lines.append("")
    lines.append("ALL PASS" if ok else "FAILURES PRESENT")
    _emit("\n".join(lines) + "\n", cfg_out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eval(args) -> int:
    bindings = {}
    for text in args.bind or ():
        name, value = parse_binding(text)
        bindings[name] = value
    poly = parse_operator_expression(args.expression, bindings)
    _emit(render(poly) + "\n", _settings(args).get("out"))
    return EXIT_OK


def _slope_rows(cfg: RunConfig, result) -> tuple[list[Row], bool]:
    """Perturbative vs finite-difference slopes for every level group present."""
    direction = (1.0, 1.0) if cfg.impose_be else (1.0, 0.0)
    spec = TruncationSpec(cfg.n, cfg.margin)
    v = oscillator_perturbation(spec, cfg.units, direction)
    rows, ok = [], True
    groups = degeneracy_groups(result.eigenvalues)
    if len(groups) > 1:
        groups = groups[:-1]  # the top group may be cut by k
    for group in groups:
        pt = first_order_shift(result, v, group)
        fd = central_difference_slopes(
            lambda s: oscillator_at(spec, cfg.eta_bar + s * direction[0], cfg.theta_bar + s * direction[1]),
            group,
            SLOPE_STEP,
        )
        for i, a, b in zip(group, sorted(pt), sorted(fd)):
            err = abs(a - b) / max(1.0, abs(b))
            good = err < SLOPE_RTOL
            ok &= good
            rows.append(Row(cfg.eta_bar, cfg.theta_bar, cfg.n, f"slope_E{i}", a, err, "ok" if good else "mismatch"))
            rows.append(Row(cfg.eta_bar, cfg.theta_bar, cfg.n, f"slope_fd_E{i}", b, err, "ok" if good else "mismatch"))
    return rows, ok


def cmd_spectrum(args) -> int:
    settings = _settings(args)
    cfg = _run_config(settings)
    kind = settings.get("hamiltonian", "oscillator")
    if kind not in ("oscillator", "landau"):
        raise UsageError(f"hamiltonian must be oscillator or landau, got {kind!r}")
    if kind == "landau" and cfg.theta_bar != 0:
        raise UsageError("the Landau Hamiltonian needs theta_bar = 0")
    if args.slopes and kind != "oscillator":
        raise UsageError("--slopes is available for the oscillator only")
    units = cfg.units
    h = build_hamiltonian(units, cfg.n, cfg.margin, kind)
    big = build_hamiltonian(units, cfg.n_larger, cfg.margin, kind)
    result = eigenspectrum(h, cfg.k, big)
    rows = [
        Row(units.eta_bar, units.theta_bar, cfg.n, f"E{i}", float(e), float(d), "ok" if d < CONVERGENCE_TOL else "unconverged")
        for i, (e, d) in enumerate(zip(result.eigenvalues, result.convergence_delta))
    ]
    ok = bool(np.all(result.converged))
    if args.slopes:
        extra, slopes_ok = _slope_rows(cfg, result)
        rows += extra
        ok &= slopes_ok
    _emit(_table(CSV_HEADER, [r.as_tuple() for r in rows], cfg.format), cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def _pair_row(state_name, pair_name, state, a, b):
    da, db, bound = uncertainty_pair(state, a, b)
    product = da * db
    saturation = bound / product if product > 0 else float("nan")
    return (state_name, pair_name, da, db, product, bound, saturation), product >= bound - ROBERTSON_TOL


def cmd_uncertainty(args) -> int:
    cfg = _run_config(_settings(args))
    units = cfg.units
    tilde = tilde_transform(build_phase_ops(TruncationSpec(cfg.n, cfg.margin)), units)
    family = GaussianFamilySpec(n_per_mode=cfg.n, margin=cfg.margin)
    rows, ok = [], True
    for name, a, b in (("tx1,tx2", tilde.tx1, tilde.tx2), ("tp1,tp2", tilde.tp1, tilde.tp2)):
        res = minimize_uncertainty(a, b, family)
        row, good = _pair_row("gaussian_min", name, res.state, res.a, res.b)
        rows.append(row)
        ok &= good
    h = build_hamiltonian(units, cfg.n, cfg.margin, "oscillator")
    ground = StateVector(eigenspectrum(h, 1).vectors[:, 0], h.spec).normalized()
    for name, a, b in (
        ("tx1,tx2", tilde.tx1, tilde.tx2),
        ("tp1,tp2", tilde.tp1, tilde.tp2),
        ("tx1,tp1", tilde.tx1, tilde.tp1),
        ("tx2,tp2", tilde.tx2, tilde.tp2),
    ):
        row, good = _pair_row("oscillator_ground", name, ground, a, b)
        rows.append(row)
        ok &= good
    _emit(_table(SATURATION_HEADER, rows, cfg.format), cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_constants(args) -> int:
    settings = _settings(args)
    if settings.get("omega") is None:
        raise UsageError("--omega is required: the position-position scale depends on the oscillator frequency")
    try:
        inputs = scenario.CosmicInputs.from_si(
            omega=settings["omega"],
            B_c=settings.get("b_field", scenario.INTERGALACTIC_FIELD.value),
            q=settings.get("charge"),
            mu=settings.get("mass"),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = scenario.constants_report(inputs)
    fmt = settings.get("format", "json")
    if fmt == "csv":
        rows = [(section, k, v, report["units"][k]) for section in ("inputs", "derived") for k, v in report[section].items()]
        text = output.to_csv(("section", "name", "value", "unit"), rows)
    elif fmt == "json":
        text = output.to_json(report)
    else:
        raise UsageError(f"format must be csv or json, got {fmt!r}")
    _emit(text, settings.get("out"))
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def cmd_sweep(args) -> int:
    settings = _settings(args)
    base = _run_config(settings)
    eta_values = _float_list(args.eta_grid) if args.eta_grid else [base.eta_bar]
    theta_values = _float_list(args.theta_grid) if args.theta_grid else [base.theta_bar]
    grid = parse_grid(eta_values, theta_values, base.impose_be)
    for eta, theta in grid:
        replace(base, eta_bar=eta, theta_bar=theta).validate()
    task = args.task
    kind = settings.get("hamiltonian", "oscillator")
    k = base.k if settings.get("k") is not None else 1
    rows = sweep(grid, task, n=base.n, n_larger=base.n_larger, margin=base.margin, k=k, kind=kind, impose_be=base.impose_be)
    _emit(_table(CSV_HEADER, [r.as_tuple() for r in rows], base.format), base.out)
    failed = {(r.eta_bar, r.theta_bar) for r in rows if r.status.startswith("error")}
    return EXIT_FAIL if grid and len(failed) == len(grid) else EXIT_OK


# parser ---------------------------------------------------------------------


def _shared(p: argparse.ArgumentParser, numeric: bool = True):
    if numeric:
        p.add_argument("--eta-bar", dest="eta_bar", type=float, help="momentum deformation in oscillator units")
        p.add_argument("--theta-bar", dest="theta_bar", type=float, help="position deformation in oscillator units")
        p.add_argument("--impose-be", dest="impose_be", action="store_true", default=None, help="tie theta_bar to eta_bar")
        p.add_argument("--n", type=int, help="Fock levels per mode (default 24)")
        p.add_argument("--n-larger", dest="n_larger", type=int, help="levels for the convergence check (default 32)")
        p.add_argument("--margin", type=int, help="boundary band excluded from residuals (default 4)")
        p.add_argument("--k", type=int, help="number of eigenvalues (default 6)")
    p.add_argument("--format", choices=("csv", "json"), help="output format")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--config", help="key=value file; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncqm", description="Deformed Heisenberg algebra: exact checks and truncated Fock numerics.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("verify-algebra", help="exact check of the deformed algebra and the Bose condition")
    _shared(p, numeric=False)
    p.set_defaults(func=cmd_verify_algebra)

    p = sub.add_parser("eval", help="normal-order an operator expression")
    p.add_argument("expression")
    p.add_argument("--bind", action="append", metavar="NAME=EXPR", help="substitute a parameter, e.g. theta=eta/(mu*omega)^2")
    _shared(p, numeric=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("spectrum", help="lowest eigenvalues with convergence deltas")
    _shared(p)
    p.add_argument("--hamiltonian", choices=("oscillator", "landau"))
    p.add_argument("--slopes", action="store_true", help="first-order slopes vs central differences")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("uncertainty", help="minimal deviations and Robertson saturation")
    _shared(p)
    p.set_defaults(func=cmd_uncertainty)

    p = sub.add_parser("constants", help="SI scales for a physical scenario")
    p.add_argument("--b-field", dest="b_field", type=float, metavar="TESLA")
    p.add_argument("--charge", type=float, metavar="C")
    p.add_argument("--mass", type=float, metavar="KG")
    p.add_argument("--omega", type=float, metavar="HZ", help="angular frequency in s^-1 (required)")
    _shared(p, numeric=False)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sweep", help="long-format CSV over a parameter grid")
    _shared(p)
    p.add_argument("--task", choices=("spectrum", "uncertainty"), default="spectrum")
    p.add_argument("--hamiltonian", choices=("oscillator", "landau"))
    p.add_argument("--eta-grid", dest="eta_grid", help="comma-separated eta_bar values")
    p.add_argument("--theta-grid", dest="theta_grid", help="comma-separated theta_bar values")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error:\n{exc.caret()}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError, ResourceError, FockResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - contract: internal errors map to exit 2
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
