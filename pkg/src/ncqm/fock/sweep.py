"""Parameter sweeps over (eta_bar, theta_bar) producing long-format rows."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ops import SimUnits, TruncationSpec, build_phase_ops, tilde_transform
from .spectra import (
    CONVERGENCE_TOL,
    eigenspectrum,
    hamiltonian_landau,
    hamiltonian_oscillator,
    landau_spec,
)
from .uncertainty import GaussianFamilySpec, minimize_uncertainty, trial_deviations

CSV_HEADER = ("eta_bar", "theta_bar", "N", "quantity", "value", "convergence_delta", "status")
TASKS = ("spectrum", "uncertainty")


@dataclass(frozen=True)
class Row:
    eta_bar: float
    theta_bar: float
    N: int
    quantity: str
    value: float
    convergence_delta: float
    status: str

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, name) for name in CSV_HEADER)


def build_hamiltonian(units: SimUnits, n: int, margin: int = 4, kind: str = "oscillator"):
    """Oscillator or Landau Hamiltonian; Landau runs use the magnetic-length basis."""
    if kind == "landau":
        spec = landau_spec(n, units.eta_bar, margin)
        return hamiltonian_landau(tilde_transform(build_phase_ops(spec), units))
    if kind == "oscillator":
        spec = TruncationSpec(n, margin)
        return hamiltonian_oscillator(tilde_transform(build_phase_ops(spec), units))
    raise ValueError(f"unknown Hamiltonian {kind!r}")


def spectrum_rows(units: SimUnits, n: int = 24, n_larger: int = 32, margin: int = 4, k: int = 6, kind: str = "oscillator") -> list[Row]:
    h = build_hamiltonian(units, n, margin, kind)
    big = build_hamiltonian(units, n_larger, margin, kind)
    result = eigenspectrum(h, k, big)
    return [
        Row(units.eta_bar, units.theta_bar, n, f"E{i}", float(e), float(d), "ok" if d < CONVERGENCE_TOL else "unconverged")
        for i, (e, d) in enumerate(zip(result.eigenvalues, result.convergence_delta))
    ]


def uncertainty_rows(units: SimUnits, n: int = 24, n_larger: int = 32, margin: int = 4) -> list[Row]:
    """Minimal symmetric deviations of the tilde position and momentum pairs."""
    tilde = tilde_transform(build_phase_ops(TruncationSpec(n, margin)), units)
    family = GaussianFamilySpec(n_per_mode=n, margin=margin)
    larger = GaussianFamilySpec(n_per_mode=n_larger, margin=margin)
    rows = []
    for name, a, b in (("dtx_min", tilde.tx1, tilde.tx2), ("dtp_min", tilde.tp1, tilde.tp2)):
        res = minimize_uncertainty(a, b, family)
        again = max(trial_deviations(a.linear, b.linear, larger, res.params))
        lo, hi = family.log_scale_bounds
        at_bound = any(math.isclose(p, lo) or math.isclose(p, hi) for p in res.params[:2])
        status = "ok"
        if res.delta_a * res.delta_b < res.bound - 1e-9:
            status = "robertson_violation"
        elif at_bound:
            status = "at_family_bound"
        rows.append(Row(units.eta_bar, units.theta_bar, n, name, res.objective, abs(res.objective - again), status))
    return rows


def sweep(grid: Iterable[Sequence[float]], task: str = "spectrum", *, n: int = 24, n_larger: int = 32, margin: int = 4, k: int = 1, kind: str = "oscillator", impose_be: bool = False) -> list[Row]:
    """Run ``task`` at every grid point; failures become ``error`` rows."""
    if task not in TASKS:
        raise ValueError(f"task must be one of {TASKS}, got {task!r}")
    rows: list[Row] = []
    for point in grid:
        eta, theta = float(point[0]), float(point[1])
        if impose_be:
            theta = eta
        try:
            units = SimUnits(eta, theta, impose_be)
            if task == "spectrum":
                rows += spectrum_rows(units, n, n_larger, margin, k, kind)
            else:
                rows += uncertainty_rows(units, n, n_larger, margin)
        except Exception as exc:  # per-point failure is data, not an abort
            rows.append(Row(eta, theta, n, "error", float("nan"), float("nan"), f"error: {exc}"))
    return rows


def parse_grid(eta_values: Sequence[float], theta_values: Sequence[float] | None = None, impose_be: bool = False) -> list[tuple[float, float]]:
    """Cartesian grid in row-major (eta outer) order; ``impose_be`` pairs theta with eta."""
    if impose_be or theta_values is None:
        return [(e, e if impose_be else 0.0) for e in eta_values]
    return [(e, t) for e in eta_values for t in theta_values]


__all__ = ["CSV_HEADER", "Row", "build_hamiltonian", "parse_grid", "spectrum_rows", "sweep", "uncertainty_rows"]
