"""Noncommutative Hamiltonians, spectra and first-order shifts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .ops import (
    OperatorMatrix,
    SimUnits,
    TildeOps,
    TruncationSpec,
    quadratic_operator,
    tilde_coefficients,
    tilde_coefficients_derivative,
)

DEGENERACY_TOL = 1e-6
CONVERGENCE_TOL = 1e-6


def _oscillator_form(coeffs: np.ndarray) -> np.ndarray:
    return 0.5 * coeffs.T @ coeffs


def hamiltonian_oscillator(tilde: TildeOps) -> OperatorMatrix:
    """``(tp1^2 + tp2^2)/2 + (tx1^2 + tx2^2)/2``."""
    return quadratic_operator(_oscillator_form(tilde.coefficients), tilde.spec)


def hamiltonian_landau(tilde: TildeOps) -> OperatorMatrix:
    """``(tp1^2 + tp2^2)/2``; requires commuting positions (theta_bar = 0)."""
    if tilde.units.theta_bar != 0:
        raise ValueError(f"Landau Hamiltonian needs theta_bar = 0, got {tilde.units.theta_bar}")
    momenta = tilde.coefficients[2:]
    return quadratic_operator(0.5 * momenta.T @ momenta, tilde.spec)


def oscillator_at(spec: TruncationSpec, eta_bar: float, theta_bar: float) -> OperatorMatrix:
    """Oscillator Hamiltonian for arbitrary real strengths (no SimUnits validation)."""
    return quadratic_operator(_oscillator_form(tilde_coefficients(eta_bar, theta_bar)), spec)


def oscillator_perturbation(spec: TruncationSpec, units: SimUnits = SimUnits(), direction=(1.0, 1.0)) -> OperatorMatrix:
    """``dH/ds`` along ``(eta_bar, theta_bar) + s*direction``; default ties theta_bar to eta_bar."""
    t = tilde_coefficients(units.eta_bar, units.theta_bar)
    dt = tilde_coefficients_derivative(units.eta_bar, units.theta_bar, *direction)
    return quadratic_operator(0.5 * (dt.T @ t + t.T @ dt), spec)


def landau_spec(n_per_mode: int, eta_bar: float, margin: int = 4) -> TruncationSpec:
    """Fock basis whose width matches the magnetic length ``sqrt(2/eta_bar)``."""
    scale = float(np.sqrt(2.0 / eta_bar)) if eta_bar > 0 else 1.0
    return TruncationSpec(n_per_mode, margin, (scale, scale))


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    eigenvalues: np.ndarray
    convergence_delta: np.ndarray
    vectors: np.ndarray
    spec: TruncationSpec
    tolerance: float = CONVERGENCE_TOL

    @property
    def converged(self) -> np.ndarray:
        return self.convergence_delta < self.tolerance

    @property
    def groups(self) -> list[list[int]]:
        return degeneracy_groups(self.eigenvalues)

    def level_values(self, converged_only: bool = True) -> list[float]:
        """Mean of each degenerate group, grouping only converged eigenvalues by default."""
        keep = np.flatnonzero(self.converged) if converged_only else np.arange(len(self.eigenvalues))
        values = self.eigenvalues[keep]
        return [float(np.mean(values[g])) for g in degeneracy_groups(values)]


def degeneracy_groups(values: Sequence[float], tol: float = DEGENERACY_TOL) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and abs(v - values[groups[-1][0]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        j = int(np.argmax(np.abs(col) > np.abs(col).max() * (1 - 1e-9)))
        out[:, k] = col * (abs(col[j]) / col[j])
    return out


def _lowest(h: OperatorMatrix, k: int):
    if not h.is_hermitian:
        raise ValueError(f"Hamiltonian is not Hermitian (anti-Hermitian part {h.antihermitian_norm:.3g})")
    return scipy.linalg.eigh(h.entries, subset_by_index=[0, k - 1], driver="evr")


def embed_basis(vectors: np.ndarray, small: TruncationSpec, large: TruncationSpec) -> np.ndarray:
    """Map vectors on ``small`` into ``large`` (same length scales, more levels)."""
    if large.n_per_mode < small.n_per_mode or large.length_scales != small.length_scales:
        raise ValueError("larger truncation must extend the smaller one with the same basis")
    n, m = small.n_per_mode, large.n_per_mode
    idx = np.array([a * m + b for a in range(n) for b in range(n)])
    out = np.zeros((m * m,) + vectors.shape[1:], dtype=complex)
    out[idx] = vectors
    return out


def eigenspectrum(h: OperatorMatrix, k: int, larger: OperatorMatrix | None = None, tol: float = CONVERGENCE_TOL) -> SpectrumResult:
    """Lowest ``k`` eigenpairs with convergence deltas against ``larger``.

    ``larger`` is the same Hamiltonian on a bigger truncation. Each delta is
    the residual ``|H' v - E v|`` of the eigenvector carried into the larger
    space, which bounds the distance from ``E`` to the nearest eigenvalue of
    ``H'`` and is insensitive to degeneracies that grow with ``N``.
    Without ``larger`` every delta is ``nan`` (not assessed).
    """
    if not 1 <= k <= h.dim // 4:
        raise ValueError(f"k must lie in [1, D/4] = [1, {h.dim // 4}], got {k}")
    values, vectors = _lowest(h, k)
    if larger is None:
        deltas = np.full(k, np.nan)
    else:
        if not larger.is_hermitian:
            raise ValueError("larger-truncation Hamiltonian is not Hermitian")
        big = embed_basis(vectors, h.spec, larger.spec)
        deltas = np.linalg.norm(larger.entries @ big - big * values[None, :], axis=0)
    return SpectrumResult(values, deltas, _fix_phases(vectors), h.spec, tol)


def first_order_shift(unperturbed: SpectrumResult, perturbation: OperatorMatrix, level_group: Sequence[int], tol: float = DEGENERACY_TOL) -> list[float]:
    """Degenerate first-order slopes: eigenvalues of the perturbation inside the group."""
    group = list(level_group)
    values = unperturbed.eigenvalues[group]
    if np.ptp(values) > tol:
        raise ValueError(f"level group {group} is not degenerate within {tol}: spread {np.ptp(values):.3g}")
    basis = unperturbed.vectors[:, group]
    block = basis.conj().T @ perturbation.entries @ basis
    return [float(v) for v in np.linalg.eigvalsh(0.5 * (block + block.conj().T))]


def central_difference_slopes(build: Callable[[float], OperatorMatrix], level_group: Sequence[int], step: float = 1e-4) -> list[float]:
    """Central-difference slopes of a level group of ``build(s)`` at ``s = 0``.

    Branches crossing at ``s = 0`` reverse order, so the group is sorted
    ascending at ``+step`` and descending at ``-step`` before differencing.
    """
    group = list(level_group)
    k = max(group) + 1
    plus = np.sort(_lowest(build(step), k)[0][group])
    minus = np.sort(_lowest(build(-step), k)[0][group])[::-1]
    return [float(v) for v in (plus - minus) / (2 * step)]
