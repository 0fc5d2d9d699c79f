"""Two-mode truncated Fock-space operators.

Basis state ``|n1, n2>`` (``0 <= n_k < N``) sits at index ``n1*N + n2``.
Generators are built from ``a|n> = sqrt(n)|n-1>`` with a per-mode length
scale ``L``: ``x = L (a + a^dag)/sqrt(2)``, ``p = (a - a^dag)/(i sqrt(2) L)``,
so ``[x, p] = i`` for every ``L`` (units hbar = mu = omega = 1).

Operators linear in the generators remember their coefficients. Products of
two such operators are formed in a space padded by two levels per mode and
then projected back, which reproduces the exact matrix elements of the
infinite-dimensional product on the retained block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.sparse as sp

HERMITIAN_TOL = 1e-12
MAX_LEVELS = 1000
PAD = 2

GENERATOR_NAMES = ("x1", "x2", "p1", "p2")


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SimUnits:
    """Dimensionless deformation strengths in oscillator units.

    ``eta_bar = eta/(hbar mu omega)``, ``theta_bar = theta mu omega/hbar``.
    The Bose-Einstein condition reads ``theta_bar == eta_bar``.
    """

    eta_bar: float = 0.0
    theta_bar: float = 0.0
    be_imposed: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.eta_bar) and np.isfinite(self.theta_bar)):
            raise ValueError("eta_bar and theta_bar must be finite")
        if self.eta_bar < 0 or self.theta_bar < 0:
            raise ValueError(f"eta_bar, theta_bar must be >= 0, got {self.eta_bar}, {self.theta_bar}")
        if self.be_imposed and self.theta_bar != self.eta_bar:
            raise ValueError("Bose-Einstein condition requires theta_bar == eta_bar")

    @classmethod
    def tied(cls, eta_bar: float) -> "SimUnits":
        return cls(eta_bar, eta_bar, True)

    @property
    def xi(self) -> float:
        return (1.0 + self.theta_bar * self.eta_bar / 4.0) ** -0.5


@dataclass(frozen=True)
class TruncationSpec:
    n_per_mode: int
    margin: int = 4
    length_scales: tuple = (1.0, 1.0)

    def __post_init__(self):
        if self.n_per_mode < 2:
            raise ValueError("need at least 2 Fock levels per mode")
        if self.n_per_mode > MAX_LEVELS:
            raise ResourceError(f"N = {self.n_per_mode} exceeds {MAX_LEVELS} levels per mode")
        if not 0 < self.margin < self.n_per_mode:
            raise ValueError(f"margin must satisfy 0 < m < N, got m={self.margin}")
        scales = tuple(float(s) for s in self.length_scales)
        if len(scales) != 2 or min(scales) <= 0:
            raise ValueError("length_scales must be two positive numbers")
        object.__setattr__(self, "length_scales", scales)

    @property
    def dim(self) -> int:
        return self.n_per_mode**2

    def with_levels(self, n: int) -> "TruncationSpec":
        return TruncationSpec(n, self.margin, self.length_scales)

    def with_scales(self, scales: Sequence[float]) -> "TruncationSpec":
        return TruncationSpec(self.n_per_mode, self.margin, tuple(scales))

    def interior(self) -> np.ndarray:
        """Indices of basis states with both occupations below ``N - margin``."""
        n, keep = self.n_per_mode, self.n_per_mode - self.margin
        return np.array([a * n + b for a in range(keep) for b in range(keep)])


def _single_mode(levels: int, scale: float):
    a = sp.diags(np.sqrt(np.arange(1, levels)), 1, format="csr", dtype=complex)
    ad = a.T.tocsr()
    x = (a + ad) * (scale / np.sqrt(2))
    p = (a - ad) * (1 / (1j * np.sqrt(2) * scale))
    return x, p


def _generators(levels: int, scales) -> tuple:
    eye = sp.identity(levels, dtype=complex, format="csr")
    x_a, p_a = _single_mode(levels, scales[0])
    x_b, p_b = _single_mode(levels, scales[1])
    return (
        sp.kron(x_a, eye, format="csr"),
        sp.kron(eye, x_b, format="csr"),
        sp.kron(p_a, eye, format="csr"),
        sp.kron(eye, p_b, format="csr"),
    )


@lru_cache(maxsize=32)
def padded_generators(spec: TruncationSpec) -> tuple:
    """Sparse generators on the padded space ``(N + 2)**2``."""
    return _generators(spec.n_per_mode + PAD, spec.length_scales)


@lru_cache(maxsize=32)
def retained_indices(spec: TruncationSpec) -> np.ndarray:
    n, m = spec.n_per_mode, spec.n_per_mode + PAD
    return np.array([a * m + b for a in range(n) for b in range(n)])


def compress(padded, spec: TruncationSpec) -> np.ndarray:
    idx = retained_indices(spec)
    block = padded[idx][:, idx]
    return block.toarray() if sp.issparse(block) else np.asarray(block)


def padded_linear(coeffs, spec: TruncationSpec):
    gens = padded_generators(spec)
    out = sp.csr_matrix(gens[0].shape, dtype=complex)
    for c, g in zip(coeffs, gens):
        if c:
            out = out + c * g
    return out


@lru_cache(maxsize=256)
def _dense_mode(levels: int, scale: float):
    x, p = _single_mode(levels, scale)
    return x.toarray(), p.toarray()


def apply_linear(coeffs, spec: TruncationSpec, padded_vector: np.ndarray) -> np.ndarray:
    """``sum_k coeffs[k] g_k`` applied to a padded-space vector, mode by mode."""
    m = spec.n_per_mode + PAD
    psi = padded_vector.reshape(m, m)
    x_a, p_a = _dense_mode(m, spec.length_scales[0])
    x_b, p_b = _dense_mode(m, spec.length_scales[1])
    out = np.zeros_like(psi, dtype=complex)
    for c, left, right in ((coeffs[0], x_a, None), (coeffs[1], None, x_b), (coeffs[2], p_a, None), (coeffs[3], None, p_b)):
        if c:
            out += c * (left @ psi if left is not None else psi @ right.T)
    return out.reshape(-1)


def embed(vector: np.ndarray, spec: TruncationSpec) -> np.ndarray:
    m = spec.n_per_mode + PAD
    out = np.zeros(m * m, dtype=complex)
    out[retained_indices(spec)] = vector
    return out


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense matrix on the truncated basis; ``linear`` holds generator coefficients."""

    entries: np.ndarray
    spec: TruncationSpec
    linear: np.ndarray | None = field(default=None)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (self.spec.dim, self.spec.dim):
            raise ValueError(f"expected a {self.spec.dim}x{self.spec.dim} matrix, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if self.linear is not None:
            lin = np.array(self.linear, dtype=complex)
            lin.setflags(write=False)
            object.__setattr__(self, "linear", lin)

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def antihermitian_norm(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    @property
    def is_hermitian(self) -> bool:
        return self.antihermitian_norm < HERMITIAN_TOL

    def _same_space(self, other: "OperatorMatrix"):
        if self.spec != other.spec:
            raise ValueError("operators live on different truncations")

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._same_space(other)
        lin = None if self.linear is None or other.linear is None else self.linear + other.linear
        return OperatorMatrix(self.entries + other.entries, self.spec, lin)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self + other * -1

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        lin = None if self.linear is None else self.linear * scalar
        return OperatorMatrix(self.entries * scalar, self.spec, lin)

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return product(self, other)


def linear_operator(coeffs: Sequence[complex], spec: TruncationSpec) -> OperatorMatrix:
    """``sum_k coeffs[k] * g_k`` over ``(x1, x2, p1, p2)``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    return OperatorMatrix(compress(padded_linear(coeffs, spec), spec), spec, coeffs)


def identity(spec: TruncationSpec) -> OperatorMatrix:
    return OperatorMatrix(np.eye(spec.dim), spec)


def product(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Matrix of ``a b``; exact on the retained block when both are linear."""
    a._same_space(b)
    if a.linear is not None and b.linear is not None:
        full = padded_linear(a.linear, a.spec) @ padded_linear(b.linear, b.spec)
        return OperatorMatrix(compress(full, a.spec), a.spec)
    return OperatorMatrix(a.entries @ b.entries, a.spec)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    return product(a, b) - product(b, a)


def quadratic_operator(form: np.ndarray, spec: TruncationSpec) -> OperatorMatrix:
    """``sum_ab form[a, b] g_a g_b`` with exact matrix elements on the retained block."""
    gens = padded_generators(spec)
    total = sp.csr_matrix(gens[0].shape, dtype=complex)
    for i in range(4):
        for j in range(4):
            if form[i, j]:
                total = total + form[i, j] * (gens[i] @ gens[j])
    return OperatorMatrix(compress(total, spec), spec)


@dataclass(frozen=True)
class PhaseOps:
    x1: OperatorMatrix
    x2: OperatorMatrix
    p1: OperatorMatrix
    p2: OperatorMatrix

    @property
    def spec(self) -> TruncationSpec:
        return self.x1.spec

    def as_tuple(self) -> tuple:
        return (self.x1, self.x2, self.p1, self.p2)


def build_phase_ops(spec: TruncationSpec) -> PhaseOps:
    return PhaseOps(*(linear_operator(np.eye(4)[k], spec) for k in range(4)))


def tilde_coefficients(eta_bar: float, theta_bar: float) -> np.ndarray:
    """Rows ``(tx1, tx2, tp1, tp2)`` over columns ``(x1, x2, p1, p2)``.

    Accepts any reals with ``1 + eta*theta/4 > 0`` so that finite-difference
    checks can step to negative strengths.
    """
    xi = (1.0 + theta_bar * eta_bar / 4.0) ** -0.5
    h, t = eta_bar / 2.0, theta_bar / 2.0
    return xi * np.array(
        [
            [1.0, 0.0, 0.0, -t],
            [0.0, 1.0, t, 0.0],
            [0.0, h, 1.0, 0.0],
            [-h, 0.0, 0.0, 1.0],
        ]
    )


def tilde_coefficients_derivative(eta_bar: float, theta_bar: float, d_eta: float, d_theta: float) -> np.ndarray:
    """Directional derivative of :func:`tilde_coefficients`."""
    xi = (1.0 + theta_bar * eta_bar / 4.0) ** -0.5
    d_xi = -0.5 * xi**3 * (theta_bar * d_eta + eta_bar * d_theta) / 4.0
    base = tilde_coefficients(eta_bar, theta_bar) / xi
    d_base = np.array(
        [
            [0.0, 0.0, 0.0, -d_theta / 2],
            [0.0, 0.0, d_theta / 2, 0.0],
            [0.0, d_eta / 2, 0.0, 0.0],
            [-d_eta / 2, 0.0, 0.0, 0.0],
        ]
    )
    return d_xi * base + xi * d_base


@dataclass(frozen=True)
class TildeOps:
    tx1: OperatorMatrix
    tx2: OperatorMatrix
    tp1: OperatorMatrix
    tp2: OperatorMatrix
    units: SimUnits
    coefficients: np.ndarray

    @property
    def spec(self) -> TruncationSpec:
        return self.tx1.spec

    def as_tuple(self) -> tuple:
        return (self.tx1, self.tx2, self.tp1, self.tp2)


def tilde_transform(ops: PhaseOps, units: SimUnits) -> TildeOps:
    coeffs = tilde_coefficients(units.eta_bar, units.theta_bar)
    built = [linear_operator(row, ops.spec) for row in coeffs]
    return TildeOps(*built, units=units, coefficients=coeffs)


def commutator_residual(a: OperatorMatrix, b: OperatorMatrix, target: complex = 0.0, spec: TruncationSpec | None = None) -> float:
    """``max |P([a, b] - target) P|`` over the interior band of ``spec``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    spec = spec or a.spec
    if spec.dim != a.dim:
        raise ValueError("projector spec does not match operator dimension")
    idx = spec.interior()
    block = commutator(a, b).entries[np.ix_(idx, idx)] - target * np.eye(len(idx))
    return float(np.max(np.abs(block), initial=0.0))


def polynomial_matrix(poly, spec: TruncationSpec, units: SimUnits) -> OperatorMatrix:
    """Numeric image of a symbolic operator polynomial at hbar = mu = omega = 1.

    Monomials are formed by plain products of truncated generators, so only
    the interior band (margin >= degree) is faithful.
    """
    values = {"hbar": 1.0, "mu": 1.0, "omega": 1.0, "eta": units.eta_bar, "theta": units.theta_bar}
    gens = [g.entries for g in build_phase_ops(spec).as_tuple()]
    out = np.zeros((spec.dim, spec.dim), dtype=complex)
    for mono, coeff in poly.terms.items():
        mat = np.eye(spec.dim, dtype=complex)
        for g, power in zip(gens, mono):
            for _ in range(power):
                mat = mat @ g
        out += coeff.evaluate(values) * mat
    return OperatorMatrix(out, spec)
