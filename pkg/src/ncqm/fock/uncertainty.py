"""Variances, Robertson bounds and minimal-uncertainty search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .ops import OperatorMatrix, TruncationSpec, apply_linear, embed, linear_operator

NORM_TOL = 1e-12
VARIANCE_FLOOR = -1e-14


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    spec: TruncationSpec

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.spec.dim,):
            raise ValueError(f"state must have {self.spec.dim} amplitudes, got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.spec)

    @classmethod
    def basis(cls, spec: TruncationSpec, n1: int = 0, n2: int = 0) -> "StateVector":
        amps = np.zeros(spec.dim, dtype=complex)
        amps[n1 * spec.n_per_mode + n2] = 1.0
        return cls(amps, spec)


def _check(state: StateVector, *ops: OperatorMatrix):
    if abs(state.norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {state.norm!r})")
    for op in ops:
        if op.spec != state.spec:
            raise ValueError("state and operator live on different truncations")
        if not op.is_hermitian:
            raise ValueError("observable is not Hermitian")


def _apply(op: OperatorMatrix, state: StateVector) -> np.ndarray:
    """``op|state>``; linear operators act on the padded space so nothing is cut off."""
    if op.linear is not None:
        return apply_linear(op.linear, op.spec, embed(state.amplitudes, state.spec))
    return op.entries @ state.amplitudes


def _bra(state: StateVector, op: OperatorMatrix) -> np.ndarray:
    return embed(state.amplitudes, state.spec) if op.linear is not None else state.amplitudes


def expectation(state: StateVector, op: OperatorMatrix) -> complex:
    return complex(np.vdot(_bra(state, op), _apply(op, state)))


def variance(state: StateVector, op: OperatorMatrix) -> float:
    """``<A^2> - <A>^2`` on a normalized state."""
    _check(state, op)
    image = _apply(op, state)
    mean = np.vdot(_bra(state, op), image).real
    var = float(np.vdot(image, image).real - mean**2) if op.linear is not None else float(
        np.vdot(state.amplitudes, op.entries @ image).real - mean**2
    )
    if var < VARIANCE_FLOOR:
        raise ArithmeticError(f"negative variance {var!r}")
    return max(var, 0.0)


def uncertainty_pair(state: StateVector, a: OperatorMatrix, b: OperatorMatrix) -> tuple[float, float, float]:
    """``(dA, dB, |<[A, B]>|/2)``."""
    _check(state, a, b)
    if (a.linear is None) != (b.linear is None):
        a_img, b_img = a.entries @ state.amplitudes, b.entries @ state.amplitudes
    else:
        a_img, b_img = _apply(a, state), _apply(b, state)
    bound = abs(2j * np.vdot(a_img, b_img).imag) / 2
    return float(np.sqrt(variance(state, a))), float(np.sqrt(variance(state, b))), float(bound)


def random_interior_state(spec: TruncationSpec, rng: np.random.Generator) -> StateVector:
    amps = np.zeros(spec.dim, dtype=complex)
    idx = spec.interior()
    amps[idx] = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
    return StateVector(amps, spec).normalized()


# Gaussian trial family ------------------------------------------------------

PARAM_NAMES = ("log_scale1", "log_scale2", "q1", "k1", "q2", "k2")


@dataclass(frozen=True)
class GaussianFamilySpec:
    """Product Gaussian states: per-mode squeeze (log width) and displacement.

    A trial state is the displaced vacuum of a Fock basis whose length
    scales are ``exp(log_scale)``; ``q``, ``k`` are the displacement's
    position and momentum in that basis.
    """

    n_per_mode: int = 24
    margin: int = 4
    log_scale_bounds: tuple = (-2.5, 2.5)
    displacement_bounds: tuple = (-1.0, 1.0)
    grid_points: int = 11
    step_floor: float = 1e-4

    def bounds(self) -> list[tuple[float, float]]:
        return [tuple(self.log_scale_bounds)] * 2 + [tuple(self.displacement_bounds)] * 4

    def is_degenerate(self) -> bool:
        return all(lo == hi for lo, hi in self.bounds())

    def trial_spec(self, params) -> TruncationSpec:
        return TruncationSpec(self.n_per_mode, self.margin, (float(np.exp(params[0])), float(np.exp(params[1]))))

    def trial_state(self, params) -> StateVector:
        spec = self.trial_spec(params)
        modes = [_coherent(self.n_per_mode, (params[2] + 1j * params[3]) / np.sqrt(2)),
                 _coherent(self.n_per_mode, (params[4] + 1j * params[5]) / np.sqrt(2))]
        return StateVector(np.kron(modes[0], modes[1]), spec).normalized()


def _coherent(levels: int, alpha: complex) -> np.ndarray:
    out = np.zeros(levels, dtype=complex)
    out[0] = 1.0
    for n in range(1, levels):
        out[n] = out[n - 1] * alpha / np.sqrt(n)
    return out / np.linalg.norm(out)


@dataclass(frozen=True, eq=False)
class MinimizationResult:
    state: StateVector
    delta_a: float
    delta_b: float
    bound: float
    params: tuple
    evaluations: int
    a: OperatorMatrix = field(repr=False)
    b: OperatorMatrix = field(repr=False)

    @property
    def objective(self) -> float:
        return max(self.delta_a, self.delta_b)


def _require_linear(op: OperatorMatrix, name: str) -> np.ndarray:
    if op.linear is None:
        raise ValueError(f"{name} must be linear in the phase-space generators")
    if np.max(np.abs(op.linear.imag)) > 0:
        raise ValueError(f"{name} must be a real combination of generators (Hermitian)")
    return op.linear


def trial_deviations(coeffs_a, coeffs_b, family: GaussianFamilySpec, params) -> tuple[float, float]:
    state = family.trial_state(params)
    vec = embed(state.amplitudes, state.spec)
    out = []
    for coeffs in (coeffs_a, coeffs_b):
        img = apply_linear(coeffs, state.spec, vec)
        mean = np.vdot(vec, img).real
        out.append(float(np.sqrt(max(np.vdot(img, img).real - mean**2, 0.0))))
    return out[0], out[1]


def evaluate_trial(coeffs_a, coeffs_b, family: GaussianFamilySpec, params):
    state = family.trial_state(params)
    a = linear_operator(coeffs_a, state.spec)
    b = linear_operator(coeffs_b, state.spec)
    da, db, bound = uncertainty_pair(state, a, b)
    return state, a, b, da, db, bound


def minimize_uncertainty(a: OperatorMatrix, b: OperatorMatrix, family: GaussianFamilySpec = GaussianFamilySpec()) -> MinimizationResult:
    """Minimize ``max(dA, dB)`` over the Gaussian family.

    Coarse ``grid_points``-per-axis scan over the two squeeze parameters at
    zero displacement, then a pattern search over all six parameters
    polling coordinate and pairwise-diagonal directions; the step halves on
    failure down to ``step_floor``. Diagonal polls are needed because the
    ``max`` objective has a ridge along which single-coordinate moves fail.
    """
    ca, cb = _require_linear(a, "A"), _require_linear(b, "B")
    if family.is_degenerate():
        raise ValueError("Gaussian family is degenerate: every parameter range is a single point")
    bounds = np.array(family.bounds())
    evaluations = 0
    cache: dict = {}

    def objective(params) -> float:
        nonlocal evaluations
        key = tuple(np.round(params, 12))
        if key not in cache:
            evaluations += 1
            cache[key] = max(trial_deviations(ca, cb, family, params))
        return cache[key]

    axes = [np.linspace(lo, hi, family.grid_points) for lo, hi in bounds[:2]]
    best = None
    for s1, s2 in itertools.product(*axes):
        params = np.array([s1, s2, 0.0, 0.0, 0.0, 0.0])
        val = objective(params)
        if best is None or val < best[0]:
            best = (val, params)
    value, params = best

    dim = len(params)
    directions = [np.eye(dim)[i] * s for i in range(dim) for s in (1, -1)]
    for i, j in itertools.combinations(range(dim), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            d = np.zeros(dim)
            d[i], d[j] = si, sj
            directions.append(d)
    step = float(np.max(np.diff(axes[0]))) / 2 if family.grid_points > 1 else 0.5
    while step >= family.step_floor:
        improved = False
        for d in directions:
            trial = np.clip(params + step * d, bounds[:, 0], bounds[:, 1])
            val = objective(trial)
            if val < value - 1e-15:
                value, params, improved = val, trial, True
                break
        if not improved:
            step /= 2

    state, a_best, b_best, da, db, bound = evaluate_trial(ca, cb, family, params)
    return MinimizationResult(state, da, db, bound, tuple(float(p) for p in params), evaluations, a_best, b_best)
