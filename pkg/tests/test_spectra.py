import numpy as np
import pytest

from ncqm.fock import (
    SimUnits,
    TruncationSpec,
    build_phase_ops,
    central_difference_slopes,
    eigenspectrum,
    first_order_shift,
    hamiltonian_landau,
    hamiltonian_oscillator,
    landau_spec,
    oscillator_at,
    oscillator_perturbation,
    tilde_transform,
)
from ncqm.fock.ops import tilde_coefficients
from ncqm.fock.spectra import degeneracy_groups

J = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])


def normal_mode_levels(form, count):
    """Oracle: quadratic H = z^T M z / 2 with [z_a, z_b] = i J_ab.

    Normal-mode frequencies are the moduli of the eigenvalues of ``J M``;
    levels are sums ``w_k (n_k + 1/2)``.
    """
    freqs = np.sort(np.abs(np.linalg.eigvals(J @ form).imag))[::2]
    freqs = freqs[freqs > 1e-12]
    levels = sorted(
        sum(w * (n + 0.5) for w, n in zip(freqs, ns))
        for ns in np.ndindex(*(12,) * len(freqs))
    )
    return np.array(levels[:count])


def oscillator(units, n=20, margin=4):
    return hamiltonian_oscillator(tilde_transform(build_phase_ops(TruncationSpec(n, margin)), units))


def test_commutative_oscillator_levels():
    result = eigenspectrum(oscillator(SimUnits()), 6, oscillator(SimUnits(), 24))
    assert np.allclose(result.eigenvalues, [1, 2, 2, 3, 3, 3], atol=1e-12)
    assert np.all(result.converged)
    assert result.level_values() == pytest.approx([1, 2, 3], abs=1e-12)


@pytest.mark.parametrize("eta, theta", [(0.1, 0.1), (0.2, 0.0), (0.05, 0.3), (0.5, 0.5)])
def test_oscillator_matches_normal_modes(eta, theta):
    t = tilde_coefficients(eta, theta)
    expected = normal_mode_levels(t.T @ t, 10)
    units = SimUnits(eta, theta)
    result = eigenspectrum(oscillator(units), 10, oscillator(units, 24))
    assert np.all(result.converged)
    assert np.allclose(result.eigenvalues, expected, atol=1e-9)


def test_tied_ground_energy_is_flat():
    grounds = [eigenspectrum(oscillator(SimUnits.tied(e)), 1).eigenvalues[0] for e in (0.0, 0.05, 0.1, 0.2, 0.4)]
    assert np.allclose(grounds, 1.0, atol=1e-12)


@pytest.mark.parametrize("eta", [0.1, 0.2])
def test_landau_levels(eta):
    spec = landau_spec(24, eta, 4)
    h = hamiltonian_landau(tilde_transform(build_phase_ops(spec), SimUnits(eta, 0.0)))
    big = hamiltonian_landau(tilde_transform(build_phase_ops(landau_spec(30, eta, 4)), SimUnits(eta, 0.0)))
    result = eigenspectrum(h, 80, big)
    levels = result.level_values()
    assert len(levels) >= 2
    for n, value in enumerate(levels[:3]):
        assert value == pytest.approx(eta * (n + 0.5), abs=1e-9)


def test_landau_rejects_theta():
    tilde = tilde_transform(build_phase_ops(TruncationSpec(6, 2)), SimUnits(0.1, 0.1))
    with pytest.raises(ValueError):
        hamiltonian_landau(tilde)


def test_unconverged_levels_are_flagged():
    units = SimUnits(0.2, 0.0)
    h = hamiltonian_landau(tilde_transform(build_phase_ops(TruncationSpec(10, 2)), units))
    big = hamiltonian_landau(tilde_transform(build_phase_ops(TruncationSpec(14, 2)), units))
    result = eigenspectrum(h, 20, big)
    assert not np.all(result.converged)
    assert len(result.level_values()) <= len(result.level_values(converged_only=False))


def test_no_larger_means_nan_deltas():
    result = eigenspectrum(oscillator(SimUnits(), 8), 3)
    assert np.all(np.isnan(result.convergence_delta))
    assert not np.any(result.converged)


def test_k_bounds():
    h = oscillator(SimUnits(), 6, 2)
    with pytest.raises(ValueError):
        eigenspectrum(h, 0)
    with pytest.raises(ValueError):
        eigenspectrum(h, h.dim // 4 + 1)


def test_degeneracy_groups():
    assert degeneracy_groups([1.0, 2.0, 2.0 + 1e-8, 3.0]) == [[0], [1, 2], [3]]


@pytest.mark.parametrize("units", [SimUnits(), SimUnits.tied(0.1)])
def test_perturbation_slopes_match_finite_differences(units):
    spec = TruncationSpec(20, 4)
    h = oscillator_at(spec, units.eta_bar, units.theta_bar)
    result = eigenspectrum(h, 6)
    v = oscillator_perturbation(spec, units)
    for group in degeneracy_groups(result.eigenvalues)[:2]:
        pt = sorted(first_order_shift(result, v, group))
        fd = sorted(central_difference_slopes(lambda s: oscillator_at(spec, units.eta_bar + s, units.theta_bar + s), group))
        for a, b in zip(pt, fd):
            assert abs(a - b) / max(1.0, abs(b)) < 1e-5


def test_slopes_at_origin():
    spec = TruncationSpec(12, 2)
    result = eigenspectrum(oscillator_at(spec, 0.0, 0.0), 6)
    v = oscillator_perturbation(spec)
    assert first_order_shift(result, v, [0]) == pytest.approx([0.0], abs=1e-12)
    assert first_order_shift(result, v, [1, 2]) == pytest.approx([-1.0, 1.0], abs=1e-12)
    assert first_order_shift(result, v, [3, 4, 5]) == pytest.approx([-2.0, 0.0, 2.0], abs=1e-12)


def test_first_order_shift_requires_degenerate_group():
    spec = TruncationSpec(8, 2)
    result = eigenspectrum(oscillator_at(spec, 0.0, 0.0), 3)
    with pytest.raises(ValueError):
        first_order_shift(result, oscillator_perturbation(spec), [0, 1])


def test_eigenvectors_are_phase_fixed_and_repeatable():
    h = oscillator(SimUnits(0.1, 0.2), 10, 2)
    a = eigenspectrum(h, 4)
    b = eigenspectrum(h, 4)
    assert np.array_equal(a.vectors, b.vectors)
