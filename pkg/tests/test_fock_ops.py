import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncqm.fock import (
    ResourceError,
    SimUnits,
    TruncationSpec,
    build_phase_ops,
    commutator,
    commutator_residual,
    identity,
    linear_operator,
    product,
    tilde_transform,
)
from ncqm.fock.ops import OperatorMatrix, quadratic_operator, tilde_coefficients, tilde_coefficients_derivative


def reference_product(coeffs_a, coeffs_b, spec, extra=6):
    """Oracle: multiply on a much larger truncation and cut back to ``spec``."""
    big = spec.with_levels(spec.n_per_mode + extra)
    a = linear_operator(coeffs_a, big).entries
    b = linear_operator(coeffs_b, big).entries
    n, m = spec.n_per_mode, big.n_per_mode
    idx = np.array([i * m + j for i in range(n) for j in range(n)])
    return (a @ b)[np.ix_(idx, idx)]


@pytest.mark.parametrize("scales", [(1.0, 1.0), (0.6, 2.3)])
def test_canonical_commutators_exact_everywhere(scales):
    spec = TruncationSpec(8, 2, scales)
    ops = build_phase_ops(spec)
    eye = np.eye(spec.dim)
    assert np.max(np.abs(commutator(ops.x1, ops.p1).entries - 1j * eye)) < 1e-12
    assert np.max(np.abs(commutator(ops.x2, ops.p2).entries - 1j * eye)) < 1e-12
    assert np.max(np.abs(commutator(ops.x1, ops.p2).entries)) < 1e-12


def test_plain_matmul_breaks_at_boundary():
    spec = TruncationSpec(6, 2)
    ops = build_phase_ops(spec)
    naive = ops.x1.entries @ ops.p1.entries - ops.p1.entries @ ops.x1.entries
    assert abs(naive[-1, -1] - 1j) > 0.5
    assert commutator_residual(ops.x1, ops.p1, 1j) < 1e-12


coeff = st.floats(-2, 2, allow_nan=False)


@settings(max_examples=20)
@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=4, max_size=4))
def test_compressed_product_matches_larger_truncation(ca, cb):
    spec = TruncationSpec(6, 2, (1.3, 0.8))
    got = product(linear_operator(ca, spec), linear_operator(cb, spec)).entries
    assert np.max(np.abs(got - reference_product(ca, cb, spec))) < 1e-10


def test_quadratic_operator_is_exact():
    spec = TruncationSpec(6, 2)
    form = np.zeros((4, 4))
    form[0, 0] = form[2, 2] = 0.5
    h = quadratic_operator(form, spec)
    diag = np.real(np.diag(h.entries))
    expected = np.array([a + b + 1.0 for a in range(6) for b in range(6)]) - np.array(
        [b + 0.5 for a in range(6) for b in range(6)]
    )
    assert np.allclose(diag, expected, atol=1e-12)
    assert h.is_hermitian


@pytest.mark.parametrize("eta, theta", [(0.0, 0.0), (0.1, 0.1), (0.2, 0.0), (0.0, 0.3), (0.5, 0.25)])
def test_tilde_commutators_interior(eta, theta):
    units = SimUnits(eta, theta)
    t = tilde_transform(build_phase_ops(TruncationSpec(12, 4)), units)
    xi2 = units.xi**2
    assert commutator_residual(t.tx1, t.tp1, 1j) < 1e-12
    assert commutator_residual(t.tx2, t.tp2, 1j) < 1e-12
    assert commutator_residual(t.tx1, t.tp2) < 1e-12
    assert commutator_residual(t.tx2, t.tp1) < 1e-12
    assert commutator_residual(t.tp1, t.tp2, 1j * xi2 * eta) < 1e-12
    assert commutator_residual(t.tx1, t.tx2, 1j * xi2 * theta) < 1e-12


def test_tilde_ops_hermitian():
    t = tilde_transform(build_phase_ops(TruncationSpec(8, 2)), SimUnits(0.3, 0.2))
    assert all(op.is_hermitian for op in t.as_tuple())


def test_tilde_coefficients_identity_at_origin():
    assert np.array_equal(tilde_coefficients(0.0, 0.0), np.eye(4))


def test_tilde_derivative_matches_finite_difference():
    eta, theta, h = 0.2, 0.15, 1e-6
    fd = (tilde_coefficients(eta + h, theta + 2 * h) - tilde_coefficients(eta - h, theta - 2 * h)) / (2 * h)
    assert np.allclose(tilde_coefficients_derivative(eta, theta, 1.0, 2.0), fd, atol=1e-9)


def test_sim_units_validation():
    with pytest.raises(ValueError):
        SimUnits(-0.1, 0.0)
    with pytest.raises(ValueError):
        SimUnits(float("nan"), 0.0)
    with pytest.raises(ValueError):
        SimUnits(0.1, 0.2, be_imposed=True)
    assert SimUnits.tied(0.1).theta_bar == 0.1


def test_truncation_validation():
    with pytest.raises(ValueError):
        TruncationSpec(1, 0)
    with pytest.raises(ValueError):
        TruncationSpec(4, 4)
    with pytest.raises(ValueError):
        TruncationSpec(4, 1, (1.0, -1.0))
    with pytest.raises(ResourceError):
        TruncationSpec(1001, 4)


def test_interior_indices():
    spec = TruncationSpec(5, 2)
    assert list(spec.interior()) == [0, 1, 2, 5, 6, 7, 10, 11, 12]


def test_operators_are_immutable():
    op = identity(TruncationSpec(3, 1))
    with pytest.raises(ValueError):
        op.entries[0, 0] = 2.0


def test_mismatched_spaces_rejected():
    a = identity(TruncationSpec(3, 1))
    b = identity(TruncationSpec(4, 1))
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        OperatorMatrix(np.eye(3), TruncationSpec(3, 1))
