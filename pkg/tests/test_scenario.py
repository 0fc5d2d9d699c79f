import math

import pytest
from hypothesis import given, settings, strategies as st

from ncqm import scenario as sc
from ncqm.fock import SimUnits

dims = st.tuples(*(st.integers(-3, 3),) * 4)
values = st.floats(1e-3, 1e3)


@settings(max_examples=50)
@given(values, dims, values, dims)
def test_product_adds_exponents(a, da, b, db):
    q = sc.Quantity(a, da) * sc.Quantity(b, db)
    assert q.dims == tuple(x + y for x, y in zip(da, db))
    assert q.value == pytest.approx(a * b)


@settings(max_examples=50)
@given(values, dims, values, dims)
def test_addition_requires_same_dims(a, da, b, db):
    if da == db:
        assert (sc.Quantity(a, da) + sc.Quantity(b, db)).dims == da
    else:
        with pytest.raises(sc.DimensionError):
            sc.Quantity(a, da) + sc.Quantity(b, db)


@settings(max_examples=50)
@given(values, dims)
def test_sqrt_inverts_square(a, d):
    q = sc.Quantity(a, d)
    back = (q * q).sqrt()
    assert back.dims == q.dims
    assert back.value == pytest.approx(a)


def test_sqrt_of_odd_dims_rejected():
    with pytest.raises(sc.DimensionError):
        sc.Quantity(4.0, sc.METRE).sqrt()


def test_unit_strings():
    assert sc.HBAR.unit == "kg*m^2*s^-1"
    assert sc.Quantity(1.0).unit == "1"


def test_eta_magnitude_for_intergalactic_field():
    inputs = sc.CosmicInputs.from_si(omega=1.0)
    eta = sc.compute_eta(inputs)
    assert eta.dims == sc.ETA_DIMS
    assert math.floor(math.log10(eta.value)) == -65
    assert eta.value == pytest.approx(1.054571817e-34 * 1.602176634e-19 * 1e-12, rel=1e-12)


def test_theta_and_minimal_scales():
    inputs = sc.CosmicInputs.from_si(omega=2.0e15)
    s = sc.derive(inputs)
    mw = sc.ELECTRON_MASS.value * 2.0e15
    assert s.theta_c.value == pytest.approx(s.eta_c.value / mw**2, rel=1e-12)
    assert s.dx_min.value == pytest.approx(math.sqrt(s.theta_c.value / 2), rel=1e-12)
    assert s.dp_min.value == pytest.approx(math.sqrt(s.eta_c.value / 2), rel=1e-12)
    assert s.min_area.dims == sc.AREA and s.min_volume.dims == sc.VOLUME
    assert s.extrapolated == ("min_area", "min_volume")


def test_zero_field_gives_zero_scales():
    s = sc.derive(sc.CosmicInputs.from_si(omega=1e15, B_c=0.0))
    assert all(getattr(s, n).value == 0.0 for n in ("eta_c", "theta_c", "dp_min", "dx_min", "min_area", "min_volume"))


@pytest.mark.parametrize("kw", [{"omega": 0.0}, {"omega": -1.0}, {"omega": 1.0, "B_c": -1.0}, {"omega": 1.0, "mu": 0.0}])
def test_invalid_inputs(kw):
    with pytest.raises(ValueError):
        sc.CosmicInputs.from_si(**kw)


def test_wrong_dimensions_rejected():
    with pytest.raises(sc.DimensionError):
        sc.CosmicInputs(sc.Quantity(1.0, sc.METRE), sc.ELEMENTARY_CHARGE, sc.ELECTRON_MASS, sc.Quantity(1.0, sc.PER_SECOND))


@settings(max_examples=30)
@given(st.floats(0, 0.5), st.floats(0, 0.5), st.floats(1e-31, 1e-25), st.floats(1e3, 1e16))
def test_sim_units_round_trip(eta_bar, theta_bar, mu, omega):
    m, w = sc.Quantity(mu, sc.KG), sc.Quantity(omega, sc.PER_SECOND)
    eta, theta = sc.from_sim_units(SimUnits(eta_bar, theta_bar), m, w)
    back = sc.to_sim_units(eta, theta, m, w)
    assert back.eta_bar == pytest.approx(eta_bar, rel=1e-12, abs=1e-300)
    assert back.theta_bar == pytest.approx(theta_bar, rel=1e-12, abs=1e-300)


def test_condition_maps_to_tied_sim_units():
    inputs = sc.CosmicInputs.from_si(omega=1e15)
    s = sc.derive(inputs)
    u = sc.to_sim_units(s.eta_c, s.theta_c, inputs.mu, inputs.omega)
    assert u.theta_bar == pytest.approx(u.eta_bar, rel=1e-12)


def test_report_schema():
    report = sc.constants_report(sc.CosmicInputs.from_si(omega=1e15))
    assert list(report) == ["inputs", "derived", "units", "flags", "sim_units"]
    assert report["units"]["eta_c"] == "kg^2*m^2*s^-2"
    assert report["units"]["B_c"] == "T"
    assert report["flags"]["extrapolated"] == ["min_area", "min_volume"]
