"""Physical-scale evaluation of the deformation parameters in SI units.

Constants are CODATA 2018 values (hbar and e are exact in the 2019 SI):

========================  ==========================  ============
name                      value                       unit
========================  ==========================  ============
``HBAR``                  1.054571817e-34             J s
``ELEMENTARY_CHARGE``     1.602176634e-19             C
``ELECTRON_MASS``         9.1093837015e-31            kg
========================  ==========================  ============

The default field strength is the present intergalactic field, 1e-12 T.
The oscillator frequency has no default: the position-position parameter
depends on the system through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fock.ops import SimUnits

BASE_UNITS = ("kg", "m", "s", "A")


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Quantity:
    """SI value with integer exponents over (kg, m, s, A)."""

    value: float
    dims: tuple = (0, 0, 0, 0)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 4:
            raise DimensionError("dims needs four exponents (kg, m, s, A)")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "value", float(self.value))

    def _same(self, other: "Quantity", op: str):
        if not isinstance(other, Quantity):
            raise TypeError(f"cannot {op} Quantity and {type(other).__name__}")
        if other.dims != self.dims:
            raise DimensionError(f"cannot {op} {self.unit} and {other.unit}")

    def __add__(self, other):
        self._same(other, "add")
        return Quantity(self.value + other.value, self.dims)

    def __sub__(self, other):
        self._same(other, "subtract")
        return Quantity(self.value - other.value, self.dims)

    def __neg__(self):
        return Quantity(-self.value, self.dims)

    def __mul__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.value * other.value, tuple(a + b for a, b in zip(self.dims, other.dims)))
        return Quantity(self.value * other, self.dims)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            if other.value == 0:
                raise ZeroDivisionError(f"division by zero {other.unit}")
            return Quantity(self.value / other.value, tuple(a - b for a, b in zip(self.dims, other.dims)))
        return Quantity(self.value / other, self.dims)

    def __pow__(self, n: int):
        return Quantity(self.value**n, tuple(d * n for d in self.dims))

    def sqrt(self) -> "Quantity":
        if any(d % 2 for d in self.dims):
            raise DimensionError(f"square root of {self.unit} has fractional dimensions")
        if self.value < 0:
            raise ValueError("square root of a negative quantity")
        return Quantity(math.sqrt(self.value), tuple(d // 2 for d in self.dims))

    @property
    def dimensionless(self) -> bool:
        return not any(self.dims)

    @property
    def unit(self) -> str:
        parts = []
        for name, e in zip(BASE_UNITS, self.dims):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def expect(self, dims: tuple, what: str) -> "Quantity":
        if self.dims != tuple(dims):
            raise DimensionError(f"{what} must have unit {Quantity(1, dims).unit}, got {self.unit}")
        return self

    def __str__(self):
        return f"{self.value!r} {self.unit}"


KG = (1, 0, 0, 0)
METRE = (0, 1, 0, 0)
PER_SECOND = (0, 0, -1, 0)
TESLA = (1, 0, -2, -1)
COULOMB = (0, 0, 1, 1)
ACTION = (1, 2, -1, 0)
ETA_DIMS = (2, 2, -2, 0)
AREA = (0, 2, 0, 0)
VOLUME = (0, 3, 0, 0)
MOMENTUM = (1, 1, -1, 0)

HBAR = Quantity(1.054571817e-34, ACTION)
ELEMENTARY_CHARGE = Quantity(1.602176634e-19, COULOMB)
ELECTRON_MASS = Quantity(9.1093837015e-31, KG)
INTERGALACTIC_FIELD = Quantity(1e-12, TESLA)


@dataclass(frozen=True)
class CosmicInputs:
    B_c: Quantity
    q: Quantity
    mu: Quantity
    omega: Quantity

    def __post_init__(self):
        self.B_c.expect(TESLA, "B_c")
        self.q.expect(COULOMB, "q")
        self.mu.expect(KG, "mu")
        self.omega.expect(PER_SECOND, "omega")
        if self.B_c.value < 0:
            raise ValueError("B_c must be non-negative")
        for name in ("q", "mu", "omega"):
            if getattr(self, name).value <= 0:
                raise ValueError(f"{name} must be strictly positive")

    @classmethod
    def from_si(cls, omega: float, B_c: float = 1e-12, q: float | None = None, mu: float | None = None) -> "CosmicInputs":
        return cls(
            Quantity(B_c, TESLA),
            Quantity(ELEMENTARY_CHARGE.value if q is None else q, COULOMB),
            Quantity(ELECTRON_MASS.value if mu is None else mu, KG),
            Quantity(omega, PER_SECOND),
        )


@dataclass(frozen=True)
class DerivedScales:
    eta_c: Quantity
    theta_c: Quantity
    dp_min: Quantity
    dx_min: Quantity
    min_area: Quantity
    min_volume: Quantity
    extrapolated: tuple = ("min_area", "min_volume")

    def __post_init__(self):
        for name, dims in (
            ("eta_c", ETA_DIMS),
            ("theta_c", AREA),
            ("dp_min", MOMENTUM),
            ("dx_min", METRE),
            ("min_area", AREA),
            ("min_volume", VOLUME),
        ):
            getattr(self, name).expect(dims, name)


def compute_eta(inputs: CosmicInputs) -> Quantity:
    """Momentum-momentum parameter ``hbar q B``."""
    return (HBAR * inputs.q * inputs.B_c).expect(ETA_DIMS, "eta_c")


def compute_theta(eta: Quantity, mu: Quantity, omega: Quantity) -> Quantity:
    """Position-position parameter fixed by the Bose condition, ``eta / (mu omega)^2``."""
    eta.expect(ETA_DIMS, "eta")
    mu.expect(KG, "mu")
    omega.expect(PER_SECOND, "omega")
    if mu.value * omega.value == 0:
        raise ZeroDivisionError("mu*omega vanishes")
    return (eta / (mu * omega) ** 2).expect(AREA, "theta_c")


def minimal_scales(eta: Quantity, theta: Quantity) -> DerivedScales:
    eta.expect(ETA_DIMS, "eta")
    theta.expect(AREA, "theta")
    if eta.value < 0 or theta.value < 0:
        raise ValueError("eta and theta must be non-negative")
    dp = (eta / 2).sqrt()
    dx = (theta / 2).sqrt()
    return DerivedScales(eta, theta, dp, dx, dx**2, dx**3)


def to_sim_units(eta: Quantity, theta: Quantity, mu: Quantity, omega: Quantity) -> SimUnits:
    """``eta_bar = eta/(hbar mu omega)``, ``theta_bar = theta mu omega / hbar``."""
    eta.expect(ETA_DIMS, "eta")
    theta.expect(AREA, "theta")
    eta_bar = eta / (HBAR * mu * omega)
    theta_bar = theta * mu * omega / HBAR
    if not (eta_bar.dimensionless and theta_bar.dimensionless):
        raise DimensionError("mu and omega must be a mass and a frequency")
    return SimUnits(eta_bar.value, theta_bar.value)


def from_sim_units(units: SimUnits, mu: Quantity, omega: Quantity) -> tuple[Quantity, Quantity]:
    mu.expect(KG, "mu")
    omega.expect(PER_SECOND, "omega")
    eta = (HBAR * mu * omega) * units.eta_bar
    theta = (HBAR / (mu * omega)) * units.theta_bar
    return eta.expect(ETA_DIMS, "eta"), theta.expect(AREA, "theta")


def derive(inputs: CosmicInputs) -> DerivedScales:
    eta = compute_eta(inputs)
    return minimal_scales(eta, compute_theta(eta, inputs.mu, inputs.omega))


def constants_report(inputs: CosmicInputs) -> dict:
    """Report with inputs, derived scales, SI unit strings and extrapolation flags."""
    scales = derive(inputs)
    inputs_map = {"B_c": inputs.B_c, "q": inputs.q, "mu": inputs.mu, "omega": inputs.omega}
    derived = {
        name: getattr(scales, name)
        for name in ("eta_c", "theta_c", "dp_min", "dx_min", "min_area", "min_volume")
    }
    units = {name: q.unit for name, q in {**inputs_map, **derived}.items()}
    units["B_c"] = "T"
    units["q"] = "C"
    units["omega"] = "s^-1"
    sim = to_sim_units(scales.eta_c, scales.theta_c, inputs.mu, inputs.omega)
    return {
        "inputs": {k: v.value for k, v in inputs_map.items()},
        "derived": {k: v.value for k, v in derived.items()},
        "units": units,
        "flags": {"extrapolated": list(scales.extrapolated)},
        "sim_units": {"eta_bar": sim.eta_bar, "theta_bar": sim.theta_bar},
    }
