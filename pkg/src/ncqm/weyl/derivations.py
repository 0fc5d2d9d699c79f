"""Exact checks of the deformed commutation relations and the Bose condition."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import GeneratorKind, NCPolynomial, commutator, ladder_operator, substitute, tilde_generator
from .coeffs import ETA, MU, OMEGA, THETA, CoeffField

_I = CoeffField.const(0, 1)
_XI = CoeffField.symbol("xi")
_HBAR = CoeffField.symbol("hbar")
_ETA = CoeffField.symbol("eta")
_THETA = CoeffField.symbol("theta")
_MU_OMEGA = CoeffField.symbol("mu") * CoeffField.symbol("omega")

#: theta expressed through eta on the Bose-Einstein condition
BE_THETA = CoeffField.const(ETA / (MU * OMEGA) ** 2)


def _eps(i: int, j: int) -> int:
    return {(1, 2): 1, (2, 1): -1}.get((i, j), 0)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    value: NCPolynomial
    target: NCPolynomial

    @property
    def residual(self) -> NCPolynomial:
        return self.value - self.target

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name} = {self.value}   residual: {self.residual}"


@dataclass(frozen=True)
class AlgebraReport:
    checks: tuple
    bindings: Mapping[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        head = "deformed algebra from the phase-space map"
        if self.bindings:
            head += " with " + ", ".join(f"{k}={v}" for k, v in self.bindings.items())
        out = [head]
        out += [c.line() for c in self.checks]
        out.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} identities exact")
        return out


def _bind(p: NCPolynomial, bindings) -> NCPolynomial:
    return substitute(p, bindings) if bindings else p


def verify_ghq_algebra(bindings: Mapping[str, CoeffField] | None = None) -> AlgebraReport:
    """Compare every commutator of the tilde variables with its deformed target.

    Covers [x~_i, p~_j] for all i, j and [p~_i, p~_j], [x~_i, x~_j] for
    i <= j. Targets are ``i hbar delta_ij``, ``i xi^2 eta eps_ij`` and
    ``i xi^2 theta eps_ij``.
    """
    tx = {i: tilde_generator(GeneratorKind(f"tx{i}")) for i in (1, 2)}
    tp = {i: tilde_generator(GeneratorKind(f"tp{i}")) for i in (1, 2)}
    xi2 = _XI * _XI
    checks = []
    for i in (1, 2):
        for j in (1, 2):
            target = _I * _HBAR if i == j else CoeffField()
            checks.append((f"[tx{i}, tp{j}]", commutator(tx[i], tp[j]), target))
    for family, ops, param in (("tp", tp, _ETA), ("tx", tx, _THETA)):
        for i, j in ((1, 1), (1, 2), (2, 2)):
            target = _I * xi2 * param * _eps(i, j)
            checks.append((f"[{family}{i}, {family}{j}]", commutator(ops[i], ops[j]), target))
    return AlgebraReport(
        tuple(
            IdentityCheck(name, _bind(value, bindings), _bind(NCPolynomial.scalar(target), bindings))
            for name, value, target in checks
        ),
        {k: str(v) for k, v in (bindings or {}).items()},
    )


@dataclass(frozen=True)
class PrintedForm:
    """A reference closed form compared with the engine result."""

    name: str
    printed: CoeffField
    computed: CoeffField

    @property
    def matches(self) -> bool:
        return self.printed == self.computed

    def ratio(self) -> CoeffField | None:
        if self.printed.is_zero():
            return None
        return self.computed / self.printed

    def line(self) -> str:
        if self.matches:
            return f"MATCH     {self.name}: {self.computed}"
        ratio = self.ratio()
        return (
            f"MISMATCH  {self.name}: printed {self.printed}; computed {self.computed}; "
            f"computed/printed = {ratio}"
        )


@dataclass(frozen=True)
class DerivationReport:
    commutators: Mapping[str, CoeffField]
    be_factor: CoeffField
    cofactor: CoeffField
    factor_on_condition: CoeffField
    simple_zero: bool
    numerator_is_monomial_multiple: bool
    case2_factor: CoeffField
    printed_forms: tuple
    random_points: int = 0
    random_nonzero: int = 0

    @property
    def vanishes_on_condition(self) -> bool:
        return self.factor_on_condition.is_zero()

    @property
    def case2_excluded(self) -> bool:
        return not self.case2_factor.is_zero()

    @property
    def passed(self) -> bool:
        return (
            self.vanishes_on_condition
            and self.simple_zero
            and self.numerator_is_monomial_multiple
            and self.case2_excluded
            and self.random_nonzero == self.random_points
        )

    def lines(self) -> list[str]:
        ok = {True: "PASS", False: "FAIL"}
        out = ["bosonic ladder algebra"]
        out += [f"      {name} = {value}" for name, value in self.commutators.items()]
        out.append(f"      factor of [a1d, a2d] = {self.be_factor}")
        out.append(f"      factor / (theta - eta/(mu*omega)^2) = {self.cofactor}")
        out.append(f"{ok[self.vanishes_on_condition]}  factor vanishes at theta = eta/(mu*omega)^2")
        out.append(
            f"{ok[self.simple_zero and self.numerator_is_monomial_multiple]}  "
            "factor vanishes only there (numerator = monomial * (theta*mu^2*omega^2 - eta))"
        )
        out.append(
            f"{ok[self.random_nonzero == self.random_points]}  nonzero at "
            f"{self.random_nonzero}/{self.random_points} random rational points off the condition"
        )
        out.append(f"{ok[self.case2_excluded]}  theta = 0, eta != 0 gives [a1d, a2d] = {self.case2_factor}")
        out += ["      " + p.line() for p in self.printed_forms]
        return out


def ladder_commutators() -> dict[str, NCPolynomial]:
    a = {(i, d): ladder_operator(i, d) for i in (1, 2) for d in (False, True)}
    out = {}
    for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)):
        out[f"[a{i}, a{j}d]"] = commutator(a[i, False], a[j, True])
    out["[a1, a2]"] = commutator(a[1, False], a[2, False])
    out["[a1d, a2d]"] = commutator(a[1, True], a[2, True])
    return out


def random_rational_point(rng: random.Random) -> dict[str, Fraction]:
    """Positive rationals for every parameter with theta off the Bose condition."""
    while True:
        point = {s: Fraction(rng.randint(1, 40), rng.randint(1, 40)) for s in ("hbar", "eta", "theta", "mu", "omega")}
        if point["theta"] != point["eta"] / (point["mu"] * point["omega"]) ** 2:
            return point


def derive_be_condition(samples: int = 50, seed: int = 20260917) -> DerivationReport:
    """Ladder commutators, the Bose factor and its zero set."""
    comms = ladder_commutators()
    for name, value in comms.items():
        if not value.is_scalar():
            raise RuntimeError(f"{name} is not a c-number: {value}")
    scalars = {name: value.constant() for name, value in comms.items()}
    factor = scalars["[a1d, a2d]"]

    gap = _THETA - BE_THETA
    cofactor = factor / gap
    on_condition = factor.substitute({"theta": BE_THETA})
    cofactor_on = cofactor.substitute({"theta": BE_THETA})

    # numerator of the imaginary part should be monomial * (theta mu^2 omega^2 - eta)
    re, im = factor.part(0, 0)
    linear = (THETA * MU**2 * OMEGA**2 - ETA).numer
    quotient, remainder = divmod(im.numer, linear)
    monomial_multiple = factor.is_rational() and not re and not remainder and len(quotient.terms()) == 1
    den_terms = im.denom.terms()
    # denominator must be a sum of positive-coefficient monomials (nonzero for positive params)
    monomial_multiple = monomial_multiple and all(c > 0 for _, c in den_terms)

    case2 = factor.substitute({"theta": 0})

    rng = random.Random(seed)
    nonzero = 0
    for _ in range(samples):
        point = random_rational_point(rng)
        value = factor.substitute({k: CoeffField.const(v) for k, v in point.items()})
        nonzero += not value.is_zero()

    mu_omega = _MU_OMEGA
    printed = (
        PrintedForm(
            "[a1d, a2d]",
            _I * _XI * mu_omega * (_THETA - BE_THETA) / (2 * _HBAR),
            factor,
        ),
        PrintedForm(
            "[a1d, a2d] at theta=0",
            (-_I * mu_omega * (_ETA / (mu_omega * mu_omega)) / (2 * _HBAR)).substitute({"theta": 0}),
            case2,
        ),
        PrintedForm("[a1, a1d]", CoeffField.const(1), scalars["[a1, a1d]"]),
        PrintedForm(
            "[a1, a2d]",
            _I * (_XI * _XI).inverse() * mu_omega * _THETA,
            scalars["[a1, a2d]"],
        ),
        PrintedForm(
            "[a1, a2d] on the condition",
            (_I * (_XI * _XI).inverse() * mu_omega * _THETA).substitute({"theta": BE_THETA}),
            scalars["[a1, a2d]"].substitute({"theta": BE_THETA}),
        ),
        PrintedForm("[a1, a2] on the condition", CoeffField(), scalars["[a1, a2]"].substitute({"theta": BE_THETA})),
    )
    return DerivationReport(
        commutators=scalars,
        be_factor=factor,
        cofactor=cofactor,
        factor_on_condition=on_condition,
        simple_zero=not cofactor_on.is_zero(),
        numerator_is_monomial_multiple=bool(monomial_multiple),
        case2_factor=case2,
        printed_forms=printed,
        random_points=samples,
        random_nonzero=nonzero,
    )


__all__ = [
    "AlgebraReport",
    "DerivationReport",
    "IdentityCheck",
    "PrintedForm",
    "BE_THETA",
    "derive_be_condition",
    "ladder_commutators",
    "verify_ghq_algebra",
    "random_rational_point",
]
