import random
from fractions import Fraction

from ncqm.weyl import derive_be_condition, verify_ghq_algebra
from ncqm.weyl.coeffs import CoeffField
from ncqm.weyl.derivations import BE_THETA, ladder_commutators, random_rational_point

ETA = CoeffField.symbol("eta")
THETA = CoeffField.symbol("theta")
MU = CoeffField.symbol("mu")
OMEGA = CoeffField.symbol("omega")
HBAR = CoeffField.symbol("hbar")
XI = CoeffField.symbol("xi")
I = CoeffField.const(0, 1)


def test_all_identities_exact():
    report = verify_ghq_algebra()
    assert report.passed
    assert len(report.checks) == 10
    assert all(c.residual.is_zero() for c in report.checks)
    assert report.lines()[-1] == "10/10 identities exact"


def test_identities_hold_on_the_bose_condition():
    assert verify_ghq_algebra({"theta": BE_THETA}).passed


def test_creation_commutator_closed_form():
    # [a1d, a2d] = i xi^2 mu omega (theta - eta/(mu omega)^2) / (2 hbar)
    got = ladder_commutators()["[a1d, a2d]"].constant()
    expected = I * XI * XI * MU * OMEGA * (THETA - ETA / (MU * OMEGA) ** 2) / (2 * HBAR)
    assert got == expected


def test_mixed_ladder_commutator_closed_form():
    got = ladder_commutators()["[a1, a2d]"].constant()
    expected = I * XI * XI * MU * OMEGA * (THETA + ETA / (MU * OMEGA) ** 2) / (2 * HBAR)
    assert got == expected


def test_diagonal_ladder_commutators_are_one():
    comms = ladder_commutators()
    assert comms["[a1, a1d]"].constant() == CoeffField.const(1)
    assert comms["[a2, a2d]"].constant() == CoeffField.const(1)


def test_be_report():
    report = derive_be_condition()
    assert report.passed
    assert report.vanishes_on_condition
    assert report.simple_zero and report.numerator_is_monomial_multiple
    assert report.random_points == 50 and report.random_nonzero == 50


def test_case2_factor():
    report = derive_be_condition(samples=5)
    assert report.case2_excluded
    assert report.case2_factor == -I * ETA / (2 * HBAR * MU * OMEGA)


def test_printed_form_flags():
    report = derive_be_condition(samples=5)
    status = {p.name: p.matches for p in report.printed_forms}
    assert status["[a1d, a2d]"] is False
    assert status["[a1d, a2d] at theta=0"] is True
    assert status["[a1, a2d]"] is False
    mismatch = next(p for p in report.printed_forms if p.name == "[a1d, a2d]")
    assert mismatch.ratio() == XI
    assert any(line.startswith("      MISMATCH") for line in report.lines())


def test_random_points_are_off_condition():
    rng = random.Random(7)
    for _ in range(100):
        pt = random_rational_point(rng)
        assert all(isinstance(v, Fraction) and v > 0 for v in pt.values())
        assert pt["theta"] != pt["eta"] / (pt["mu"] * pt["omega"]) ** 2


def test_report_is_deterministic():
    a = derive_be_condition(samples=10).lines()
    b = derive_be_condition(samples=10).lines()
    assert a == b
