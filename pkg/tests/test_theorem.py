"""Case verifiers, parametric identities, and the end-to-end check."""

import pytest

from multsquares.arith import represent_in_semigroup
from multsquares.gaussian import gauss
from multsquares.theorem import (
    EVEN_STEP,
    ODD_STEP,
    EXPECTED_SIGN_PAIRS,
    ParametricIdentity,
    _two_equation_solutions,
    check_parametric,
    theorem_check,
    verify_case_general,
    verify_case_k,
    verify_case_k4,
)
from multsquares.squares import UnsupportedKError


def failed_checks(report):
    return [c for c in report.checks if not c.passed]


def test_parametric_odd_values():
    lhs, rhs = ODD_STEP.terms(5)
    assert lhs == (11, 3) and rhs == (9, 7)
    assert 11**2 + 3**2 == 9**2 + 7**2 == 130
    report = check_parametric(ODD_STEP, 100)
    assert report.all_passed


def test_parametric_even_values():
    lhs, rhs = EVEN_STEP.terms(6)
    assert lhs == (12, 1) and rhs == (8, 9)
    assert 12**2 + 1**2 == 8**2 + 9**2 == 145
    report = check_parametric(EVEN_STEP, 100)
    assert report.all_passed


def test_parametric_below_threshold_rejected():
    # at l = 5 the even family produces a zero term
    lhs, rhs = EVEN_STEP.terms(5)
    assert 0 in lhs + rhs
    small = ParametricIdentity("even-too-early", EVEN_STEP.lhs, EVEN_STEP.rhs, 5)
    report = check_parametric(small, 10)
    assert not report.all_passed


def test_parametric_polynomial_expansion():
    assert ODD_STEP.side_poly(ODD_STEP.lhs) == (5, 0, 5)
    assert ODD_STEP.side_poly(ODD_STEP.rhs) == (5, 0, 5)
    assert EVEN_STEP.side_poly(EVEN_STEP.lhs) == (5, -10, 25)
    assert EVEN_STEP.side_poly(EVEN_STEP.rhs) == (5, -10, 25)


def test_two_equation_solutions_exact():
    assert _two_equation_solutions() == set(EXPECTED_SIGN_PAIRS)
    assert (gauss(1), gauss(3)) not in EXPECTED_SIGN_PAIRS
    assert len(EXPECTED_SIGN_PAIRS) == 8


def test_verify_case_k4():
    report = verify_case_k4(3)
    assert report.all_passed, failed_checks(report)
    names = [c.name for c in report.checks]
    assert "doubling-witnesses" in names
    assert any(n.startswith("displayed:35") for n in names)


def test_verify_case_k4_vacuous_doubling():
    report = verify_case_k4(0)
    check = next(c for c in report.checks if c.name == "doubling-witnesses")
    assert check.passed and "vacuous" in check.detail


def test_verify_case_k_small_bounds():
    for k in (5, 6, 7):
        report = verify_case_k(k, 40)
        assert report.all_passed, (k, failed_checks(report))
    with pytest.raises(UnsupportedKError):
        verify_case_k(8, 40)


def test_verify_case_general_k8():
    report = verify_case_general(8, 60)
    assert report.all_passed, failed_checks(report)
    semigroup = next(c for c in report.checks if c.name == "semigroup-2k-1")
    assert "3*5+8*0=15" in semigroup.detail
    construction = next(c for c in report.checks if c.name == "construction")
    assert "(7, 2, 2, 2, 2, 2, 1, 1)" in construction.detail


def test_verify_case_general_k9_semigroup_choice():
    assert represent_in_semigroup(17, 3, 8) == (3, 1)
    report = verify_case_general(9, 60)
    assert report.all_passed, failed_checks(report)


def test_construction_arithmetic_k8():
    # two 1s, five 2s, one 7: 2 + 20 + 49 = 71 = 8^2 + 8 - 1
    a, b = represent_in_semigroup(15, 3, 8)
    assert (a, b) == (5, 0)
    assert 2 * 1 + 5 * 4 + 49 == 71 == 8 * 8 + 8 - 1


def test_theorem_check_exploration_mode():
    report = theorem_check(3, 40)
    assert report.case == "exploration"
    assert report.all_passed is None
    report = theorem_check(2, 40)
    assert report.all_passed is None


def test_theorem_check_small_bound():
    for k in (4, 5, 9):
        report = theorem_check(k, 60)
        assert report.all_passed, (k, failed_checks(report))


def test_case_report_serialization():
    report = theorem_check(5, 40)
    d = report.to_dict()
    assert set(d) == {"case", "k", "checks", "manifest", "all_passed"}
    assert d["all_passed"] is True
    assert all(set(c) == {"name", "passed", "detail"} for c in d["checks"])


def test_construction_and_parametric_exact_for_k_8_to_16():
    for k in range(8, 17):
        a, b = represent_in_semigroup(2 * k - 1, 3, 8)
        assert 3 * a + 8 * b == 2 * k - 1
        assert k - a - b - 1 >= 0, k
        parts = (k - 1,) + (3,) * b + (2,) * a + (1,) * (k - a - b - 1)
        assert len(parts) == k
        assert sum(x * x for x in parts) == k * k + k - 1, k
    for identity in (ODD_STEP, EVEN_STEP):
        assert check_parametric(identity, 1000).all_passed
