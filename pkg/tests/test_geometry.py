import math

import pytest
from hypothesis import given, settings, strategies as st

from pulseatom.geometry import (
    LAMBDA_MAX,
    Cone,
    CouplingBudget,
    ExplicitLambda,
    FullSolidAngle,
    gamma_p,
    lambda_of,
)


def test_full_solid_angle_is_max():
    assert lambda_of(FullSolidAngle()) == LAMBDA_MAX == 8 * math.pi / 3


def test_mirror_cone_134_degrees():
    # half-opening angle of a deep parabolic mirror
    frac = lambda_of(Cone.from_degrees(134.0)) / LAMBDA_MAX
    assert frac == pytest.approx(0.94, rel=0.005)


def test_cone_closes_at_pi_exactly():
    assert lambda_of(Cone(math.pi)) == LAMBDA_MAX
    assert lambda_of(Cone.from_degrees(180.0)) == LAMBDA_MAX


def test_cone_vanishing_aperture():
    assert lambda_of(Cone(1e-3)) < 1e-9
    assert lambda_of(Cone(1e-3)) > 0.0


def test_cone_half_sphere():
    # integral of sin^3 over a hemisphere is half the full 4/3
    assert lambda_of(Cone(math.pi / 2)) == pytest.approx(LAMBDA_MAX / 2, rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -0.2, math.pi + 1e-9])
def test_cone_rejects_bad_angle(bad):
    with pytest.raises(ValueError):
        Cone(bad)


def test_explicit_lambda_roundtrip():
    assert lambda_of(ExplicitLambda(1.25)) == 1.25
    with pytest.raises(ValueError):
        ExplicitLambda(-0.1)
    with pytest.raises(ValueError):
        ExplicitLambda(LAMBDA_MAX * 1.001)


@settings(max_examples=200, deadline=None)
@given(
    th1=st.floats(1e-6, math.pi, exclude_min=False),
    th2=st.floats(1e-6, math.pi),
)
def test_cone_monotone_in_angle(th1, th2):
    lo, hi = sorted((th1, th2))
    assert lambda_of(Cone(lo)) <= lambda_of(Cone(hi)) + 1e-15


def test_gamma_p_values():
    assert gamma_p(1.0, LAMBDA_MAX) == 1.0
    assert gamma_p(1.0, 0.364 * LAMBDA_MAX) == pytest.approx(0.364, rel=1e-12)
    assert gamma_p(1.0, 0.94 * LAMBDA_MAX) == pytest.approx(0.94, rel=1e-12)
    assert gamma_p(2.0, LAMBDA_MAX / 2) == 1.0


def test_gamma_p_rejects_out_of_range():
    with pytest.raises(ValueError):
        gamma_p(1.0, -0.1)
    with pytest.raises(ValueError):
        gamma_p(1.0, LAMBDA_MAX * 1.01)
    with pytest.raises(ValueError):
        gamma_p(0.0, 1.0)


@settings(max_examples=200)
@given(gamma=st.floats(1e-3, 1e3), lam=st.floats(0.0, LAMBDA_MAX))
def test_gamma_p_bounded_by_gamma(gamma, lam):
    gp = gamma_p(gamma, lam)
    assert 0.0 <= gp <= gamma


def test_budget_defaults_to_full_coverage():
    budget = CouplingBudget()
    assert budget.gamma == 1.0
    assert budget.gamma_p == 1.0
    assert budget.lambda_fraction == 1.0


def test_budget_from_fraction():
    budget = CouplingBudget.from_fraction(0.364)
    assert budget.gamma_p == pytest.approx(0.364, rel=1e-12)
    with pytest.raises(ValueError):
        CouplingBudget.from_fraction(1.5)


def test_budget_from_geometry():
    budget = CouplingBudget.from_geometry(Cone.from_degrees(134.0))
    assert budget.gamma_p == pytest.approx(0.94, abs=0.005)


def test_budget_validates_fields():
    with pytest.raises(ValueError):
        CouplingBudget(gamma=-1.0)
    with pytest.raises(ValueError):
        CouplingBudget(lam=-0.5)
