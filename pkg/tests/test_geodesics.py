import math

import pytest

from koenigs.errors import NoMotion, OutOfDomain
from koenigs.geodesics import (
    classify,
    curve_residual,
    radial_momentum_sq,
    start_point,
    turning_points,
)
from koenigs.models import make_model
from koenigs.verify import REGIME_CASES


@pytest.mark.parametrize("family,rho,xi,E,L,expected", REGIME_CASES)
def test_regime_tags(family, rho, xi, E, L, expected):
    model = make_model(family, rho, xi)
    regime = classify(model, E, L)
    assert regime.tag == expected


@pytest.mark.parametrize("family,rho,xi,E,L,expected", REGIME_CASES)
def test_radial_momentum_vanishes_at_turnings(family, rho, xi, E, L, expected):
    model = make_model(family, rho, xi)
    regime = classify(model, E, L)
    for t_pt in regime.turning_points:
        assert abs(radial_momentum_sq(model, E, L, t_pt)) < 1e-9


@pytest.mark.parametrize("family,rho,xi,E,L,expected", REGIME_CASES)
def test_start_point_sits_on_curve(family, rho, xi, E, L, expected):
    model = make_model(family, rho, xi)
    regime = classify(model, E, L)
    pt = start_point(regime)
    assert curve_residual(regime, pt) < 1e-9


def test_e0_full_example_parameters():
    # E=0 with xi below -L^2 circulates fully; sinh(theta) = sqrt(|xi|/L^2 - 1)
    model = make_model("trig", 0.5, -2.0)
    regime = classify(model, 0.0, 1.0)
    assert regime.tag == "e0_full"
    assert regime.params["sinh_theta"] == pytest.approx(1.0, abs=1e-12)
    assert regime.params["theta"] == pytest.approx(math.asinh(1.0), abs=1e-12)


def test_trig_no_motion_above_sigma_one():
    model = make_model("trig", 0.5, 4.0)
    with pytest.raises(NoMotion):
        classify(model, 1.0, 1.0)


def test_h0_no_motion_below_circular_energy():
    model = make_model("h0", 0.8, 1.1)
    L = 0.5
    e_plus = L**2 * (-0.8 + math.sqrt(0.8**2 + 1.1 / L**2))
    with pytest.raises(NoMotion):
        classify(model, 0.5 * e_plus, L)


def test_h0_circular_at_window_bottom():
    model = make_model("h0", 0.8, 1.1)
    L = 0.5
    e_plus = L**2 * (-0.8 + math.sqrt(0.8**2 + 1.1 / L**2))
    regime = classify(model, e_plus, L)
    assert regime.eccentricity == pytest.approx(0.0, abs=1e-9)
    assert regime.closed


def test_h0_eccentricity_window():
    model = make_model("h0", 0.8, 1.1)
    L = 0.5
    e_plus = L**2 * (-0.8 + math.sqrt(0.8**2 + 1.1 / L**2))
    edge = 1.1 / 1.6
    inside = classify(model, 0.5 * (e_plus + edge), L)
    assert inside.closed and 0.0 < inside.eccentricity < 1.0
    above = classify(model, edge * 1.2, L)
    assert not above.closed


def test_negative_energy_is_reflected():
    model_pos = make_model("trig", 0.5, 2.0)
    model_neg = make_model("trig", 0.5, -2.0)
    pos = classify(model_pos, 1.0, 1.0)
    neg = classify(model_neg, -1.0, 1.0)
    assert neg.applied_map is not None
    assert pos.applied_map is None
    assert neg.turning_points[0] == pytest.approx(math.pi - pos.turning_points[0], abs=1e-12)


def test_turning_points_helper_matches_regime():
    model = make_model("hplus", 2.0, 8.0)
    regime = classify(model, 1.8, 1.0)
    assert turning_points(model, 1.8, 1.0) == pytest.approx(regime.turning_points)


def test_curve_residual_rejects_points_outside_domain():
    model = make_model("h0", 0.8, 1.1)
    regime = classify(model, 0.5, 0.5)
    with pytest.raises(OutOfDomain):
        curve_residual(regime, (10.0, 0.0))


def test_affine_lines_slope():
    model = make_model("affine", 1.2, 2.0)
    regime = classify(model, 1.0, 1.0)
    assert regime.tag == "lines"
    # u = slope * |y - y0| with slope^2 = (2 rho E - L^2)/L^2
    assert regime.params["slope"] == pytest.approx(math.sqrt(1.4), rel=1e-12)


def test_affine_parabola_focal_length():
    model = make_model("affine", 1.2, 1.0)
    regime = classify(model, 1.0, math.sqrt(2.4))
    assert regime.tag == "parabola"
    vert = 2.0 * 1.0 - 1.0
    assert regime.params["focal"] == pytest.approx(math.sqrt(2.4) / (2.0 * math.sqrt(vert)), rel=1e-12)


def test_affine_ellipse_is_bounded():
    model = make_model("affine", 1.2, 1.0)
    regime = classify(model, 1.0, 2.0)
    assert regime.tag == "ellipse"
    lo, hi = regime.domain[0]
    assert lo == 0.0
    assert hi == pytest.approx(regime.params["u_star"])
    assert math.isfinite(hi)
