import math

import numpy as np
import pytest

from koenigs.actions import (
    action_quadrature,
    action_variables,
    energy_from_J,
    integral_values_on_torus,
)
from koenigs.errors import DomainError, NotClosedRegime
from koenigs.geodesics import classify, start_point
from koenigs.invariants import conserved_set
from koenigs.models import make_model


def _h0_window(model, L):
    e_plus = L**2 * (-model.rho + math.sqrt(model.rho**2 + model.xi / L**2))
    return e_plus, model.xi / (2.0 * model.rho)


def _hplus_window(model, L):
    e_plus = L * (math.sqrt(model.xi + model.rho * (model.rho - 1.0) * L**2)
                  - (model.rho - 0.5) * L)
    return e_plus, model.xi / (2.0 * model.rho)


def test_h0_closed_form_matches_quadrature(h0_model):
    L = 0.5
    lo, hi = _h0_window(h0_model, L)
    for E in np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 8):
        av = action_variables(h0_model, float(E), L)
        quad_val = action_quadrature(h0_model, float(E), L)
        assert av.I_radial == pytest.approx(quad_val, rel=1e-8, abs=1e-12)
        assert av.I_angle == L
        assert av.J == pytest.approx(av.I_radial + av.I_angle, rel=1e-14)


def test_hplus_closed_form_matches_quadrature(hplus_model):
    L = 1.0
    lo, hi = _hplus_window(hplus_model, L)
    for E in np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 8):
        av = action_variables(hplus_model, float(E), L)
        quad_val = action_quadrature(hplus_model, float(E), L)
        assert av.I_radial == pytest.approx(quad_val, rel=1e-8, abs=1e-12)


def test_action_depends_only_on_J(h0_model, hplus_model):
    for model, L_pair, E in ((h0_model, (0.3, 0.5), 0.55), (hplus_model, (0.8, 1.0), 1.9)):
        js = [action_variables(model, E, L).J for L in L_pair]
        assert js[0] == pytest.approx(js[1], abs=1e-10)


def test_energy_roundtrip(h0_model, hplus_model):
    for model, L in ((h0_model, 0.5), (hplus_model, 1.0)):
        window = _h0_window if model.family == "h0" else _hplus_window
        lo, hi = window(model, L)
        for E in np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 6):
            j = action_variables(model, float(E), L).J
            assert energy_from_J(model, j) == pytest.approx(float(E), abs=1e-10)


def test_radial_action_vanishes_at_circular_orbit(hplus_model):
    L = 1.0
    e_plus, _ = _hplus_window(hplus_model, L)
    assert abs(action_quadrature(hplus_model, e_plus, L)) < 1e-8


def test_action_window_invariant(h0_model, hplus_model):
    L = 0.5
    lo, hi = _h0_window(h0_model, L)
    for E in np.linspace(lo + 1e-3, hi - 1e-3, 6):
        av = action_variables(h0_model, float(E), L)
        assert av.J >= av.I_angle - 1e-12
    j_cap = math.sqrt(hplus_model.xi / hplus_model.rho)
    lo_p, hi_p = _hplus_window(hplus_model, 1.0)
    for E in np.linspace(lo_p + 1e-3, hi_p - 1e-3, 6):
        av = action_variables(hplus_model, float(E), 1.0)
        assert 1.0 - 1e-12 <= av.J < j_cap


def test_open_regime_rejected(h0_model):
    _, edge = _h0_window(h0_model, 0.5)
    with pytest.raises(NotClosedRegime):
        action_variables(h0_model, edge * 1.2, 0.5)
    with pytest.raises(NotClosedRegime):
        action_quadrature(h0_model, edge * 1.2, 0.5)


def test_families_without_closed_regimes_rejected():
    model = make_model("trig", 0.5, 0.7)
    with pytest.raises(NotClosedRegime):
        action_variables(model, 1.0, 1.0)


def test_energy_from_J_domain(h0_model, hplus_model):
    with pytest.raises(DomainError):
        energy_from_J(h0_model, -0.5)
    with pytest.raises(DomainError):
        energy_from_J(hplus_model, math.sqrt(hplus_model.xi / hplus_model.rho) + 0.1)


def test_torus_values_match_conserved_set_at_perihelion(h0_model):
    L = 0.5
    lo, hi = _h0_window(h0_model, L)
    for E in np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 5):
        s1_pred, s2_pred = integral_values_on_torus(h0_model, float(E), L)
        regime = classify(h0_model, float(E), L)
        cs = conserved_set(h0_model, start_point(regime))
        assert cs.S1 == pytest.approx(s1_pred, abs=1e-10)
        assert cs.S2 == pytest.approx(s2_pred, abs=1e-10)
