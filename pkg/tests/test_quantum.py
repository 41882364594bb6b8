import math

import numpy as np
import pytest

from koenigs.errors import ConvergenceFailure, DomainError, NoBoundState
from koenigs.models import Model, make_model
from koenigs.quantum import (
    count_bound_levels,
    effective_potential,
    eigenfunction,
    q_coordinate,
    radial_problem,
    schrodinger_residual,
    shoot_eigenvalue,
    spectrum,
)


def _j_tilde(n, m):
    return 2 * n + abs(m) + 1


def test_h0_closed_form_levels():
    model = make_model("h0", 0.8, 1.1)
    for lv in spectrum(model, 2, 2):
        jt = _j_tilde(lv.n, lv.m)
        expected = jt * (math.sqrt(1.1 + 0.64 * jt**2) - 0.8 * jt)
        assert lv.J_tilde == jt
        assert lv.E == pytest.approx(expected, rel=1e-14)


def test_h0_spectrum_infinite_in_n():
    model = make_model("h0", 0.8, 1.1)
    assert len(spectrum(model, 6, 0)) == 7  # no window cap for this family


def test_hplus_window_caps_levels():
    model = make_model("hplus", 2.0, 3.75)
    levels = spectrum(model, 3, 3)
    assert len(levels) == 1
    only = levels[0]
    assert (only.n, only.m) == (0, 0)
    assert only.E == pytest.approx(math.sqrt(6.0) - 1.5, abs=1e-12)


def test_energies_degenerate_in_j_tilde():
    model = make_model("hplus", 2.0, 31.75)
    by_j = {}
    for lv in spectrum(model, 3, 3):
        by_j.setdefault(lv.J_tilde, []).append(lv.E)
    assert any(len(v) >= 3 for v in by_j.values())
    for energies in by_j.values():
        assert max(energies) - min(energies) < 1e-13


def test_spectrum_sorted_and_sign_symmetric():
    model = make_model("h0", 0.5, 3.0)
    levels = spectrum(model, 2, 2)
    energies = [lv.E for lv in levels]
    assert energies == sorted(energies)
    pairs = {(lv.n, lv.m) for lv in levels}
    assert (0, 1) in pairs and (0, -1) in pairs


def test_nonpositive_coupling_rejected():
    model = make_model("h0", 0.8, -1.0)
    with pytest.raises(DomainError):
        spectrum(model, 1, 1)


def test_shooting_matches_formula_spot():
    model = make_model("h0", 2.0, 3.0)
    levels = {(lv.n, lv.m): lv.E for lv in spectrum(model, 1, 1)}
    assert shoot_eigenvalue(model, 0, 1) == pytest.approx(levels[(1, 0)], abs=1e-6)
    assert shoot_eigenvalue(model, 1, 0) == pytest.approx(levels[(0, 1)], abs=1e-6)


def test_shooting_matches_formula_hplus_spot():
    # (n=1, m=0) has J_tilde = 3, inside the window sqrt(xi_tilde/rho) = 4;
    # (n=1, m=1) would sit exactly on the continuum edge and is excluded
    model = make_model("hplus", 0.5, 7.75)
    levels = {(lv.n, lv.m): lv.E for lv in spectrum(model, 1, 1)}
    assert (1, 1) not in levels
    assert shoot_eigenvalue(model, 0, 1) == pytest.approx(levels[(1, 0)], abs=1e-6)
    assert shoot_eigenvalue(model, 1, 0) == pytest.approx(levels[(0, 1)], abs=1e-6)


def test_count_bound_levels_matches_window():
    model = make_model("hplus", 0.5, 7.75)
    j_max = math.sqrt(8.0 / 0.5)  # = 4
    for m in range(0, 4):
        predicted = sum(1 for n in range(32) if 2 * n + m + 1 < j_max)
        assert count_bound_levels(model, m) == predicted


def test_count_bound_levels_h0_rejected():
    model = make_model("h0", 0.8, 1.1)
    with pytest.raises(DomainError):
        count_bound_levels(model, 0)


def test_no_bound_state_beyond_window():
    model = make_model("hplus", 2.0, 3.75)
    with pytest.raises((NoBoundState, ConvergenceFailure)):
        shoot_eigenvalue(model, 0, 1)  # J_tilde = 3 exceeds sqrt(2)


def test_eigenfunction_nodes_and_angular_factor():
    model = make_model("h0", 0.8, 1.1)
    lv = [l for l in spectrum(model, 2, 1) if (l.n, l.m) == (2, 1)][0]
    # nodes for this level sit near r = 3.34 and 6.46
    r = np.linspace(0.05, 10.0, 2000)
    vals = np.array([eigenfunction(model, lv, (ri, 0.0)) for ri in r])
    radial = vals.real
    sign_changes = np.sum(radial[:-1] * radial[1:] < 0)
    assert sign_changes == 2
    # angular factor is a pure phase e^{i m phi}
    v0 = eigenfunction(model, lv, (1.0, 0.0))
    v1 = eigenfunction(model, lv, (1.0, 0.7))
    assert abs(v1 / v0 - np.exp(1j * 0.7)) < 1e-12


def test_effective_potential_saturates(hplus_model):
    # the barrier saturates at xi_tilde/rho; the solver's 1/2 factor then
    # puts the essential-spectrum edge in energy at xi_tilde/(2 rho)
    u_inf = (hplus_model.xi + 0.25) / hplus_model.rho
    far = effective_potential(hplus_model, 1, 30.0)
    assert far == pytest.approx(u_inf, rel=1e-8)


def test_q_coordinate_flat_limit():
    # at rho=1 the auxiliary coordinate is linear: q(chi) = chi
    model = Model("hplus", 1.0, 4.0)
    assert q_coordinate(model, 1.7) == pytest.approx(1.7, rel=1e-10)


def test_radial_problem_validation(h0_model):
    prob = radial_problem(h0_model, 1)
    assert prob.m == 1
    with pytest.raises(DomainError):
        radial_problem(h0_model, 0, bc="neumann")


def test_residual_converges_quadratically():
    model = make_model("h0", 0.8, 1.1)
    lv = [l for l in spectrum(model, 1, 1) if (l.n, l.m) == (1, 1)][0]
    r1 = schrodinger_residual(model, lv, h=1e-3)
    r2 = schrodinger_residual(model, lv, h=5e-4)
    assert r1 < 1e-5
    assert r1 / r2 > 2.5
