import math

import numpy as np
import pytest

from koenigs.errors import BoundaryReached, NotBounded
from koenigs.flow import closure_test, drift_report, integrate
from koenigs.geodesics import classify, curve_residual, start_point
from koenigs.models import PhasePoint, make_model


def test_drift_small_on_long_bounded_run(h0_model):
    # several radial periods of a closed orbit; momenta stay order one,
    # so absolute drift tracks the integrator tolerance
    regime = classify(h0_model, 0.5, 0.5)
    traj = integrate(h0_model, start_point(regime), 100.0, tol=1e-10)
    rep = drift_report(traj)
    assert max(rep.values()) < 1e-8


def test_drift_monotone_in_tol(h0_model):
    regime = classify(h0_model, 0.5, 0.5)
    start = start_point(regime)
    drifts = []
    for tol in (1e-6, 1e-10):
        traj = integrate(h0_model, start, 12.0, tol=tol)
        drifts.append(max(drift_report(traj).values()))
    assert drifts[0] > drifts[1]


def test_trajectory_times_increase_and_shapes_match(h0_model):
    regime = classify(h0_model, 0.5, 0.5)
    traj = integrate(h0_model, start_point(regime), 3.0, tol=1e-9, samples=57)
    assert len(traj.t) == 57
    assert np.all(np.diff(traj.t) > 0)
    assert traj.states.shape == (57, 4)
    assert len(traj.samples) == 57


def test_boundary_event_carries_partial_trajectory():
    # zero-energy arcs run into the x -> 0 chart edge
    model = make_model("trig", 0.5, -0.5)
    regime = classify(model, 0.0, 1.0)
    with pytest.raises(BoundaryReached) as excinfo:
        integrate(model, start_point(regime), 50.0, tol=1e-9)
    reached = excinfo.value
    assert reached.trajectory is not None
    assert 0.0 < reached.t <= 50.0
    assert reached.point is not None


def test_time_reversal_returns_to_start(hplus_model):
    regime = classify(hplus_model, 1.8, 1.0)
    start = start_point(regime)
    fwd = integrate(hplus_model, start, 2.0, tol=1e-10, samples=2)
    end = fwd.point(-1)
    back = integrate(hplus_model, PhasePoint(end.q1, end.q2, -end.p1, -end.p2),
                     2.0, tol=1e-10, samples=2)
    ret = back.point(-1)
    assert ret.q1 == pytest.approx(start.q1, abs=1e-9)
    assert ret.q2 == pytest.approx(start.q2, abs=1e-9)
    assert ret.p1 == pytest.approx(-start.p1, abs=1e-9)
    assert ret.p2 == pytest.approx(-start.p2, abs=1e-9)


def test_flow_stays_on_classified_curve(h0_model):
    regime = classify(h0_model, 0.5, 0.5)
    traj = integrate(h0_model, start_point(regime), 12.0, tol=1e-10)
    worst = max(curve_residual(regime, traj.point(i)) for i in range(len(traj.t)))
    assert worst < 1e-6


def test_radial_momentum_flips_with_continuous_integrals(h0_model):
    # radial period here is about 13.4, so 30 time units give several flips
    regime = classify(h0_model, 0.5, 0.5)
    traj = integrate(h0_model, start_point(regime), 30.0, tol=1e-10, samples=1500)
    p1 = traj.states[:, 2]
    flips = np.nonzero(p1[:-1] * p1[1:] < 0.0)[0]
    assert flips.size >= 2
    diag = traj.diagnostics
    for i in flips:
        for series in (diag.E, diag.L, diag.S1, diag.S2):
            assert abs(series[i + 1] - series[i]) < 1e-7


def test_affine_line_regime_traces_straight_lines():
    model = make_model("affine", 1.2, 2.0)
    regime = classify(model, 1.0, 1.0)
    slope = regime.params["slope"]
    y0 = regime.params["y0"]
    try:
        traj = integrate(model, start_point(regime), 2.0, tol=1e-10)
    except BoundaryReached as reached:
        traj = reached.trajectory
    for i in range(len(traj.t)):
        pt = traj.point(i)
        assert abs(pt.q1 - slope * abs(pt.q2 - y0)) < 1e-6


def test_closure_h0_window():
    model = make_model("h0", 0.8, 1.1)
    report = closure_test(model, 0.5, 0.5, tol=1e-5)
    assert report["closed"]
    assert report["gap"] < 1e-5
    assert report["angular_advance"] == pytest.approx(math.pi, abs=1e-6)


def test_closure_hplus_window(hplus_model):
    report = closure_test(hplus_model, 1.8, 1.0, tol=1e-5)
    assert report["closed"]
    assert report["gap"] < 1e-5
    assert report["angular_advance"] == pytest.approx(math.pi, abs=1e-6)


def test_closure_rejects_unbounded_regime(hplus_model):
    # above the essential edge the orbit opens up (e > 1)
    with pytest.raises(NotBounded):
        closure_test(hplus_model, 2.5, 1.0, tol=1e-5)
