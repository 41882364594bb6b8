"""Runtime verification suite: one check per documented invariant.

Each check returns PASS/FAIL with a measured number; XFAIL marks the one
documented expectation that is recorded as unattainable (the third
turning-point anchor, whose true value sits outside its reference band).
The registry is grouped by module name so `--suite models` etc. can run
a slice; `--suite all` runs everything.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import actions as actions_mod
from . import quantum as quantum_mod
from . import specfun as specfun_mod
from .errors import BoundaryReached, NoMotion, NotBounded
from .flow import closure_test, drift_report, integrate
from .geodesics import classify, curve_residual, radial_momentum_sq, start_point
from .invariants import (
    algebra_residuals,
    conserved_functions,
    conserved_set,
    poisson_bracket,
)
from .models import (
    Model,
    PhasePoint,
    brioschi_curvature,
    embed,
    generators,
    hamiltonian,
    kernel,
    make_model,
    make_point,
    metric_components,
    potential,
    scalar_curvature,
)

DEFAULT_SEED = 20260819


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # PASS, FAIL, XFAIL
    detail: str


_VERIFY_MODELS = {
    "trig": make_model("trig", 0.5, 0.7),
    "h0": make_model("h0", 0.8, 1.1),
    "hplus": make_model("hplus", 2.0, 1.3),
    "hminus": make_model("hminus", 0.6, 0.9),
    "affine": make_model("affine", 1.2, 0.9),
}

_Q1_RANGES = {
    "trig": (0.35, math.pi - 0.35),
    "h0": (0.3, 2.5),
    "hplus": (0.3, 2.2),
    "affine": (0.3, 2.5),
}

# one regime per classification branch; shared with the acceptance tests
REGIME_CASES = (
    ("trig", 0.5, -0.5, 0.0, 1.0, "e0_arcs"),
    ("trig", 0.5, -1.0, 0.0, 1.0, "e0_wall"),
    ("trig", 0.5, -2.0, 0.0, 1.0, "e0_full"),
    ("trig", 0.5, 2.0, 1.0, 1.0, "epos_single"),
    ("trig", 0.5, 0.8, 1.0, 1.0, "epos_arcs"),
    ("trig", 0.5, 0.0, 1.0, 1.0, "epos_full"),
    ("trig", 0.5, 0.0, 2.0 * (2.0 - math.sqrt(3.0)), 1.0, "epos_sep"),
    ("trig", 0.5, -2.0, -1.0, 1.0, "epos_single"),  # mirrored negative energy
    ("h0", 0.8, 1.1, 2.0, 0.9, "open"),
    ("h0", 0.8, 1.1, 0.5, 0.5, "closed"),
    ("hplus", 2.0, 1.0, 1.0, 0.8, "open"),
    ("hplus", 2.0, 8.0, 1.8, 1.0, "closed"),
    ("affine", 1.2, 2.0, 1.0, 1.0, "lines"),
    ("affine", 1.2, 3.0, 1.0, 1.0, "hyperbola"),
    ("affine", 1.2, 1.0, 1.0, 1.0, "conjugate_hyperbola"),
    ("affine", 1.2, 1.0, 1.0, math.sqrt(2.4), "parabola"),
    ("affine", 1.2, 1.0, 1.0, 2.0, "ellipse"),
)

_FLOW_SPANS = {
    "e0_arcs": 2.0,
    "e0_wall": 3.0,
    "e0_full": 3.0,
    "epos_single": 4.0,
    "epos_arcs": 4.0,
    "epos_full": 2.0,
    "epos_sep": 2.0,
    "open": 6.0,
    "closed": 12.0,
    "lines": 2.0,
    "hyperbola": 4.0,
    "conjugate_hyperbola": 2.0,
    "parabola": 2.0,
    "ellipse": 2.5,
}


def flow_span(tag, E):
    """Integration span for a regime demonstration run.

    Wall-bound trig orbits accelerate without limit, and the negative
    energy mirror reaches the x=0 wall sooner than its positive twin
    reaches x=pi; spans keep momenta moderate so absolute drift stays
    comparable to the integrator tolerance.
    """
    if tag == "epos_single" and E < 0:
        return 1.5
    return _FLOW_SPANS[tag]


def _random_points(model, rng, n):
    lo, hi = _Q1_RANGES.get(model.family, (0.3, 2.5))
    if model.family == "hminus":
        x_lo = math.asinh(0.4 - model.rho)
        q1 = rng.uniform(x_lo + 0.15, x_lo + 2.2, n)
    else:
        q1 = rng.uniform(lo, hi, n)
    q2 = rng.uniform(-1.5, 1.5, n)
    p1 = rng.uniform(-2.0, 2.0, n)
    p2 = rng.uniform(-2.0, 2.0, n)
    return PhasePoint(q1=q1, q2=q2, p1=p1, p2=p2)


def _flow_case(case, tol=1e-10):
    family, rho, xi, E, L, expected = case
    model = make_model(family, rho, xi)
    regime = classify(model, E, L)
    if regime.tag != expected:
        raise AssertionError(f"{family} (E={E}, L={L}) classified {regime.tag}, expected {expected}")
    start = start_point(regime)
    span = flow_span(regime.tag, E)
    try:
        traj = integrate(model, start, span, tol=tol)
    except BoundaryReached as reached:
        traj = reached.trajectory
    return model, regime, traj


# -- models ------------------------------------------------------------------

def _check_hamiltonian_from_metric(rng, tol):
    gate = 1e-12 if tol is None else tol
    worst = 0.0
    for model in _VERIFY_MODELS.values():
        pts = _random_points(model, rng, 1000)
        g11, g22 = metric_components(model, pts.q1)
        rebuilt = 0.5 * (pts.p1**2 / g11 + pts.p2**2 / g22) + potential(model, pts.q1)
        direct = hamiltonian(model, pts)
        err = np.max(np.abs(rebuilt - direct) / np.maximum(1.0, np.abs(direct)))
        worst = max(worst, float(err))
    return worst < gate, f"max deviation {worst:.3e} (gate {gate:g})"


def _check_curvature_vs_brioschi(rng, tol):
    gate = 1e-6 if tol is None else tol
    worst = 0.0
    for model in _VERIFY_MODELS.values():
        if model.family == "hminus":
            x_lo = math.asinh(0.4 - model.rho)
            grid = np.linspace(x_lo + 0.1, x_lo + 2.2, 25)
        else:
            lo, hi = _Q1_RANGES[model.family]
            grid = np.linspace(lo, hi, 25)
        for q1 in grid:
            diff = abs(scalar_curvature(model, q1) - brioschi_curvature(model, q1))
            worst = max(worst, diff)
    return worst < gate, f"max |closed - oracle| {worst:.3e} (gate {gate:g})"


def _check_embed_hyperboloid(rng, tol):
    gate = 1e-12 if tol is None else tol
    worst = 0.0
    for fam in ("trig", "hplus", "affine"):
        model = _VERIFY_MODELS[fam]
        lo, hi = _Q1_RANGES[fam]
        for q1 in np.linspace(lo, hi, 12):
            for q2 in np.linspace(-1.2, 1.2, 7):
                x1, x2, x3 = embed(model, q1, q2)
                worst = max(worst, abs(x1**2 + x2**2 - x3**2 + 1.0))
    return worst < gate, f"max |x1^2+x2^2-x3^2+1| {worst:.3e} (gate {gate:g})"


def _check_generator_algebra(rng, tol):
    gate = 1e-8 if tol is None else tol
    worst = 0.0

    def gfun(model, i):
        return lambda pt: generators(model, pt)[i]

    for fam in ("trig", "h0", "hplus", "affine"):
        model = _VERIFY_MODELS[fam]
        pts = _random_points(model, rng, 30)
        for idx in range(30):
            pt = PhasePoint(
                q1=float(pts.q1[idx]), q2=float(pts.q2[idx]),
                p1=float(pts.p1[idx]), p2=float(pts.p2[idx]),
            )
            g_vals = generators(model, pt)

            def pb(i, j):
                # tabulated relations use the reversed ordering convention
                return poisson_bracket(gfun(model, j), gfun(model, i), pt, model=model)

            if fam == "h0":
                residuals = (pb(0, 1), pb(2, 0) + g_vals[1], pb(2, 1) - g_vals[0])
            else:
                residuals = (
                    pb(0, 1) - g_vals[2],
                    pb(1, 2) + g_vals[0],
                    pb(2, 0) + g_vals[1],
                )
            worst = max(worst, max(abs(float(r)) for r in residuals))
    return worst < gate, f"max bracket residual {worst:.3e} (gate {gate:g})"


def _check_hminus_blowup(rng, tol):
    model = _VERIFY_MODELS["hminus"]
    x_near = math.asinh(1e-3 - model.rho)
    x_far = math.asinh(1.0 - model.rho)
    r_near = abs(scalar_curvature(model, x_near))
    r_far = abs(scalar_curvature(model, x_far))
    ratio = r_near / r_far
    return ratio > 1e6, f"|R| ratio near/far {ratio:.3e} (gate 1e6)"


# -- invariants ---------------------------------------------------------------

def _check_conservation_brackets(rng, tol):
    # residuals are relative to max(1, |terms|), the module's reporting rule
    gate = 1e-7 if tol is None else tol
    worst = 0.0
    for model in _VERIFY_MODELS.values():
        pts = _random_points(model, rng, 1000)
        funcs = conserved_functions(model)
        h_func = lambda pt, m=model: hamiltonian(m, pt)
        e_vals = hamiltonian(model, pts)
        for name in ("L", "S1", "S2"):
            vals = poisson_bracket(h_func, funcs[name], pts, model=model)
            scale = np.maximum(1.0, np.maximum(np.abs(e_vals), np.abs(funcs[name](pts))))
            worst = max(worst, float(np.max(np.abs(vals) / scale)))
    return worst < gate, f"max |{{H, integral}}| {worst:.3e} relative (gate {gate:g})"


def _check_algebra_identities(rng, tol):
    gate = 1e-11 if tol is None else tol
    bracket_gate = 1e-7
    worst_exact = 0.0
    worst_bracket = 0.0
    exact_keys = ("recombination", "casimir")
    bracket_keys = ("w_L_S1", "w_L_S2", "w_S1_S2")
    for model in _VERIFY_MODELS.values():
        pts = _random_points(model, rng, 40)
        for idx in range(40):
            pt = PhasePoint(
                q1=float(pts.q1[idx]), q2=float(pts.q2[idx]),
                p1=float(pts.p1[idx]), p2=float(pts.p2[idx]),
            )
            res = algebra_residuals(model, pt)
            for key, val in res.items():
                if key in exact_keys:
                    worst_exact = max(worst_exact, abs(val))
                elif key in bracket_keys:
                    worst_bracket = max(worst_bracket, abs(val))
    ok = worst_exact < gate and worst_bracket < bracket_gate
    return ok, (
        f"exact identities {worst_exact:.3e} (gate {gate:g}); "
        f"bracket relations {worst_bracket:.3e} (gate {bracket_gate:g})"
    )


def _check_trig_eigen(rng, tol):
    gate = 1e-7 if tol is None else tol
    model = _VERIFY_MODELS["trig"]
    pts = _random_points(model, rng, 60)
    worst = 0.0
    for idx in range(60):
        pt = PhasePoint(
            q1=float(pts.q1[idx]), q2=float(pts.q2[idx]),
            p1=float(pts.p1[idx]), p2=float(pts.p2[idx]),
        )
        res = algebra_residuals(model, pt)
        worst = max(worst, abs(res["eigen_plus"]), abs(res["eigen_minus"]))
    return worst < gate, f"max ladder residual {worst:.3e} (gate {gate:g})"


# -- geodesics ----------------------------------------------------------------

def _check_turnings_vs_bisection(rng, tol):
    gate = 1e-10 if tol is None else tol
    worst = 0.0
    checked = 0
    for case in REGIME_CASES:
        family, rho, xi, E, L, _ = case
        model = make_model(family, rho, xi)
        regime = classify(model, E, L)
        if regime.eccentricity == 0.0:
            continue  # circular: double root with no independent locator
        for t_pt in regime.turning_points:
            f = lambda q: radial_momentum_sq(model, E, L, q)
            root = None
            for d in (1e-4, 1e-3, 1e-2):
                d_eff = d * max(1.0, abs(t_pt))
                lo_q, hi_q = t_pt - d_eff, t_pt + d_eff
                if family == "trig":
                    lo_q = max(lo_q, 1e-9)
                    hi_q = min(hi_q, math.pi - 1e-9)
                else:
                    lo_q = max(lo_q, 1e-12)
                try:
                    if f(lo_q) * f(hi_q) < 0.0:
                        root = brentq(f, lo_q, hi_q, xtol=1e-14)
                        break
                except ValueError:
                    continue
            if root is None:
                # tangency (double root): bisect the derivative instead
                h_d = 1e-6 * max(1.0, abs(t_pt))
                df = lambda q: (f(q + h_d) - f(q - h_d)) / (2.0 * h_d)
                lo_q = t_pt - 1e-3 * max(1.0, abs(t_pt))
                hi_q = t_pt + 1e-3 * max(1.0, abs(t_pt))
                if df(lo_q) * df(hi_q) < 0.0:
                    root = brentq(df, lo_q, hi_q, xtol=1e-14)
            if root is None:
                return False, f"no bracket at turning {t_pt:.6f} of {regime.tag}"
            worst = max(worst, abs(root - t_pt))
            checked += 1
    return worst < gate, f"{checked} turnings, max |closed - bisected| {worst:.3e}"


_FLOW_RESULTS = {}


def _flow_results():
    if not _FLOW_RESULTS:
        for case in REGIME_CASES:
            _FLOW_RESULTS[case] = _flow_case(case)
    return _FLOW_RESULTS


def _max_curve_residual(regime, traj):
    worst = 0.0
    for i in range(len(traj.t)):
        pt = traj.point(i)
        worst = max(worst, curve_residual(regime, pt))
    return worst


def _check_flow_curve_residual(rng, tol):
    gate = 1e-6 if tol is None else tol
    worst = 0.0
    for case, (model, regime, traj) in _flow_results().items():
        res = _max_curve_residual(regime, traj)
        worst = max(worst, res)
        if res >= gate:
            return False, f"{case[0]}/{regime.tag}: residual {res:.3e} (gate {gate:g})"
    return True, f"{len(REGIME_CASES)} regimes, max residual {worst:.3e} (gate {gate:g})"


def _check_eccentricity_windows(rng, tol):
    model = _VERIFY_MODELS["h0"]
    rho, xi, L = model.rho, model.xi, 0.5
    edge = xi / (2.0 * rho)
    e_plus = L**2 * (-rho + math.sqrt(rho**2 + xi / L**2))
    for E in np.linspace(0.05, edge * 1.3, 60):
        if min(abs(E - e_plus), abs(E - edge)) < 1e-3:
            continue
        inside = e_plus < E < edge
        try:
            regime = classify(model, float(E), L)
            closed = regime.closed
            ecc = regime.eccentricity
        except NoMotion:
            closed, ecc = False, None
        if closed != inside:
            return False, f"h0 window mismatch at E={E:.4f}"
        if closed and not (0.0 <= ecc < 1.0):
            return False, f"h0 closed with e={ecc} at E={E:.4f}"
    hp = make_model("hplus", 2.0, 8.0)
    rho, xi, L = hp.rho, hp.xi, 1.0
    e_plus = L * (math.sqrt(xi + rho * (rho - 1.0) * L**2) - (rho - 0.5) * L)
    edge = xi / (2.0 * rho)
    for E in np.linspace(0.2, edge * 1.2, 60):
        if min(abs(E - e_plus), abs(E - edge)) < 1e-3:
            continue
        inside = e_plus < E < edge
        try:
            regime = classify(hp, float(E), L)
            closed = regime.closed
            ecc = regime.eccentricity
        except NoMotion:
            closed, ecc = False, None
        if closed != inside:
            return False, f"hplus window mismatch at E={E:.4f}"
        if closed and not (0.0 <= ecc < 1.0):
            return False, f"hplus closed with e={ecc} at E={E:.4f}"
    return True, "closed <=> E in (E_plus, edge) on both families; e < 1 inside"


def _check_trig_reflection(rng, tol):
    gate = 1e-6 if tol is None else tol
    worst = 0.0
    for case, (model, regime, traj) in _flow_results().items():
        if case[0] != "trig":
            continue
        for i in range(0, len(traj.t), 7):
            pt = traj.point(i)
            worst = max(worst, curve_residual(regime, (pt.q1, -pt.q2)))
    return worst < gate, f"max reflected residual {worst:.3e} (gate {gate:g})"


def _affine_curve_y(regime, u):
    p = regime.params
    y0 = p["y0"]
    tag = regime.tag
    if tag == "ellipse":
        return y0 + math.sqrt(max(p["u_star"] ** 2 - u**2, 0.0) / p["kappa"])
    if tag == "hyperbola":
        return y0 + math.sqrt(max(u**2 - p["u_star"] ** 2, 0.0) / p["k"])
    if tag == "conjugate_hyperbola":
        return y0 + math.sqrt((u**2 + p["u_star"] ** 2) / p["k"])
    if tag == "parabola":
        return y0 + p["focal"] * u**2
    return y0 + u / p["slope"]


def _check_affine_s2_conservation(rng, tol):
    gate = 1e-10 if tol is None else tol
    worst = 0.0
    for case in REGIME_CASES:
        if case[0] != "affine":
            continue
        family, rho, xi, E, L, _ = case
        model = make_model(family, rho, xi)
        regime = classify(model, E, L)
        lo, hi = regime.domain[0]
        lo = max(lo + 0.05, 0.05)
        hi = min(hi, lo + 2.0) if math.isfinite(hi) else lo + 2.0
        sign = -1.0 if regime.tag == "ellipse" else 1.0
        if regime.tag == "ellipse":
            hi = regime.params["u_star"] * 0.98
        s1_vals, s2_vals = [], []
        for u in np.linspace(lo, hi, 40):
            psq = radial_momentum_sq(model, E, L, float(u))
            if psq < 0.0:
                continue
            pt = make_point(model, float(u), _affine_curve_y(regime, float(u)), sign * math.sqrt(psq), L)
            cs = conserved_set(model, pt)
            s1_vals.append(cs.S1)
            s2_vals.append(cs.S2)
        spread = max(np.ptp(s1_vals), np.ptp(s2_vals))
        scale = max(1.0, max(abs(v) for v in s1_vals + s2_vals))
        worst = max(worst, spread / scale)
    return worst < gate, f"max integral spread along curves {worst:.3e} (gate {gate:g})"


# -- flow ---------------------------------------------------------------------

def _check_drift_scaling(rng, tol):
    case = ("h0", 0.8, 1.1, 0.5, 0.5, "closed")
    model = make_model(*case[:3])
    regime = classify(model, case[3], case[4])
    start = start_point(regime)
    drifts = []
    for tol_i in (1e-6, 1e-8, 1e-10):
        traj = integrate(model, start, 12.0, tol=tol_i)
        rep = drift_report(traj)
        drifts.append(max(rep.values()))
    ok = all(d < 100.0 * t for d, t in zip(drifts, (1e-6, 1e-8, 1e-10)))
    ok = ok and drifts[0] > drifts[2]
    return ok, "drift at tol 1e-6/8/10: " + ", ".join(f"{d:.2e}" for d in drifts)


def _check_time_reversal(rng, tol):
    gate_tol = 1e-10
    worst = 0.0
    for case in (("h0", 0.8, 1.1, 0.5, 0.5, "closed"), ("trig", 0.5, 2.0, 1.0, 1.0, "epos_single")):
        model = make_model(*case[:3])
        regime = classify(model, case[3], case[4])
        start = start_point(regime)
        fwd = integrate(model, start, 2.0, tol=gate_tol, samples=2)
        end = fwd.point(-1)
        back = integrate(
            model,
            PhasePoint(q1=end.q1, q2=end.q2, p1=-end.p1, p2=-end.p2),
            2.0,
            tol=gate_tol,
            samples=2,
        )
        ret = back.point(-1)
        err = max(
            abs(ret.q1 - start.q1), abs(ret.q2 - start.q2),
            abs(ret.p1 + start.p1), abs(ret.p2 + start.p2),
        )
        worst = max(worst, err)
    return worst < 10.0 * gate_tol, f"max return error {worst:.3e} (gate {10.0 * gate_tol:g})"


def _check_two_sided_residual(rng, tol):
    # every regime is retraced in reversed time (both momenta flipped at a
    # mid sample), so the same positions are visited on the opposite
    # radial-momentum branch
    gate = 1e-6 if tol is None else tol
    worst = 0.0
    sided = 0
    for case, (model, regime, traj) in _flow_results().items():
        trajs = [traj]
        mid = traj.point(2 * len(traj.t) // 3)
        if abs(mid.p1) > 1e-9:
            reversed_state = PhasePoint(mid.q1, mid.q2, -mid.p1, -mid.p2)
            try:
                trajs.append(integrate(model, reversed_state, flow_span(regime.tag, regime.E), tol=1e-10))
            except BoundaryReached as reached:
                trajs.append(reached.trajectory)
        p1 = np.concatenate([t.states[:, 2] for t in trajs])
        if not (np.any(p1 > 1e-9) and np.any(p1 < -1e-9)):
            continue
        sided += 1
        for t in trajs:
            for i in range(0, len(t.t), 5):
                worst = max(worst, curve_residual(regime, t.point(i)))
    if sided < 8:
        return False, f"only {sided} regimes visited both momentum branches"
    return worst < gate, f"{sided} two-sided regimes, max residual {worst:.3e} (gate {gate:g})"


def _check_turning_reflection(rng, tol):
    case = ("h0", 0.8, 1.1, 0.5, 0.5, "closed")
    model = make_model(*case[:3])
    regime = classify(model, case[3], case[4])
    traj = integrate(model, start_point(regime), 12.0, tol=1e-10, samples=1200)
    p1 = np.asarray([traj.point(i).p1 for i in range(len(traj.t))])
    flips = np.nonzero(p1[:-1] * p1[1:] < 0.0)[0]
    if flips.size == 0:
        return False, "no radial turning crossed"
    diag = traj.diagnostics
    worst = 0.0
    for i in flips:
        for vals in (diag.E, diag.L, diag.S1, diag.S2):
            worst = max(worst, abs(float(vals[i + 1] - vals[i])))
    return worst < 1e-7, f"{flips.size} turnings, max integral jump {worst:.3e}"


# -- actions ------------------------------------------------------------------

def _check_degenerate_frequency(rng, tol):
    gate = 1e-10 if tol is None else tol
    worst = 0.0
    for fam, rho, xi, L_pair, E in (
        ("h0", 0.8, 1.1, (0.3, 0.5), 0.55),
        ("hplus", 2.0, 8.0, (0.8, 1.0), 1.9),
    ):
        model = make_model(fam, rho, xi)
        js = [actions_mod.action_variables(model, E, L).J for L in L_pair]
        worst = max(worst, abs(js[0] - js[1]))
        # positive frequency: E(J) strictly increasing across the window
        j_grid = np.linspace(js[0] * 0.5, js[0] * 0.99, 12)
        e_grid = [actions_mod.energy_from_J(model, float(j)) for j in j_grid]
        if not all(b > a for a, b in zip(e_grid, e_grid[1:])):
            return False, f"{fam}: E(J) not increasing"
    return worst < gate, f"max J split dependence {worst:.3e} (gate {gate:g})"


def _check_actions_quadrature(rng, tol):
    gate = 1e-8 if tol is None else tol
    worst = 0.0
    for fam, rho, xi, L in (("h0", 0.8, 1.1, 0.5), ("hplus", 2.0, 8.0, 1.0)):
        model = make_model(fam, rho, xi)
        edge = xi / (2.0 * rho)
        if fam == "h0":
            e_lo = L**2 * (-rho + math.sqrt(rho**2 + xi / L**2))
        else:
            e_lo = L * (math.sqrt(xi + rho * (rho - 1.0) * L**2) - (rho - 0.5) * L)
        for E in np.linspace(e_lo + 0.02 * (edge - e_lo), edge - 0.02 * (edge - e_lo), 20):
            closed = actions_mod.action_variables(model, float(E), L).I_radial
            quadr = actions_mod.action_quadrature(model, float(E), L)
            worst = max(worst, abs(closed - quadr) / max(1e-12, abs(closed)))
    return worst < gate, f"max relative gap {worst:.3e} over 2x20 energies (gate {gate:g})"


def _check_hplus_endpoint(rng, tol):
    model = make_model("hplus", 2.0, 8.0)
    L = 1.0
    e_plus = L * (math.sqrt(model.xi + model.rho * (model.rho - 1.0) * L**2) - (model.rho - 0.5) * L)
    val = actions_mod.action_quadrature(model, e_plus, L)
    return abs(val) < 1e-8, f"quadrature action at E_plus: {val:.3e} (gate 1e-8)"


# -- quantum ------------------------------------------------------------------

def _check_spectrum_vs_shooting(rng, tol):
    gate = 1e-6 if tol is None else tol
    worst = 0.0
    grids = [("h0", rho, xi) for rho in (0.5, 1.0, 2.0) for xi in (1.0, 3.0)]
    grids += [("hplus", 0.5, 7.75), ("hplus", 2.0, 31.75)]
    for fam, rho, xi in grids:
        model = make_model(fam, rho, xi)
        for lv in quantum_mod.spectrum(model, 3, 3):
            if lv.m < 0:
                continue
            diff = abs(quantum_mod.shoot_eigenvalue(model, lv.m, lv.n) - lv.E)
            worst = max(worst, diff)
    return worst < gate, f"max |closed - shot| {worst:.3e} over full grid (gate {gate:g})"


def _check_degeneracy(rng, tol):
    for fam, rho, xi in (("h0", 0.8, 1.1), ("hplus", 2.0, 31.75)):
        model = make_model(fam, rho, xi)
        by_j = {}
        for lv in quantum_mod.spectrum(model, 4, 4):
            by_j.setdefault(lv.J_tilde, set()).add(lv.E)
        for jt, energies in by_j.items():
            if max(energies) - min(energies) > 1e-12:
                return False, f"{fam}: split multiplet at J_tilde={jt}"
    return True, "E depends on (n, m) through J_tilde only"


def _check_count_law(rng, tol):
    pairs = [(2.0, 3.75), (0.5, 7.75)]
    tried = 0
    while len(pairs) < 7 and tried < 400:
        tried += 1
        rho = float(rng.uniform(0.3, 3.0))
        if abs(rho - 1.0) < 0.05:
            continue
        xi = float(rng.uniform(0.5, 40.0))
        model = make_model("hplus", rho, xi)
        xe = xi + 0.25
        jmax = math.sqrt(xe / rho)
        j_levels = [j for j in range(1, int(jmax) + 2) if j < jmax]
        if not j_levels:
            continue
        if min(abs(j - jmax) for j in range(1, int(jmax) + 2)) < 0.05:
            continue  # a level too close to the window edge
        delta_min = xe - 2.0 * rho * quantum_mod._level_energy(model, max(j_levels))
        if delta_min < 0.2:
            continue
        pairs.append((rho, xi))
    for rho, xi in pairs:
        model = make_model("hplus", rho, xi)
        xe = xi + 0.25
        jmax = math.sqrt(xe / rho)
        m = 0
        while 2 * 0 + m + 1 < jmax + 1:
            predicted = sum(1 for n in range(64) if 2 * n + m + 1 < jmax)
            counted = quantum_mod.count_bound_levels(model, m)
            if predicted != counted:
                return False, f"(rho,xi)=({rho:.3f},{xi:.3f}) m={m}: predicted {predicted}, counted {counted}"
            m += 1
    return True, f"{len(pairs)} parameter pairs, all per-m counts match"


def _check_classical_correspondence(rng, tol):
    gate = 1e-12 if tol is None else tol
    worst = 0.0
    m0 = make_model("h0", 0.8, 1.1)
    for lv in quantum_mod.spectrum(m0, 3, 3):
        worst = max(worst, abs(lv.E - actions_mod.energy_from_J(m0, lv.J_tilde)))
    mp = make_model("hplus", 2.0, 31.75)
    shifted = make_model("hplus", 2.0, 31.75 + 0.25)
    for lv in quantum_mod.spectrum(mp, 3, 3):
        worst = max(worst, abs(lv.E - actions_mod.energy_from_J(shifted, lv.J_tilde)))
    return worst < gate, f"max |E(J_tilde) - H(J)| {worst:.3e} (gate {gate:g})"


def _check_norms_finite(rng, tol):
    for fam, rho, xi in (("h0", 0.8, 1.1), ("hplus", 0.5, 7.75)):
        model = make_model(fam, rho, xi)
        for lv in quantum_mod.spectrum(model, 2, 2)[:4]:
            delta = quantum_mod._xi_eff(model) - 2.0 * model.rho * lv.E
            if fam == "h0":
                q = np.linspace(1e-3, math.sqrt(60.0 / math.sqrt(delta)), 4000)
                w = (1.0 + rho * q**2) * q
            else:
                q = np.linspace(1e-3, 12.0 + 3.0 / math.sqrt(delta), 4000)
                w = (1.0 + rho * np.sinh(q) ** 2) * np.sinh(q) / np.cosh(q) ** 2
            psi = quantum_mod._radial_wave(model, lv, q)
            dens = w * psi**2
            total = float(np.trapz(dens, q))
            tail = float(np.trapz(dens[-400:], q[-400:]))
            if not math.isfinite(total) or total <= 0.0:
                return False, f"{fam} (n={lv.n}, m={lv.m}): bad norm {total}"
            if tail > 1e-6 * total:
                return False, f"{fam} (n={lv.n}, m={lv.m}): tail not closed, {tail / total:.2e}"
    return True, "all sampled levels square-summable with closed tails"


# -- specfun ------------------------------------------------------------------

def _check_off_diagonal(rng, tol):
    gate = 1e-9 if tol is None else tol
    worst = 0.0
    for n, m in ((0, 1), (1, 0), (1, 1), (0, 2)):
        N = 2 * n + abs(m)
        for shift in (-2, 2):
            total = N + shift
            if total < 0:
                continue
            for k in range(total + 1):
                val = abs(specfun_mod.coefficient_oracle(n, m, k, total - k))
                worst = max(worst, val)
    return worst < gate, f"max off-diagonal projection {worst:.3e} (gate {gate:g})"


def _check_conjugation(rng, tol):
    gate = 1e-14 if tol is None else tol
    worst = 0.0
    for n in range(3):
        for m in range(1, 4):
            plus = specfun_mod.basis_coefficients(n, m).entries
            minus = specfun_mod.basis_coefficients(n, -m).entries
            for key, val in plus.items():
                worst = max(worst, abs(minus[key] - val.conjugate()))
    return worst < gate, f"max conjugation mismatch {worst:.3e} (gate {gate:g})"


def _check_generating_function(rng, tol):
    gate = 1e-10 if tol is None else tol
    worst = 0.0
    for n in range(4):
        for m in range(4):
            table = specfun_mod.basis_coefficients(n, m).entries
            for _ in range(20):
                lam, mu = rng.uniform(-1.0, 1.0, 2)
                total = sum(
                    (lam**n1) * (mu**n2) * (2.0 ** (n1 + n2)) * c
                    for (n1, n2), c in table.items()
                )
                # the oracle fixes the sign (-1)^n on the closed product form
                target = (
                    (-1.0) ** n
                    * (lam - 1j * mu) ** n
                    * (lam + 1j * mu) ** (n + m)
                    / math.factorial(n)
                )
                worst = max(worst, abs(total - target))
    return worst < gate, f"max generating-function gap {worst:.3e} (gate {gate:g})"


def _check_pointwise_resummation(rng, tol):
    gate = 1e-9 if tol is None else tol
    worst = 0.0
    zeta = np.linspace(0.05, 9.0, 20)
    phi = np.linspace(0.0, 2.0 * math.pi, 20, endpoint=False)
    Z, P = np.meshgrid(zeta, phi, indexing="ij")
    for n, m in ((0, 0), (0, 1), (1, 0), (1, 1), (0, 3), (2, 1)):
        table = specfun_mod.basis_coefficients(n, m).entries
        total = np.zeros_like(Z, dtype=complex)
        for (n1, n2), c in table.items():
            total += c * specfun_mod._cartesian_mode(n1, n2, Z, P)
        target = specfun_mod._oscillator_mode(n, m, Z, P)
        worst = max(worst, float(np.max(np.abs(total - target))))
    return worst < gate, f"max pointwise gap {worst:.3e} (gate {gate:g})"


# -- cli ----------------------------------------------------------------------

def _check_deterministic_output(rng, tol):
    from . import cli as cli_mod

    first = cli_mod.render_for_determinism_check()
    second = cli_mod.render_for_determinism_check()
    return first == second, f"{len(first)} bytes rendered twice, identical: {first == second}"


_EXPECTED_COUNTS = {
    "models": 5,
    "invariants": 3,
    "geodesics": 5,
    "flow": 4,
    "actions": 3,
    "quantum": 5,
    "specfun": 4,
    "cli": 2,
    "acceptance": 1,
}


def _check_registry_complete(rng, tol):
    counts = {}
    for name, _ in CHECKS:
        counts[name.split(".")[0]] = counts.get(name.split(".")[0], 0) + 1
    return counts == _EXPECTED_COUNTS, f"registry counts {counts}"


# -- acceptance xfail ---------------------------------------------------------

def _check_fig1_third_anchor(rng, tol):
    """Reference turning-point anchors for the sigma=0 family.

    The first two anchors hold.  The third reference value (1.60 +- 0.01)
    does not: the turning point at eta=10 is arccos(10 - sqrt(101)),
    which is 1.6207 and sits outside that band.  Kept here, run
    honestly, and reported as an expected failure.
    """
    ok = True
    vals = []
    for eta, anchor in ((0.1, 2.70), (1.0, 2.00), (10.0, 1.60)):
        x_star = math.acos(eta - math.sqrt(eta**2 + 1.0))
        vals.append(x_star)
        ok = ok and abs(x_star - anchor) <= 0.01
    detail = "x_* = " + ", ".join(f"{v:.4f}" for v in vals) + " vs 2.70/2.00/1.60 +-0.01"
    if ok:
        return True, detail + " (unexpectedly within band)"
    return "xfail", detail


CHECKS = (
    ("models.hamiltonian_from_metric", _check_hamiltonian_from_metric),
    ("models.curvature_closed_vs_brioschi", _check_curvature_vs_brioschi),
    ("models.embed_hyperboloid", _check_embed_hyperboloid),
    ("models.generator_algebra", _check_generator_algebra),
    ("models.hminus_curvature_blowup", _check_hminus_blowup),
    ("invariants.conservation_brackets", _check_conservation_brackets),
    ("invariants.algebra_identities", _check_algebra_identities),
    ("invariants.trig_eigen_structure", _check_trig_eigen),
    ("geodesics.turnings_vs_bisection", _check_turnings_vs_bisection),
    ("geodesics.flow_curve_residual", _check_flow_curve_residual),
    ("geodesics.eccentricity_windows", _check_eccentricity_windows),
    ("geodesics.trig_reflection_symmetry", _check_trig_reflection),
    ("geodesics.affine_integral_conservation", _check_affine_s2_conservation),
    ("flow.drift_scales_with_tol", _check_drift_scaling),
    ("flow.time_reversal", _check_time_reversal),
    ("flow.curve_residual_two_sided", _check_two_sided_residual),
    ("flow.turning_reflection", _check_turning_reflection),
    ("actions.degenerate_frequency", _check_degenerate_frequency),
    ("actions.quadrature_vs_closed", _check_actions_quadrature),
    ("actions.hplus_endpoint_zero", _check_hplus_endpoint),
    ("quantum.spectrum_vs_shooting", _check_spectrum_vs_shooting),
    ("quantum.degeneracy_via_j_tilde", _check_degeneracy),
    ("quantum.hplus_count_law", _check_count_law),
    ("quantum.classical_correspondence", _check_classical_correspondence),
    ("quantum.norms_finite", _check_norms_finite),
    ("specfun.off_diagonal_vanish", _check_off_diagonal),
    ("specfun.conjugation_symmetry", _check_conjugation),
    ("specfun.generating_function", _check_generating_function),
    ("specfun.pointwise_resummation", _check_pointwise_resummation),
    ("cli.deterministic_output", _check_deterministic_output),
    ("cli.registry_complete", _check_registry_complete),
    ("acceptance.fig1_third_anchor", _check_fig1_third_anchor),
)


def run_suite(suite="all", tol=None, seed=DEFAULT_SEED):
    """Run the named slice of the registry; returns a list of CheckResult."""
    results = []
    for name, func in CHECKS:
        if suite != "all" and not name.startswith(suite + "."):
            continue
        rng = np.random.default_rng(seed)
        try:
            outcome, detail = func(rng, tol)
        except Exception as exc:  # a crashed check is a failed check
            results.append(CheckResult(name, "FAIL", f"{type(exc).__name__}: {exc}"))
            continue
        if outcome == "xfail":
            status = "XFAIL"
        elif outcome:
            status = "PASS"
        else:
            status = "FAIL"
        results.append(CheckResult(name, status, detail))
    return results
