import math

import numpy as np
import pytest

from koenigs.invariants import (
    algebra_residuals,
    conserved_functions,
    conserved_set,
    poisson_bracket,
    second_integrals,
)
from koenigs.errors import ChartError
from koenigs.models import PhasePoint, hamiltonian, make_model, make_point


def test_trig_conserved_set_direct_substitution():
    model = make_model("trig", 0.5, 0.0)
    pt = make_point(model, math.pi / 2, 0.0, 1.0, 1.0)
    cs = conserved_set(model, pt)
    assert cs.E == pytest.approx(1.0, abs=1e-14)
    assert cs.L == 1.0
    assert cs.S1 == pytest.approx(0.5, abs=1e-14)
    assert cs.S2 == pytest.approx(-1.5, abs=1e-14)


def test_h0_conserved_set_at_rest():
    model = make_model("h0", 0.8, 1.1)
    pt = make_point(model, 1.3, 0.0, 0.0, 0.0)
    cs = conserved_set(model, pt)
    assert cs.S1 == pytest.approx(0.0, abs=1e-14)
    assert cs.S2 == pytest.approx(cs.E, rel=1e-14)


def test_affine_conserved_set_direct_substitution():
    model = make_model("affine", 1.0, 0.0)
    pt = make_point(model, 1.0, 0.0, 1.0, 1.0)
    cs = conserved_set(model, pt)
    assert cs.S1 == pytest.approx(1.0, abs=1e-14)


def test_bracket_canonical_pair():
    model = make_model("h0", 0.8, 1.1)
    pt = PhasePoint(1.2, 0.3, 0.5, -0.4)
    val = poisson_bracket(lambda z: z.q1, lambda z: z.p1, pt, model=model)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_bracket_hamiltonian_conserves_integrals():
    rng = np.random.default_rng(3)
    model = make_model("h0", 0.8, 1.1)
    funcs = conserved_functions(model)
    for _ in range(40):
        pt = PhasePoint(rng.uniform(0.4, 2.2), rng.uniform(-1.5, 1.5),
                        rng.uniform(-2, 2), rng.uniform(-2, 2))
        for name in ("L", "S1", "S2"):
            val = poisson_bracket(funcs["E"], funcs[name], pt, model=model)
            scale = max(1.0, abs(funcs["E"](pt)), abs(funcs[name](pt)))
            assert abs(val) / scale < 1e-7


def test_trig_ladder_relation():
    # with swapped bracket arguments, bracketing with the linear integral
    # scales the quadratic ones by +1 and -1 respectively
    rng = np.random.default_rng(5)
    model = make_model("trig", 0.5, 0.7)
    funcs = conserved_functions(model)
    for _ in range(25):
        pt = PhasePoint(rng.uniform(0.4, 2.7), rng.uniform(-1.2, 1.2),
                        rng.uniform(-2, 2), rng.uniform(-2, 2))
        s1, s2 = second_integrals(model, pt)
        up = poisson_bracket(funcs["S1"], funcs["L"], pt, model=model)
        down = poisson_bracket(funcs["S2"], funcs["L"], pt, model=model)
        assert up == pytest.approx(s1, rel=2e-7, abs=2e-7)
        assert down == pytest.approx(-s2, rel=2e-7, abs=2e-7)


def test_bracket_stencil_leaving_chart_raises():
    model = make_model("trig", 0.5, 0.7)
    pt = PhasePoint(1e-7, 0.0, 1.0, 1.0)
    with pytest.raises(ChartError):
        poisson_bracket(lambda z: z.q1, lambda z: z.p1, pt, model=model)


def test_exact_identities_tiny_everywhere():
    rng = np.random.default_rng(11)
    for family, lo, hi in (("trig", 0.4, 2.7), ("h0", 0.4, 2.3),
                           ("hplus", 0.4, 2.1), ("affine", 0.4, 2.3)):
        model = make_model(family, 0.6 if family != "hplus" else 2.0, 0.9)
        for _ in range(25):
            pt = PhasePoint(rng.uniform(lo, hi), rng.uniform(-1.2, 1.2),
                            rng.uniform(-2, 2), rng.uniform(-2, 2))
            res = algebra_residuals(model, pt)
            for key in ("recombination", "casimir"):
                if key in res:
                    assert res[key] < 1e-11, (family, key, res[key])


def test_hminus_w_algebra_closes():
    rng = np.random.default_rng(13)
    model = make_model("hminus", 0.6, 0.9)
    x_lo = math.asinh(-model.rho)
    for _ in range(25):
        pt = PhasePoint(rng.uniform(x_lo + 0.35, x_lo + 2.0), rng.uniform(-1.2, 1.2),
                        rng.uniform(-2, 2), rng.uniform(-2, 2))
        res = algebra_residuals(model, pt)
        assert res["w_L_S1"] < 1e-7
        assert res["w_L_S2"] < 1e-7
        assert res["w_S1_S2"] < 1e-7
        assert res["casimir"] < 1e-11


def test_diagnostics_vectorize():
    model = make_model("h0", 0.8, 1.1)
    pts = PhasePoint(np.array([0.8, 1.4]), np.array([0.1, 0.2]),
                     np.array([0.3, -0.5]), np.array([1.0, 1.0]))
    cs = conserved_set(model, pts)
    assert cs.E.shape == (2,)
    single = conserved_set(model, PhasePoint(0.8, 0.1, 0.3, 1.0))
    assert cs.S1[0] == pytest.approx(single.S1, rel=1e-14)
