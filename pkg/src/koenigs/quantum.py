"""Bound spectra and radial eigenproblems for the Hyp0 and HypPlus wells.

Closed-form spectra come from the linearizing quantum number
J_tilde = 2n + |m| + 1.  Their independent check is a Numerov shooting
solver on the Liouville normal form of each radial equation, with node
counting and bisection; it never consults the closed forms.  Batched
numpy powers the sweep so the whole grid of a criterion run stays cheap.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceFailure, DomainError, NoBoundState
from .models import check_chart
from .specfun import jacobi, laguerre

try:
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without the extra
    _HAVE_NUMBA = False

_QUANTUM_FAMILIES = ("h0", "hplus")


@dataclass(frozen=True)
class Level:
    n: int
    m: int
    J_tilde: float
    E: float


def _require_quantum(model):
    if model.family not in _QUANTUM_FAMILIES:
        raise DomainError(f"family '{model.family}' has no discrete spectrum here")
    if model.xi <= 0.0:
        raise DomainError(f"need a confining coupling xi > 0, got xi={model.xi}")


def _xi_eff(model):
    # the quantum HypPlus problem carries the quarter shift from the
    # Liouville transformation of the angular barrier
    return model.xi + 0.25 if model.family == "hplus" else model.xi


def _level_energy(model, J_tilde):
    rho = model.rho
    xe = _xi_eff(model)
    if model.family == "h0":
        return J_tilde * (math.sqrt(xe + rho**2 * J_tilde**2) - rho * J_tilde)
    return J_tilde * (
        math.sqrt(xe + rho * (rho - 1.0) * J_tilde**2) - (rho - 0.5) * J_tilde
    )


def _j_window_max(model):
    """Largest admissible J_tilde (HypPlus keeps a finite well)."""
    if model.family == "h0":
        return math.inf
    return math.sqrt(_xi_eff(model) / model.rho)


def spectrum(model, n_max, m_max):
    """All Level entries with n <= n_max, |m| <= m_max, sorted by energy."""
    _require_quantum(model)
    if n_max < 0 or m_max < 0:
        raise DomainError(f"need n_max, m_max >= 0, got ({n_max}, {m_max})")
    jmax = _j_window_max(model)
    levels = []
    for n in range(int(n_max) + 1):
        for m in range(-int(m_max), int(m_max) + 1):
            jt = 2.0 * n + abs(m) + 1.0
            if jt >= jmax:
                continue
            levels.append(Level(n=n, m=m, J_tilde=jt, E=_level_energy(model, jt)))
    levels.sort(key=lambda lv: (lv.E, lv.n, lv.m))
    return levels


def eigenfunction(model, level, position):
    """Unnormalized bound eigenfunction at chart position (q1, q2)."""
    _require_quantum(model)
    q1, q2 = position
    check_chart(model, q1)
    n, m, E = level.n, level.m, level.E
    mm = abs(m)
    if model.family == "h0":
        delta = _xi_eff(model) - 2.0 * model.rho * E
        if delta <= 0.0:
            raise DomainError(f"level E={E} lies outside the bound window")
        zeta = math.sqrt(delta) * q1**2
        radial = math.exp(-zeta / 2.0) * zeta ** (mm / 2.0) * laguerre(n, mm, zeta)
    else:
        delta = _xi_eff(model) - 2.0 * model.rho * E
        if delta <= 0.0:
            raise DomainError(f"level E={E} lies outside the bound window")
        sq = math.sqrt(delta)
        t, c = math.tanh(q1), math.cosh(q1)
        radial = t**mm * c ** (-0.5 - sq) * jacobi(n, mm, sq, 1.0 - 2.0 * t**2)
    return radial * complex(math.cos(m * q2), math.sin(m * q2))


def q_coordinate(model, chi):
    """Arc-type radial coordinate of the HypPlus Liouville transformation."""
    if model.family != "hplus":
        raise DomainError("q_coordinate is defined on the hplus chart")
    if chi < 0.0:
        raise DomainError(f"need chi >= 0, got {chi}")
    if chi == 0.0:
        return 0.0
    rho = model.rho

    def integrand(u):
        return math.sqrt(1.0 / math.cosh(u) ** 2 + rho * math.tanh(u) ** 2)

    val, _ = quad(integrand, 0.0, chi, limit=200)
    return val


def effective_potential(model, m, chi):
    """Radial barrier U_m(chi) seen by the HypPlus Liouville coordinate."""
    if model.family != "hplus":
        raise DomainError("effective_potential is defined on the hplus chart")
    s2 = np.sinh(chi) ** 2
    W = 1.0 + model.rho * s2
    t2 = s2 / (1.0 + s2)
    twoV = model.xi * s2 / W
    curv = (
        (1.0 - model.rho)
        / 4.0
        * (2.0 + (1.0 - 3.0 * model.rho) * s2 - 4.0 * model.rho * s2**2)
        / W**3
    )
    return (m**2 - 0.25 + 0.25 * s2) / (t2 * W) + twoV - curv


# -- shooting solver ---------------------------------------------------------

_EIG_CACHE = {}
_SERIES_TERMS = 4


def _liouville_base_weight(model, m, q):
    """g(q, E) = base(q) - E * weight(q) for y'' = g y on the half line."""
    if model.family == "h0":
        base = (m**2 - 0.25) / q**2 + model.xi * q**2
        weight = 2.0 + 2.0 * model.rho * q**2
    else:
        s2 = np.sinh(q) ** 2
        c2 = 1.0 + s2
        base = m**2 / s2 + (c2 - 2.0) / (4.0 * s2) + model.xi * s2 / c2
        weight = 2.0 * (1.0 + model.rho * s2) / c2
    return base, weight


def _series_ic_h0(model, m, E, r):
    """Regular-solution series y = r^nu (1 + c1 r^2 + ...), vectorized in E."""
    nu = abs(m) + 0.5
    om2 = model.xi - 2.0 * model.rho * E
    coeffs = [np.ones_like(E)]
    for j in range(1, _SERIES_TERMS + 1):
        den = (nu + 2 * j) * (nu + 2 * j - 1) - nu * (nu - 1)
        prev2 = coeffs[j - 2] if j >= 2 else 0.0
        coeffs.append((-2.0 * E * coeffs[j - 1] + om2 * prev2) / den)
    total = np.zeros_like(E)
    for j, cj in enumerate(coeffs):
        total = total + cj * r ** (2 * j)
    return r**nu * total


def _series_ic_hplus(model, m, E, x):
    nu = abs(m) + 0.5
    g0 = -2.0 * E - m**2 / 3.0 + 1.0 / 3.0
    g2 = 2.0 * E * (1.0 - model.rho) + m**2 / 15.0 + model.xi - 1.0 / 60.0
    g4 = (
        4.0 * E * (model.rho - 1.0) / 3.0
        - 2.0 * m**2 / 189.0
        - 2.0 * model.xi / 3.0
        + 1.0 / 378.0
    )
    c1 = g0 / (4.0 * nu + 2.0)
    c2 = (g0 * c1 + g2) / (8.0 * nu + 12.0)
    c3 = (g0 * c2 + g2 * c1 + g4) / (12.0 * nu + 30.0)
    return x**nu * (1.0 + c1 * x**2 + c2 * x**4 + c3 * x**6)


def _initial_values(model, m, E, q0, q1):
    if model.family == "h0":
        return _series_ic_h0(model, m, E, q0), _series_ic_h0(model, m, E, q1)
    return _series_ic_hplus(model, m, E, q0), _series_ic_hplus(model, m, E, q1)


def _numerov_rows(a, c, y0, y1):
    """Numpy row-vectorized Numerov recursion; the no-extras fallback."""
    nodes = np.zeros(y0.shape, dtype=np.int64)
    n_rows = a.shape[0]
    for i in range(1, n_rows - 1):
        y2 = (c[i] * y1 - a[i - 1] * y0) / a[i + 1]
        nodes += (y2 * y1) < 0.0
        y0 = y1
        y1 = y2
        if i % 128 == 0:
            scale = np.maximum(np.abs(y0), np.abs(y1))
            scale = np.where(scale > 0.0, scale, 1.0)
            y0 = y0 / scale
            y1 = y1 / scale
    return nodes, y1


def _numerov_scalar(a, c, y0, y1):  # pragma: no cover - jitted twin of _numerov_rows
    n_rows, lanes = a.shape
    nodes = np.zeros(lanes, dtype=np.int64)
    y0 = y0.copy()
    y1 = y1.copy()
    for i in range(1, n_rows - 1):
        for j in range(lanes):
            y2 = (c[i, j] * y1[j] - a[i - 1, j] * y0[j]) / a[i + 1, j]
            if y2 * y1[j] < 0.0:
                nodes[j] += 1
            y0[j] = y1[j]
            y1[j] = y2
        if i % 128 == 0:
            for j in range(lanes):
                scale = max(abs(y0[j]), abs(y1[j]))
                if scale > 0.0:
                    y0[j] /= scale
                    y1[j] /= scale
    return nodes, y1


if _HAVE_NUMBA:
    _numerov_kernel = _njit(_numerov_scalar)
else:  # pragma: no cover
    _numerov_kernel = _numerov_rows


def _sweep(model, m, qgrid, h, E_vals):
    """Numerov node counts and end values for a batch of trial energies.

    The Friedrichs condition at the axis is imposed through the regular
    series started at q = qgrid[0] (the series vanishes at the origin
    like q^{|m|+1/2}, which is exactly the Friedrichs branch).
    """
    E = np.atleast_1d(np.asarray(E_vals, dtype=float))
    base, weight = _liouville_base_weight(model, m, qgrid)
    g = base[:, None] - weight[:, None] * E[None, :]
    a = 1.0 - (h * h / 12.0) * g
    c = 12.0 - 10.0 * a
    y0, y1 = _initial_values(model, m, E, qgrid[0], qgrid[1])
    y0 = np.ascontiguousarray(np.broadcast_to(y0, E.shape), dtype=float)
    y1 = np.ascontiguousarray(np.broadcast_to(y1, E.shape), dtype=float)
    return _numerov_kernel(a, c, y0, y1)


def _grid_h0(model, E_hi, delta_floor):
    h = 0.002
    r2 = 2.0 * E_hi / delta_floor + 70.0 / math.sqrt(delta_floor)
    r_max = math.sqrt(r2)
    n = int(r_max / h) + 2
    return 0.05 + h * np.arange(n), h


def _grid_hplus(model, delta_floor):
    h = 0.002
    x_max = min(8.0 + 24.0 / math.sqrt(delta_floor), 150.0)
    n = int(x_max / h) + 2
    return 0.05 + h * np.arange(n), h


def _edge(model):
    return _xi_eff(model) / (2.0 * model.rho)


def _bracket_and_refine(model, m, ks, qgrid, h, E_lo, E_hi):
    """Locate eigenvalues for every k in ks by scan plus batched bisection."""
    scan = np.linspace(E_lo, E_hi, 64)
    counts, _ = _sweep(model, m, qgrid, h, scan)
    found = {}
    brackets = {}
    for k in ks:
        above = np.nonzero(counts >= k + 1)[0]
        if above.size == 0:
            continue
        hi_idx = above[0]
        if hi_idx == 0:
            raise ConvergenceFailure(
                f"scan floor already sees {counts[0]} nodes for m={m}"
            )
        brackets[k] = (scan[hi_idx - 1], scan[hi_idx])
    for _ in range(7):
        if not brackets:
            break
        probes = []
        offsets = {}
        for k, (lo, hi) in brackets.items():
            offsets[k] = len(probes)
            probes.extend(np.linspace(lo, hi, 18)[1:-1])
        counts, _ = _sweep(model, m, qgrid, h, np.asarray(probes))
        new_brackets = {}
        for k, (lo, hi) in brackets.items():
            sub = counts[offsets[k] : offsets[k] + 16]
            pts = np.linspace(lo, hi, 18)
            above = np.nonzero(sub >= k + 1)[0]
            if above.size == 0:
                new_brackets[k] = (pts[-2], hi)
            else:
                j = above[0]
                new_brackets[k] = (pts[j] if j > 0 else lo, pts[j + 1])
        brackets = new_brackets
    for k, (lo, hi) in brackets.items():
        found[k] = 0.5 * (lo + hi)
    return found


def shoot_eigenvalue(model, m, k):
    """k-th radial eigenvalue for angular number m, by Numerov shooting.

    Independent of the closed-form spectrum: node counts plus bisection on
    a Liouville normal form, with the energy window pushed toward the well
    edge adaptively when a level hides close to it.
    """
    _require_quantum(model)
    m = int(m)
    k = int(k)
    if k < 0:
        raise DomainError(f"need k >= 0, got {k}")
    key = (model.family, model.rho, model.xi, abs(m))
    cache = _EIG_CACHE.setdefault(key, {})
    if k in cache:
        return cache[k]

    edge = _edge(model)
    want = set(range(k + 1)) - set(cache)
    delta_floor = 0.05 if model.family == "h0" else 0.5
    found = {}
    for _ in range(6):
        E_hi = edge - delta_floor / (2.0 * model.rho)
        if model.family == "h0":
            qgrid, h = _grid_h0(model, E_hi, delta_floor)
        else:
            qgrid, h = _grid_hplus(model, delta_floor)
        found = _bracket_and_refine(model, m, sorted(want), qgrid, h, 1e-9, E_hi)
        if k in found:
            break
        delta_floor /= 4.0
    else:
        if model.family == "hplus":
            raise NoBoundState(
                f"no level k={k} for m={m}: the HypPlus well holds fewer states"
            )
        raise ConvergenceFailure(
            f"level k={k}, m={m} not isolated before the window edge"
        )
    cache.update(found)
    if k not in cache:
        raise ConvergenceFailure(f"bisection lost the bracket for k={k}, m={m}")
    return cache[k]


def count_bound_levels(model, m):
    """Number of bound radial levels for angular number m, by node count.

    Probes just below the well edge; independent of the closed-form count.
    """
    _require_quantum(model)
    if model.family == "h0":
        raise DomainError("the Hyp0 well is infinitely deep; the count diverges")
    edge = _edge(model)
    probe = edge * (1.0 - 1e-6)
    h = 0.004
    qgrid = 0.05 + h * np.arange(int(35.0 / h))
    counts, _ = _sweep(model, int(m), qgrid, h, np.array([probe]))
    return int(counts[0])


# -- radial problem descriptor and residuals --------------------------------

@dataclass(frozen=True)
class RadialProblem:
    """Liouville normal form y'' = (base(q) - E weight(q)) y with axis BC."""

    model: object
    m: int
    bc: str = "friedrichs"

    def base(self, q):
        return _liouville_base_weight(self.model, self.m, np.asarray(q, dtype=float))[0]

    def weight(self, q):
        return _liouville_base_weight(self.model, self.m, np.asarray(q, dtype=float))[1]

    def g(self, q, E):
        b, w = _liouville_base_weight(self.model, self.m, np.asarray(q, dtype=float))
        return b - E * w


def radial_problem(model, m, bc="friedrichs"):
    _require_quantum(model)
    if bc != "friedrichs":
        raise DomainError(f"only the friedrichs boundary condition is built, got {bc!r}")
    return RadialProblem(model=model, m=int(m), bc=bc)


def _radial_wave(model, level, q):
    """Real radial factor of the eigenfunction on an array of q."""
    n, mm = level.n, abs(level.m)
    delta = _xi_eff(model) - 2.0 * model.rho * level.E
    sq = math.sqrt(delta)
    if model.family == "h0":
        zeta = sq * q**2
        return np.exp(-zeta / 2.0) * zeta ** (mm / 2.0) * laguerre(n, mm, zeta)
    t, c = np.tanh(q), np.cosh(q)
    return t**mm * c ** (-0.5 - sq) * jacobi(n, mm, sq, 1.0 - 2.0 * t**2)


def schrodinger_residual(model, level, h=1e-3):
    """Relative L2 residual of (H - E) psi with central differences.

    Second order: halving h should shrink the value about fourfold.
    """
    _require_quantum(model)
    E, m = level.E, level.m
    delta = _xi_eff(model) - 2.0 * model.rho * E
    if delta <= 0.0:
        raise DomainError(f"level E={E} lies outside the bound window")
    sq = math.sqrt(delta)
    if model.family == "h0":
        q_max = math.sqrt((45.0 + 10.0 * level.n) / sq)
    else:
        q_max = max(10.0, 0.5 * math.log(_xi_eff(model) / delta) + 28.0 / (0.5 + sq))
    q = np.arange(3 * h, q_max, h)
    psi = _radial_wave(model, level, q)
    psi_p = (_radial_wave(model, level, q + h) - _radial_wave(model, level, q - h)) / (
        2.0 * h
    )
    psi_pp = (
        _radial_wave(model, level, q + h)
        - 2.0 * psi
        + _radial_wave(model, level, q - h)
    ) / (h * h)
    if model.family == "h0":
        W = 1.0 + model.rho * q**2
        lap = psi_pp + psi_p / q - m**2 * psi / q**2
        ham = -lap / (2.0 * W) + model.xi * q**2 / (2.0 * W) * psi
        measure = W * q
    else:
        s, c = np.sinh(q), np.cosh(q)
        W = 1.0 + model.rho * s**2
        lap = psi_pp + (c / s) * psi_p - m**2 * psi / s**2
        ham = -(c**2) * lap / (2.0 * W) + model.xi * s**2 / (2.0 * W) * psi
        measure = W * s / c**2
    res = ham - E * psi
    num = float(np.sum(measure * res**2))
    den = float(np.sum(measure * psi**2))
    return math.sqrt(num / den)
