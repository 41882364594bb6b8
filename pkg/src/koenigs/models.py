"""Metric families, charts, Hamiltonians, curvature, and isometry data.

Five families live here, keyed by short chart names:

    trig    -- (x, y) in (0, pi) x R,        rho in (0, 1)
    h0      -- (r, phi) in (0, inf) x S^1,   rho > 0
    hplus   -- (chi, phi) in (0, inf) x S^1, rho in (0,1) u (1,inf)
    hminus  -- (x, y) local chart,           sinh x + rho > 0
    affine  -- (u, y) in (0, inf) x R,       rho > 0

Every Hamiltonian has the shape H = (a(q1) p1^2 + b(q1) p2^2 + c(q1)) / 2,
so the metric is diag(1/a, 1/b) and the potential is c/2.  All coordinate
functions below accept scalars or numpy arrays.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartError, ConstantCurvature, DomainError, NoGlobalStructure

FAMILIES = ("trig", "h0", "hplus", "hminus", "affine")

# families whose second coordinate is an angle on [0, 2*pi)
ANGLE_FAMILIES = ("h0", "hplus")

_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class Model:
    family: str
    rho: float
    xi: float


@dataclass(frozen=True)
class PhasePoint:
    """Point of phase space.  Fields may be floats or equal-shape arrays."""

    q1: float
    q2: float
    p1: float
    p2: float


def validate_model(family, rho, xi):
    """Check (family, rho, xi) against the family's parameter domain.

    Returns the validated Model.  Raises DomainError naming the violated
    bound, or ConstantCurvature when rho sits exactly on a
    constant-curvature degeneration.
    """
    fam, rho, xi = family, float(rho), float(xi)
    if fam not in FAMILIES:
        raise DomainError(f"unknown family {fam!r}, expected one of {FAMILIES}")
    if not np.isfinite(rho) or not np.isfinite(xi):
        raise DomainError("rho and xi must be finite")
    if fam == "trig":
        if rho in (0.0, 1.0, -1.0):
            raise ConstantCurvature(f"trig family degenerates at rho={rho}")
        if not 0.0 < rho < 1.0:
            raise DomainError(f"trig family needs rho in (0, 1), got {rho}")
    elif fam == "h0":
        if rho == 0.0:
            raise ConstantCurvature("h0 family is flat at rho=0")
        if rho < 0.0:
            raise DomainError(f"h0 family needs rho > 0, got {rho}")
    elif fam == "hplus":
        if rho == 1.0:
            raise ConstantCurvature("hplus family degenerates at rho=1")
        if rho <= 0.0:
            raise DomainError(f"hplus family needs rho > 0, got {rho}")
    elif fam == "affine":
        if rho == 0.0:
            raise ConstantCurvature("affine family is constant-curvature at rho=0")
        if rho < 0.0:
            raise DomainError(f"affine family needs rho > 0, got {rho}")
    # hminus: any real rho; the chart condition sinh(x) + rho > 0 is pointwise
    return Model(fam, rho, xi)


def make_model(family, rho, xi):
    return validate_model(family, rho, xi)


def chart_margin(model, q1):
    """Distance from q1 to the nearest chart boundary (inf if none)."""
    fam = model.family
    if fam == "trig":
        return min(q1, math.pi - q1)
    if fam in ("h0", "hplus", "affine"):
        return q1
    # hminus: boundary where sinh x + rho = 0
    s = math.sinh(q1) + model.rho
    if s <= 0:
        return -abs(s)
    return s / math.cosh(q1)  # first-order distance in x


def check_chart(model, q1):
    """Raise if q1 is outside the chart or within 1e-12 of its edge."""
    fam = model.family
    if fam == "trig":
        if not 0.0 < q1 < math.pi:
            raise ChartError(f"trig chart needs x in (0, pi), got {q1}")
    elif fam in ("h0", "hplus", "affine"):
        if q1 <= 0.0:
            raise ChartError(f"{fam} chart needs q1 > 0, got {q1}")
    else:
        if math.sinh(q1) + model.rho <= 0.0:
            raise ChartError(
                f"hminus chart needs sinh(x) + rho > 0, got x={q1}, rho={model.rho}"
            )
    if chart_margin(model, q1) < _EDGE_TOL:
        raise ChartError(f"q1={q1} is within {_EDGE_TOL} of a chart boundary")


def make_point(model, q1, q2, p1, p2):
    """Validated phase point; angle charts get q2 reduced mod 2*pi."""
    check_chart(model, q1)
    if model.family in ANGLE_FAMILIES:
        q2 = q2 % (2.0 * math.pi)
    return PhasePoint(float(q1), float(q2), float(p1), float(p2))


# -- Hamiltonian kernel -------------------------------------------------

def kernel(model, q1):
    """Coefficients (a, b, c) with H = (a p1^2 + b p2^2 + c)/2."""
    rho, xi = model.rho, model.xi
    fam = model.family
    if fam == "trig":
        W = 1.0 - rho * np.cos(q1)
        s2 = np.sin(q1) ** 2
        return s2 / W, s2 / W, xi / W
    if fam == "h0":
        W = 1.0 + rho * q1**2
        return 1.0 / W, 1.0 / (q1**2 * W), xi * q1**2 / W
    if fam == "hplus":
        s, c = np.sinh(q1), np.cosh(q1)
        W = 1.0 + rho * s**2
        return c**2 / W, c**2 / (W * s**2), xi * s**2 / W
    if fam == "hminus":
        S = np.sinh(q1) + rho
        c2 = np.cosh(q1) ** 2
        return c2 / S, c2 / S, xi / S
    if fam == "affine":
        W = 1.0 + rho * q1**2
        return q1**2 / W, q1**2 / W, xi / W
    raise DomainError(f"unknown family {fam!r}")


def kernel_prime(model, q1):
    """d/dq1 of the kernel coefficients, in closed form."""
    rho, xi = model.rho, model.xi
    fam = model.family
    if fam == "trig":
        s, c = np.sin(q1), np.cos(q1)
        W = 1.0 - rho * c
        ap = s * (2.0 * c * W - rho * s**2) / W**2
        cp = -xi * rho * s / W**2
        return ap, ap, cp
    if fam == "h0":
        r = q1
        W = 1.0 + rho * r**2
        ap = -2.0 * rho * r / W**2
        bp = -2.0 * (W + rho * r**2) / (r**3 * W**2)
        cp = 2.0 * xi * r / W**2
        return ap, bp, cp
    if fam == "hplus":
        s, c = np.sinh(q1), np.cosh(q1)
        W = 1.0 + rho * s**2
        s2x = 2.0 * s * c
        ap = (1.0 - rho) * s2x / W**2
        bp = -2.0 * c * s * (W + rho * c**2 * s**2) / (W**2 * s**4)
        cp = xi * s2x / W**2
        return ap, bp, cp
    if fam == "hminus":
        s, c = np.sinh(q1), np.cosh(q1)
        S = s + rho
        ap = c * (2.0 * s * S - c**2) / S**2
        cp = -xi * c / S**2
        return ap, ap, cp
    if fam == "affine":
        u = q1
        W = 1.0 + rho * u**2
        ap = 2.0 * u / W**2
        cp = -2.0 * xi * rho * u / W**2
        return ap, ap, cp
    raise DomainError(f"unknown family {fam!r}")


def hamiltonian(model, point):
    a, b, c = kernel(model, point.q1)
    return 0.5 * (a * point.p1**2 + b * point.p2**2 + c)


def metric_components(model, q1):
    """Diagonal metric (g11, g22) in the family's chart."""
    a, b, _ = kernel(model, q1)
    return 1.0 / a, 1.0 / b


def potential(model, q1):
    _, _, c = kernel(model, q1)
    return 0.5 * c


# -- Curvature ----------------------------------------------------------

def scalar_curvature(model, q1):
    """Scalar curvature R = 2K of the metric at coordinate q1."""
    rho = model.rho
    fam = model.family
    if fam == "trig":
        c = np.cos(q1)
        W = 1.0 - rho * c
        return -(rho * np.sin(q1) ** 2 * (c - rho) / W**3 + 2.0 / W)
    if fam == "h0":
        return -4.0 * rho / (1.0 + rho * q1**2) ** 3
    if fam == "hplus":
        # written via rt = 2*rho - 1 and cX = 1 + 2/sinh^2(chi); this keeps
        # the chi -> inf limit (-2/rho) and the rho -> 1 collapse explicit
        rt = 2.0 * rho - 1.0
        cX = 1.0 + 2.0 / np.sinh(q1) ** 2
        return 2.0 * (-rt - (1.0 - rt**2) * (3.0 * cX**2 + 3.0 * rt * cX + rt**2 - 1.0) / (cX + rt) ** 3)
    if fam == "hminus":
        s = np.sinh(q1)
        S = s + rho
        return -rho + (1.0 + rho**2) * (3.0 * s**2 + 3.0 * rho * s + rho**2 + 1.0) / S**3
    if fam == "affine":
        W = 1.0 + rho * q1**2
        return -2.0 * (1.0 + 3.0 * rho * q1**2) / W**3
    raise DomainError(f"unknown family {fam!r}")


def brioschi_curvature(model, q1):
    """Finite-difference curvature oracle, independent of the closed forms.

    For a diagonal metric E(q1) dq1^2 + G(q1) dq2^2 the Gauss curvature is
    K = -(2 sqrt(EG))^-1 d/dq1 [ G'(q1) / sqrt(EG) ].  Both derivatives use
    five-point stencils; the step shrinks near chart edges so the stencil
    stays inside.
    """
    h = 5e-4 * max(1.0, abs(q1))
    margin = chart_margin(model, q1)
    if margin < 5.0 * h:
        h = margin / 5.0
    if h <= 0:
        raise ChartError(f"q1={q1} too close to a chart edge for the FD stencil")

    def EG(q):
        a, b, _ = kernel(model, q)
        return 1.0 / a, 1.0 / b

    def d5(f, q):
        return (-f(q + 2 * h) + 8.0 * f(q + h) - 8.0 * f(q - h) + f(q - 2 * h)) / (12.0 * h)

    def G_of(q):
        return EG(q)[1]

    def F(q):
        E, G = EG(q)
        return d5(G_of, q) / math.sqrt(E * G)

    E0, G0 = EG(q1)
    K = -d5(F, q1) / (2.0 * math.sqrt(E0 * G0))
    return 2.0 * K


# -- Global structure ---------------------------------------------------

def embed(model, q1, q2):
    """Image of (q1, q2) in the reference model of the family.

    The three curved families land on the hyperboloid x1^2+x2^2-x3^2 = -1;
    h0 maps to the plane (r cos(phi), r sin(phi), 0).  The local family has
    no global model and raises NoGlobalStructure.
    """
    fam = model.family
    if fam == "trig":
        s = np.sin(q1)
        return np.sinh(q2) / s, -np.cos(q1) / s, np.cosh(q2) / s
    if fam == "h0":
        return q1 * np.cos(q2), q1 * np.sin(q2), 0.0 * q1
    if fam == "hplus":
        s = np.sinh(q1)
        return s * np.cos(q2), s * np.sin(q2), np.cosh(q1)
    if fam == "affine":
        u, y = q1, q2
        return y / u, (u**2 + y**2 - 1.0) / (2.0 * u), (u**2 + y**2 + 1.0) / (2.0 * u)
    if fam == "hminus":
        raise NoGlobalStructure("hminus is a local family with no reference embedding")
    raise DomainError(f"unknown family {fam!r}")


def generators(model, point):
    """Values of the three isometry generators of the kinetic metric.

    trig, hplus, affine return (M1, M2, M3); h0 returns (P1, P2, L3).
    hminus raises NoGlobalStructure.
    """
    fam = model.family
    q1, q2, p1, p2 = point.q1, point.q2, point.p1, point.p2
    if fam == "trig":
        s, c = np.sin(q1), np.cos(q1)
        m1 = np.cosh(q2) * s * p1 + c * np.sinh(q2) * p2
        m2 = p2
        m3 = -np.sinh(q2) * s * p1 - c * np.cosh(q2) * p2
        return m1, m2, m3
    if fam == "h0":
        cphi, sphi = np.cos(q2), np.sin(q2)
        p_1 = cphi * p1 - sphi * p2 / q1
        p_2 = sphi * p1 + cphi * p2 / q1
        return p_1, p_2, p2
    if fam == "hplus":
        t = np.tanh(q1)
        cphi, sphi = np.cos(q2), np.sin(q2)
        m1 = sphi * p1 + cphi * p2 / t
        m2 = -cphi * p1 + sphi * p2 / t
        return m1, m2, p2
    if fam == "affine":
        u, y = q1, q2
        m1 = u * p1 + y * p2
        m2 = u * y * p1 + 0.5 * (y**2 - u**2 - 1.0) * p2
        m3 = u * y * p1 + 0.5 * (y**2 - u**2 + 1.0) * p2
        return m1, m2, m3
    if fam == "hminus":
        raise NoGlobalStructure("hminus carries no global isometry generators")
    raise DomainError(f"unknown family {fam!r}")
