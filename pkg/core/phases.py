"""
Reproducing kernel, overlap phases and symplectic areas of geodesic triangles.
The closed form and the cone quadrature share one orientation convention.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from dataclasses_json import dataclass_json
from scipy.special import roots_legendre

from .config import DEFAULT_ORDER, MIN_ORDER
from .errors import ChartOverflow, DomainError, ValidationError
from .grassmann import (
    GrassmannPoint, act, geodesic_points, pontryagin_to_tangent, require_kernel_pair, require_pair,
    section, tangent_to_pontryagin
)
from .matfun import as_cmatrix, dagger, det_c, principal_arg, spectral_norm, wrap_phase
from .utils import complex_to_pair, log_performance

logger = logging.getLogger(__name__)

# (dt, ds) cone integral = ORIENTATION_SIGN * closed form
ORIENTATION_SIGN = -1
# overlap phase = 2 * PHASE_AREA_SIGN * closed-form area (k = 1)
PHASE_AREA_SIGN = 1

FD_STEP = 1e-5
IMAG_TOL = 1e-12
# normalized overlaps this close to 1 are coincident points
COINCIDENT_TOL = 4e-15
DEGENERATE_BASE = 1e-14
SEGMENT_NODES = 8


class AreaMethod(Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass_json
@dataclass(frozen=True)
class TriangleArea:
    """Symplectic area of the geodesic triangle (0, Z1, Z2)."""
    value: float
    method: AreaMethod
    est_error: float = 0.0


@dataclass(frozen=True)
class Overlap:
    """Kernel value K = magnitude * exp(i phase)."""
    value: complex
    magnitude: float
    phase: float

    def to_record(self) -> Dict:
        return {
            'value': complex_to_pair(self.value),
            'magnitude': self.magnitude,
            'phase': self.phase
        }


def gauss_legendre_unit(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    nodes, weights = roots_legendre(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def _plus_det(Z1: GrassmannPoint, Z2: GrassmannPoint) -> complex:
    """det(1 + eps Z1 Z2^+)."""
    spec = Z1.spec
    return det_c(np.eye(spec.n) + spec.epsilon * np.asarray(Z1.Z) @ dagger(np.asarray(Z2.Z)))


def _diagonal_kernel(Z: GrassmannPoint) -> float:
    """K(Z, Z) with k = 1; positive for every point of the chart."""
    return float(abs(_plus_det(Z, Z)) ** Z.spec.epsilon)


def kernel(Z1: GrassmannPoint, Z2: GrassmannPoint, k: Optional[int] = None) -> Overlap:
    """K(Z1, Z2) = det(1 + eps Z1 Z2^+)^(eps k); k defaults to the manifold weight."""
    spec = require_kernel_pair(Z1, Z2)
    k = spec.weight_k if k is None else int(k)
    if k < 1:
        raise ValidationError(f"weight must be >= 1, got {k}")

    exponent = spec.epsilon * k
    d = _plus_det(Z1, Z2)
    value = d ** exponent
    phase = float(wrap_phase(exponent * principal_arg(d)))
    magnitude = float(abs(d) ** exponent)

    return Overlap(value=complex(value), magnitude=magnitude, phase=phase)


def kernel_ratio(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """|K(Z1,Z2)| / sqrt(K(Z1,Z1) K(Z2,Z2)) with k = 1."""
    cross = kernel(Z1, Z2, k=1).magnitude
    return float(cross / np.sqrt(_diagonal_kernel(Z1) * _diagonal_kernel(Z2)))


def normalized_overlap_phase(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """Phase of the overlap of the two coherent states."""
    return kernel(Z1, Z2).phase


def triangle_area_closed(Z1: GrassmannPoint, Z2: GrassmannPoint) -> TriangleArea:
    """(eps/2) arg det(1 + eps Z1 Z2^+)."""
    spec = require_kernel_pair(Z1, Z2)
    value = 0.5 * spec.epsilon * principal_arg(_plus_det(Z1, Z2))
    return TriangleArea(value=float(value), method=AreaMethod.CLOSED_FORM)


def hermitian_form(Z: np.ndarray, V: np.ndarray, W: np.ndarray, epsilon: int) -> np.ndarray:
    """h = Tr[V A W^+ B], A = (1+eZ^+Z)^-1, B = (1+eZZ^+)^-1; stacks supported."""
    n, m = Z.shape[-2:]
    Zh = dagger(Z)
    A = np.linalg.inv(np.eye(m) + epsilon * (Zh @ Z))
    B = np.linalg.inv(np.eye(n) + epsilon * (Z @ Zh))
    return np.trace(V @ A @ dagger(W) @ B, axis1=-2, axis2=-1)


def _tangent_pair(Z: GrassmannPoint, V, W) -> Tuple[np.ndarray, np.ndarray]:
    shape = (Z.spec.n, Z.spec.m)
    V = as_cmatrix(V, 'V')
    W = as_cmatrix(W, 'W')
    if V.shape != shape or W.shape != shape:
        raise DomainError(f"Tangent vectors must be {shape[0]}x{shape[1]}")
    return V, W


def omega_at(Z: GrassmannPoint, V, W) -> float:
    """Kaehler two-form (i/2) Tr[V A W^+ B - W A V^+ B]."""
    V, W = _tangent_pair(Z, V, W)
    Zm = np.asarray(Z.Z)
    eps = Z.spec.epsilon
    value = 0.5j * (hermitian_form(Zm, V, W, eps) - hermitian_form(Zm, W, V, eps))
    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value)):
        raise DomainError(f"Two-form has imaginary part {value.imag:.3e}")
    return float(value.real)


def metric_at(Z: GrassmannPoint, V, W) -> float:
    """Real part of the invariant hermitian form."""
    V, W = _tangent_pair(Z, V, W)
    return float(hermitian_form(np.asarray(Z.Z), V, W, Z.spec.epsilon).real)


def check_order(order: int) -> int:
    order = int(order)
    if order < MIN_ORDER:
        raise ValidationError(f"Quadrature order must be >= {MIN_ORDER}, got {order}")
    return order


def grassmann_omega(surface: np.ndarray, d_t: np.ndarray, d_s: np.ndarray, epsilon: int) -> np.ndarray:
    """omega(d_t, d_s) = -Im h on stacks of surface points."""
    return -hermitian_form(surface, d_t, d_s, epsilon).imag


TwoForm = Callable[[np.ndarray, np.ndarray, np.ndarray, int], np.ndarray]


def cone_integral(Z1: np.ndarray, Z2: np.ndarray, epsilon: int, order: int,
                  form: TwoForm = grassmann_omega) -> float:
    """Integral of a two-form over S(t, s) = exp(t log gamma(s)) in the (dt, ds) orientation."""
    t, wt = gauss_legendre_unit(order)
    s, ws = gauss_legendre_unit(order)
    h = FD_STEP

    try:
        base = geodesic_points(Z1, Z2, np.concatenate([s, s + h, s - h]), epsilon)
    except np.linalg.LinAlgError as e:
        raise ChartOverflow(f"Base geodesic leaves the chart: {str(e)}")
    if not np.all(np.isfinite(base)):
        raise ChartOverflow("Base geodesic leaves the chart")

    tangents = pontryagin_to_tangent(base, epsilon)
    if epsilon == 1:
        reach = (1.0 + h) * max(spectral_norm(b) for b in tangents)
        if reach >= np.pi / 2:
            raise ChartOverflow(f"Cone reaches the chart boundary (tangent norm {reach:.6f})")

    B0, Bplus, Bminus = np.split(tangents, 3)
    T = t[:, None, None, None]

    surface = tangent_to_pontryagin(T * B0[None], epsilon)
    d_t = (tangent_to_pontryagin((T + h) * B0[None], epsilon)
           - tangent_to_pontryagin((T - h) * B0[None], epsilon)) / (2.0 * h)
    d_s = (tangent_to_pontryagin(T * Bplus[None], epsilon)
           - tangent_to_pontryagin(T * Bminus[None], epsilon)) / (2.0 * h)

    return float(wt @ form(surface, d_t, d_s, epsilon) @ ws)


@log_performance('quadrature')
def triangle_area_quadrature(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int = DEFAULT_ORDER,
                             reverse_base: bool = False) -> TriangleArea:
    """Tensor Gauss-Legendre integral of omega over the geodesic cone (0; Z1, Z2)."""
    spec = require_pair(Z1, Z2)
    order = check_order(order)
    eps = spec.epsilon
    Z1m, Z2m = np.asarray(Z1.Z), np.asarray(Z2.Z)

    if spectral_norm(Z1m - Z2m) < DEGENERATE_BASE:
        return TriangleArea(value=0.0, method=AreaMethod.QUADRATURE)

    def integrate(nodes: int) -> float:
        if reverse_base:
            # base walked from Z2 to Z1 flips the orientation
            return -ORIENTATION_SIGN * cone_integral(Z2m, Z1m, eps, nodes)
        return ORIENTATION_SIGN * cone_integral(Z1m, Z2m, eps, nodes)

    value = integrate(order)
    est_error = abs(value - integrate(max(order // 2, 2)))
    logger.debug(f"Cone quadrature order {order}: value {value:.15g}, est_error {est_error:.3e}")

    return TriangleArea(value=value, method=AreaMethod.QUADRATURE, est_error=float(est_error))


def triangle_area(Z0: GrassmannPoint, Z1: GrassmannPoint, Z2: GrassmannPoint,
                  method: AreaMethod = AreaMethod.CLOSED_FORM, order: int = DEFAULT_ORDER) -> TriangleArea:
    """Area of (Z0, Z1, Z2) after moving Z0 to the origin with section(-Z0)."""
    translate = section(-Z0)
    W1, W2 = act(translate, Z1), act(translate, Z2)
    if AreaMethod(method) is AreaMethod.QUADRATURE:
        return triangle_area_quadrature(W1, W2, order)
    return triangle_area_closed(W1, W2)


def chordal_distance(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """arccos of the normalized overlap magnitude (k = 1)."""
    ratio = kernel_ratio(Z1, Z2)
    if abs(ratio - 1.0) <= COINCIDENT_TOL:
        return 0.0
    if ratio <= 1.0 + IMAG_TOL or Z1.spec.compact:
        return float(np.arccos(np.clip(ratio, 0.0, 1.0)))

    logger.warning(f"Normalized overlap {ratio:.15g} exceeds 1; reporting the hyperbolic branch")
    return float(np.arccosh(ratio))


def geodesic_segment_lengths(Z1: GrassmannPoint, Z2: GrassmannPoint, segments: int = 32) -> np.ndarray:
    """Metric length of each of `segments` equal parameter pieces of the geodesic."""
    spec = require_pair(Z1, Z2)
    if segments < 1:
        raise ValidationError("segments must be >= 1")
    eps = spec.epsilon
    Z1m, Z2m = np.asarray(Z1.Z), np.asarray(Z2.Z)

    nodes, weights = gauss_legendre_unit(SEGMENT_NODES)
    edges = np.linspace(0.0, 1.0, segments + 1)
    width = edges[1] - edges[0]
    ts = (edges[:-1, None] + width * nodes[None, :]).ravel()

    points = geodesic_points(Z1m, Z2m, ts, eps)
    velocity = (geodesic_points(Z1m, Z2m, ts + FD_STEP, eps)
                - geodesic_points(Z1m, Z2m, ts - FD_STEP, eps)) / (2.0 * FD_STEP)
    speed = np.sqrt(np.maximum(hermitian_form(points, velocity, velocity, eps).real, 0.0))

    return width * (speed.reshape(segments, SEGMENT_NODES) @ weights)
