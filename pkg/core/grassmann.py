"""
Points, charts, group elements and geodesics on the complex Grassmann
manifold SU(n+m)/S(U(n)xU(m)) (epsilon=+1) and its noncompact dual
SU(n,m)/S(U(n)xU(m)) (epsilon=-1), in Pontryagin coordinates.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm

from .errors import (
    ChartEscape, ChartOverflow, DomainError, PairInvalid, ShapeMismatch, ValidationError
)
from .matfun import (
    MatrixFunction, as_cmatrix, dagger, herm_fn, identity_like, pseudo_identity,
    right_divide, singular_values, smallest_singular_value, spectral_norm
)

logger = logging.getLogger(__name__)

Seed = Union[int, Sequence[int]]

BALL_MARGIN = 1e-9
CHART_MARGIN = 1e-9
PAIR_FLOOR = 1e-8
GROUP_TOL = 1e-10
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class ManifoldSpec:
    """Shape (n, m), curvature sign epsilon and extreme-weight parameter k."""
    n: int
    m: int
    epsilon: int
    weight_k: int = 1

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValidationError(f"n and m must be positive, got ({self.n}, {self.m})")
        if self.epsilon not in (1, -1):
            raise ValidationError(f"epsilon must be +1 or -1, got {self.epsilon}")
        if self.weight_k < 1:
            raise ValidationError(f"weight_k must be >= 1, got {self.weight_k}")

    @property
    def compact(self) -> bool:
        return self.epsilon == 1

    @property
    def size(self) -> int:
        return self.n + self.m

    def same_manifold(self, other: "ManifoldSpec") -> bool:
        """True when (n, m, epsilon) agree; the weight does not change the space."""
        return (self.n, self.m, self.epsilon) == (other.n, other.m, other.epsilon)

    def with_weight(self, weight_k: int) -> "ManifoldSpec":
        return ManifoldSpec(self.n, self.m, self.epsilon, weight_k)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class GrassmannPoint:
    """Point of the chart V0 given by its n x m Pontryagin coordinates."""
    spec: ManifoldSpec
    Z: np.ndarray

    def __post_init__(self):
        Z = as_cmatrix(self.Z, 'Z')
        if Z.shape != (self.spec.n, self.spec.m):
            raise ShapeMismatch(f"Z must be {self.spec.n}x{self.spec.m}, got {Z.shape[0]}x{Z.shape[1]}")
        if not self.spec.compact:
            norm = spectral_norm(Z)
            if norm >= 1.0 - BALL_MARGIN:
                raise DomainError(f"Point outside the unit ball (spectral norm {norm:.12f})")
        object.__setattr__(self, 'Z', _frozen(Z))

    def __neg__(self) -> "GrassmannPoint":
        return GrassmannPoint(self.spec, -self.Z)

    @classmethod
    def origin(cls, spec: ManifoldSpec) -> "GrassmannPoint":
        return cls(spec, np.zeros((spec.n, spec.m), dtype=complex))


@dataclass(frozen=True, eq=False)
class TangentParam:
    """n x m matrix B parametrizing exp([[0, B], [-eps B^+, 0]]) o."""
    spec: ManifoldSpec
    B: np.ndarray

    def __post_init__(self):
        B = as_cmatrix(self.B, 'B')
        if B.shape != (self.spec.n, self.spec.m):
            raise ShapeMismatch(f"B must be {self.spec.n}x{self.spec.m}, got {B.shape[0]}x{B.shape[1]}")
        object.__setattr__(self, 'B', _frozen(B))

    def scaled(self, t: float) -> "TangentParam":
        return TangentParam(self.spec, float(t) * self.B)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Matrix of SU(n+m) or SU(n,m): U^+ I(eps) U = I(eps), det U = 1."""
    spec: ManifoldSpec
    U: np.ndarray

    def __post_init__(self):
        U = as_cmatrix(self.U, 'U')
        size = self.spec.size
        if U.shape != (size, size):
            raise ShapeMismatch(f"U must be {size}x{size}, got {U.shape[0]}x{U.shape[1]}")
        scale = max(1.0, float(np.linalg.norm(U)) ** 2)
        defect = pseudo_unitarity_residual_matrix(U, self.spec)
        if defect > GROUP_TOL * scale:
            raise DomainError(f"Matrix violates pseudo-unitarity (residual {defect:.3e})")
        det_defect = abs(np.linalg.det(U) - 1.0)
        if det_defect > GROUP_TOL * scale:
            raise DomainError(f"Matrix determinant differs from 1 by {det_defect:.3e}")
        object.__setattr__(self, 'U', _frozen(U))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    @classmethod
    def identity(cls, spec: ManifoldSpec) -> "GroupElement":
        return cls(spec, np.eye(spec.size, dtype=complex))


# Array kernels. They accept stacks (..., n, m) and do not validate.

def tangent_to_pontryagin(B: np.ndarray, epsilon: int) -> np.ndarray:
    """Z = B ta(sqrt(B^+B)) / sqrt(B^+B)."""
    fn = MatrixFunction.TAN_OVER_X if epsilon == 1 else MatrixFunction.TANH_OVER_X
    return B @ herm_fn(dagger(B) @ B, fn)


def pontryagin_to_tangent(Z: np.ndarray, epsilon: int) -> np.ndarray:
    """B = arcta(sqrt(ZZ^+)) / sqrt(ZZ^+) Z."""
    fn = MatrixFunction.ARCTAN_OVER_X if epsilon == 1 else MatrixFunction.ARTANH_OVER_X
    return herm_fn(Z @ dagger(Z), fn) @ Z


def section_matrix(Z: np.ndarray, epsilon: int) -> np.ndarray:
    """The section sigma(Z) as a block matrix."""
    Zh = dagger(Z)
    R = herm_fn(identity_like(Z, Z.shape[-2]) + epsilon * (Z @ Zh), MatrixFunction.INVSQRT)
    S = herm_fn(identity_like(Z, Z.shape[-1]) + epsilon * (Zh @ Z), MatrixFunction.INVSQRT)
    top = np.concatenate([R, Z @ S], axis=-1)
    bottom = np.concatenate([-epsilon * (S @ Zh), S], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def split_blocks(U: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(A, B, C, D) blocks with A of size n x n."""
    return U[..., :n, :n], U[..., :n, n:], U[..., n:, :n], U[..., n:, n:]


def fractional_action(U: np.ndarray, Z: np.ndarray, n: int) -> np.ndarray:
    """Z' = (AZ + B)(CZ + D)^{-1}."""
    A, B, C, D = split_blocks(U, n)
    return right_divide(A @ Z + B, C @ Z + D)


def composed_coordinates(Z1: np.ndarray, Z2: np.ndarray, epsilon: int) -> np.ndarray:
    """Z3 = (1+eZ1Z1^+)^{-1/2} (Z1+Z2) (1-eZ1^+Z2)^{-1} (1+eZ1^+Z1)^{1/2}."""
    n, m = Z1.shape[-2:]
    Z1h = dagger(Z1)
    left = herm_fn(np.eye(n) + epsilon * (Z1 @ Z1h), MatrixFunction.INVSQRT)
    right = herm_fn(np.eye(m) + epsilon * (Z1h @ Z1), MatrixFunction.SQRT)
    middle = right_divide(Z1 + Z2, np.eye(m) - epsilon * (Z1h @ Z2))
    return left @ middle @ right


def geodesic_points(Z1: np.ndarray, Z2: np.ndarray, ts: np.ndarray, epsilon: int) -> np.ndarray:
    """Stack of points on the geodesic from Z1 to Z2 at parameters ts."""
    n = Z1.shape[-2]
    ts = np.asarray(ts, dtype=float)
    # translate Z1 to the origin, follow the radial geodesic, translate back
    W = composed_coordinates(-Z1, Z2, epsilon)
    direction = pontryagin_to_tangent(W, epsilon)
    radial = tangent_to_pontryagin(ts[..., None, None] * direction, epsilon)
    return fractional_action(section_matrix(Z1, epsilon), radial, n)


def pseudo_unitarity_residual_matrix(U: np.ndarray, spec: ManifoldSpec) -> float:
    I = pseudo_identity(spec.n, spec.m, spec.epsilon)
    return float(np.linalg.norm(dagger(U) @ I @ U - I))


# Object-level operations

def _check_same(*items) -> ManifoldSpec:
    spec = items[0].spec
    for item in items[1:]:
        if not spec.same_manifold(item.spec):
            raise ShapeMismatch(f"Manifold mismatch: {spec} vs {item.spec}")
    return spec


def b_to_z(B: TangentParam) -> GrassmannPoint:
    """Pontryagin coordinates of exp(X_B) o."""
    spec = B.spec
    if spec.compact:
        norm = spectral_norm(B.B)
        if norm >= np.pi / 2 - CHART_MARGIN:
            raise ChartOverflow(f"Tangent norm {norm:.12f} leaves the chart (limit pi/2)")
    return GrassmannPoint(spec, tangent_to_pontryagin(np.asarray(B.B), spec.epsilon))


def z_to_b(Z: GrassmannPoint) -> TangentParam:
    """Tangent parameter of a chart point (inverse of b_to_z)."""
    spec = Z.spec
    if not spec.compact and spectral_norm(Z.Z) >= 1.0:
        raise DomainError("Point outside the unit ball")
    return TangentParam(spec, pontryagin_to_tangent(np.asarray(Z.Z), spec.epsilon))


def section(Z: GrassmannPoint) -> GroupElement:
    """Group element sigma(Z) with sigma(Z) o = Z and sigma(0) = e."""
    return GroupElement(Z.spec, section_matrix(np.asarray(Z.Z), Z.spec.epsilon))


def section_from_tangent(B: TangentParam) -> GroupElement:
    """exp([[0, B], [-eps B^+, 0]]) written with the co/si spectral functions."""
    spec = B.spec
    Bm = np.asarray(B.B)
    Bh = dagger(Bm)
    if spec.compact:
        co, si = MatrixFunction.COS, MatrixFunction.SINC
    else:
        co, si = MatrixFunction.COSH, MatrixFunction.SINCH

    top = np.concatenate([herm_fn(Bm @ Bh, co), Bm @ herm_fn(Bh @ Bm, si)], axis=1)
    bottom = np.concatenate([-spec.epsilon * herm_fn(Bh @ Bm, si) @ Bh, herm_fn(Bh @ Bm, co)], axis=1)
    return GroupElement(spec, np.concatenate([top, bottom], axis=0))


def tangent_generator(B: TangentParam) -> np.ndarray:
    """The Lie algebra element [[0, B], [-eps B^+, 0]]."""
    spec = B.spec
    Bm = np.asarray(B.B)
    return np.block([
        [np.zeros((spec.n, spec.n)), Bm],
        [-spec.epsilon * dagger(Bm), np.zeros((spec.m, spec.m))]
    ]).astype(complex)


def section_gauss_factors(Z: GrassmannPoint) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Upper-unipotent, block-diagonal and lower-unipotent factors of sigma(Z)."""
    spec = Z.spec
    Zm = np.asarray(Z.Z)
    Zh = dagger(Zm)
    eps = spec.epsilon
    n, m = spec.n, spec.m

    upper = np.block([[np.eye(n), Zm], [np.zeros((m, n)), np.eye(m)]]).astype(complex)
    middle = np.block([
        [herm_fn(np.eye(n) + eps * Zm @ Zh, MatrixFunction.SQRT), np.zeros((n, m))],
        [np.zeros((m, n)), herm_fn(np.eye(m) + eps * Zh @ Zm, MatrixFunction.INVSQRT)]
    ]).astype(complex)
    lower = np.block([[np.eye(n), np.zeros((n, m))], [-eps * Zh, np.eye(m)]]).astype(complex)
    return upper, middle, lower


def group_blocks(g: GroupElement) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(A, B, C, D) blocks of a group element."""
    return split_blocks(np.asarray(g.U), g.spec.n)


def multiply(g1: GroupElement, g2: GroupElement) -> GroupElement:
    spec = _check_same(g1, g2)
    return GroupElement(spec, np.asarray(g1.U) @ np.asarray(g2.U))


def inverse_element(g: GroupElement) -> GroupElement:
    """g^{-1} = I g^+ I = [[A^+, eps C^+], [eps B^+, D^+]]."""
    eps = g.spec.epsilon
    A, B, C, D = group_blocks(g)
    inverse = np.block([[dagger(A), eps * dagger(C)], [eps * dagger(B), dagger(D)]])
    return GroupElement(g.spec, inverse)


def pseudo_unitarity_residual(g: GroupElement) -> float:
    """Frobenius norm of U^+ I U - I."""
    return pseudo_unitarity_residual_matrix(np.asarray(g.U), g.spec)


def block_constraint_residual(g: GroupElement) -> float:
    """Largest residual of A^+A+eC^+C=1, eB^+B+D^+D=1, eB^+A+D^+C=0."""
    eps = g.spec.epsilon
    A, B, C, D = group_blocks(g)
    first = dagger(A) @ A + eps * dagger(C) @ C - np.eye(g.spec.n)
    second = eps * dagger(B) @ B + dagger(D) @ D - np.eye(g.spec.m)
    third = eps * dagger(B) @ A + dagger(D) @ C
    return float(max(np.linalg.norm(first), np.linalg.norm(second), np.linalg.norm(third)))


def act(g: GroupElement, Z: GrassmannPoint) -> GrassmannPoint:
    """Linear fractional action (AZ + B)(CZ + D)^{-1}."""
    spec = _check_same(g, Z)
    A, B, C, D = group_blocks(g)
    Zm = np.asarray(Z.Z)
    denominator = C @ Zm + D

    condition = np.linalg.cond(denominator)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise ChartEscape(f"CZ + D is numerically singular (condition {condition:.3e})")

    return GrassmannPoint(spec, right_divide(A @ Zm + B, denominator))


def pair_valid(Z1: GrassmannPoint, Z2: GrassmannPoint) -> bool:
    """Both 1 - eZ1^+Z2 and 1 + eZ1Z2^+ are safely invertible."""
    spec = _check_same(Z1, Z2)
    eps = spec.epsilon
    Z1m, Z2m = np.asarray(Z1.Z), np.asarray(Z2.Z)
    first = np.eye(spec.m) - eps * dagger(Z1m) @ Z2m
    second = np.eye(spec.n) + eps * Z1m @ dagger(Z2m)
    return smallest_singular_value(first) > PAIR_FLOOR and smallest_singular_value(second) > PAIR_FLOOR


def kernel_defined(Z1: GrassmannPoint, Z2: GrassmannPoint) -> bool:
    """1 + eZ1Z2^+ is safely invertible; the kernel guard."""
    spec = _check_same(Z1, Z2)
    overlap = np.eye(spec.n) + spec.epsilon * np.asarray(Z1.Z) @ dagger(np.asarray(Z2.Z))
    return smallest_singular_value(overlap) > PAIR_FLOOR


def require_pair(Z1: GrassmannPoint, Z2: GrassmannPoint) -> ManifoldSpec:
    """Raise PairInvalid unless pair_valid holds."""
    if not pair_valid(Z1, Z2):
        raise PairInvalid("Points cannot be combined inside one chart")
    return Z1.spec


def require_kernel_pair(Z1: GrassmannPoint, Z2: GrassmannPoint) -> ManifoldSpec:
    """Raise PairInvalid unless kernel_defined holds."""
    if not kernel_defined(Z1, Z2):
        raise PairInvalid("Coherent states are orthogonal")
    return Z1.spec


def compose_points(Z1: GrassmannPoint, Z2: GrassmannPoint) -> GrassmannPoint:
    """Z3 = sigma(Z1) . Z2 in closed form."""
    spec = require_pair(Z1, Z2)
    return GrassmannPoint(spec, composed_coordinates(np.asarray(Z1.Z), np.asarray(Z2.Z), spec.epsilon))


def geodesic_from_origin(B: TangentParam, t: float) -> GrassmannPoint:
    """Point exp(t X_B) o of the radial geodesic."""
    return b_to_z(B.scaled(t))


def geodesic(Z1: GrassmannPoint, Z2: GrassmannPoint, t: float) -> GrassmannPoint:
    """Point at parameter t of the geodesic from Z1 (t=0) to Z2 (t=1)."""
    require_pair(Z1, Z2)
    direction = z_to_b(compose_points(-Z1, Z2))
    return act(section(Z1), geodesic_from_origin(direction, t))


def _special_normalize(U: np.ndarray) -> np.ndarray:
    """Divide by the principal root of the determinant so that det U = 1."""
    det = np.linalg.det(U)
    return U / det ** (1.0 / U.shape[0])


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_group_element(spec: ManifoldSpec, seed: Seed) -> GroupElement:
    """Seeded element of SU(n+m) (QR) or SU(n,m) (exponential of the Lie algebra)."""
    rng = np.random.default_rng(seed)
    size = spec.size

    if spec.compact:
        Q, R = np.linalg.qr(_complex_gaussian(rng, (size, size)))
        diagonal = np.diag(R)
        Q = Q * (diagonal / np.abs(diagonal))[None, :]
        return GroupElement(spec, _special_normalize(Q))

    n, m, eps = spec.n, spec.m, spec.epsilon
    a = _complex_gaussian(rng, (n, n))
    d = _complex_gaussian(rng, (m, m))
    b = _complex_gaussian(rng, (n, m))
    X = np.block([
        [0.5 * (a - dagger(a)), b],
        [-eps * dagger(b), 0.5 * (d - dagger(d))]
    ])
    X = X - (np.trace(X) / size) * np.eye(size)
    X = X / max(1.0, spectral_norm(X))
    return GroupElement(spec, _special_normalize(expm(X)))


def random_point(spec: ManifoldSpec, seed: Seed, norm_cap: float = 0.7) -> GrassmannPoint:
    """Seeded point with spectral norm at most norm_cap."""
    rng = np.random.default_rng(seed)
    Z = _complex_gaussian(rng, (spec.n, spec.m))
    radius = norm_cap * rng.uniform(0.2, 1.0)
    return GrassmannPoint(spec, Z * (radius / spectral_norm(Z)))


def isotropy_element(spec: ManifoldSpec, seed: Seed) -> GroupElement:
    """Seeded block-diagonal element diag(A, D) of S(U(n) x U(m))."""
    rng = np.random.default_rng(seed)
    A, _ = np.linalg.qr(_complex_gaussian(rng, (spec.n, spec.n)))
    D, _ = np.linalg.qr(_complex_gaussian(rng, (spec.m, spec.m)))
    D = D * (np.linalg.det(A) * np.linalg.det(D)) ** (-1.0 / spec.m)
    U = np.block([[A, np.zeros((spec.n, spec.m))], [np.zeros((spec.m, spec.n)), D]])
    return GroupElement(spec, U)


def chart_margin(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """Smallest singular value guarding the pair (diagnostics only)."""
    eps = Z1.spec.epsilon
    first = np.eye(Z1.spec.m) - eps * dagger(np.asarray(Z1.Z)) @ np.asarray(Z2.Z)
    second = np.eye(Z1.spec.n) + eps * np.asarray(Z1.Z) @ dagger(np.asarray(Z2.Z))
    return float(min(singular_values(first)[-1], singular_values(second)[-1]))
