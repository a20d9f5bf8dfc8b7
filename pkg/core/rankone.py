"""
Rank-one cases: the sphere SU(2)/U(1), the disc SU(1,1)/U(1) and the flat plane.
Curved cases reuse the 1x1 Grassmann geodesics.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import DEFAULT_ORDER
from .errors import DomainError, ShapeMismatch, ValidationError
from .grassmann import GrassmannPoint, ManifoldSpec
from .matfun import phase_distance, principal_arg
from .phases import ORIENTATION_SIGN, check_order, cone_integral, kernel

logger = logging.getLogger(__name__)

DISC_MARGIN = 1e-9


class RankOneSpace(Enum):
    SPHERE = "sphere"
    DISC = "disc"
    PLANE = "plane"


@dataclass(frozen=True)
class RankOnePoint:
    """Complex coordinate z on a rank-one space; weight is j (sphere) or k (disc)."""
    z: complex
    space: RankOneSpace
    weight: float = 1.0

    def __post_init__(self):
        z = complex(self.z)
        space = RankOneSpace(self.space)
        object.__setattr__(self, 'z', z)
        object.__setattr__(self, 'space', space)

        if not np.isfinite(z.real) or not np.isfinite(z.imag):
            raise DomainError("z must be finite")
        if space is RankOneSpace.DISC and abs(z) >= 1.0 - DISC_MARGIN:
            raise DomainError(f"Disc point outside the unit disc (|z| = {abs(z):.12f})")

        if space is not RankOneSpace.PLANE:
            twice = 2.0 * self.weight
            if abs(twice - round(twice)) > 1e-12:
                raise ValidationError(f"Weight must be a half-integer, got {self.weight}")
            floor = 0.5 if space is RankOneSpace.SPHERE else 1.0
            if self.weight < floor:
                raise ValidationError(f"{space.value} weight must be >= {floor}, got {self.weight}")

    @classmethod
    def sphere(cls, z: complex, j: float = 0.5) -> "RankOnePoint":
        return cls(z, RankOneSpace.SPHERE, j)

    @classmethod
    def disc(cls, z: complex, k: float = 1.0) -> "RankOnePoint":
        return cls(z, RankOneSpace.DISC, k)

    @classmethod
    def plane(cls, z: complex) -> "RankOnePoint":
        return cls(z, RankOneSpace.PLANE)

    @property
    def epsilon(self) -> int:
        if self.space is RankOneSpace.PLANE:
            raise DomainError("The plane has no Grassmann counterpart")
        return 1 if self.space is RankOneSpace.SPHERE else -1

    def to_grassmann(self, weight_k: int = 1) -> GrassmannPoint:
        """The 1x1 Grassmann point with the same coordinate."""
        return GrassmannPoint(ManifoldSpec(1, 1, self.epsilon, weight_k), np.array([[self.z]]))


def _check_same_space(p: RankOnePoint, q: RankOnePoint) -> None:
    if p.space is not q.space:
        raise ShapeMismatch(f"Points live on different spaces: {p.space.value} vs {q.space.value}")
    if p.space is not RankOneSpace.PLANE and p.weight != q.weight:
        raise ShapeMismatch(f"Points carry different weights: {p.weight} vs {q.weight}")


def shoelace_area(a: complex, b: complex, c: complex) -> float:
    """Signed Euclidean area of the triangle (a, b, c), counter-clockwise positive."""
    return 0.5 * float((np.conj(b - a) * (c - a)).imag)


def rank1_phase(p: RankOnePoint, q: RankOnePoint) -> float:
    """Overlap phase: j arg(1 + z conj(z')), -k arg(1 - z conj(z')) or Im(z conj(z'))."""
    _check_same_space(p, q)
    product = p.z * np.conj(q.z)

    if p.space is RankOneSpace.PLANE:
        return float(product.imag)
    if p.space is RankOneSpace.SPHERE:
        return float(p.weight * principal_arg(1.0 + product))
    return float(-p.weight * principal_arg(1.0 - product))


def rank_one_omega(surface: np.ndarray, d_t: np.ndarray, d_s: np.ndarray, epsilon: int) -> np.ndarray:
    """Im(conj(v) w) / (1 + eps |z|^2)^2 on stacks of 1x1 matrices."""
    z, v, w = surface[..., 0, 0], d_t[..., 0, 0], d_s[..., 0, 0]
    return (np.conj(v) * w).imag / (1.0 + epsilon * np.abs(z) ** 2) ** 2


def rank1_area(p: RankOnePoint, q: RankOnePoint, order: int = DEFAULT_ORDER) -> float:
    """Signed area of the geodesic triangle (0, p, q)."""
    _check_same_space(p, q)
    order = check_order(order)

    if p.space is RankOneSpace.PLANE:
        return ORIENTATION_SIGN * shoelace_area(0.0, p.z, q.z)
    if p.z == q.z:
        return 0.0

    Z1 = np.asarray(p.to_grassmann().Z)
    Z2 = np.asarray(q.to_grassmann().Z)
    value = ORIENTATION_SIGN * cone_integral(Z1, Z2, p.epsilon, order, form=rank_one_omega)
    logger.debug(f"Rank-one {p.space.value} area {value:.15g} at order {order}")
    return value


def grassmann_reduction_residual(p: RankOnePoint, q: RankOnePoint) -> float:
    """Distance between the 1x1 kernel phase with weight 2j (or 2k) and twice rank1_phase."""
    _check_same_space(p, q)
    doubled = int(round(2.0 * p.weight))
    overlap = kernel(p.to_grassmann(doubled), q.to_grassmann(doubled))
    return phase_distance(overlap.phase, 2.0 * rank1_phase(p, q))


def plane_residual(p: RankOnePoint, q: RankOnePoint) -> float:
    """Im(z conj(z')) against twice the oriented area of (0, z, z + z')."""
    if p.space is not RankOneSpace.PLANE or q.space is not RankOneSpace.PLANE:
        raise ShapeMismatch("Plane check needs two plane points")
    doubled = 2.0 * ORIENTATION_SIGN * shoelace_area(0.0, p.z, p.z + q.z)
    return float(abs(rank1_phase(p, q) - doubled))
