"""
Gauss decomposition of section products, the multiplicative phase,
the Guichardet-Wigner and Dupont cocycles and the automorphy factor.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from dataclasses_json import dataclass_json

from .config import DEFAULT_ORDER
from .errors import SingularBlock, SingularQ
from .grassmann import (
    GrassmannPoint, GroupElement, act, compose_points, group_blocks, inverse_element,
    require_pair, section
)
from .matfun import (
    MatrixFunction, TWO_PI, dagger, det_c, herm_fn, principal_arg, right_divide, wrap_phase
)
from .phases import kernel, triangle_area_closed, triangle_area_quadrature

logger = logging.getLogger(__name__)

# exp(i eps Phi) = exp(-2 pi i BRIDGE_SIGN f) with the kernel det(1 + eps Z1 Z2^+)^(eps k)
BRIDGE_SIGN = -1

MAX_CONDITION = 1e12
SINGULAR_DET = 1e-12


@dataclass(frozen=True, eq=False)
class BlockProduct:
    """Blocks of section(Z1) section(Z2) and their Gauss decomposition."""
    M: np.ndarray
    N: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    Zprime: np.ndarray
    Zcomp: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    def assembled(self) -> np.ndarray:
        return np.block([[self.M, self.N], [self.P, self.Q]])

    def gauss_residual(self) -> float:
        """Largest defect of M = a + Z'bZc, N = Z'b, P = bZc, Q = b."""
        defects = [
            self.M - (self.alpha + self.Zprime @ self.beta @ self.Zcomp),
            self.N - self.Zprime @ self.beta,
            self.P - self.beta @ self.Zcomp,
            self.Q - self.beta,
        ]
        return float(max(np.linalg.norm(d) for d in defects))


@dataclass_json
@dataclass(frozen=True)
class CocycleTriple:
    """Multiplicative phase, Guichardet-Wigner value and Dupont area of one pair."""
    f: float
    c: float
    phi: float
    c_closed: float
    residuals: Dict[str, float] = field(default_factory=dict)


def _normalizers(Z: np.ndarray, epsilon: int) -> Tuple[np.ndarray, np.ndarray]:
    """(1 + eZZ^+)^{-1/2} and (1 + eZ^+Z)^{-1/2}."""
    n, m = Z.shape
    R = herm_fn(np.eye(n) + epsilon * Z @ dagger(Z), MatrixFunction.INVSQRT)
    S = herm_fn(np.eye(m) + epsilon * dagger(Z) @ Z, MatrixFunction.INVSQRT)
    return R, S


def block_product(Z1: GrassmannPoint, Z2: GrassmannPoint) -> BlockProduct:
    """Closed-form blocks of section(Z1) section(Z2) and its Gauss factors."""
    spec = require_pair(Z1, Z2)
    eps, n, m = spec.epsilon, spec.n, spec.m
    Z1m, Z2m = np.asarray(Z1.Z), np.asarray(Z2.Z)
    R1, S1 = _normalizers(Z1m, eps)
    R2, S2 = _normalizers(Z2m, eps)

    M = R1 @ (np.eye(n) - eps * Z1m @ dagger(Z2m)) @ R2
    N = R1 @ (Z1m + Z2m) @ S2
    P = -eps * S1 @ dagger(Z1m + Z2m) @ R2
    Q = S1 @ (np.eye(m) - eps * dagger(Z1m) @ Z2m) @ S2

    condition = np.linalg.cond(Q)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise SingularQ(f"Q block is numerically singular (condition {condition:.3e})")

    Zprime = right_divide(N, Q)
    Zcomp = np.linalg.solve(Q, P)
    alpha = M - Zprime @ P

    return BlockProduct(M=M, N=N, P=P, Q=Q, Zprime=Zprime, Zcomp=Zcomp, alpha=alpha, beta=Q)


def product_residual(bp: BlockProduct, Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """Distance between the closed-form blocks and the literal matrix product."""
    literal = np.asarray(section(Z1).U) @ np.asarray(section(Z2).U)
    return float(np.linalg.norm(bp.assembled() - literal))


def gauss_alpha(bp: Optional[BlockProduct], Z1: GrassmannPoint, Z2: GrassmannPoint) -> np.ndarray:
    """alpha = R1 (1+eZ1Z1^+)(1-eZ2Z1^+)^{-1}(1+eZ2Z2^+) R2."""
    spec = require_pair(Z1, Z2)
    eps, n = spec.epsilon, spec.n
    Z1m, Z2m = np.asarray(Z1.Z), np.asarray(Z2.Z)
    R1, _ = _normalizers(Z1m, eps)
    R2, _ = _normalizers(Z2m, eps)

    first = np.eye(n) + eps * Z1m @ dagger(Z1m)
    last = np.eye(n) + eps * Z2m @ dagger(Z2m)
    Lam = right_divide(first, np.eye(n) - eps * Z2m @ dagger(Z1m)) @ last
    alpha = R1 @ Lam @ R2

    if bp is not None:
        logger.debug(f"Schur complement residual {np.linalg.norm(alpha - bp.alpha):.3e}")
    return alpha


def _zzz_matrix(Z1: np.ndarray, Z2: np.ndarray, epsilon: int) -> np.ndarray:
    n = Z1.shape[0]
    root = herm_fn(np.eye(n) + epsilon * Z1 @ dagger(Z1), MatrixFunction.SQRT)
    left = np.linalg.inv(np.eye(n) - epsilon * Z2 @ dagger(Z1))
    right = np.linalg.inv(np.eye(n) - epsilon * Z1 @ dagger(Z2))
    X = root @ left @ (np.eye(n) + epsilon * Z2 @ dagger(Z2)) @ right @ root
    return 0.5 * (X + dagger(X))


def gauss_u(Z1: GrassmannPoint, Z2: GrassmannPoint) -> np.ndarray:
    """U = (1 + eZ3Z3^+)^{1/2} computed without forming Z3."""
    spec = require_pair(Z1, Z2)
    return herm_fn(_zzz_matrix(np.asarray(Z1.Z), np.asarray(Z2.Z), spec.epsilon), MatrixFunction.SQRT)


def zzz_residual(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """Distance between the product formula and 1 + eZ3Z3^+ from the composed point."""
    spec = require_pair(Z1, Z2)
    Z3 = np.asarray(compose_points(Z1, Z2).Z)
    direct = np.eye(spec.n) + spec.epsilon * Z3 @ dagger(Z3)
    return float(np.linalg.norm(_zzz_matrix(np.asarray(Z1.Z), np.asarray(Z2.Z), spec.epsilon) - direct))


def _minus_det(Z1: GrassmannPoint, Z2: GrassmannPoint) -> complex:
    """det(1 - eps Z1 Z2^+)."""
    spec = Z1.spec
    return det_c(np.eye(spec.n) - spec.epsilon * np.asarray(Z1.Z) @ dagger(np.asarray(Z2.Z)))


def multiplicative_phase(Z1: GrassmannPoint, Z2: GrassmannPoint, k: int = 1) -> float:
    """Phi = -eps k arg det(1 - eps Z1 Z2^+), wrapped to (-pi, pi]."""
    spec = require_pair(Z1, Z2)
    return float(wrap_phase(-spec.epsilon * k * principal_arg(_minus_det(Z1, Z2))))


def phase_chain_value(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """arg (det alpha)^{-eps} - arg (det U)^{-eps}, the Gauss route to Phi."""
    spec = require_pair(Z1, Z2)
    eps = spec.epsilon
    alpha = block_product(Z1, Z2).alpha
    U = gauss_u(Z1, Z2)
    return float(wrap_phase(-eps * (principal_arg(det_c(alpha)) - principal_arg(det_c(U)))))


def _upper_det(g: GroupElement) -> complex:
    v = det_c(group_blocks(g)[0])
    if abs(v) < SINGULAR_DET:
        raise SingularBlock(f"Upper-left block is singular (det {abs(v):.3e})")
    return v


def gw_cocycle(g1: GroupElement, g2: GroupElement) -> float:
    """f(g1, g2) = arg(v(g1) v(g2) / v(g1 g2)) / 2 pi with v = det A."""
    ratio = _upper_det(g1) * _upper_det(g2) / _upper_det(g1 @ g2)
    return principal_arg(ratio) / TWO_PI


def gw_cocycle_sections(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """Closed form of f on two sections: -arg det(1 - eps Z1 Z2^+) / 2 pi."""
    require_pair(Z1, Z2)
    return -principal_arg(_minus_det(Z1, Z2)) / TWO_PI


def gw_cocycle_condition_residual(g1: GroupElement, g2: GroupElement, g3: GroupElement) -> float:
    """Distance to the integers of f(g1,g2) + f(g1g2,g3) - f(g2,g3) - f(g1,g2g3)."""
    defect = (gw_cocycle(g1, g2) + gw_cocycle(g1 @ g2, g3)
              - gw_cocycle(g2, g3) - gw_cocycle(g1, g2 @ g3))
    return float(abs(defect - np.round(defect)))


def _cone_base(g1: GroupElement, g2: GroupElement) -> Tuple[GrassmannPoint, GrassmannPoint]:
    origin = GrassmannPoint.origin(g1.spec)
    return act(g1, origin), act(g1 @ g2, origin)


def dupont_cocycle(g1: GroupElement, g2: GroupElement, order: int = DEFAULT_ORDER) -> float:
    """Area of the geodesic cone with apex o and base from g1.o to g1g2.o, by quadrature."""
    Y1, Y2 = _cone_base(g1, g2)
    return triangle_area_quadrature(Y1, Y2, order).value


def dupont_cocycle_closed(g1: GroupElement, g2: GroupElement) -> float:
    Y1, Y2 = _cone_base(g1, g2)
    return triangle_area_closed(Y1, Y2).value


def dupont_closed(Z1: GrassmannPoint, Z2: GrassmannPoint) -> float:
    """c = -(eps/2) arg det(1 - eps Z1 Z2^+) for the sections of Z1, Z2."""
    spec = require_pair(Z1, Z2)
    return -0.5 * spec.epsilon * principal_arg(_minus_det(Z1, Z2))


def automorphy_J(g: GroupElement, X: GrassmannPoint, k: Optional[int] = None) -> complex:
    """J(g, X) = det(A^+ - eps X B^+)^(-eps k)."""
    spec = g.spec
    k = spec.weight_k if k is None else k
    A, B, _, _ = group_blocks(g)
    d = det_c(dagger(A) - spec.epsilon * np.asarray(X.Z) @ dagger(B))
    if abs(d) < SINGULAR_DET:
        raise SingularBlock(f"A^+ - eps X B^+ is singular (det {abs(d):.3e})")
    return complex(d ** (-spec.epsilon * k))


def automorphy_J_inverse(g: GroupElement, X: GrassmannPoint, k: Optional[int] = None) -> complex:
    """J(g^{-1}, X) = det(A - X C)^(-eps k)."""
    spec = g.spec
    k = spec.weight_k if k is None else k
    A, _, C, _ = group_blocks(g)
    d = det_c(A - np.asarray(X.Z) @ C)
    if abs(d) < SINGULAR_DET:
        raise SingularBlock(f"A - X C is singular (det {abs(d):.3e})")
    return complex(d ** (-spec.epsilon * k))


def automorphy_cocycle_residual(g1: GroupElement, g2: GroupElement, X: GrassmannPoint) -> float:
    """Relative defect of J(g1 g2, X) = J(g1, g2 X) J(g2, X)."""
    lhs = automorphy_J(g1 @ g2, X)
    rhs = automorphy_J(g1, act(g2, X)) * automorphy_J(g2, X)
    return float(abs(lhs - rhs) / max(1.0, abs(lhs)))


def kernel_covariance_residual(g: GroupElement, X: GrassmannPoint, Y: GrassmannPoint) -> float:
    """Relative defect of K(gX, gY) = J(g, X) K(X, Y) conj(J(g, Y))."""
    lhs = kernel(act(g, X), act(g, Y)).value
    rhs = automorphy_J(g, X) * kernel(X, Y).value * np.conj(automorphy_J(g, Y))
    return float(abs(lhs - rhs) / max(1.0, abs(lhs)))


def isotropy_completion(Z1: GrassmannPoint, Z2: GrassmannPoint) -> Tuple[GroupElement, float]:
    """h = section(Z3)^{-1} section(Z1) section(Z2) and its off-diagonal size."""
    Z3 = compose_points(Z1, Z2)
    h = inverse_element(section(Z3)) @ section(Z1) @ section(Z2)
    _, B, C, _ = group_blocks(h)
    return h, float(max(np.linalg.norm(B), np.linalg.norm(C)))


def cocycle_triple_report(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int = DEFAULT_ORDER) -> CocycleTriple:
    """Phi, f and c for one pair together with the bridge residuals."""
    spec = require_pair(Z1, Z2)
    eps = spec.epsilon
    g1, g2 = section(Z1), section(Z2)

    phi = multiplicative_phase(Z1, Z2)
    f = gw_cocycle(g1, g2)
    c = dupont_cocycle(g1, g2, order)
    c_closed = dupont_closed(Z1, Z2)

    residuals = {
        'bridge': float(abs(np.exp(1j * eps * phi) - np.exp(-2j * np.pi * BRIDGE_SIGN * f))),
        'dupont_quadrature': float(abs(f - eps * c / np.pi)),
        'dupont_closed': float(abs(f - eps * c_closed / np.pi)),
    }
    return CocycleTriple(f=float(f), c=float(c), phi=phi, c_closed=float(c_closed), residuals=residuals)
