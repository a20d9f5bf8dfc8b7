"""
Dense complex linear algebra kernels and hermitian matrix functions.
Every spectral function goes through a hermitian eigendecomposition.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Union

import numpy as np

from .errors import ConvergenceFailure, DomainError, NotHermitian, ZeroArgument

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-12
SERIES_THRESHOLD = 1e-4  # on x, i.e. eigenvalues below 1e-8
ZERO_MODULUS = 1e-300

TWO_PI = 2.0 * np.pi


class MatrixFunction(Enum):
    """Scalar functions applied to the eigenvalues x**2 of a PSD matrix."""
    SQRT = "sqrt"
    INVSQRT = "invsqrt"
    ARCTAN_OVER_X = "arctan_over_x"
    ARTANH_OVER_X = "artanh_over_x"
    TAN_OVER_X = "tan_over_x"
    TANH_OVER_X = "tanh_over_x"
    COS = "cos"
    COSH = "cosh"
    SINC = "sinc"
    SINCH = "sinch"


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues (ascending) and unitary eigenvectors of a hermitian matrix."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return V diag(w) V^+."""
        V = self.eigenvectors
        return (V * self.eigenvalues[..., None, :]) @ dagger(V)


def dagger(A: np.ndarray) -> np.ndarray:
    """Conjugate transpose of a matrix or a stack of matrices."""
    return np.conj(np.swapaxes(A, -1, -2))


def as_cmatrix(values, name: str = 'matrix') -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    A = np.asarray(values, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DomainError(f"{name} must be a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} has non-finite entries")
    return A


def identity_like(A: np.ndarray, size: int = None) -> np.ndarray:
    """Identity broadcast to the stack shape of A."""
    size = A.shape[-1] if size is None else size
    return np.broadcast_to(np.eye(size, dtype=complex), A.shape[:-2] + (size, size))


def pseudo_identity(n: int, m: int, epsilon: int) -> np.ndarray:
    """I_nm(eps) = diag(eps * 1_n, 1_m)."""
    return np.diag(np.concatenate([np.full(n, float(epsilon)), np.ones(m)])).astype(complex)


def right_divide(X: np.ndarray, A: np.ndarray) -> np.ndarray:
    """X A^{-1} for matrices or stacks, without forming the inverse."""
    return dagger(np.linalg.solve(dagger(A), dagger(X)))


def _frobenius(A: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(A) ** 2, axis=(-2, -1)))


def _check_hermitian(H: np.ndarray) -> None:
    if H.ndim < 2 or H.shape[-1] != H.shape[-2]:
        raise NotHermitian(f"Expected square matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise NotHermitian("Matrix has non-finite entries")
    defect = _frobenius(H - dagger(H))
    scale = np.maximum(1.0, _frobenius(H))
    if np.any(defect > HERMITIAN_TOL * scale):
        raise NotHermitian(f"Hermiticity defect {float(np.max(defect / scale)):.3e} exceeds {HERMITIAN_TOL}")


def _eigh(H: np.ndarray):
    H = 0.5 * (H + dagger(H))
    try:
        return np.linalg.eigh(H)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"Hermitian eigensolver failed: {str(e)}")


def herm_eig(H) -> HermitianSpectrum:
    """Eigendecomposition of a hermitian matrix (ascending eigenvalues)."""
    H = np.asarray(H, dtype=complex)
    _check_hermitian(H)
    eigenvalues, eigenvectors = _eigh(H)
    return HermitianSpectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


# Scalar functions of lam = x**2. Small arguments use 4-term Taylor series.

def _split(lam: np.ndarray):
    x = np.sqrt(lam)
    small = x < SERIES_THRESHOLD
    safe_x = np.where(small, 1.0, x)
    return x, small, safe_x


def _sqrt(lam):
    return np.sqrt(lam)


def _invsqrt(lam):
    if np.any(lam <= 0.0):
        raise DomainError("invsqrt needs strictly positive eigenvalues")
    return 1.0 / np.sqrt(lam)


def _arctan_over_x(lam):
    x, small, safe_x = _split(lam)
    series = 1.0 - lam / 3.0 + lam ** 2 / 5.0 - lam ** 3 / 7.0
    return np.where(small, series, np.arctan(safe_x) / safe_x)


def _artanh_over_x(lam):
    x, small, safe_x = _split(lam)
    if np.any(x >= 1.0):
        raise DomainError(f"artanh needs eigenvalues below 1, got {float(np.max(x)):.6g}")
    series = 1.0 + lam / 3.0 + lam ** 2 / 5.0 + lam ** 3 / 7.0
    return np.where(small, series, np.arctanh(np.where(small, 0.5, safe_x)) / safe_x)


def _tan_over_x(lam):
    x, small, safe_x = _split(lam)
    if np.any(x >= np.pi / 2):
        raise DomainError(f"tan needs eigenvalues below pi/2, got {float(np.max(x)):.6g}")
    series = 1.0 + lam / 3.0 + 2.0 * lam ** 2 / 15.0 + 17.0 * lam ** 3 / 315.0
    return np.where(small, series, np.tan(safe_x) / safe_x)


def _tanh_over_x(lam):
    x, small, safe_x = _split(lam)
    series = 1.0 - lam / 3.0 + 2.0 * lam ** 2 / 15.0 - 17.0 * lam ** 3 / 315.0
    return np.where(small, series, np.tanh(safe_x) / safe_x)


def _cos(lam):
    return np.cos(np.sqrt(lam))


def _cosh(lam):
    return np.cosh(np.sqrt(lam))


def _sinc(lam):
    x, small, safe_x = _split(lam)
    series = 1.0 - lam / 6.0 + lam ** 2 / 120.0 - lam ** 3 / 5040.0
    return np.where(small, series, np.sin(safe_x) / safe_x)


def _sinch(lam):
    x, small, safe_x = _split(lam)
    series = 1.0 + lam / 6.0 + lam ** 2 / 120.0 + lam ** 3 / 5040.0
    return np.where(small, series, np.sinh(safe_x) / safe_x)


_SCALAR_FUNCTIONS: Dict[MatrixFunction, Callable[[np.ndarray], np.ndarray]] = {
    MatrixFunction.SQRT: _sqrt,
    MatrixFunction.INVSQRT: _invsqrt,
    MatrixFunction.ARCTAN_OVER_X: _arctan_over_x,
    MatrixFunction.ARTANH_OVER_X: _artanh_over_x,
    MatrixFunction.TAN_OVER_X: _tan_over_x,
    MatrixFunction.TANH_OVER_X: _tanh_over_x,
    MatrixFunction.COS: _cos,
    MatrixFunction.COSH: _cosh,
    MatrixFunction.SINC: _sinc,
    MatrixFunction.SINCH: _sinch,
}


def _clamp(eigenvalues: np.ndarray) -> np.ndarray:
    """Clamp roundoff negatives of a PSD spectrum to zero."""
    floor = -CLAMP_TOL * np.maximum(1.0, np.max(np.abs(eigenvalues), axis=-1, keepdims=True))
    if np.any(eigenvalues < floor):
        raise DomainError(f"Matrix is not positive semidefinite (eigenvalue {float(np.min(eigenvalues)):.3e})")
    negative = eigenvalues < 0.0
    if np.any(negative):
        logger.debug(f"Clamped {int(np.sum(negative))} roundoff-negative eigenvalues to zero")
    return np.where(negative, 0.0, eigenvalues)


def herm_fn(H, fn: Union[MatrixFunction, str]) -> np.ndarray:
    """Apply a scalar function to the spectrum of a hermitian PSD matrix (or stack)."""
    fn = MatrixFunction(fn)
    H = np.asarray(H, dtype=complex)
    _check_hermitian(H)

    eigenvalues, eigenvectors = _eigh(H)
    eigenvalues = _clamp(eigenvalues)
    values = _SCALAR_FUNCTIONS[fn](eigenvalues)

    return (eigenvectors * values[..., None, :]) @ dagger(eigenvectors)


def det_c(A) -> complex:
    """Determinant via pivoted LU."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"Determinant needs a square matrix, got shape {A.shape}")
    if A.shape == (1, 1):
        return complex(A[0, 0])
    return complex(np.linalg.det(A))


def wrap_phase(angle):
    """Map an angle into (-pi, pi]."""
    return np.pi - np.mod(np.pi - angle, TWO_PI)


def phase_distance(a, b) -> float:
    """Distance between two angles modulo 2*pi."""
    return float(abs(wrap_phase(a - b)))


def principal_arg(z: complex) -> float:
    """Principal argument in (-pi, pi]."""
    z = complex(z)
    if abs(z) < ZERO_MODULUS:
        raise ZeroArgument("Argument of zero is undefined")
    return float(wrap_phase(np.angle(z)))


def spectral_norm(A) -> float:
    """Largest singular value."""
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False)[0])


def singular_values(A) -> np.ndarray:
    """Singular values in descending order (stacks supported)."""
    return np.linalg.svd(np.asarray(A, dtype=complex), compute_uv=False)


def smallest_singular_value(A) -> float:
    """Smallest singular value of a matrix."""
    return float(singular_values(A)[..., -1])
