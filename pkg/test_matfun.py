#!/usr/bin/env python3
"""
Tests for the hermitian matrix-function kernels.
Run with pytest or directly as a script.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

# Add project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core.errors import DomainError, NotHermitian, ZeroArgument
from core.matfun import (
    MatrixFunction, dagger, det_c, herm_eig, herm_fn, phase_distance, principal_arg,
    pseudo_identity, right_divide, spectral_norm, wrap_phase
)

SAMPLE = np.array([[2, 1j], [-1j, 2]], dtype=complex)


def random_psd(rng, size, scale=1.0):
    A = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    H = A @ dagger(A)
    return scale * H / np.linalg.norm(H, 2)


def test_herm_eig_examples():
    zero = herm_eig(np.zeros((2, 2)))
    assert_allclose(zero.eigenvalues, [0.0, 0.0], atol=1e-15)
    assert_allclose(np.abs(zero.eigenvectors), np.eye(2), atol=1e-15)

    assert_allclose(herm_eig(np.diag([1.0, 4.0])).eigenvalues, [1.0, 4.0], atol=1e-14)

    spectrum = herm_eig(SAMPLE)
    assert_allclose(spectrum.eigenvalues, [1.0, 3.0], atol=1e-14)
    assert_allclose(spectrum.reconstruct(), SAMPLE, atol=1e-12)
    V = spectrum.eigenvectors
    assert np.linalg.norm(dagger(V) @ V - np.eye(2)) <= 1e-12


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(NotHermitian):
        herm_eig(np.ones((2, 3)))


def test_sqrt_examples():
    assert_allclose(herm_fn(np.eye(3), MatrixFunction.SQRT), np.eye(3), atol=1e-15)
    root = herm_fn(SAMPLE, 'sqrt')
    assert_allclose(root @ root, SAMPLE, atol=1e-12)
    assert_allclose(np.linalg.eigvalsh(root), [1.0, np.sqrt(3.0)], atol=1e-12)


def test_removable_singularities_at_zero():
    zero = np.zeros((2, 2))
    for fn in (MatrixFunction.ARCTAN_OVER_X, MatrixFunction.ARTANH_OVER_X, MatrixFunction.TAN_OVER_X,
               MatrixFunction.TANH_OVER_X, MatrixFunction.SINC, MatrixFunction.SINCH,
               MatrixFunction.COS, MatrixFunction.COSH):
        assert_allclose(herm_fn(zero, fn), np.eye(2), atol=1e-15)


@pytest.mark.parametrize("x", [1e-5, 9.9e-5, 1.01e-4, 1e-3])
def test_series_branch_matches_closed_form(x):
    H = np.array([[x * x]])
    assert_allclose(herm_fn(H, 'arctan_over_x')[0, 0].real, np.arctan(x) / x, rtol=1e-14)
    assert_allclose(herm_fn(H, 'artanh_over_x')[0, 0].real, np.arctanh(x) / x, rtol=1e-14)
    assert_allclose(herm_fn(H, 'tan_over_x')[0, 0].real, np.tan(x) / x, rtol=1e-14)
    assert_allclose(herm_fn(H, 'tanh_over_x')[0, 0].real, np.tanh(x) / x, rtol=1e-14)
    assert_allclose(herm_fn(H, 'sinc')[0, 0].real, np.sin(x) / x, rtol=1e-14)
    assert_allclose(herm_fn(H, 'sinch')[0, 0].real, np.sinh(x) / x, rtol=1e-14)


def test_inverse_square_root():
    rng = np.random.default_rng(3)
    H = random_psd(rng, 3) + np.eye(3)
    inverse_root = herm_fn(H, 'invsqrt')
    assert_allclose(inverse_root @ H @ inverse_root, np.eye(3), atol=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        herm_fn(np.diag([1.0, 0.0]), 'invsqrt')
    with pytest.raises(DomainError):
        herm_fn(np.diag([0.25, 1.0]), 'artanh_over_x')
    with pytest.raises(DomainError):
        herm_fn(np.diag([4.0, 0.0]), 'tan_over_x')
    with pytest.raises(DomainError):
        herm_fn(np.diag([1.0, -0.5]), 'sqrt')


def test_roundoff_negative_eigenvalues_are_clamped():
    H = np.diag([1.0, -1e-14])
    assert_allclose(herm_fn(H, 'sqrt'), np.diag([1.0, 0.0]), atol=1e-15)


def test_stacked_input_matches_loop():
    rng = np.random.default_rng(11)
    stack = np.array([random_psd(rng, 2, 0.8) for _ in range(5)])
    batched = herm_fn(stack, 'tan_over_x')
    for H, F in zip(stack, batched):
        assert_allclose(F, herm_fn(H, 'tan_over_x'), atol=1e-14)


def test_unknown_function_tag():
    with pytest.raises(ValueError):
        herm_fn(np.eye(2), 'log')


def test_det_examples():
    assert det_c(np.eye(3)) == pytest.approx(1.0)
    assert det_c(np.diag([2.0, 3j])) == pytest.approx(6j)
    assert det_c([[1 + 2j]]) == 1 + 2j
    with pytest.raises(DomainError):
        det_c(np.ones((2, 3)))


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_det_multiplicative(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    product = det_c(A) * det_c(B)
    assert abs(product - det_c(A @ B)) <= 1e-10 * max(1.0, abs(product))


def test_principal_arg_examples():
    assert principal_arg(1.0) == 0.0
    assert principal_arg(-1.0) == pytest.approx(np.pi)
    assert principal_arg(complex(-1.0, -0.0)) == pytest.approx(np.pi)
    assert abs(principal_arg(np.exp(1j * np.pi / 3)) - np.pi / 3) <= 1e-15
    with pytest.raises(ZeroArgument):
        principal_arg(0.0)


def test_wrap_and_distance():
    assert wrap_phase(np.pi) == pytest.approx(np.pi)
    assert wrap_phase(-np.pi) == pytest.approx(np.pi)
    assert wrap_phase(3 * np.pi / 2) == pytest.approx(-np.pi / 2)
    assert phase_distance(np.pi - 1e-3, -np.pi + 1e-3) == pytest.approx(2e-3)


def test_spectral_norm_examples():
    assert spectral_norm(np.zeros((2, 2))) == 0.0
    assert spectral_norm(np.eye(3)) == pytest.approx(1.0)
    assert spectral_norm([[0, 2], [0, 0]]) == pytest.approx(2.0)


def test_small_helpers():
    assert_allclose(pseudo_identity(1, 2, -1), np.diag([-1.0, 1.0, 1.0]))
    rng = np.random.default_rng(5)
    A = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    X = rng.standard_normal((2, 3))
    assert_allclose(right_divide(X, A) @ A, X, atol=1e-12)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
