#!/usr/bin/env python3
"""
Tests for the reproducing kernel, overlap phases, triangle areas and the chordal distance.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# Add project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core.errors import PairInvalid, ValidationError
from core.grassmann import (
    GrassmannPoint, ManifoldSpec, act, isotropy_element, random_group_element, random_point
)
from core.matfun import phase_distance
from core.phases import (
    ORIENTATION_SIGN, PHASE_AREA_SIGN, AreaMethod, chordal_distance, cone_integral, kernel,
    kernel_ratio, metric_at, normalized_overlap_phase, omega_at, triangle_area, triangle_area_closed,
    triangle_area_quadrature
)

CONFIGS = [(n, m, eps) for n in (1, 2, 3) for m in (1, 2, 3) for eps in (1, -1)]
SEEDS = st.integers(min_value=0, max_value=2 ** 32 - 1)


def point(spec, value):
    return GrassmannPoint(spec, np.atleast_2d(np.asarray(value, dtype=complex)))


def pair(spec, seed):
    return random_point(spec, [seed, 1]), random_point(spec, [seed, 2])


class TestKernel:
    def test_kernel_with_origin_is_one(self):
        for eps in (1, -1):
            spec = ManifoldSpec(2, 3, eps)
            overlap = kernel(random_point(spec, 4), GrassmannPoint.origin(spec))
            assert abs(overlap.value - 1.0) <= 1e-15
            assert overlap.phase == 0.0

    def test_scalar_examples(self):
        sphere = ManifoldSpec(1, 1, 1)
        z, w = 0.3 + 0.2j, -0.5 + 0.7j
        assert abs(kernel(point(sphere, z), point(sphere, w)).value - (1 + z * np.conj(w))) <= 1e-15

        disc = ManifoldSpec(1, 1, -1)
        assert abs(kernel(point(disc, 0.5), point(disc, 0.5)).value - 4.0 / 3.0) <= 1e-14

    def test_polar_form(self):
        spec = ManifoldSpec(2, 2, -1).with_weight(3)
        Z1, Z2 = pair(spec, 8)
        overlap = kernel(Z1, Z2)
        assert abs(overlap.value - overlap.magnitude * np.exp(1j * overlap.phase)) <= 1e-12 * overlap.magnitude
        record = overlap.to_record()
        assert set(record) == {'value', 'magnitude', 'phase'}

    def test_invalid_pair(self):
        sphere = ManifoldSpec(1, 1, 1)
        with pytest.raises(PairInvalid):
            kernel(point(sphere, 1.0), point(sphere, -1.0))
        with pytest.raises(ValidationError):
            kernel(point(sphere, 0.1), point(sphere, 0.2), k=0)

    def test_self_pair_with_unit_singular_value(self):
        sphere = ManifoldSpec(1, 1, 1)
        Z = point(sphere, 1.0)
        assert abs(kernel(Z, Z).value - 2.0) <= 1e-15
        assert normalized_overlap_phase(Z, Z) == 0.0
        assert triangle_area_closed(Z, Z).value == 0.0
        assert abs(kernel_ratio(Z, Z) - 1.0) <= 1e-15
        with pytest.raises(PairInvalid):
            triangle_area_quadrature(Z, Z)

        square = ManifoldSpec(2, 2, 1)
        W = GrassmannPoint(square, np.diag([1.0, 0.3j]))
        assert normalized_overlap_phase(W, W) == 0.0
        assert triangle_area_closed(W, W).value == 0.0
        assert chordal_distance(W, W) == 0.0

    @pytest.mark.parametrize("weight", [2, 3])
    def test_weight_scales_the_phase(self, weight):
        for eps in (1, -1):
            spec = ManifoldSpec(2, 2, eps)
            for seed in range(5):
                Z1, Z2 = pair(spec, seed)
                base = kernel(Z1, Z2, k=1).phase
                assert phase_distance(kernel(Z1, Z2, k=weight).phase, weight * base) <= 1e-10


def test_overlap_phase_examples():
    spec = ManifoldSpec(2, 2, 1)
    Z = random_point(spec, 5)
    assert abs(normalized_overlap_phase(Z, Z)) <= 1e-14

    sphere = ManifoldSpec(1, 1, 1)
    phase = normalized_overlap_phase(point(sphere, 0.5), point(sphere, 0.3j))
    assert abs(phase - np.arctan(-0.15)) <= 1e-14


def test_closed_area_examples():
    disc = ManifoldSpec(1, 1, -1)
    Z = point(disc, 0.3 - 0.1j)
    assert triangle_area_closed(Z, GrassmannPoint.origin(disc)).value == 0.0
    assert abs(triangle_area_closed(Z, Z).value) <= 1e-14

    area = triangle_area_closed(point(disc, 0.5), point(disc, 0.3j))
    assert area.method is AreaMethod.CLOSED_FORM
    assert abs(area.value + 0.5 * np.arctan(0.15)) <= 1e-14


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_phase_area_identity(n, m, eps):
    spec = ManifoldSpec(n, m, eps)
    for seed in range(10):
        Z1, Z2 = pair(spec, seed)
        area = triangle_area_closed(Z1, Z2).value
        assert phase_distance(normalized_overlap_phase(Z1, Z2), 2 * PHASE_AREA_SIGN * area) <= 1e-12
        assert abs(area + triangle_area_closed(Z2, Z1).value) <= 1e-14
        assert abs(area) < n * m * np.pi


@pytest.mark.parametrize("eps", [1, -1])
def test_isotropy_invariance(eps):
    spec = ManifoldSpec(2, 3, eps)
    for seed in range(10):
        Z1, Z2 = pair(spec, seed)
        k = isotropy_element(spec, seed)
        moved = triangle_area_closed(act(k, Z1), act(k, Z2)).value
        assert abs(moved - triangle_area_closed(Z1, Z2).value) <= 1e-10


@settings(deadline=None, max_examples=20)
@given(seed=SEEDS)
def test_area_is_invariant_under_the_group(seed):
    spec = ManifoldSpec(2, 2, -1)
    g = random_group_element(spec, [seed, 0])
    Z0, Z1, Z2 = (random_point(spec, [seed, i]) for i in (1, 2, 3))
    before = triangle_area(Z0, Z1, Z2).value
    after = triangle_area(act(g, Z0), act(g, Z1), act(g, Z2)).value
    assert abs(before - after) <= 1e-9


def test_triangle_area_with_vertex_at_origin():
    spec = ManifoldSpec(2, 2, 1)
    Z1, Z2 = pair(spec, 2)
    origin = GrassmannPoint.origin(spec)
    assert abs(triangle_area(origin, Z1, Z2).value - triangle_area_closed(Z1, Z2).value) <= 1e-14


def test_omega_examples():
    spec = ManifoldSpec(1, 1, 1)
    origin = GrassmannPoint.origin(spec)
    assert omega_at(origin, [[1.0]], [[1.0]]) == 0.0
    assert abs(omega_at(origin, [[1.0]], [[1j]]) - 1.0) <= 1e-15

    wide = ManifoldSpec(2, 3, -1)
    Z = random_point(wide, 6)
    rng = np.random.default_rng(6)
    V = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    W = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    assert abs(omega_at(Z, V, V)) <= 1e-14
    assert abs(omega_at(Z, V, W) + omega_at(Z, W, V)) <= 1e-13
    assert metric_at(Z, V, V) > 0.0


def test_orientation_sign_regression():
    # counter-clockwise triangle (0, r, ir) on the sphere chart
    r = 0.4
    raw = cone_integral(np.array([[r]], dtype=complex), np.array([[1j * r]]), 1, 32)
    closed = triangle_area_closed(point(ManifoldSpec(1, 1, 1), r), point(ManifoldSpec(1, 1, 1), 1j * r)).value
    assert ORIENTATION_SIGN == -1 and PHASE_AREA_SIGN == 1
    assert raw > 0.0 > closed
    assert abs(ORIENTATION_SIGN * raw - closed) <= 1e-6


class TestQuadrature:
    def test_degenerate_cone(self):
        spec = ManifoldSpec(2, 2, -1)
        Z = random_point(spec, 1)
        area = triangle_area_quadrature(Z, Z, order=32)
        assert area.method is AreaMethod.QUADRATURE
        assert abs(area.value) <= 1e-12

    def test_sphere_example(self):
        sphere = ManifoldSpec(1, 1, 1)
        area = triangle_area_quadrature(point(sphere, 0.4), point(sphere, 0.4j), order=32)
        assert abs(area.value - 0.5 * np.angle(1 + 0.4 * np.conj(0.4j))) <= 1e-6

    @pytest.mark.parametrize("n,m,eps", [(1, 1, 1), (1, 1, -1), (1, 2, 1), (2, 2, -1), (2, 2, 1), (2, 3, -1)])
    def test_matches_closed_form(self, n, m, eps):
        spec = ManifoldSpec(n, m, eps)
        for seed in range(3):
            Z1, Z2 = pair(spec, seed)
            quadrature = triangle_area_quadrature(Z1, Z2, order=32)
            assert abs(quadrature.value - triangle_area_closed(Z1, Z2).value) <= 1e-6
            assert quadrature.est_error >= 0.0

    @pytest.mark.parametrize("eps", [1, -1])
    def test_base_direction_does_not_matter(self, eps):
        spec = ManifoldSpec(2, 2, eps)
        Z1, Z2 = pair(spec, 11)
        forward = triangle_area_quadrature(Z1, Z2, order=32).value
        backward = triangle_area_quadrature(Z1, Z2, order=32, reverse_base=True).value
        assert abs(forward - backward) <= 1e-6

    def test_order_validation(self):
        spec = ManifoldSpec(1, 1, -1)
        Z1, Z2 = pair(spec, 0)
        with pytest.raises(ValidationError):
            triangle_area_quadrature(Z1, Z2, order=3)


class TestChordalDistance:
    def test_examples(self):
        sphere = ManifoldSpec(1, 1, 1)
        Z = point(sphere, 0.2 + 0.1j)
        assert chordal_distance(Z, Z) == 0.0
        assert chordal_distance(point(sphere, 1.0), point(sphere, 1.0)) == 0.0
        assert chordal_distance(point(ManifoldSpec(1, 1, -1), 0.6j), point(ManifoldSpec(1, 1, -1), 0.6j)) == 0.0
        assert abs(chordal_distance(GrassmannPoint.origin(sphere), point(sphere, 1.0)) - np.pi / 4) <= 1e-15

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (2, 3)])
    def test_cosine_is_the_overlap_magnitude(self, n, m):
        spec = ManifoldSpec(n, m, 1)
        for seed in range(10):
            Z1, Z2 = pair(spec, seed)
            assert abs(np.cos(chordal_distance(Z1, Z2)) - kernel_ratio(Z1, Z2)) <= 1e-12

    def test_noncompact_stays_on_the_arccos_branch(self):
        spec = ManifoldSpec(2, 2, -1)
        for seed in range(10):
            Z1, Z2 = pair(spec, seed)
            assert kernel_ratio(Z1, Z2) <= 1.0 + 1e-12
            assert 0.0 <= chordal_distance(Z1, Z2) <= np.pi / 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
