import numpy as np
import pytest

from loewnerqc.errors import ContourTooCloseError, ParameterError
from loewnerqc.functions import Koebe
from loewnerqc.oracle import (
    disk_samples,
    injectivity_falsifier,
    univalence_scan,
    winding_count,
)


def square(z):
    return z * z


def square_prime(z):
    return 2 * z


def bieberbach_violator(z):
    # critical point of 1 + 3z at z = -1/3 forces 2-to-1 behavior
    return z + 1.5 * z * z


def bieberbach_violator_prime(z):
    return 1 + 3 * z


class TestDiskSamples:
    def test_inside_radius(self):
        z = disk_samples(1000, 0.7)
        assert np.max(np.abs(z)) <= 0.7

    def test_deterministic_and_offset(self):
        a = disk_samples(64, 0.5)
        b = disk_samples(64, 0.5)
        c = disk_samples(64, 0.5, offset=7)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)


class TestInjectivity:
    def test_square_falsified_with_symmetric_witness(self):
        verdict = injectivity_falsifier(square, 0.9, n_points=4096,
                                        fprime=square_prime)
        assert verdict.falsified and verdict.method == "injectivity"
        w = verdict.witness
        assert abs(w.z1 + w.z2) < 1e-6  # witness is a +/- pair
        assert abs(square(w.z1) - square(w.z2)) <= w.image_gap + 1e-15
        assert w.separation > 1e-3 * 0.9

    def test_identity_not_falsified(self):
        verdict = injectivity_falsifier(lambda z: z, 0.9, n_points=4096,
                                        fprime=lambda z: np.ones_like(z))
        assert not verdict.falsified and verdict.witness is None

    def test_koebe_not_falsified(self):
        k = Koebe()
        verdict = injectivity_falsifier(k, 0.9, n_points=10_000,
                                        fprime=k.derivative)
        assert not verdict.falsified

    def test_witness_is_reverifiable(self):
        verdict = injectivity_falsifier(bieberbach_violator, 0.9, n_points=4096,
                                        fprime=bieberbach_violator_prime)
        assert verdict.falsified
        w = verdict.witness
        gap = abs(bieberbach_violator(w.z1) - bieberbach_violator(w.z2))
        assert gap < verdict.params["img_tol"]
        # preimages of z + 1.5 z^2 collide exactly when z1 + z2 = -2/3
        assert abs(w.z1 + w.z2 + 2 / 3) < 1e-6


class TestWinding:
    def test_koebe_simple_zero(self):
        k = Koebe()
        assert winding_count(k, 0.0, 0.5, fprime=k.derivative) == 1

    def test_koebe_value_outside_image(self):
        k = Koebe()
        assert winding_count(k, -10.0, 0.5, fprime=k.derivative) == 0

    def test_square_double_cover(self):
        assert winding_count(square, 0.25, 0.9, fprime=square_prime) == 2

    def test_m_refinement_invariance(self):
        k = Koebe()
        for m in (512, 1024, 2048, 4096):
            assert winding_count(k, 0.1 + 0.05j, 0.6, m=m, fprime=k.derivative) == 1

    def test_contour_too_close(self):
        k = Koebe()
        boundary_value = complex(k(0.5))  # lies exactly on the image contour
        with pytest.raises(ContourTooCloseError):
            winding_count(k, boundary_value, 0.5, fprime=k.derivative)

    def test_parameter_checks(self):
        with pytest.raises(ParameterError):
            winding_count(square, 0.0, 1.2)
        with pytest.raises(ParameterError):
            winding_count(square, 0.0, 0.5, m=15)


class TestUnivalenceScan:
    def test_identity_clean(self):
        verdict = univalence_scan(lambda z: z, 0.9, image_samples=16,
                                  n_points=1024, fprime=lambda z: np.ones_like(z))
        assert not verdict.falsified

    def test_bieberbach_violator_falsified(self):
        verdict = univalence_scan(bieberbach_violator, 0.9, image_samples=32,
                                  n_points=4096, fprime=bieberbach_violator_prime)
        assert verdict.falsified
        w = verdict.witness
        assert abs(w.z1 + w.z2 + 2 / 3) < 1e-6

    def test_koebe_regression_at_large_radius(self):
        k = Koebe()
        verdict = univalence_scan(k, 0.99, image_samples=24, n_points=4096,
                                  fprime=k.derivative)
        assert not verdict.falsified
