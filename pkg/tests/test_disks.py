import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewnerqc.disks import DiskSpec, disk_params, membership, min_k
from loewnerqc.errors import ParameterError


def center_radius_membership(w, alpha, k):
    """The center/radius form straight off the display."""
    c = (1 + np.exp(-2j * alpha) * k**2) / (1 - k**2)
    r = 2 * k * np.cos(alpha) / (1 - k**2)
    return np.abs(w - c) <= r


class TestMembership:
    def test_one_is_always_inside(self):
        for alpha in (-1.2, 0.0, 0.7):
            for k in (0.0, 0.3, 0.9):
                assert membership(1.0, DiskSpec(alpha, k))

    def test_boundary_point_exact(self):
        for k in (0.25, 0.5, 0.75):  # dyadic so (1+k)/(1-k) rounds exactly
            w = (1 + k) / (1 - k)
            assert abs((w - 1) / (w + 1)) == k
            assert membership(w, DiskSpec(0.0, k))

    def test_minus_one_outside_every_uk(self):
        for k in (0.0, 0.5, 0.999):
            assert not membership(-1.0, DiskSpec(0.0, k))

    def test_moebius_form_equals_center_radius_form(self):
        # the two displayed U(k) forms classify random points identically
        rng = np.random.default_rng(42)
        w = 6 * (rng.standard_normal(10_000) + 1j * rng.standard_normal(10_000))
        for alpha, k in [(0.0, 0.4), (0.0, 0.9), (0.8, 0.6), (-1.1, 0.2)]:
            got = membership(w, DiskSpec(alpha, k))
            want = center_radius_membership(w, alpha, k)
            assert np.array_equal(got, want)


class TestMinK:
    def test_center(self):
        for alpha in (-0.5, 0.0, 1.0):
            assert min_k(1.0, alpha) == 0.0

    def test_imaginary_unit(self):
        assert abs(min_k(1j, 0.0) - 1.0) < 1e-15

    def test_moebius_identity_on_half_plane_map(self):
        # w = (1+z)/(1-z) has (w-1)/(w+1) = z, hence min_k = |z|
        rng = np.random.default_rng(7)
        z = np.sqrt(rng.uniform(0, 1, 1000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
        w = (1 + z) / (1 - z)
        assert np.max(np.abs(min_k(w, 0.0) - np.abs(z))) < 1e-12

    def test_excluded_point_sentinel(self):
        assert min_k(-1.0, 0.0) == math.inf
        assert math.isinf(min_k(-np.exp(-2j * 0.4), 0.4))


class TestDiskParams:
    def test_alpha_zero_display(self):
        for k in (0.2, 0.6):
            c, r = disk_params(DiskSpec(0.0, k))
            assert abs(c - (1 + k**2) / (1 - k**2)) < 1e-15
            assert abs(r - 2 * k / (1 - k**2)) < 1e-15

    def test_degenerate_disk(self):
        for alpha in (-1.0, 0.3):
            c, r = disk_params(DiskSpec(alpha, 0.0))
            assert c == 1.0 and r == 0.0

    def test_boundary_sweep(self):
        # points on the circle have min_k exactly k: the closed-form distance
        # reproduces the paper's disk before anything relies on it
        for alpha, k in [(0.0, 0.5), (0.7, 0.3), (-1.2, 0.85)]:
            c, r = disk_params(DiskSpec(alpha, k))
            phi = np.linspace(0, 2 * np.pi, 257)
            w = c + r * np.exp(1j * phi)
            assert np.max(np.abs(min_k(w, alpha) - k)) < 1e-10

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            DiskSpec(0.0, 1.0)
        with pytest.raises(ParameterError):
            DiskSpec(2.0, 0.5)


def bisect_min_k(w, alpha, tol=1e-12):
    """Independent route: bisection on k against membership()."""
    lo, hi = 0.0, 1.0 - 1e-14
    if membership(w, DiskSpec(alpha, lo)):
        return 0.0
    if not membership(w, DiskSpec(alpha, hi)):
        return math.inf
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if membership(w, DiskSpec(alpha, mid)):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_min_k_matches_membership_bisection():
    rng = np.random.default_rng(11)
    for _ in range(100):
        w = complex(3 * rng.standard_normal(), 3 * rng.standard_normal())
        alpha = rng.uniform(-1.4, 1.4)
        direct = min_k(w, alpha)
        via_bisection = bisect_min_k(w, alpha)
        if direct < 1.0 - 1e-6:
            assert abs(direct - via_bisection) < 1e-8
        else:
            assert via_bisection == math.inf or via_bisection > 1 - 1e-6


finite = st.floats(min_value=-5, max_value=5, allow_nan=False)


@given(finite, finite, st.floats(min_value=-1.4, max_value=1.4),
       st.floats(min_value=0, max_value=0.99))
@settings(max_examples=200, deadline=None)
def test_membership_iff_min_k(re, im, alpha, k):
    w = complex(re, im)
    inside = membership(w, DiskSpec(alpha, k))
    mk = min_k(w, alpha)
    if abs(mk - k) > 1e-12:  # exact boundary ties are allowed either way
        assert inside == (mk <= k)


@given(finite, finite, st.floats(min_value=-1.4, max_value=1.4),
       st.floats(min_value=0, max_value=0.98), st.floats(min_value=0, max_value=1))
@settings(max_examples=200, deadline=None)
def test_monotone_nesting(re, im, alpha, k1, frac):
    k2 = k1 + (0.99 - k1) * frac
    w = complex(re, im)
    if membership(w, DiskSpec(alpha, k1)):
        assert membership(w, DiskSpec(alpha, k2))
