"""The disk families U(k) and U(alpha, k).

``U(k)`` is the set of w with ``|(w-1)/(w+1)| <= k``; ``U(alpha, k)`` is the
hyperbolic disk of radius ``arctanh k`` about 1 inside the tilted half plane
``Re(e^{i alpha} w) > 0``, with center ``(1 + e^{-2 i alpha} k^2)/(1 - k^2)``
and radius ``2 k cos(alpha)/(1 - k^2)``.

Membership is decided through the Moebius form

    |w - 1| <= k |w + e^{-2 i alpha}|,

which is algebraically equivalent to the center/radius form (expand both
squared inequalities; the cross terms agree because |center|^2 - radius^2 = 1)
and avoids cancellation as k -> 1.  The equivalence is exercised numerically
by the test suite before anything else relies on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

__all__ = ["DiskSpec", "membership", "min_k", "disk_params"]


@dataclass(frozen=True)
class DiskSpec:
    """Tilt angle alpha in (-pi/2, pi/2) and dilatation bound k in [0, 1)."""

    alpha: float = 0.0
    k: float = 0.0

    def __post_init__(self):
        if not -math.pi / 2 < self.alpha < math.pi / 2:
            raise ParameterError("disk tilt must lie in (-pi/2, pi/2)")
        if not 0.0 <= self.k < 1.0:
            raise ParameterError("disk dilatation bound must lie in [0, 1)")

    @property
    def center(self) -> complex:
        c, _ = disk_params(self)
        return c

    @property
    def radius(self) -> float:
        _, r = disk_params(self)
        return r

    def contains(self, w) -> bool | np.ndarray:
        return membership(w, self)


def membership(w, d: DiskSpec):
    """True iff ``w`` lies in the closed disk ``U(d.alpha, d.k)``.

    Vectorized over ``w``.  The excluded point ``-e^{-2 i alpha}`` lies outside
    every such disk (for alpha = 0 that is w = -1).
    """
    ww = np.asarray(w, dtype=complex)
    out = np.abs(ww - 1.0) <= d.k * np.abs(ww + np.exp(-2j * d.alpha))
    return out if ww.shape else bool(out)


def min_k(w, alpha: float = 0.0):
    """Smallest k with ``w in U(alpha, k)``: ``|w - 1| / |w + e^{-2 i alpha}|``.

    Values >= 1 signal that no admissible dilatation bound exists; the
    excluded point ``-e^{-2 i alpha}`` maps to ``inf``.  Vectorized over ``w``.
    """
    ww = np.asarray(w, dtype=complex)
    num = np.abs(ww - 1.0)
    den = np.abs(ww + np.exp(-2j * alpha))
    with np.errstate(divide="ignore"):
        out = np.where(den == 0.0, np.inf, num / np.where(den == 0.0, 1.0, den))
    return out if ww.shape else float(out)


def disk_params(d: DiskSpec) -> tuple[complex, float]:
    """Center and radius of ``U(alpha, k)``; requires k < 1 (guaranteed by DiskSpec)."""
    if d.k >= 1.0:
        raise DomainError("disk parameters need k < 1")
    denom = 1.0 - d.k**2
    center = (1.0 + np.exp(-2j * d.alpha) * d.k**2) / denom
    radius = 2.0 * d.k * math.cos(d.alpha) / denom
    return complex(center), float(radius)
