"""Catalog of normalized analytic test functions on the unit disk.

Every function here belongs to the class of maps with ``f(0) = 0`` and
``f'(0) = 1``.  The catalog entries carry closed forms for arbitrarily many
derivatives, which keeps criterion sweeps and chain formulas free of
truncation error; series-backed entries fall back to differentiated
truncations.

Evaluation is vectorized: ``z`` may be a scalar or any ndarray of points.
Public entry points enforce ``|z| < 1``.  Internal callers (the Becker
extension needs boundary values of the closed forms) may pass
``boundary=True`` to admit ``|z| = 1``; genuine poles on the circle raise
:class:`BoundarySingularityError` instead of returning garbage.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BoundarySingularityError,
    DomainError,
    NormalizationError,
    ParameterError,
    SingularityError,
)
from .series import PowerSeries, horner

__all__ = [
    "AnalyticFunction",
    "Identity",
    "Koebe",
    "HalfPlane",
    "SpiralKoebe",
    "Polynomial",
    "SeriesBacked",
    "BazilevicBuilt",
    "CombinationFunction",
    "bazilevic_construct",
]

_BOUNDARY_TOL = 1e-12
_POLE_TOL = 1e-12


def _as_points(z, boundary: bool):
    zz = np.asarray(z, dtype=complex)
    limit = 1.0 + _BOUNDARY_TOL if boundary else 1.0
    if np.any(np.abs(zz) >= limit):
        where = "|z| <= 1" if boundary else "|z| < 1"
        raise DomainError(f"evaluation requires {where}")
    return zz


def _poch(a: complex, n: int) -> complex:
    """Rising factorial a (a+1) ... (a+n-1); 1 for n = 0."""
    out = 1.0 + 0.0j
    for k in range(n):
        out *= a + k
    return out


class AnalyticFunction:
    """Base class: a normalized analytic function with derivative jets.

    Subclasses implement :meth:`_jet_raw` returning ``[f, f', ..., f^(order)]``
    evaluated at an array of points.  Everything else (log derivative,
    convexity quantity, series extraction) derives from it.
    """

    #: boundary directions theta where the closed form has a pole at e^{i theta}
    singular_directions: tuple[float, ...] = ()

    def _jet_raw(self, z: np.ndarray, order: int) -> list[np.ndarray]:
        raise NotImplementedError

    # -- evaluation ----------------------------------------------------------

    def jet(self, z, order: int = 2, *, boundary: bool = False):
        """Derivatives ``[f(z), f'(z), ..., f^(order)(z)]``."""
        zz = _as_points(z, boundary)
        vals = self._jet_raw(np.atleast_1d(zz), order)
        if zz.shape == ():
            return [complex(v[0]) for v in vals]
        return vals

    def eval_derivatives(self, z):
        """``(f, f', f'')`` at ``z`` with ``|z| < 1``."""
        f, f1, f2 = self.jet(z, 2)
        return f, f1, f2

    def __call__(self, z, *, boundary: bool = False):
        return self.jet(z, 0, boundary=boundary)[0]

    def derivative(self, z, *, boundary: bool = False):
        return self.jet(z, 1, boundary=boundary)[1]

    def log_derivative(self, z, *, boundary: bool = False):
        """``z f'(z)/f(z)`` with the removable singularity at 0 filled by 1."""
        zz = _as_points(z, boundary)
        arr = np.atleast_1d(zz)
        f, f1 = self._jet_raw(arr, 1)
        at_origin = arr == 0
        denom = np.where(at_origin, 1.0, f)
        out = np.where(at_origin, 1.0, arr * f1 / denom)
        if not np.all(np.isfinite(out)) or np.any(~at_origin & (np.abs(f) == 0.0)):
            raise SingularityError("f vanishes away from the origin")
        return out if zz.shape else complex(out[0])

    def convexity_quantity(self, z, *, boundary: bool = False):
        """``1 + z f''(z)/f'(z)``; equals 1 at the origin."""
        zz = _as_points(z, boundary)
        arr = np.atleast_1d(zz)
        _, f1, f2 = self._jet_raw(arr, 2)
        if np.any(np.abs(f1) == 0.0):
            raise SingularityError("f' vanishes inside the disk")
        out = 1.0 + arr * f2 / f1
        if not np.all(np.isfinite(out)):
            raise SingularityError("convexity quantity overflowed")
        return out if zz.shape else complex(out[0])

    def log_over_z(self, z, *, boundary: bool = False):
        """A branch of ``log(f(z)/z)`` that vanishes at the origin.

        The default takes the point-wise principal logarithm, which agrees
        with the analytic branch as long as ``f(z)/z`` stays off the negative
        real axis; catalog entries with explicit closed forms override this.
        """
        zz = _as_points(z, boundary)
        arr = np.atleast_1d(zz)
        f = self._jet_raw(arr, 0)[0]
        at_origin = arr == 0
        ratio = np.where(at_origin, 1.0, f / np.where(at_origin, 1.0, arr))
        out = np.log(ratio)
        return out if zz.shape else complex(out[0])

    # -- series extraction ----------------------------------------------------

    def series(self, order: int) -> PowerSeries:
        """Taylor coefficients at 0 up to degree ``order``."""
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__.lower()


def _check_pole(dist: np.ndarray, what: str) -> None:
    if np.any(dist < _POLE_TOL):
        raise BoundarySingularityError(f"{what} has a pole at a requested point")


class Identity(AnalyticFunction):
    """f(z) = z."""

    def _jet_raw(self, z, order):
        vals = [z.astype(complex), np.ones_like(z)]
        for _ in range(2, order + 1):
            vals.append(np.zeros_like(z))
        return vals[: order + 1]

    def series(self, order):
        return PowerSeries.variable(order)

    def describe(self):
        return "identity"


class Koebe(AnalyticFunction):
    """f(z) = z/(1-z)^2, the rotation-free extremal starlike map."""

    singular_directions = (0.0,)

    def _jet_raw(self, z, order):
        w = 1.0 - z
        _check_pole(np.abs(w), "koebe")
        vals = [z / w**2]
        fact = 1.0
        for n in range(1, order + 1):
            fact *= n
            vals.append(fact * ((n + 1) * w ** (-n - 2) - w ** (-n - 1)))
        return vals

    def series(self, order):
        return PowerSeries(np.arange(order + 1, dtype=float))

    def log_over_z(self, z, *, boundary=False):
        zz = _as_points(z, boundary)
        w = 1.0 - np.atleast_1d(zz)
        _check_pole(np.abs(w), "koebe")
        out = -2.0 * np.log(w)
        return out if zz.shape else complex(out[0])

    def describe(self):
        return "koebe"


class HalfPlane(AnalyticFunction):
    """f(z) = z/(1-z), mapping the disk onto a half plane."""

    singular_directions = (0.0,)

    def _jet_raw(self, z, order):
        w = 1.0 - z
        _check_pole(np.abs(w), "half-plane")
        vals = [z / w]
        fact = 1.0
        for n in range(1, order + 1):
            fact *= n
            vals.append(fact * w ** (-n - 1))
        return vals

    def series(self, order):
        c = np.ones(order + 1)
        c[0] = 0.0
        return PowerSeries(c)

    def log_over_z(self, z, *, boundary=False):
        zz = _as_points(z, boundary)
        w = 1.0 - np.atleast_1d(zz)
        _check_pole(np.abs(w), "half-plane")
        out = -np.log(w)
        return out if zz.shape else complex(out[0])

    def describe(self):
        return "half-plane"


class SpiralKoebe(AnalyticFunction):
    """f(z) = z (1-z)^(-2 e^{-i alpha} cos alpha), extremal alpha-spirallike map.

    Writing c = 2 e^{-i alpha} cos alpha = 1 + e^{-2 i alpha}, the function is
    (1-z)^{-c} - (1-z)^{1-c}, whose n-th derivative is a difference of rising
    factorials times powers of (1-z).  Its logarithmic derivative is
    (1 + e^{-2 i alpha} z)/(1 - z).
    """

    singular_directions = (0.0,)

    def __init__(self, alpha: float):
        if not -np.pi / 2 < alpha < np.pi / 2:
            raise ParameterError("spiral angle must lie in (-pi/2, pi/2)")
        self.alpha = float(alpha)
        self.c = 2.0 * np.exp(-1j * alpha) * np.cos(alpha)

    def _jet_raw(self, z, order):
        w = 1.0 - z
        _check_pole(np.abs(w), "spiral-koebe")
        lw = np.log(w)
        c = self.c
        vals = [np.exp(-c * lw) - np.exp((1 - c) * lw)]
        for n in range(1, order + 1):
            vals.append(
                _poch(c, n) * np.exp(-(c + n) * lw)
                - _poch(c - 1, n) * np.exp((1 - c - n) * lw)
            )
        return vals

    def series(self, order):
        base = PowerSeries([1.0, -1.0] + [0.0] * (order - 1))
        return base.pow_principal(-self.c).shift_up()

    def log_over_z(self, z, *, boundary=False):
        zz = _as_points(z, boundary)
        w = 1.0 - np.atleast_1d(zz)
        _check_pole(np.abs(w), "spiral-koebe")
        out = -self.c * np.log(w)
        return out if zz.shape else complex(out[0])

    def describe(self):
        return f"spiral-koebe({self.alpha:g})"


class Polynomial(AnalyticFunction):
    """Normalized polynomial: coefficients ``[0, 1, c2, c3, ...]``."""

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        if c.size < 2 or c[0] != 0 or c[1] != 1:
            raise NormalizationError(
                "polynomial must have c0 = 0 and c1 = 1 (class-A normalization)"
            )
        self.coeffs = c

    def _jet_raw(self, z, order):
        vals = []
        c = self.coeffs
        for _ in range(order + 1):
            vals.append(horner(c, z) if c.size else np.zeros_like(z))
            c = c[1:] * np.arange(1, c.size) if c.size > 1 else np.zeros(0)
        return vals

    def series(self, order):
        return PowerSeries(self.coeffs).truncate(order)

    def describe(self):
        return f"polynomial(degree={self.coeffs.size - 1})"


class SeriesBacked(AnalyticFunction):
    """Function defined by a truncated series with c0 = 0, c1 = 1.

    Evaluation is exact Horner evaluation of the truncation itself (a
    polynomial); no claim is made about the tail of whatever analytic
    function the caller had in mind.
    """

    def __init__(self, series: PowerSeries):
        if series[0] != 0 or abs(series[1] - 1.0) > 1e-12:
            raise NormalizationError(
                "series-backed function needs c0 = 0 and c1 = 1"
            )
        self._series = series

    def _jet_raw(self, z, order):
        vals = []
        c = self._series.coeffs
        for _ in range(order + 1):
            vals.append(horner(c, z) if c.size else np.zeros_like(z))
            c = c[1:] * np.arange(1, c.size) if c.size > 1 else np.zeros(0)
        return vals

    def series(self, order):
        return self._series.truncate(order)

    def describe(self):
        return f"series(order={self._series.order})"


class BazilevicBuilt(SeriesBacked):
    """Output of :func:`bazilevic_construct`, with its building blocks kept."""

    def __init__(self, series, core: PowerSeries, exponent: complex):
        super().__init__(series)
        self.core = core
        self.exponent = exponent

    def describe(self):
        g = self.exponent
        return f"bazilevic(alpha={g.real:g}, beta={g.imag:g}, order={self._series.order})"


class CombinationFunction(AnalyticFunction):
    """g(z) = alpha f(z) + (1 - alpha) z f'(z), already normalized in class A.

    The n-th derivative needs the (n+1)-st derivative of the base, so jets
    recurse one order deeper into the catalog closed forms.
    """

    def __init__(self, base: AnalyticFunction, alpha: complex):
        self.base = base
        self.alpha = complex(alpha)
        self.singular_directions = base.singular_directions

    def _jet_raw(self, z, order):
        b = self.base._jet_raw(z, order + 1)
        a = self.alpha
        vals = []
        for n in range(order + 1):
            # d^n [z f'] = z f^(n+1) + n f^(n)
            vals.append(a * b[n] + (1 - a) * (z * b[n + 1] + n * b[n]))
        return vals

    def series(self, order):
        f = self.base.series(order)
        zfp = PowerSeries(f.coeffs * np.arange(order + 1))
        return self.alpha * f + (1 - self.alpha) * zfp

    def describe(self):
        return f"combination(alpha={self.alpha:g}, base={self.base.describe()})"


def bazilevic_construct(
    g: AnalyticFunction,
    h: PowerSeries,
    alpha: float,
    beta: float,
    order: int = 64,
) -> BazilevicBuilt:
    """Build the type-(alpha, beta) integral of a starlike g and a unit h.

    The integrand is written as ``zeta^(alpha + i beta - 1) q(zeta)`` with
    ``q = (g/zeta)^alpha h`` and ``q(0) = 1``; term-wise integration and the
    principal-branch root give the normalized result

        f(z) = z * [ (alpha + i beta) * sum_n q_n z^n / (n + alpha + i beta) ]^(1/(alpha + i beta)).

    Factoring out the exact power of z removes all multi-valuedness: every
    fractional power acts on a series with constant term 1.  Starlikeness of
    ``g`` is the caller's responsibility (verify via the criteria module).
    """
    if alpha <= 0:
        raise ParameterError("bazilevic exponent needs alpha > 0")
    gamma = alpha + 1j * beta
    h = h.truncate(order)
    if abs(h[0] - 1.0) > 1e-12:
        raise NormalizationError("h must satisfy h(0) = 1")
    g_over_z = g.series(order + 1).shift_down().truncate(order)
    q = g_over_z.pow_principal(alpha).multiply(h)
    weights = gamma / (np.arange(order + 1) + gamma)
    core = PowerSeries(q.coeffs * weights)
    root = core.pow_principal(1.0 / gamma)
    return BazilevicBuilt(root.shift_up().truncate(order), core, gamma)
