"""Grid-sweep evaluation of the univalence / quasiconformal-extension criteria.

Each criterion is a pointwise condition on a quantity built from f (or from a
pair g, h).  Half-plane criteria ask for a positive real part and report the
minimum slack (*margin*); disk criteria ask for containment in U(k) or
U(alpha, k) and report the supremum of the pointwise minimal dilatation
(*min_dilatation*) over the grid.

"for all z in the disk" is approximated by a sweep over circles of radius up
to ``r_max`` (default 0.995): the reported min_dilatation is a lower bound for
the true supremum and is monotone nondecreasing in ``r_max``.  The sweep
always includes the origin through the limit values of the quantities (the
spiral criterion's floor |tan(alpha/2)| and the Bazilevic constraint
``alpha + i beta in U(k)`` both live there).

Sweeps are plain vectorized reductions in a canonical point order, so reports
are deterministic for a fixed grid regardless of how the evaluation is
scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .disks import min_k
from .errors import ParameterError
from .functions import AnalyticFunction, CombinationFunction
from .series import PowerSeries, horner

__all__ = [
    "GridSpec",
    "CriterionReport",
    "CRITERION_KINDS",
    "HALF_PLANE_KINDS",
    "DISK_KINDS",
    "evaluate_criterion",
    "pointwise_margin",
    "pointwise_min_k",
    "convex_combination",
]

DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995)

HALF_PLANE_KINDS = ("convexity", "spirallike", "sheil-small")
DISK_KINDS = ("starlike-tilted", "spiral", "bazilevic1", "bazilevic2")
CRITERION_KINDS = HALF_PLANE_KINDS + DISK_KINDS


@dataclass(frozen=True)
class GridSpec:
    """Sweep layout: circles of the given radii, uniform angles on each.

    ``refinement`` (when set) adds one pass at ``refinement``-fold angular
    resolution in a one-spacing window around the extremum of the base sweep.
    """

    radii: tuple[float, ...] = DEFAULT_RADII
    angles: int = 512
    refinement: int | None = 8

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii or any(not 0.0 < r < 1.0 for r in radii):
            raise ParameterError("grid radii must lie in (0, 1)")
        if list(radii) != sorted(radii):
            raise ParameterError("grid radii must be ascending")
        if self.angles < 8:
            raise ParameterError("need at least 8 angles per circle")
        if self.refinement is not None and self.refinement < 2:
            raise ParameterError("refinement factor must be >= 2 (or None)")
        object.__setattr__(self, "radii", radii)

    @property
    def r_max(self) -> float:
        return self.radii[-1]

    def circle(self, r: float) -> np.ndarray:
        th = 2.0 * np.pi * np.arange(self.angles) / self.angles
        return r * np.exp(1j * th)

    def refined_window(self, z0: complex) -> np.ndarray:
        """Finer angular samples (same radius) around an extremum point."""
        assert self.refinement is not None
        r, th0 = abs(z0), math.atan2(z0.imag, z0.real)
        delta = 2.0 * np.pi / self.angles
        offs = delta * np.arange(-self.refinement, self.refinement + 1) / self.refinement
        return r * np.exp(1j * (th0 + offs))


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one criterion sweep."""

    kind: str
    params: dict
    grid: GridSpec
    margin: float | None
    worst_point: complex
    min_dilatation: float | None
    passed: bool
    floor: float | None = None
    floor_applied: bool = False
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def r_max(self) -> float:
        return self.grid.r_max

    def document_fields(self) -> list[tuple[str, object]]:
        fields: list[tuple[str, object]] = [
            ("report", "criterion"),
            ("kind", self.kind),
        ]
        for key in sorted(self.params):
            fields.append((key, self.params[key]))
        fields += [
            ("grid_radii", self.grid.radii),
            ("grid_angles", self.grid.angles),
            ("grid_refinement", self.grid.refinement),
            ("r_max", self.grid.r_max),
            ("margin", self.margin),
            ("worst_point", self.worst_point),
            ("min_dilatation", self.min_dilatation),
            ("floor", self.floor),
            ("floor_applied", self.floor_applied),
            ("passed", self.passed),
            ("warnings", self.warnings),
        ]
        return fields


# -- pointwise quantities ----------------------------------------------------


def _sheil_small_quantity(f: AnalyticFunction, gamma: complex, z, boundary=False):
    """1 + z f''/f' + (gamma - 1) z f'/f, with its limit gamma at the origin."""
    conv = np.atleast_1d(np.asarray(f.convexity_quantity(z, boundary=boundary)))
    logd = np.atleast_1d(np.asarray(f.log_derivative(z, boundary=boundary)))
    return conv + (gamma - 1.0) * logd


def pointwise_margin(kind: str, z, *, f=None, alpha=0.0, beta=0.0, boundary=False):
    """Slack of a half-plane criterion at the points ``z`` (vectorized)."""
    if kind == "convexity":
        return np.real(np.atleast_1d(f.convexity_quantity(z, boundary=boundary)))
    if kind == "spirallike":
        w = np.atleast_1d(f.log_derivative(z, boundary=boundary))
        return np.real(np.exp(1j * alpha) * w)
    if kind == "sheil-small":
        gamma = alpha + 1j * beta
        return np.real(_sheil_small_quantity(f, gamma, z, boundary))
    raise ParameterError(f"{kind!r} is not a half-plane criterion")


def pointwise_min_k(kind: str, z, *, f=None, g=None, h=None,
                    alpha=0.0, beta=0.0, boundary=False):
    """Pointwise minimal dilatation of a disk criterion at ``z`` (vectorized).

    No floor is applied here; :func:`evaluate_criterion` adds the spiral
    criterion's floor to the reported supremum.
    """
    if kind == "starlike-tilted":
        w = np.atleast_1d(f.log_derivative(z, boundary=boundary))
        return min_k(w, alpha)
    if kind == "spiral":
        w = np.exp(1j * alpha) * np.atleast_1d(f.log_derivative(z, boundary=boundary))
        return min_k(w, 0.0)
    if kind == "bazilevic1":
        gamma = alpha + 1j * beta
        return min_k(_sheil_small_quantity(f, gamma, z, boundary), 0.0)
    if kind == "bazilevic2":
        hv = np.atleast_1d(horner(h.coeffs, z))
        h0 = 1j * beta + alpha * np.atleast_1d(g.log_derivative(z, boundary=boundary))
        return np.maximum(min_k(hv, 0.0), min_k(h0, 0.0))
    raise ParameterError(f"{kind!r} is not a disk criterion")


# -- sweeps -------------------------------------------------------------------


def _sweep(values_at, grid: GridSpec, select):
    """Run the circle sweep plus origin and one refinement pass.

    ``values_at(z_array) -> real array``; ``select`` is np.argmin or np.argmax.
    Returns (extreme value, point where it is attained).
    """
    best_val = None
    best_z = 0.0 + 0.0j
    points = [np.zeros(1, dtype=complex)]
    points += [grid.circle(r) for r in grid.radii]
    for zs in points:
        vals = values_at(zs)
        i = int(select(vals))
        v = float(vals[i])
        if best_val is None or (select is np.argmin and v < best_val) or (
            select is np.argmax and v > best_val
        ):
            best_val, best_z = v, complex(zs[i])
    if grid.refinement is not None and best_z != 0:
        zs = grid.refined_window(best_z)
        vals = values_at(zs)
        i = int(select(vals))
        v = float(vals[i])
        if (select is np.argmin and v < best_val) or (
            select is np.argmax and v > best_val
        ):
            best_val, best_z = v, complex(zs[i])
    return best_val, best_z


def evaluate_criterion(
    kind: str,
    *,
    f: AnalyticFunction | None = None,
    g: AnalyticFunction | None = None,
    h: PowerSeries | None = None,
    alpha: float = 0.0,
    beta: float = 0.0,
    grid: GridSpec | None = None,
) -> CriterionReport:
    """Sweep one criterion over the grid and report margin / minimal dilatation.

    Kinds: ``convexity`` | ``spirallike`` | ``sheil-small`` (half-plane) and
    ``starlike-tilted`` | ``spiral`` | ``bazilevic1`` | ``bazilevic2`` (disk).
    ``bazilevic2`` consumes ``g`` and ``h`` (a series with h(0) = 1); all other
    kinds consume ``f``.
    """
    grid = grid or GridSpec()
    params: dict[str, object] = {}
    warnings: list[str] = []

    if kind not in CRITERION_KINDS:
        raise ParameterError(f"unknown criterion kind {kind!r}")
    if kind in ("spirallike", "starlike-tilted", "spiral"):
        if not -math.pi / 2 < alpha < math.pi / 2:
            raise ParameterError("spiral angle must lie in (-pi/2, pi/2)")
        params["alpha"] = alpha
    if kind in ("bazilevic1", "bazilevic2", "sheil-small"):
        if alpha <= 0:
            raise ParameterError("bazilevic criteria need alpha > 0")
        params["alpha"] = alpha
        params["beta"] = beta
    if kind == "bazilevic2":
        if g is None or h is None:
            raise ParameterError("bazilevic2 needs g and h")
        if abs(h[0] - 1.0) > 1e-12:
            raise ParameterError("bazilevic2 needs h(0) = 1")
        params["function"] = g.describe()
        params["h_order"] = h.order
    else:
        if f is None:
            raise ParameterError(f"criterion {kind!r} needs f")
        params["function"] = f.describe()

    if kind in HALF_PLANE_KINDS:
        margin, worst = _sweep(
            lambda zs: pointwise_margin(kind, zs, f=f, alpha=alpha, beta=beta),
            grid,
            np.argmin,
        )
        return CriterionReport(
            kind=kind, params=params, grid=grid, margin=margin,
            worst_point=worst, min_dilatation=None, passed=margin > 0,
            warnings=tuple(warnings),
        )

    sup_k, worst = _sweep(
        lambda zs: pointwise_min_k(kind, zs, f=f, g=g, h=h, alpha=alpha, beta=beta),
        grid,
        np.argmax,
    )
    floor = None
    floor_applied = False
    if kind == "spiral":
        floor = abs(math.tan(alpha / 2.0))
        if sup_k < floor:
            sup_k = floor
            floor_applied = True
            warnings.append("dilatation floored at |tan(alpha/2)|")
    return CriterionReport(
        kind=kind, params=params, grid=grid, margin=None,
        worst_point=worst, min_dilatation=sup_k, passed=sup_k < 1.0,
        floor=floor, floor_applied=floor_applied, warnings=tuple(warnings),
    )


def convex_combination(f: AnalyticFunction, alpha: complex) -> CombinationFunction:
    """The function ``alpha f(z) + (1 - alpha) z f'(z)`` for ``|2 alpha - 1| <= 1``.

    The combination is automatically normalized (g(0) = 0, g'(0) = 1).  The
    univalence conclusion requires f to be convex; that precondition is not
    re-checked here -- run the convexity criterion first (pipelines record a
    warning and proceed, since the construction itself is always defined).
    """
    alpha = complex(alpha)
    if abs(2.0 * alpha - 1.0) > 1.0 + 1e-12:
        raise ParameterError("convex combination needs |2 alpha - 1| <= 1")
    return CombinationFunction(f, alpha)
