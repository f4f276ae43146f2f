"""The five explicit Loewner chains, their verification and normalization.

Each chain variant carries closed forms for f(z,t), its t- and z-derivatives,
the transition field p(z,t) with ``df/dt = z df/dz p``, and the first
coefficient ``a1(t) = df/dz(0, t)``.  The variants:

* ``ConvexCombinationChain``:  alpha f(z) + e^t (1-alpha) z f'(z)
* ``SpirallikeStandardChain``: e^{(1-ia)t} f(e^{iat} z),  a = tan(alpha)
* ``ExponentialChain``:        e^{ct} f(z),  Re c > 0
* ``SheilSmallChain``:         f(z) {1 + (e^t-1) z f'/f}^{1/(alpha+i beta)}
* ``BazilevicIntegralChain``:  the type-(alpha, beta) integral with its
  h + (e^t - 1) h0 kernel (time already reparametrized so that the kernel
  stays bounded as the criterion demands).

All evaluators broadcast over arrays of (z, t) with |z| <= 1; interior-only
entry points enforce |z| < 1 themselves.  The Bazilevic chain cannot rely on
its Taylor coefficients near |z| = 1 (for Koebe-type g they diverge on the
circle), so it evaluates the defining integral by a split rule: the inner
half of the radial segment is summed from the series (which also absorbs the
s^{gamma-1} endpoint singularity analytically), the outer half by panels of
Gauss-Legendre nodes refined geometrically toward the boundary pole.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .criteria import GridSpec
from .disks import DiskSpec, min_k
from .errors import (
    DomainError,
    InternalInvariantError,
    ParameterError,
    SingularityError,
)
from .functions import AnalyticFunction, CombinationFunction
from .oracle import WINDING_OK, winding_batch
from .series import PowerSeries, horner

__all__ = [
    "LoewnerChain",
    "ConvexCombinationChain",
    "SpirallikeStandardChain",
    "ExponentialChain",
    "SheilSmallChain",
    "BazilevicIntegralChain",
    "ChainReport",
    "SubordinationViolation",
    "NormalizedFrame",
    "make_chain",
    "eval_chain",
    "verify_chain",
    "normalize_chain",
    "DEFAULT_TIMES",
]

DEFAULT_TIMES = (0.0, 0.25, 0.5, 1.0, 2.0, 4.0)
_BOUNDARY_TOL = 1e-12


def _broadcast(z, t):
    zz = np.asarray(z, dtype=complex)
    tt = np.asarray(t, dtype=float)
    if np.any(np.abs(zz) > 1.0 + _BOUNDARY_TOL):
        raise DomainError("chain evaluation requires |z| <= 1")
    return np.broadcast_arrays(zz, tt)


def _descalar(x, like_shape):
    return x if like_shape else complex(x.reshape(-1)[0])


class LoewnerChain:
    """Base class; subclasses fill in the closed forms."""

    variant: str = "abstract"

    def params(self) -> dict:
        raise NotImplementedError

    def subject(self) -> AnalyticFunction:
        """The function the chain starts from: f(z, 0) = subject(z)."""
        raise NotImplementedError

    # closed forms ------------------------------------------------------------

    def f(self, z, t):
        raise NotImplementedError

    def df_dt(self, z, t):
        raise NotImplementedError

    def df_dz(self, z, t):
        raise NotImplementedError

    def p(self, z, t):
        """Transition field; finite with positive real part on the hypotheses."""
        inv = self.inv_p(z, t)
        arr = np.atleast_1d(np.asarray(inv, dtype=complex))
        if np.any(arr == 0.0):
            raise SingularityError("transition field has a pole (1/p = 0)")
        out = 1.0 / arr
        return out if np.asarray(inv).shape else complex(out[0])

    def inv_p(self, z, t):
        raise NotImplementedError

    def a1(self, t):
        raise NotImplementedError

    def abs_a1(self, t):
        return np.abs(self.a1(t))

    # geometry helpers ---------------------------------------------------------

    def singular_boundary_angles(self, t) -> np.ndarray:
        """Boundary directions (at time t) where closed forms blow up."""
        return np.asarray(self.subject().singular_directions, dtype=float)

    def excluded_angle(self, theta, t, window: float) -> np.ndarray:
        """Mask of angles within ``window`` of a singular direction at time t."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        bad = np.zeros(th.shape, dtype=bool)
        for sigma in self.singular_boundary_angles(t):
            d = np.angle(np.exp(1j * (th - sigma)))
            bad |= np.abs(d) < window
        return bad

    def time_to_reach(self, magnitude: float = 1e6) -> float:
        """A time T with |a1(T)| > magnitude (|a1| is strictly increasing)."""
        T = 1.0
        for _ in range(64):
            if self.abs_a1(T) > magnitude:
                return T
            T *= 2.0
        raise InternalInvariantError("|a1(t)| did not reach the requested magnitude")


class ConvexCombinationChain(LoewnerChain):
    """f_t = alpha f + e^t (1 - alpha) z f'; needs Re(alpha/(1-alpha)) > 0.

    The t = 0 slice is the convex-combination function itself, so verifying
    this chain is verifying that combination's univalence construction.
    """

    variant = "convex-combination"

    def __init__(self, f: AnalyticFunction, alpha: complex):
        alpha = complex(alpha)
        if alpha == 1.0 or (alpha / (1.0 - alpha)).real <= 0.0:
            raise ParameterError(
                "convex-combination chain needs Re(alpha/(1-alpha)) > 0 "
                "(strict interior of |2 alpha - 1| <= 1)"
            )
        self.base = f
        self.alpha = alpha
        self._ratio = alpha / (1.0 - alpha)
        self._combined = CombinationFunction(f, alpha)

    def params(self):
        return {"alpha": self.alpha, "function": self.base.describe()}

    def subject(self):
        return self._combined

    def f(self, z, t):
        zz, tt = _broadcast(z, t)
        fv, f1 = self.base._jet_raw(np.atleast_1d(zz), 1)
        out = self.alpha * fv + np.exp(tt) * (1 - self.alpha) * zz * f1
        return _descalar(np.atleast_1d(out), zz.shape)

    def df_dt(self, z, t):
        zz, tt = _broadcast(z, t)
        _, f1 = self.base._jet_raw(np.atleast_1d(zz), 1)
        out = np.exp(tt) * (1 - self.alpha) * zz * f1
        return _descalar(np.atleast_1d(out), zz.shape)

    def df_dz(self, z, t):
        zz, tt = _broadcast(z, t)
        _, f1, f2 = self.base._jet_raw(np.atleast_1d(zz), 2)
        out = self.alpha * f1 + np.exp(tt) * (1 - self.alpha) * (f1 + zz * f2)
        return _descalar(np.atleast_1d(out), zz.shape)

    def inv_p(self, z, t):
        zz, tt = _broadcast(z, t)
        conv = np.atleast_1d(self.base.convexity_quantity(zz, boundary=True))
        out = np.exp(-tt) * self._ratio + conv
        return _descalar(np.atleast_1d(out), zz.shape)

    def a1(self, t):
        return self.alpha + np.exp(np.asarray(t, dtype=float)) * (1 - self.alpha)


class SpirallikeStandardChain(LoewnerChain):
    """f_t = e^{(1-ia)t} f(e^{iat} z) with a = tan(alpha); a standard chain."""

    variant = "spirallike-standard"

    def __init__(self, f: AnalyticFunction, alpha: float):
        if not -math.pi / 2 < alpha < math.pi / 2:
            raise ParameterError("spiral angle must lie in (-pi/2, pi/2)")
        self.base = f
        self.alpha = float(alpha)
        self.a = math.tan(alpha)

    def params(self):
        return {"alpha": self.alpha, "function": self.base.describe()}

    def subject(self):
        return self.base

    def _rotated(self, zz, tt):
        return np.exp(1j * self.a * tt) * zz

    def f(self, z, t):
        zz, tt = _broadcast(z, t)
        u = self._rotated(zz, tt)
        fv = self.base._jet_raw(np.atleast_1d(u), 0)[0]
        out = np.exp((1 - 1j * self.a) * tt) * fv
        return _descalar(np.atleast_1d(out), zz.shape)

    def df_dt(self, z, t):
        zz, tt = _broadcast(z, t)
        u = np.atleast_1d(self._rotated(zz, tt))
        fv, f1 = self.base._jet_raw(u, 1)
        ia = 1j * self.a
        out = np.exp((1 - ia) * tt) * ((1 - ia) * fv + ia * u * f1)
        return _descalar(np.atleast_1d(out), zz.shape)

    def df_dz(self, z, t):
        zz, tt = _broadcast(z, t)
        u = np.atleast_1d(self._rotated(zz, tt))
        f1 = self.base._jet_raw(u, 1)[1]
        out = np.exp(tt) * f1
        return _descalar(np.atleast_1d(out), zz.shape)

    def p(self, z, t):
        zz, tt = _broadcast(z, t)
        u = self._rotated(zz, tt)
        L = np.atleast_1d(self.base.log_derivative(u, boundary=True))
        out = 1j * self.a + (1 - 1j * self.a) / L
        if not np.all(np.isfinite(out)):
            raise SingularityError("z f'/f vanished inside the disk")
        return _descalar(np.atleast_1d(out), zz.shape)

    def inv_p(self, z, t):
        return 1.0 / self.p(z, t)

    def a1(self, t):
        return np.exp(np.asarray(t, dtype=float)) * (1.0 + 0.0j)

    def singular_boundary_angles(self, t):
        base = np.asarray(self.base.singular_directions, dtype=float)
        return base - self.a * np.asarray(t, dtype=float)


class ExponentialChain(LoewnerChain):
    """f_t = e^{ct} f(z) with Re c > 0; p = c f/(z f') depends on z only."""

    variant = "exponential"

    def __init__(self, f: AnalyticFunction, c: complex):
        c = complex(c)
        if c.real <= 0.0:
            raise ParameterError("exponential chain needs Re c > 0")
        self.base = f
        self.c = c

    def params(self):
        return {"c": self.c, "function": self.base.describe()}

    def subject(self):
        return self.base

    def f(self, z, t):
        zz, tt = _broadcast(z, t)
        fv = self.base._jet_raw(np.atleast_1d(zz), 0)[0]
        return _descalar(np.atleast_1d(np.exp(self.c * tt) * fv), zz.shape)

    def df_dt(self, z, t):
        zz, tt = _broadcast(z, t)
        fv = self.base._jet_raw(np.atleast_1d(zz), 0)[0]
        return _descalar(np.atleast_1d(self.c * np.exp(self.c * tt) * fv), zz.shape)

    def df_dz(self, z, t):
        zz, tt = _broadcast(z, t)
        f1 = self.base._jet_raw(np.atleast_1d(zz), 1)[1]
        return _descalar(np.atleast_1d(np.exp(self.c * tt) * f1), zz.shape)

    def p(self, z, t):
        zz, tt = _broadcast(z, t)
        L = np.atleast_1d(self.base.log_derivative(zz, boundary=True))
        out = self.c / L
        if not np.all(np.isfinite(out)):
            raise SingularityError("z f'/f vanished inside the disk")
        return _descalar(np.atleast_1d(out), zz.shape)

    def inv_p(self, z, t):
        return 1.0 / self.p(z, t)

    def a1(self, t):
        return np.exp(self.c * np.asarray(t, dtype=float))


class SheilSmallChain(LoewnerChain):
    """f_t = f {1 + (e^t - 1) z f'/f}^{1/gamma}, gamma = alpha + i beta, alpha > 0.

    The bracket Q has value e^t at the origin; its power is taken point-wise
    on the principal branch, which matches the analytic branch whenever Q
    stays off the negative reals (true on the criterion's hypotheses, where
    the disk condition keeps everything in a half plane).
    """

    variant = "sheil-small"

    def __init__(self, f: AnalyticFunction, alpha: float, beta: float):
        if alpha <= 0:
            raise ParameterError("sheil-small chain needs alpha > 0")
        self.base = f
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.gamma = alpha + 1j * beta

    def params(self):
        return {"alpha": self.alpha, "beta": self.beta,
                "function": self.base.describe()}

    def subject(self):
        return self.base

    def _pieces(self, zz, tt, order):
        arr = np.atleast_1d(zz)
        jets = self.base._jet_raw(arr, order)
        L = np.atleast_1d(self.base.log_derivative(zz, boundary=True))
        Q = 1.0 + (np.exp(tt) - 1.0) * L
        W = np.exp(np.log(Q) / self.gamma)
        return jets, L, Q, W

    def f(self, z, t):
        zz, tt = _broadcast(z, t)
        jets, _, _, W = self._pieces(zz, tt, 0)
        return _descalar(np.atleast_1d(jets[0] * W), zz.shape)

    def df_dt(self, z, t):
        zz, tt = _broadcast(z, t)
        jets, L, Q, W = self._pieces(zz, tt, 0)
        out = (np.exp(tt) / self.gamma) * jets[0] * L * W / Q
        return _descalar(np.atleast_1d(out), zz.shape)

    def df_dz(self, z, t):
        # f' W + (e^t - 1)/(gamma Q) * W * f L', with f L' = f' (conv - L):
        # no division by f, so the origin needs no special casing
        zz, tt = _broadcast(z, t)
        jets, L, Q, W = self._pieces(zz, tt, 1)
        conv = np.atleast_1d(self.base.convexity_quantity(zz, boundary=True))
        f1 = jets[1]
        out = f1 * W * (1.0 + (np.exp(tt) - 1.0) * (conv - L) / (self.gamma * Q))
        return _descalar(np.atleast_1d(out), zz.shape)

    def inv_p(self, z, t):
        zz, tt = _broadcast(z, t)
        conv = np.atleast_1d(self.base.convexity_quantity(zz, boundary=True))
        L = np.atleast_1d(self.base.log_derivative(zz, boundary=True))
        S = conv + (self.gamma - 1.0) * L
        out = np.exp(-tt) * self.gamma + (1.0 - np.exp(-tt)) * S
        return _descalar(np.atleast_1d(out), zz.shape)

    def a1(self, t):
        return np.exp(np.asarray(t, dtype=float) / self.gamma)


class BazilevicIntegralChain(LoewnerChain):
    """Chain behind the Bazilevic two-sided U(k) criterion.

    f(z,t)^gamma = gamma * integral_0^z (g/zeta)^alpha [h + (e^t-1) h0]
    zeta^{gamma-1} d zeta with h0 = i beta + alpha z g'/g.  The kernel is
    linear in (e^t - 1), so the radial integral splits into two t-independent
    pieces evaluated once per point.
    """

    variant = "bazilevic-integral"

    _S0 = 0.5          # series half of the radial segment
    _PANELS = 26       # geometric Gauss-Legendre panels on [s0, 1]
    _NODES = 16        # nodes per panel

    def __init__(self, g: AnalyticFunction, h: PowerSeries,
                 alpha: float, beta: float, order: int = 64):
        if alpha <= 0:
            raise ParameterError("bazilevic chain needs alpha > 0")
        if abs(h[0] - 1.0) > 1e-12:
            raise ParameterError("bazilevic chain needs h(0) = 1")
        self.g = g
        self.h = h.truncate(order)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.gamma = alpha + 1j * beta
        self.order = int(order)
        self._prepare()

    def params(self):
        return {"alpha": self.alpha, "beta": self.beta,
                "function": self.g.describe(), "h_order": self.h.order,
                "order": self.order}

    def _prepare(self):
        n, gamma = self.order, self.gamma
        pad = n + 4
        g_series = self.g.series(pad + 1)
        g_over_z = g_series.shift_down().truncate(pad)
        lg = g_series.differentiate().truncate(pad).multiply(g_over_z.reciprocal())
        power = g_over_z.pow_principal(self.alpha)
        a_ser = power.multiply(self.h.truncate(pad)).truncate(n)
        h0_ser = (self.alpha * lg + 1j * self.beta).truncate(n)
        c_ser = power.truncate(n).multiply(h0_ser)
        self._a_series = a_ser
        self._c_series = c_ser
        # series head of integral_0^{s0} s^{gamma-1} q(z s) ds
        ns = np.arange(n + 1)
        s0_pow = np.exp((ns + gamma) * cmath.log(self._S0)) / (ns + gamma)
        self._head_a = a_ser.coeffs * s0_pow
        self._head_c = c_ser.coeffs * s0_pow
        # Gauss-Legendre panels refined toward s = 1
        xs, ws = np.polynomial.legendre.leggauss(self._NODES)
        nodes, weights = [], []
        lo = self._S0
        for j in range(self._PANELS):
            hi = 1.0 if j == self._PANELS - 1 else 1.0 - (1.0 - lo) / 2.0
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            nodes.append(mid + half * xs)
            weights.append(half * ws)
            lo = hi
        s = np.concatenate(nodes)
        w = np.concatenate(weights)
        self._tail_s = s
        # fold the s^{gamma-1} weight into the quadrature weights
        self._tail_w = w * np.exp((gamma - 1.0) * np.log(s))

    # point-wise kernel pieces ------------------------------------------------

    def _q_parts(self, pts):
        """(g/z)^alpha h and (g/z)^alpha h0 at arbitrary |z| <= 1 points."""
        base = np.exp(self.alpha * np.atleast_1d(self.g.log_over_z(pts, boundary=True)))
        hv = horner(self.h.coeffs, pts)
        h0 = 1j * self.beta + self.alpha * np.atleast_1d(
            self.g.log_derivative(pts, boundary=True)
        )
        return base * hv, base * h0

    def _B_parts(self, zz):
        """t-independent halves of B(z, t) = B_A(z) + (e^t - 1) B_C(z)."""
        flat = np.atleast_1d(zz).ravel()
        head_a = horner(self._head_a, flat)
        head_c = horner(self._head_c, flat)
        pts = flat[:, None] * self._tail_s[None, :]
        qa, qc = self._q_parts(pts.ravel())
        qa = qa.reshape(pts.shape)
        qc = qc.reshape(pts.shape)
        tail_a = qa @ self._tail_w
        tail_c = qc @ self._tail_w
        shape = np.atleast_1d(zz).shape
        return (
            (self.gamma * (head_a + tail_a)).reshape(shape),
            (self.gamma * (head_c + tail_c)).reshape(shape),
        )

    def _B(self, zz, tt):
        ba, bc = self._B_parts(zz)
        return ba + (np.exp(np.atleast_1d(tt)) - 1.0) * bc

    # closed forms -------------------------------------------------------------

    def f(self, z, t):
        zz, tt = _broadcast(z, t)
        B = self._B(zz, tt)
        out = np.atleast_1d(zz) * np.exp(np.log(B) / self.gamma)
        return _descalar(out, zz.shape)

    def df_dt(self, z, t):
        zz, tt = _broadcast(z, t)
        B = self._B(zz, tt)
        fv = np.atleast_1d(zz) * np.exp(np.log(B) / self.gamma)
        base = np.exp(self.alpha * np.atleast_1d(self.g.log_over_z(zz, boundary=True)))
        out = fv * np.exp(np.atleast_1d(tt)) * base / B
        return _descalar(out, zz.shape)

    def df_dz(self, z, t):
        zz, tt = _broadcast(z, t)
        arr = np.atleast_1d(zz)
        tt1 = np.atleast_1d(tt)
        B = self._B(zz, tt)
        root = np.exp(np.log(B) / self.gamma)  # f/z away from the origin
        qa, qc = self._q_parts(arr)
        q = qa + (np.exp(tt1) - 1.0) * qc
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(arr == 0, self.a1(tt1), root * q / B)
        return _descalar(out, zz.shape)

    def inv_p(self, z, t):
        zz, tt = _broadcast(z, t)
        hv = np.atleast_1d(horner(self.h.coeffs, zz))
        h0 = 1j * self.beta + self.alpha * np.atleast_1d(
            self.g.log_derivative(zz, boundary=True)
        )
        ett = np.exp(-np.atleast_1d(tt))
        out = ett * hv + (1.0 - ett) * h0
        return _descalar(np.atleast_1d(out), zz.shape)

    def a1(self, t):
        w = 1.0 + (np.exp(np.asarray(t, dtype=float)) - 1.0) * self.gamma
        return np.exp(np.log(w) / self.gamma)

    def subject(self):
        if not hasattr(self, "_subject"):
            from .functions import bazilevic_construct

            self._subject = bazilevic_construct(
                self.g, self.h, self.alpha, self.beta, self.order
            )
        return self._subject

    def singular_boundary_angles(self, t):
        return np.asarray(self.g.singular_directions, dtype=float)


_VARIANTS = {
    "convex-combination": ConvexCombinationChain,
    "spirallike-standard": SpirallikeStandardChain,
    "exponential": ExponentialChain,
    "sheil-small": SheilSmallChain,
    "bazilevic-integral": BazilevicIntegralChain,
}


def make_chain(variant: str, **params) -> LoewnerChain:
    """Factory over the five variants; see the class docstrings for parameters."""
    try:
        cls = _VARIANTS[variant]
    except KeyError:
        raise ParameterError(
            f"unknown chain variant {variant!r}; choose from {sorted(_VARIANTS)}"
        ) from None
    return cls(**params)


def eval_chain(ch: LoewnerChain, z, t):
    """(f, df/dt, df/dz, p) at interior points |z| < 1, t >= 0."""
    zz = np.asarray(z, dtype=complex)
    tt = np.asarray(t, dtype=float)
    if np.any(np.abs(zz) >= 1.0):
        raise DomainError("eval_chain requires |z| < 1")
    if np.any(tt < 0.0):
        raise DomainError("eval_chain requires t >= 0")
    return ch.f(z, t), ch.df_dt(z, t), ch.df_dz(z, t), ch.p(z, t)


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class SubordinationViolation:
    s: float
    t: float
    theta: float
    target: complex
    reason: str


@dataclass(frozen=True)
class ChainReport:
    """Numerical evidence for (or against) the chain conditions."""

    variant: str
    params: dict
    times: tuple[float, ...]
    grid: GridSpec
    herglotz_margin: float
    herglotz_worst: tuple[complex, float]
    disk_dilatation: float | None
    disk_ok: bool | None
    a1_monotone: bool
    subordination_violations: tuple[SubordinationViolation, ...]
    consistency_residual: float
    identity_residual: float
    sup_f_over_a1: float
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        ok = (
            self.herglotz_margin > 0
            and self.a1_monotone
            and not self.subordination_violations
        )
        if self.disk_ok is not None:
            ok = ok and self.disk_ok
        return ok

    def document_fields(self) -> list[tuple[str, object]]:
        fields: list[tuple[str, object]] = [
            ("report", "chain"),
            ("variant", self.variant),
        ]
        for key in sorted(self.params):
            fields.append((key, self.params[key]))
        fields += [
            ("times", self.times),
            ("grid_radii", self.grid.radii),
            ("grid_angles", self.grid.angles),
            ("herglotz_margin", self.herglotz_margin),
            ("herglotz_worst_z", self.herglotz_worst[0]),
            ("herglotz_worst_t", self.herglotz_worst[1]),
            ("disk_dilatation", self.disk_dilatation),
            ("disk_ok", self.disk_ok),
            ("a1_monotone", self.a1_monotone),
            ("subordination_violations", len(self.subordination_violations)),
            ("consistency_residual", self.consistency_residual),
            ("identity_residual", self.identity_residual),
            ("sup_f_over_a1", self.sup_f_over_a1),
            ("passed", self.passed),
            ("warnings", self.warnings),
        ]
        for v in self.subordination_violations[:3]:
            fields.append(
                ("violation", f"s={v.s:g} t={v.t:g} theta={v.theta:.6f} {v.reason}")
            )
        return fields


def _herglotz_sweep(ch, grid, times):
    worst = (np.inf, 0.0 + 0.0j, 0.0)
    sup_k = 0.0
    disk_worst = (0.0 + 0.0j, 0.0)
    for t in times:
        circles = [np.zeros(1, dtype=complex)]
        circles += [grid.circle(r) for r in grid.radii]
        for zs in circles:
            p = np.atleast_1d(ch.p(zs, t))
            i = int(np.argmin(p.real))
            if p.real[i] < worst[0]:
                worst = (float(p.real[i]), complex(zs[i]), float(t))
            mk = min_k(p, 0.0)
            j = int(np.argmax(mk))
            if mk[j] > sup_k:
                sup_k = float(mk[j])
                disk_worst = (complex(zs[j]), float(t))
    return worst, sup_k, disk_worst


def _consistency_sample(ch, grid, times, dt=1e-5):
    """Closed-form df/dt against a central difference of f in t."""
    radii = sorted({grid.radii[0], grid.radii[len(grid.radii) // 2], grid.radii[-1]})
    worst_fd = 0.0
    worst_id = 0.0
    for t in times:
        for r in radii:
            zs = grid.circle(r)[:: max(1, grid.angles // 8)]
            ft = np.atleast_1d(ch.df_dt(zs, t))
            fd = (np.atleast_1d(ch.f(zs, t + dt)) - np.atleast_1d(ch.f(zs, t - dt))) / (
                2 * dt
            )
            worst_fd = max(worst_fd, float(np.max(np.abs(ft - fd) / (1 + np.abs(ft)))))
            fz = np.atleast_1d(ch.df_dz(zs, t))
            p = np.atleast_1d(ch.p(zs, t))
            worst_id = max(
                worst_id,
                float(np.max(np.abs(ft - zs * fz * p) / (1 + np.abs(ft)))),
            )
    return worst_fd, worst_id


def _subordination_check(ch, grid, times, n_targets, target_radius, window=0.05):
    violations = []
    r_t = target_radius
    theta = (np.arange(n_targets) + 0.5) * 2 * np.pi / n_targets
    r_primes = [r_t + (1 - r_t) * q for q in (0.25, 0.5, 0.75)]
    for s, t in zip(times[:-1], times[1:]):
        keep = ~ch.excluded_angle(theta, s, window)
        th = theta[keep]
        if th.size == 0:
            continue
        targets = np.atleast_1d(ch.f(r_t * np.exp(1j * th), s))
        pending = {i: "untested" for i in range(th.size)}
        for rp in r_primes:
            if not pending:
                break
            m = int(min(max(2048, 2 ** math.ceil(math.log2(40.0 / (1.0 - rp)))), 1 << 15))
            nodes = rp * np.exp(2j * np.pi * np.arange(m) / m)
            fvals = np.atleast_1d(ch.f(nodes, t))
            dvals = np.atleast_1d(ch.df_dz(nodes, t))
            idx = sorted(pending)
            counts, status = winding_batch(nodes, fvals, dvals,
                                           [complex(targets[i]) for i in idx])
            for pos, i in enumerate(idx):
                if status[pos] == WINDING_OK and counts[pos] >= 1:
                    del pending[i]
                elif status[pos] == WINDING_OK:
                    pending[i] = "winding count 0"
                else:
                    pending[i] = "ill-conditioned contour"
        for i, reason in sorted(pending.items()):
            violations.append(
                SubordinationViolation(
                    float(s), float(t), float(th[i]), complex(targets[i]),
                    f"no tested contour found the target ({reason})",
                )
            )
    return tuple(violations)


def verify_chain(
    ch: LoewnerChain,
    grid: GridSpec | None = None,
    times=DEFAULT_TIMES,
    disk: DiskSpec | None = None,
    *,
    subordination_targets: int = 16,
    subordination_radius: float | None = None,
    f_sweep_angles: int = 128,
) -> ChainReport:
    """Exercise the chain conditions numerically over grid x times.

    Checks: positivity of Re p (Herglotz margin), optional containment of p in
    the given disk, strict growth of |a1|, closed-form df/dt against a finite
    difference, the defining identity df/dt = z df/dz p, boundedness of
    |f/a1|, and a winding-count falsifier for the image subordination
    f_s(D) within f_t(D) (a falsifier, not a proof).  Subordination targets
    default to radius min(0.9, r_max): near the grid's outer radius the
    catalog poles make the contours ill-conditioned, so the gentler radius
    keeps the falsifier sharp; pass ``subordination_radius`` to override.
    """
    grid = grid or GridSpec()
    times = tuple(float(t) for t in times)
    if not times or any(t < 0 for t in times) or list(times) != sorted(times):
        raise ParameterError("times must be ascending and nonnegative")

    (margin, wz, wt), sup_k, disk_worst = _herglotz_sweep(ch, grid, times)
    disk_dil = disk_ok = None
    if disk is not None:
        if disk.alpha == 0.0:
            disk_dil = sup_k  # Becker's condition p in U(k), already swept
        else:
            disk_vals = [
                np.max(min_k(np.atleast_1d(ch.p(grid.circle(r), t)), disk.alpha))
                for t in times
                for r in grid.radii
            ]
            disk_dil = float(max(disk_vals))
        disk_ok = disk_dil <= disk.k + 1e-12

    fine = np.linspace(0.0, max(times) if max(times) > 0 else 1.0, 201)
    b = np.atleast_1d(ch.abs_a1(fine))
    a1_monotone = bool(np.all(np.diff(b) > 0))

    sup_ratio = 0.0
    for t in times:
        zs = np.concatenate([grid.circle(r)[:: max(1, grid.angles // f_sweep_angles)]
                             for r in grid.radii])
        ratio = np.abs(np.atleast_1d(ch.f(zs, t))) / float(ch.abs_a1(t))
        sup_ratio = max(sup_ratio, float(np.max(ratio)))

    fd_res, id_res = _consistency_sample(ch, grid, times)
    r_sub = subordination_radius if subordination_radius is not None else min(
        0.9, grid.r_max
    )
    violations = _subordination_check(ch, grid, times, subordination_targets, r_sub)

    return ChainReport(
        variant=ch.variant,
        params=ch.params(),
        times=times,
        grid=grid,
        herglotz_margin=margin,
        herglotz_worst=(wz, wt),
        disk_dilatation=disk_dil,
        disk_ok=disk_ok,
        a1_monotone=a1_monotone,
        subordination_violations=violations,
        consistency_residual=fd_res,
        identity_residual=id_res,
        sup_f_over_a1=sup_ratio,
    )


# -- normalization ---------------------------------------------------------------


@dataclass(frozen=True)
class NormalizedFrame:
    """Rotated, time-changed slice of a chain: h(z) = f(e^{i lam} z, s)/|a1(0)|."""

    chain: LoewnerChain
    lam: float
    s: float
    scale: float

    def value(self, z):
        return self.chain.f(np.exp(1j * self.lam) * np.asarray(z, complex), self.s) / self.scale

    def dz(self, z):
        rot = np.exp(1j * self.lam)
        return rot * self.chain.df_dz(rot * np.asarray(z, complex), self.s) / self.scale


def normalize_chain(ch: LoewnerChain, t: float) -> NormalizedFrame:
    """Rotation and time change that turn the chain into a standard one at t.

    Returns the frame with ``lam = -arg a1(s)`` (arg tracked continuously
    from 0, not its principal value) and ``s`` solving ``|a1(s)| = |a1(0)| e^t``
    by bisection on the closed-form |a1| to 1e-12.  The frame's slice
    satisfies h(0) = 0 and h'(0) = e^t.
    """
    if t < 0:
        raise DomainError("normalization requires t >= 0")
    scale = float(ch.abs_a1(0.0))
    target = scale * math.exp(t)
    lo = 0.0
    if abs(float(ch.abs_a1(0.0)) - target) == 0.0:
        s = 0.0
    else:
        hi = 1.0
        for _ in range(200):
            if float(ch.abs_a1(hi)) >= target:
                break
            hi *= 2.0
        else:
            raise InternalInvariantError("|a1| never reached the target magnitude")
        if float(ch.abs_a1(lo)) > target:
            raise InternalInvariantError("|a1| not increasing from t = 0")
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            if float(ch.abs_a1(mid)) < target:
                lo = mid
            else:
                hi = mid
        s = 0.5 * (lo + hi)
    # continuous unwrap of arg a1 along [0, s]
    n = max(2, int(math.ceil(s / 0.01)) + 1)
    tau = np.linspace(0.0, s, n)
    args = np.unwrap(np.angle(np.atleast_1d(ch.a1(tau))))
    lam = -float(args[-1])
    return NormalizedFrame(chain=ch, lam=lam, s=s, scale=scale)
