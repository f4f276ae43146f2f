"""Becker's quasiconformal extension and its Beltrami coefficient.

The extension glues chain time to radial distance:

    h_hat(z) = f(z, 0)              for |z| < 1,
    h_hat(z) = f(z/|z|, log |z|)    for |z| >= 1.

Two independent dilatation computations back each other up.  The closed form
follows from the polar Wirtinger derivatives of h_hat: with u = e^{i theta}
and t = log r one has d_r h_hat = (df/dt)/r and d_theta h_hat = i u df/dz, so
substituting df/dt = u (df/dz) p gives

    mu(r e^{i theta}) = e^{2 i theta} (p(u, t) - 1) / (p(u, t) + 1),

hence |mu| equals the pointwise minimal dilatation of p in U(k) -- the
executable content of the extension theorem.  The finite-difference path
estimates the same Wirtinger derivatives from central differences of h_hat
with one Richardson extrapolation and serves as the verification oracle.

Boundary poles of the catalog closed forms (Koebe blows up along theta = 0)
make h_hat non-evaluable on those rays; sampling utilities exclude an angular
window around each declared singular direction and report what was excluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chains import LoewnerChain
from .errors import ParameterError, SingularityError

__all__ = [
    "becker_extend",
    "beltrami_fd",
    "beltrami_closed",
    "dilatation_report",
    "BeltramiSample",
    "DilatationReport",
    "exterior_samples",
    "DEFAULT_EXTERIOR_RADII",
]

DEFAULT_EXTERIOR_RADII = (1.01, 1.1, 1.5, 2.0, 5.0, 20.0)
DEFAULT_EXCLUSION_WINDOW = 1e-3


def becker_extend(ch: LoewnerChain, z):
    """The extension value at ``z`` (scalar or array), any modulus.

    Continuous across |z| = 1 wherever the boundary value exists; boundary
    poles of the underlying closed forms surface as
    :class:`BoundarySingularityError`.
    """
    zz = np.asarray(z, dtype=complex)
    scalar = zz.shape == ()
    arr = np.atleast_1d(zz).astype(complex)
    out = np.empty(arr.shape, dtype=complex)
    radius = np.abs(arr)
    inside = radius < 1.0
    if np.any(inside):
        out[inside] = np.atleast_1d(ch.f(arr[inside], 0.0))
    if np.any(~inside):
        ze = arr[~inside]
        re = radius[~inside]
        out[~inside] = np.atleast_1d(ch.f(ze / re, np.log(re)))
    return complex(out[0]) if scalar else out


def _wirtinger_fd(ch, r, theta, step):
    """Richardson-extrapolated central differences of h_hat in polar form."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)

    def val(rr, th):
        return becker_extend(ch, rr * np.exp(1j * th))

    def d_r(h):
        return (val(r + h, theta) - val(r - h, theta)) / (2 * h)

    def d_th(h):
        return (val(r, theta + h) - val(r, theta - h)) / (2 * h)

    dr = (4.0 * d_r(step / 2) - d_r(step)) / 3.0
    dth = (4.0 * d_th(step / 2) - d_th(step)) / 3.0
    u = np.exp(1j * theta)
    f_z = 0.5 * np.conj(u) * (dr - 1j * dth / r)
    f_zbar = 0.5 * u * (dr + 1j * dth / r)
    return f_z, f_zbar


def beltrami_fd(ch: LoewnerChain, r, theta, step: float = 1e-4):
    """Finite-difference estimate of mu = f_zbar / f_z at r e^{i theta}, r > 1."""
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 1.0 + 2.0 * step):
        raise ParameterError("beltrami_fd needs r > 1 + 2 step (stencil outside D)")
    f_z, f_zbar = _wirtinger_fd(ch, rr, theta, step)
    return f_zbar / f_z


def beltrami_closed(ch: LoewnerChain, r, theta):
    """mu(r e^{i theta}) = e^{2 i theta} (p - 1)/(p + 1) with p at (e^{i theta}, log r)."""
    rr = np.asarray(r, dtype=float)
    th = np.asarray(theta, dtype=float)
    if np.any(rr < 1.0):
        raise ParameterError("beltrami_closed is an exterior quantity (r >= 1)")
    u = np.exp(1j * th)
    p = np.atleast_1d(ch.p(u, np.log(rr)))
    if np.any(np.abs(p + 1.0) < 1e-300):
        raise SingularityError("transition field hit -1 (degenerate derivative)")
    out = np.exp(2j * th) * (p - 1.0) / (p + 1.0)
    shape = np.broadcast(rr, th).shape
    return out.reshape(shape) if shape else complex(out[0])


@dataclass(frozen=True)
class BeltramiSample:
    r: float
    theta: float
    value: complex          # h_hat at the sample
    mu_closed: complex
    mu_fd: complex | None = None

    @property
    def modulus(self) -> float:
        return abs(self.mu_closed)

    def csv_row(self) -> tuple:
        return (
            self.r,
            self.theta,
            self.value.real,
            self.value.imag,
            self.mu_closed.real,
            self.mu_closed.imag,
            self.modulus,
        )


@dataclass(frozen=True)
class DilatationReport:
    sup_mu: float
    worst: BeltramiSample
    samples: tuple[BeltramiSample, ...]
    excluded_rays: tuple[float, ...]
    fd_gap_at_worst: float
    params: dict = field(default_factory=dict)

    def document_fields(self) -> list[tuple[str, object]]:
        return [
            ("report", "extension"),
            ("radii", self.params.get("radii")),
            ("angles", self.params.get("angles")),
            ("window", self.params.get("window")),
            ("n_samples", len(self.samples)),
            ("sup_mu", self.sup_mu),
            ("worst_r", self.worst.r),
            ("worst_theta", self.worst.theta),
            ("worst_mu", self.worst.mu_closed),
            ("fd_gap_at_worst", self.fd_gap_at_worst),
            ("excluded_rays", self.excluded_rays),
        ]


def exterior_samples(ch: LoewnerChain, radii, angles: int,
                     window: float = DEFAULT_EXCLUSION_WINDOW):
    """(r, theta) sample arrays outside the disk, singular rays excluded."""
    rs, ths = [], []
    excluded = set()
    base = (np.arange(angles) + 0.5) * 2.0 * np.pi / angles
    for r in radii:
        if r < 1.0:
            raise ParameterError("exterior sampling needs radii >= 1")
        t = math.log(r)
        bad = ch.excluded_angle(base, t, window)
        for sigma in np.atleast_1d(ch.singular_boundary_angles(t)):
            excluded.add(round(float(np.mod(sigma, 2 * np.pi)), 12))
        rs.append(np.full(int(np.sum(~bad)), r))
        ths.append(base[~bad])
    return np.concatenate(rs), np.concatenate(ths), tuple(sorted(excluded))


def dilatation_report(
    ch: LoewnerChain,
    radii=DEFAULT_EXTERIOR_RADII,
    angles: int = 720,
    window: float = DEFAULT_EXCLUSION_WINDOW,
    *,
    with_fd: bool = False,
    fd_step: float = 1e-4,
) -> DilatationReport:
    """Sup of |mu| over an exterior sample set, with an fd cross-check.

    mu comes from the closed form (exact given p); the finite-difference
    estimate is attached to every sample when ``with_fd`` is set and is always
    computed at the worst sample as the independent verification.
    """
    rr, th, excluded = exterior_samples(ch, radii, angles, window)
    if rr.size == 0:
        raise ParameterError("every sample fell inside an exclusion window")
    values = becker_extend(ch, rr * np.exp(1j * th))
    mu = np.atleast_1d(beltrami_closed(ch, rr, th))
    mu_fd = None
    if with_fd:
        mu_fd = np.atleast_1d(beltrami_fd(ch, rr, th, fd_step))
    worst_i = int(np.argmax(np.abs(mu)))
    worst_fd = complex(
        np.atleast_1d(beltrami_fd(ch, rr[worst_i], th[worst_i], fd_step))[0]
    )
    samples = tuple(
        BeltramiSample(
            float(rr[i]), float(th[i]), complex(values[i]), complex(mu[i]),
            None if mu_fd is None else complex(mu_fd[i]),
        )
        for i in range(rr.size)
    )
    worst = BeltramiSample(
        float(rr[worst_i]), float(th[worst_i]), complex(values[worst_i]),
        complex(mu[worst_i]), worst_fd,
    )
    return DilatationReport(
        sup_mu=float(np.max(np.abs(mu))),
        worst=worst,
        samples=samples,
        excluded_rays=excluded,
        fd_gap_at_worst=abs(worst_fd - worst.mu_closed),
        params={"radii": tuple(radii), "angles": angles, "window": window},
    )
