"""Truncated complex power series.

A :class:`PowerSeries` holds coefficients ``c0..cN`` of a series truncated at
degree ``N``.  All binary operations require equal truncation orders (callers
truncate first) and return series of the same order.  Values are immutable;
every operation builds a new series, so instances are safe to share between
threads.

Fractional powers of unit-constant-term series go through the principal
branch: ``pow_principal(a, gamma) = exp(gamma * log(a))`` with the series log
computed from the recurrence ``(log a)' = a'/a`` followed by term-wise
integration.  This is O(N^2) and numerically stable for ``c0 = 1``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (
    DomainError,
    NormalizationError,
    OrderMismatchError,
    SingularSeriesError,
)

__all__ = ["PowerSeries", "horner"]

DEFAULT_ORDER = 64


def horner(coeffs: np.ndarray, z):
    """Evaluate ``sum(coeffs[n] * z**n)`` by Horner's scheme.

    ``z`` may be a scalar or an ndarray; no domain check is performed (the
    truncation is a polynomial, well defined everywhere).
    """
    z = np.asarray(z, dtype=complex)
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc if acc.shape else complex(acc)


class PowerSeries:
    """Immutable truncated power series with complex coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[complex]):
        arr = np.asarray(coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must form a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        self._coeffs = arr

    # -- basic accessors ----------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    def __getitem__(self, n: int) -> complex:
        return complex(self._coeffs[n])

    def __len__(self) -> int:
        return self._coeffs.size

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self._coeffs[:4])
        tail = ", ..." if self.order >= 4 else ""
        return f"PowerSeries([{head}{tail}], order={self.order})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PowerSeries)
            and self.order == other.order
            and bool(np.array_equal(self._coeffs, other._coeffs))
        )

    def __hash__(self):
        return hash((self.order, self._coeffs.tobytes()))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = 1.0
        return cls(c)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        """The series of z itself."""
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    def truncate(self, order: int) -> "PowerSeries":
        """Copy of this series at truncation order ``order`` (pad or cut)."""
        c = np.zeros(order + 1, dtype=complex)
        n = min(order, self.order) + 1
        c[:n] = self._coeffs[:n]
        return PowerSeries(c)

    # -- checks -------------------------------------------------------------

    def _check_same_order(self, other: "PowerSeries") -> None:
        if not isinstance(other, PowerSeries):
            raise TypeError(f"expected PowerSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            self._check_same_order(other)
            return PowerSeries(self._coeffs + other._coeffs)
        c = self._coeffs.copy()
        c[0] += other
        return PowerSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._coeffs)

    def __sub__(self, other):
        if isinstance(other, PowerSeries):
            self._check_same_order(other)
            return PowerSeries(self._coeffs - other._coeffs)
        c = self._coeffs.copy()
        c[0] -= other
        return PowerSeries(c)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return self.multiply(other)
        return PowerSeries(self._coeffs * other)

    __rmul__ = __mul__

    def multiply(self, other: "PowerSeries") -> "PowerSeries":
        """Cauchy product truncated to the common order."""
        self._check_same_order(other)
        full = np.convolve(self._coeffs, other._coeffs)
        return PowerSeries(full[: self.order + 1])

    def reciprocal(self) -> "PowerSeries":
        """Series ``b`` with ``self * b = 1 + O(z^(N+1))``; requires ``c0 != 0``."""
        a = self._coeffs
        if a[0] == 0:
            raise SingularSeriesError("reciprocal of a series with c0 = 0")
        n = self.order
        b = np.zeros(n + 1, dtype=complex)
        b[0] = 1.0 / a[0]
        for k in range(1, n + 1):
            b[k] = -np.dot(a[1 : k + 1], b[k - 1 :: -1]) / a[0]
        return PowerSeries(b)

    # -- calculus helpers ---------------------------------------------------

    def differentiate(self) -> "PowerSeries":
        """Term-wise derivative, same truncation order (top coefficient 0)."""
        c = np.zeros(self.order + 1, dtype=complex)
        n = np.arange(1, self.order + 1)
        c[:-1] = self._coeffs[1:] * n
        return PowerSeries(c)

    def integrate(self, constant: complex = 0.0) -> "PowerSeries":
        """Term-wise antiderivative with the given constant term."""
        c = np.zeros(self.order + 1, dtype=complex)
        c[0] = constant
        n = np.arange(1, self.order + 1)
        c[1:] = self._coeffs[:-1] / n
        return PowerSeries(c)

    def shift_down(self) -> "PowerSeries":
        """Series of ``self/z``; requires ``c0 = 0``.  Top coefficient padded 0."""
        if self._coeffs[0] != 0:
            raise NormalizationError("shift_down needs a vanishing constant term")
        c = np.zeros(self.order + 1, dtype=complex)
        c[:-1] = self._coeffs[1:]
        return PowerSeries(c)

    def shift_up(self) -> "PowerSeries":
        """Series of ``z*self`` at the same order (top coefficient dropped)."""
        c = np.zeros(self.order + 1, dtype=complex)
        c[1:] = self._coeffs[:-1]
        return PowerSeries(c)

    # -- exp / log / powers -------------------------------------------------

    def log(self) -> "PowerSeries":
        """Series logarithm; requires ``c0 = 1`` (principal branch, log(1) = 0)."""
        if self._coeffs[0] != 1:
            raise NormalizationError("series log needs constant term exactly 1")
        return self.differentiate().multiply(self.reciprocal()).integrate(0.0)

    def exp(self) -> "PowerSeries":
        """Series exponential; requires ``c0 = 0``."""
        s = self._coeffs
        if s[0] != 0:
            raise NormalizationError("series exp needs a vanishing constant term")
        n = self.order
        e = np.zeros(n + 1, dtype=complex)
        e[0] = 1.0
        j = np.arange(n + 1)
        ds = s * j  # j * s_j
        for k in range(1, n + 1):
            e[k] = np.dot(ds[1 : k + 1], e[k - 1 :: -1]) / k
        return PowerSeries(e)

    def pow_principal(self, gamma: complex) -> "PowerSeries":
        """Principal-branch power ``self**gamma`` for a series with ``c0 = 1``.

        Computed as ``exp(gamma * log(self))`` so the constant term of the
        result is exactly 1.
        """
        if abs(self._coeffs[0] - 1.0) > 1e-12:
            raise NormalizationError(
                f"pow_principal needs constant term 1, got {self._coeffs[0]:.6g}"
            )
        gamma = complex(gamma)
        if gamma == 0:
            return PowerSeries.one(self.order)
        base = self
        if base._coeffs[0] != 1.0:
            c = base._coeffs.copy()
            c[0] = 1.0
            base = PowerSeries(c)
        return (base.log() * gamma).exp()

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, z):
        """Horner evaluation of the truncation at ``z`` with ``|z| < 1``.

        The unit disk is the validity domain of every series this package
        manipulates; evaluation elsewhere raises :class:`DomainError`.
        """
        zz = np.asarray(z, dtype=complex)
        if np.any(np.abs(zz) >= 1.0):
            raise DomainError("series evaluation requires |z| < 1")
        return horner(self._coeffs, z)

    def __call__(self, z):
        return self.evaluate(z)
