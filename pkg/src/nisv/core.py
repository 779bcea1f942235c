"""Truncated H^2(D) on a half-step boundary grid.

Functions on the unit circle are sampled at ``w_j = exp(2 pi i (j + 1/2) / K)``.
The half step keeps both ``z = 1`` and ``z = -1`` off the grid, which matters
because the singular inner functions used throughout blow up at ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, OrderMismatch

DEFAULT_ORDER = 256
OVERSAMPLE = 4


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


@dataclass(frozen=True)
class BoundaryGrid:
    K: int

    def __post_init__(self):
        if not _is_power_of_two(int(self.K)):
            raise ValueError(f"grid size must be a power of two, got {self.K}")

    @classmethod
    def for_order(cls, N: int, oversample: int = OVERSAMPLE) -> "BoundaryGrid":
        K = 1
        while K < oversample * N:
            K *= 2
        return cls(K)

    @property
    def nodes(self) -> np.ndarray:
        j = np.arange(self.K)
        return np.exp(2j * np.pi * (j + 0.5) / self.K)

    @property
    def modes(self) -> np.ndarray:
        """Signed mode index of each FFT slot, in (-K/2, K/2]."""
        m = np.fft.fftfreq(self.K, 1.0 / self.K).astype(int)
        m[m == -self.K // 2] = self.K // 2
        return m

    def sample(self, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        return np.asarray(fn(self.nodes), dtype=complex)


@dataclass(frozen=True)
class FourierCoefficients:
    """Two-sided coefficients ``c_m`` for ``-K/2 < m <= K/2`` stored in FFT order."""

    values: np.ndarray
    K: int

    def mode(self, m: int) -> complex:
        if not -self.K // 2 < m <= self.K // 2:
            return 0j
        return complex(self.values[m % self.K])

    def nonnegative(self, N: int) -> np.ndarray:
        if N > self.K // 2:
            raise ValueError(f"order {N} exceeds K/2 = {self.K // 2}")
        return self.values[:N].copy()

    def negative(self, N: int) -> np.ndarray:
        """Coefficients c_{-1}, ..., c_{-N}."""
        if N >= self.K // 2:
            raise ValueError(f"order {N} exceeds K/2 - 1")
        return self.values[(-np.arange(1, N + 1)) % self.K].copy()

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True)
class HardyFunction:
    """Taylor coefficients a_0..a_{N-1} of an element of H^2(D)."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z):
        return evaluate_disc(self, z)

    def __add__(self, other: "HardyFunction") -> "HardyFunction":
        _check_orders(self, other)
        return HardyFunction(self.coeffs + other.coeffs)

    def __sub__(self, other: "HardyFunction") -> "HardyFunction":
        _check_orders(self, other)
        return HardyFunction(self.coeffs - other.coeffs)

    def scale(self, c: complex) -> "HardyFunction":
        return HardyFunction(c * self.coeffs)

    def normalized(self) -> "HardyFunction":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero function")
        return self.scale(1.0 / n)

    def truncate(self, N: int) -> "HardyFunction":
        c = np.zeros(N, dtype=complex)
        m = min(N, self.order)
        c[:m] = self.coeffs[:m]
        return HardyFunction(c)

    def on_grid(self, grid: BoundaryGrid) -> np.ndarray:
        return synthesize(self.coeffs, grid)

    @classmethod
    def monomial(cls, k: int, N: int) -> "HardyFunction":
        c = np.zeros(N, dtype=complex)
        c[k] = 1.0
        return cls(c)


def _check_orders(f: HardyFunction, g: HardyFunction) -> None:
    if f.order != g.order:
        raise OrderMismatch(f"orders differ: {f.order} vs {g.order}")


def fourier_analyze(samples) -> FourierCoefficients:
    """Coefficients of the trigonometric interpolant of grid samples."""
    s = np.asarray(samples, dtype=complex).ravel()
    K = s.size
    if not _is_power_of_two(K):
        raise ValueError(f"sample count must be a power of two, got {K}")
    if not np.all(np.isfinite(s)):
        raise ValueError("samples must be finite")
    m = BoundaryGrid(K).modes
    # half-step offset: w_j^{-m} = exp(-2 pi i m j / K) * exp(-i pi m / K)
    c = np.fft.fft(s) / K * np.exp(-1j * np.pi * m / K)
    return FourierCoefficients(c, K)


def synthesize(coeffs, grid: BoundaryGrid) -> np.ndarray:
    """Evaluate sum_m a_m w^m on the grid for analytic coefficients a_0..a_{N-1}."""
    a = np.asarray(coeffs, dtype=complex).ravel()
    if a.size > grid.K // 2:
        raise ValueError("grid too coarse for this order")
    full = np.zeros(grid.K, dtype=complex)
    full[: a.size] = a * np.exp(1j * np.pi * np.arange(a.size) / grid.K)
    return np.fft.ifft(full) * grid.K


def project_plus(coeffs: FourierCoefficients, N: int) -> HardyFunction:
    return HardyFunction(coeffs.nonnegative(N))


def inner_product(f: HardyFunction, g: HardyFunction) -> complex:
    _check_orders(f, g)
    return complex(np.vdot(g.coeffs, f.coeffs))


def evaluate_disc(f: HardyFunction, z):
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1.0):
        raise DomainError("point evaluation needs |z| < 1")
    out = np.polynomial.polynomial.polyval(zz, f.coeffs)
    return complex(out) if np.ndim(out) == 0 else out


def analyze(fn: Callable[[np.ndarray], np.ndarray], N: int, K: int | None = None) -> HardyFunction:
    """Sample ``fn`` on the oversampled grid and keep the analytic part to order N."""
    grid = BoundaryGrid(K) if K is not None else BoundaryGrid.for_order(N)
    return project_plus(fourier_analyze(grid.sample(fn)), N)


def szego_kernel(a: complex, N: int) -> HardyFunction:
    """Truncated reproducing kernel k_a(z) = 1/(1 - conj(a) z)."""
    if abs(a) >= 1:
        raise DomainError("kernel point must lie in the open disc")
    return HardyFunction(np.conj(a) ** np.arange(N))
