"""Matrix realizations of Toeplitz, shift and composition operators at order N."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.signal
import sympy as sp

from .core import BoundaryGrid, HardyFunction, analyze, fourier_analyze, project_plus
from .errors import DomainError, IllConditionedKernel
from .frame import Frame, orthonormalize
from .symbols import Automorphism, SymbolExpr, as_symbol, rational_taylor

KERNEL_TAU = 1e-7
KERNEL_MIN_GAP = 10.0
INNER_TOL = 1e-6


@dataclass(frozen=True)
class OperatorMatrix:
    entries: np.ndarray = field(repr=False)
    kind: str = ""

    def __post_init__(self):
        A = np.asarray(self.entries, dtype=complex)
        if A.ndim != 2 or not np.all(np.isfinite(A)):
            raise ValueError("operator entries must be a finite matrix")
        object.__setattr__(self, "entries", A)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def order(self) -> int:
        return self.entries.shape[1]

    def apply(self, f: HardyFunction) -> HardyFunction:
        return HardyFunction(self.entries @ f.coeffs)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.entries @ other.entries, f"{self.kind}*{other.kind}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries, 2))


def symbol_coefficients(phi, N: int, K: int | None = None):
    """Two-sided Fourier coefficients of a bounded symbol on the oversampled grid."""
    phi = as_symbol(phi)
    grid = BoundaryGrid(K) if K is not None else BoundaryGrid.for_order(N)
    try:
        vals = np.asarray(phi(grid.nodes), dtype=complex)
    except (ZeroDivisionError, DomainError) as exc:
        raise DomainError(f"symbol cannot be sampled on the grid: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise DomainError("symbol is not bounded on the grid")
    return fourier_analyze(vals)


def toeplitz_matrix(phi, N: int, rows: int | None = None, K: int | None = None) -> OperatorMatrix:
    """Entries phi_hat(j - k); ``rows > N`` gives the rectangular compression."""
    rows = N if rows is None else int(rows)
    if rows < N:
        raise ValueError("a compression needs at least N rows")
    if K is None:
        K = BoundaryGrid.for_order(rows).K
    c = symbol_coefficients(phi, rows, K)
    j = np.arange(rows)[:, None]
    k = np.arange(N)[None, :]
    idx = j - k
    table = np.array([c.mode(m) for m in range(-(N - 1), rows)])
    return OperatorMatrix(table[idx + (N - 1)], f"toeplitz({phi!r})")


@dataclass(frozen=True)
class NumericKernel:
    frame: Frame
    singular_values: np.ndarray = field(repr=False)
    gap: float
    tau: float


def numeric_kernel(M: OperatorMatrix, tau: float = KERNEL_TAU, min_gap: float = KERNEL_MIN_GAP) -> NumericKernel:
    """Right singular vectors with singular value <= tau * sigma_max.

    The gap is the ratio across the cut: smallest kept singular value over the
    largest discarded one (or over the threshold itself when nothing is
    discarded).  A gap below ``min_gap`` means the cut is not certified.
    """
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    A = M.entries
    n = A.shape[1]
    _, s, Vh = np.linalg.svd(A, full_matrices=True)
    s_full = np.zeros(n)
    s_full[: s.size] = s
    smax = s_full[0]
    cut = int(np.sum(s_full > tau * smax))
    above = s_full[cut - 1] if cut > 0 else np.inf
    below = s_full[cut] if cut < n else tau * smax
    gap = float(above / below) if below > 0 else math.inf
    if gap < min_gap:
        raise IllConditionedKernel(f"no spectral gap at the kernel cut (ratio {gap:.3g})", s_full, cut)
    basis = Vh[cut:].conj().T
    return NumericKernel(Frame(basis, f"kernel({M.kind})"), s_full, gap, tau)


def _boundary_modulus_deviation(theta: SymbolExpr, K: int = 1024) -> float:
    w = BoundaryGrid(K).nodes
    return float(np.max(np.abs(np.abs(theta(w)) - 1.0)))


def model_space_frame(theta, N: int, guard: int | None = None) -> Frame:
    """Orthonormal frame for the order-N truncation of K_theta.

    For rational inner theta the frame is exact: K_theta = {p / D : deg p < n}
    with D the denominator of theta and n its degree.  Otherwise the frame is
    the orthogonal complement of the columns theta z^k, k < N - guard, which is
    only a compression of the infinite-dimensional space.
    """
    theta = as_symbol(theta)
    if _boundary_modulus_deviation(theta) > INNER_TOL:
        raise ValueError("theta is not inner (boundary modulus deviates from 1)")
    pr = theta.phi_rational()
    if len(pr.terms) == 1 and pr.terms[0][1] == 0:
        R = pr.terms[0][0]
        n = R.deg_num
        if n == 0:
            return Frame.empty(N, "K_const")
        # K_theta = {p / D}: rescaling D (exactly) leaves the span unchanged and avoids overflow
        big = max(R.den, key=lambda c: sp.Abs(sp.N(c, 20)))
        den = np.array([complex(sp.N(c / big, 20)) for c in R.den])
        cols = []
        for j in range(n):
            num = np.zeros(j + 1, dtype=complex)
            num[j] = 1.0
            cols.append(_series(num, den, N))
        return orthonormalize(cols, provenance=f"K({theta!r})")
    d = math.ceil(N / 8) if guard is None else int(guard)
    tc = pr.taylor(N).coeffs
    cols = np.zeros((N, N - d), dtype=complex)
    for k in range(N - d):
        cols[k:, k] = tc[: N - k]
    U, s, _ = np.linalg.svd(cols, full_matrices=True)
    rank = int(np.sum(s > 1e-10 * s[0]))
    return Frame(U[:, rank:], f"K({theta!r}) guard {d}")


def _series(num: np.ndarray, den: np.ndarray, N: int) -> np.ndarray:
    """Taylor coefficients of num/den: the impulse response of the recursive filter."""
    impulse = np.zeros(N, dtype=complex)
    impulse[0] = 1.0
    return scipy.signal.lfilter(num, den, impulse)


def multiply(f: HardyFunction, symbol, K: int | None = None) -> HardyFunction:
    """P_+(symbol * f) by boundary sampling."""
    symbol = as_symbol(symbol)
    N = f.order
    grid = BoundaryGrid(K) if K is not None else BoundaryGrid.for_order(N)
    return project_plus(fourier_analyze(f.on_grid(grid) * symbol(grid.nodes)), N)


def compose_apply(psi: Automorphism, f: HardyFunction, K: int | None = None) -> HardyFunction:
    """f o psi: evaluate the Taylor polynomial at psi(grid), then analyze."""
    N = f.order
    grid = BoundaryGrid(K) if K is not None else BoundaryGrid.for_order(N)
    vals = np.polynomial.polynomial.polyval(psi(grid.nodes), f.coeffs)
    return project_plus(fourier_analyze(vals), N)


def backward_shift(f: HardyFunction) -> HardyFunction:
    c = np.zeros_like(f.coeffs)
    c[:-1] = f.coeffs[1:]
    return HardyFunction(c)


def forward_shift(f: HardyFunction) -> HardyFunction:
    c = np.zeros_like(f.coeffs)
    c[1:] = f.coeffs[:-1]
    return HardyFunction(c)


def map_frame(frame: Frame, fn, tol: float = 1e-8, provenance: str = "") -> Frame:
    """Orthonormal frame of the image of ``frame`` under a linear map on HardyFunctions."""
    images = [fn(c) for c in frame.columns()]
    return orthonormalize(images, tol, provenance or f"image({frame.provenance})")


def analyze_symbol(symbol, N: int, K: int | None = None) -> HardyFunction:
    return analyze(as_symbol(symbol), N, K)
