"""Orthonormal coefficient frames for truncated subspaces of H^2(D)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import HardyFunction
from .errors import OrderMismatch

RANK_TOL = 1e-8
ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class Frame:
    """N x d matrix with orthonormal columns; column j holds Taylor coefficients."""

    basis: np.ndarray = field(repr=False)
    provenance: str = ""

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=complex)
        if B.ndim == 1:
            B = B[:, None]
        if B.ndim != 2:
            raise ValueError("frame basis must be a matrix")
        if B.shape[1] > B.shape[0]:
            raise ValueError("frame has more columns than rows")
        if B.shape[1] and np.max(np.abs(B.conj().T @ B - np.eye(B.shape[1]))) > ORTHO_TOL:
            raise ValueError("frame columns are not orthonormal")
        object.__setattr__(self, "basis", B)

    @property
    def order(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def columns(self) -> list[HardyFunction]:
        return [HardyFunction(self.basis[:, j]) for j in range(self.dim)]

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ v)

    def distance(self, f: HardyFunction | np.ndarray, relative: bool = True) -> float:
        v = f.coeffs if isinstance(f, HardyFunction) else np.asarray(f, dtype=complex)
        if v.size != self.order:
            raise OrderMismatch("vector and frame orders differ")
        r = np.linalg.norm(v - self.project(v))
        if not relative:
            return float(r)
        n = np.linalg.norm(v)
        return float(r / n) if n > 0 else 0.0

    def contains(self, other: "Frame") -> float:
        """Largest sine of the principal angles of ``other`` against this frame."""
        return directed_defect(other, self)

    @classmethod
    def empty(cls, N: int, provenance: str = "") -> "Frame":
        return cls(np.zeros((N, 0), dtype=complex), provenance)


def _as_matrix(generators) -> np.ndarray:
    if isinstance(generators, np.ndarray):
        return np.asarray(generators, dtype=complex)
    cols = [g.coeffs if isinstance(g, HardyFunction) else np.asarray(g, dtype=complex) for g in generators]
    if not cols:
        raise ValueError("need at least one generator")
    orders = {c.size for c in cols}
    if len(orders) != 1:
        raise OrderMismatch("generators have different orders")
    return np.column_stack(cols)


def orthonormalize(generators, tol: float = RANK_TOL, provenance: str = "span") -> Frame:
    """Rank-revealing orthonormal basis of the span of the generators.

    Columns are normalized first, so ``tol`` is relative to the best-conditioned
    direction.  The factorization is a column-pivoted QR, which is stable for
    nearly collinear families where Gram-Schmidt is not.
    """
    A = _as_matrix(generators)
    norms = np.linalg.norm(A, axis=0)
    if not np.any(norms > 0):
        raise ValueError("all generators are zero")
    A = A[:, norms > 0] / norms[norms > 0]
    Q, R, _ = scipy.linalg.qr(A, mode="economic", pivoting=True)
    d = np.abs(np.diag(R))
    rank = int(np.sum(d > tol * d[0]))
    return Frame(Q[:, :rank], provenance)


def directed_defect(A: Frame, B: Frame) -> float:
    """max over unit x in span A of dist(x, span B)."""
    if A.order != B.order:
        raise OrderMismatch(f"frame orders differ: {A.order} vs {B.order}")
    if A.dim == 0:
        return 0.0
    R = A.basis - B.basis @ (B.basis.conj().T @ A.basis)
    return float(min(1.0, np.linalg.norm(R, 2)))


def subspace_gap(A: Frame, B: Frame) -> tuple[float, float, float]:
    """(defect of A in B, defect of B in A, gap)."""
    ab = directed_defect(A, B)
    ba = directed_defect(B, A)
    return ab, ba, max(ab, ba)
