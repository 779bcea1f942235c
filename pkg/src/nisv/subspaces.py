"""Near-invariance defects and cyclic subspace builders on coefficient frames."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.linalg
import sympy as sp

from .core import BoundaryGrid, HardyFunction, fourier_analyze, project_plus
from .errors import DomainError, NotInHardySpace
from .frame import RANK_TOL, Frame, directed_defect, orthonormalize, subspace_gap
from .halfplane import as_sum, cayley_pullback
from .operators import backward_shift
from .protocol import lambda_grid
from .rational import classify_circle
from .symbols import Automorphism, PhiRational, SymbolExpr

__all__ = [
    "Frame",
    "orthonormalize",
    "subspace_gap",
    "directed_defect",
    "near_sstar_defect",
    "near_div_defect",
    "extremal_function",
    "cyclic_disc",
    "cyclic_halfplane",
]


def _residual_norm(frame: Frame, V: np.ndarray) -> float:
    if V.shape[1] == 0:
        return 0.0
    R = V - frame.basis @ (frame.basis.conj().T @ V)
    return float(np.linalg.norm(R, 2))


def _vanishing_slice(frame: Frame, row: np.ndarray) -> np.ndarray:
    """Orthonormal basis (in frame coordinates) of {x : row . x = 0}."""
    row = np.atleast_2d(row)
    if np.linalg.norm(row) == 0:
        return np.eye(frame.dim, dtype=complex)
    return scipy.linalg.null_space(row / np.linalg.norm(row))


def near_sstar_defect(M: Frame) -> float:
    """max over unit f in M with f(0) = 0 of dist(S^* f, M)."""
    if M.dim == 0:
        return 0.0
    X = _vanishing_slice(M, M.basis[0, :])
    M0 = M.basis @ X
    images = np.column_stack([backward_shift(HardyFunction(M0[:, j])).coeffs for j in range(M0.shape[1])]) if M0.shape[1] else M0
    return _residual_norm(M, images)


def _divide_by(f: np.ndarray, psi: Automorphism, grid: BoundaryGrid) -> np.ndarray:
    w = grid.nodes
    vals = np.polynomial.polynomial.polyval(w, f) / psi(w)
    return project_plus(fourier_analyze(vals), f.size).coeffs


def near_div_defect(M: Frame, psis) -> float:
    """max over generators psi of the defect of {f / psi : f in M, f(a) = 0} in M.

    The slice f(a) = 0 is taken in exact polynomial arithmetic on the truncated
    coefficients, so f / psi is a polynomial and boundary division is exact up
    to rounding.
    """
    psis = list(psis)
    worst = 0.0
    if M.dim == 0:
        return 0.0
    N = M.order
    grid = BoundaryGrid.for_order(N)
    for psi in psis:
        a = complex(psi.a)
        if abs(a) >= 1:
            raise DomainError("automorphism zero must lie in the open disc")
        row = (a ** np.arange(N)) @ M.basis
        X = _vanishing_slice(M, row)
        Mi = M.basis @ X
        if Mi.shape[1] == 0:
            continue
        images = np.column_stack([_divide_by(Mi[:, j], psi, grid) for j in range(Mi.shape[1])])
        worst = max(worst, _residual_norm(M, images))
    return worst


def extremal_function(M: Frame) -> tuple[HardyFunction, float]:
    """Unit u in M orthogonal to M ∩ {f(0) = 0}, with u(0) > 0.

    u is the normalized projection of the constant 1 onto M.  The second return
    value is ||P_M 1|| = u(0), whose smallness signals poor conditioning.
    """
    e0 = np.zeros(M.order, dtype=complex)
    e0[0] = 1.0
    p = M.project(e0)
    n = float(np.linalg.norm(p))
    if n == 0.0:
        raise ValueError("every element of M vanishes at the origin")
    u = p / n
    u = u * (abs(u[0]) / u[0])
    return HardyFunction(u), n


def _as_phi(h) -> PhiRational:
    if isinstance(h, PhiRational):
        return h
    if isinstance(h, SymbolExpr):
        if not h.analytic:
            raise ValueError("cyclic generator must be analytic")
        return h.phi_rational()
    return PhiRational.of(h)


def _check_disc_h2(pr: PhiRational) -> None:
    for R, _ in pr.terms:
        for p, _ in R.poles():
            if classify_circle(p) != "outside":
                raise NotInHardySpace(f"generator has a pole at {p} in the closed disc")


def cyclic_disc(h, delta, Mpts: int, N: int, grid: str = "uniform", tol: float = RANK_TOL) -> Frame:
    """Frame of span{h phi^lambda_j} over Mpts grid points in [0, delta]."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    pr = _as_phi(h)
    _check_disc_h2(pr)
    lams = lambda_grid(delta, Mpts, grid)
    cols = [pr.shift(_exact(lam)).taylor(N) for lam in lams]
    return orthonormalize(cols, tol, f"A({h!r}) M={Mpts}")


def cyclic_halfplane(g, delta, Mpts: int, N: int, grid: str = "uniform", tol: float = RANK_TOL) -> Frame:
    """Disc frame of V^{-1} span{g e^{-lambda s}}; normalization constants are dropped."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    for t in as_sum(g).terms:
        t.require_h2()
    base = cayley_pullback(g)
    lams = lambda_grid(delta, Mpts, grid)
    cols = [base.shift(_exact(lam)).taylor(N) for lam in lams]
    return orthonormalize(cols, tol, f"N({g!r}) M={Mpts}")


def _exact(q: Fraction):
    return sp.Rational(q.numerator, q.denominator)
