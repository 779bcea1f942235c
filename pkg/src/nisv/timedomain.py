"""Exact geometry of shift-generated subspaces, carried out in L^2(0, inf).

The unitary map ``U f = sqrt(2) L^{-1}[f((1-s)/(1+s)) / (1+s)]`` takes H^2(D)
onto L^2(0, inf).  Under U, multiplication by phi^d becomes the right shift
by d, rational functions become exponential polynomials, and the model space of
``B(z) phi^d`` becomes ``L^2(0, d)`` plus the d-shift of a finite span
``{t^j e^{-conj(sigma) t}}``.  Every inner product between such objects has a
closed form, so distances to cyclic spans and to model spaces can be computed
to any working precision instead of being estimated from truncated Taylor
coefficients.

Arithmetic goes through an mpmath context: ``mpmath.fp`` for double precision
or a private ``MPContext`` for extended precision.  Shift positions are exact
``Fraction`` values so that Gram entries can be cached by exact differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np
import scipy.linalg
import sympy as sp

from .halfplane import HalfPlaneSum, as_sum, cayley_pushforward
from .rational import S, RationalFn
from .symbols import PhiRational, SymbolExpr

DEFAULT_DPS = 60


def make_context(dps: int | None = DEFAULT_DPS):
    """Double precision for ``dps=None``, otherwise a private extended-precision context."""
    if dps is None:
        return mpmath.fp
    ctx = mpmath.MPContext()
    ctx.dps = int(dps)
    return ctx


def is_fp(ctx) -> bool:
    return ctx is mpmath.fp


def ctx_dps(ctx) -> int:
    return 15 if is_fp(ctx) else int(ctx.dps)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    x = sp.nsimplify(x) if not isinstance(x, sp.Rational) else x
    if not isinstance(x, sp.Rational):
        raise ValueError(f"shift positions must be rational, got {x}")
    return Fraction(int(x.p), int(x.q))


def sym_to_ctx(ctx, x, dps: int | None = None):
    """Convert an exact sympy number to the context at full working precision."""
    dps = dps or ctx_dps(ctx)
    if isinstance(x, (int, float, complex)):
        return cv(ctx, x)
    v = sp.N(x, dps + 10)
    re, im = v.as_real_imag()
    re = ctx.mpf(str(sp.Float(re, dps + 10)))
    im = ctx.mpf(str(sp.Float(im, dps + 10)))
    return ctx.mpc(re, im) if im != 0 else ctx.mpf(re)


def cv(ctx, x):
    """Context conversion that keeps the imaginary part of numpy scalars."""
    if isinstance(x, np.generic):
        x = x.item()
    return ctx.convert(x)


def frac_to_ctx(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / q.denominator


# ---------------------------------------------------------------------------
# signals


@dataclass(frozen=True)
class Piece:
    """sum of coef * u^k * exp(-rate * u), u = t - start, on (start, end)."""

    start: Fraction
    end: Fraction | None
    terms: tuple


@dataclass(frozen=True, eq=False)
class Signal:
    """A finite sum of pieces: an element of L^2(0, inf) with closed-form inner products."""

    pieces: tuple
    ctx: object = field(repr=False, default=None)

    def shift(self, tau) -> "Signal":
        """Right shift by tau >= 0 (multiplication by e^{-tau s}, or by phi^tau on the disc)."""
        tau = to_fraction(tau)
        if tau < 0:
            raise ValueError("shift must be nonnegative")
        return Signal(
            tuple(Piece(p.start + tau, None if p.end is None else p.end + tau, p.terms) for p in self.pieces), self.ctx
        )

    def backshift(self, tau) -> "Signal":
        """Adjoint shift: (S_tau^* f)(t) = f(t + tau)."""
        tau = to_fraction(tau)
        ctx = self.ctx
        out = []
        for p in self.pieces:
            if p.end is not None and p.end <= tau:
                continue
            start = p.start - tau
            end = None if p.end is None else p.end - tau
            if start >= 0:
                out.append(Piece(start, end, p.terms))
                continue
            d = frac_to_ctx(ctx, -start)
            new_terms = []
            for rate, poly in _expand(ctx, p.terms, d).items():
                for j, c in enumerate(poly):
                    if c != 0:
                        new_terms.append((c, j, rate))
            out.append(Piece(Fraction(0), end, tuple(new_terms)))
        return Signal(tuple(out), ctx)

    def scale(self, c) -> "Signal":
        c = cv(self.ctx, c)
        return Signal(tuple(Piece(p.start, p.end, tuple((c * a, k, r) for a, k, r in p.terms)) for p in self.pieces), self.ctx)

    def __add__(self, other: "Signal") -> "Signal":
        return Signal(self.pieces + other.pieces, self.ctx)

    def __sub__(self, other: "Signal") -> "Signal":
        return self + other.scale(-1)

    def inner(self, other: "Signal"):
        """<self, other> = int self * conj(other) dt."""
        ctx = self.ctx
        total = ctx.mpc(0)
        for p in self.pieces:
            for q in other.pieces:
                total += _piece_inner(ctx, p, q)
        return total

    def norm2(self):
        return self.ctx.re(self.inner(self))

    def norm(self) -> float:
        return float(self.ctx.sqrt(max(self.norm2(), 0)))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for p in self.pieces:
            a = float(p.start)
            b = math.inf if p.end is None else float(p.end)
            u = t - a
            mask = (t > a) & (t < b)
            val = np.zeros(t.shape, dtype=complex)
            for c, k, r in p.terms:
                val = val + complex(c) * np.abs(u) ** k * np.exp(-complex(r) * u)
            out = out + np.where(mask, val, 0.0)
        return out

    def value_at_zero(self):
        """Right limit f(0+)."""
        ctx = self.ctx
        v = ctx.mpc(0)
        for p in self.pieces:
            if p.start == 0:
                v += sum((c for c, k, _ in p.terms if k == 0), ctx.mpc(0))
        return v


def _expand(ctx, terms, d) -> dict:
    """Re-expand sum c (v+d)^k e^{-r(v+d)} as {rate: polynomial in v}."""
    out: dict = {}
    for c, k, r in terms:
        poly = out.setdefault(r, [])
        while len(poly) <= k:
            poly.append(ctx.mpc(0))
        if d == 0:
            poly[k] += c
            continue
        f = c * ctx.exp(-r * d)
        for j in range(k + 1):
            poly[j] += f * math.comb(k, j) * d ** (k - j)
    return out


def _lower_integral(ctx, j: int, b, W):
    """int_0^W v^j e^{-b v} dv; W None means infinity."""
    if W is None:
        if not ctx.re(b) > 0:
            raise ValueError("non-decaying product on an infinite support")
        return math.factorial(j) / b ** (j + 1)
    x = b * W
    # Kummer-type series, free of cancellation for Re x >= 0 and valid at b = 0
    term = ctx.mpf(1) / (j + 1)
    acc = term
    i = 0
    eps = ctx.eps
    while True:
        i += 1
        term = term * x / (j + 1 + i)
        acc += term
        if abs(term) <= eps * abs(acc) and i > abs(x):
            break
        if i > 100000:
            raise RuntimeError("series failed to converge")
    return W ** (j + 1) * ctx.exp(-x) * acc


def _piece_inner(ctx, p: Piece, q: Piece):
    lo = max(p.start, q.start)
    if p.end is None and q.end is None:
        hi = None
    elif p.end is None:
        hi = q.end
    elif q.end is None:
        hi = p.end
    else:
        hi = min(p.end, q.end)
    if hi is not None and hi <= lo:
        return ctx.mpc(0)
    e1 = _expand(ctx, p.terms, frac_to_ctx(ctx, lo - p.start))
    e2 = _expand(ctx, q.terms, frac_to_ctx(ctx, lo - q.start))
    W = None if hi is None else frac_to_ctx(ctx, hi - lo)
    total = ctx.mpc(0)
    for r1, P1 in e1.items():
        for r2, P2 in e2.items():
            b = r1 + ctx.conj(r2)
            cache: dict = {}
            for j1, a1 in enumerate(P1):
                if a1 == 0:
                    continue
                for j2, a2 in enumerate(P2):
                    if a2 == 0:
                        continue
                    j = j1 + j2
                    if j not in cache:
                        cache[j] = _lower_integral(ctx, j, b, W)
                    total += a1 * ctx.conj(a2) * cache[j]
    return total


# ---------------------------------------------------------------------------
# numeric rational functions and inverse Laplace transforms


def _polymul(ctx, a: Sequence, b: Sequence) -> list:
    out = [ctx.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True, eq=False)
class NumRational:
    """num(s) / prod (s - p)^m with ascending numerator coefficients in a context."""

    num: tuple
    poles: tuple
    ctx: object = field(repr=False, default=None)

    @classmethod
    def from_exact(cls, R: RationalFn, ctx) -> "NumRational":
        dps = ctx_dps(ctx)
        num = tuple(sym_to_ctx(ctx, c, dps) for c in R.num)
        poles = tuple((cv(ctx, p), m) for p, m in R.poles_mp(dps + 10))
        return cls(num, poles, ctx)

    @classmethod
    def from_zeros_poles(cls, ctx, zeros: Iterable, poles: Iterable, scale=1) -> "NumRational":
        num = [cv(ctx, scale)]
        for z, m in zeros:
            for _ in range(m):
                num = _polymul(ctx, num, [-z, ctx.mpf(1)])
        return cls(tuple(num), tuple(poles), ctx)

    @property
    def degree_den(self) -> int:
        return sum(m for _, m in self.poles)

    def __mul__(self, other: "NumRational") -> "NumRational":
        ctx = self.ctx
        num = _polymul(ctx, self.num, other.num)
        return NumRational(tuple(num), _merge_poles(ctx, self.poles + other.poles), ctx)

    def scale(self, c) -> "NumRational":
        c = cv(self.ctx, c)
        return NumRational(tuple(c * a for a in self.num), self.poles, self.ctx)

    def __call__(self, s):
        ctx = self.ctx
        v = ctx.mpc(0)
        for c in reversed(self.num):
            v = v * s + c
        for p, m in self.poles:
            v = v / (s - p) ** m
        return v

    def inverse_laplace(self) -> list:
        """Terms (coef, k, rate) with f(t) = sum coef t^k e^{-rate t}."""
        ctx = self.ctx
        if len(_trim(self.num)) > self.degree_den:
            raise ValueError("inverse Laplace transform needs a strictly proper rational function")
        out = []
        for idx, (p, m) in enumerate(self.poles):
            # Taylor coefficients of h(s) = num(s) / prod_{q != p} (s - q)^{m_q} at s = p
            h = _taylor_poly_at(ctx, self.num, p, m)
            for jdx, (q, mq) in enumerate(self.poles):
                if jdx == idx:
                    continue
                h = _series_mul(ctx, h, _inv_power_series(ctx, p - q, mq, m), m)
            for j in range(1, m + 1):
                A = h[m - j]
                if A != 0:
                    out.append((A / ctx.factorial(j - 1), j - 1, -p))
        return out

    def to_signal(self, delay=0) -> Signal:
        return Signal((Piece(to_fraction(delay), None, tuple(self.inverse_laplace())),), self.ctx)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _merge_poles(ctx, poles):
    tol = ctx.mpf(10) ** (-(ctx_dps(ctx) // 2))
    out: list = []
    for p, m in poles:
        for i, (q, mq) in enumerate(out):
            if abs(p - q) <= tol * max(1, abs(q)):
                out[i] = (q, mq + m)
                break
        else:
            out.append((p, m))
    return tuple(out)


def _taylor_poly_at(ctx, coeffs, p, order: int) -> list:
    out = []
    for i in range(order):
        v = ctx.mpc(0)
        for k in range(i, len(coeffs)):
            v += coeffs[k] * math.comb(k, i) * p ** (k - i)
        out.append(v)
    return out


def _inv_power_series(ctx, d, m: int, order: int) -> list:
    """Coefficients of (d + e)^{-m} in powers of e."""
    base = d ** (-m)
    return [base * (-1) ** i * math.comb(m + i - 1, i) / d**i for i in range(order)]


def _series_mul(ctx, a, b, order: int) -> list:
    out = [ctx.mpc(0)] * order
    for i in range(order):
        for j in range(order - i):
            out[i + j] += a[i] * b[j]
    return out


def laplace_to_signal(g, ctx) -> Signal:
    """L^{-1} of a sum of R(s) e^{-d s} terms with rational delays."""
    pieces = []
    for t in as_sum(g).terms:
        nr = NumRational.from_exact(t.rational, ctx)
        for p, _ in nr.poles:
            if not ctx.re(p) < 0:
                raise ValueError(f"pole {complex(p)} is not in the open left half-plane")
        pieces.extend(nr.to_signal(to_fraction(t.delay)).pieces)
    return Signal(tuple(pieces), ctx)


def disc_to_signal(f, ctx) -> Signal:
    """U f = sqrt(2) L^{-1}[f((1-s)/(1+s)) / (1+s)] for a rational-times-phi disc function."""
    if isinstance(f, SymbolExpr):
        f = f.phi_rational()
    if not isinstance(f, PhiRational):
        raise TypeError("expected a PhiRational or an analytic SymbolExpr")
    return laplace_to_signal(cayley_pushforward(f), ctx).scale(ctx.sqrt(2))


def disc_value_at_origin(sig: Signal):
    """f(0) for the disc function f with U f = sig, namely <sig, U 1>."""
    ctx = sig.ctx
    one = Signal((Piece(Fraction(0), None, ((ctx.sqrt(2), 0, ctx.mpf(1)),)),), ctx)
    return sig.inner(one)


def disc_backward_shift(sig: Signal) -> Signal:
    """U S^* U^{-1}: f -> -f + 2 int_t^inf e^{-(u-t)} f(u) du.

    Multiplication by z becomes multiplication by (1-s)/(1+s) = -1 + 2/(1+s),
    i.e. f -> -f + 2 (e^{-t} * f); the tail integral is the adjoint of that
    convolution.
    """
    ctx = sig.ctx
    zero_tol = ctx.mpf(10) ** (-(ctx_dps(ctx) // 2))
    out = []
    for p in sig.pieces:
        E = None if p.end is None else frac_to_ctx(ctx, p.end - p.start)
        inside = []  # terms of the tail integral for t in (start, end)
        const = ctx.mpc(0)  # coefficient of e^{x} (x = t - start) collecting the upper limit
        for c, k, r in p.terms:
            b = 1 + r
            if abs(b) < zero_tol:
                # int_x^E y^k dy
                inside.append((-c / (k + 1), k + 1, ctx.mpf(-1)))
                const += c * E ** (k + 1) / (k + 1)
                continue
            # int_x^E y^k e^{-b y} dy = A(E) - A(x), A(y) = -e^{-b y} sum_j k!/(k-j)! y^{k-j} / b^{j+1}
            for j in range(k + 1):
                f = math.factorial(k) // math.factorial(k - j)
                inside.append((c * f / b ** (j + 1), k - j, r))
                if E is not None:
                    const -= c * f * E ** (k - j) * ctx.exp(-b * E) / b ** (j + 1)
        if const != 0:
            inside.append((const, 0, ctx.mpf(-1)))
        out.append(Piece(p.start, p.end, tuple((2 * c, k, r) for c, k, r in inside)))
        if p.start > 0:
            # for t < start the tail integral is e^{t - start} * int_0^E e^{-y} p(y) dy
            total = ctx.mpc(0)
            for c, k, r in p.terms:
                total += c * _lower_integral(ctx, k, 1 + r, E)
            out.append(Piece(Fraction(0), p.start, ((2 * total * ctx.exp(-frac_to_ctx(ctx, p.start)), 0, ctx.mpf(-1)),)))
    return Signal(tuple(out), ctx) - sig


# ---------------------------------------------------------------------------
# model spaces


@dataclass(frozen=True, eq=False)
class ModelSpace:
    """K_Theta in L^2(0, inf) for Theta(s) = B(s) e^{-delay s}, optionally times a multiplier.

    ``zeros`` are the zeros sigma of the half-plane Blaschke factor B with
    multiplicities.  K_Theta = L^2(0, delay) (+) S_delay span{t^j e^{-conj(sigma) t}}.
    A ``multiplier`` G (bounded with bounded inverse on the axis) turns the
    space into G K_Theta, which is handled by dividing by G first.
    """

    zeros: tuple
    delay: Fraction
    ctx: object = field(repr=False)
    multiplier: RationalFn | None = None

    def __post_init__(self):
        object.__setattr__(self, "delay", to_fraction(self.delay))
        ctx = self.ctx
        for z, _ in self.zeros:
            if not ctx.re(z) > 0:
                raise ValueError("Blaschke zeros must lie in the open right half-plane")
        basis = []
        for sig, m in self.zeros:
            for j in range(m):
                basis.append(Signal((Piece(Fraction(0), None, ((1 / ctx.factorial(j), j, ctx.conj(sig)),)),), ctx))
        object.__setattr__(self, "_basis", tuple(basis))
        d = len(basis)
        if d:
            G = [[basis[j].inner(basis[i]) for j in range(d)] for i in range(d)]
            L = _cholesky_mp(ctx, G)
            object.__setattr__(self, "_chol", L)

    # -- construction ------------------------------------------------------
    @classmethod
    def from_disc(cls, theta: SymbolExpr, ctx) -> "ModelSpace":
        """K_theta for theta = (finite Blaschke product) * phi^d given as a symbol."""
        pr = theta.phi_rational()
        if len(pr.terms) != 1:
            raise ValueError("theta must be a single rational-times-phi product")
        R, tau = pr.terms[0]
        from .symbols import is_inner_rational

        if not is_inner_rational(R):
            raise ValueError("the rational part of theta is not inner")
        dps = ctx_dps(ctx) + 10
        zeros = []
        for a, m in R.zeros_mp(dps):
            a = cv(ctx, a)
            if abs(a) < 1:
                zeros.append(((1 - a) / (1 + a), m))
        return cls(tuple(zeros), to_fraction(tau), ctx)

    @classmethod
    def from_halfplane(cls, zeros: Iterable, delay, ctx, multiplier: RationalFn | None = None) -> "ModelSpace":
        """Zeros given as exact sympy numbers (or floats) with multiplicities."""
        zs = tuple((sym_to_ctx(ctx, sp.sympify(z)), int(m)) for z, m in zeros)
        return cls(zs, to_fraction(delay), ctx, multiplier)

    @property
    def blaschke_degree(self) -> int:
        return sum(m for _, m in self.zeros)

    # -- evaluation --------------------------------------------------------
    def theta(self, s):
        """Theta(s) = prod ((s - sigma)/(s + conj sigma))^m * e^{-delay s}."""
        ctx = self.ctx
        v = ctx.exp(-frac_to_ctx(ctx, self.delay) * s)
        for sig, m in self.zeros:
            v *= ((s - sig) / (s + ctx.conj(sig))) ** m
        return v

    def kernel(self, sigma) -> Signal:
        """The reproducing kernel of K_Theta at sigma (times the multiplier if any)."""
        ctx = self.ctx
        sigma = cv(ctx, sigma)
        base = NumRational((ctx.mpc(1),), ((-ctx.conj(sigma), 1),), ctx)
        bl = NumRational.from_zeros_poles(ctx, self.zeros, tuple((-ctx.conj(z), m) for z, m in self.zeros))
        tail = (bl * base).scale(-ctx.conj(self.theta(sigma)))
        if self.multiplier is not None:
            G = NumRational.from_exact(self.multiplier, ctx)
            base, tail = G * base, G * tail
        return base.to_signal(0) + tail.to_signal(self.delay)

    def kernel_norm2(self, sigma):
        ctx = self.ctx
        sigma = cv(ctx, sigma)
        return (1 - abs(self.theta(sigma)) ** 2) / (2 * ctx.re(sigma))

    # -- projections -------------------------------------------------------
    def _blaschke_coords(self, g: Signal) -> list:
        """Coordinates of P_B g in the orthonormalized basis of the finite part."""
        b = [g.inner(e) for e in self._basis]
        return _forward_solve(self.ctx, self._chol, b)

    def residual_gram(self, signals: Sequence[Signal]):
        """D[i][j] = <r_j, r_i> with r = f - P_Theta f (no multiplier)."""
        ctx = self.ctx
        tails = [f.backshift(self.delay) for f in signals]
        coords = [self._blaschke_coords(t) for t in tails] if self._basis else [[] for _ in tails]
        n = len(signals)
        D = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = tails[j].inner(tails[i]) - sum((cj * ctx.conj(ci) for cj, ci in zip(coords[j], coords[i])), ctx.mpc(0))
                D[i][j] = v
                D[j][i] = ctx.conj(v)
        return D

    def distance2(self, f: Signal):
        return self.ctx.re(self.residual_gram([f])[0][0])

    def distance(self, f: Signal, relative: bool = True) -> float:
        """dist(f, K_Theta), relative to ||f|| by default (no multiplier)."""
        ctx = self.ctx
        d2 = max(self.distance2(f), 0)
        if relative:
            return float(ctx.sqrt(d2 / f.norm2()))
        return float(ctx.sqrt(d2))


# ---------------------------------------------------------------------------
# dense linear algebra in a context


def _cholesky_mp(ctx, A):
    n = len(A)
    L = [[ctx.mpc(0)] * n for _ in range(n)]
    for j in range(n):
        s = ctx.re(A[j][j]) - sum((abs(L[j][k]) ** 2 for k in range(j)), ctx.mpf(0))
        if not s > 0:
            raise ValueError("matrix is not positive definite")
        L[j][j] = ctx.sqrt(s)
        for i in range(j + 1, n):
            v = A[i][j] - sum((L[i][k] * ctx.conj(L[j][k]) for k in range(j)), ctx.mpc(0))
            L[i][j] = v / L[j][j]
    return L


def _forward_solve(ctx, L, b):
    n = len(b)
    y = [ctx.mpc(0)] * n
    for i in range(n):
        v = b[i] - sum((L[i][k] * y[k] for k in range(i)), ctx.mpc(0))
        y[i] = v / L[i][i]
    return y


def pivoted_cholesky(ctx, A, rel_tol):
    """Diagonal-pivoted Cholesky P^T A P = L L^*, stopping at pivots below rel_tol * max diag.

    Returns (order, L) where ``order`` lists the kept indices in pivot order and
    L is the square factor on those indices.
    """
    n = len(A)
    if is_fp(ctx):
        M = np.array([[complex(A[i][j]) for j in range(n)] for i in range(n)])
        return _pivoted_cholesky_np(M, rel_tol)
    diag = [ctx.re(A[i][i]) for i in range(n)]
    scale = max(diag)
    perm = list(range(n))
    L = [[ctx.mpc(0)] * n for _ in range(n)]
    rank = 0
    for j in range(n):
        # choose the largest remaining diagonal
        k = max(range(j, n), key=lambda t: diag[perm[t]])
        if not diag[perm[k]] > rel_tol * scale:
            break
        perm[j], perm[k] = perm[k], perm[j]
        L[j], L[k] = L[k], L[j]
        pj = perm[j]
        ljj = ctx.sqrt(diag[pj])
        L[j][j] = ljj
        for i in range(j + 1, n):
            pi = perm[i]
            v = A[pi][pj] - sum((L[i][t] * ctx.conj(L[j][t]) for t in range(j)), ctx.mpc(0))
            L[i][j] = v / ljj
            diag[pi] -= abs(L[i][j]) ** 2
        rank += 1
    order = perm[:rank]
    Lr = [row[:rank] for row in L[:rank]]
    return order, Lr


def _pivoted_cholesky_np(M: np.ndarray, rel_tol: float):
    n = M.shape[0]
    c, piv, rank, info = scipy.linalg.lapack.zpstrf(M, lower=1, tol=-1.0)
    L = np.tril(c)
    piv = piv - 1
    d = np.abs(np.diag(L)) ** 2
    keep = int(np.sum(d > rel_tol * np.max(np.real(np.diag(M)))))
    rank = min(rank, keep)
    return [int(p) for p in piv[:rank]], L[:rank, :rank]


# ---------------------------------------------------------------------------
# shift families


@dataclass(eq=False)
class ShiftFamily:
    """span{S_lambda f : lambda in shifts} plus optional extra signals, with exact Gram entries."""

    generator: Signal
    shifts: tuple
    rank_tol: float | None = None
    extras: tuple = ()

    def __post_init__(self):
        self.shifts = tuple(to_fraction(x) for x in self.shifts)
        if any(x < 0 for x in self.shifts):
            raise ValueError("shifts must be nonnegative")
        self.ctx = self.generator.ctx
        if self.rank_tol is None:
            self.rank_tol = float(10.0 ** (-(ctx_dps(self.ctx) - 6)))
        self._corr: dict = {}
        self.extras = tuple(self.extras)
        self._members = [self.generator.shift(x) for x in self.shifts] + list(self.extras)
        self._factor = None

    @property
    def members(self) -> list:
        return self._members

    def correlation(self, d: Fraction):
        """r(d) = <S_d f, f> for d >= 0."""
        if d not in self._corr:
            self._corr[d] = self.generator.shift(d).inner(self.generator)
        return self._corr[d]

    def gram(self):
        """G[i][j] = <g_j, g_i>; the shift block is filled from r(d) over distinct exact differences."""
        G = self._shift_gram()
        if not self.extras:
            return G
        n = len(self.shifts)
        members = self._members
        for i, row in enumerate(G):
            row.extend(members[j].inner(members[i]) for j in range(n, len(members)))
        for i in range(n, len(members)):
            G.append([members[j].inner(members[i]) for j in range(len(members))])
        return G

    def _shift_gram(self):
        ctx = self.ctx
        n = len(self.shifts)
        den = math.lcm(*(x.denominator for x in self.shifts)) if n else 1
        ints = [x.numerator * (den // x.denominator) for x in self.shifts]
        if n and max(ints) < 2**62:
            arr = np.array(ints, dtype=np.int64)
            diff = arr[None, :] - arr[:, None]
            uniq, inv = np.unique(np.abs(diff), return_inverse=True)
            vals = [self.correlation(Fraction(int(u), den)) for u in uniq]
            inv = inv.reshape(n, n)
            return [
                [vals[inv[i, j]] if diff[i, j] >= 0 else ctx.conj(vals[inv[i, j]]) for j in range(n)]
                for i in range(n)
            ]
        G = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                d = ints[j] - ints[i]
                v = self.correlation(Fraction(abs(d), den))
                G[i][j] = v if d >= 0 else ctx.conj(v)
        return G

    def factor(self):
        if self._factor is None:
            self._factor = pivoted_cholesky(self.ctx, self.gram(), self.rank_tol)
        return self._factor

    @property
    def rank(self) -> int:
        return len(self.factor()[0])

    def projection_norm2(self, p: Signal):
        order, L = self.factor()
        ctx = self.ctx
        b = [p.inner(self._members[i]) for i in order]
        if is_fp(ctx):
            y = scipy.linalg.solve_triangular(L, np.array(b, dtype=complex), lower=True)
            return float(np.vdot(y, y).real)
        y = _forward_solve(ctx, L, b)
        return ctx.re(sum((abs(v) ** 2 for v in y), ctx.mpf(0)))

    def distance(self, p: Signal, norm2=None) -> float:
        """Relative distance from p to the span."""
        ctx = self.ctx
        n2 = p.norm2() if norm2 is None else cv(ctx, norm2)
        d2 = n2 - self.projection_norm2(p)
        return float(ctx.sqrt(max(ctx.re(d2), 0) / ctx.re(n2)))

    def containment(self, target: ModelSpace) -> float:
        """max over unit x in the span of dist(x, K_Theta)."""
        order, L = self.factor()
        ctx = self.ctx
        D = target.residual_gram([self._members[i] for i in order])
        r = len(order)
        if r == 0:
            return 0.0
        if is_fp(ctx):
            Dm = np.array([[complex(D[i][j]) for j in range(r)] for i in range(r)])
            X = scipy.linalg.solve_triangular(L, Dm, lower=True)
            W = scipy.linalg.solve_triangular(L, X.conj().T, lower=True).conj().T
        else:
            # W = L^{-1} D L^{-*} = Y^* with Y = L^{-1} (L^{-1} D)^*
            X = [_forward_solve(ctx, L, [D[i][j] for i in range(r)]) for j in range(r)]  # columns
            Y = [_forward_solve(ctx, L, [ctx.conj(X[i][j]) for i in range(r)]) for j in range(r)]
            W = np.array([[complex(ctx.conj(Y[i][j])) for j in range(r)] for i in range(r)])
        W = 0.5 * (W + W.conj().T)
        lam = float(np.max(np.linalg.eigvalsh(W)))
        return math.sqrt(max(lam, 0.0))
