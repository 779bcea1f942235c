"""Exact bridge between L^2(0, inf), H^2 of the right half-plane, and H^2(D).

Everything in this module is exact sympy arithmetic except ``v_inverse``,
which samples on the disc grid.  Conventions:

* Laplace transform ``(Lf)(s) = int_0^inf e^{-st} f(t) dt``.
* ``V^{-1} g (z) = 2 sqrt(pi) / (1 + z) * g((1 - z)/(1 + z))``, which maps
  ``e^{-d s}`` to ``phi^d`` and ``1/(1+s)`` to the constant ``sqrt(pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy as sp

from .core import BoundaryGrid, HardyFunction, fourier_analyze, project_plus
from .errors import DomainError, NotInHardySpace
from .rational import S, Z, RationalFn, to_exact
from .symbols import PhiRational

AXIS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class HalfPlaneRational:
    """R(s) * exp(-delay * s) with R rational in s and delay >= 0."""

    rational: RationalFn
    delay: sp.Expr = sp.Integer(0)

    def __post_init__(self):
        if self.rational.var != S:
            raise ValueError("half-plane rationals use the variable s")
        d = to_exact(self.delay)
        if d < 0:
            raise ValueError("delay must be nonnegative")
        object.__setattr__(self, "delay", d)

    @classmethod
    def of(cls, expr, delay=0) -> "HalfPlaneRational":
        return cls(RationalFn.from_expr(expr, S), delay)

    def expr(self) -> sp.Expr:
        return self.rational.expr() * sp.exp(-self.delay * S)

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        out = self.rational(s) * np.exp(-float(self.delay) * s)
        return complex(out) if out.ndim == 0 else out

    def __mul__(self, other) -> "HalfPlaneRational":
        if isinstance(other, HalfPlaneRational):
            return HalfPlaneRational(self.rational * other.rational, self.delay + other.delay)
        if isinstance(other, RationalFn):
            return HalfPlaneRational(self.rational * other, self.delay)
        return HalfPlaneRational(self.rational * to_exact(other), self.delay)

    __rmul__ = __mul__

    def in_h2(self) -> bool:
        """Proper rational part with every pole in the open left half-plane."""
        if not self.rational.is_proper:
            return False
        return all(p.real < 0 for p, _ in self.rational.poles())

    def in_hinf(self) -> bool:
        if self.rational.deg_num > self.rational.deg_den:
            return False
        return all(p.real < 0 for p, _ in self.rational.poles())

    def require_h2(self) -> None:
        if not self.rational.is_proper:
            raise NotInHardySpace("rational part must be proper to lie in H^2 of the half-plane")
        for p, _ in self.rational.poles():
            if p.real >= -AXIS_TOL:
                raise NotInHardySpace(f"pole {p} in the closed right half-plane")


@dataclass(frozen=True, eq=False)
class HalfPlaneSum:
    """Finite sum of HalfPlaneRational terms, grouped by delay."""

    terms: tuple

    def __post_init__(self):
        acc: dict = {}
        order = []
        for t in self.terms:
            if t.delay in acc:
                acc[t.delay] = acc[t.delay] + t.rational
            else:
                acc[t.delay] = t.rational
                order.append(t.delay)
        merged = tuple(HalfPlaneRational(acc[d], d) for d in sorted(order) if not acc[d].is_zero)
        object.__setattr__(self, "terms", merged)

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros_like(s)
        for t in self.terms:
            out = out + t(s)
        return complex(out) if out.ndim == 0 else out

    def __add__(self, other: "HalfPlaneSum") -> "HalfPlaneSum":
        return HalfPlaneSum(self.terms + other.terms)

    def expr(self) -> sp.Expr:
        return sum((t.expr() for t in self.terms), sp.Integer(0))

    def equals(self, other: "HalfPlaneSum") -> bool:
        """Exact equality: same delays, identical rational parts."""
        a = {t.delay: t.rational for t in self.terms}
        b = {t.delay: t.rational for t in other.terms}
        if set(a) != set(b):
            return False
        return all(a[d].equals(b[d]) for d in a)


def as_sum(g) -> HalfPlaneSum:
    if isinstance(g, HalfPlaneSum):
        return g
    if isinstance(g, HalfPlaneRational):
        return HalfPlaneSum((g,))
    if isinstance(g, RationalFn):
        return HalfPlaneSum((HalfPlaneRational(g),))
    return HalfPlaneSum((HalfPlaneRational.of(g),))


# ---------------------------------------------------------------------------
# exponential polynomials on (0, inf)


@dataclass(frozen=True)
class ExpTerm:
    """coef * (t - start)^k * exp(-rate * t) on (start, end); end None means infinity."""

    coef: sp.Expr
    k: int
    rate: sp.Expr
    start: sp.Expr = sp.Integer(0)
    end: sp.Expr | None = None

    def __post_init__(self):
        object.__setattr__(self, "coef", to_exact(self.coef))
        object.__setattr__(self, "rate", to_exact(self.rate))
        object.__setattr__(self, "start", to_exact(self.start))
        if self.end is not None:
            object.__setattr__(self, "end", to_exact(self.end))
            if not self.end > self.start:
                raise ValueError("empty support")
        if self.k < 0:
            raise ValueError("degree must be nonnegative")
        if self.start < 0:
            raise ValueError("support must lie in (0, inf)")
        if self.end is None and not sp.re(self.rate) > 0:
            raise ValueError("a term on an infinite support needs a decaying rate")


@dataclass(frozen=True)
class ExpPoly:
    terms: tuple

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for term in self.terms:
            a, b = float(term.start), (math.inf if term.end is None else float(term.end))
            mask = (t > a) & (t < b)
            out = out + np.where(
                mask,
                complex(term.coef) * np.abs(t - a) ** term.k * np.exp(-complex(term.rate) * t),
                0.0,
            )
        return out

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        return ExpPoly(self.terms + other.terms)

    def scale(self, c) -> "ExpPoly":
        c = to_exact(c)
        return ExpPoly(tuple(ExpTerm(c * t.coef, t.k, t.rate, t.start, t.end) for t in self.terms))

    def expr(self, t: sp.Symbol) -> sp.Expr:
        out = sp.Integer(0)
        for term in self.terms:
            body = term.coef * (t - term.start) ** term.k * sp.exp(-term.rate * t)
            cond = (t > term.start) if term.end is None else sp.And(t > term.start, t < term.end)
            out += sp.Piecewise((body, cond), (0, True))
        return out


def laplace_exact(f: ExpPoly) -> HalfPlaneSum:
    """Closed-form Laplace transform, term by term.

    On (d, inf):   c (t-d)^k e^{-a t}  ->  c e^{-a d} k! / (s+a)^{k+1} * e^{-d s}.
    On (d1, d2) the tail beyond d2 is subtracted, which adds a second group with
    delay d2 and finite Taylor sum in W = d2 - d1.
    """
    out = []
    for term in f.terms:
        c, k, a, d = term.coef, term.k, term.rate, term.start
        lead = c * sp.exp(-a * d)
        head = lead * sp.factorial(k) / (S + a) ** (k + 1)
        out.append(HalfPlaneRational(RationalFn.from_expr(head, S), d))
        if term.end is not None:
            W = term.end - d
            tail = sum(sp.factorial(k) / sp.factorial(i) * W**i / (S + a) ** (k + 1 - i) for i in range(k + 1))
            tail = -lead * sp.exp(-a * W) * tail
            out.append(HalfPlaneRational(RationalFn.from_expr(tail, S), term.end))
    return HalfPlaneSum(tuple(out))


def sample_family(name: str, **params) -> ExpPoly:
    """Test functions e_delta, f_delta_n, f_m and g_m as exact ExpPoly objects."""
    if name == "e_delta":
        d = _positive(params.get("delta", 1))
        return ExpPoly((ExpTerm(1, 0, 1, d),))
    if name == "f_delta_n":
        d = _positive(params.get("delta", 1))
        n = int(params.get("n", 0))
        if n < 0:
            raise ValueError("n must be nonnegative")
        return ExpPoly((ExpTerm(sp.Rational(1, math.factorial(n)), n, 1, d),))
    if name == "f_m":
        d = _positive(params.get("delta", 1))
        m = int(params.get("m", 1))
        if m < 0:
            raise ValueError("m must be nonnegative")
        return ExpPoly(tuple(ExpTerm(sp.Rational(1, math.factorial(k)), k, 1, d) for k in range(m + 1)))
    if name == "g_m":
        ds = [to_exact(x) for x in params.get("deltas", (1, 2))]
        if not ds or ds[0] <= 0 or any(b <= a for a, b in zip(ds, ds[1:])):
            raise ValueError("g_m needs 0 < delta_1 < ... < delta_m")
        return ExpPoly(tuple(ExpTerm(1, 0, 1, d) for d in ds))
    raise ValueError(f"unknown family {name!r}")


def _positive(x) -> sp.Expr:
    x = to_exact(x)
    if not x > 0:
        raise ValueError("delta must be positive")
    return x


def fm_closed_form(m: int) -> tuple[RationalFn, RationalFn]:
    """Both sides of sum_{k<=m} (1+s)^{-(k+1)} = ((1+s)^{m+1} - 1) / (s (1+s)^{m+1})."""
    lhs = RationalFn.from_expr(sum(1 / (1 + S) ** (k + 1) for k in range(m + 1)), S)
    rhs = RationalFn.from_expr(((1 + S) ** (m + 1) - 1) / (S * (1 + S) ** (m + 1)), S)
    return lhs, rhs


# ---------------------------------------------------------------------------
# disc <-> half-plane


def cayley_pullback(g) -> PhiRational:
    """V^{-1} g / sqrt(pi) as an exact rational-times-phi expression in z."""
    terms = []
    for t in as_sum(g).terms:
        R = t.rational.substitute((1 - Z) / (1 + Z), Z)
        terms.append((R * RationalFn.from_expr(2 / (1 + Z)), t.delay))
    return PhiRational(tuple(terms)).collect()


def cayley_pushforward(f: PhiRational) -> HalfPlaneSum:
    """The inverse of ``cayley_pullback``: g with V^{-1} g = sqrt(pi) f."""
    terms = []
    for R, t in f.terms:
        G = R.substitute((1 - S) / (1 + S), S) * RationalFn.from_expr(1 / (1 + S), S)
        terms.append(HalfPlaneRational(G, t))
    return HalfPlaneSum(tuple(terms))


def v_inverse(g, N: int, K: int | None = None) -> HardyFunction:
    """Boundary-sample (2 sqrt(pi)/(1+z)) g((1-z)/(1+z)) and keep the analytic part."""
    g = as_sum(g)
    grid = BoundaryGrid(K) if K is not None else BoundaryGrid.for_order(N)
    w = grid.nodes
    s = (1 - w) / (1 + w)
    for t in g.terms:
        for p, _ in t.rational.poles():
            if abs(p.real) <= AXIS_TOL:
                raise DomainError(f"pole {p} on the imaginary axis")
    vals = 2 * math.sqrt(math.pi) / (1 + w) * g(s)
    return project_plus(fourier_analyze(vals), N)


# ---------------------------------------------------------------------------
# rational splitting g = G1 G2


@dataclass(frozen=True, eq=False)
class RationalSplit:
    G1: HalfPlaneRational
    G2: HalfPlaneRational
    n: int
    m: int
    axis_zeros: tuple


def rational_split(g) -> RationalSplit:
    """Split an outer rational g into an invertible factor and prod (s - y_k) / (1+s)^n."""
    g = g if isinstance(g, HalfPlaneRational) else HalfPlaneRational.of(g)
    if g.delay != 0:
        raise ValueError("rational_split takes a purely rational g")
    R = g.rational
    g.require_h2()
    if R.is_zero:
        raise ValueError("g must be nonzero")
    axis_factor = sp.Integer(1)
    axis_zeros = []
    num = sp.Poly(sum(c * S**k for k, c in enumerate(R.num)), S)
    _, factors = sp.sqf_list(num)
    for f, mult in factors:
        if f.degree() == 0:
            continue
        roots = [complex(r) for r in f.nroots(n=30)]
        for r in roots:
            if r.real > AXIS_TOL:
                raise ValueError(f"g has a zero {r} in the open right half-plane (not outer)")
        on_axis = [r for r in roots if abs(r.real) <= AXIS_TOL]
        if len(on_axis) == len(roots):
            axis_factor *= (f.as_expr() / f.LC()) ** mult
        else:
            for r in on_axis:
                axis_factor *= (S - sp.I * to_exact(r.imag)) ** mult
        for r in on_axis:
            axis_zeros.extend([complex(0.0, r.imag)] * mult)
    m = len(axis_zeros)
    n = m + (R.deg_den - R.deg_num)
    G2 = RationalFn.from_expr(axis_factor / (1 + S) ** n, S)
    G1 = R / G2
    return RationalSplit(HalfPlaneRational(G1), HalfPlaneRational(G2), n, m, tuple(axis_zeros))


def conj_on_axis(R: RationalFn) -> RationalFn:
    """The rational function equal to conj(R(s)) for s on the imaginary axis."""
    n = sum(sp.conjugate(c) * (-S) ** k for k, c in enumerate(R.num))
    d = sum(sp.conjugate(c) * (-S) ** k for k, c in enumerate(R.den))
    return RationalFn.from_expr(n / d, S)


def inner_obstruction(theta: HalfPlaneRational, G: RationalFn, samples: int = 2001) -> dict:
    """Test whether theta G / conj(G) can be inner on the right half-plane.

    Returns the largest real part of a pole in the closed right half-plane and
    the largest modulus excess |f| - 1 over a grid in the right half-plane.
    """
    ratio = G / conj_on_axis(G)
    f = HalfPlaneRational(theta.rational * ratio, theta.delay)
    poles = [p for p, _ in f.rational.poles()]
    rhp = [p for p in poles if p.real >= -AXIS_TOL]
    y = np.tan(np.linspace(-1.5, 1.5, 61))
    x = np.concatenate([np.linspace(0.0, 8.0, samples // 60 + 1)])
    grid = (x[:, None] + 1j * y[None, :]).ravel()
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.abs(f(grid))
    vals = vals[np.isfinite(vals)]
    axis_vals = np.abs(f(1j * y))
    return {
        "max_pole_real_part": max((p.real for p in rhp), default=-math.inf),
        "rhp_poles": tuple(rhp),
        "modulus_excess": float(np.max(vals) - 1.0),
        "axis_modulus_deviation": float(np.max(np.abs(axis_vals - 1.0))),
    }


def sup_on_axis(R: RationalFn, samples: int = 20001) -> float:
    """sup of |R(iy)| over the imaginary axis, including y = +-inf."""
    y = np.tan(np.linspace(-np.pi / 2, np.pi / 2, samples)[1:-1])
    vals = np.abs(R(1j * y))
    lim = abs(complex(R.num[R.deg_den])) if R.deg_num == R.deg_den else 0.0
    best = max(float(np.max(vals)), lim)
    # polish around the sampled maximum
    from scipy.optimize import minimize_scalar

    i = int(np.argmax(vals))
    lo, hi = y[max(i - 1, 0)], y[min(i + 1, y.size - 1)]
    res = minimize_scalar(lambda t: -abs(R(1j * t)), bounds=(lo, hi), method="bounded")
    return max(best, float(-res.fun))
