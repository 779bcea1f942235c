"""Closed-form symbols: automorphisms, Blaschke factors, phi^t, and expression trees."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
import sympy as sp

from .core import BoundaryGrid, HardyFunction, fourier_analyze, project_plus
from .errors import DomainError, NotInHardySpace
from .rational import Z, RationalFn, classify_circle, to_exact

UNIMODULAR_TOL = 1e-12
SINGULAR_GUARD = 1e-8
CIRCLE_TOL = 1e-9


def singular_inner_coeffs(t: float, N: int) -> np.ndarray:
    """Taylor coefficients of exp(-t (1-z)/(1+z)).

    From (1+z)^2 f' = 2 t f:  (m+1) a_{m+1} = (2t - 2m) a_m - (m-1) a_{m-1}.
    """
    if t < 0:
        raise ValueError("singular inner exponent must be nonnegative")
    a = np.zeros(N)
    if N == 0:
        return a
    a[0] = math.exp(-t)
    if N > 1:
        a[1] = 2 * t * a[0]
    for m in range(1, N - 1):
        a[m + 1] = ((2 * t - 2 * m) * a[m] - (m - 1) * a[m - 1]) / (m + 1)
    return a


# ---------------------------------------------------------------------------
# expression tree


class SymbolExpr:
    """Evaluable symbol on the closed disc or on the circle."""

    analytic = True
    inner = False

    def __call__(self, z):
        raise NotImplementedError

    def __mul__(self, other):
        return Product.of(self, as_symbol(other))

    def __rmul__(self, other):
        return Product.of(as_symbol(other), self)

    def __pow__(self, k: int):
        return Power(self, int(k))

    def compose(self, inner: "SymbolExpr") -> "SymbolExpr":
        return Compose(self, inner)

    def conj(self) -> "SymbolExpr":
        return ConjOnT(self)

    def at_zero(self) -> complex:
        if not self.analytic:
            raise DomainError("only analytic symbols have a value at 0")
        return complex(self(np.complex128(0.0)))

    def on_grid(self, grid: BoundaryGrid) -> np.ndarray:
        return np.asarray(self(grid.nodes), dtype=complex)

    def phi_rational(self) -> "PhiRational":
        raise ValueError(f"{self!r} is not a rational multiple of a singular inner power")


def as_symbol(x) -> SymbolExpr:
    if isinstance(x, SymbolExpr):
        return x
    if isinstance(x, RationalFn):
        return Rational(x)
    return Rational(RationalFn.constant(x))


@dataclass(frozen=True, eq=False)
class Rational(SymbolExpr):
    fn: RationalFn

    def __post_init__(self):
        if self.fn.var != Z:
            raise ValueError("disc symbols use the variable z")

    def __call__(self, z):
        out = self.fn(z)
        if not np.all(np.isfinite(out)):
            raise DomainError("rational symbol evaluated at a pole")
        return out

    @property
    def inner(self) -> bool:
        return is_inner_rational(self.fn)

    def phi_rational(self) -> "PhiRational":
        return PhiRational(((self.fn, sp.Integer(0)),))

    def __repr__(self):
        return f"rat({self.fn.expr()})"


@dataclass(frozen=True, eq=False)
class Automorphism(SymbolExpr):
    """psi(z) = lam (a - z) / (1 - conj(a) z)."""

    a: complex
    lam: complex = 1.0

    inner = True

    def __post_init__(self):
        a, lam = complex(self.a), complex(self.lam)
        if not abs(a) < 1:
            raise ValueError(f"automorphism zero must lie in the open disc, got {a}")
        if abs(abs(lam) - 1) > UNIMODULAR_TOL:
            raise ValueError(f"|lambda| must be 1, got {abs(lam)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "lam", lam)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.lam * (self.a - z) / (1 - np.conj(self.a) * z)
        return complex(out) if out.ndim == 0 else out

    def inverse(self) -> "Automorphism":
        return Automorphism(self.lam * self.a, np.conj(self.lam))

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return self.lam * (abs(self.a) ** 2 - 1) / (1 - np.conj(self.a) * z) ** 2

    def sqrt_derivative(self) -> "SqrtDerivative":
        return SqrtDerivative(self)

    def rational(self) -> RationalFn:
        a, lam = to_exact(self.a), to_exact(self.lam)
        return RationalFn.from_expr(lam * (a - Z) / (1 - sp.conjugate(a) * Z))

    def phi_rational(self) -> "PhiRational":
        return PhiRational(((self.rational(), sp.Integer(0)),))

    def __repr__(self):
        return f"auto({self.a:g}, {self.lam:g})"


def blaschke_factor(a: complex) -> Automorphism:
    """b_a(z) = (a - z)/(1 - conj(a) z)."""
    return Automorphism(a, 1.0)


@dataclass(frozen=True, eq=False)
class ConjMonomial(SymbolExpr):
    """conj(z)^k on the circle."""

    k: int
    analytic = False

    def __call__(self, z):
        z = _require_circle(z)
        out = np.conj(z) ** self.k
        return complex(out) if np.ndim(out) == 0 else out

    def __repr__(self):
        return f"zbar^{self.k}"


@dataclass(frozen=True, eq=False)
class SingularInner(SymbolExpr):
    """phi^t(z) = exp(-t (1-z)/(1+z)), t >= 0."""

    t: float
    inner = True

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("exponent must be nonnegative")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(1 + z) < SINGULAR_GUARD):
            raise DomainError("phi^t is singular at z = -1")
        out = np.exp(-self.t * (1 - z) / (1 + z))
        return complex(out) if out.ndim == 0 else out

    def phi_rational(self) -> "PhiRational":
        return PhiRational(((RationalFn.constant(1), to_exact(self.t)),))

    def __repr__(self):
        return f"phi({self.t:g})"


@dataclass(frozen=True, eq=False)
class Product(SymbolExpr):
    factors: tuple

    @classmethod
    def of(cls, *items) -> "Product":
        flat = []
        for it in items:
            flat.extend(it.factors if isinstance(it, Product) else [it])
        return cls(tuple(flat))

    @property
    def analytic(self) -> bool:
        return all(f.analytic for f in self.factors)

    @property
    def inner(self) -> bool:
        return all(f.inner for f in self.factors)

    def __call__(self, z):
        vals = [f(z) for f in self.factors]
        return reduce(lambda x, y: x * y, vals)

    def phi_rational(self) -> "PhiRational":
        return reduce(lambda x, y: x * y, (f.phi_rational() for f in self.factors))

    def __repr__(self):
        return "*".join(map(repr, self.factors))


@dataclass(frozen=True, eq=False)
class Power(SymbolExpr):
    base: SymbolExpr
    k: int

    @property
    def analytic(self) -> bool:
        return self.base.analytic and self.k >= 0

    @property
    def inner(self) -> bool:
        return self.base.inner and self.k >= 0

    def __call__(self, z):
        return self.base(z) ** self.k

    def phi_rational(self) -> "PhiRational":
        if self.k < 0:
            return super().phi_rational()
        out = PhiRational.one()
        base = self.base.phi_rational()
        for _ in range(self.k):
            out = out * base
        return out

    def __repr__(self):
        return f"({self.base!r})^{self.k}"


@dataclass(frozen=True, eq=False)
class Compose(SymbolExpr):
    outer: SymbolExpr
    inner_map: SymbolExpr

    @property
    def analytic(self) -> bool:
        return self.outer.analytic and self.inner_map.analytic

    @property
    def inner(self) -> bool:
        return self.outer.inner and self.inner_map.inner

    def __call__(self, z):
        return self.outer(self.inner_map(z))

    def phi_rational(self) -> "PhiRational":
        if not isinstance(self.inner_map, Automorphism):
            return super().phi_rational()
        pr = self.outer.phi_rational()
        if any(t != 0 for _, t in pr.terms):
            return super().phi_rational()
        psi = self.inner_map.rational()
        return PhiRational(tuple((R.substitute(psi.expr()), t) for R, t in pr.terms))

    def __repr__(self):
        return f"compose({self.outer!r}, {self.inner_map!r})"


@dataclass(frozen=True, eq=False)
class ConjOnT(SymbolExpr):
    expr: SymbolExpr
    analytic = False

    def __call__(self, z):
        z = _require_circle(z)
        return np.conj(self.expr(z))

    def __repr__(self):
        return f"conj({self.expr!r})"


@dataclass(frozen=True, eq=False)
class SqrtDerivative(SymbolExpr):
    """c/(1 - conj(a) z) with c^2 = lam (|a|^2 - 1): a fixed branch of sqrt(psi')."""

    psi: Automorphism

    @property
    def c(self) -> complex:
        return np.sqrt(complex(self.psi.lam * (abs(self.psi.a) ** 2 - 1)))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.c / (1 - np.conj(self.psi.a) * z)
        return complex(out) if out.ndim == 0 else out

    def __repr__(self):
        return f"sqrtd({self.psi!r})"


def _require_circle(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1) > CIRCLE_TOL):
        raise DomainError("conjugate symbols are only defined on the unit circle")
    return z


def eval_symbol(e: SymbolExpr, z):
    return e(z)


def make_automorphism(a: complex, lam: complex = 1.0) -> Automorphism:
    return Automorphism(a, lam)


# ---------------------------------------------------------------------------
# rational times singular inner


@dataclass(frozen=True, eq=False)
class PhiRational:
    """Finite sum of R_i(z) * phi^{t_i}(z) with exact exponents t_i >= 0."""

    terms: tuple

    @classmethod
    def one(cls) -> "PhiRational":
        return cls(((RationalFn.constant(1), sp.Integer(0)),))

    @classmethod
    def of(cls, R, t=0) -> "PhiRational":
        R = R if isinstance(R, RationalFn) else RationalFn.from_expr(R)
        return cls(((R, to_exact(t)),))

    def __mul__(self, other) -> "PhiRational":
        if not isinstance(other, PhiRational):
            other = PhiRational.of(RationalFn.constant(other))
        return PhiRational(tuple((R1 * R2, t1 + t2) for R1, t1 in self.terms for R2, t2 in other.terms)).collect()

    __rmul__ = __mul__

    def __add__(self, other: "PhiRational") -> "PhiRational":
        return PhiRational(self.terms + other.terms).collect()

    def __neg__(self) -> "PhiRational":
        return PhiRational(tuple((-R, t) for R, t in self.terms))

    def __sub__(self, other: "PhiRational") -> "PhiRational":
        return self + (-other)

    def scale(self, c) -> "PhiRational":
        c = to_exact(c)
        return PhiRational(tuple((R * c, t) for R, t in self.terms))

    def shift(self, tau) -> "PhiRational":
        """Multiply by phi^tau."""
        tau = to_exact(tau)
        return PhiRational(tuple((R, t + tau) for R, t in self.terms))

    def collect(self) -> "PhiRational":
        acc: dict = {}
        order = []
        for R, t in self.terms:
            if t in acc:
                acc[t] = acc[t] + R
            else:
                acc[t] = R
                order.append(t)
        return PhiRational(tuple((acc[t], t) for t in order if not acc[t].is_zero))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for R, t in self.terms:
            out = out + R(z) * (SingularInner(float(t))(z) if t != 0 else 1.0)
        return out

    def symbol(self) -> SymbolExpr:
        parts = [Product.of(Rational(R), SingularInner(float(t))) if t != 0 else Rational(R) for R, t in self.terms]
        if len(parts) == 1:
            return parts[0]
        return SumExpr(tuple(parts))

    def taylor(self, N: int) -> HardyFunction:
        """Taylor coefficients to order N, exact up to rounding."""
        out = np.zeros(N, dtype=complex)
        for R, t in self.terms:
            rc = rational_taylor(R, N)
            if t != 0:
                rc = np.convolve(rc, singular_inner_coeffs(float(t), N))[:N]
            out += rc
        return HardyFunction(out)


@dataclass(frozen=True, eq=False)
class SumExpr(SymbolExpr):
    parts: tuple

    @property
    def analytic(self) -> bool:
        return all(p.analytic for p in self.parts)

    def __call__(self, z):
        return reduce(lambda x, y: x + y, (p(z) for p in self.parts))

    def phi_rational(self) -> PhiRational:
        return reduce(lambda x, y: x + y, (p.phi_rational() for p in self.parts))


def rational_taylor(R: RationalFn, N: int) -> np.ndarray:
    """Taylor coefficients of P/Q by the recurrence Q * c = P (Q(0) must be nonzero)."""
    p = R._num_np
    q = R._den_np
    if abs(q[0]) == 0:
        raise NotInHardySpace("rational function has a pole at 0")
    c = np.zeros(N, dtype=complex)
    for m in range(N):
        acc = p[m] if m < p.size else 0.0
        for k in range(1, min(m, q.size - 1) + 1):
            acc -= q[k] * c[m - k]
        c[m] = acc / q[0]
    return c


# ---------------------------------------------------------------------------
# factorization and derived symbols


def is_inner_rational(R: RationalFn, K: int = 256, tol: float = 1e-10) -> bool:
    try:
        vals = R(BoundaryGrid(K).nodes)
    except (ZeroDivisionError, FloatingPointError):
        return False
    if not np.all(np.isfinite(vals)):
        return False
    if any(abs(p) <= 1 for p, _ in R.poles()):
        return False
    return bool(np.max(np.abs(np.abs(vals) - 1)) < tol)


def inner_outer_rational(f: RationalFn):
    """Split f = inner * outer with inner a Blaschke product and outer zero-free in D.

    Zeros within 1e-8 of the circle are snapped onto it and kept in the outer part.
    Each interior zero r contributes the factor (z - r)/(1 - conj(r) z), which is
    ``Automorphism(r, -1)``.
    """
    for p, _ in f.poles():
        if classify_circle(p) != "outside":
            raise NotInHardySpace(f"pole {p} lies in the closed disc")
    if f.is_zero:
        raise ValueError("the zero function has no inner-outer factorization")
    zeros = f.zeros()
    inside = [(r, m) for r, m in zeros if classify_circle(r) == "inside"]
    factors = []
    for r, m in inside:
        factors.extend([Automorphism(r, -1.0)] * m)
    inner = Product.of(*factors) if factors else Rational(RationalFn.constant(1))
    # outer = lc * prod_{not inside} (z - r)^m * prod_{inside} (1 - conj(r) z)^m / den
    num = np.array([1.0 + 0j])
    for r, m in zeros:
        lin = [-r, 1.0] if classify_circle(r) != "inside" else [1.0, -np.conj(r)]
        for _ in range(m):
            num = np.polynomial.polynomial.polymul(num, lin)
    lead = f._num_np[f.deg_num]
    outer = RationalFn.from_coeffs(list(lead * num), list(f._den_np))
    return inner, outer


def pushforward_symbol(F: SymbolExpr, psi: Automorphism) -> SymbolExpr:
    """G = (F o psi) psi / z, with 1/z written as conj(z) on the circle."""
    return Product.of(Compose(F, psi), psi, ConjMonomial(1))


def complement_vector(theta: SymbolExpr, psi: Automorphism, N: int, K: int | None = None) -> HardyFunction:
    """Coefficients of (z theta(psi(z)) - a theta(0)) / (z - a), a the zero of psi."""
    a = psi.a
    theta0 = theta.at_zero()
    at_a = a * complex(theta(psi(np.complex128(a)))) - a * theta0
    if abs(at_a) > 1e-10:
        raise ValueError(f"numerator does not vanish at a (residual {abs(at_a):.2e})")
    grid = BoundaryGrid(K) if K is not None else BoundaryGrid.for_order(N)
    w = grid.nodes
    vals = (w * theta(psi(w)) - a * theta0) / (w - a)
    return project_plus(fourier_analyze(vals), N)
