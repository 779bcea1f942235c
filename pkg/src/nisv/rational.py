"""Rational functions of one complex variable.

Coefficients are kept as sympy numbers, so integer and decimal inputs stay
exact; floats are converted by their exact binary value.  Numeric work goes
through cached numpy arrays, and root finding comes in two flavours: a double
precision companion-matrix solver with polishing, and an arbitrary precision
path (squarefree split + mpmath) used by the exact geometry engine.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy as sp

Z = sp.Symbol("z")
S = sp.Symbol("s")

ON_CIRCLE_TOL = 1e-8


def to_exact(x) -> sp.Expr:
    """Exact sympy number for ``x``; python floats map to their binary value."""
    if isinstance(x, sp.Basic):
        return x
    if isinstance(x, bool):
        return sp.Integer(int(x))
    if isinstance(x, (int, np.integer)):
        return sp.Integer(int(x))
    if isinstance(x, (float, np.floating)):
        return _exact_float(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return _exact_float(float(x.real)) + sp.I * _exact_float(float(x.imag))
    return sp.sympify(x)


def _exact_float(x: float) -> sp.Rational:
    # subnormals carry denominators up to 2^1074, which sympy cannot factor
    if abs(x) < sys.float_info.min:
        return sp.Integer(0)
    return sp.Rational(x)


def _coeff_list(poly: sp.Poly) -> list:
    # ascending order
    return list(reversed(poly.all_coeffs()))


@dataclass(frozen=True, eq=False)
class RationalFn:
    """P/Q with monic Q and no common factor."""

    num: tuple
    den: tuple
    var: sp.Symbol = field(default=Z)

    def __post_init__(self):
        if all(sp.simplify(c) == 0 for c in self.den):
            raise ZeroDivisionError("denominator is identically zero")

    @classmethod
    def from_expr(cls, expr, var: sp.Symbol = Z) -> "RationalFn":
        expr = sp.sympify(expr)
        expr = sp.cancel(sp.together(expr))
        n, d = sp.fraction(expr)
        pn = sp.Poly(sp.expand(n), var)
        pd = sp.Poly(sp.expand(d), var)
        if pd.is_zero:
            raise ZeroDivisionError("denominator is identically zero")
        g = sp.gcd(pn, pd)
        if g.degree() > 0:
            pn = sp.div(pn, g)[0]
            pd = sp.div(pd, g)[0]
        lead = pd.LC()
        num = tuple(sp.expand(c / lead) for c in _coeff_list(pn))
        den = tuple(sp.expand(c / lead) for c in _coeff_list(pd))
        return cls(num or (sp.Integer(0),), den, var)

    @classmethod
    def from_coeffs(cls, num, den=(1,), var: sp.Symbol = Z) -> "RationalFn":
        """Ascending coefficient lists."""
        n = sum(to_exact(c) * var**k for k, c in enumerate(num))
        d = sum(to_exact(c) * var**k for k, c in enumerate(den))
        return cls.from_expr(n / d, var)

    @classmethod
    def constant(cls, c, var: sp.Symbol = Z) -> "RationalFn":
        return cls((to_exact(c),), (sp.Integer(1),), var)

    # -- structure ---------------------------------------------------------
    def expr(self, var: sp.Symbol | None = None) -> sp.Expr:
        v = self.var if var is None else var
        n = sum(c * v**k for k, c in enumerate(self.num))
        d = sum(c * v**k for k, c in enumerate(self.den))
        return n / d

    @property
    def deg_num(self) -> int:
        nz = [k for k, c in enumerate(self.num) if c != 0]
        return max(nz) if nz else -1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    @property
    def is_zero(self) -> bool:
        return self.deg_num < 0

    @property
    def is_proper(self) -> bool:
        return self.deg_num < self.deg_den

    @property
    def is_exact(self) -> bool:
        return not any(c.has(sp.Float) for c in self.num + self.den)

    @cached_property
    def _num_np(self) -> np.ndarray:
        return np.array([complex(sp.N(c, 20)) for c in self.num], dtype=complex)

    @cached_property
    def _den_np(self) -> np.ndarray:
        return np.array([complex(sp.N(c, 20)) for c in self.den], dtype=complex)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.polynomial.polynomial.polyval(x, self._num_np) / np.polynomial.polynomial.polyval(x, self._den_np)
        return complex(out) if out.ndim == 0 else out

    def __repr__(self) -> str:
        return f"RationalFn({self.expr()})"

    # -- algebra -----------------------------------------------------------
    def _wrap(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            if other.var != self.var:
                raise ValueError("variables differ")
            return other
        return RationalFn.constant(other, self.var)

    def __mul__(self, other) -> "RationalFn":
        o = self._wrap(other)
        return RationalFn.from_expr(self.expr() * o.expr(), self.var)

    __rmul__ = __mul__

    def __add__(self, other) -> "RationalFn":
        o = self._wrap(other)
        return RationalFn.from_expr(self.expr() + o.expr(), self.var)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFn":
        o = self._wrap(other)
        return RationalFn.from_expr(self.expr() - o.expr(), self.var)

    def __neg__(self) -> "RationalFn":
        return RationalFn.from_expr(-self.expr(), self.var)

    def __truediv__(self, other) -> "RationalFn":
        o = self._wrap(other)
        return RationalFn.from_expr(self.expr() / o.expr(), self.var)

    def __pow__(self, k: int) -> "RationalFn":
        return RationalFn.from_expr(self.expr() ** int(k), self.var)

    def equals(self, other: "RationalFn") -> bool:
        """Exact identity test (zero tolerance)."""
        return sp.simplify(sp.cancel(self.expr() - other.expr(self.var))) == 0

    def substitute(self, expr, var: sp.Symbol | None = None) -> "RationalFn":
        """R(expr) as a rational function of ``var``."""
        v = self.var if var is None else var
        return RationalFn.from_expr(self.expr().subs(self.var, expr), v)

    def mobius(self, a, b, c, d, var: sp.Symbol | None = None) -> "RationalFn":
        """R((a x + b)/(c x + d))."""
        v = self.var if var is None else var
        a, b, c, d = map(to_exact, (a, b, c, d))
        return self.substitute((a * v + b) / (c * v + d), v)

    def conj_on_circle(self) -> "RationalFn":
        """The rational function equal to conj(R(z)) for |z| = 1, namely conj(R)(1/z)."""
        n = sum(sp.conjugate(c) * self.var ** (-k) for k, c in enumerate(self.num))
        d = sum(sp.conjugate(c) * self.var ** (-k) for k, c in enumerate(self.den))
        return RationalFn.from_expr(n / d, self.var)

    # -- roots -------------------------------------------------------------
    def zeros(self) -> list[tuple[complex, int]]:
        if self.is_exact:
            return [(complex(r), m) for r, m in self.zeros_mp(30)]
        return polynomial_roots(self._num_np)

    def poles(self) -> list[tuple[complex, int]]:
        if self.is_exact:
            return [(complex(r), m) for r, m in self.poles_mp(30)]
        return polynomial_roots(self._den_np)

    def zeros_mp(self, dps: int) -> list[tuple[object, int]]:
        return _roots_high_precision(self.num, self.var, dps)

    def poles_mp(self, dps: int) -> list[tuple[object, int]]:
        return _roots_high_precision(self.den, self.var, dps)


def polynomial_roots(coeffs_ascending, cluster_tol: float = 1e-3) -> list[tuple[complex, int]]:
    """Companion-matrix roots with Newton polishing and multiplicity clustering."""
    c = np.asarray(coeffs_ascending, dtype=complex)
    nz = np.nonzero(np.abs(c) > 0)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no isolated roots")
    c = c[: nz[-1] + 1]
    if c.size == 1:
        return []
    raw = list(np.roots(c[::-1]))
    dc = np.polynomial.polynomial.polyder(c)
    # single-linkage clustering: a root of multiplicity m splits by ~eps^(1/m)
    groups: list[list] = []
    for r in raw:
        hits = [g for g in groups if min(abs(r - x) for x in g) < cluster_tol * max(1.0, abs(r))]
        merged = [r]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    out = [(None, g) for g in sorted(groups, key=lambda g: (np.mean(g).real, np.mean(g).imag))]
    result = []
    for _, members in out:
        m = len(members)
        r = np.mean(members)
        if m == 1:
            for _ in range(3):
                p = np.polynomial.polynomial.polyval(r, c)
                dp = np.polynomial.polynomial.polyval(r, dc)
                if dp == 0:
                    break
                step = p / dp
                r = r - step
                if abs(step) < 1e-16 * max(1.0, abs(r)):
                    break
        result.append((complex(r), m))
    return result


def _roots_high_precision(coeffs, var, dps: int):
    import mpmath

    poly = sp.Poly(sum(c * var**k for k, c in enumerate(coeffs)), var)
    if poly.degree() <= 0:
        return []
    _, factors = sp.sqf_list(poly)
    out = []
    for f, mult in factors:
        if f.degree() == 0:
            continue
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = sp.N(-b / a, dps + 10)
            out.append((mpmath.mpc(sp.re(r)._to_mpmath(_prec(dps)), sp.im(r)._to_mpmath(_prec(dps))), mult))
            continue
        for r in f.nroots(n=dps + 10, maxsteps=200):
            out.append((mpmath.mpc(sp.re(r)._to_mpmath(_prec(dps)), sp.im(r)._to_mpmath(_prec(dps))), mult))
    return out


def _prec(dps: int) -> int:
    return int(dps * 3.33) + 20


def classify_circle(r: complex, tol: float = ON_CIRCLE_TOL) -> str:
    """'inside', 'on', or 'outside' the unit circle, snapping a tol band onto T."""
    m = abs(r)
    if abs(m - 1.0) < tol:
        return "on"
    return "inside" if m < 1.0 else "outside"
