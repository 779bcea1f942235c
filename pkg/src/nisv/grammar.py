"""Plain-text symbol grammar used by the command line.

Disc symbols::

    blaschke(0.5)            b_a(z) = (a - z)/(1 - conj(a) z)
    auto(0.5, -1)            lam (a - z)/(1 - conj(a) z)
    phi(1.0)                 exp(-t (1 - z)/(1 + z))
    rat((z+1)/(z-3))         rational function of z (bare z works too)
    conj(f)                  boundary conjugate; conj(z)^k is the monomial
    compose(f, g)            f o g
    f * g, f^k               products and integer powers

Half-plane functions use the variable ``s``, optionally times ``exp(-d*s)``::

    rat((s+3)/((s+1)*(s+2))) * exp(-1*s)

``^`` and ``**`` are both powers.  ``I`` is the imaginary unit.
"""

from __future__ import annotations

import ast

import sympy as sp

from .halfplane import HalfPlaneRational
from .rational import S, Z, RationalFn
from .symbols import (
    Automorphism,
    Compose,
    ConjMonomial,
    ConjOnT,
    Power,
    Product,
    Rational,
    SingularInner,
    SymbolExpr,
)

_NAMES = {"z": Z, "s": S, "I": sp.I, "i": sp.I, "pi": sp.pi}


class GrammarError(ValueError):
    pass


def _number(x) -> complex:
    if not isinstance(x, sp.Expr) or x.free_symbols:
        raise GrammarError(f"expected a number, got {x!r}")
    return complex(sp.N(x))


def _to_symbol(x) -> SymbolExpr:
    if isinstance(x, SymbolExpr):
        return x
    if isinstance(x, sp.Expr):
        if S in x.free_symbols:
            raise GrammarError("cannot mix disc symbols with the half-plane variable s")
        return Rational(RationalFn.from_expr(x, Z))
    raise GrammarError(f"{x!r} is not a disc symbol")


def _to_half(x) -> HalfPlaneRational:
    if isinstance(x, HalfPlaneRational):
        return x
    if isinstance(x, sp.Expr) and Z not in x.free_symbols:
        return HalfPlaneRational.of(x)
    raise GrammarError(f"{x!r} is not a half-plane function")


def _mul(a, b):
    if isinstance(a, sp.Expr) and isinstance(b, sp.Expr):
        return a * b
    if isinstance(a, HalfPlaneRational) or isinstance(b, HalfPlaneRational):
        return _to_half(a) * _to_half(b)
    return Product.of(_to_symbol(a), _to_symbol(b))


def _pow(a, k):
    if not isinstance(k, sp.Expr) or not k.is_integer:
        raise GrammarError("only integer powers are supported")
    if isinstance(a, sp.Expr):
        return a ** k
    if isinstance(a, ConjMonomial) and k >= 0:
        return ConjMonomial(a.k * int(k))
    if isinstance(a, HalfPlaneRational):
        if k < 0:
            raise GrammarError("negative powers of exponential factors are not in H^2")
        out = HalfPlaneRational.of(1)
        for _ in range(int(k)):
            out = out * a
        return out
    return Power(a, int(k))


def _exp(arg):
    if not isinstance(arg, sp.Expr):
        raise GrammarError("exp takes an expression in s")
    d = sp.simplify(-arg / S)
    if d.free_symbols or d.is_negative:
        raise GrammarError("exp must have the form exp(-d*s) with d >= 0")
    return HalfPlaneRational(RationalFn.constant(1, S), d)


def _conj(x):
    if isinstance(x, sp.Expr) and x.free_symbols:
        if x == Z:
            return ConjMonomial(1)
        return ConjOnT(_to_symbol(x))
    if isinstance(x, sp.Expr):
        return sp.conjugate(x)
    return ConjOnT(_to_symbol(x))


def _call(name: str, args: list):
    if name == "blaschke":
        if len(args) != 1:
            raise GrammarError("blaschke takes one argument")
        return Automorphism(_number(args[0]), 1.0)
    if name == "auto":
        if len(args) != 2:
            raise GrammarError("auto takes two arguments")
        return Automorphism(_number(args[0]), _number(args[1]))
    if name == "phi":
        if len(args) != 1:
            raise GrammarError("phi takes one argument")
        t = _number(args[0])
        if t.imag != 0:
            raise GrammarError("phi needs a real exponent")
        return SingularInner(t.real)
    if name == "rat":
        if len(args) != 1 or not isinstance(args[0], sp.Expr):
            raise GrammarError("rat takes one rational expression")
        return args[0]
    if name == "conj":
        if len(args) != 1:
            raise GrammarError("conj takes one argument")
        return _conj(args[0])
    if name == "compose":
        if len(args) != 2:
            raise GrammarError("compose takes two arguments")
        return Compose(_to_symbol(args[0]), _to_symbol(args[1]))
    if name == "exp":
        if len(args) != 1:
            raise GrammarError("exp takes one argument")
        return _exp(args[0])
    raise GrammarError(f"unknown function {name!r}")


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return sp.nsimplify(node.value) if isinstance(node.value, float) else sp.Integer(node.value)
    if isinstance(node, ast.Name):
        if node.id not in _NAMES:
            raise GrammarError(f"unknown name {node.id!r}")
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        if isinstance(node.op, ast.UAdd):
            return v
        return -v if isinstance(v, sp.Expr) else _mul(sp.Integer(-1), v)
    if isinstance(node, ast.BinOp):
        a, b = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Mult):
            return _mul(a, b)
        if isinstance(node.op, ast.Pow):
            return _pow(a, b)
        if isinstance(a, sp.Expr) and isinstance(b, sp.Expr):
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Div):
                return a / b
        if isinstance(node.op, ast.Div) and isinstance(b, sp.Expr):
            return _mul(a, 1 / b)
        raise GrammarError("sums and quotients are only allowed between rational expressions")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        return _call(node.func.id, [_eval(a) for a in node.args])
    raise GrammarError(f"unsupported syntax: {ast.dump(node)}")


def parse_symbol(text: str):
    """Parse text into a disc SymbolExpr or a HalfPlaneRational."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise GrammarError(f"cannot parse {text!r}: {exc.msg}") from exc
    out = _eval(tree)
    if isinstance(out, sp.Expr):
        if S in out.free_symbols:
            return _to_half(out)
        return _to_symbol(out)
    return out
