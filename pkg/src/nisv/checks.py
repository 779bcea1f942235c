"""Registry of named identity checks.

Every check turns one subspace identity (or non-identity) into named defects
compared against the tolerance of its numerical regime:

* exact: sympy arithmetic, tolerance ``tol_exact`` (0);
* algebraic: closed-form pointwise identities, ``tol_algebraic``;
* finite: finite-dimensional subspace identities on coefficient frames, ``tol_finite``;
* infinite: identities involving phi^delta or e^{-delta s}, checked in the exact
  time-domain engine with the two-sided protocol (containment <= ``tol_contain``,
  probe defects monotone under doubling and <= ``tol_infinite``);
* negative: statements that something fails; they pass when the witnessing
  defect is at least ``negative_floor``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

import numpy as np
import scipy.linalg
import sympy as sp

from .config import Config
from .core import BoundaryGrid, HardyFunction
from .errors import ConfigError, DomainError, IllConditionedKernel, NotInHardySpace
from .frame import Frame, directed_defect, orthonormalize, subspace_gap
from .grammar import GrammarError, parse_symbol
from .halfplane import (
    HalfPlaneRational,
    HalfPlaneSum,
    cayley_pullback,
    fm_closed_form,
    inner_obstruction,
    laplace_exact,
    rational_split,
    sample_family,
    sup_on_axis,
    v_inverse,
)
from .operators import (
    backward_shift,
    compose_apply,
    map_frame,
    model_space_frame,
    multiply,
    numeric_kernel,
    toeplitz_matrix,
)
from .protocol import lambda_grid, probe_points, two_sided
from .rational import S, Z, RationalFn, classify_circle, to_exact
from .report import CheckReport
from .subspaces import near_div_defect, near_sstar_defect
from .symbols import (
    Automorphism,
    Compose,
    ConjMonomial,
    ConjOnT,
    PhiRational,
    Product,
    Rational,
    SingularInner,
    SqrtDerivative,
    SymbolExpr,
    complement_vector,
    inner_outer_rational,
    pushforward_symbol,
)
from .timedomain import (
    ModelSpace,
    Piece,
    ShiftFamily,
    Signal,
    disc_backward_shift,
    disc_to_signal,
    laplace_to_signal,
    make_context,
    to_fraction,
)

ANGLE_TOL = 1e-8
MIN_RATE = 0.25
REGIMES = ("exact", "algebraic", "finite", "infinite", "negative", "mixed")


class CheckError(ValueError):
    """Unknown check id or invalid parameters."""


@dataclass(frozen=True)
class Outcome:
    defects: dict
    tolerances: dict
    passed: bool
    notes: str = ""


@dataclass(frozen=True)
class CheckSpec:
    id: str
    statement: str
    description: str
    regime: str
    defaults: dict
    runner: Callable = field(repr=False)
    primary: str

    def resolve(self, params: dict | None) -> dict:
        params = dict(params or {})
        unknown = set(params) - set(self.defaults)
        if unknown:
            raise CheckError(f"{self.id}: unknown parameters {sorted(unknown)}; expected {sorted(self.defaults)}")
        out = {}
        for k, d in self.defaults.items():
            v = params.get(k, d)
            try:
                if isinstance(d, bool):
                    v = v if isinstance(v, bool) else str(v).lower() in ("1", "true", "yes")
                elif isinstance(d, int):
                    v = int(v)
                elif isinstance(d, float):
                    v = float(v)
                else:
                    v = str(v)
            except (TypeError, ValueError) as exc:
                raise CheckError(f"{self.id}: invalid value for {k}: {v!r}") from exc
            out[k] = v
        return out


REGISTRY: dict[str, CheckSpec] = {}


def register(id, statement, description, regime, defaults, primary):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id}")
        if regime not in REGIMES:
            raise ValueError(f"unknown regime {regime}")
        REGISTRY[id] = CheckSpec(id, statement, description, regime, dict(defaults), fn, primary)
        return fn

    return deco


def get_check(check_id: str) -> CheckSpec:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise CheckError(f"unknown check id {check_id!r}") from None


def list_checks() -> list[CheckSpec]:
    return [REGISTRY[k] for k in sorted(REGISTRY)]


def run_check(check_id: str, params: dict | None = None, config: Config | None = None) -> CheckReport:
    """Run one check; kernel cuts without a spectral gap become failed reports."""
    spec = get_check(check_id)
    cfg = config or Config()
    p = spec.resolve(params)
    t0 = time.perf_counter()
    try:
        out = spec.runner(p, cfg)
    except IllConditionedKernel as exc:
        sv = exc.singular_values
        diag = {}
        if sv is not None and exc.cut is not None and 0 < exc.cut < len(sv):
            diag["kernel_cut_ratio"] = float(sv[exc.cut - 1] / max(sv[exc.cut], 1e-300))
        out = Outcome(diag, {}, False, f"ill-conditioned kernel: {exc}")
    except (GrammarError, DomainError, NotInHardySpace) as exc:
        raise CheckError(f"{check_id}: {exc}") from exc
    elapsed = (time.perf_counter() - t0) * 1e3 if cfg.record_timing else 0.0
    return CheckReport(
        id=spec.id,
        params=p,
        order=cfg.order,
        lambda_samples=cfg.lambda_samples,
        defects=dict(out.defects),
        tolerances=dict(out.tolerances),
        passed=bool(out.passed),
        seed=cfg.seed,
        runtime_ms=round(elapsed, 3),
        notes=out.notes,
    )


# ---------------------------------------------------------------------------
# parameter helpers


def _num(text: str) -> sp.Expr:
    """Exact sympy number from text such as '1/2', '-1/3' or 'exp(I*pi/3)'."""
    try:
        v = sp.sympify(text.replace("^", "**"), locals={"i": sp.I, "I": sp.I, "pi": sp.pi, "exp": sp.exp})
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise CheckError(f"cannot parse number {text!r}") from exc
    if not isinstance(v, sp.Expr) or v.free_symbols:
        raise CheckError(f"{text!r} is not a number")
    return v


def _unit_list(text: str) -> list:
    out = []
    for part in text.split(","):
        w = _num(part.strip())
        if abs(abs(complex(w)) - 1) > 1e-12:
            raise CheckError(f"{part!r} does not lie on the unit circle")
        out.append(w)
    if not out:
        raise CheckError("need at least one unit-circle point")
    return out


def _disc(text: str) -> SymbolExpr:
    e = parse_symbol(text)
    if not isinstance(e, SymbolExpr):
        raise CheckError(f"{text!r} is not a disc symbol")
    return e


def _half(text: str) -> HalfPlaneRational:
    e = parse_symbol(text)
    if not isinstance(e, HalfPlaneRational):
        raise CheckError(f"{text!r} is not a half-plane function of s")
    return e


def _rational_inner(text: str) -> RationalFn:
    e = _disc(text)
    if not e.inner:
        raise CheckError(f"{text!r} is not inner")
    pr = e.phi_rational()
    if len(pr.terms) != 1 or pr.terms[0][1] != 0:
        raise CheckError(f"{text!r} must be a finite Blaschke product")
    return pr.terms[0][0]


def _auto(a_text: str) -> Automorphism:
    return Automorphism(complex(_num(a_text)), 1.0)


def _z_power_phi(k: int, delta) -> SymbolExpr:
    return Product.of(*([Automorphism(0, -1.0)] * k), SingularInner(float(delta)))


def _tol(cfg: Config, regime: str) -> float:
    return {
        "exact": cfg.tol_exact,
        "algebraic": cfg.tol_algebraic,
        "finite": cfg.tol_finite,
        "infinite": cfg.tol_infinite,
    }[regime]


def _compose_frame(frame: Frame, phi, tol: float = 1e-8) -> Frame:
    return map_frame(frame, lambda f: compose_apply(phi, f), tol)


def _multiply_frame(frame: Frame, symbol, tol: float = 1e-8) -> Frame:
    return map_frame(frame, lambda f: multiply(f, symbol), tol)


# ---------------------------------------------------------------------------
# two-sided protocol glue


def _run_protocol(cfg: Config, make_gen, make_target, **kw):
    return two_sided(
        make_gen,
        make_target,
        to_fraction(cfg.delta),
        contain_samples=cfg.lambda_samples,
        points=probe_points(seed=cfg.seed),
        dps=cfg.dps,
        **kw,
    )


def _protocol_outcome(res, cfg: Config, extra: dict | None = None, extra_pass: bool = True, notes: str = "") -> Outcome:
    idx = res.ladder.index(res.contain_samples)
    defects = {
        "containment": res.containment,
        "probe_at_samples": max(res.probe_defects[idx]),
        "probe_final": res.final_probe,
        "probe_monotone": 1.0 if res.monotone else 0.0,
        "ladder_top": float(res.ladder[-1]),
    }
    defects.update(extra or {})
    tols = {"containment": cfg.tol_contain, "probe_final": cfg.tol_infinite}
    ok = res.passes(cfg.tol_contain, cfg.tol_infinite) and extra_pass
    return Outcome(defects, tols, ok, notes)


def _disc_protocol(cfg: Config, h: PhiRational, theta: SymbolExpr, **kw):
    return _run_protocol(
        cfg,
        lambda ctx: disc_to_signal(h, ctx),
        lambda ctx: ModelSpace.from_disc(theta, ctx),
        **kw,
    )


def _halfplane_protocol(cfg: Config, g: HalfPlaneRational):
    """N(g) against G1 K_Theta with Theta = ((1-s)/(1+s))^n e^{-delta s}."""
    split = rational_split(g)
    G1 = split.G1.rational
    zeros = [(1, split.n)]
    if G1.equals(RationalFn.constant(G1.num[0] / G1.den[0], S)) and G1.deg_num == 0 and G1.deg_den == 0:
        res = _run_protocol(
            cfg,
            lambda ctx: laplace_to_signal(g, ctx),
            lambda ctx: ModelSpace.from_halfplane(zeros, cfg.delta, ctx),
        )
        return res, split, 1.0
    inv = RationalFn.constant(1, S) / G1
    factor = sup_on_axis(G1) * sup_on_axis(inv)
    res = _run_protocol(
        cfg,
        lambda ctx: laplace_to_signal(g, ctx),
        lambda ctx: ModelSpace.from_halfplane(zeros, cfg.delta, ctx, G1),
        contain_generator=lambda ctx: laplace_to_signal(split.G2, ctx),
        containment_factor=factor,
    )
    return res, split, factor


def _annihilator(cfg: Config, w: sp.Expr):
    """For w on the circle, w != 1: the explicit vector of K_{z^2 phi^delta} orthogonal to A(z+w).

    On (0, delta) it is e^{i cot(arg(w)/2) t}; on (delta, inf) it is
    (alpha + beta (t - delta)) e^{-(t - delta)}.  The three coefficients are the
    null vector of the orthogonality conditions at a few shifts; the residual over
    a fine shift grid certifies it.
    """
    ctx = make_context(None)
    th = float(sp.arg(w))
    c = 1.0 / np.tan(th / 2)
    d = to_fraction(cfg.delta)
    g = disc_to_signal(PhiRational.of(Z + w), ctx)
    parts = [
        Signal((Piece(Fraction(0), d, ((ctx.mpc(1), 0, ctx.mpc(-1j * c)),)),), ctx),
        Signal((Piece(d, None, ((ctx.mpc(1), 0, ctx.mpf(1)),)),), ctx),
        Signal((Piece(d, None, ((ctx.mpc(1), 1, ctx.mpf(1)),)),), ctx),
    ]
    A = np.array([[complex(g.shift(lam).inner(p)) for p in parts] for lam in lambda_grid(d, 9)])
    _, sv, vh = np.linalg.svd(A)
    v = vh[-1]
    h = parts[0].scale(v[0]) + parts[1].scale(v[1]) + parts[2].scale(v[2])
    hn, gn = h.norm(), g.norm()
    ortho = max(abs(complex(g.shift(lam).inner(h))) / (gn * hn) for lam in lambda_grid(d, 4 * cfg.lambda_samples + 1))
    target = ModelSpace.from_disc(_z_power_phi(2, cfg.delta), ctx)
    inside = target.distance(h)
    probes = [target.kernel((1 - p) / (1 + p)) for p in probe_points(seed=cfg.seed)]
    overlap = max(abs(complex(p.inner(h))) / (p.norm() * hn) for p in probes)
    return {"annihilator_orthogonality": ortho, "annihilator_in_target": inside, "annihilator_probe_overlap": overlap}


# ---------------------------------------------------------------------------
# composition operators and Toeplitz kernels


@register(
    "THM-FG",
    "composition by an automorphism maps a Toeplitz kernel onto a Toeplitz kernel",
    "C_psi(Ker T_F) versus the numeric kernel of T_G with G = (F o psi) psi / z, F = conj(z)^k",
    "finite",
    {"theta_degree": 3, "a": "1/2"},
    "gap",
)
def _thm_fg(p, cfg):
    N, k = cfg.order, p["theta_degree"]
    if k < 1:
        raise CheckError("theta_degree must be positive")
    psi = _auto(p["a"])
    F = ConjMonomial(k)
    source = numeric_kernel(toeplitz_matrix(F, N))
    image = _compose_frame(source.frame, psi)
    ker = numeric_kernel(toeplitz_matrix(pushforward_symbol(F, psi), N))
    _, _, gap = subspace_gap(image, ker.frame)
    dim_err = abs(image.dim - ker.frame.dim)
    tol = cfg.tol_finite
    return Outcome(
        {"gap": gap, "dim_mismatch": float(dim_err), "kernel_cut_ratio": ker.gap},
        {"gap": tol},
        gap <= tol and dim_err == 0,
    )


@register(
    "COR-EQUAL",
    "composition image of a model space as a weighted model space and as a Toeplitz kernel",
    "C_psi(K_theta) against (1 - conj(a) z) K_{theta o psi}, against Ker T_{(conj(theta) o psi) psi/z}, and strictly inside K_{z (theta o psi)}",
    "finite",
    {"theta": "z^3", "a": "1/2"},
    "gap_weighted",
)
def _cor_equal(p, cfg):
    N = cfg.order
    R = _rational_inner(p["theta"])
    theta = Rational(R)
    psi = _auto(p["a"])
    image = _compose_frame(model_space_frame(theta, N), psi)
    comp = Compose(theta, psi)
    weighted = _multiply_frame(model_space_frame(comp, N), Rational(RationalFn.from_coeffs([1, -np.conj(psi.a)])))
    ker = numeric_kernel(toeplitz_matrix(pushforward_symbol(ConjOnT(theta), psi), N))
    big = model_space_frame(Product.of(Automorphism(0, -1.0), comp), N)
    g1 = subspace_gap(image, weighted)[2]
    g2 = subspace_gap(image, ker.frame)[2]
    inside = directed_defect(image, big)
    strict = big.dim - image.dim
    tol = cfg.tol_finite
    return Outcome(
        {"gap_weighted": g1, "gap_kernel": g2, "containment_in_larger_model": inside, "codimension_in_larger_model": float(strict)},
        {"gap": tol},
        max(g1, g2, inside) <= tol and strict >= 1,
    )


@register(
    "UNITARY-GMR",
    "weighted composition is unitary between model spaces",
    "Gram matrix of sqrt(psi') C_psi applied to an orthonormal frame of K_theta, and its span against K_{theta o psi}",
    "finite",
    {"theta": "z^3", "a": "1/2"},
    "gram_deviation",
)
def _unitary(p, cfg):
    N = cfg.order
    theta = Rational(_rational_inner(p["theta"]))
    psi = _auto(p["a"])
    K = model_space_frame(theta, N)
    w = SqrtDerivative(psi)
    cols = np.column_stack([multiply(compose_apply(psi, f), w).coeffs for f in K.columns()])
    gram = cols.conj().T @ cols
    dev = float(np.max(np.abs(gram - np.eye(K.dim))))
    image = orthonormalize(cols)
    gap = subspace_gap(image, model_space_frame(Compose(theta, psi), N))[2]
    tol = cfg.tol_finite
    return Outcome({"gram_deviation": dev, "gap": gap}, {"gram_deviation": tol, "gap": tol}, dev <= tol and gap <= tol)


def _complement(big: Frame, sub: Frame) -> np.ndarray:
    X = big.basis.conj().T @ sub.basis
    C = scipy.linalg.null_space(X.conj().T) if X.shape[1] else np.eye(big.dim)
    return big.basis @ C


@register(
    "PROP-SUB",
    "orthogonal complement of a composition image inside the enlarged model space",
    "K_{z (theta o psi)} minus C_psi(K_theta) is one-dimensional and spanned by (z theta(psi) - a theta(0)) / (z - a)",
    "finite",
    {"theta": "blaschke(1/2)*blaschke(-1/4)", "a": "1/3"},
    "angle",
)
def _prop_sub(p, cfg):
    N = cfg.order
    theta = Rational(_rational_inner(p["theta"]))
    psi = _auto(p["a"])
    image = _compose_frame(model_space_frame(theta, N), psi)
    big = model_space_frame(Product.of(Automorphism(0, -1.0), Compose(theta, psi)), N)
    comp = _complement(big, image)
    v = complement_vector(theta, psi, N).coeffs
    angle = Frame(comp).distance(v) if comp.shape[1] == 1 else 1.0
    inside = directed_defect(image, big)
    tol = cfg.tol_finite
    return Outcome(
        {"angle": angle, "containment": inside, "complement_dim_error": float(abs(comp.shape[1] - 1))},
        {"angle": tol, "containment": tol},
        angle <= tol and inside <= tol and comp.shape[1] == 1,
    )


@register(
    "EXM-CBKB",
    "self-composition of a Blaschke factor model space",
    "C_b(K_b) is spanned by 1 - conj(a) z, equals Ker T_{b/z^2}, and its complement in K_{z^2} is spanned by z + a",
    "finite",
    {"a": "1/2"},
    "complement_angle",
)
def _exm_cbkb(p, cfg):
    N = cfg.order
    b = _auto(p["a"])
    a = complex(b.a)
    image = _compose_frame(model_space_frame(b, N), b)
    line = np.zeros(N, dtype=complex)
    line[:2] = [1, -np.conj(a)]
    span_angle = image.distance(line)
    ker = numeric_kernel(toeplitz_matrix(Product.of(b, ConjMonomial(2)), N))
    kgap = subspace_gap(image, ker.frame)[2]
    comp = _complement(model_space_frame(Automorphism(0, -1.0) ** 2, N), image)
    target = np.zeros(N, dtype=complex)
    target[:2] = [a, 1]
    angle = Frame(comp).distance(target) if comp.shape[1] == 1 else 1.0
    formula = complement_vector(b, b, N).coeffs
    fangle = Frame(comp).distance(formula) if comp.shape[1] == 1 else 1.0
    return Outcome(
        {"image_angle": span_angle, "kernel_gap": kgap, "complement_angle": angle, "formula_angle": fangle},
        {"angle": ANGLE_TOL, "kernel_gap": cfg.tol_finite},
        max(span_angle, angle, fangle) <= ANGLE_TOL and kgap <= cfg.tol_finite,
    )


def _hitt_frame(u: SymbolExpr, theta: SymbolExpr, psi: Automorphism, N: int) -> Frame:
    """C_psi(u K_theta) = (u o psi) C_psi(K_theta)."""
    uk = _multiply_frame(model_space_frame(theta, N), u)
    return _compose_frame(uk, psi)


@register(
    "THM-TPSI",
    "Hitt-type description of nearly T_psi^{-1}-invariant subspaces",
    "(u o psi) C_psi(K_theta) has zero division defect for psi and matches its explicit model-space form",
    "finite",
    {"u": "2+z", "theta": "z^2", "a": "1/2"},
    "near_div",
)
def _thm_tpsi(p, cfg):
    N = cfg.order
    u = _disc(p["u"])
    if abs(u.at_zero()) < 1e-12:
        raise CheckError("u must not vanish at 0")
    R = _rational_inner(p["theta"])
    theta = Rational(R)
    psi = _auto(p["a"])
    M = _hitt_frame(u, theta, psi, N)
    defect = near_div_defect(M, [psi])
    comp = Compose(theta, psi).phi_rational().terms[0][0]
    if abs(complex(R(0.0))) < 1e-14:
        form = Rational(RationalFn.from_expr(Z, Z) * comp / psi.rational())
        explicit = model_space_frame(form, N)
    else:
        explicit = _multiply_frame(model_space_frame(Rational(comp), N), Rational(RationalFn.from_coeffs([1, -np.conj(psi.a)])))
    explicit = _multiply_frame(explicit, Compose(u, psi))
    gap = subspace_gap(M, explicit)[2]
    tol = cfg.tol_finite
    return Outcome({"near_div": defect, "form_gap": gap}, {"near_div": tol, "form_gap": tol}, defect <= tol and gap <= tol)


@register(
    "THM-DISCRETE",
    "nearly invariant subspaces for a semigroup generated by two automorphisms",
    "(u o psi1) C_psi1(K_theta) is invariant for both generators when u(psi1(a2)) != 0 and fails for psi2 when u vanishes there",
    "mixed",
    {"a1": "1/2", "a2": "-1/3", "u_good": "2+z", "theta": "z^2"},
    "negative_defect",
)
def _thm_discrete(p, cfg):
    N = cfg.order
    psi1, psi2 = _auto(p["a1"]), _auto(p["a2"])
    if abs(psi1.a - psi2.a) < 1e-12:
        raise CheckError("the two automorphisms need distinct zeros")
    theta = Rational(_rational_inner(p["theta"]))
    good = _disc(p["u_good"])
    crit = complex(psi1(psi2.a))
    if abs(good(np.complex128(crit))) < 1e-8 or abs(good.at_zero()) < 1e-12:
        raise CheckError("u_good must not vanish at 0 or at psi1(a2)")
    bad = Rational(RationalFn.from_coeffs([-crit, 1]))
    pos = near_div_defect(_hitt_frame(good, theta, psi1, N), [psi1, psi2])
    neg = near_div_defect(_hitt_frame(bad, theta, psi1, N), [psi2])
    return Outcome(
        {"positive_defect": pos, "negative_defect": neg},
        {"positive_defect": cfg.tol_finite, "negative_floor": cfg.negative_floor},
        pos <= cfg.tol_finite and neg >= cfg.negative_floor,
    )


def _composition_image(phi: SymbolExpr, theta_text: str, N: int) -> Frame:
    theta = Rational(_rational_inner(theta_text))
    return _compose_frame(model_space_frame(theta, N), phi)


@register(
    "THM-CPHI-NEG",
    "composition by a non-automorphism inner function destroys near backward-shift invariance",
    "near S^* defect of C_phi(K_theta) for inner phi that is not an automorphism",
    "negative",
    {"phi": "z^2", "theta": "z^2"},
    "near_sstar",
)
def _thm_cphi(p, cfg):
    phi = _disc(p["phi"])
    if not phi.inner:
        raise CheckError("phi must be inner")
    M = _composition_image(phi, p["theta"], cfg.order)
    if M.dim < 2:
        raise CheckError("the image must have dimension at least 2")
    d = near_sstar_defect(M)
    return Outcome({"near_sstar": d}, {"negative_floor": cfg.negative_floor}, d >= cfg.negative_floor)


@register(
    "THM-AUTO-IFF",
    "composition image of a Toeplitz kernel is nearly backward-shift invariant exactly for automorphisms",
    "near S^* defect of C_phi(Ker T_F) is zero for an automorphism and bounded below for a non-automorphism",
    "mixed",
    {"F": "conj(z)^3", "auto": "blaschke(1/2)", "nonauto": "z*blaschke(1/2)"},
    "nonauto_defect",
)
def _thm_auto_iff(p, cfg):
    N = cfg.order
    F = _disc(p["F"])
    auto = _disc(p["auto"])
    nonauto = _disc(p["nonauto"])
    if not isinstance(auto, Automorphism):
        raise CheckError("auto must be an automorphism")
    if not nonauto.inner:
        raise CheckError("nonauto must be inner")
    ker = numeric_kernel(toeplitz_matrix(F, N)).frame
    if ker.dim < 2:
        raise CheckError("Ker T_F must have dimension at least 2")
    d_auto = near_sstar_defect(_compose_frame(ker, auto))
    d_non = near_sstar_defect(_compose_frame(ker, nonauto))
    return Outcome(
        {"auto_defect": d_auto, "nonauto_defect": d_non},
        {"auto_defect": cfg.tol_finite, "negative_floor": cfg.negative_floor},
        d_auto <= cfg.tol_finite and d_non >= cfg.negative_floor,
    )


@register(
    "COR-TM",
    "composition by a non-automorphism does not produce a model space or a Toeplitz kernel",
    "backward-shift invariance defect and near S^* defect of C_phi(K_theta)",
    "negative",
    {"phi": "z*blaschke(1/2)", "theta": "z^2"},
    "sstar_defect",
)
def _cor_tm(p, cfg):
    phi = _disc(p["phi"])
    if not phi.inner:
        raise CheckError("phi must be inner")
    M = _composition_image(phi, p["theta"], cfg.order)
    images = np.column_stack([backward_shift(f).coeffs for f in M.columns()])
    R = images - M.basis @ (M.basis.conj().T @ images)
    inv = float(np.linalg.norm(R, 2))
    near = near_sstar_defect(M)
    floor = cfg.negative_floor
    return Outcome({"sstar_defect": inv, "near_sstar": near}, {"negative_floor": floor}, inv >= floor and near >= floor)


@register(
    "MINKERNEL",
    "minimal Toeplitz kernel of a function",
    "Ker T_{conj(z) conj(I O)/O} for a polynomial f = I O contains f, lies in every polynomial model space containing f, and has dimension 1 + #zeros in the closed disc",
    "finite",
    {"f": "z*(z-2)*(z+1)"},
    "f_distance",
)
def _minkernel(p, cfg):
    N = cfg.order
    e = _disc(p["f"])
    pr = e.phi_rational()
    R = pr.terms[0][0]
    if len(pr.terms) != 1 or pr.terms[0][1] != 0 or R.deg_den != 0:
        raise CheckError("f must be a polynomial in z")
    inner, outer = inner_outer_rational(R)
    O = Rational(outer)
    symbol = Product.of(ConjMonomial(1), ConjOnT(inner), ConjOnT(O), Rational(RationalFn.constant(1) / outer))
    ker = numeric_kernel(toeplitz_matrix(symbol, N))
    f = HardyFunction(np.pad(np.asarray(R._num_np, dtype=complex), (0, N - R.deg_num - 1)))
    fd = ker.frame.distance(f)
    d = R.deg_num
    inside = directed_defect(ker.frame, model_space_frame(Automorphism(0, -1.0) ** (d + 1), N))
    expected = 1 + sum(m for r, m in R.zeros() if classify_circle(r) != "outside")
    dim_err = abs(ker.frame.dim - expected)
    tol = cfg.tol_finite
    return Outcome(
        {"f_distance": fd, "containment_in_polynomials": inside, "dim_mismatch": float(dim_err), "kernel_cut_ratio": ker.gap},
        {"f_distance": tol, "containment": tol},
        fd <= tol and inside <= tol and dim_err == 0,
    )


@register(
    "LEM-U12",
    "model space of a product splits as an orthogonal sum",
    "K_{theta1 theta2} against K_theta1 plus theta1 K_theta2, with the orthogonality of the two summands",
    "finite",
    {"theta1": "z*blaschke(1/2)", "theta2": "blaschke(-1/4)^2"},
    "gap",
)
def _lem_u12(p, cfg):
    N = cfg.order
    t1 = Rational(_rational_inner(p["theta1"]))
    t2 = Rational(_rational_inner(p["theta2"]))
    K1 = model_space_frame(t1, N)
    K2 = _multiply_frame(model_space_frame(t2, N), t1)
    both = np.column_stack([K1.basis, K2.basis])
    cross = float(np.max(np.abs(K1.basis.conj().T @ K2.basis))) if K1.dim and K2.dim else 0.0
    gap = subspace_gap(orthonormalize(both), model_space_frame(Product.of(t1, t2), N))[2]
    tol = cfg.tol_finite
    return Outcome({"gap": gap, "cross_inner_products": cross}, {"gap": tol, "orthogonality": tol}, gap <= tol and cross <= tol)


def _polynomial(text: str) -> list:
    e = _disc(text)
    pr = e.phi_rational()
    R = pr.terms[0][0]
    if len(pr.terms) != 1 or pr.terms[0][1] != 0 or R.deg_den != 0:
        raise CheckError("phi must be a polynomial in z")
    return [complex(c) for c in R._num_np]


def _model_space_test_vectors(target: ModelSpace, cfg: Config, ctx) -> list:
    """Reproducing kernels at the probe points plus polynomial pieces on (0, delay)."""
    vecs = [target.kernel((1 - w) / (1 + w)) for w in probe_points(seed=cfg.seed)]
    d = target.delay
    if d > 0:
        for j in range(8):
            a, b = d * j / 8, d * (j + 1) / 8
            for k in range(2):
                vecs.append(Signal((Piece(a, b, ((ctx.mpc(1), k, ctx.mpf(0)),)),), ctx))
    return vecs


@register(
    "LEM-HINF",
    "co-analytic Toeplitz operators leave model spaces invariant",
    "relative distance of T_{conj(phi)} f from K_theta for test vectors f of K_theta, computed in the exact time-domain engine",
    "finite",
    {"phi": "1+z/2", "theta": "z^3*phi(1)"},
    "max_distance",
)
def _lem_hinf(p, cfg):
    coeffs = _polynomial(p["phi"])
    theta = _disc(p["theta"])
    ctx = make_context(None)
    target = ModelSpace.from_disc(theta, ctx)
    worst = 0.0
    for f in _model_space_test_vectors(target, cfg, ctx):
        out = f.scale(np.conj(coeffs[0]))
        g = f
        for c in coeffs[1:]:
            g = disc_backward_shift(g)
            out = out + g.scale(np.conj(c))
        worst = max(worst, target.distance(out))
    return Outcome({"max_distance": worst}, {"max_distance": cfg.tol_finite}, worst <= cfg.tol_finite)


# ---------------------------------------------------------------------------
# cyclic subspaces: exact time-domain engine


@register(
    "PROP-L2",
    "shifted decaying exponentials span L^2(0, delta) plus one exponential",
    "shift span of e^{-t} against L^2(0, delta) + C e^{-(t - delta)} on (delta, inf), probed by the indicators of 32 equal subintervals of (0, delta) and by e^{-t}",
    "infinite",
    {},
    "probe_at_samples",
)
def _prop_l2(p, cfg):
    d = to_fraction(cfg.delta)
    cells = 32

    def probes(ctx):
        out = [Signal((Piece(Fraction(0), None, ((ctx.mpc(1), 0, ctx.mpf(1)),)),), ctx)]
        for j in range(cells):
            out.append(Signal((Piece(d * j / cells, d * (j + 1) / cells, ((ctx.mpc(1), 0, ctx.mpf(0)),)),), ctx))
        return out

    # grids with a multiple of 32 intervals put every indicator endpoint on a shift
    intervals = cells * -(-cfg.lambda_samples // cells)
    res = two_sided(
        lambda ctx: laplace_to_signal(HalfPlaneRational.of(1 / (1 + S)), ctx),
        lambda ctx: ModelSpace.from_halfplane([(1, 1)], d, ctx),
        d,
        contain_samples=intervals + 1,
        ladder=tuple(cells * 2**j + 1 for j in range(5)),
        grid="uniform",
        probe_factory=probes,
    )
    return _protocol_outcome(res, cfg, notes=f"containment at {intervals + 1} shifts")


@register(
    "COR-HALF",
    "cyclic span of 1/(1+s) under the half-plane shift semigroup",
    "N(1/(1+s)) against the model space of ((1-s)/(1+s)) e^{-delta s}",
    "infinite",
    {},
    "probe_at_samples",
)
def _cor_half(p, cfg):
    res, _, _ = _halfplane_protocol(cfg, HalfPlaneRational.of(1 / (1 + S)))
    return _protocol_outcome(res, cfg)


@register(
    "COR-PHIDELTA",
    "cyclic span of the constant under the singular inner semigroup",
    "A(1) against K_{z phi^delta}, plus the distance of each phi^lambda from the model space",
    "infinite",
    {},
    "probe_at_samples",
)
def _cor_phidelta(p, cfg):
    theta = _z_power_phi(1, cfg.delta)
    res = _disc_protocol(cfg, PhiRational.one(), theta)
    ctx = make_context(None)
    target = ModelSpace.from_disc(theta, ctx)
    one = disc_to_signal(PhiRational.one(), ctx)
    worst = max(target.distance(one.shift(lam)) for lam in lambda_grid(to_fraction(cfg.delta), cfg.lambda_samples))
    return _protocol_outcome(res, cfg, {"phi_lambda_distance": worst}, worst <= cfg.tol_finite)


@register(
    "THM-N-DISC",
    "cyclic span of (1+z)^n under the singular inner semigroup",
    "A((1+z)^n) against K_{z^{n+1} phi^delta}",
    "infinite",
    {"n": 1},
    "probe_at_samples",
)
def _thm_n_disc(p, cfg):
    n = p["n"]
    if n < 0:
        raise CheckError("n must be nonnegative")
    res = _disc_protocol(cfg, PhiRational.of((1 + Z) ** n), _z_power_phi(n + 1, cfg.delta))
    return _protocol_outcome(res, cfg)


@register(
    "THM-N-HALF",
    "cyclic span of 1/(1+s)^{n+1} under the half-plane shift semigroup",
    "N(1/(1+s)^{n+1}) against the model space of ((1-s)/(1+s))^{n+1} e^{-delta s}",
    "infinite",
    {"n": 1},
    "probe_at_samples",
)
def _thm_n_half(p, cfg):
    n = p["n"]
    if n < 0:
        raise CheckError("n must be nonnegative")
    res, _, _ = _halfplane_protocol(cfg, HalfPlaneRational.of(1 / (1 + S) ** (n + 1)))
    return _protocol_outcome(res, cfg)


def _circle_product(ws) -> sp.Expr:
    out = sp.Integer(1)
    for w in ws:
        out *= Z + w
    return out


@register(
    "PROP-POLY",
    "cyclic span of a product of circle-vanishing factors plus a shifted polynomial model space",
    "A(prod (z + w_j)) + phi^delta K_{z^n} against K_{z^{n+1} phi^delta}",
    "infinite",
    {"w": "1,-1"},
    "probe_at_samples",
)
def _prop_poly(p, cfg):
    ws = _unit_list(p["w"])
    n = len(ws)
    h = PhiRational.of(_circle_product(ws))
    delta = to_exact(cfg.delta)

    def extras(ctx):
        return [disc_to_signal(PhiRational.of(Z**j).shift(delta), ctx) for j in range(n)]

    res = _disc_protocol(cfg, h, _z_power_phi(n + 1, cfg.delta), extras_factory=extras)
    return _protocol_outcome(res, cfg)


@register(
    "PROP-ZW",
    "cyclic span of z + w for w on the circle",
    "A(z + w) against K_{z^2 phi^delta}; for w != 1 also an explicit vector of the target orthogonal to A(z + w)",
    "infinite",
    {"w": "1"},
    "probe_at_samples",
)
def _prop_zw(p, cfg):
    (w,) = _unit_list(p["w"])
    res = _disc_protocol(cfg, PhiRational.of(Z + w), _z_power_phi(2, cfg.delta))
    extra, notes = {}, ""
    if abs(complex(w) - 1) > 1e-12:
        extra = _annihilator(cfg, w)
        if max(extra["annihilator_orthogonality"], extra["annihilator_in_target"]) <= cfg.tol_finite:
            notes = (
                "a nonzero vector of the target is orthogonal to every shift of z + w; "
                f"probe defects are bounded below by {extra['annihilator_probe_overlap']:.3g}"
            )
    return _protocol_outcome(res, cfg, extra, notes=notes)


@register(
    "PROP-PN",
    "cyclic span of a product of circle-vanishing factors",
    "A(prod (z + w_j)) against K_{z^{n+1} phi^delta}",
    "infinite",
    {"w": "1,-1"},
    "probe_at_samples",
)
def _prop_pn(p, cfg):
    ws = _unit_list(p["w"])
    res = _disc_protocol(cfg, PhiRational.of(_circle_product(ws)), _z_power_phi(len(ws) + 1, cfg.delta))
    return _protocol_outcome(res, cfg)


@register(
    "THM-RATOUTER",
    "cyclic span of a circle-vanishing polynomial times an invertible rational function",
    "A(p q) against q K_{z^{n+1} phi^delta}, with containment certified through the division by q",
    "infinite",
    {"w": "1", "q": "(z+2)/(3-z)"},
    "probe_at_samples",
)
def _thm_ratouter(p, cfg):
    ws = _unit_list(p["w"])
    q = _disc(p["q"])
    pr = q.phi_rational()
    if len(pr.terms) != 1 or pr.terms[0][1] != 0:
        raise CheckError("q must be rational")
    Q = pr.terms[0][0]
    for r, _ in Q.zeros() + Q.poles():
        if classify_circle(r) == "on":
            raise CheckError("q must be invertible on the circle")
    n = len(ws)
    poly = _circle_product(ws)
    h = PhiRational.of(poly * Q.expr())
    Qs = RationalFn.from_expr(Q.expr().subs(Z, (1 - S) / (1 + S)), S)
    factor = sup_on_axis(Qs) * sup_on_axis(RationalFn.constant(1, S) / Qs)
    theta = _z_power_phi(n + 1, cfg.delta)
    res = _run_protocol(
        cfg,
        lambda ctx: disc_to_signal(h, ctx),
        lambda ctx: replace(ModelSpace.from_disc(theta, ctx), multiplier=Qs),
        contain_generator=lambda ctx: disc_to_signal(PhiRational.of(poly), ctx),
        containment_factor=factor,
    )
    return _protocol_outcome(res, cfg, {"multiplier_condition": factor})


@register(
    "PROP-IMAXIS",
    "cyclic span of a half-plane rational function with zeros on the imaginary axis",
    "N(prod (s - y_k) / (1+s)^n) against the model space of ((1-s)/(1+s))^n e^{-delta s}",
    "infinite",
    {"g": "(s^2+1)/(1+s)^3"},
    "probe_at_samples",
)
def _prop_imaxis(p, cfg):
    g = _half(p["g"])
    split = rational_split(g)
    if split.m < 1:
        raise CheckError("g must have at least one zero on the imaginary axis")
    res, _, factor = _halfplane_protocol(cfg, g)
    return _protocol_outcome(res, cfg, {"axis_zeros": float(split.m), "multiplier_condition": factor})


@register(
    "THM-GENERAL",
    "cyclic span of a rational outer function in the half-plane",
    "N(g) against G1 K_{((1-s)/(1+s))^n e^{-delta s}} with g = G1 G2 split off the imaginary-axis zeros",
    "infinite",
    {"g": "((1+s)^3-1)/(s*(1+s)^3)"},
    "probe_at_samples",
)
def _thm_general(p, cfg):
    g = _half(p["g"])
    res, split, factor = _halfplane_protocol(cfg, g)
    return _protocol_outcome(res, cfg, {"axis_zeros": float(split.m), "degree_n": float(split.n), "multiplier_condition": factor})


@register(
    "EXM-INVERT",
    "cyclic span of (s+3)/((1+s)(s+2)) and why it is not a model space",
    "N((s+3)/((1+s)(s+2))) against ((s+3)/(s+2)) K_{((1-s)/(1+s)) e^{-delta s}}, and the pole of theta G / conj(G) in the right half-plane",
    "mixed",
    {},
    "probe_at_samples",
)
def _exm_invert(p, cfg):
    g = HalfPlaneRational.of((S + 3) / ((1 + S) * (S + 2)))
    res, split, factor = _halfplane_protocol(cfg, g)
    theta = HalfPlaneRational.of((1 - S) / (1 + S), to_exact(cfg.delta))
    obs = inner_obstruction(theta, split.G1.rational)
    pole = obs["max_pole_real_part"]
    witness = max(pole, obs["modulus_excess"])
    return _protocol_outcome(
        res,
        cfg,
        {"obstruction_pole_real_part": pole, "obstruction_modulus_excess": obs["modulus_excess"], "multiplier_condition": factor},
        witness >= cfg.negative_floor,
    )


@register(
    "EXM-S2",
    "cyclic span of 1/((1+s)(s+2))",
    "N(1/((1+s)(s+2))) against the model space of ((1-s)/(1+s)) ((2-s)/(2+s)) e^{-delta s}",
    "infinite",
    {},
    "probe_at_samples",
)
def _exm_s2(p, cfg):
    g = HalfPlaneRational.of(1 / ((1 + S) * (S + 2)))
    res = _run_protocol(
        cfg,
        lambda ctx: laplace_to_signal(g, ctx),
        lambda ctx: ModelSpace.from_halfplane([(1, 1), (2, 1)], cfg.delta, ctx),
    )
    return _protocol_outcome(res, cfg)


@register(
    "REM-CROFOOT",
    "multiplying a model space by a rational outer factor gives a model space",
    "k K_theta = K_{theta k / conj(k)}: the inner test of theta k / conj(k), then A((1+z)^{d-1} k) against that model space",
    "infinite",
    {"k": "1/(1+z/3)", "d": 2},
    "probe_at_samples",
)
def _rem_crofoot(p, cfg):
    d = p["d"]
    if d < 1:
        raise CheckError("d must be positive")
    k = _disc(p["k"])
    pr = k.phi_rational()
    if len(pr.terms) != 1 or pr.terms[0][1] != 0:
        raise CheckError("k must be rational")
    Kr = pr.terms[0][0]
    ratio = RationalFn.from_expr(Z**d, Z) * Kr / Kr.conj_on_circle()
    bad_poles = [r for r, _ in ratio.poles() if classify_circle(r) != "outside"]
    defects = {"inner_pole_count": float(len(bad_poles))}
    if bad_poles:
        return Outcome(
            defects,
            {"inner_pole_count": 0.0},
            False,
            f"theta k / conj(k) has poles {bad_poles} in the closed disc, so it is not inner",
        )
    theta = Product.of(Rational(ratio), SingularInner(float(cfg.delta)))
    h = PhiRational.of((1 + Z) ** (d - 1) * Kr.expr())
    res = _disc_protocol(cfg, h, theta)
    out = _protocol_outcome(res, cfg, defects)
    return out


@register(
    "LEM-GS",
    "s g(s) e^{-st} lies in the local shift span of g",
    "distance of s g(s) e^{-t s} from span{g e^{-lambda s} : |lambda - t| <= eps} decreases to zero under doubling of the sample count at a positive algebraic rate",
    "infinite",
    {"g": "1/(1+s)^2", "t": 1.0, "eps": 0.25},
    "observed_rate",
)
def _lem_gs(p, cfg):
    g = _half(p["g"])
    if g.delay != 0:
        raise CheckError("g must be rational")
    sg = HalfPlaneRational(g.rational * RationalFn.from_expr(S, S))
    sg.require_h2()
    t, eps = to_fraction(p["t"]), to_fraction(p["eps"])
    if not 0 < eps <= t:
        raise CheckError("need 0 < eps <= t")
    ctx = make_context(cfg.dps)
    gen = laplace_to_signal(HalfPlaneRational(g.rational, to_exact(t - eps)), ctx)
    target = laplace_to_signal(HalfPlaneRational(sg.rational, to_exact(t)), ctx)
    n2 = target.norm2()
    ladder = (8, 16, 32, 64, 128)
    dists = [ShiftFamily(gen, lambda_grid(2 * eps, M, "uniform")).distance(target, n2) for M in ladder]
    mono = all(b <= a * (1 + 1e-9) + 1e-14 for a, b in zip(dists, dists[1:]))
    # least-squares slope of log distance against log spacing
    rate = float(np.polyfit(np.log([1.0 / (M - 1) for M in ladder]), np.log(np.maximum(dists, 1e-300)), 1)[0])
    return Outcome(
        {"distance_final": dists[-1], "observed_rate": rate, "monotone": 1.0 if mono else 0.0},
        {"min_rate": MIN_RATE},
        mono and rate >= MIN_RATE,
        "a jump of s g(s) at t limits the uniform-grid rate to one half",
    )


# ---------------------------------------------------------------------------
# exact and algebraic identities in the half-plane


@register(
    "EXM-FM-EXACT",
    "closed form of the F_m multiplier and exact Laplace transforms of the test families",
    "sum_{k<=m} (1+s)^{-(k+1)} = ((1+s)^{m+1} - 1)/(s (1+s)^{m+1}) for every m up to the parameter, and the transforms of e_delta, f_{delta,n} (n <= 4) and f_m",
    "exact",
    {"m": 8},
    "mismatches",
)
def _exm_fm(p, cfg):
    m = p["m"]
    if m < 1:
        raise CheckError("m must be positive")
    delta = to_exact(cfg.delta)
    bad = 0
    for j in range(1, m + 1):
        lhs, rhs = fm_closed_form(j)
        bad += not lhs.equals(rhs)
    scale = sp.exp(-delta)
    e = laplace_exact(sample_family("e_delta", delta=delta))
    bad += not e.equals(HalfPlaneSum((HalfPlaneRational(RationalFn.from_expr(scale / (1 + S), S), delta),)))
    for n in range(5):
        f = laplace_exact(sample_family("f_delta_n", delta=delta, n=n))
        want = HalfPlaneRational(RationalFn.from_expr(scale / (1 + S) ** (n + 1), S), delta)
        bad += not f.equals(HalfPlaneSum((want,)))
    fm = laplace_exact(sample_family("f_m", delta=delta, m=m))
    _, closed = fm_closed_form(m)
    bad += not fm.equals(HalfPlaneSum((HalfPlaneRational(closed * RationalFn.constant(scale, S), delta),)))
    return Outcome({"mismatches": float(bad)}, {"mismatches": cfg.tol_exact}, bad <= cfg.tol_exact)


@register(
    "VMAP",
    "the Cayley isometry from the half-plane to the disc",
    "V^{-1} on closed-form examples, norm preservation on a rational test family, and V^{-1}(e^{-lambda s} g) = phi^lambda V^{-1} g on the grid",
    "mixed",
    {"lam": 0.5},
    "isometry",
)
def _vmap(p, cfg):
    N = cfg.order
    rp = np.sqrt(np.pi)
    c = v_inverse(HalfPlaneRational.of(1 / (1 + S)), N).coeffs.copy()
    c[0] -= rp
    const_err = float(np.linalg.norm(c))
    mono_err = 0.0
    for n in range(4):
        v = v_inverse(HalfPlaneRational.of(((1 - S) / (1 + S)) ** n / (1 + S)), N).coeffs.copy()
        v[n] -= rp
        mono_err = max(mono_err, float(np.linalg.norm(v)))
    ctx = make_context(None)
    family = [1 / (1 + S), 1 / (1 + S) ** 2, (S + 3) / ((1 + S) * (S + 2)), 1 / ((1 + S) * (S + 2)), S / (1 + S) ** 3]
    iso = 0.0
    inter = 0.0
    w = BoundaryGrid.for_order(N).nodes
    lam = to_exact(p["lam"])
    phi = SingularInner(float(p["lam"]))
    for expr in family:
        g = HalfPlaneRational.of(expr)
        half = np.sqrt(2 * np.pi * float(laplace_to_signal(g, ctx).norm2()))
        disc = v_inverse(g, N).norm()
        iso = max(iso, abs(disc - half) / half)
        base = cayley_pullback(g).symbol()(w)
        shifted = cayley_pullback(HalfPlaneRational(g.rational, lam)).symbol()(w)
        inter = max(inter, float(np.max(np.abs(shifted - phi(w) * base))))
    alg = cfg.tol_algebraic
    fin = cfg.tol_finite
    return Outcome(
        {"constant_example": const_err, "monomial_examples": mono_err, "isometry": iso, "intertwining": inter},
        {"algebraic": alg, "isometry": fin},
        max(const_err, mono_err, inter) <= alg and iso <= fin,
    )


@register(
    "KERNEL-REPRO",
    "reproducing kernels and derivative kernels of the half-plane Hardy space",
    "<f, 1/(2 pi (s + conj(w))^{n+1})> = (-1)^n f^{(n)}(w)/n! for n <= 3, evaluated exactly in the time domain",
    "algebraic",
    {"f": "(s+3)/((s+1)*(s+2)^2)", "w": "1"},
    "max_error",
)
def _kernel_repro(p, cfg):
    f = _half(p["f"])
    f.require_h2()
    w = _num(p["w"])
    if not sp.re(w) > 0:
        raise CheckError("w must lie in the right half-plane")
    ctx = make_context(30)
    F = laplace_to_signal(f, ctx)
    expr = f.expr()
    worst = 0.0
    for n in range(4):
        k = HalfPlaneRational.of(1 / (2 * sp.pi * (S + sp.conjugate(w)) ** (n + 1)))
        # half-plane pairing <f, k> = 2 pi <L^{-1} f, L^{-1} k>
        lhs = complex(2 * ctx.pi * F.inner(laplace_to_signal(k, ctx)))
        rhs = complex(sp.N((-1) ** n * sp.diff(expr, S, n).subs(S, w) / sp.factorial(n), 30))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return Outcome({"max_error": worst}, {"max_error": cfg.tol_algebraic}, worst <= cfg.tol_algebraic)


# ---------------------------------------------------------------------------
# sweeps

SWEEP_AXES = ("order", "lambda_samples")


@dataclass(frozen=True)
class SweepResult:
    id: str
    axis: str
    values: tuple
    reports: tuple
    monotone: bool
    watched: str


def sweep(check_id: str, params: dict | None, axis: str, values, config: Config | None = None) -> SweepResult:
    """Rerun one check along an increasing sequence of orders or sample counts.

    The watched defect is the check's primary defect; the sweep is monotone when
    it never grows (up to rounding) along the sequence.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}")
    values = tuple(int(v) for v in values)
    if len(values) < 2 or any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("sweep values must be at least two strictly increasing integers")
    spec = get_check(check_id)
    cfg = config or Config()
    reports = tuple(run_check(check_id, params, cfg.with_overrides(**{axis: v})) for v in values)
    seq = [float(r.defects.get(spec.primary, np.nan)) for r in reports]
    mono = all(np.isfinite(seq)) and all(b <= a * (1 + 1e-6) + 1e-14 for a, b in zip(seq, seq[1:]))
    return SweepResult(check_id, axis, values, reports, bool(mono), spec.primary)
