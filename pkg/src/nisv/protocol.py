"""Two-sided comparison of a cyclic span with a model space.

A cyclic span ``span{S_lambda g : 0 <= lambda <= delta}`` is approximated from
inside by finitely many shifts, so it is compared with its predicted closure
asymmetrically:

1. containment: every unit vector of the finite span lies within ``tol_contain``
   of the target;
2. probes: reproducing kernels of the target at seeded points have distances to
   the finite span that decrease under doubling of the shift count and end below
   ``tol_probe``.

Generators that vanish at t = 0 are smooth across their left edge, and their
shift spans resolve the target's boundary layers only on grids clustered at both
ends of [0, delta].  Those use a graded grid and extended precision.  Generators
with a jump at t = 0 converge at first order on any grid and use a uniform grid
in double precision with a longer doubling ladder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .timedomain import ModelSpace, ShiftFamily, Signal, make_context, to_fraction

GRADING = 5
SMOOTH_LADDER = (8, 16, 32, 64)
JUMP_LADDER = (8, 16, 32, 64, 128, 256, 512)


def lambda_grid(delta, M: int, kind: str = "uniform", grading: int = GRADING) -> list[Fraction]:
    """M exact shift positions in [0, delta]; M = 1 gives {0}."""
    delta = to_fraction(delta)
    if M < 1:
        raise ValueError("need at least one sample")
    if M == 1:
        return [Fraction(0)]
    xs = [Fraction(j, M - 1) for j in range(M)]
    if kind == "uniform":
        return [delta * x for x in xs]
    if kind == "graded":
        p = int(grading)
        return [delta * x**p / (x**p + (1 - x) ** p) for x in xs]
    if kind == "chebyshev":
        return [delta * Fraction((1 - math.cos(math.pi * float(x))) / 2) for x in xs]
    raise ValueError(f"unknown grid kind {kind!r}")


def probe_points(count: int = 16, radius: float = 0.5, seed: int = 17) -> np.ndarray:
    """Seeded points uniformly distributed in the disc of the given radius."""
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0, 1, count)) * radius
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, count))


def disc_to_halfplane_point(w):
    return (1 - w) / (1 + w)


def vanishes_at_zero(g: Signal, rel: float = 1e-12) -> bool:
    return abs(complex(g.value_at_zero())) <= rel * max(g.norm(), 1e-300)


@dataclass(frozen=True)
class ProtocolResult:
    containment: float
    contain_samples: int
    ladder: tuple
    probe_defects: tuple  # one tuple of per-probe distances per ladder entry
    grid: str
    dps: int | None
    containment_factor: float = 1.0
    extras: dict = field(default_factory=dict)

    @property
    def max_probe(self) -> tuple:
        return tuple(max(d) for d in self.probe_defects)

    @property
    def final_probe(self) -> float:
        return self.max_probe[-1]

    @property
    def monotone(self) -> bool:
        for a, b in zip(self.probe_defects, self.probe_defects[1:]):
            for x, y in zip(a, b):
                if y > x * (1 + 1e-9) + 1e-14:
                    return False
        return True

    def passes(self, tol_contain: float, tol_probe: float) -> bool:
        return self.containment <= tol_contain and self.monotone and self.final_probe <= tol_probe


def two_sided(
    make_generator,
    target_factory,
    delta,
    contain_samples: int = 64,
    ladder: tuple | None = None,
    grid: str = "auto",
    points=None,
    contain_generator=None,
    containment_factor: float = 1.0,
    dps: int = 60,
    extras_factory=None,
    probe_factory=None,
) -> ProtocolResult:
    """Run the containment test and the probe ladder.

    ``make_generator(ctx)`` and ``target_factory(ctx)`` build the generator
    signal and the target space in a given arithmetic context.  When the target
    carries a multiplier G, ``contain_generator(ctx)`` must return the generator
    divided by G and ``containment_factor`` the product sup|G| sup|1/G|; the
    reported containment is then the certified bound
    dist(x, G K) <= sup|G| dist(x/G, K) <= factor * defect(x/G in K).

    ``extras_factory(ctx)`` adds fixed signals to every finite family, and
    ``probe_factory(ctx)`` replaces the reproducing-kernel probes.
    """
    probe_ctx = make_context(None)
    if grid == "auto":
        grid = "uniform" if not vanishes_at_zero(make_generator(probe_ctx)) else "graded"
    use_dps = dps if grid in ("graded", "chebyshev") else None
    ctx = make_context(use_dps)
    if ladder is None:
        ladder = SMOOTH_LADDER if grid != "uniform" else JUMP_LADDER
    ladder = tuple(sorted(set(ladder) | {contain_samples}))
    gen = make_generator(ctx)
    target = target_factory(ctx)
    extras = tuple(extras_factory(ctx)) if extras_factory is not None else ()
    if extras and target.multiplier is not None:
        raise ValueError("extra family members are not supported with a multiplier target")
    if probe_factory is not None:
        probes = list(probe_factory(ctx))
    else:
        pts = probe_points() if points is None else np.asarray(points)
        probes = [target.kernel(disc_to_halfplane_point(w)) for w in pts]
    norms = [p.norm2() for p in probes]
    defects = []
    contain = None
    for M in ladder:
        fam = ShiftFamily(gen, lambda_grid(delta, M, grid), extras=extras)
        defects.append(tuple(fam.distance(p, n) for p, n in zip(probes, norms)))
        if M == contain_samples:
            if target.multiplier is None:
                contain = fam.containment(target)
            else:
                inner = ModelSpace(target.zeros, target.delay, ctx)
                cfam = ShiftFamily(contain_generator(ctx), lambda_grid(delta, M, grid))
                contain = containment_factor * cfam.containment(inner)
    return ProtocolResult(
        containment=float(contain),
        contain_samples=contain_samples,
        ladder=ladder,
        probe_defects=tuple(defects),
        grid=grid,
        dps=use_dps,
        containment_factor=containment_factor,
    )
