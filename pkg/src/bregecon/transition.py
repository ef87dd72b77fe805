"""Transition costs, path integrals, and cost decompositions.

The cost of moving a weighted bundle from ``start`` to ``end`` is the
weighted divergence sum.  Integrating the pullback field along the
straight segment between the bundles reproduces that cost exactly, which
gives an independent cross-check used throughout the tests: the partial
integral up to ``lam`` equals the divergence of the partial point, so
the accumulated trace ends at the full transition cost.

Decompositions insert a pivot bundle and split the cost into two legs
plus a coupling term ``delta``; the pivot choices below zero the
coupling for transitions that start or end on the equal-input diagonal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateRatio,
    DimensionMismatch,
    DomainViolation,
    InvalidParams,
    NoBracket,
)
from .generators import Generator, VectorGenerator, divergence, divergence_vec
from .means import WeightedInputs, arithmetic_mean, bregman_mean
from .numerics import finite_diff, integrate, solve_scalar


def _paired(start, end) -> tuple:
    a = tuple(float(v) for v in start)
    b = tuple(float(v) for v in end)
    if len(a) != len(b):
        raise DimensionMismatch(
            f"start has {len(a)} entries, end has {len(b)}"
        )
    if not a:
        raise InvalidParams("bundles must be nonempty")
    return a, b


def _weights_for(m: int, weights) -> tuple:
    if weights is None:
        return (1.0,) * m
    w = tuple(float(g) for g in weights)
    if len(w) != m:
        raise DimensionMismatch(f"{m} inputs but {len(w)} weights")
    for g in w:
        if not (math.isfinite(g) and g > 0.0):
            raise InvalidParams(f"weights must be positive, got {g}")
    return w


def transition_cost(gen: Generator, start, end, weights=None) -> float:
    """Weighted divergence of the end bundle from the start bundle."""
    a, b = _paired(start, end)
    w = _weights_for(len(a), weights)
    return sum(
        g * divergence(gen, y, x) for g, x, y in zip(w, a, b)
    )


def path_integral(gen, x, y, n: int = 256) -> float:
    """Line integral of the divergence field along the straight segment.

    Scalar generators take floats; vector generators take length-``dim``
    arrays.  Equals the divergence of ``y`` from ``x`` up to quadrature
    error.
    """
    if isinstance(gen, VectorGenerator):
        xv = np.asarray(x, dtype=float)
        yv = np.asarray(y, dtype=float)
        if xv.shape != (gen.dim,) or yv.shape != (gen.dim,):
            raise DimensionMismatch(
                f"expected shape ({gen.dim},), got {xv.shape} and {yv.shape}"
            )
        base = gen.grad(xv)
        step = yv - xv

        def field(lam: float) -> float:
            return float(step @ (gen.grad(xv + lam * step) - base))

        return integrate(field, 0.0, 1.0, n)
    x0 = float(x)
    y0 = float(y)
    base_u = gen.u(x0)
    step0 = y0 - x0

    def field0(lam: float) -> float:
        return step0 * (gen.u(x0 + lam * step0) - base_u)

    return integrate(field0, 0.0, 1.0, n)


@dataclass(frozen=True)
class PathTrace:
    """Sampled straight-line transition with accumulated cost.

    ``field_values[k][i]`` is the weighted integrand of input ``i`` at
    ``lambdas[k]``; summing over inputs gives the derivative of
    ``cumulative_cost`` in ``lam``.
    """

    lambdas: tuple
    points: tuple
    field_values: tuple
    dual_points: tuple
    cumulative_cost: tuple
    weights: tuple


def trace_path(
    gen: Generator,
    start,
    end,
    weights=None,
    samples: int = 101,
    nsub: int = 64,
) -> PathTrace:
    a, b = _paired(start, end)
    if samples < 2:
        raise InvalidParams(f"samples must be at least 2, got {samples}")
    w = _weights_for(len(a), weights)
    base_u = tuple(gen.u(v) for v in a)
    for v in b:
        gen.u(v)
    steps = tuple(y - x for x, y in zip(a, b))

    def field(lam: float) -> float:
        return sum(
            g * s * (gen.u(x + lam * s) - u0)
            for g, s, x, u0 in zip(w, steps, a, base_u)
        )

    lambdas = []
    points = []
    fields = []
    duals = []
    cumulative = []
    running = 0.0
    prev_lam = 0.0
    for k in range(samples):
        lam = k / (samples - 1)
        z = tuple(x + lam * s for x, s in zip(a, steps))
        uz = tuple(gen.u(v) for v in z)
        v = tuple(
            g * s * (ui - u0) + 0.0
            for g, s, ui, u0 in zip(w, steps, uz, base_u)
        )
        if k > 0:
            running += integrate(field, prev_lam, lam, nsub)
        lambdas.append(lam)
        points.append(z)
        fields.append(v)
        duals.append(uz)
        cumulative.append(running)
        prev_lam = lam
    return PathTrace(
        lambdas=tuple(lambdas),
        points=tuple(points),
        field_values=tuple(fields),
        dual_points=tuple(duals),
        cumulative_cost=tuple(cumulative),
        weights=w,
    )


def trace_rows(trace: PathTrace) -> tuple:
    """Header and numeric rows for delimited output of a trace."""
    m = len(trace.weights)
    header = (
        "lambda",
        *(f"z_{i + 1}" for i in range(m)),
        *(f"v_{i + 1}" for i in range(m)),
        *(f"u_{i + 1}" for i in range(m)),
        "cumulative_cost",
    )
    rows = tuple(
        (lam, *z, *v, *u, c)
        for lam, z, v, u, c in zip(
            trace.lambdas,
            trace.points,
            trace.field_values,
            trace.dual_points,
            trace.cumulative_cost,
        )
    )
    return header, rows


@dataclass(frozen=True)
class TransitionDecomposition:
    """Split of a transition cost through a pivot bundle.

    total = term1 + term2 + delta with term1 the cost from the pivot to
    the end, term2 the cost from the start to the pivot, and delta the
    coupling between the two legs; ``via`` restates the right-hand side.
    """

    total: float
    via: float
    term1: float
    term2: float
    delta: float


def triangle_decompose(
    gen: Generator, start, end, pivot, weights=None
) -> TransitionDecomposition:
    a, b = _paired(start, end)
    z, _ = _paired(pivot, a)
    w = _weights_for(len(a), weights)
    total = sum(g * divergence(gen, y, x) for g, x, y in zip(w, a, b))
    term1 = sum(g * divergence(gen, y, p) for g, p, y in zip(w, z, b))
    term2 = sum(g * divergence(gen, p, x) for g, x, p in zip(w, a, z))
    delta = sum(
        g * (y - p) * (gen.u(p) - gen.u(x))
        for g, x, y, p in zip(w, a, b, z)
    )
    return TransitionDecomposition(
        total=total,
        via=term1 + term2 + delta,
        term1=term1,
        term2=term2,
        delta=delta,
    )


def pivot_bundle(
    gen: Generator, start, end, weights=None, side: str = "left"
) -> tuple:
    """Equal-input pivot that annihilates the coupling term.

    side="left" places the pivot at the generator mean of the start
    bundle; delta vanishes whenever the end bundle is constant.
    side="right" uses the weighted arithmetic mean of the end bundle;
    delta vanishes whenever the start bundle is constant.
    """
    a, b = _paired(start, end)
    w = _weights_for(len(a), weights)
    if side == "left":
        center = bregman_mean(gen, WeightedInputs(a, w))
    elif side == "right":
        center = arithmetic_mean(WeightedInputs(b, w))
    else:
        raise InvalidParams(f"side must be 'left' or 'right', got {side!r}")
    return (center,) * len(a)


def slutsky_decompose(
    gen: Generator, inputs: WeightedInputs, new_level: float
) -> TransitionDecomposition:
    """Cost split for moving a bundle to a constant target level.

    The pivot sits at the generator mean of the current bundle, so the
    coupling term is zero up to inversion error: term1 is the pure
    level-change (income-like) cost and term2 the dispersion
    (substitution-like) cost of pulling the bundle onto the diagonal.
    """
    target = float(new_level)
    if not gen.domain.contains(target):
        raise DomainViolation(
            f"target level {target} outside the domain of {gen.name}"
        )
    mu = bregman_mean(gen, inputs)
    m = len(inputs)
    return triangle_decompose(
        gen,
        inputs.values,
        (target,) * m,
        (mu,) * m,
        inputs.weights,
    )


def scale_shift_parameterization(base, weights=None):
    """Two-parameter bundle family (a, b) -> a * base + b."""
    values = tuple(float(v) for v in base)
    w = _weights_for(len(values), weights)

    def family(scale: float, shift: float) -> WeightedInputs:
        return WeightedInputs(
            tuple(scale * v + shift for v in values), w
        )

    return family


def budget_parameterization(base_prices, weights=None):
    """Bundle family (first price, income) under matched cost ratios.

    Remaining prices stay at their base values; the bundle is the
    equal-spending point (w / P, ..., w / P).
    """
    prices = tuple(float(p) for p in base_prices)
    if not prices:
        raise InvalidParams("at least one base price is required")
    for p in prices:
        if not (math.isfinite(p) and p > 0.0):
            raise InvalidParams(f"prices must be positive, got {p}")
    w = _weights_for(len(prices), weights)
    rest = sum(prices[1:])

    def family(first_price: float, income: float) -> WeightedInputs:
        if not (math.isfinite(first_price) and first_price > 0.0):
            raise InvalidParams(
                f"first price must be positive, got {first_price}"
            )
        total = first_price + rest
        return WeightedInputs((income / total,) * len(prices), w)

    return family


_ROY_FLAT = 1e-10


def roy_residual(
    gen: Generator, c: float, parameterization, at
) -> float:
    """Agreement of derivative ratios across three indirect maps.

    Each map sends the two parameters to a scalar through the generator
    mean: the divergence of c from the mean, the divergence of the mean
    from c, and the mean itself.  Their partial-derivative ratios
    coincide by the chain rule; the residual is the worst pairwise gap.
    """
    a0, b0 = (float(at[0]), float(at[1]))
    ref = float(c)

    def mean_at(a: float, b: float) -> float:
        return bregman_mean(gen, parameterization(a, b))

    mu0 = mean_at(a0, b0)
    if abs(mu0 - ref) <= 1e-8 * max(1.0, abs(ref)):
        raise DegenerateRatio(
            f"mean {mu0} coincides with reference level {ref}"
        )

    maps = (
        lambda a, b: divergence(gen, ref, mean_at(a, b)),
        lambda a, b: divergence(gen, mean_at(a, b), ref),
        mean_at,
    )
    ratios = []
    for fn in maps:
        da = finite_diff(lambda a: fn(a, b0), a0)
        db = finite_diff(lambda b: fn(a0, b), b0)
        if abs(db) <= _ROY_FLAT * max(1.0, abs(da)):
            raise DegenerateRatio(
                "map is insensitive to the second parameter"
            )
        ratios.append(da / db)
    worst = 0.0
    for i in range(len(ratios)):
        for j in range(i + 1, len(ratios)):
            worst = max(worst, abs(ratios[i] - ratios[j]))
    return worst


@dataclass(frozen=True)
class LevelCurve:
    """Two-input level set of the weighted divergence around a bundle.

    ``lower``/``upper`` hold the second coordinate of the two branches
    over ``abscissa``; entries are NaN where a branch does not reach the
    requested level before the domain boundary.
    """

    abscissa: tuple
    lower: tuple
    upper: tuple
    level: float
    side: str


def divergence_level_curve(
    gen: Generator,
    ref: WeightedInputs,
    level: float,
    side: str = "left",
    samples: int = 33,
) -> LevelCurve:
    if len(ref) != 2:
        raise DimensionMismatch(
            f"level curves need exactly 2 inputs, got {len(ref)}"
        )
    if not (math.isfinite(level) and level > 0.0):
        raise InvalidParams(f"level must be positive, got {level}")
    if side not in ("left", "right"):
        raise InvalidParams(f"side must be 'left' or 'right', got {side!r}")
    if samples < 3:
        raise InvalidParams(f"samples must be at least 3, got {samples}")
    (r1, r2) = ref.values
    (g1, g2) = ref.weights

    def part(gamma: float, center: float, v: float) -> float:
        if side == "left":
            return gamma * divergence(gen, v, center)
        return gamma * divergence(gen, center, v)

    lo = gen.domain.lo
    hi = gen.domain.hi

    def edge(which: str) -> float:
        if which == "right":
            seed = r1 + (0.5 if math.isinf(hi) else 0.5 * (hi - r1))
            return solve_scalar(
                lambda v: part(g1, r1, v) - level, seed, lo=r1, hi=hi
            )
        seed = r1 - (0.5 if math.isinf(lo) else 0.5 * (r1 - lo))
        return solve_scalar(
            lambda v: part(g1, r1, v) - level, seed, lo=lo, hi=r1
        )

    try:
        x_hi = edge("right")
    except NoBracket:
        x_hi = hi - 1e-9 * max(1.0, abs(hi)) if math.isfinite(hi) else (
            r1 + 1e6
        )
    try:
        x_lo = edge("left")
    except NoBracket:
        x_lo = lo + 1e-9 * max(1.0, abs(r1 - lo)) if math.isfinite(lo) else (
            r1 - 1e6
        )

    abscissa = []
    lower = []
    upper = []
    for k in range(samples):
        x1 = x_lo + (x_hi - x_lo) * k / (samples - 1)
        rem = level - part(g1, r1, x1)
        abscissa.append(x1)
        if rem <= 0.0:
            lower.append(r2)
            upper.append(r2)
            continue

        def excess(v: float) -> float:
            return part(g2, r2, v) - rem

        try:
            up_seed = r2 + (0.5 if math.isinf(hi) else 0.5 * (hi - r2))
            upper.append(solve_scalar(excess, up_seed, lo=r2, hi=hi))
        except NoBracket:
            upper.append(math.nan)
        try:
            lo_seed = r2 - (0.5 if math.isinf(lo) else 0.5 * (r2 - lo))
            lower.append(solve_scalar(excess, lo_seed, lo=lo, hi=r2))
        except NoBracket:
            lower.append(math.nan)
    return LevelCurve(
        abscissa=tuple(abscissa),
        lower=tuple(lower),
        upper=tuple(upper),
        level=float(level),
        side=side,
    )
