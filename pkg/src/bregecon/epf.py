"""Production-function catalog and its aggregator correspondence.

Implements the six classical families (ces, cobb_douglas, gem, leontief,
translog, mst), maps the first three onto catalog generators so their
values can be cross-checked against weighted gradient means, and computes
the structural-property matrix: optimality, dual pairing, elasticity sum,
unit substitution elasticity, constant substitution elasticity,
homogeneity, and translatability.

leontief is handled throughout by a small-sigma ces proxy because the min
form is not differentiable at its kinks; translog and mst fail the
aggregator correspondence, which is certified via idempotency violations
on constant bundles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainViolation,
    InvalidSpec,
    NoBracket,
    NoConvergence,
    NumericalBreakdown,
    ZeroDenominator,
)
from .generators import Generator, make_generator
from .means import WeightedInputs, bregman_mean
from .numerics import Tolerance, finite_diff, solve_scalar

FAMILIES = ("ces", "cobb_douglas", "gem", "leontief", "translog", "mst")

_ALIASES = {
    "ces": "ces",
    "cobbdouglas": "cobb_douglas",
    "cobb_douglas": "cobb_douglas",
    "gem": "gem",
    "leontief": "leontief",
    "translog": "translog",
    "mst": "mst",
}

MATRIX_COLUMNS = (
    "optimality",
    "dual_pairing",
    "elasticity_sum",
    "unit_substitution",
    "constant_substitution",
    "homogeneity",
    "translation",
)

_PROXY_SIGMAS = (0.05, 0.01)


def _canonical_family(name: str) -> str:
    key = str(name).strip().lower().replace("-", "_")
    collapsed = key.replace("_", "")
    if key in _ALIASES:
        return _ALIASES[key]
    if collapsed in _ALIASES:
        return _ALIASES[collapsed]
    raise InvalidSpec(
        f"unknown production-function family {name!r}; known: {', '.join(FAMILIES)}"
    )


@dataclass(frozen=True)
class EpfSpec:
    """Parameter record for one production-function instance."""

    family: str
    beta: tuple
    sigma: float | None = None
    theta: float | None = None
    beta0: float | None = None
    beta_matrix: tuple | None = None

    def __post_init__(self) -> None:
        family = _canonical_family(self.family)
        object.__setattr__(self, "family", family)
        beta = tuple(float(v) for v in self.beta)
        if not beta:
            raise InvalidSpec("beta must be non-empty")
        for v in beta:
            if not (math.isfinite(v) and v > 0.0):
                raise InvalidSpec(f"beta entries must be positive, got {v}")
        object.__setattr__(self, "beta", beta)

        used = {"beta"}
        if family == "ces":
            used.add("sigma")
            if self.sigma is None:
                raise InvalidSpec("ces requires sigma")
            sigma = float(self.sigma)
            if not math.isfinite(sigma) or sigma in (0.0, 1.0):
                raise InvalidSpec(
                    f"sigma must be finite and outside {{0, 1}}, got {sigma}"
                )
            object.__setattr__(self, "sigma", sigma)
        elif family == "cobb_douglas":
            total = sum(beta)
            if abs(total - 1.0) > 1e-9:
                raise InvalidSpec(
                    f"cobb_douglas weights must sum to 1, got {total}"
                )
        elif family == "gem":
            used.add("theta")
            if self.theta is None:
                raise InvalidSpec("gem requires theta")
            theta = float(self.theta)
            if not math.isfinite(theta) or theta == 0.0:
                raise InvalidSpec(f"theta must be finite and nonzero, got {theta}")
            object.__setattr__(self, "theta", theta)
        elif family == "mst":
            used.add("theta")
            if self.theta not in (-1, 1, -1.0, 1.0):
                raise InvalidSpec(f"mst theta must be -1 or +1, got {self.theta}")
            object.__setattr__(self, "theta", float(self.theta))
        elif family == "translog":
            used.update(("beta0", "beta_matrix"))
            if self.beta0 is None or self.beta_matrix is None:
                raise InvalidSpec("translog requires beta0 and beta_matrix")
            beta0 = float(self.beta0)
            if not math.isfinite(beta0):
                raise InvalidSpec(f"beta0 must be finite, got {beta0}")
            object.__setattr__(self, "beta0", beta0)
            rows = tuple(tuple(float(v) for v in row) for row in self.beta_matrix)
            m = len(beta)
            if len(rows) != m or any(len(row) != m for row in rows):
                raise InvalidSpec(
                    f"beta_matrix must be {m}x{m} to match beta"
                )
            for row in rows:
                for v in row:
                    if not (math.isfinite(v) and v > 0.0):
                        raise InvalidSpec(
                            f"beta_matrix entries must be positive, got {v}"
                        )
            object.__setattr__(self, "beta_matrix", rows)

        for name in ("sigma", "theta", "beta0", "beta_matrix"):
            if name not in used and getattr(self, name) is not None:
                raise InvalidSpec(f"{family} does not take parameter {name!r}")

    def __len__(self) -> int:
        return len(self.beta)


@dataclass(frozen=True)
class GeneratorMap:
    """A generator plus weights reproducing a production function."""

    generator: Generator
    weights: tuple

    def mean(self, x: Sequence[float]) -> float:
        return bregman_mean(
            self.generator, WeightedInputs(tuple(x), self.weights)
        )


@dataclass(frozen=True)
class NotAnLda:
    """Marker result: the family has no generator representation."""

    family: str
    reason: str
    limit: str | None = None


@dataclass(frozen=True)
class CellResult:
    """One cell of the property matrix."""

    family: str
    column: str
    verdict: str
    residual: float
    note: str = ""


def _check_bundle(spec: EpfSpec, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (len(spec),):
        raise DimensionMismatch(
            f"expected {len(spec)} inputs for {spec.family}, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise DomainViolation("non-finite inputs")
    if spec.family in ("ces", "cobb_douglas", "leontief", "translog"):
        if not (arr > 0.0).all():
            raise DomainViolation(f"{spec.family} requires positive inputs")
    elif spec.family == "mst":
        if not (spec.theta * arr < 0.0).all():
            raise DomainViolation(
                "mst requires theta * x_i < 0 so every factor stays in (0, 1)"
            )
    return arr


def epf_value(spec: EpfSpec, x) -> float:
    """Evaluate the production function on an input bundle."""
    arr = _check_bundle(spec, x)
    beta = np.asarray(spec.beta)
    if spec.family == "ces":
        rho = (spec.sigma - 1.0) / spec.sigma
        return float(np.sum(beta * arr**rho) ** (1.0 / rho))
    if spec.family == "cobb_douglas":
        return float(np.exp(np.sum(beta * np.log(arr))))
    if spec.family == "gem":
        exponents = spec.theta * arr
        shift = float(np.max(exponents))
        return float(
            (shift + np.log(np.sum(beta * np.exp(exponents - shift))))
            / spec.theta
        )
    if spec.family == "leontief":
        return float(np.min(beta * arr))
    if spec.family == "translog":
        logs = np.log(arr)
        quad = float(logs @ np.asarray(spec.beta_matrix) @ logs)
        return float(np.exp(spec.beta0 + np.sum(beta * logs) + quad))
    # mst
    return float(np.prod(1.0 - np.exp(spec.theta * beta * arr)))


def epf_to_generator(spec: EpfSpec):
    """Generator-and-weights representation, or NotAnLda.

    The represented families need weights summing to 1 so the aggregator
    normalization matches; other weight sums raise InvalidSpec.
    """
    if spec.family == "leontief":
        return NotAnLda(
            family="leontief",
            reason="only the sigma -> 0+ limit of ces means; the min form "
            "itself has no strictly convex generator",
            limit="ces",
        )
    if spec.family in ("translog", "mst"):
        return NotAnLda(
            family=spec.family,
            reason="not idempotent: constant bundles are not fixed points, "
            "so no mean representation exists",
        )
    total = sum(spec.beta)
    if abs(total - 1.0) > 1e-9:
        raise InvalidSpec(
            f"{spec.family} weights must sum to 1 for the generator "
            f"correspondence, got {total}"
        )
    if spec.family == "cobb_douglas":
        gen = make_generator("cobb_douglas")
    elif spec.family == "gem":
        gen = make_generator("gem", theta=spec.theta)
    else:  # ces
        if spec.sigma == 0.5:
            # the power potential degenerates at sigma = 1/2 (exponent
            # 2 - 1/sigma = 0) but the mean survives: u proportional to
            # -1/x gives exactly the sigma = 1/2 harmonic form
            gen = make_generator("itakura_saito")
        else:
            gen = make_generator("ces", sigma=spec.sigma)
    return GeneratorMap(generator=gen, weights=spec.beta)


def leontief_limit_gap(beta, x, sigma: float) -> float:
    """Distance between the small-sigma ces value and the min form.

    The ces proxy uses normalized weights; the gap must shrink as sigma
    does, which tests assert separately.
    """
    if not 0.0 < sigma <= 0.2:
        raise InvalidSpec(f"sigma must lie in (0, 0.2], got {sigma}")
    beta = tuple(float(v) for v in beta)
    total = sum(beta)
    proxy = EpfSpec("ces", tuple(v / total for v in beta), sigma=sigma)
    leontief = EpfSpec("leontief", beta)
    return abs(epf_value(proxy, x) - epf_value(leontief, x))


def _fd_scale(spec: EpfSpec) -> float:
    # large curvature near fixed proportions: keep truncation in check
    if spec.family == "ces" and abs(spec.sigma) <= 0.05:
        return 1e-6
    return 1e-5


def _partial(spec: EpfSpec, x, i: int) -> float:
    arr = np.asarray(x, dtype=float)

    def slice_i(v: float) -> float:
        bundle = arr.copy()
        bundle[i] = v
        return epf_value(spec, bundle)

    value = float(arr[i])
    return finite_diff(slice_i, value, h=_fd_scale(spec) * max(1.0, abs(value)))


def elasticity(spec: EpfSpec, x, i: int) -> float:
    """Relative sensitivity of the output to input i."""
    mu = epf_value(spec, x)
    if mu == 0.0:
        raise ZeroDenominator("output is zero; elasticity undefined")
    return float(x[i]) / mu * _partial(spec, x, i)


def marginal_rate_substitution(spec: EpfSpec, x, i: int, j: int) -> float:
    num = _partial(spec, x, i)
    den = _partial(spec, x, j)
    if abs(den) <= 1e-12 * max(1.0, abs(num)):
        raise ZeroDenominator(f"vanishing marginal product for input {j}")
    return num / den


def _coordinate_bounds(spec: EpfSpec) -> tuple:
    if spec.family in ("ces", "cobb_douglas", "leontief", "translog"):
        return 0.0, math.inf
    if spec.family == "mst":
        return (0.0, math.inf) if spec.theta < 0 else (-math.inf, 0.0)
    return -math.inf, math.inf


_ISOQUANT_TOL = Tolerance(abs_tol=1e-13, rel_tol=5e-15, max_iter=300)


def _solve_isoquant(
    spec: EpfSpec, x, i: int, value_i: float, j: int, level: float
) -> float:
    arr = np.asarray(x, dtype=float).copy()
    arr[i] = value_i
    lo, hi = _coordinate_bounds(spec)

    def off_level(v: float) -> float:
        bundle = arr.copy()
        bundle[j] = v
        return epf_value(spec, bundle) - level

    return solve_scalar(off_level, float(arr[j]), lo=lo, hi=hi, tol=_ISOQUANT_TOL)


def substitution_elasticity(
    spec: EpfSpec, x, i: int, j: int, rel_step: float = 5e-4
) -> float:
    """Two-point log-difference of the input ratio against the marginal
    rate of substitution, stepping along the isoquant through x.

    The step must stay inside the isoquant's coordinate range; for
    near-fixed-proportions instances that range collapses, so callers
    probing small-sigma ces use a reduced rel_step.
    """
    level = epf_value(spec, x)
    samples = []
    try:
        for sign in (1.0, -1.0):
            xi = float(x[i]) * (1.0 + sign * rel_step)
            xj = _solve_isoquant(spec, x, i, xi, j, level)
            bundle = np.asarray(x, dtype=float).copy()
            bundle[i] = xi
            bundle[j] = xj
            rate = marginal_rate_substitution(spec, bundle, i, j)
            if rate <= 0.0:
                raise NumericalBreakdown(
                    f"nonpositive substitution rate {rate} on the isoquant"
                )
            if xj / xi <= 0.0:
                raise NumericalBreakdown(
                    "input ratio changes sign along the isoquant"
                )
            samples.append((math.log(xj / xi), math.log(rate)))
    except (DomainViolation, NoBracket, NoConvergence) as exc:
        raise NumericalBreakdown(
            f"isoquant step left the domain of {spec.family}: {exc}"
        ) from exc
    d_ratio = samples[0][0] - samples[1][0]
    d_rate = samples[0][1] - samples[1][1]
    if abs(d_rate) <= 1e-15:
        raise ZeroDenominator("substitution rate does not vary along the isoquant")
    return d_ratio / d_rate


def check_homogeneity(
    spec: EpfSpec, degree: float = 1.0, trials: int = 20, seed: int = 0
):
    """(passed, max relative residual) for f(s*x) = s**degree * f(x)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = _sample_bundle(spec, rng)
        scale = rng.uniform(0.5, 2.0)
        base = epf_value(spec, x)
        scaled = epf_value(spec, scale * x)
        worst = max(
            worst,
            abs(scaled - scale**degree * base) / max(abs(base), 1e-12),
        )
    return worst <= 1e-9, worst


def check_translatable(spec: EpfSpec, trials: int = 20, seed: int = 0):
    """(passed, max residual) for f(x + s) = f(x) + s, additive shifts."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = _sample_bundle(spec, rng, margin=1.2)
        shift = rng.uniform(-1.0, 1.0)
        base = epf_value(spec, x)
        shifted = epf_value(spec, x + shift)
        worst = max(worst, abs(shifted - shift - base))
    return worst <= 1e-9, worst


def _sample_bundle(spec: EpfSpec, rng, margin: float = 0.5) -> np.ndarray:
    m = len(spec)
    lo, hi = _coordinate_bounds(spec)
    raw = rng.uniform(margin, margin + 1.3, m)
    if math.isinf(lo) and math.isinf(hi):
        return rng.uniform(-1.5, 1.5, m)
    if lo == 0.0:
        return raw
    return -raw  # negative orthant (mst with positive theta)


def ces_dual_pairing_residual(sigma: float, beta, x) -> float:
    """Residual of the price-quantity pairing for a ces instance.

    Builds the conjugate bundle z_i = beta_i (mu/x_i)^(1/sigma), averages
    it with the companion ces form of exponent 1 - sigma, and returns
    |sum x_i z_i - mu_x mu_z|, which vanishes in exact arithmetic.
    """
    beta = np.asarray(tuple(float(v) for v in beta))
    arr = np.asarray(x, dtype=float)
    if not (arr > 0.0).all():
        raise DomainViolation("requires positive inputs")
    spec = EpfSpec("ces", tuple(beta), sigma=sigma)
    mu = epf_value(spec, arr)
    z = beta * (mu / arr) ** (1.0 / sigma)
    mu_z = float(np.sum(beta**sigma * z ** (1.0 - sigma)) ** (1.0 / (1.0 - sigma)))
    return abs(float(np.sum(arr * z)) - mu * mu_z)


def _cd_dual_pairing_residual(beta, x) -> float:
    # sigma -> 1 limit of the ces pairing: geometric companion mean
    beta = np.asarray(tuple(float(v) for v in beta))
    arr = np.asarray(x, dtype=float)
    spec = EpfSpec("cobb_douglas", tuple(beta))
    mu = epf_value(spec, arr)
    z = beta * mu / arr
    mu_z = float(np.exp(np.sum(beta * np.log(z / beta))))
    return abs(float(np.sum(arr * z)) - mu * mu_z)


def _affine_link_residual(gen: Generator, xs) -> float:
    # x * phi2(x) affine in u(x) characterizes the power/log generators,
    # exactly the families with a ces-type dual pairing
    v = np.array([gen.u(x) for x in xs])
    w = np.array([x * gen.phi2(x) for x in xs])
    design = np.column_stack([v, np.ones_like(v)])
    coef, *_ = np.linalg.lstsq(design, w, rcond=None)
    fit = design @ coef
    return float(np.max(np.abs(w - fit)) / max(1.0, float(np.max(np.abs(w)))))


def idempotency_violation(spec: EpfSpec) -> float:
    """Largest deviation of f(c, ..., c) from c over a small grid.

    Zero for any mean-representable family; a large value certifies that
    constant bundles are not fixed points.
    """
    lo, hi = _coordinate_bounds(spec)
    if math.isinf(lo) and math.isinf(hi):
        grid = (-1.5, -0.5, 0.5, 1.0, 1.5, 2.0)
    elif lo == 0.0:
        grid = (0.5, 1.0, 1.5, 2.0, math.e)
    else:
        grid = (-0.5, -1.0, -1.5, -2.0)
    worst = 0.0
    for c in grid:
        bundle = np.full(len(spec), c)
        worst = max(worst, abs(epf_value(spec, bundle) - c))
    return worst


_DEFAULT_MATRIX_SPECS = {
    "ces": EpfSpec("ces", (0.5, 0.5), sigma=2.0),
    "cobb_douglas": EpfSpec("cobb_douglas", (0.4, 0.6)),
    "gem": EpfSpec("gem", (0.3, 0.7), theta=1.0),
    "leontief": EpfSpec("leontief", (1.0, 1.0)),
    "translog": EpfSpec(
        "translog",
        (0.3, 0.5),
        beta0=0.1,
        beta_matrix=((0.08, 0.05), (0.06, 0.07)),
    ),
    "mst": EpfSpec("mst", (1.0, 0.8), theta=-1.0),
}

_SAMPLE_POINTS = ((0.7, 1.8), (1.3, 0.9), (2.1, 1.4))

# near-diagonal points for the leontief proxy: off the diagonal the
# small-sigma ces isoquant collapses onto its asymptote and the
# less-abundant input's marginal product underflows
_NEAR_DIAGONAL_POINTS = ((1.0, 1.04), (1.3, 1.35), (0.8, 0.83))


def _mirror_points(spec: EpfSpec, points):
    if spec.family == "mst" and spec.theta > 0:
        return tuple(tuple(-v for v in p) for p in points)
    if spec.family == "leontief":
        return _NEAR_DIAGONAL_POINTS
    return points


def _optimality_residual(spec: EpfSpec, points) -> tuple:
    mapping = epf_to_generator(spec)
    if isinstance(mapping, NotAnLda):
        return idempotency_violation(spec), "idempotency violation"
    worst = 0.0
    for p in points:
        value = epf_value(spec, np.asarray(p))
        mean = mapping.mean(p)
        worst = max(worst, abs(value - mean) / max(abs(value), 1e-12))
    return worst, "relative gap between value and mean"


def _normalized(spec: EpfSpec) -> tuple:
    total = sum(spec.beta)
    return tuple(v / total for v in spec.beta)


def _dual_pairing_residual(spec: EpfSpec, points) -> tuple:
    if spec.family == "ces":
        worst = max(
            ces_dual_pairing_residual(spec.sigma, spec.beta, p) for p in points
        )
        return worst, "conjugate bundle pairing"
    if spec.family == "cobb_douglas":
        worst = max(_cd_dual_pairing_residual(spec.beta, p) for p in points)
        return worst, "conjugate bundle pairing"
    if spec.family == "gem":
        mapping = epf_to_generator(spec)
        xs = np.linspace(-1.0, 1.5, 7)
        return _affine_link_residual(mapping.generator, xs), (
            "affine gradient link"
        )
    return idempotency_violation(spec), "idempotency violation"


def _elasticity_sum_residual(spec: EpfSpec, points) -> tuple:
    worst = 0.0
    for p in points:
        total = sum(elasticity(spec, np.asarray(p), i) for i in range(len(spec)))
        worst = max(worst, abs(total - 1.0))
    return worst, "sum of elasticities vs 1"


def _isoquant_step(spec: EpfSpec) -> float:
    if spec.family == "ces" and abs(spec.sigma) <= 0.05:
        return 1e-5
    return 5e-4


def _unit_substitution_residual(spec: EpfSpec, points) -> tuple:
    step = _isoquant_step(spec)
    worst = 0.0
    for p in points:
        value = substitution_elasticity(spec, np.asarray(p), 0, 1, rel_step=step)
        worst = max(worst, abs(value - 1.0))
    return worst, "substitution elasticity vs 1"


def _constant_substitution_residual(spec: EpfSpec, points) -> tuple:
    step = _isoquant_step(spec)
    values = [
        substitution_elasticity(spec, np.asarray(p), 0, 1, rel_step=step)
        for p in points
    ]
    if min(values) <= 0.0:
        return 1.0, "nonpositive substitution elasticity"
    worst = max(
        abs(a - b) for a in values for b in values
    )
    return worst, "spread of substitution elasticity"


def _homogeneity_residual(spec: EpfSpec, points) -> tuple:
    _, worst = check_homogeneity(spec, degree=1.0, trials=12, seed=7)
    return worst, "degree-1 scaling residual"


def _translation_residual(spec: EpfSpec, points) -> tuple:
    _, worst = check_translatable(spec, trials=12, seed=11)
    return worst, "additive shift residual"


_COLUMN_FUNCS = {
    "optimality": _optimality_residual,
    "dual_pairing": _dual_pairing_residual,
    "elasticity_sum": _elasticity_sum_residual,
    "unit_substitution": _unit_substitution_residual,
    "constant_substitution": _constant_substitution_residual,
    "homogeneity": _homogeneity_residual,
    "translation": _translation_residual,
}

_PASS_LEVEL = 1e-6
_FAIL_LEVEL = 1e-3


def _verdict(residual: float) -> str:
    if residual <= _PASS_LEVEL:
        return "Y"
    if residual >= _FAIL_LEVEL:
        return "N"
    return "?"


def property_matrix(specs=None, points=_SAMPLE_POINTS):
    """Evaluate every structural property on every family.

    Returns a tuple of CellResult in row-major order (family, column).
    Verdicts: Y means residual <= 1e-6, N means residual >= 1e-3, L means
    the leontief proxy at sigma in {0.05, 0.01} passes the Y level at
    both values, and ? flags an indeterminate residual.
    """
    table = dict(_DEFAULT_MATRIX_SPECS)
    if specs:
        table.update(specs)
    cells = []
    for family in FAMILIES:
        spec = table[family]
        family_points = _mirror_points(spec, points)
        for column in MATRIX_COLUMNS:
            func = _COLUMN_FUNCS[column]
            if family == "leontief":
                residuals = []
                for sig in _PROXY_SIGMAS:
                    proxy = EpfSpec("ces", _normalized(spec), sigma=sig)
                    residuals.append(func(proxy, family_points)[0])
                worst = max(residuals)
                if worst <= _PASS_LEVEL:
                    verdict, note = "L", "ces proxy passes at both sigmas"
                elif min(residuals) >= _FAIL_LEVEL:
                    verdict, note = "N", "ces proxy fails at both sigmas"
                else:
                    verdict, note = "?", "ces proxy indeterminate"
                cells.append(
                    CellResult(family, column, verdict, residuals[-1], note)
                )
            else:
                residual, note = func(spec, family_points)
                cells.append(
                    CellResult(family, column, _verdict(residual), residual, note)
                )
    return tuple(cells)


def epf_config(spec: EpfSpec) -> dict:
    config: dict = {"family": spec.family, "beta": list(spec.beta)}
    if spec.sigma is not None:
        config["sigma"] = spec.sigma
    if spec.theta is not None:
        config["theta"] = spec.theta
    if spec.beta0 is not None:
        config["beta0"] = spec.beta0
    if spec.beta_matrix is not None:
        config["beta_matrix"] = [list(row) for row in spec.beta_matrix]
    return config


def epf_from_config(config: dict) -> EpfSpec:
    if not isinstance(config, dict):
        raise InvalidSpec("production-function config must be a JSON object")
    allowed = {"family", "beta", "sigma", "theta", "beta0", "beta_matrix"}
    extra = set(config) - allowed
    if extra:
        raise InvalidSpec(f"unknown config keys: {sorted(extra)}")
    if "family" not in config or "beta" not in config:
        raise InvalidSpec("config requires 'family' and 'beta'")
    return EpfSpec(
        family=config["family"],
        beta=tuple(config["beta"]),
        sigma=config.get("sigma"),
        theta=config.get("theta"),
        beta0=config.get("beta0"),
        beta_matrix=config.get("beta_matrix"),
    )
