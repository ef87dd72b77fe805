"""Expansion paths and input-demand solvers.

The marginal condition couples the generator's curvature to price-weight
ratios: along an expansion path phi2(x_i) / (p_i / gamma_i) is the same
for every input.  Demands restrict the full program to that path and
close it with a one-dimensional root find on the active constraint
(budget for output maximization, output floor for expenditure
minimization).

When every input has the same price-to-weight ratio the path contains
the equal-input diagonal and both demands collapse to closed forms: the
budget demand spends w/P on each input, the output-floor demand uses the
target itself in every slot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InfeasibleTarget,
    InvalidParams,
    NoBracket,
    NoConvergence,
    NoSolution,
    NotOnPath,
    ZeroDenominator,
)
from .generators import Generator
from .means import WeightedInputs, bregman_mean, mean_curvature
from .numerics import Tolerance, finite_diff, solve_scalar

_PATH_TOL = Tolerance(abs_tol=1e-12, rel_tol=1e-14, max_iter=300)
_RATIO_FLAT = 1e-10


@dataclass(frozen=True)
class Economy:
    """Prices, transition weights, and one of income / target output."""

    input_prices: tuple
    weights: tuple
    output_price: float = 1.0
    income: float | None = None
    target_output: float | None = None

    def __post_init__(self) -> None:
        prices = tuple(float(p) for p in self.input_prices)
        weights = tuple(float(g) for g in self.weights)
        if not prices:
            raise InvalidParams("at least one input price is required")
        if len(prices) != len(weights):
            raise DimensionMismatch(
                f"{len(prices)} prices but {len(weights)} weights"
            )
        for p in prices:
            if not (math.isfinite(p) and p > 0.0):
                raise InvalidParams(f"input prices must be positive, got {p}")
        for g in weights:
            if not (math.isfinite(g) and g > 0.0):
                raise InvalidParams(f"weights must be positive, got {g}")
        if not (math.isfinite(self.output_price) and self.output_price > 0.0):
            raise InvalidParams(
                f"output price must be positive, got {self.output_price}"
            )
        if self.income is not None and not (
            math.isfinite(self.income) and self.income > 0.0
        ):
            raise InvalidParams(f"income must be positive, got {self.income}")
        if self.target_output is not None and not math.isfinite(
            self.target_output
        ):
            raise InvalidParams(
                f"target output must be finite, got {self.target_output}"
            )
        object.__setattr__(self, "input_prices", prices)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "output_price", float(self.output_price))

    def __len__(self) -> int:
        return len(self.input_prices)

    @property
    def price_sum(self) -> float:
        return sum(self.input_prices)

    @property
    def cost_ratios(self) -> tuple:
        """Per-input price over weight."""
        return tuple(
            p / g for p, g in zip(self.input_prices, self.weights)
        )

    @property
    def is_balanced(self) -> bool:
        """True when every price-to-weight ratio matches (PTCB regime)."""
        ratios = self.cost_ratios
        center = sum(ratios) / len(ratios)
        return all(abs(r - center) <= _RATIO_FLAT * center for r in ratios)


@dataclass(frozen=True)
class DemandSolution:
    bundle: tuple
    objective: float
    on_expansion_path: bool
    residual: float
    mode: str


def economy_config(econ: Economy) -> dict:
    config: dict = {
        "p": econ.output_price,
        "prices": list(econ.input_prices),
        "gammas": list(econ.weights),
    }
    if econ.income is not None:
        config["w"] = econ.income
    if econ.target_output is not None:
        config["mu_target"] = econ.target_output
    return config


def economy_from_config(config: dict) -> Economy:
    if not isinstance(config, dict):
        raise InvalidParams("economy config must be a JSON object")
    allowed = {"p", "prices", "gammas", "w", "mu_target"}
    extra = set(config) - allowed
    if extra:
        raise InvalidParams(f"unknown config keys: {sorted(extra)}")
    if "prices" not in config or "gammas" not in config:
        raise InvalidParams("economy config requires 'prices' and 'gammas'")
    return Economy(
        input_prices=tuple(config["prices"]),
        weights=tuple(config["gammas"]),
        output_price=config.get("p", 1.0),
        income=config.get("w"),
        target_output=config.get("mu_target"),
    )


def expansion_residual(gen: Generator, bundle, econ: Economy) -> float:
    """Worst relative violation of the curvature-ratio marginal condition."""
    values = tuple(float(v) for v in bundle)
    if len(values) != len(econ):
        raise DimensionMismatch(
            f"bundle of length {len(values)} against {len(econ)} prices"
        )
    curvatures = tuple(gen.phi2(v) for v in values)
    ratios = econ.cost_ratios
    worst = 0.0
    for i in range(len(values)):
        for j in range(len(values)):
            if i == j:
                continue
            expected = ratios[i] / ratios[j] * curvatures[j]
            worst = max(
                worst, abs(curvatures[i] - expected) / abs(curvatures[j])
            )
    return worst


def solve_expansion_path(gen: Generator, econ: Economy, anchor: float) -> tuple:
    """Bundle on the expansion path with the first input pinned at anchor."""
    base = gen.phi2(anchor)
    ratios = econ.cost_ratios
    bundle = [anchor]
    for j in range(1, len(econ)):
        scale = ratios[j] / ratios[0]
        if abs(scale - 1.0) <= 1e-12:
            bundle.append(anchor)
            continue
        target = scale * base
        try:
            root = solve_scalar(
                lambda v: gen.phi2(v) - target,
                anchor,
                lo=gen.domain.lo,
                hi=gen.domain.hi,
                tol=_PATH_TOL,
            )
        except NoBracket as exc:
            raise NoSolution(
                f"curvature of {gen.name} cannot reach {target} for input "
                f"{j + 1}"
            ) from exc
        bundle.append(root)
    result = tuple(bundle)
    residual = expansion_residual(gen, result, econ)
    if residual > 1e-8:
        raise NoConvergence(
            f"expansion-path residual {residual} above 1e-8"
        )
    return result


def _mode_flag(gen: Generator) -> str:
    verdict = mean_curvature(gen)
    return "unverified" if verdict == "inconclusive" else verdict


def marshallian_demand(gen: Generator, econ: Economy) -> DemandSolution:
    """Output-maximizing bundle under the budget constraint.

    The budget binds at the optimum, so the bundle is located by sliding
    along the expansion path until spending equals income.  The mode flag
    reports the curvature probe; a convex mean means the program is the
    flipped (minimizing) variant and the stationary bundle is reported
    as such rather than rejected.
    """
    if econ.income is None:
        raise InvalidParams("marshallian demand requires income")
    mode = _mode_flag(gen)
    even = econ.income / econ.price_sum
    if econ.is_balanced:
        if not gen.domain.interior_contains(even):
            raise NoSolution(
                f"budget point {even} falls outside the domain of {gen.name}"
            )
        bundle = (even,) * len(econ)
    else:

        def overspend(anchor: float) -> float:
            candidate = solve_expansion_path(gen, econ, anchor)
            return sum(
                p * v for p, v in zip(econ.input_prices, candidate)
            ) - econ.income

        seed = even if gen.domain.interior_contains(even) else (
            gen.domain.interior_seed()
        )
        try:
            anchor = solve_scalar(
                overspend, seed, lo=gen.domain.lo, hi=gen.domain.hi
            )
        except NoBracket as exc:
            raise NoSolution(
                f"no expansion-path bundle of {gen.name} exhausts income "
                f"{econ.income}"
            ) from exc
        bundle = solve_expansion_path(gen, econ, anchor)
    output = bregman_mean(gen, WeightedInputs(bundle, econ.weights))
    residual = expansion_residual(gen, bundle, econ)
    return DemandSolution(
        bundle=bundle,
        objective=econ.output_price * output,
        on_expansion_path=residual <= 1e-6,
        residual=residual,
        mode=mode,
    )


def hicksian_demand(gen: Generator, econ: Economy) -> DemandSolution:
    """Expenditure-minimizing bundle meeting the output floor."""
    if econ.target_output is None:
        raise InvalidParams("hicksian demand requires a target output")
    target = econ.target_output
    if not gen.domain.interior_contains(target):
        raise InfeasibleTarget(
            f"target output {target} outside the domain of {gen.name}"
        )
    mode = _mode_flag(gen)
    if econ.is_balanced:
        bundle = (target,) * len(econ)
    else:

        def shortfall(anchor: float) -> float:
            candidate = solve_expansion_path(gen, econ, anchor)
            mean = bregman_mean(gen, WeightedInputs(candidate, econ.weights))
            return mean - target

        try:
            anchor = solve_scalar(
                shortfall, target, lo=gen.domain.lo, hi=gen.domain.hi
            )
        except NoBracket as exc:
            raise InfeasibleTarget(
                f"no expansion-path bundle of {gen.name} reaches output "
                f"{target}"
            ) from exc
        bundle = solve_expansion_path(gen, econ, anchor)
    expenditure = sum(p * v for p, v in zip(econ.input_prices, bundle))
    residual = expansion_residual(gen, bundle, econ)
    return DemandSolution(
        bundle=bundle,
        objective=expenditure,
        on_expansion_path=residual <= 1e-6,
        residual=residual,
        mode=mode,
    )


def mrs_on_path(
    gen: Generator, econ: Economy, bundle, i: int, j: int
) -> float:
    """Substitution rate of the aggregate along the expansion path.

    Differentiates the unit-weight aggregate: on the path its rate
    equals the curvature ratio pinned by the marginal condition, i.e.
    (p_i/gamma_i) / (p_j/gamma_j).  The weighted mean itself is tied to
    the raw price ratio p_i/p_j through the first-order condition, so
    the weights are deliberately stripped from the differentiated map;
    they still govern which bundles count as on-path.
    """
    values = tuple(float(v) for v in bundle)
    residual = expansion_residual(gen, values, econ)
    if residual > 1e-6:
        raise NotOnPath(
            f"expansion residual {residual} above 1e-6; bundle is off-path"
        )

    def partial(k: int) -> float:
        def slice_k(v: float) -> float:
            probe = list(values)
            probe[k] = v
            return bregman_mean(gen, WeightedInputs.equal(tuple(probe)))

        return finite_diff(slice_k, values[k])

    num = partial(i)
    den = partial(j)
    if abs(den) <= 1e-12 * max(1.0, abs(num)):
        raise ZeroDenominator(f"vanishing marginal product for input {j}")
    return num / den
