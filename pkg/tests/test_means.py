import math

import numpy as np
import pytest

from bregecon.errors import DimensionMismatch, InvalidParams
from bregecon.generators import divergence, make_generator
from bregecon.means import (
    WeightedInputs,
    arithmetic_mean,
    bregman_mean,
    check_mean_properties,
    dual_mean,
    left_cost_minimizer,
    mean_curvature,
    right_cost_minimizer,
)

CATALOG = (
    ("squared_euclidean", {}),
    ("kullback_leibler", {}),
    ("itakura_saito", {}),
    ("amari_alpha", {"alpha": 0.3}),
    ("bregman_csiszar", {"alpha": 0.6}),
    ("arimoto", {"alpha": 0.4}),
    ("ces", {"sigma": 2.0}),
    ("cobb_douglas", {}),
    ("gem", {"theta": 1.0}),
)


def test_weighted_inputs_validation():
    with pytest.raises(InvalidParams):
        WeightedInputs((), ())
    with pytest.raises(DimensionMismatch):
        WeightedInputs((1.0, 2.0), (1.0,))
    with pytest.raises(InvalidParams):
        WeightedInputs((1.0, float("inf")), (1.0, 1.0))
    with pytest.raises(InvalidParams):
        WeightedInputs((1.0, 2.0), (1.0, 0.0))
    with pytest.raises(InvalidParams):
        WeightedInputs((1.0, 2.0), (1.0, -3.0))


def test_weighted_inputs_equal_constructor_and_accessors():
    inputs = WeightedInputs.equal([4, 1])
    assert inputs.values == (4.0, 1.0)
    assert inputs.weights == (1.0, 1.0)
    assert inputs.gamma_sum == 2.0
    assert len(inputs) == 2


def test_square_potential_mean_is_the_weighted_average():
    gen = make_generator("squared_euclidean")
    inputs = WeightedInputs((-1.0, 2.0, 5.0), (1.0, 3.0, 0.5))
    want = (-1.0 + 6.0 + 2.5) / 4.5
    assert abs(bregman_mean(gen, inputs) - want) < 1e-14
    assert abs(arithmetic_mean(inputs) - want) < 1e-14


def test_entropy_mean_is_the_weighted_geometric_mean():
    gen = make_generator("kullback_leibler")
    values = (0.5, 2.0, 1.2)
    weights = (1.0, 2.0, 0.5)
    inputs = WeightedInputs(values, weights)
    gam = sum(weights)
    want = 1.0
    for v, w in zip(values, weights):
        want *= v ** (w / gam)
    assert abs(bregman_mean(gen, inputs) - want) < 1e-13


def test_log_barrier_mean_is_the_weighted_harmonic_mean():
    gen = make_generator("itakura_saito")
    values = (0.5, 2.0, 1.2)
    weights = (1.0, 2.0, 0.5)
    inputs = WeightedInputs(values, weights)
    want = sum(weights) / sum(w / v for v, w in zip(values, weights))
    assert abs(bregman_mean(gen, inputs) - want) < 1e-13


def test_power_potential_mean_is_the_half_power_mean():
    # u is proportional to sqrt(x), so the mean squares the averaged roots
    gen = make_generator("ces", sigma=2.0)
    values = (0.25, 4.0)
    inputs = WeightedInputs(values, (1.0, 3.0))
    want = ((0.5 + 3.0 * 2.0) / 4.0) ** 2
    assert abs(bregman_mean(gen, inputs) - want) < 1e-13


def test_exponential_mean_is_log_sum_exp():
    gen = make_generator("gem", theta=1.0)
    values = (-1.0, 0.5, 2.0)
    inputs = WeightedInputs.equal(values)
    want = math.log(sum(math.exp(v) for v in values) / 3.0)
    assert abs(bregman_mean(gen, inputs) - want) < 1e-13


def test_exponential_mean_of_zero_and_log_three_is_log_two():
    """The u-average of (1, 3)/2 = 2 must invert to log 2.

    log 2 is rebuilt here from the arctanh series 2 * atanh(1/3) so the
    expected value does not pass through the same log call the mean uses.
    """
    third = 1.0 / 3.0
    log2_series = 0.0
    term = third
    k = 1
    while term > 1e-20:
        log2_series += 2.0 * term / k
        term *= third * third
        k += 2
    gen = make_generator("gem", theta=1.0)
    mean = bregman_mean(gen, WeightedInputs.equal((0.0, math.log(3.0))))
    assert abs(mean - log2_series) < 1e-14


def test_single_input_mean_returns_that_input():
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        x = 1.3
        got = bregman_mean(gen, WeightedInputs((x,), (2.5,)))
        assert abs(got - x) < 1e-12


def test_mean_is_idempotent_on_constant_inputs():
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        inputs = WeightedInputs((0.8, 0.8, 0.8), (1.0, 2.0, 5.0))
        assert abs(bregman_mean(gen, inputs) - 0.8) < 1e-12


def test_mean_stays_between_the_extremes_and_ignores_input_order():
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        inputs = WeightedInputs((0.4, 2.5, 1.1), (1.0, 0.5, 2.0))
        m = bregman_mean(gen, inputs)
        assert 0.4 <= m <= 2.5
        flipped = WeightedInputs((1.1, 0.4, 2.5), (2.0, 1.0, 0.5))
        assert abs(bregman_mean(gen, flipped) - m) < 1e-12


def test_mean_is_invariant_under_weight_rescaling():
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        base = WeightedInputs((0.4, 2.5, 1.1), (1.0, 0.5, 2.0))
        scaled = WeightedInputs(base.values, tuple(7.3 * w for w in base.weights))
        assert abs(bregman_mean(gen, scaled) - bregman_mean(gen, base)) < 1e-12


def test_left_minimizer_search_agrees_with_the_closed_form():
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        inputs = WeightedInputs((0.5, 2.0, 1.2), (1.0, 2.0, 0.5))
        found = left_cost_minimizer(gen, inputs)
        assert abs(found - bregman_mean(gen, inputs)) < 1e-6


def test_left_minimizer_matches_a_dense_grid_scan():
    # independent check: brute-force the weighted left cost for entropy
    gen = make_generator("kullback_leibler")
    values = (0.5, 2.0, 1.2)
    weights = (1.0, 2.0, 0.5)
    inputs = WeightedInputs(values, weights)
    grid = np.linspace(0.5, 2.0, 20001)
    costs = [
        sum(w * divergence(gen, y, x) for x, w in zip(values, weights))
        for y in grid
    ]
    best = grid[int(np.argmin(costs))]
    mean = bregman_mean(gen, inputs)
    assert abs(mean - best) < 1e-4
    mean_cost = sum(
        w * divergence(gen, mean, x) for x, w in zip(values, weights)
    )
    assert mean_cost <= min(costs) + 1e-12


def test_right_minimizer_is_the_weighted_average_for_every_family():
    inputs = WeightedInputs((0.5, 2.0, 1.2), (1.0, 2.0, 0.5))
    want = arithmetic_mean(inputs)
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        assert abs(right_cost_minimizer(gen, inputs) - want) < 1e-6


def test_right_minimizer_accepts_price_reweighting():
    gen = make_generator("kullback_leibler")
    inputs = WeightedInputs((0.5, 2.0, 1.2), (1.0, 1.0, 1.0))
    prices = (3.0, 1.0, 2.0)
    want = sum(p * v for p, v in zip(prices, inputs.values)) / sum(prices)
    assert abs(right_cost_minimizer(gen, inputs, prices=prices) - want) < 1e-6


def test_dual_mean_of_gradient_images_is_the_gradient_of_the_average():
    for family, params in (
        ("kullback_leibler", {}),
        ("ces", {"sigma": 2.0}),
        ("gem", {"theta": 1.0}),
    ):
        gen = make_generator(family, **params)
        inputs = WeightedInputs((0.5, 2.0, 1.2), (1.0, 2.0, 0.5))
        dual_inputs = WeightedInputs(
            tuple(gen.u(v) for v in inputs.values), inputs.weights
        )
        lhs = dual_mean(gen, dual_inputs)
        rhs = gen.u(arithmetic_mean(inputs))
        assert abs(lhs - rhs) < 1e-9


@pytest.mark.parametrize(
    "family,params,verdict",
    [
        ("squared_euclidean", {}, "linear"),
        ("kullback_leibler", {}, "concave"),
        ("itakura_saito", {}, "concave"),
        ("cobb_douglas", {}, "concave"),
        ("ces", {"sigma": 2.0}, "concave"),
        ("gem", {"theta": 1.0}, "convex"),
        ("arimoto", {"alpha": 0.4}, "inconclusive"),
    ],
)
def test_mean_curvature_verdicts(family, params, verdict):
    assert mean_curvature(make_generator(family, **params)) == verdict


def test_concave_mean_sits_below_the_arithmetic_mean():
    inputs = WeightedInputs((0.5, 2.0), (1.0, 1.0))
    arith = arithmetic_mean(inputs)
    assert bregman_mean(make_generator("kullback_leibler"), inputs) < arith
    assert bregman_mean(make_generator("gem", theta=1.0), inputs) > arith


def test_structural_property_suite_passes_across_the_catalog():
    inputs = WeightedInputs((0.5, 2.0, 1.2, 0.9), (1.0, 2.0, 0.5, 1.5))
    for family, params in CATALOG:
        gen = make_generator(family, **params)
        report = check_mean_properties(gen, inputs)
        assert report.all_passed, (family, report)
        assert report.composition_residual < 1e-9
        assert report.shift_residual < 1e-10
        assert report.dual_residual < 1e-8
