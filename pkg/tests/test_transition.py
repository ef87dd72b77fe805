import math

import numpy as np
import pytest

from bregecon.errors import (
    DegenerateRatio,
    DimensionMismatch,
    DomainViolation,
    InvalidParams,
)
from bregecon.generators import (
    divergence,
    make_generator,
    quadratic_form_generator,
)
from bregecon.means import WeightedInputs
from bregecon.transition import (
    budget_parameterization,
    divergence_level_curve,
    path_integral,
    pivot_bundle,
    roy_residual,
    scale_shift_parameterization,
    slutsky_decompose,
    trace_path,
    trace_rows,
    transition_cost,
    triangle_decompose,
)


def test_transition_cost_sums_weighted_divergences():
    sq = make_generator("squared_euclidean")
    assert transition_cost(sq, (0.0, 0.0), (2.0, 2.0)) == 8.0
    kl = make_generator("kullback_leibler")
    want = 2.0 * (2.0 * math.log(2.0) - 1.0) + (4.0 * math.log(4.0) - 3.0)
    got = transition_cost(kl, (1.0, 1.0), (2.0, 4.0), weights=(2.0, 1.0))
    assert abs(got - want) < 1e-12


def test_transition_cost_rejects_mismatched_bundles():
    sq = make_generator("squared_euclidean")
    with pytest.raises(DimensionMismatch):
        transition_cost(sq, (0.0, 0.0), (1.0,))


def test_path_integral_recovers_the_divergence_of_the_endpoint():
    for family, params, pairs in (
        ("kullback_leibler", {}, ((1.0, 4.0), (2.5, 0.3))),
        ("ces", {"sigma": 2.0}, ((0.5, 2.0), (3.0, 0.7))),
        ("gem", {"theta": 1.0}, ((-1.0, 1.5), (0.4, -0.8))),
    ):
        gen = make_generator(family, **params)
        for x, y in pairs:
            got = path_integral(gen, x, y)
            want = divergence(gen, y, x)
            assert abs(got - want) < 1e-8
            assert abs(path_integral(gen, x, y, n=1024) - want) < 1e-10


def test_path_integral_is_exact_for_quadratic_vector_potentials():
    a = np.array([[2.0, 0.3], [0.3, 1.0]])
    vgen = quadratic_form_generator(a)
    x = np.array([0.5, -1.0])
    y = np.array([2.0, 1.5])
    want = float((y - x) @ a @ (y - x))
    assert abs(path_integral(vgen, x, y) - want) < 1e-12
    with pytest.raises(DimensionMismatch):
        path_integral(vgen, np.array([1.0, 2.0, 3.0]), y)


def test_trace_rejects_too_few_samples():
    gen = make_generator("kullback_leibler")
    with pytest.raises(InvalidParams):
        trace_path(gen, (1.0, 1.0), (2.0, 4.0), samples=1)


def test_trace_grid_and_start_state():
    gen = make_generator("kullback_leibler")
    trace = trace_path(gen, (1.0, 1.0), (2.0, 4.0), samples=11)
    assert len(trace.lambdas) == 11
    assert trace.lambdas[0] == 0.0
    assert trace.lambdas[-1] == 1.0
    assert trace.cumulative_cost[0] == 0.0
    assert trace.field_values[0] == (0.0, 0.0)
    assert trace.points[0] == (1.0, 1.0)
    assert trace.points[-1] == (2.0, 4.0)
    assert trace.weights == (1.0, 1.0)


def test_trace_points_interpolate_linearly_and_duals_track_them():
    gen = make_generator("kullback_leibler")
    trace = trace_path(gen, (1.0, 1.0), (2.0, 4.0), samples=5)
    for lam, z, uz in zip(trace.lambdas, trace.points, trace.dual_points):
        assert abs(z[0] - (1.0 + lam)) < 1e-15
        assert abs(z[1] - (1.0 + 3.0 * lam)) < 1e-15
        for zi, ui in zip(z, uz):
            assert ui == gen.u(zi)


def test_trace_cumulative_cost_equals_partial_divergences():
    # the running integral at lam must price the partial move exactly
    gen = make_generator("kullback_leibler")
    start, end, weights = (1.0, 1.0), (2.0, 4.0), (2.0, 1.0)
    trace = trace_path(gen, start, end, weights=weights, samples=11)
    for lam, z, cost in zip(trace.lambdas, trace.points, trace.cumulative_cost):
        want = transition_cost(gen, start, z, weights=weights)
        assert abs(cost - want) < 1e-10


def test_trace_endpoint_matches_the_total_cost():
    for family, params in (
        ("kullback_leibler", {}),
        ("ces", {"sigma": 2.0}),
        ("gem", {"theta": 1.0}),
    ):
        gen = make_generator(family, **params)
        start, end = (0.5, 1.6), (2.0, 0.7)
        total = transition_cost(gen, start, end)
        for samples in (11, 101):
            trace = trace_path(gen, start, end, samples=samples)
            assert abs(trace.cumulative_cost[-1] - total) < 1e-10


def test_trace_rows_layout():
    gen = make_generator("kullback_leibler")
    trace = trace_path(gen, (1.0, 1.0), (2.0, 4.0), samples=5)
    header, rows = trace_rows(trace)
    assert header == (
        "lambda",
        "z_1",
        "z_2",
        "v_1",
        "v_2",
        "u_1",
        "u_2",
        "cumulative_cost",
    )
    assert len(rows) == 5
    assert all(len(row) == len(header) for row in rows)
    assert rows[0][0] == 0.0
    assert rows[-1][-1] == trace.cumulative_cost[-1]


def test_triangle_decomposition_square_potential_frozen_numbers():
    sq = make_generator("squared_euclidean")
    d = triangle_decompose(sq, (0.0, 0.0), (2.0, 2.0), (1.0, 0.0))
    assert abs(d.total - 8.0) < 1e-12
    assert abs(d.term1 - 5.0) < 1e-12
    assert abs(d.term2 - 1.0) < 1e-12
    assert abs(d.delta - 2.0) < 1e-12
    assert abs(d.via - d.total) < 1e-12


def test_triangle_decomposition_entropy_frozen_numbers():
    kl = make_generator("kullback_leibler")
    d = triangle_decompose(kl, (1.0,), (4.0,), (2.0,))
    log2 = math.log(2.0)
    assert abs(d.total - (8.0 * log2 - 3.0)) < 1e-12
    assert abs(d.term1 - (4.0 * log2 - 2.0)) < 1e-12
    assert abs(d.term2 - (2.0 * log2 - 1.0)) < 1e-12
    assert abs(d.delta - 2.0 * log2) < 1e-12


def test_triangle_identity_closes_for_arbitrary_triples():
    triples = ((0.6, 2.2, 1.1), (1.8, 0.4, 2.9), (1.2, 1.2, 0.7))
    for family, params in (
        ("kullback_leibler", {}),
        ("itakura_saito", {}),
        ("ces", {"sigma": 2.0}),
        ("bregman_csiszar", {"alpha": 0.6}),
    ):
        gen = make_generator(family, **params)
        for x, y, p in triples:
            d = triangle_decompose(gen, (x,), (y,), (p,))
            assert abs(d.via - d.total) < 1e-12


def test_left_pivot_is_the_generator_mean_and_kills_delta():
    kl = make_generator("kullback_leibler")
    pivot = pivot_bundle(kl, (1.0, 4.0), (3.0, 3.0), side="left")
    assert abs(pivot[0] - 2.0) < 1e-12
    assert pivot[0] == pivot[1]
    d = triangle_decompose(kl, (1.0, 4.0), (3.0, 3.0), pivot)
    assert abs(d.delta) < 1e-12


def test_right_pivot_is_the_weighted_average_and_kills_delta():
    kl = make_generator("kullback_leibler")
    pivot = pivot_bundle(kl, (2.0, 2.0), (1.0, 4.0), side="right")
    assert pivot == (2.5, 2.5)
    d = triangle_decompose(kl, (2.0, 2.0), (1.0, 4.0), pivot)
    assert abs(d.delta) < 1e-12


def test_pivot_bundle_rejects_unknown_side():
    kl = make_generator("kullback_leibler")
    with pytest.raises(InvalidParams):
        pivot_bundle(kl, (1.0, 4.0), (3.0, 3.0), side="middle")


def test_level_shift_split_log_family_frozen_numbers():
    # geometric mean 2 pivots (4, 1) -> (3, 3); the dispersion leg costs
    # exactly 1 and the coupling vanishes
    gen = make_generator("cobb_douglas")
    d = slutsky_decompose(gen, WeightedInputs.equal((4.0, 1.0)), 3.0)
    log15 = math.log(1.5)
    assert abs(d.total - (6.0 * log15 - 1.0)) < 1e-12
    assert abs(d.term1 - (6.0 * log15 - 2.0)) < 1e-12
    assert abs(d.term2 - 1.0) < 1e-12
    assert d.delta == 0.0


def test_level_shift_split_square_potential_frozen_numbers():
    sq = make_generator("squared_euclidean")
    d = slutsky_decompose(sq, WeightedInputs.equal((2.0, 4.0)), 1.0)
    assert abs(d.total - 10.0) < 1e-12
    assert abs(d.term1 - 8.0) < 1e-12
    assert abs(d.term2 - 2.0) < 1e-12
    assert abs(d.delta) < 1e-12


def test_level_shift_split_rejects_targets_outside_the_domain():
    kl = make_generator("kullback_leibler")
    with pytest.raises(DomainViolation):
        slutsky_decompose(kl, WeightedInputs.equal((4.0, 1.0)), -1.0)


def test_scale_shift_parameterization_builds_affine_bundles():
    family = scale_shift_parameterization((1.0, 2.0), weights=(2.0, 1.0))
    inputs = family(2.0, 0.5)
    assert inputs.values == (2.5, 4.5)
    assert inputs.weights == (2.0, 1.0)


def test_budget_parameterization_spends_income_evenly():
    family = budget_parameterization((2.0, 1.0, 1.0))
    inputs = family(2.0, 8.0)
    assert inputs.values == (2.0, 2.0, 2.0)
    with pytest.raises(InvalidParams):
        family(-1.0, 8.0)
    with pytest.raises(InvalidParams):
        budget_parameterization(())
    with pytest.raises(InvalidParams):
        budget_parameterization((1.0, -2.0))


def test_indirect_map_derivative_ratios_agree():
    kl = make_generator("kullback_leibler")
    family = budget_parameterization((2.0, 1.0))
    assert roy_residual(kl, 0.3, family, (1.5, 2.0)) < 1e-6
    affine = scale_shift_parameterization((1.0, 2.0))
    gem = make_generator("gem", theta=1.0)
    assert roy_residual(gem, 0.2, affine, (1.1, 0.3)) < 1e-6


def test_indirect_map_ratios_degenerate_at_the_reference_level():
    kl = make_generator("kullback_leibler")
    family = budget_parameterization((2.0, 1.0))
    # at (1, 3) the bundle sits at 3 / (1 + 1) = 1.5 exactly
    with pytest.raises(DegenerateRatio):
        roy_residual(kl, 1.5, family, (1.0, 3.0))


def test_level_curve_points_plug_back_into_the_level_equation():
    kl = make_generator("kullback_leibler")
    ref = WeightedInputs((1.0, 1.0), (1.0, 1.0))
    for side in ("left", "right"):
        curve = divergence_level_curve(kl, ref, 0.5, side=side, samples=17)
        assert curve.level == 0.5
        assert curve.side == side
        assert len(curve.abscissa) == 17
        checked = 0
        for x1, branch in zip(
            curve.abscissa + curve.abscissa, curve.lower + curve.upper
        ):
            if math.isnan(branch):
                continue
            if side == "left":
                total = divergence(kl, x1, 1.0) + divergence(kl, branch, 1.0)
            else:
                total = divergence(kl, 1.0, x1) + divergence(kl, 1.0, branch)
            assert abs(total - 0.5) < 1e-8 or abs(branch - 1.0) < 1e-12
            checked += 1
        assert checked > 20


def test_level_curve_marks_unreachable_branches_with_nan():
    # the lower branch of the first-slot entropy cost tops out at 1, so
    # a level of 2 cannot be closed from below everywhere
    kl = make_generator("kullback_leibler")
    ref = WeightedInputs((1.0, 1.0), (1.0, 1.0))
    curve = divergence_level_curve(kl, ref, 2.0, side="left", samples=9)
    assert any(math.isnan(v) for v in curve.lower)
    assert all(not math.isnan(v) for v in curve.upper)


def test_level_curve_validates_inputs():
    kl = make_generator("kullback_leibler")
    pair = WeightedInputs((1.0, 1.0), (1.0, 1.0))
    with pytest.raises(DimensionMismatch):
        divergence_level_curve(kl, WeightedInputs((1.0, 1.0, 1.0), (1.0,) * 3), 0.5)
    with pytest.raises(InvalidParams):
        divergence_level_curve(kl, pair, -0.5)
    with pytest.raises(InvalidParams):
        divergence_level_curve(kl, pair, 0.5, side="up")
    with pytest.raises(InvalidParams):
        divergence_level_curve(kl, pair, 0.5, samples=2)
