import math

import numpy as np
import pytest

from bregecon.epf import (
    FAMILIES,
    MATRIX_COLUMNS,
    EpfSpec,
    GeneratorMap,
    NotAnLda,
    ces_dual_pairing_residual,
    check_homogeneity,
    check_translatable,
    elasticity,
    epf_config,
    epf_from_config,
    epf_to_generator,
    epf_value,
    idempotency_violation,
    leontief_limit_gap,
    marginal_rate_substitution,
    property_matrix,
    substitution_elasticity,
)
from bregecon.errors import (
    DimensionMismatch,
    DomainViolation,
    InvalidSpec,
    NumericalBreakdown,
)


def test_family_roster():
    assert FAMILIES == ("ces", "cobb_douglas", "gem", "leontief", "translog", "mst")
    assert len(MATRIX_COLUMNS) == 7


def test_family_names_canonicalize_spelling_variants():
    assert EpfSpec("Cobb-Douglas", (0.4, 0.6)).family == "cobb_douglas"
    assert EpfSpec("CES", (0.5, 0.5), sigma=2.0).family == "ces"
    assert EpfSpec("CobbDouglas", (1.0,)).family == "cobb_douglas"
    with pytest.raises(InvalidSpec):
        EpfSpec("quadratic", (1.0,))


def test_ces_value_closed_form():
    spec = EpfSpec("ces", (0.5, 0.5), sigma=2.0)
    # rho = 1/2, so the value is the squared average of square roots
    assert abs(epf_value(spec, (1.0, 4.0)) - 2.25) < 1e-12
    assert abs(epf_value(spec, (9.0, 1.0)) - 4.0) < 1e-12


def test_cobb_douglas_value_closed_form():
    spec = EpfSpec("cobb_douglas", (0.4, 0.6))
    want = 2.0**0.4 * 3.0**0.6
    assert abs(epf_value(spec, (2.0, 3.0)) - want) < 1e-12


def test_exponential_value_closed_form_both_signs():
    up = EpfSpec("gem", (0.3, 0.7), theta=1.0)
    assert abs(epf_value(up, (0.0, math.log(2.0))) - math.log(1.7)) < 1e-12
    down = EpfSpec("gem", (0.3, 0.7), theta=-1.0)
    want = -math.log(0.3 + 0.7 * 0.5)
    assert abs(epf_value(down, (0.0, math.log(2.0))) - want) < 1e-12


def test_fixed_proportions_value_is_the_scaled_minimum():
    spec = EpfSpec("leontief", (2.0, 1.0))
    assert epf_value(spec, (1.0, 3.0)) == 2.0
    assert epf_value(spec, (5.0, 3.0)) == 3.0


def test_translog_value_matches_a_literal_double_loop():
    beta0 = 0.1
    beta = (0.3, 0.5)
    matrix = ((0.08, 0.05), (0.06, 0.07))
    spec = EpfSpec("translog", beta, beta0=beta0, beta_matrix=matrix)
    x = (2.0, 3.0)
    logs = [math.log(v) for v in x]
    acc = beta0
    for i in range(2):
        acc += beta[i] * logs[i]
        for j in range(2):
            acc += matrix[i][j] * logs[i] * logs[j]
    assert abs(epf_value(spec, x) - math.exp(acc)) < 1e-12


def test_saturating_product_value_closed_form():
    spec = EpfSpec("mst", (1.0, 1.0), theta=-1.0)
    want = (1.0 - math.exp(-1.0)) ** 2
    assert abs(epf_value(spec, (1.0, 1.0)) - want) < 1e-15
    flipped = EpfSpec("mst", (1.0, 1.0), theta=1.0)
    assert abs(epf_value(flipped, (-1.0, -1.0)) - want) < 1e-15


@pytest.mark.parametrize(
    "kwargs",
    [
        {"family": "ces", "beta": (0.5, 0.5)},
        {"family": "ces", "beta": (0.5, 0.5), "sigma": 1.0},
        {"family": "ces", "beta": (0.5, 0.5), "sigma": 0.0},
        {"family": "cobb_douglas", "beta": (0.4, 0.4)},
        {"family": "cobb_douglas", "beta": (0.4, 0.6), "sigma": 2.0},
        {"family": "gem", "beta": (0.3, 0.7)},
        {"family": "gem", "beta": (0.3, 0.7), "theta": 0.0},
        {"family": "mst", "beta": (1.0, 1.0), "theta": 0.5},
        {"family": "translog", "beta": (0.3, 0.5), "beta0": 0.1},
        {
            "family": "translog",
            "beta": (0.3, 0.5),
            "beta0": 0.1,
            "beta_matrix": ((0.1, 0.2),),
        },
        {
            "family": "translog",
            "beta": (0.3, 0.5),
            "beta0": 0.1,
            "beta_matrix": ((0.1, -0.2), (0.1, 0.1)),
        },
        {"family": "leontief", "beta": ()},
        {"family": "leontief", "beta": (1.0, -2.0)},
    ],
)
def test_spec_validation_rejects_inconsistent_parameters(kwargs):
    with pytest.raises(InvalidSpec):
        EpfSpec(**kwargs)


def test_bundle_checks_guard_shape_and_domain():
    spec = EpfSpec("cobb_douglas", (0.4, 0.6))
    with pytest.raises(DimensionMismatch):
        epf_value(spec, (1.0, 2.0, 3.0))
    with pytest.raises(DomainViolation):
        epf_value(spec, (1.0, -2.0))
    with pytest.raises(DomainViolation):
        epf_value(spec, (1.0, float("nan")))
    saturating = EpfSpec("mst", (1.0, 1.0), theta=-1.0)
    with pytest.raises(DomainViolation):
        epf_value(saturating, (-1.0, 1.0))


def test_generator_correspondence_reproduces_values():
    cases = (
        (EpfSpec("ces", (0.3, 0.7), sigma=2.0), "ces"),
        (EpfSpec("ces", (0.3, 0.7), sigma=0.5), "itakura_saito"),
        (EpfSpec("cobb_douglas", (0.4, 0.6)), "cobb_douglas"),
        (EpfSpec("gem", (0.3, 0.7), theta=-0.8), "gem"),
    )
    for spec, expected_name in cases:
        mapping = epf_to_generator(spec)
        assert isinstance(mapping, GeneratorMap)
        assert mapping.generator.name == expected_name
        assert mapping.weights == spec.beta
        for x in ((0.7, 1.8), (1.3, 0.9), (2.1, 1.4)):
            assert abs(mapping.mean(x) - epf_value(spec, x)) < 1e-12


def test_harmonic_ces_goes_through_the_reciprocal_generator():
    """sigma = 1/2 degenerates the power potential but not the mean."""
    spec = EpfSpec("ces", (0.25, 0.75), sigma=0.5)
    x = (2.0, 0.5)
    want = 1.0 / (0.25 / 2.0 + 0.75 / 0.5)
    assert abs(epf_value(spec, x) - want) < 1e-12
    assert abs(epf_to_generator(spec).mean(x) - want) < 1e-12


def test_families_without_mean_representation_say_so():
    leontief = epf_to_generator(EpfSpec("leontief", (1.0, 1.0)))
    assert isinstance(leontief, NotAnLda)
    assert leontief.limit == "ces"
    for spec in (
        EpfSpec("translog", (0.3, 0.5), beta0=0.1, beta_matrix=((0.08, 0.05), (0.06, 0.07))),
        EpfSpec("mst", (1.0, 0.8), theta=-1.0),
    ):
        marker = epf_to_generator(spec)
        assert isinstance(marker, NotAnLda)
        assert marker.limit is None
        assert "idempotent" in marker.reason


def test_generator_correspondence_requires_normalized_weights():
    with pytest.raises(InvalidSpec):
        epf_to_generator(EpfSpec("ces", (1.0, 1.0), sigma=2.0))


def test_min_form_proxy_gap_value_and_decay():
    # at x = (1, 2) only the scarce input matters, so the sigma = 0.01
    # proxy sits at 2**(1/99) and the min form at 1
    gap = leontief_limit_gap((1.0, 1.0), (1.0, 2.0), 0.01)
    assert abs(gap - (2.0 ** (1.0 / 99.0) - 1.0)) < 1e-6
    gaps = [
        leontief_limit_gap((1.0, 1.0), (1.0, 2.0), s)
        for s in (0.2, 0.1, 0.05, 0.02, 0.01)
    ]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    for bad in (0.3, 0.0, -0.1):
        with pytest.raises(InvalidSpec):
            leontief_limit_gap((1.0, 1.0), (1.0, 2.0), bad)


def test_cobb_douglas_elasticities_are_the_exponents():
    spec = EpfSpec("cobb_douglas", (0.4, 0.6))
    x = np.array([2.0, 3.0])
    assert abs(elasticity(spec, x, 0) - 0.4) < 1e-6
    assert abs(elasticity(spec, x, 1) - 0.6) < 1e-6


def test_elasticities_sum_to_one_for_homogeneous_families():
    for spec in (
        EpfSpec("ces", (0.5, 0.5), sigma=2.0),
        EpfSpec("cobb_douglas", (0.4, 0.6)),
    ):
        for x in ((0.7, 1.8), (1.3, 0.9)):
            total = elasticity(spec, np.asarray(x), 0) + elasticity(
                spec, np.asarray(x), 1
            )
            assert abs(total - 1.0) < 1e-6


def test_homogeneity_and_translation_sort_the_families():
    ces = EpfSpec("ces", (0.5, 0.5), sigma=2.0)
    gem = EpfSpec("gem", (0.3, 0.7), theta=1.0)
    translog = EpfSpec(
        "translog", (0.3, 0.5), beta0=0.1, beta_matrix=((0.08, 0.05), (0.06, 0.07))
    )
    ok, residual = check_homogeneity(ces)
    assert ok and residual < 1e-9
    ok, residual = check_homogeneity(translog)
    assert not ok and residual > 1e-3
    ok, residual = check_translatable(gem)
    assert ok and residual < 1e-9
    ok, residual = check_translatable(ces)
    assert not ok and residual > 1e-3


def test_substitution_rates_match_the_weight_and_ratio_rule():
    cd = EpfSpec("cobb_douglas", (0.4, 0.6))
    got = marginal_rate_substitution(cd, np.array([2.0, 3.0]), 0, 1)
    assert abs(got - 1.0) < 1e-6
    ces = EpfSpec("ces", (0.5, 0.5), sigma=2.0)
    got = marginal_rate_substitution(ces, np.array([1.0, 4.0]), 0, 1)
    assert abs(got - 2.0) < 1e-6


@pytest.mark.parametrize("sigma", [0.5, 2.0, 3.0, -1.5])
def test_substitution_elasticity_recovers_the_ces_parameter(sigma):
    spec = EpfSpec("ces", (0.5, 0.5), sigma=sigma)
    got = substitution_elasticity(spec, np.array([0.7, 1.8]), 0, 1)
    assert abs(got - sigma) < 1e-4 * max(1.0, abs(sigma))


def test_substitution_elasticity_is_one_for_cobb_douglas():
    spec = EpfSpec("cobb_douglas", (0.4, 0.6))
    got = substitution_elasticity(spec, np.array([1.3, 0.9]), 0, 1)
    assert abs(got - 1.0) < 1e-4


def test_substitution_elasticity_breaks_down_on_the_min_form():
    spec = EpfSpec("leontief", (1.0, 1.0))
    with pytest.raises(NumericalBreakdown):
        substitution_elasticity(spec, np.array([1.0, 1.04]), 0, 1)


def test_ces_conjugate_pairing_residual_is_tiny():
    for x in ((0.7, 1.8), (1.3, 0.9), (2.1, 1.4)):
        assert ces_dual_pairing_residual(2.0, (0.5, 0.5), x) < 1e-10


def test_idempotency_separates_mean_families_from_the_rest():
    assert idempotency_violation(EpfSpec("ces", (0.5, 0.5), sigma=2.0)) < 1e-12
    assert idempotency_violation(EpfSpec("cobb_douglas", (0.4, 0.6))) < 1e-12
    assert idempotency_violation(EpfSpec("gem", (0.3, 0.7), theta=1.0)) < 1e-12
    translog = EpfSpec(
        "translog", (0.3, 0.5), beta0=0.1, beta_matrix=((0.08, 0.05), (0.06, 0.07))
    )
    assert idempotency_violation(translog) > 0.1
    assert idempotency_violation(EpfSpec("mst", (1.0, 0.8), theta=-1.0)) > 0.1


EXPECTED_VERDICTS = {
    "ces": ("Y", "Y", "Y", "N", "Y", "Y", "N"),
    "cobb_douglas": ("Y", "Y", "Y", "Y", "Y", "Y", "N"),
    "gem": ("Y", "N", "N", "N", "N", "N", "Y"),
    "leontief": ("L", "L", "L", "N", "L", "L", "N"),
    "translog": ("N", "N", "N", "N", "N", "N", "N"),
    "mst": ("N", "N", "N", "N", "N", "N", "N"),
}


def test_property_matrix_reproduces_the_expected_verdict_grid():
    cells = property_matrix()
    assert len(cells) == 42
    for cell in cells:
        assert cell.verdict != "?", cell
        want = EXPECTED_VERDICTS[cell.family][MATRIX_COLUMNS.index(cell.column)]
        assert cell.verdict == want, cell


def test_property_matrix_orders_rows_by_family_then_column():
    cells = property_matrix()
    order = [(c.family, c.column) for c in cells]
    want = [(f, c) for f in FAMILIES for c in MATRIX_COLUMNS]
    assert order == want


def test_spec_config_round_trip():
    specs = (
        EpfSpec("ces", (0.5, 0.5), sigma=2.0),
        EpfSpec("cobb_douglas", (0.4, 0.6)),
        EpfSpec("gem", (0.3, 0.7), theta=-1.0),
        EpfSpec("leontief", (1.0, 0.8)),
        EpfSpec(
            "translog", (0.3, 0.5), beta0=0.1, beta_matrix=((0.08, 0.05), (0.06, 0.07))
        ),
        EpfSpec("mst", (1.0, 0.8), theta=-1.0),
    )
    for spec in specs:
        clone = epf_from_config(epf_config(spec))
        assert clone == spec


@pytest.mark.parametrize(
    "config",
    [
        {"family": "ces", "beta": [0.5, 0.5], "sigma": 2.0, "rho": 0.5},
        {"family": "ces"},
        {"beta": [0.5, 0.5]},
        [1, 2, 3],
    ],
)
def test_spec_config_rejects_malformed_input(config):
    with pytest.raises(InvalidSpec):
        epf_from_config(config)
