
import cmath

import numpy as np
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from mojo.specflow.exceptions import DegenerateEndpoint, InvalidConcat, InvalidInput, InvalidPartition, NotEquivariant
from mojo.specflow.families.curvefamily import CurveFamily, make_curve
from mojo.specflow.families.partitioning import build_flow_partition
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.flow.pathops import concat, congruence_homotopy, direct_sum, reverse
from mojo.specflow.flow.spectralflow import finite_dimensional_flow, sfl, sfl_equivariant
from mojo.specflow.geometry.circlemodel import CircleModel, build_circle_family
from mojo.specflow.linalg.symmetry import SymmetryAction, direct_sum_actions
from mojo.specflow.randomfamilies import (
    congruence_weights,
    continuation,
    midpath_deformation,
    random_instance,
    random_invertible_instance
)

TOL = 1e-9

AXIOM_EXAMPLES = 200

SEEDS = st.integers(min_value=0, max_value=2 ** 32 - 1)


def flow_value(instance_or_family, action=None) -> complex:
    return sfl_equivariant(instance_or_family, action=action).value.value


def test_scalar_crossing():
    family = SampledFamily([0.0, 1.0], [np.array([[-0.5]]), np.array([[0.5]])])
    assert sfl(family) == 1
    assert sfl(reverse(family)) == -1

    result = sfl_equivariant(family)
    assert result.value.exact_integer == 1
    assert result.per_character == ((1.0 + 0j, 1),)


def test_character_weighted_crossings():
    omega = cmath.exp(2j * cmath.pi / 5)
    action = SymmetryAction.from_diagonal([1.0, omega], "omega")
    family = SampledFamily([0.0, 1.0], [np.diag([-1.0, 1.0]), np.diag([1.0, -1.0])])

    result = sfl_equivariant(family, action)
    assert abs(result.value.value - (1.0 - omega)) < TOL
    assert result.value.exact_integer is None
    assert [n for _, n in result.per_character] == [1, -1]
    assert abs(result.per_character[1][0] - omega) < TOL


def test_gapped_family_has_no_flow():
    family = SampledFamily([0.0, 0.5, 1.0], [np.diag([1.0, -2.0]), np.diag([2.0, -1.0]), np.diag([1.5, -3.0])])
    assert sfl(family) == 0
    assert sfl_equivariant(family).value.exact_integer == 0


def test_endpoint_kernel_counts_in_closed_window():
    up_to_zero = SampledFamily([0.0, 1.0], [np.array([[-1.0]]), np.array([[0.0]])])
    down_from_zero = SampledFamily([0.0, 1.0], [np.array([[0.0]]), np.array([[-1.0]])])
    assert sfl(up_to_zero) == 1
    assert sfl(down_from_zero) == -1


def test_roundoff_zero_at_endpoint_counts_in_closed_window():
    family = SampledFamily([0.0, 1.0], [np.diag([-1.0, 2.0]), np.diag([-3e-16, 2.0])])
    assert sfl(family) == 1

    action = SymmetryAction.from_diagonal([1.0, -1.0], "g")
    assert abs(flow_value(family, action) - 1.0) < TOL


def test_near_zero_endpoint_is_rejected():
    stays_negative = SampledFamily([0.0, 1.0], [np.array([[-1.0]]), np.array([[-5e-9]])])
    with pytest.raises(DegenerateEndpoint):
        sfl(stays_negative)
    with pytest.raises(DegenerateEndpoint):
        sfl_equivariant(stays_negative)
    with pytest.raises(DegenerateEndpoint):
        finite_dimensional_flow(stays_negative)

    starts_near_zero = SampledFamily([0.0, 1.0], [np.array([[5e-9]]), np.array([[1.0]])])
    with pytest.raises(DegenerateEndpoint):
        sfl(starts_near_zero)

    clear_of_zero = SampledFamily([0.0, 1.0], [np.array([[-1.0]]), np.array([[-1e-3]])])
    assert sfl(clear_of_zero) == 0


def test_non_equivariant_family_rejected():
    action = SymmetryAction.from_diagonal([1.0, -1.0], "g")
    family = SampledFamily([0.0, 1.0], [np.array([[0.0, 1.0], [1.0, 0.0]])] * 2)
    with pytest.raises(NotEquivariant):
        sfl_equivariant(family, action)


def test_foreign_partition_rejected():
    gapped = SampledFamily([0.0, 1.0], [np.array([[2.0]]), np.array([[2.0]])])
    crossing = SampledFamily([0.0, 1.0], [np.array([[0.5]]), np.array([[1.5]])])
    with pytest.raises(InvalidPartition):
        sfl(crossing, build_flow_partition(gapped))


def test_concat_requires_matching_ends():
    first = SampledFamily([0.0, 1.0], [np.array([[-1.0]]), np.array([[1.0]])])
    second = SampledFamily([0.0, 1.0], [np.array([[2.0]]), np.array([[1.0]])])
    with pytest.raises(InvalidConcat):
        concat(first, second)


def test_curve_family_flow_and_reverse():
    family = CurveFamily([
        make_curve("a", lambda t: t - 0.5, character=1j, lipschitz=1.0),
        make_curve("b", lambda t: 0.3 - t, multiplicity=2, lipschitz=1.0)
    ], gamma_id="g")
    result = sfl_equivariant(family)
    assert abs(result.value.value - (1j - 2.0)) < TOL
    assert abs(sfl_equivariant(reverse(family)).value.value + (1j - 2.0)) < TOL

    joined = concat(family, reverse(family))
    assert abs(sfl_equivariant(joined).value.value) < TOL
    assert sfl(direct_sum(family, family)) == 2 * sfl(family)


def test_mode_family_flow():
    model = CircleModel.split_twist(j_max=4)
    family = build_circle_family(model)
    result = sfl_equivariant(family)
    assert result.value.exact_integer == 0
    assert sfl(family) == 0
    assert len(result.mode_results) == 9

    with pytest.raises(InvalidInput):
        sfl_equivariant(family, partition=build_flow_partition(SampledFamily([0.0, 1.0], [np.eye(1), np.eye(1)])))


def test_finite_dimensional_flow_needs_invertible_ends():
    family = SampledFamily([0.0, 1.0], [np.array([[-1.0]]), np.array([[0.0]])])
    with pytest.raises(DegenerateEndpoint):
        finite_dimensional_flow(family)


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS)
def test_concatenation_is_additive(seed):
    rng = np.random.default_rng(seed)
    first = random_instance(rng, kernel_at_end=bool(seed % 2))
    second = continuation(rng, first)

    joined = concat(first.family, second.family)
    expected = flow_value(first.family, first.action) + flow_value(second.family, second.action)
    assert abs(flow_value(joined, first.action) - expected) < TOL


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS)
def test_reversal_negates(seed):
    rng = np.random.default_rng(seed)
    instance = random_instance(rng, kernel_at_end=bool(seed % 2))

    forward = flow_value(instance.family, instance.action)
    backward = flow_value(reverse(instance.family), instance.action)
    assert abs(forward + backward) < TOL


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS)
def test_direct_sum_is_additive(seed):
    rng = np.random.default_rng(seed)
    first = random_instance(rng, max_dim=4)
    second = random_instance(rng, max_dim=4, gamma_id=first.action.gamma_id)

    action = direct_sum_actions(first.action, second.action)
    summed = direct_sum(first.family, second.family)
    expected = flow_value(first.family, first.action) + flow_value(second.family, second.action)
    assert abs(flow_value(summed, action) - expected) < TOL


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS)
def test_matches_finite_dimensional_flow(seed):
    rng = np.random.default_rng(seed)
    instance = random_instance(rng)

    expected = finite_dimensional_flow(instance.family, instance.action).value
    assert abs(flow_value(instance.family, instance.action) - expected) < TOL


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS, s=st.sampled_from([0.25, 0.5, 1.0]))
def test_homotopy_invariance(seed, s):
    rng = np.random.default_rng(seed)
    instance = random_instance(rng, max_dim=6, kernel_at_end=bool(seed % 2))
    base = flow_value(instance.family, instance.action)

    weights = congruence_weights(rng, instance)
    congruent = congruence_homotopy(instance.family, weights, s)
    assert abs(flow_value(congruent, instance.action) - base) < TOL

    deformed = midpath_deformation(rng, instance)(s)
    assert abs(flow_value(deformed, instance.action) - base) < TOL


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS, initial=st.integers(min_value=2, max_value=7))
def test_partition_independence(seed, initial):
    rng = np.random.default_rng(seed)
    instance = random_instance(rng, kernel_at_end=bool(seed % 2))

    canonical = sfl_equivariant(instance.family, instance.action)
    other = build_flow_partition(instance.family, initial_segments=initial)
    alternative = sfl_equivariant(instance.family, instance.action, partition=other)

    assert canonical.per_character == alternative.per_character
    assert abs(canonical.value.value - alternative.value.value) < TOL
    assert sfl(instance.family) == sfl(instance.family, other)


@settings(max_examples=AXIOM_EXAMPLES, deadline=None, derandomize=True)
@given(seed=SEEDS)
def test_invertible_family_has_no_flow(seed):
    rng = np.random.default_rng(seed)
    instance = random_invertible_instance(rng)
    assert abs(flow_value(instance.family, instance.action)) < TOL
