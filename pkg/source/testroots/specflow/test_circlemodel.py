
import cmath

import numpy as np
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.flow.spectralflow import sfl, sfl_equivariant
from mojo.specflow.geometry.circlemodel import (
    CircleModel,
    build_circle_family,
    circle_boundary_term,
    circle_spectrum,
    gamma_label,
    interior_closed_form,
    interior_quadrature,
    reference_flow,
    rotation
)
from mojo.specflow.index.apsindex import ApsProblem, solve_index
from mojo.specflow.model.conventions import ActionConvention, EndpointConvention, OperatorVariant

TOL = 1e-8

SEVENTH = cmath.exp(2j * cmath.pi / 7)


def flow_of(model: CircleModel) -> complex:
    return sfl_equivariant(build_circle_family(model)).value.value


def inclusive_index(model: CircleModel) -> complex:
    problem = ApsProblem(build_circle_family(model), EndpointConvention.INCLUSIVE, OperatorVariant.LORENTZIAN)
    return solve_index(problem).index.value


def test_line_twist_flow_without_symmetry():
    model = CircleModel.line_twist(j_max=6)
    family = build_circle_family(model)
    assert sfl(family) == 1
    assert sfl_equivariant(family).value.exact_integer == 1


@pytest.mark.parametrize("z", [1.0, 1j, SEVENTH])
def test_line_twist_flow_and_index(z):
    model = CircleModel.line_twist(j_max=6, z=z)
    assert abs(flow_of(model) - z) < TOL
    assert abs(inclusive_index(model) - z) < TOL

    strict = solve_index(ApsProblem(build_circle_family(model), EndpointConvention.STRICT, OperatorVariant.LORENTZIAN))
    assert abs(strict.index.value) < TOL


@pytest.mark.parametrize("z", [1.0, 1j, SEVENTH])
def test_split_twist_flow_and_index(z):
    model = CircleModel.split_twist(j_max=6, z=z)
    assert abs(flow_of(model) - (1.0 - z)) < TOL
    assert abs(inclusive_index(model) - (1.0 - z)) < TOL


def test_split_twist_per_character():
    model = CircleModel.split_twist(j_max=4, z=SEVENTH)
    result = sfl_equivariant(build_circle_family(model))
    assert [n for _, n in result.per_character] == [1, -1]
    assert abs(result.per_character[0][0] - 1.0) < TOL
    assert abs(result.per_character[1][0] - SEVENTH) < TOL


@pytest.mark.parametrize("factory", [CircleModel.line_twist, CircleModel.split_twist])
def test_flow_stable_under_more_modes(factory):
    model = factory(j_max=4, z=1j)
    assert abs(flow_of(model) - flow_of(model.with_options(j_max=8))) < TOL


@pytest.mark.parametrize("factory", [CircleModel.line_twist, CircleModel.split_twist])
@pytest.mark.parametrize("convention", [ActionConvention.FIBER, ActionConvention.FIBER_BASE])
def test_reference_flow_matches(factory, convention):
    model = factory(j_max=5, z=SEVENTH, action_convention=convention)
    assert abs(flow_of(model) - reference_flow(model)) < TOL


def test_smoothstep_profile_keeps_flow():
    model = CircleModel.split_twist(j_max=3, z=1j, profile="smoothstep")
    assert abs(flow_of(model) - (1.0 - 1j)) < TOL


def test_model_validation():
    with pytest.raises(InvalidInput):
        CircleModel(2, np.eye(3), (0, 0))
    with pytest.raises(InvalidInput):
        CircleModel(1, np.array([[1j]]), (0,))
    with pytest.raises(InvalidInput):
        CircleModel(2, np.eye(2), (0,))
    with pytest.raises(InvalidInput):
        CircleModel(2, np.array([[1.0, 1.0], [1.0, -1.0]]), (0, 1))
    with pytest.raises(InvalidInput):
        CircleModel.line_twist(z=2.0)
    with pytest.raises(InvalidInput):
        CircleModel.line_twist(j_max=0)
    with pytest.raises(InvalidInput):
        CircleModel.line_twist(profile="cubic")


def test_gamma_labels():
    assert gamma_label(1.0) == "1"
    assert gamma_label(1j).startswith("z=")
    assert abs(rotation(cmath.pi / 2) - 1j) < 1e-15
    assert CircleModel.line_twist(z=1j).gamma_id == gamma_label(1j)


def test_circle_spectrum_endpoints_carry_kernel():
    model = CircleModel.line_twist()
    start = circle_spectrum(model, 0.0)
    assert start.kernel_trace().exact_integer == 1
    assert start.progressions[0].offset == 1.0

    middle = circle_spectrum(model, 0.5)
    assert middle.finite_part == ()
    assert middle.progressions[0].offset == pytest.approx(0.5)


def test_circle_spectrum_fiber_base_twists_progression():
    model = CircleModel.line_twist(z=1j, action_convention=ActionConvention.FIBER_BASE)
    spectrum = circle_spectrum(model, 0.5)
    assert abs(spectrum.progressions[0].ratio - 1j) < 1e-15

    fiber = circle_spectrum(model.with_options(action_convention=ActionConvention.FIBER), 0.5)
    assert fiber.progressions[0].has_unit_ratio


def test_boundary_term_of_line_twist():
    term = circle_boundary_term(CircleModel.line_twist())
    assert term.b_value.exact_integer == -1
    assert term.eta_method == "closed"

    twisted = circle_boundary_term(CircleModel.line_twist(z=SEVENTH))
    assert abs(twisted.b_value.value + SEVENTH) < TOL


def test_interior_quadrature_matches_closed_form():
    model = CircleModel.line_twist()
    assert abs(interior_closed_form(model) - 1.0) < 1e-15
    assert abs(interior_quadrature(model, points=32) - 1.0) < TOL

    split = CircleModel.split_twist(profile="smoothstep")
    assert abs(interior_quadrature(split, points=32)) < TOL
    with pytest.raises(InvalidInput):
        interior_quadrature(model, points=0)


TWIST_DIAGONALS = st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=1, max_size=3).filter(lambda d: abs(sum(d)) >= 0.1)


@settings(max_examples=25, deadline=None, derandomize=True)
@given(diagonal=TWIST_DIAGONALS)
def test_interior_quadrature_converges_at_second_order(diagonal):
    model = CircleModel(len(diagonal), np.diag(diagonal), (0,) * len(diagonal), profile="smoothstep")
    closed = interior_closed_form(model)
    assert abs(closed - sum(diagonal)) < 1e-12

    errors = [abs(interior_quadrature(model, points=points) - closed) for points in (8, 16, 32)]
    for coarse, fine in zip(errors[:-1], errors[1:]):
        assert 3.5 < coarse / fine < 4.5
