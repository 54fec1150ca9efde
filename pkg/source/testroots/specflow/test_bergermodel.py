
import math

import pytest

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.flow.spectralflow import sfl, sfl_equivariant
from mojo.specflow.geometry.bergermodel import (
    BergerModel,
    berger_crossings,
    build_berger_family,
    chi_n,
    fiber_eigenvalue,
    mixed_eigenvalue,
    weights
)

CROSSING_TOL = 1e-9
TOL = 1e-9


def test_chi_n_values():
    assert chi_n(1, 0.7) == pytest.approx(1.0)
    assert chi_n(2, 0.7) == pytest.approx(2.0 * math.cos(0.7))
    assert chi_n(3, 0.0) == pytest.approx(3.0)
    assert chi_n(4, 0.9) == pytest.approx(math.sin(3.6) / math.sin(0.9))
    with pytest.raises(InvalidInput):
        chi_n(0, 0.1)


def test_weights_sum_to_character():
    assert abs(sum(weights(5, 0.4)) - chi_n(5, 0.4)) < 1e-12


def test_eigenvalue_branches():
    assert fiber_eigenvalue(2.0, 3) == pytest.approx(2.5)
    assert mixed_eigenvalue(4.0, 2, 1, -1) == pytest.approx(0.0, abs=1e-15)
    assert mixed_eigenvalue(4.0, 2, 1, 1) == pytest.approx(4.0)


def test_model_validation():
    with pytest.raises(InvalidInput):
        BergerModel(n_max=0)
    with pytest.raises(InvalidInput):
        BergerModel(lambda_lo=0.0)
    with pytest.raises(InvalidInput):
        BergerModel(lambda_hi=6.0)
    with pytest.raises(InvalidInput):
        BergerModel(lambda_lo=3.0, lambda_hi=2.0)


def test_only_crossing_is_at_lambda_four():
    crossings = berger_crossings(BergerModel())
    assert len(crossings) == 2
    for crossing, lam in crossings:
        assert crossing.curve.startswith("n=2,p=1,")
        assert crossing.curve.endswith(",-")
        assert crossing.direction == 1
        assert crossing.multiplicity == 1
        assert abs(lam - 4.0) < CROSSING_TOL
        assert crossing.t == pytest.approx(0.75, abs=CROSSING_TOL)


def test_identity_flow_is_two():
    family = build_berger_family(BergerModel(n_max=6))
    assert sfl(family) == 2
    assert sfl_equivariant(family).value.exact_integer == 2


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.5])
def test_equivariant_flow_is_chi_two(theta):
    model = BergerModel(n_max=6, theta=theta)
    result = sfl_equivariant(build_berger_family(model))
    assert abs(result.value.value - chi_n(2, theta)) < TOL
    assert result.value.exact_integer is None


def test_flow_stable_under_more_representations():
    model = BergerModel(n_max=4, theta=1.0)
    small = sfl_equivariant(build_berger_family(model)).value.value
    large = sfl_equivariant(build_berger_family(model.with_options(n_max=8))).value.value
    assert abs(small - large) < TOL


def test_family_size():
    family = build_berger_family(BergerModel(n_max=2))
    # n = 1: one fiber branch; n = 2: two fiber branches and two weights on each mixed branch
    assert len(family.curves) == 1 + 2 + 4
    assert family.descriptor["model"] == "berger"
