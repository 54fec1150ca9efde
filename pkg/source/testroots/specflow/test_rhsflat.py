
import cmath

import pytest

from mojo.specflow.exceptions import InternalInconsistency, OutOfScope
from mojo.specflow.geometry.bergermodel import BergerModel
from mojo.specflow.geometry.circlemodel import CircleModel
from mojo.specflow.geometry import rhsflat
from mojo.specflow.geometry.rhsflat import extrapolated_interior, rhs_flat

TOL = 1e-8


def test_untwisted_line_model():
    report = rhs_flat(CircleModel.line_twist(j_max=4))

    assert abs(report.interior.value - 1.0) < TOL
    assert report.interior_closed_form == 1.0
    assert report.boundary_transgression.exact_integer == 0
    assert report.b.b_value.exact_integer == -1
    assert abs(report.total.value) < TOL
    assert report.fixed_point_components == ((1, 0),)
    assert report.convention_matches == {"strict": True, "inclusive": False}


def test_untwisted_split_model():
    report = rhs_flat(CircleModel.split_twist(j_max=4))

    assert abs(report.interior.value) < TOL
    assert report.b.b_value.exact_integer == -2
    assert report.convention_matches["strict"]


def test_rotation_without_fixed_points():
    z = cmath.exp(2j * cmath.pi / 7)
    report = rhs_flat(CircleModel.line_twist(j_max=4), gamma=z)

    assert report.interior.value == 0.0
    assert report.fixed_point_components == ()
    assert abs(report.b.b_value.value + z) < TOL
    assert abs(report.total.value + z) < TOL
    assert report.convention_matches == {"strict": False, "inclusive": False}


def test_report_document():
    document = rhs_flat(CircleModel.line_twist(j_max=2)).as_dict()
    assert list(document.keys())[0] == "interior"
    assert list(document["convention_matches"].keys()) == ["inclusive", "strict"]


def test_other_models_out_of_scope():
    with pytest.raises(OutOfScope):
        rhs_flat(BergerModel())


def test_smoothstep_interior_is_extrapolated():
    model = CircleModel.line_twist(j_max=4, profile="smoothstep")
    assert abs(extrapolated_interior(model) - 1.0) < TOL

    report = rhs_flat(model)
    assert abs(report.interior.value - 1.0) < TOL
    assert report.convention_matches == {"strict": True, "inclusive": False}


def test_interior_disagreement_is_inconsistent(monkeypatch):
    monkeypatch.setattr(rhsflat, "interior_quadrature", lambda model, points: 1.0 + 1e-6)
    with pytest.raises(InternalInconsistency):
        rhs_flat(CircleModel.line_twist(j_max=4))

    twisted = rhs_flat(CircleModel.line_twist(j_max=4, z=1j))
    assert twisted.interior.value == 0.0
