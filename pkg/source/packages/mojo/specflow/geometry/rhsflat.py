"""
.. module:: rhsflat
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the assembly of the right hand side of the equivariant index
               theorem for the flat circle model: interior term, boundary transgression and
               boundary term.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Optional

import logging

from mojo.specflow.exceptions import InternalInconsistency, OutOfScope
from mojo.specflow.geometry.circlemodel import (
    CircleModel,
    build_circle_family,
    circle_boundary_term,
    interior_closed_form,
    interior_quadrature
)
from mojo.specflow.index.apsindex import ApsProblem, solve_index
from mojo.specflow.model.conventions import EndpointConvention, OperatorVariant
from mojo.specflow.model.equivariantvalue import EquivariantValue
from mojo.specflow.model.rhsreport import RhsReport

logger = logging.getLogger(__name__)

QUADRATURE_AGREEMENT_TOL = 1e-8
DEFAULT_QUADRATURE_POINTS = 64


def extrapolated_interior(model: CircleModel, points: int = DEFAULT_QUADRATURE_POINTS) -> complex:
    """
        The midpoint quadrature on points and 2·points grids combined by one Richardson step.
        The midpoint rule is second order, so the combination removes its h² error term.
    """
    coarse = interior_quadrature(model, points=points)
    fine = interior_quadrature(model, points=2 * int(points))
    return fine + (fine - coarse) / 3.0


def rhs_flat(model: CircleModel, gamma: Optional[complex] = None,
             quadrature_points: int = DEFAULT_QUADRATURE_POINTS) -> RhsReport:
    """
        Assembles interior + transgression + 𝔟 for the circle model and compares the total with
        the directly computed index under both endpoint conventions.

        For γ = 1 the fixed point set is all of M, the Â form and the normal bundle factor are
        trivial and the interior term is (2πi)^(−1)∫ tr(e^(−Ω)).  For γ ≠ 1 the fixed point set is
        empty.  The structures are of product type near the boundary, so the transgression
        vanishes.

        :param model: The circle model.
        :param gamma: Overrides the model's group element z.
        :param quadrature_points: Grid points per direction for the interior quadrature.

        :raises OutOfScope: For models other than the flat circle model.
        :raises InternalInconsistency: When the interior quadrature disagrees with tr(J).
    """
    if not isinstance(model, CircleModel):
        raise OutOfScope(f"The flat right hand side is only available for the circle model, not {type(model).__name__}.")

    if gamma is not None:
        model = model.with_options(z=gamma)

    gamma_id = model.gamma_id
    identity = model.is_identity

    if identity:
        closed = interior_closed_form(model)
        quadrature = extrapolated_interior(model, points=quadrature_points)
        if abs(quadrature - closed) > QUADRATURE_AGREEMENT_TOL:
            errmsg = f"Interior quadrature {quadrature} differs from the closed form {closed}."
            raise InternalInconsistency(errmsg)
        logger.debug("interior quadrature %s, closed form %s", quadrature, closed)
        interior = EquivariantValue(quadrature, gamma_id)
        components = ((1, 0),)
    else:
        closed = 0j
        interior = EquivariantValue(0.0, gamma_id)
        components = ()

    transgression = EquivariantValue(0.0, gamma_id, 0 if identity else None)
    boundary = circle_boundary_term(model)

    total = interior + transgression + boundary.b_value

    family = build_circle_family(model)
    matches = {}
    for convention in EndpointConvention:
        index = solve_index(ApsProblem(family, convention, OperatorVariant.LORENTZIAN)).index
        matches[convention.value] = abs(index.value - total.value) <= model.tolerances.identity_tol

    report = RhsReport(interior, transgression, boundary, total, components, complex(closed), matches)

    return report
