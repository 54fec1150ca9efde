"""
.. module:: rhsreport
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`RhsReport` object that assembles the right hand side
               of the index theorem for flat product geometries.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Dict, Tuple

import collections

from dataclasses import dataclass, field

from mojo.specflow.exceptions import InternalInconsistency
from mojo.specflow.model.boundaryterm import BoundaryTerm
from mojo.specflow.model.equivariantvalue import EquivariantValue

RHS_TOL = 1e-9


@dataclass(frozen=True)
class RhsReport:

    interior: EquivariantValue
    boundary_transgression: EquivariantValue
    b: BoundaryTerm
    total: EquivariantValue
    fixed_point_components: Tuple[Tuple[int, int], ...] # (ℓ, ℓ^⊥) per component of the fixed point set
    interior_closed_form: complex
    convention_matches: Dict[str, bool] = field(default_factory=dict) # endpoint convention -> LHS equals total

    def __post_init__(self):
        expected = self.interior.value + self.boundary_transgression.value + self.b.b_value.value
        if abs(expected - self.total.value) > RHS_TOL:
            raise InternalInconsistency(f"Right hand side total {self.total.value} is not the sum of its terms {expected}.")
        return

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("interior", self.interior.as_dict()),
            ("interior_closed_form", [self.interior_closed_form.real, self.interior_closed_form.imag]),
            ("boundary_transgression", self.boundary_transgression.as_dict()),
            ("boundary_term", self.b.as_dict()),
            ("total", self.total.as_dict()),
            ("fixed_point_components", [list(comp) for comp in self.fixed_point_components]),
            ("convention_matches", collections.OrderedDict(sorted(self.convention_matches.items())))
        ])
        return rtnval
