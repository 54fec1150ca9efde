"""
.. module:: boundaryterm
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`BoundaryTerm` object.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


import collections

from dataclasses import dataclass

from mojo.specflow.exceptions import InternalInconsistency
from mojo.specflow.model.equivariantvalue import EquivariantValue

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class BoundaryTerm:
    """
        𝔟 = −½(tr(γ|ker A(0)) + tr(γ|ker A(1)) + η_γ(A(0)) − η_γ(A(1))) with its four components.
    """

    b_value: EquivariantValue
    kernel_trace_start: EquivariantValue
    kernel_trace_end: EquivariantValue
    eta_start: EquivariantValue
    eta_end: EquivariantValue
    eta_method: str # "closed", "lerch" or "oracle"

    def __post_init__(self):
        expected = -0.5 * (self.kernel_trace_start.value + self.kernel_trace_end.value
                           + self.eta_start.value - self.eta_end.value)
        if abs(expected - self.b_value.value) > BOUNDARY_TOL:
            raise InternalInconsistency(f"Boundary term {self.b_value.value} does not match its components {expected}.")
        return

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("b", self.b_value.as_dict()),
            ("kernel_trace_start", self.kernel_trace_start.as_dict()),
            ("kernel_trace_end", self.kernel_trace_end.as_dict()),
            ("eta_start", self.eta_start.as_dict()),
            ("eta_end", self.eta_end.as_dict()),
            ("eta_method", self.eta_method)
        ])
        return rtnval
