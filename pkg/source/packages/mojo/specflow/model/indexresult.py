"""
.. module:: indexresult
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`IndexResult` object that carries the equivariant
               index of an APS boundary value problem.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Any, Optional, Tuple

import collections
import math

from dataclasses import dataclass, field

from mojo.specflow.exceptions import InternalInconsistency
from mojo.specflow.model.conventions import EndpointConvention, OperatorVariant
from mojo.specflow.model.equivariantvalue import EquivariantValue, complex_pair

INDEX_TOL = 1e-9


@dataclass(frozen=True)
class IndexResult:
    """
        ind_γ = tr(γ|ker D) − tr(γ|ker D*) for one convention and operator variant.
    """

    index: EquivariantValue
    kernel_trace: EquivariantValue
    cokernel_trace: EquivariantValue
    boundary_map_rank_gap: float # smallest gap ratio of the kernel and cokernel rank decisions
    convention: EndpointConvention
    variant: OperatorVariant
    kernel_dim: int
    cokernel_dim: int
    steps: int
    per_character: Tuple[Tuple[complex, int], ...] = field(default=())
    singular_value_change: Optional[float] = None # riemannian step control only
    mode_results: Tuple[Tuple[Any, "IndexResult"], ...] = field(default=())

    def __post_init__(self):
        difference = self.kernel_trace.value - self.cokernel_trace.value
        if abs(self.index.value - difference) > INDEX_TOL:
            raise InternalInconsistency(f"Index {self.index.value} is not kernel trace minus cokernel trace {difference}.")
        return

    @property
    def gamma_id(self) -> str:
        return self.index.gamma_id

    def as_dict(self) -> collections.OrderedDict:
        gap = self.boundary_map_rank_gap
        rtnval = collections.OrderedDict([
            ("convention", self.convention.value),
            ("variant", self.variant.value),
            ("index", self.index.as_dict()),
            ("kernel_trace", self.kernel_trace.as_dict()),
            ("cokernel_trace", self.cokernel_trace.as_dict()),
            ("kernel_dim", self.kernel_dim),
            ("cokernel_dim", self.cokernel_dim),
            ("boundary_map_rank_gap", gap if math.isfinite(gap) else None),
            ("steps", self.steps)
        ])
        if self.per_character:
            rtnval["per_character"] = [
                collections.OrderedDict([("character", complex_pair(c)), ("index", n)]) for c, n in self.per_character
            ]
        if self.singular_value_change is not None:
            rtnval["singular_value_change"] = self.singular_value_change
        if self.mode_results:
            rtnval["modes"] = [
                collections.OrderedDict([("label", label), ("index", res.index.as_dict())])
                for label, res in self.mode_results if res.kernel_dim or res.cokernel_dim
            ]
        return rtnval
