"""
.. module:: flowresult
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`FlowResult` object that carries an equivariant
               spectral flow together with its per-character decomposition.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Any, Optional, Tuple

import collections

from dataclasses import dataclass, field

from mojo.specflow.exceptions import InternalInconsistency
from mojo.specflow.model.equivariantvalue import EquivariantValue, complex_pair
from mojo.specflow.model.flowpartition import FlowPartition

DECOMPOSITION_TOL = 1e-9


@dataclass(frozen=True)
class FlowResult:
    """
        The γ spectral flow of a family.  ``per_character`` holds the integer flows of the
        restrictions to the eigenspaces of γ and ``value`` is asserted to equal Σ λ·sfl_λ.
    """

    value: EquivariantValue
    partition: Optional[FlowPartition]
    per_character: Tuple[Tuple[complex, int], ...]
    mode_results: Tuple[Tuple[Any, "FlowResult"], ...] = field(default=()) # (mode label, result) for mode families

    def __post_init__(self):
        object.__setattr__(self, "per_character", tuple((complex(c), int(n)) for c, n in self.per_character))

        decomposed = sum((c * n for c, n in self.per_character), 0j)
        if abs(decomposed - self.value.value) > DECOMPOSITION_TOL:
            errmsg = f"Direct flow {self.value.value} disagrees with the character decomposition {decomposed}."
            raise InternalInconsistency(errmsg)

        if self.value.exact_integer is not None:
            if self.value.exact_integer != sum(n for _, n in self.per_character):
                raise InternalInconsistency("Integer flow does not equal the sum of the character flows.")
        return

    @property
    def gamma_id(self) -> str:
        return self.value.gamma_id

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("sfl", self.value.as_dict()),
            ("per_character", [
                collections.OrderedDict([("character", complex_pair(c)), ("sfl", n)]) for c, n in self.per_character
            ])
        ])
        if self.partition is not None:
            rtnval["partition"] = self.partition.as_dict()
        if self.mode_results:
            rtnval["modes"] = [
                collections.OrderedDict([("label", label), ("sfl", res.value.as_dict()), ("segments", res.partition.segment_count if res.partition else None)])
                for label, res in self.mode_results
            ]
        return rtnval
