"""
.. module:: equivariantvalue
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`EquivariantValue` dataclass used to carry a complex
               value attached to a specific group element.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Optional

import collections

from dataclasses import dataclass

from mojo.specflow.exceptions import InternalInconsistency

EXACT_INTEGER_TOL = 1e-9


def complex_pair(value: complex) -> list:
    """
        Converts a complex number to the ``[re, im]`` pair used in result documents.
    """
    value = complex(value)
    return [value.real, value.imag]


@dataclass(frozen=True)
class EquivariantValue:
    """
        An evaluated character sum such as tr(γ|X), ind_γ or sfl_γ.  When the group element is
        the identity the value is an integer and ``exact_integer`` carries it exactly.
    """

    value: complex
    gamma_id: str
    exact_integer: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if self.exact_integer is not None:
            if abs(self.value - self.exact_integer) >= EXACT_INTEGER_TOL:
                errmsg = f"Value {self.value} is not the integer {self.exact_integer} it claims to be."
                raise InternalInconsistency(errmsg)
        return

    @classmethod
    def from_sum(cls, value: complex, gamma_id: str, is_identity: bool) -> "EquivariantValue":
        """
            Creates a value and populates the exact integer when the group element is the identity.
        """
        exact = None
        if is_identity:
            exact = int(round(complex(value).real))
        return cls(value, gamma_id, exact)

    def __add__(self, other: "EquivariantValue") -> "EquivariantValue":
        exact = None
        if self.exact_integer is not None and other.exact_integer is not None:
            exact = self.exact_integer + other.exact_integer
        return EquivariantValue(self.value + other.value, self.gamma_id, exact)

    def __sub__(self, other: "EquivariantValue") -> "EquivariantValue":
        exact = None
        if self.exact_integer is not None and other.exact_integer is not None:
            exact = self.exact_integer - other.exact_integer
        return EquivariantValue(self.value - other.value, self.gamma_id, exact)

    def close_to(self, other: complex, tol: float) -> bool:
        return abs(self.value - complex(other)) < tol

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("gamma", self.gamma_id),
            ("value", complex_pair(self.value))
        ])
        if self.exact_integer is not None:
            rtnval["exact_integer"] = self.exact_integer
        return rtnval
