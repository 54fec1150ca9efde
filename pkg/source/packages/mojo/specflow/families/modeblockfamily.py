"""
.. module:: modeblockfamily
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`ModeBlockFamily` object, a family that is block
               diagonal over labelled Fourier modes, and the :func:`truncate_modes` operation.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Optional, Sequence, Union

import collections

import numpy as np

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.families.curvefamily import CurveFamily
from mojo.specflow.families.operatorfamily import OperatorFamily, SpectralEntry, merge_entries
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.linalg.symmetry import IDENTITY_GAMMA_ID, SymmetryAction, decompose
from mojo.specflow.model.equivariantvalue import complex_pair
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances


class ModeBlock:
    """
        One mode of a :class:`ModeBlockFamily`: a label, the family acting on the mode's fiber,
        the base character of the mode and the action of γ on the fiber.
    """
    def __init__(self, label: int, family: Union[SampledFamily, CurveFamily], base_character: complex = 1.0,
                 fiber_action: Optional[SymmetryAction] = None):
        base_character = complex(base_character)
        if abs(abs(base_character) - 1.0) > 1e-12:
            raise InvalidInput(f"Mode {label} has a base character {base_character} that is not of unit modulus.")
        if fiber_action is not None:
            if not isinstance(family, SampledFamily):
                raise InvalidInput(f"Mode {label}: a fiber action needs a sampled mode family.")
            if fiber_action.dim != family.dim:
                raise InvalidInput(f"Mode {label}: fiber action dim {fiber_action.dim} does not match family dim {family.dim}.")

        self._label = label
        self._family = family
        self._base_character = base_character
        self._fiber_action = fiber_action
        self._action = None
        return

    @property
    def base_character(self) -> complex:
        return self._base_character

    @property
    def family(self) -> Union[SampledFamily, CurveFamily]:
        return self._family

    @property
    def fiber_action(self) -> Optional[SymmetryAction]:
        return self._fiber_action

    @property
    def label(self) -> int:
        return self._label

    def action(self, gamma_id: str) -> Optional[SymmetryAction]:
        """
            The action of γ on the mode space: the base character times the fiber action.
            Returns None for curve modes, whose characters are carried by the curves.
        """
        if not isinstance(self._family, SampledFamily):
            return None
        if self._action is None:
            fiber = self._fiber_action.unitary if self._fiber_action is not None else np.eye(self._family.dim)
            self._action = decompose(self._base_character * fiber, gamma_id=gamma_id, tolerances=self._family.tolerances)
        return self._action


class ModeBlockFamily(OperatorFamily):
    """
        A family that is block diagonal over Fourier modes.  The family itself is never
        partitioned; every computation runs per mode and merges the results by mode label.
    """

    kind = "modes"

    def __init__(self, modes: Sequence[ModeBlock], gamma_id: str = IDENTITY_GAMMA_ID, truncation: Optional[int] = None,
                 descriptor: Optional[collections.OrderedDict] = None, tolerances: Tolerances = DEFAULT_TOLERANCES):
        super().__init__(gamma_id, tolerances=tolerances)

        labels = [m.label for m in modes]
        if len(set(labels)) != len(labels):
            raise InvalidInput("Mode labels must be unique.")
        if len(modes) == 0:
            raise InvalidInput("A mode block family needs at least one mode.")

        self._modes = tuple(sorted(modes, key=lambda m: m.label))
        self._truncation = truncation
        self._descriptor = descriptor
        return

    @property
    def descriptor(self) -> Optional[collections.OrderedDict]:
        return self._descriptor

    @property
    def labels(self) -> List[int]:
        return [m.label for m in self._modes]

    @property
    def modes(self) -> tuple:
        return self._modes

    @property
    def truncation(self) -> Optional[int]:
        return self._truncation

    def branch_multiplicities(self) -> np.ndarray:
        return np.concatenate([m.family.branch_multiplicities() for m in self._modes])

    def compute_branch_values(self, t: float) -> np.ndarray:
        return np.concatenate([m.family.branch_values(t) for m in self._modes])

    def describe(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("kind", self.kind),
            ("modes", len(self._modes)),
            ("labels", [min(self.labels), max(self.labels)]),
            ("truncation", self._truncation)
        ])
        if self._descriptor is not None:
            rtnval["model"] = self._descriptor
        return rtnval

    def segment_lipschitz(self, t_start: float, t_end: float) -> np.ndarray:
        parts = []
        for mode in self._modes:
            lip = mode.family.segment_lipschitz(t_start, t_end)
            parts.append(np.broadcast_to(np.asarray(lip, dtype=np.float64), (mode.family.branch_multiplicities().size,)))
        return np.concatenate(parts)

    def spectrum_at(self, t: float, action=None) -> List[SpectralEntry]:
        """
            The union of the mode spectra, each eigenvalue carrying base character times fiber
            character.
        """
        entries = []
        for mode in self._modes:
            mode_action = mode.action(self._gamma_id)
            for entry in mode.family.spectrum_at(t, action=mode_action):
                character = entry.character if mode_action is not None else mode.base_character * entry.character
                entries.append(SpectralEntry(entry.eigenvalue, entry.multiplicity, character))
        return merge_entries(entries)

    def mode_summary(self) -> List[collections.OrderedDict]:
        rtnval = [
            collections.OrderedDict([("label", m.label), ("base_character", complex_pair(m.base_character))])
            for m in self._modes
        ]
        return rtnval


def truncate_modes(family: ModeBlockFamily, j_max: int) -> ModeBlockFamily:
    """
        Keeps the modes with |label| ≤ j_max and records the truncation.

        :param family: The family to truncate.
        :param j_max: The largest mode label kept, at least 1.
    """
    if int(j_max) < 1:
        raise InvalidInput(f"j_max must be at least 1, got {j_max}.")
    j_max = int(j_max)

    modes = [m for m in family.modes if abs(m.label) <= j_max]
    truncation = j_max if family.truncation is None else min(j_max, family.truncation)

    return ModeBlockFamily(modes, gamma_id=family.gamma_id, truncation=truncation,
                           descriptor=family.descriptor, tolerances=family.tolerances)
