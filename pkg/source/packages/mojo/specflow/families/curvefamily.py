"""
.. module:: curvefamily
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`CurveFamily` object, a family given by closed form
               eigenvalue curves that carry multiplicities and characters.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Callable, List, Optional, Sequence, Tuple

import collections

from dataclasses import dataclass

import numpy as np

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.families.operatorfamily import OperatorFamily, SpectralEntry, merge_entries
from mojo.specflow.linalg.symmetry import IDENTITY_GAMMA_ID, cluster_unit_values
from mojo.specflow.model.equivariantvalue import EquivariantValue
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

LIPSCHITZ_ESTIMATE_POINTS = 1025
LIPSCHITZ_ESTIMATE_FACTOR = 2.0


@dataclass(frozen=True)
class Curve:
    """
        One eigenvalue curve t ↦ λ(t).  ``func`` must accept a float or a numpy array of times.
    """

    name: str
    func: Callable
    multiplicity: int
    character: complex
    lipschitz: float # bound on |λ'| over [0, 1]

    def __call__(self, t):
        return self.func(t)


def estimate_lipschitz(func: Callable) -> float:
    """
        Finite difference estimate of max |λ'| over [0, 1], inflated by a safety factor.
    """
    grid = np.linspace(0.0, 1.0, LIPSCHITZ_ESTIMATE_POINTS)
    values = np.asarray(func(grid), dtype=np.float64)
    slopes = np.abs(np.diff(values)) / np.diff(grid)
    return LIPSCHITZ_ESTIMATE_FACTOR * float(slopes.max())


def make_curve(name: str, func: Callable, multiplicity: int = 1, character: complex = 1.0,
               lipschitz: Optional[float] = None) -> Curve:
    """
        Creates a validated :class:`Curve`, estimating the Lipschitz constant when none is given.
    """
    character = complex(character)
    if abs(abs(character) - 1.0) > 1e-12:
        raise InvalidInput(f"Curve '{name}' has a character {character} that is not of unit modulus.")
    if int(multiplicity) < 1:
        raise InvalidInput(f"Curve '{name}' needs a positive multiplicity.")
    endpoints = np.asarray(func(np.array([0.0, 1.0])), dtype=np.float64)
    if not np.all(np.isfinite(endpoints)):
        raise InvalidInput(f"Curve '{name}' is not finite on [0, 1].")
    if lipschitz is None:
        lipschitz = estimate_lipschitz(func)
    return Curve(name, func, int(multiplicity), character, float(lipschitz))


class CurveFamily(OperatorFamily):
    """
        A family known through its eigenvalue curves.  Each curve is one branch for partitioning;
        exact zeros of a curve count as inside the closed window [0, a].
    """

    kind = "curves"

    def __init__(self, curves: Sequence[Curve], gamma_id: str = IDENTITY_GAMMA_ID,
                 descriptor: Optional[collections.OrderedDict] = None,
                 tolerances: Tolerances = DEFAULT_TOLERANCES):
        """
            :param curves: The eigenvalue curves.
            :param gamma_id: Label of the group element whose characters the curves carry.
            :param descriptor: The model descriptor the family was built from, used for serialization.
        """
        super().__init__(gamma_id, tolerances=tolerances)

        if len(curves) == 0:
            raise InvalidInput("A curve family needs at least one curve.")

        self._curves = tuple(curves)
        self._descriptor = descriptor
        self._lipschitz = np.array([c.lipschitz for c in self._curves], dtype=np.float64)
        self._multiplicities = np.array([c.multiplicity for c in self._curves], dtype=np.int64)
        self._characters = np.array([c.character for c in self._curves], dtype=np.complex128)
        return

    @property
    def characters(self) -> np.ndarray:
        return self._characters

    @property
    def curves(self) -> Tuple[Curve, ...]:
        return self._curves

    @property
    def descriptor(self) -> Optional[collections.OrderedDict]:
        return self._descriptor

    @property
    def is_identity(self) -> bool:
        return bool(np.all(np.abs(self._characters - 1.0) <= self._tolerances.char_cluster_tol))

    def branch_multiplicities(self) -> np.ndarray:
        return self._multiplicities

    def character_groups(self) -> List[Tuple[complex, "CurveFamily"]]:
        """
            Splits the family into sub-families of curves sharing one character, ordered by the
            argument of the character.
        """
        tols = self._tolerances
        clusters = cluster_unit_values(self._characters, tols.char_cluster_tol, tols.char_noise_tol)

        groups = []
        for members in clusters:
            value = complex(np.mean(self._characters[members]))
            value = value / abs(value)
            subset = [self._curves[idx] for idx in members]
            groups.append((value, CurveFamily(subset, gamma_id=IDENTITY_GAMMA_ID, tolerances=tols)))

        return groups

    def compute_branch_values(self, t: float) -> np.ndarray:
        return np.array([float(curve(t)) for curve in self._curves], dtype=np.float64)

    def describe(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("kind", self.kind),
            ("curves", len(self._curves)),
            ("total_multiplicity", int(self._multiplicities.sum()))
        ])
        if self._descriptor is not None:
            rtnval["model"] = self._descriptor
        return rtnval

    def reversed(self) -> "CurveFamily":
        curves = [
            Curve(c.name, (lambda t, f=c.func: f(1.0 - np.asarray(t, dtype=np.float64))), c.multiplicity, c.character, c.lipschitz)
            for c in self._curves
        ]
        return CurveFamily(curves, gamma_id=self._gamma_id, tolerances=self._tolerances)

    def segment_lipschitz(self, t_start: float, t_end: float) -> np.ndarray:
        return self._lipschitz

    def spectrum_at(self, t: float, action=None) -> List[SpectralEntry]:
        values = self.branch_values(t)
        entries = [
            SpectralEntry(float(v), c.multiplicity, c.character) for v, c in zip(values, self._curves)
        ]
        return merge_entries(entries)

    def window_trace(self, t: float, radius: float, action=None) -> EquivariantValue:
        values = self.branch_values(t)
        mask = self.window_mask(values, radius)
        value = complex(np.sum(self._multiplicities[mask] * self._characters[mask]))
        return EquivariantValue.from_sum(value, self._gamma_id, self.is_identity)
