"""
.. module:: operatorfamily
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`OperatorFamily` base object which establishes the API
               that the sampled, curve and mode-block family representations implement.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Union

import collections
import math

from dataclasses import dataclass

import numpy as np

from mojo.errors.exceptions import NotOverloadedError

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.model.equivariantvalue import EquivariantValue, complex_pair
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

BLOCK_CACHE_LIMIT = 4096


@dataclass(frozen=True)
class SpectralEntry:
    """
        An eigenvalue of A(t) with its multiplicity and the character of γ it carries.
    """

    eigenvalue: float
    multiplicity: int
    character: complex

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("eigenvalue", self.eigenvalue),
            ("multiplicity", self.multiplicity),
            ("character", complex_pair(self.character))
        ])
        return rtnval


def check_time(t: float) -> float:
    t = float(t)
    if not (0.0 <= t <= 1.0) or math.isnan(t):
        raise InvalidInput(f"Family parameter must lie in [0, 1], got {t}.")
    return t


class OperatorFamily:
    """
        The :class:`OperatorFamily` object is the base class for the representations of a
        family (A(t)) of self-adjoint operators parametrized over t ∈ [0, 1].

        Families whose spectra are partitioned directly expose eigenvalue *branches*: functions
        of t, each Lipschitz on a segment with the constant reported by :meth:`segment_lipschitz`.
    """

    kind = None

    def __init__(self, gamma_id: str, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self._gamma_id = gamma_id
        self._tolerances = tolerances
        self._value_cache = {}
        return

    @property
    def gamma_id(self) -> str:
        return self._gamma_id

    @property
    def tolerances(self) -> Tolerances:
        return self._tolerances

    def branch_values(self, t: float) -> np.ndarray:
        """
            The values of the eigenvalue branches at t, one entry per branch.
        """
        t = check_time(t)
        values = self._value_cache.get(t)
        if values is None:
            values = self.compute_branch_values(t)
            values.setflags(write=False)
            if len(self._value_cache) >= BLOCK_CACHE_LIMIT:
                self._value_cache.clear()
            self._value_cache[t] = values
        return values

    def branch_multiplicities(self) -> np.ndarray:
        """
            The multiplicity carried by every branch.
        """
        raise NotOverloadedError("The 'branch_multiplicities' method must be overridden by derived 'OperatorFamily' objects.") from None

    def compute_branch_values(self, t: float) -> np.ndarray:
        raise NotOverloadedError("The 'compute_branch_values' method must be overridden by derived 'OperatorFamily' objects.") from None

    def describe(self) -> collections.OrderedDict:
        """
            A short description of the family for result documents.
        """
        raise NotOverloadedError("The 'describe' method must be overridden by derived 'OperatorFamily' objects.") from None

    def segment_lipschitz(self, t_start: float, t_end: float) -> Union[float, np.ndarray]:
        """
            A Lipschitz constant for every branch over [t_start, t_end], as a scalar or per branch.
        """
        raise NotOverloadedError("The 'segment_lipschitz' method must be overridden by derived 'OperatorFamily' objects.") from None

    def spectrum_at(self, t: float, action=None) -> List[SpectralEntry]:
        """
            The spectrum of A(t) as :class:`SpectralEntry` records sorted by eigenvalue.
        """
        raise NotOverloadedError("The 'spectrum_at' method must be overridden by derived 'OperatorFamily' objects.") from None

    def window_count(self, t: float, radius: float) -> int:
        """
            The number of eigenvalues of A(t), with multiplicity, in the closed window [0, radius].
            Numerically zero eigenvalues count as inside the window.
        """
        values = self.branch_values(t)
        mask = self.window_mask(values, radius)
        return int(np.sum(self.branch_multiplicities()[mask]))

    def window_mask(self, values: np.ndarray, radius: float) -> np.ndarray:
        return (values >= -self.zero_threshold(values)) & (values <= radius)

    def window_trace(self, t: float, radius: float, action=None) -> EquivariantValue:
        """
            The trace tr(γ|E_[0,radius](A(t))).
        """
        raise NotOverloadedError("The 'window_trace' method must be overridden by derived 'OperatorFamily' objects.") from None

    def zero_threshold(self, values: np.ndarray) -> float:
        """
            Magnitude under which an eigenvalue is classified as zero.
        """
        scale = float(np.max(np.abs(values))) if values.size else 1.0
        return self._tolerances.rank_tol * max(1.0, scale)


def spectrum_at(family: OperatorFamily, t: float, action=None) -> List[SpectralEntry]:
    """
        The spectrum of a family at t.  Sampled families interpolate linearly between samples,
        curve families evaluate their closed forms and mode-block families merge their modes.

        :param family: The family to evaluate.
        :param t: The family parameter in [0, 1].
        :param action: Optional symmetry for sampled families; characters default to 1 without one.
    """
    return family.spectrum_at(t, action=action)


def merge_entries(entries: List[SpectralEntry], tol: float = 1e-12) -> List[SpectralEntry]:
    """
        Sorts spectral entries and merges entries with equal eigenvalue and character.
    """
    ordered = sorted(entries, key=lambda e: (e.eigenvalue, math.atan2(e.character.imag, e.character.real) % (2 * math.pi)))

    merged = []
    for entry in ordered:
        if merged:
            last = merged[-1]
            if abs(last.eigenvalue - entry.eigenvalue) <= tol * max(1.0, abs(entry.eigenvalue)) and abs(last.character - entry.character) <= 1e-9:
                merged[-1] = SpectralEntry(last.eigenvalue, last.multiplicity + entry.multiplicity, last.character)
                continue
        merged.append(entry)

    return merged
