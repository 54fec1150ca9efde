"""
.. module:: sampledfamily
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`SampledFamily` object, a family of Hermitian blocks
               given at sample times and linearly interpolated between them.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Optional, Sequence

import collections

import numpy as np

from mojo.specflow.exceptions import DegenerateEndpoint, InvalidInput, NotEquivariant
from mojo.specflow.families.operatorfamily import (
    BLOCK_CACHE_LIMIT,
    OperatorFamily,
    SpectralEntry,
    check_time,
    merge_entries
)
from mojo.specflow.linalg.matrixcore import ComplexMatrix, HermitianBlock, as_block
from mojo.specflow.linalg.symmetry import (
    IDENTITY_GAMMA_ID,
    SymmetryAction,
    check_commutes,
    equivariant_trace,
    restrict
)
from mojo.specflow.model.equivariantvalue import EquivariantValue
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances


class SampledFamily(OperatorFamily):
    """
        A norm continuous family t ↦ B(t) given by Hermitian blocks at strictly increasing times
        0 = t_0 < ... < t_m = 1.  Between samples the family is the linear interpolation of the
        bracketing blocks; every guarantee made about a sampled family refers to that interpolant.

        The branches of a sampled family are its sorted eigenvalues.  By Weyl's inequality each
        of them is Lipschitz with the constant of the interpolant, which on a sample interval is
        ‖B(t_(i+1)) − B(t_i)‖ / (t_(i+1) − t_i).
    """

    kind = "sampled"

    def __init__(self, times: Sequence[float], blocks: Sequence, lipschitz_bound: Optional[float] = None,
                 gamma_id: str = IDENTITY_GAMMA_ID, tolerances: Tolerances = DEFAULT_TOLERANCES):
        """
            Creates a sampled family.

            :param times: Strictly increasing sample times starting at 0 and ending at 1.
            :param blocks: The Hermitian blocks (or square arrays) at the sample times.
            :param lipschitz_bound: Optional operator norm bound on the derivative; validated
                                    against the samples with the configured lip_slack.
            :param gamma_id: Label of the group element the family is paired with in documents.
        """
        super().__init__(gamma_id, tolerances=tolerances)

        times = [float(t) for t in times]
        if len(times) < 2 or len(times) != len(blocks):
            raise InvalidInput("A sampled family needs at least two samples and one block per time.")
        if times[0] != 0.0 or times[-1] != 1.0:
            raise InvalidInput(f"Sample times must cover 0 and 1, got {times[0]} .. {times[-1]}.")
        if any(t1 <= t0 for t0, t1 in zip(times[:-1], times[1:])):
            raise InvalidInput("Sample times must be strictly increasing.")

        self._times = np.array(times, dtype=np.float64)
        self._times.setflags(write=False)
        self._blocks = tuple(as_block(b, tolerances) for b in blocks)

        dims = {b.dim for b in self._blocks}
        if len(dims) != 1:
            raise InvalidInput(f"All samples must share one dimension, got {sorted(dims)}.")
        self._dim = dims.pop()

        slopes = []
        for idx in range(len(times) - 1):
            delta = self._blocks[idx + 1].matrix - self._blocks[idx].matrix
            slopes.append(float(np.linalg.norm(delta, ord=2)) / (times[idx + 1] - times[idx]))
        self._slopes = np.array(slopes, dtype=np.float64)
        self._slopes.setflags(write=False)

        exact_bound = float(self._slopes.max())
        if lipschitz_bound is not None:
            lipschitz_bound = float(lipschitz_bound)
            if lipschitz_bound < 0 or exact_bound > lipschitz_bound * (1.0 + tolerances.lip_slack):
                errmsg = f"Samples vary faster ({exact_bound:.6g}) than the Lipschitz bound {lipschitz_bound:.6g} allows."
                raise InvalidInput(errmsg)
            self._lipschitz_bound = lipschitz_bound
        else:
            self._lipschitz_bound = exact_bound

        self._block_cache = {}
        return

    @property
    def blocks(self) -> tuple:
        return self._blocks

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def end_block(self) -> HermitianBlock:
        return self._blocks[-1]

    @property
    def lipschitz_bound(self) -> float:
        return self._lipschitz_bound

    @property
    def norm_bound(self) -> float:
        """
            max ‖B(t)‖ over [0, 1], attained at a sample by convexity of the norm.
        """
        return max(b.norm for b in self._blocks)

    @property
    def start_block(self) -> HermitianBlock:
        return self._blocks[0]

    @property
    def times(self) -> np.ndarray:
        return self._times

    def __call__(self, t: float) -> HermitianBlock:
        """
            The block B(t); at a sample time this is the sample itself.
        """
        t = check_time(t)

        block = self._block_cache.get(t)
        if block is None:
            idx = int(np.searchsorted(self._times, t, side="right")) - 1
            idx = min(max(idx, 0), len(self._times) - 2)
            t0, t1 = self._times[idx], self._times[idx + 1]
            if t == t0:
                block = self._blocks[idx]
            elif t == t1:
                block = self._blocks[idx + 1]
            else:
                weight = (t - t0) / (t1 - t0)
                mat = (1.0 - weight) * self._blocks[idx].matrix + weight * self._blocks[idx + 1].matrix
                block = HermitianBlock(mat, tolerances=self._tolerances)
            if len(self._block_cache) >= BLOCK_CACHE_LIMIT:
                self._block_cache.clear()
            self._block_cache[t] = block

        return block

    def branch_multiplicities(self) -> np.ndarray:
        return np.ones(self._dim, dtype=np.int64)

    def check_endpoint(self, t: float):
        """
            Asserts that every eigenvalue of an endpoint block is either an exact zero or clear of
            the rank_tol band around zero.

            :raises DegenerateEndpoint: When B(0) or B(1) has an eigenvalue that cannot be classified.
        """
        if t not in (0.0, 1.0):
            return

        block = self(t)
        scale = max(1.0, block.norm)
        magnitudes = np.abs(block.values)
        ambiguous = (magnitudes > self._tolerances.zero_noise_tol * scale) & (magnitudes < self._tolerances.rank_tol * scale)
        if np.any(ambiguous):
            errmsg = f"A({t}) has eigenvalues {block.values[ambiguous]} that are neither zero nor clear of zero."
            raise DegenerateEndpoint(errmsg)

        return

    def check_equivariant(self, action: SymmetryAction):
        """
            Asserts that every sample commutes with the action, so the interpolant does too.

            :raises NotEquivariant: When a sample does not commute with γ.
        """
        for t, block in zip(self._times, self._blocks):
            if not check_commutes(action, block):
                raise NotEquivariant(f"Sample at t={t} does not commute with the action '{action.gamma_id}'.")
        return

    def compute_branch_values(self, t: float) -> np.ndarray:
        return np.array(self(t).values, dtype=np.float64)

    def describe(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("kind", self.kind),
            ("dim", self._dim),
            ("samples", len(self._blocks)),
            ("lipschitz_bound", self._lipschitz_bound)
        ])
        return rtnval

    def restrict(self, action: SymmetryAction, character: complex) -> "SampledFamily":
        """
            The family of compressions W*B(t)W to the eigenspace E_λ(γ).  Compression commutes
            with linear interpolation, so this is the restriction of the interpolant.
        """
        blocks = [restrict(action, block, character) for block in self._blocks]
        return SampledFamily(self._times, blocks, gamma_id=IDENTITY_GAMMA_ID, tolerances=self._tolerances)

    def segment_lipschitz(self, t_start: float, t_end: float) -> float:
        first = int(np.searchsorted(self._times, t_start, side="right")) - 1
        last = int(np.searchsorted(self._times, t_end, side="left"))
        first = min(max(first, 0), len(self._slopes) - 1)
        last = min(max(last, first + 1), len(self._slopes))
        return float(self._slopes[first:last].max()) * (1.0 + self._tolerances.lip_slack)

    def spectrum_at(self, t: float, action: Optional[SymmetryAction] = None) -> List[SpectralEntry]:
        block = self(t)

        entries = []
        if action is None:
            entries = [SpectralEntry(float(v), 1, 1.0 + 0.0j) for v in block.values]
        else:
            for char in action.characters:
                rblock = restrict(action, block, char.eigenvalue)
                entries.extend(SpectralEntry(float(v), 1, char.eigenvalue) for v in rblock.values)

        return merge_entries(entries)

    def window_basis(self, t: float, radius: float) -> ComplexMatrix:
        """
            Orthonormal eigenvector columns spanning E_[0,radius](B(t)).
        """
        self.check_endpoint(t)
        esys = self(t).eigensystem
        return esys.select(self.window_mask(esys.values, radius))

    def window_count(self, t: float, radius: float) -> int:
        self.check_endpoint(t)
        return super().window_count(t, radius)

    def window_trace(self, t: float, radius: float, action: Optional[SymmetryAction] = None) -> EquivariantValue:
        if action is None:
            count = self.window_count(t, radius)
            return EquivariantValue(float(count), IDENTITY_GAMMA_ID, count)
        return equivariant_trace(action, self.window_basis(t, radius))

    def zero_threshold(self, values: np.ndarray) -> float:
        scale = float(np.max(np.abs(values))) if values.size else 1.0
        return self._tolerances.zero_noise_tol * max(1.0, scale)
