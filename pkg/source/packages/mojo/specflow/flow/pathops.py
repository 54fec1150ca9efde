"""
.. module:: pathops
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the path operations on operator families: concatenation,
               reversal, direct sums and the congruence homotopy s ↦ N^(s/2) A N^(s/2).

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Union

import numpy as np
import scipy.linalg

from mojo.specflow.exceptions import InvalidConcat, InvalidInput
from mojo.specflow.families.curvefamily import Curve, CurveFamily
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.linalg.matrixcore import HermitianBlock, hermitian_power

ENDPOINT_MATCH_TOL = 1e-10

Family = Union[SampledFamily, CurveFamily]


def _union_times(first: SampledFamily, second: SampledFamily) -> np.ndarray:
    return np.union1d(first.times, second.times)


def _same_kind(first: Family, second: Family):
    if type(first) is not type(second):
        raise InvalidInput(f"Path operations need two families of one kind, got '{first.kind}' and '{second.kind}'.")
    return


def concat(first: Family, second: Family) -> Family:
    """
        The path that runs ``first`` on [0, ½] and ``second`` on [½, 1].

        :raises InvalidConcat: When the end of ``first`` and the start of ``second`` disagree.
    """
    _same_kind(first, second)

    if isinstance(first, SampledFamily):
        mismatch = float(np.max(np.abs(first.end_block.matrix - second.start_block.matrix))) if first.dim == second.dim else np.inf
        if mismatch > ENDPOINT_MATCH_TOL:
            raise InvalidConcat(f"End block and start block differ by {mismatch:.3e}.")
        times = [0.5 * t for t in first.times] + [0.5 + 0.5 * t for t in second.times[1:]]
        blocks = list(first.blocks) + list(second.blocks[1:])
        return SampledFamily(times, blocks, gamma_id=first.gamma_id, tolerances=first.tolerances)

    if len(first.curves) != len(second.curves):
        raise InvalidConcat("Curve families with different curve counts cannot be joined.")

    curves = []
    for ca, cb in zip(first.curves, second.curves):
        gap = abs(float(ca(1.0)) - float(cb(0.0)))
        if gap > ENDPOINT_MATCH_TOL or ca.multiplicity != cb.multiplicity or abs(ca.character - cb.character) > 1e-12:
            raise InvalidConcat(f"Curve '{ca.name}' does not continue into curve '{cb.name}'.")

        def joined(t, fa=ca.func, fb=cb.func):
            t = np.asarray(t, dtype=np.float64)
            rtnval = np.where(t <= 0.5, fa(np.minimum(2.0 * t, 1.0)), fb(np.maximum(2.0 * t - 1.0, 0.0)))
            return rtnval if rtnval.ndim else float(rtnval)

        curves.append(Curve(ca.name, joined, ca.multiplicity, ca.character, 2.0 * max(ca.lipschitz, cb.lipschitz)))

    return CurveFamily(curves, gamma_id=first.gamma_id, tolerances=first.tolerances)


def reverse(family: Family) -> Family:
    """
        The path t ↦ A(1 − t).
    """
    if isinstance(family, SampledFamily):
        times = [1.0 - t for t in reversed(family.times)]
        times[0], times[-1] = 0.0, 1.0
        return SampledFamily(times, list(reversed(family.blocks)), gamma_id=family.gamma_id, tolerances=family.tolerances)
    return family.reversed()


def direct_sum(first: Family, second: Family) -> Family:
    """
        The family t ↦ A(t) ⊕ B(t).
    """
    _same_kind(first, second)

    if isinstance(first, SampledFamily):
        times = _union_times(first, second)
        blocks = [scipy.linalg.block_diag(first(t).matrix, second(t).matrix) for t in times]
        return SampledFamily(times, blocks, gamma_id=first.gamma_id, tolerances=first.tolerances)

    return CurveFamily(list(first.curves) + list(second.curves), gamma_id=first.gamma_id, tolerances=first.tolerances)


def congruence_homotopy(family: SampledFamily, weights: SampledFamily, s: float) -> SampledFamily:
    """
        The family t ↦ N(t)^(s/2) A(t) N(t)^(s/2) sampled at the union of the sample times.

        :param family: The family A.
        :param weights: Positive definite weights N with N(0) = N(1) = I.
        :param s: The homotopy parameter.

        :raises InvalidInput: When a weight is not positive definite or not the identity at an end.
    """
    if not isinstance(family, SampledFamily) or not isinstance(weights, SampledFamily):
        raise InvalidInput("The congruence homotopy is defined for sampled families and sampled weights.")
    if family.dim != weights.dim:
        raise InvalidInput(f"Weights of dim {weights.dim} do not match the family dim {family.dim}.")

    eye = np.eye(family.dim)
    for end in (weights.start_block, weights.end_block):
        if float(np.max(np.abs(end.matrix - eye))) > ENDPOINT_MATCH_TOL:
            raise InvalidInput("Congruence weights must equal the identity at t = 0 and t = 1.")

    blocks = []
    times = _union_times(family, weights)
    for t in times:
        root = hermitian_power(weights(t), 0.5 * float(s))
        mat = root @ family(t).matrix @ root
        blocks.append(HermitianBlock(0.5 * (mat + mat.conj().T), tolerances=family.tolerances))

    return SampledFamily(times, blocks, gamma_id=family.gamma_id, tolerances=family.tolerances)
