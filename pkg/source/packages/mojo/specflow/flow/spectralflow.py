"""
.. module:: spectralflow
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the spectral flow sfl and the equivariant spectral flow sfl_γ of
               operator families computed from certified flow partitions.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Optional, Tuple, Union

import logging

import numpy as np

from mojo.specflow.exceptions import DegenerateEndpoint, InternalInconsistency, InvalidInput
from mojo.specflow.families.curvefamily import CurveFamily
from mojo.specflow.families.modeblockfamily import ModeBlock, ModeBlockFamily
from mojo.specflow.families.operatorfamily import OperatorFamily
from mojo.specflow.families.partitioning import build_flow_partition, verify_partition
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.linalg.matrixcore import zero_decision
from mojo.specflow.linalg.symmetry import SymmetryAction, cluster_unit_values, equivariant_trace
from mojo.specflow.model.equivariantvalue import EquivariantValue
from mojo.specflow.model.flowpartition import FlowPartition
from mojo.specflow.model.flowresult import FlowResult
from mojo.specflow.tolerances import parallel_map

logger = logging.getLogger(__name__)


def _certified_partition(family: Union[SampledFamily, CurveFamily], partition: Optional[FlowPartition]) -> FlowPartition:
    if partition is None:
        return build_flow_partition(family)
    verify_partition(family, partition)
    return partition


def sfl(family: OperatorFamily, partition: Optional[FlowPartition] = None) -> int:
    """
        The spectral flow Σ_k dim E_[0,a_k](A(t_k)) − dim E_[0,a_k](A(t_(k−1))).

        :param family: A sampled, curve or mode-block family.
        :param partition: A partition certified for the family; built when omitted.

        :raises InvalidPartition: When the partition is not certified for the family.
    """
    if isinstance(family, ModeBlockFamily):
        if partition is not None:
            raise InvalidInput("Mode-block families are partitioned per mode; pass no partition.")
        return sum(parallel_map(lambda mode: sfl(mode.family), family.modes))

    partition = _certified_partition(family, partition)

    total = 0
    for t_start, t_end, radius in partition.segments():
        total += family.window_count(t_end, radius) - family.window_count(t_start, radius)

    return total


def merge_characters(pairs: List[Tuple[complex, int]], cluster_tol: float, noise_tol: float,
                     drop_zero: bool = False) -> List[Tuple[complex, int]]:
    """
        Sums integer contributions that belong to the same character.
    """
    if not pairs:
        return []

    chars = [complex(c) for c, _ in pairs]
    merged = []
    for members in cluster_unit_values(chars, cluster_tol, noise_tol):
        value = complex(np.mean([chars[idx] for idx in members]))
        value = value / abs(value)
        count = sum(pairs[idx][1] for idx in members)
        if count != 0 or not drop_zero:
            merged.append((value, count))

    return merged


def _sampled_flow(family: SampledFamily, action: SymmetryAction, partition: Optional[FlowPartition]) -> FlowResult:
    tols = family.tolerances
    family.check_equivariant(action)
    partition = _certified_partition(family, partition)

    direct = 0j
    for t_start, t_end, radius in partition.segments():
        direct += family.window_trace(t_end, radius, action).value - family.window_trace(t_start, radius, action).value

    def character_flow(char):
        return char.eigenvalue, sfl(family.restrict(action, char.eigenvalue))

    per_character = parallel_map(character_flow, action.characters)

    decomposed = sum((c * n for c, n in per_character), 0j)
    if abs(direct - decomposed) > tols.identity_tol:
        raise InternalInconsistency(f"Direct sfl_γ {direct} disagrees with Σ λ·sfl(A|E_λ) = {decomposed}.")

    value = EquivariantValue.from_sum(direct, action.gamma_id, action.is_identity)
    return FlowResult(value, partition, per_character)


def _curve_flow(family: CurveFamily, partition: Optional[FlowPartition]) -> FlowResult:
    tols = family.tolerances
    partition = _certified_partition(family, partition)

    direct = 0j
    for t_start, t_end, radius in partition.segments():
        direct += family.window_trace(t_end, radius).value - family.window_trace(t_start, radius).value

    per_character = parallel_map(lambda group: (group[0], sfl(group[1])), family.character_groups())

    decomposed = sum((c * n for c, n in per_character), 0j)
    if abs(direct - decomposed) > tols.identity_tol:
        raise InternalInconsistency(f"Direct sfl_γ {direct} disagrees with Σ λ·sfl(A|E_λ) = {decomposed}.")

    value = EquivariantValue.from_sum(direct, family.gamma_id, family.is_identity)
    return FlowResult(value, partition, per_character)


def _mode_flow(family: ModeBlockFamily) -> FlowResult:
    tols = family.tolerances

    def mode_flow(mode: ModeBlock) -> FlowResult:
        action = mode.action(family.gamma_id)
        if action is not None:
            return _sampled_flow(mode.family, action, None)
        res = _curve_flow(mode.family, None)
        base = mode.base_character
        scaled = EquivariantValue(base * res.value.value, family.gamma_id)
        return FlowResult(scaled, res.partition, [(base * c, n) for c, n in res.per_character])

    mode_results = parallel_map(mode_flow, family.modes)

    pairs = [pair for res in mode_results for pair in res.per_character]
    per_character = merge_characters(pairs, tols.char_cluster_tol, tols.char_noise_tol, drop_zero=True)

    total = sum((res.value.value for res in mode_results), 0j)
    is_identity = all(abs(c - 1.0) <= tols.char_cluster_tol for c, _ in pairs)
    value = EquivariantValue.from_sum(total, family.gamma_id, is_identity)

    return FlowResult(value, None, per_character, tuple(zip(family.labels, mode_results)))


def sfl_equivariant(family: OperatorFamily, action: Optional[SymmetryAction] = None,
                    partition: Optional[FlowPartition] = None) -> FlowResult:
    """
        The γ spectral flow, computed twice: directly from the traces tr(γ|E_[0,a_k]) over the
        partition, and as Σ λ·sfl(A|E_λ(γ)) over independently partitioned restrictions.  The two
        evaluations are asserted to agree.

        :param family: The family.  Curve families carry their characters per curve and mode-block
                       families per mode, so ``action`` is only used with sampled families.
        :param action: The symmetry of a sampled family; the identity when omitted.
        :param partition: A certified partition for sampled and curve families.

        :raises NotEquivariant: When a sample does not commute with the action.
        :raises InternalInconsistency: When the two evaluations disagree.
    """
    if isinstance(family, SampledFamily):
        if action is None:
            action = SymmetryAction.identity(family.dim)
        result = _sampled_flow(family, action, partition)
    elif isinstance(family, CurveFamily):
        result = _curve_flow(family, partition)
    elif isinstance(family, ModeBlockFamily):
        if partition is not None:
            raise InvalidInput("Mode-block families are partitioned per mode; pass no partition.")
        result = _mode_flow(family)
    else:
        raise InvalidInput(f"Unsupported family kind '{family.kind}'.")

    logger.debug("sfl_%s = %s", result.gamma_id, result.value.value)

    return result


def negative_trace(family: Union[SampledFamily, CurveFamily], t: float, action: Optional[SymmetryAction] = None) -> EquivariantValue:
    """
        tr(γ|E_(−∞,0)(A(t))) at an endpoint t ∈ {0, 1}.

        :raises DegenerateEndpoint: When a sampled endpoint has numerical kernel.
    """
    if isinstance(family, CurveFamily):
        values = family.branch_values(t)
        mask = values < 0.0
        value = complex(np.sum(family.branch_multiplicities()[mask] * family.characters[mask]))
        return EquivariantValue.from_sum(value, family.gamma_id, family.is_identity)

    block = family(t)
    _, decision = zero_decision(block.values, block.norm, tolerances=family.tolerances)
    if decision.nullity > 0:
        raise DegenerateEndpoint(f"A({t}) has a {decision.nullity} dimensional numerical kernel.")

    basis = block.eigensystem.select(block.values < 0.0)
    if action is None:
        count = basis.shape[1]
        return EquivariantValue(float(count), family.gamma_id, count)
    return equivariant_trace(action, basis)


def finite_dimensional_flow(family: Union[SampledFamily, CurveFamily], action: Optional[SymmetryAction] = None) -> EquivariantValue:
    """
        tr(γ|E_(−∞,0)(A(0))) − tr(γ|E_(−∞,0)(A(1))), the spectral flow of a family of matrices
        with invertible endpoints.

        :raises DegenerateEndpoint: When A(0) or A(1) of a sampled family has numerical kernel.
    """
    return negative_trace(family, 0.0, action) - negative_trace(family, 1.0, action)
