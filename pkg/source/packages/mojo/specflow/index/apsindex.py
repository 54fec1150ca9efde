"""
.. module:: apsindex
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the direct computation of the equivariant index of the model
               operators ∂_t − iB and ∂_t + B under APS boundary conditions, and the checks that
               compare it with spectral flow, character decompositions and deformations.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Callable, Optional, Sequence, Union

import collections
import dataclasses
import logging
import math

from dataclasses import dataclass

import numpy as np

from mojo.specflow.exceptions import InternalInconsistency, InvalidInput
from mojo.specflow.families.modeblockfamily import ModeBlockFamily
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.flow.spectralflow import merge_characters, sfl_equivariant
from mojo.specflow.linalg.matrixcore import (
    ComplexMatrix,
    kernel_decision,
    propagate_real,
    propagate_unitary,
    propagator_steps,
    zero_decision
)
from mojo.specflow.linalg.symmetry import (
    SymmetryAction,
    character_dimensions,
    equivariant_trace
)
from mojo.specflow.model.checkreport import CheckReport
from mojo.specflow.model.conventions import EndpointConvention, OperatorVariant
from mojo.specflow.model.equivariantvalue import EquivariantValue, complex_pair
from mojo.specflow.model.indexresult import IndexResult
from mojo.specflow.tolerances import parallel_map

logger = logging.getLogger(__name__)

MAX_STEP_DOUBLINGS = 4
ENDPOINT_MATCH_TOL = 1e-10
MIN_DEFORMATION_SAMPLES = 5


@dataclass(frozen=True)
class ApsProblem:
    """
        The boundary value problem D f = 0 on [0, T] with f(0) ∈ E_(−∞,0)(B(0)) and f(T) in the
        terminal space admitted by the endpoint convention.  The convention and the variant
        have no defaults so that every result names both.
    """

    family: Union[SampledFamily, ModeBlockFamily]
    convention: EndpointConvention
    variant: OperatorVariant
    horizon: float = 1.0
    steps: Optional[int] = None # fixed propagator steps, chosen from ‖B‖·T when omitted

    def __post_init__(self):
        object.__setattr__(self, "convention", EndpointConvention(self.convention))
        object.__setattr__(self, "variant", OperatorVariant(self.variant))
        if not isinstance(self.family, (SampledFamily, ModeBlockFamily)):
            raise InvalidInput("APS problems are posed for sampled or mode-block families.")
        if not self.horizon > 0:
            raise InvalidInput(f"The horizon T must be positive, got {self.horizon}.")
        if self.steps is not None and int(self.steps) < 1:
            raise InvalidInput("Propagator steps must be positive.")
        return

    def with_family(self, family: Union[SampledFamily, ModeBlockFamily]) -> "ApsProblem":
        return dataclasses.replace(self, family=family)

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("family", self.family.describe()),
            ("convention", self.convention.value),
            ("variant", self.variant.value),
            ("horizon", self.horizon)
        ])
        return rtnval


@dataclass(frozen=True)
class _BoundarySpaces:

    initial: ComplexMatrix # E_(−∞,0)(B(0))
    initial_complement: ComplexMatrix # E_[0,∞)(B(0))
    admitted: ComplexMatrix # admitted terminal space
    rejected: ComplexMatrix # its orthogonal complement


def _boundary_spaces(family: SampledFamily, convention: EndpointConvention) -> _BoundarySpaces:
    tols = family.tolerances
    b0 = family.start_block
    b1 = family.end_block

    zero0, _ = zero_decision(b0.values, b0.norm, tolerances=tols)
    zero1, _ = zero_decision(b1.values, b1.norm, tolerances=tols)

    negative0 = (b0.values < 0.0) & ~zero0
    if convention == EndpointConvention.STRICT:
        admitted = (b1.values > 0.0) & ~zero1
    else:
        admitted = (b1.values > 0.0) | zero1

    esys0 = b0.eigensystem
    esys1 = b1.eigensystem

    return _BoundarySpaces(esys0.select(negative0), esys0.select(~negative0),
                           esys1.select(admitted), esys1.select(~admitted))


def _null_subspace(space: ComplexMatrix, target: ComplexMatrix, propagator: ComplexMatrix, tolerances):
    """
        The subspace of vectors x in span(space) whose propagated value has no component along
        span(target), with the rank decision behind it.
    """
    boundary_map = target.conj().T @ propagator @ space
    coefficients, decision = kernel_decision(boundary_map, tolerances=tolerances)
    if space.shape[1] == 0:
        return space, decision, np.zeros(0)

    svals = np.linalg.svd(boundary_map, compute_uv=False) if min(boundary_map.shape) > 0 else np.zeros(0)
    return space @ coefficients, decision, svals


def _solve_sampled(problem: ApsProblem, family: SampledFamily, action: SymmetryAction) -> IndexResult:
    tols = family.tolerances
    family.check_equivariant(action)

    spaces = _boundary_spaces(family, problem.convention)
    horizon = problem.horizon

    def block_at(t):
        return family(min(1.0, max(0.0, t / horizon)))

    steps = int(problem.steps) if problem.steps is not None else propagator_steps(family.norm_bound, horizon)
    sval_change = None

    if problem.variant == OperatorVariant.LORENTZIAN:
        phi = propagate_unitary(block_at, 0.0, horizon, steps, tolerances=tols)
        kernel, kdec, _ = _null_subspace(spaces.initial, spaces.rejected, phi, tols)
        cokernel, cdec, _ = _null_subspace(spaces.initial_complement, spaces.admitted, phi, tols)
    else:
        previous = None
        for doubling in range(MAX_STEP_DOUBLINGS + 1):
            psi = propagate_real(block_at, 0.0, horizon, steps, sign=-1.0, tolerances=tols)
            chi = propagate_real(block_at, 0.0, horizon, steps, sign=1.0, tolerances=tols)
            kernel, kdec, ksv = _null_subspace(spaces.initial, spaces.rejected, psi, tols)
            cokernel, cdec, csv = _null_subspace(spaces.initial_complement, spaces.admitted, chi, tols)
            svals = np.concatenate([ksv, csv])

            current = (kdec.nullity, cdec.nullity, svals)
            if previous is not None:
                scale = max(1.0, float(np.max(np.abs(previous[2])))) if previous[2].size else 1.0
                sval_change = float(np.max(np.abs(svals - previous[2]))) / scale if svals.size else 0.0
                if previous[:2] == current[:2]:
                    break
            if doubling == MAX_STEP_DOUBLINGS:
                logger.warning("riemannian boundary map nullities did not settle after %d steps", steps)
                break
            previous = current
            steps *= 2
            logger.info("riemannian step control: doubling to %d steps", steps)

    kernel_trace = equivariant_trace(action, kernel)
    cokernel_trace = equivariant_trace(action, cokernel)
    index = kernel_trace - cokernel_trace

    kdims = character_dimensions(action, kernel)
    cdims = character_dimensions(action, cokernel)
    per_character = [(kc, kn - cn) for (kc, kn), (_, cn) in zip(kdims, cdims)]

    result = IndexResult(
        index=index,
        kernel_trace=kernel_trace,
        cokernel_trace=cokernel_trace,
        boundary_map_rank_gap=min(kdec.gap_ratio, cdec.gap_ratio),
        convention=problem.convention,
        variant=problem.variant,
        kernel_dim=kernel.shape[1],
        cokernel_dim=cokernel.shape[1],
        steps=steps,
        per_character=tuple(per_character),
        singular_value_change=sval_change
    )

    return result


def _solve_modes(problem: ApsProblem, family: ModeBlockFamily) -> IndexResult:
    tols = family.tolerances

    def solve_mode(mode):
        action = mode.action(family.gamma_id)
        if action is None:
            raise InvalidInput(f"Mode {mode.label} is a curve family; APS problems need sampled mode blocks.")
        return _solve_sampled(problem, mode.family, action)

    mode_results = parallel_map(solve_mode, family.modes)

    kernel_value = sum((r.kernel_trace.value for r in mode_results), 0j)
    cokernel_value = sum((r.cokernel_trace.value for r in mode_results), 0j)
    pairs = [pair for r in mode_results for pair in r.per_character]
    is_identity = all(abs(c - 1.0) <= tols.char_cluster_tol for c, _ in pairs)

    kernel_trace = EquivariantValue.from_sum(kernel_value, family.gamma_id, is_identity)
    cokernel_trace = EquivariantValue.from_sum(cokernel_value, family.gamma_id, is_identity)

    result = IndexResult(
        index=kernel_trace - cokernel_trace,
        kernel_trace=kernel_trace,
        cokernel_trace=cokernel_trace,
        boundary_map_rank_gap=min(r.boundary_map_rank_gap for r in mode_results),
        convention=problem.convention,
        variant=problem.variant,
        kernel_dim=sum(r.kernel_dim for r in mode_results),
        cokernel_dim=sum(r.cokernel_dim for r in mode_results),
        steps=max(r.steps for r in mode_results),
        per_character=tuple(merge_characters(pairs, tols.char_cluster_tol, tols.char_noise_tol, drop_zero=True)),
        mode_results=tuple(zip(family.labels, mode_results))
    )

    return result


def solve_index(problem: ApsProblem, action: Optional[SymmetryAction] = None) -> IndexResult:
    """
        Computes ind_γ of the model operator directly from its boundary map.

        The kernel is the set of initial values f(0) ∈ E_(−∞,0)(B(0)) whose propagated value
        f(T) has no component outside the admitted terminal space.  The cokernel is the kernel of
        the formal adjoint under the adjoint conditions g(0) ∈ E_[0,∞)(B(0)), g(T) ⊥ admitted
        space.  Both are identified with their initial values, on which γ acts by its matrix.

        :param problem: The APS problem.
        :param action: The symmetry of a sampled family, the identity when omitted.  Mode-block
                       families carry their action per mode.

        :raises DegenerateRank: When a rank decision is not separated by the required gap ratio.
        :raises NotEquivariant: When the family does not commute with the action.
    """
    family = problem.family

    if isinstance(family, ModeBlockFamily):
        result = _solve_modes(problem, family)
    else:
        if action is None:
            action = SymmetryAction.identity(family.dim)
        result = _solve_sampled(problem, family, action)

    logger.debug("ind_%s (%s, %s) = %s", result.gamma_id, problem.convention.value, problem.variant.value, result.index.value)

    return result


def terminal_kernel_trace(family: Union[SampledFamily, ModeBlockFamily], action: Optional[SymmetryAction] = None) -> EquivariantValue:
    """
        tr(γ|ker B(1)).
    """
    if isinstance(family, ModeBlockFamily):
        parts = [terminal_kernel_trace(m.family, m.action(family.gamma_id)) for m in family.modes]
        value = sum((p.value for p in parts), 0j)
        exact = None
        if all(p.exact_integer is not None for p in parts):
            exact = sum(p.exact_integer for p in parts)
        return EquivariantValue(value, family.gamma_id, exact)

    if action is None:
        action = SymmetryAction.identity(family.dim)
    block = family.end_block
    zero, _ = zero_decision(block.values, block.norm, tolerances=family.tolerances)
    return equivariant_trace(action, block.eigensystem.select(zero))


def expected_index(family: Union[SampledFamily, ModeBlockFamily], convention: EndpointConvention,
                   action: Optional[SymmetryAction] = None) -> EquivariantValue:
    """
        The spectral flow side of the index theorem: sfl_γ(B) − tr(γ|ker B(1)) for the strict
        convention and sfl_γ(B) for the inclusive one.
    """
    flow = sfl_equivariant(family, action=action if isinstance(family, SampledFamily) else None).value
    if EndpointConvention(convention) == EndpointConvention.STRICT:
        return flow - terminal_kernel_trace(family, action)
    return flow


def index_identity_check(problem: ApsProblem, action: Optional[SymmetryAction] = None) -> CheckReport:
    """
        Compares the directly computed index with the spectral flow side of the index theorem.
    """
    family = problem.family
    tols = family.tolerances
    report = CheckReport(f"index-identity-{problem.convention.value}-{problem.variant.value}")

    result = solve_index(problem, action)
    expected = expected_index(family, problem.convention, action)
    deviation = abs(result.index.value - expected.value)

    report.add_value("index", result.index.as_dict())
    report.add_value("expected", expected.as_dict())
    report.add_value("deviation", deviation)
    report.add_value("rank_gap", result.boundary_map_rank_gap if math.isfinite(result.boundary_map_rank_gap) else None)

    if deviation <= tols.identity_tol:
        report.mark_passed()
    else:
        report.mark_failed(f"index {result.index.value} differs from the spectral flow side {expected.value}")

    return report


def _restricted_indices(problem: ApsProblem, family: SampledFamily, action: SymmetryAction):
    pairs = []
    for char in action.characters:
        restricted = family.restrict(action, char.eigenvalue)
        sub = solve_index(problem.with_family(restricted))
        pairs.append((char.eigenvalue, sub.index.exact_integer))
    return pairs


def index_decomposition_check(problem: ApsProblem, action: Optional[SymmetryAction] = None) -> CheckReport:
    """
        Computes ind_γ directly and as Σ_λ λ·ind(D|E_λ(γ)) from independently solved restricted
        problems.

        :raises InternalInconsistency: When the two evaluations disagree.
    """
    family = problem.family
    tols = family.tolerances
    report = CheckReport(f"index-decomposition-{problem.convention.value}-{problem.variant.value}")

    direct = solve_index(problem, action)

    if isinstance(family, ModeBlockFamily):
        pairs = []
        for mode in family.modes:
            pairs.extend(_restricted_indices(problem, mode.family, mode.action(family.gamma_id)))
        pairs = merge_characters(pairs, tols.char_cluster_tol, tols.char_noise_tol, drop_zero=True)
    else:
        if action is None:
            action = SymmetryAction.identity(family.dim)
        pairs = _restricted_indices(problem, family, action)

    decomposed = sum((c * n for c, n in pairs), 0j)
    deviation = abs(direct.index.value - decomposed)

    report.add_value("direct", direct.index.as_dict())
    report.add_value("decomposed", complex_pair(decomposed))
    report.add_value("per_character", [
        collections.OrderedDict([("character", complex_pair(c)), ("index", n)]) for c, n in pairs
    ])

    if deviation > tols.identity_tol:
        raise InternalInconsistency(f"Direct ind_γ {direct.index.value} disagrees with Σ λ·ind_λ = {decomposed}.")

    report.mark_passed()
    return report


def deformation_invariance_check(problem: ApsProblem, deformation: Callable[[float], SampledFamily],
                                 action: Optional[SymmetryAction] = None,
                                 s_values: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0)) -> CheckReport:
    """
        Recomputes ind_γ along a deformation s ↦ B_s whose endpoint blocks do not depend on s.

        :param problem: The problem posed for the undeformed family.
        :param deformation: Returns the deformed sampled family for a parameter s.
        :param s_values: At least five deformation parameters.

        :raises InvalidInput: When a deformation moves an endpoint block.
    """
    if len(s_values) < MIN_DEFORMATION_SAMPLES:
        raise InvalidInput(f"A deformation check needs at least {MIN_DEFORMATION_SAMPLES} parameters.")

    base = problem.family
    if not isinstance(base, SampledFamily):
        raise InvalidInput("Deformation checks are run on sampled families.")

    tols = base.tolerances
    report = CheckReport(f"deformation-invariance-{problem.convention.value}-{problem.variant.value}")

    indices = []
    for s in s_values:
        deformed = deformation(float(s))
        for mine, theirs in ((base.start_block, deformed.start_block), (base.end_block, deformed.end_block)):
            if float(np.max(np.abs(mine.matrix - theirs.matrix))) > ENDPOINT_MATCH_TOL:
                raise InvalidInput(f"The deformation at s={s} moves an endpoint block.")
        indices.append(solve_index(problem.with_family(deformed), action).index)

    spread = max(abs(idx.value - indices[0].value) for idx in indices)
    report.add_value("s_values", [float(s) for s in s_values])
    report.add_value("indices", [idx.as_dict() for idx in indices])
    report.add_value("spread", spread)

    if spread <= tols.identity_tol:
        report.mark_passed()
    else:
        report.mark_failed(f"index varies by {spread:.3e} along the deformation")

    return report
