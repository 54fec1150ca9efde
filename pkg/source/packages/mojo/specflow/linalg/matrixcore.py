"""
.. module:: matrixcore
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the dense complex linear algebra used by the spectral flow
               laboratory: Hermitian eigendecomposition, spectral projectors, midpoint
               propagators and null spaces with explicit rank decisions.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Callable, Optional, Tuple, Union

import collections
import logging
import math

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mojo.specflow.exceptions import (
    DegenerateRank,
    InternalInconsistency,
    InvalidInput,
    SpectralBoundaryCollision
)
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

# A ComplexMatrix is a two dimensional complex128 numpy array.
ComplexMatrix = np.ndarray

MIN_PROPAGATOR_STEPS = 64
STEPS_PER_UNIT_PHASE = 32

MACHINE_EPS = float(np.finfo(np.float64).eps)


def as_complex_matrix(matrix) -> ComplexMatrix:
    """
        Converts a nested sequence or array to a contiguous complex128 matrix, validating shape
        and finiteness.
    """
    rtnval = np.array(matrix, dtype=np.complex128, copy=True)
    if rtnval.ndim != 2:
        raise InvalidInput(f"Expected a two dimensional matrix, got shape {rtnval.shape}.")
    if not np.all(np.isfinite(rtnval)):
        raise InvalidInput("Matrix contains non-finite entries.")
    return np.ascontiguousarray(rtnval)


@dataclass(frozen=True)
class EigenSystem:
    """
        Ascending real eigenvalues and the matching orthonormal eigenvector columns.
    """

    values: np.ndarray
    vectors: ComplexMatrix

    def select(self, mask: np.ndarray) -> ComplexMatrix:
        """
            Returns the eigenvector columns whose eigenvalues are selected by the mask.
        """
        return self.vectors[:, mask]


@dataclass(frozen=True)
class RankDecision:
    """
        Records a rank (or kernel) decision together with the spectral gap around its threshold.
    """

    nullity: int
    threshold: float
    below: float # largest magnitude classified as zero (0.0 when none)
    above: float # smallest magnitude classified as non-zero (inf when none)
    gap_ratio: float

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("nullity", self.nullity),
            ("threshold", self.threshold),
            ("below", self.below),
            ("above", self.above if math.isfinite(self.above) else None),
            ("gap_ratio", self.gap_ratio if math.isfinite(self.gap_ratio) else None)
        ])
        return rtnval


class HermitianBlock:
    """
        A dense complex self-adjoint matrix with a cached real spectrum.  This is the finite
        dimensional stand-in for a single operator A(t) or B(t) of a family.
    """
    def __init__(self, matrix, tolerances: Tolerances = DEFAULT_TOLERANCES):
        """
            Creates a block, validating hermiticity and symmetrizing away rounding noise.

            :param matrix: A square complex matrix.
            :param tolerances: The tolerances used for validation and eigendecomposition.
        """
        mat = as_complex_matrix(matrix)
        rows, cols = mat.shape
        if rows != cols or rows == 0:
            raise InvalidInput(f"A Hermitian block must be square and non-empty, got shape {mat.shape}.")

        scale = max(1.0, float(np.max(np.abs(mat))))
        defect = float(np.max(np.abs(mat - mat.conj().T)))
        if defect > tolerances.hermiticity_tol * scale:
            raise InvalidInput(f"Matrix is not Hermitian, defect={defect:.3e}.")

        self._matrix = 0.5 * (mat + mat.conj().T)
        self._matrix.setflags(write=False)
        self._tolerances = tolerances
        self._eigensystem = None
        return

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> ComplexMatrix:
        """
            The read-only Hermitian matrix.
        """
        return self._matrix

    @property
    def norm(self) -> float:
        """
            The operator norm, i.e. the largest eigenvalue magnitude.
        """
        values = self.eigensystem.values
        return float(max(abs(values[0]), abs(values[-1])))

    @property
    def eigensystem(self) -> EigenSystem:
        if self._eigensystem is None:
            self._eigensystem = eigh(self)
        return self._eigensystem

    @property
    def tolerances(self) -> Tolerances:
        return self._tolerances

    @property
    def values(self) -> np.ndarray:
        return self.eigensystem.values

    def __repr__(self):
        return f"HermitianBlock(dim={self.dim}, spectrum={np.round(self.values, 6).tolist()})"


def as_block(block: Union[HermitianBlock, np.ndarray], tolerances: Tolerances = DEFAULT_TOLERANCES) -> HermitianBlock:
    if isinstance(block, HermitianBlock):
        return block
    return HermitianBlock(block, tolerances=tolerances)


def eigh(block: HermitianBlock) -> EigenSystem:
    """
        Full orthonormal eigendecomposition of a Hermitian block with ascending eigenvalues.

        :param block: The block to decompose.

        :returns: The :class:`EigenSystem` of the block.
    """
    mat = block.matrix
    tol = block.tolerances.eig_tol

    try:
        values, vectors = scipy.linalg.eigh(mat)
    except np.linalg.LinAlgError as lerr:
        raise InvalidInput(f"Eigendecomposition failed: {lerr}") from None

    scale = max(1.0, float(np.max(np.abs(values))))
    residual = float(np.max(np.abs(mat @ vectors - vectors * values[np.newaxis, :])))
    orthogonality = float(np.max(np.abs(vectors.conj().T @ vectors - np.eye(mat.shape[0]))))
    if residual > tol * scale * mat.shape[0] or orthogonality > tol * mat.shape[0]:
        errmsg = f"Eigendecomposition residual={residual:.3e} orthogonality={orthogonality:.3e} exceed tolerance."
        raise InternalInconsistency(errmsg)

    values.setflags(write=False)
    vectors.setflags(write=False)

    return EigenSystem(values, vectors)


def spectral_projector(block: HermitianBlock, interval: Tuple[float, float]) -> ComplexMatrix:
    """
        Orthogonal projector onto the span of the eigenvectors whose eigenvalues lie in the closed
        interval.  Infinite endpoints are allowed.

        :param block: The block to project with.
        :param interval: The closed interval (lo, hi).

        :raises SpectralBoundaryCollision: When a finite endpoint is within eig_tol·‖M‖ of an eigenvalue.
    """
    lo, hi = interval
    if lo > hi:
        raise InvalidInput(f"Empty interval [{lo}, {hi}].")

    esys = block.eigensystem
    guard = block.tolerances.eig_tol * max(1.0, block.norm)

    for edge in (lo, hi):
        if math.isfinite(edge):
            distance = float(np.min(np.abs(esys.values - edge)))
            if distance <= guard:
                raise SpectralBoundaryCollision(f"Interval endpoint {edge} lies on the spectrum (distance={distance:.3e}).")

    mask = (esys.values >= lo) & (esys.values <= hi)
    basis = esys.select(mask)
    return basis @ basis.conj().T


def hermitian_function(block: HermitianBlock, func: Callable[[np.ndarray], np.ndarray]) -> ComplexMatrix:
    """
        Applies a scalar function to a Hermitian block through its eigendecomposition.
    """
    esys = block.eigensystem
    fvals = func(esys.values)
    return (esys.vectors * fvals[np.newaxis, :]) @ esys.vectors.conj().T


def hermitian_power(block: HermitianBlock, power: float) -> ComplexMatrix:
    """
        The power N^p of a positive definite block.

        :raises InvalidInput: When the block is not positive definite.
    """
    if block.values[0] <= 0.0:
        raise InvalidInput(f"Weight is not positive definite, smallest eigenvalue={block.values[0]:.3e}.")
    return hermitian_function(block, lambda vals: np.power(vals, power))


def hermitian_sqrt(block: HermitianBlock) -> ComplexMatrix:
    return hermitian_power(block, 0.5)


def expi_hermitian(block: HermitianBlock, step: float) -> ComplexMatrix:
    """
        The unitary exp(i·step·M).
    """
    return hermitian_function(block, lambda vals: np.exp(1j * step * vals))


def exp_hermitian(block: HermitianBlock, step: float) -> ComplexMatrix:
    """
        The positive matrix exp(step·M).
    """
    return hermitian_function(block, lambda vals: np.exp(step * vals).astype(np.complex128))


def propagator_steps(norm_bound: float, span: float) -> int:
    """
        Default step count for the midpoint propagators.
    """
    return max(MIN_PROPAGATOR_STEPS, int(math.ceil(STEPS_PER_UNIT_PHASE * norm_bound * abs(span))))


def propagate_unitary(family: Callable[[float], HermitianBlock], t0: float, t1: float, steps: int,
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    """
        Time-ordered propagator Φ of Φ' = iB(t)Φ, Φ(t0) = I, by the midpoint exponential scheme
        with a polar re-unitarization after every step.

        :param family: Callable returning the block B(t) for a time t.
        :param t0: Initial time.
        :param t1: Final time.
        :param steps: Number of midpoint steps.
    """
    if steps < 1:
        raise InvalidInput(f"Propagator needs at least one step, got {steps}.")

    width = (t1 - t0) / steps
    phi = None

    for k in range(steps):
        block = as_block(family(t0 + (k + 0.5) * width), tolerances)
        step_op = expi_hermitian(block, width)
        phi = step_op if phi is None else step_op @ phi
        phi, _ = scipy.linalg.polar(phi)

    defect = float(np.max(np.abs(phi.conj().T @ phi - np.eye(phi.shape[0]))))
    if defect > tolerances.prop_tol * phi.shape[0]:
        raise InternalInconsistency(f"Propagator lost unitarity, defect={defect:.3e}.")

    logger.debug("unitary propagator over [%g, %g] with %d steps", t0, t1, steps)

    return phi


def propagate_real(family: Callable[[float], HermitianBlock], t0: float, t1: float, steps: int,
                   sign: float = -1.0, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    """
        Propagator Ψ of Ψ' = sign·B(t)Ψ, Ψ(t0) = I, by the same midpoint scheme without
        re-unitarization.  The result is invertible but not unitary.
    """
    if steps < 1:
        raise InvalidInput(f"Propagator needs at least one step, got {steps}.")

    width = (t1 - t0) / steps
    psi = None

    for k in range(steps):
        block = as_block(family(t0 + (k + 0.5) * width), tolerances)
        step_op = exp_hermitian(block, sign * width)
        psi = step_op if psi is None else step_op @ psi

    return psi


def _gap_decision(magnitudes: np.ndarray, threshold: float, floor: float, ratio_required: float,
                  structural: int = 0) -> RankDecision:

    below_vals = magnitudes[magnitudes < threshold]
    above_vals = magnitudes[magnitudes >= threshold]

    below = float(below_vals.max()) if below_vals.size else 0.0
    above = float(above_vals.min()) if above_vals.size else math.inf

    if below_vals.size == 0 or above_vals.size == 0:
        ratio = math.inf
    else:
        ratio = above / max(below, floor)

    decision = RankDecision(int(below_vals.size) + structural, threshold, below, above, ratio)

    if ratio < ratio_required:
        errmsg = f"Rank decision not separated: below={below:.3e} above={above:.3e} ratio={ratio:.3e}."
        raise DegenerateRank(errmsg)

    return decision


def kernel_decision(matrix, rank_tol: Optional[float] = None,
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[ComplexMatrix, RankDecision]:
    """
        Orthonormal basis of the numerical null space together with the rank decision behind it.

        :param matrix: The (possibly rectangular) matrix.
        :param rank_tol: Relative singular value threshold, defaults to the configured rank_tol.

        :raises DegenerateRank: When the singular values are not separated around the threshold.
    """
    if rank_tol is None:
        rank_tol = tolerances.rank_tol
    if not rank_tol > 0:
        raise InvalidInput(f"rank_tol must be positive, got {rank_tol}.")

    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.ndim != 2:
        raise InvalidInput(f"Expected a two dimensional matrix, got shape {mat.shape}.")

    rows, cols = mat.shape

    if cols == 0:
        return np.zeros((0, 0), dtype=np.complex128), RankDecision(0, 0.0, 0.0, math.inf, math.inf)

    if rows == 0:
        return np.eye(cols, dtype=np.complex128), RankDecision(cols, 0.0, 0.0, math.inf, math.inf)

    _, svals, vh = scipy.linalg.svd(mat, full_matrices=True)
    smax = float(svals[0]) if svals.size else 0.0

    if smax == 0.0:
        return np.eye(cols, dtype=np.complex128), RankDecision(cols, 0.0, 0.0, math.inf, math.inf)

    threshold = rank_tol * smax
    structural = cols - svals.size
    decision = _gap_decision(svals, threshold, MACHINE_EPS * smax, tolerances.rank_gap_ratio, structural)

    rank = cols - decision.nullity
    basis = np.ascontiguousarray(vh[rank:, :].conj().T)

    return basis, decision


def kernel_basis(matrix, rank_tol: Optional[float] = None, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    """
        Orthonormal columns spanning the numerical null space (singular values below
        rank_tol·σ_max); an empty matrix when the input has full column rank.
    """
    basis, _ = kernel_decision(matrix, rank_tol=rank_tol, tolerances=tolerances)
    return basis


def zero_decision(values: np.ndarray, scale: float, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[np.ndarray, RankDecision]:
    """
        Classifies eigenvalues as numerically zero with the rank rule used for singular values.

        :param values: Real eigenvalues.
        :param scale: The norm of the operator they came from.

        :returns: A boolean mask of the zero eigenvalues and the decision record.
    """
    values = np.asarray(values, dtype=np.float64)
    scale = max(1.0, float(scale))
    threshold = tolerances.rank_tol * scale
    magnitudes = np.abs(values)
    decision = _gap_decision(magnitudes, threshold, MACHINE_EPS * scale, tolerances.rank_gap_ratio)
    return magnitudes < threshold, decision
