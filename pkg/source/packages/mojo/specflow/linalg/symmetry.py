"""
.. module:: symmetry
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`SymmetryAction` object and the operations that split
               spaces into eigenspaces of a unitary symmetry γ, restrict commuting operators to
               those eigenspaces and evaluate equivariant traces tr(γ|X).

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Optional, Sequence, Tuple

import collections
import math

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mojo.specflow.exceptions import (
    ClusterAmbiguity,
    InternalInconsistency,
    InvalidInput,
    NotEquivariant,
    NotInvariant
)
from mojo.specflow.linalg.matrixcore import (
    ComplexMatrix,
    HermitianBlock,
    as_complex_matrix
)
from mojo.specflow.model.equivariantvalue import EquivariantValue, complex_pair
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

TWO_PI = 2.0 * math.pi

IDENTITY_GAMMA_ID = "1"


def character_angle(value: complex) -> float:
    """
        The argument of a unit complex number in [0, 2π), with values on the positive real axis
        mapped to 0 so that the character 1 always sorts first.
    """
    angle = math.atan2(value.imag, value.real) % TWO_PI
    if angle > TWO_PI - 1e-12:
        angle = 0.0
    return angle


def cluster_unit_values(values: Sequence[complex], cluster_tol: float, noise_tol: float) -> List[List[int]]:
    """
        Single-link clustering of unit complex values.  Clusters are returned ordered by the
        argument of their mean, members in ascending index order.

        :raises ClusterAmbiguity: When a cluster spreads wider than the noise tolerance.
    """
    vals = np.asarray(values, dtype=np.complex128)
    count = vals.size
    parent = list(range(count))

    def find(idx):
        while parent[idx] != idx:
            parent[idx] = parent[parent[idx]]
            idx = parent[idx]
        return idx

    if count > 0:
        distances = np.abs(vals[:, np.newaxis] - vals[np.newaxis, :])
        close_i, close_j = np.nonzero(np.triu(distances <= cluster_tol, k=1))
        for i, j in zip(close_i.tolist(), close_j.tolist()):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

    groups = collections.OrderedDict()
    for idx in range(count):
        groups.setdefault(find(idx), []).append(idx)

    clusters = []
    for members in groups.values():
        member_vals = vals[members]
        spread = float(np.max(np.abs(member_vals[:, np.newaxis] - member_vals[np.newaxis, :])))
        if spread > noise_tol:
            errmsg = f"Eigenvalues {member_vals.tolist()} are closer than the cluster tolerance but distinct (spread={spread:.3e})."
            raise ClusterAmbiguity(errmsg)
        clusters.append(members)

    def cluster_key(members):
        mean = complex(np.mean(vals[members]))
        return character_angle(mean / abs(mean))

    clusters.sort(key=cluster_key)

    return clusters


@dataclass(frozen=True)
class Character:
    """
        One eigenvalue λ of γ together with its eigenprojector and a deterministic orthonormal
        basis of E_λ(γ).
    """

    eigenvalue: complex
    projector: ComplexMatrix
    basis: ComplexMatrix
    multiplicity: int


class SymmetryAction:
    """
        A unitary symmetry γ decomposed into its characters.  Instances are immutable after
        construction; create them with :func:`decompose`.
    """
    def __init__(self, unitary: ComplexMatrix, characters: List[Character], gamma_id: str,
                 tolerances: Tolerances = DEFAULT_TOLERANCES):
        self._unitary = unitary
        self._unitary.setflags(write=False)
        self._characters = tuple(characters)
        self._gamma_id = gamma_id
        self._tolerances = tolerances
        return

    @classmethod
    def identity(cls, dim: int, gamma_id: str = IDENTITY_GAMMA_ID) -> "SymmetryAction":
        return decompose(np.eye(dim, dtype=np.complex128), gamma_id=gamma_id)

    @classmethod
    def from_diagonal(cls, phases: Sequence[complex], gamma_id: str) -> "SymmetryAction":
        """
            Creates the diagonal action diag(phases).
        """
        return decompose(np.diag(np.asarray(phases, dtype=np.complex128)), gamma_id=gamma_id)

    @property
    def characters(self) -> Tuple[Character, ...]:
        return self._characters

    @property
    def dim(self) -> int:
        return self._unitary.shape[0]

    @property
    def gamma_id(self) -> str:
        return self._gamma_id

    @property
    def is_identity(self) -> bool:
        """
            True when γ acts as the identity, in which case equivariant values are integers.
        """
        return len(self._characters) == 1 and abs(self._characters[0].eigenvalue - 1.0) <= self._tolerances.char_cluster_tol

    @property
    def tolerances(self) -> Tolerances:
        return self._tolerances

    @property
    def unitary(self) -> ComplexMatrix:
        return self._unitary

    def character(self, eigenvalue: complex) -> Character:
        """
            Looks up the character with the given eigenvalue.

            :raises InvalidInput: When λ is not an eigenvalue of γ.
        """
        for char in self._characters:
            if abs(char.eigenvalue - eigenvalue) <= self._tolerances.char_cluster_tol:
                return char
        raise InvalidInput(f"{eigenvalue} is not a character of the action '{self._gamma_id}'.")

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("gamma", self._gamma_id),
            ("dim", self.dim),
            ("characters", [
                collections.OrderedDict([("eigenvalue", complex_pair(c.eigenvalue)), ("multiplicity", c.multiplicity)])
                for c in self._characters
            ])
        ])
        return rtnval


def decompose(unitary, gamma_id: str = "gamma", tolerances: Tolerances = DEFAULT_TOLERANCES) -> SymmetryAction:
    """
        Decomposes a unitary into its characters: eigenvalues clustered at char_cluster_tol and
        normalized to unit modulus, with eigenprojectors and deterministic bases.

        :param unitary: The unitary matrix of γ.
        :param gamma_id: A label for the group element carried into every value computed with it.

        :raises InvalidInput: When the matrix is not unitary.
        :raises ClusterAmbiguity: When two eigenvalues are near but not equal.
    """
    umat = as_complex_matrix(unitary)
    rows, cols = umat.shape
    if rows != cols or rows == 0:
        raise InvalidInput(f"A symmetry must be a square matrix, got shape {umat.shape}.")

    eye = np.eye(rows, dtype=np.complex128)
    defect = float(np.max(np.abs(umat.conj().T @ umat - eye)))
    if defect > 1e-10:
        raise InvalidInput(f"Symmetry is not unitary, defect={defect:.3e}.")

    tmat, zmat = scipy.linalg.schur(umat, output="complex")
    eigvals = np.diag(tmat)
    eigvals = eigvals / np.abs(eigvals)

    clusters = cluster_unit_values(eigvals, tolerances.char_cluster_tol, tolerances.char_noise_tol)

    characters = []
    for members in clusters:
        value = complex(np.mean(eigvals[members]))
        value = value / abs(value)
        if abs(value - 1.0) <= tolerances.char_noise_tol:
            value = 1.0 + 0.0j

        span = zmat[:, members]
        projector = span @ span.conj().T
        projector = 0.5 * (projector + projector.conj().T)

        pvals, pvecs = scipy.linalg.eigh(projector)
        basis = np.ascontiguousarray(pvecs[:, pvals > 0.5])
        if basis.shape[1] != len(members):
            raise InternalInconsistency("Character projector rank does not match the cluster size.")

        projector.setflags(write=False)
        basis.setflags(write=False)
        characters.append(Character(value, projector, basis, len(members)))

    total = sum(c.projector for c in characters)
    rebuilt = sum(c.eigenvalue * c.projector for c in characters)
    if float(np.max(np.abs(total - eye))) > 1e-10 or float(np.max(np.abs(rebuilt - umat))) > 1e-9:
        raise InternalInconsistency("Character projectors do not reconstruct the symmetry.")

    return SymmetryAction(umat, characters, gamma_id, tolerances=tolerances)


def direct_sum_actions(first: SymmetryAction, second: SymmetryAction, gamma_id: Optional[str] = None) -> SymmetryAction:
    """
        The action γ₁ ⊕ γ₂ on the direct sum of the two spaces.
    """
    umat = scipy.linalg.block_diag(first.unitary, second.unitary)
    return decompose(umat, gamma_id=gamma_id or first.gamma_id, tolerances=first.tolerances)


def check_commutes(action: SymmetryAction, block: HermitianBlock) -> bool:
    """
        True iff ‖Uγ·M − M·Uγ‖_max ≤ commute_tol·max(1, ‖M‖).

        :raises InvalidInput: On a dimension mismatch.
    """
    if action.dim != block.dim:
        raise InvalidInput(f"Dimension mismatch: action has dim {action.dim}, block has dim {block.dim}.")

    umat = action.unitary
    mat = block.matrix
    commutator = float(np.max(np.abs(umat @ mat - mat @ umat)))
    scale = max(1.0, float(np.max(np.abs(mat))))

    return commutator <= action.tolerances.commute_tol * scale


def restrict(action: SymmetryAction, block: HermitianBlock, character: complex) -> HermitianBlock:
    """
        The compression W*MW of a commuting block to the eigenspace E_λ(γ).

        :raises NotEquivariant: When the block does not commute with the action.
    """
    if not check_commutes(action, block):
        raise NotEquivariant(f"Block does not commute with the action '{action.gamma_id}'.")

    basis = action.character(character).basis
    return HermitianBlock(basis.conj().T @ block.matrix @ basis, tolerances=block.tolerances)


def character_dimensions(action: SymmetryAction, subspace_basis: ComplexMatrix) -> List[Tuple[complex, int]]:
    """
        The dimensions dim(E_λ(γ) ∩ X) for every character λ of an invariant subspace X.

        :raises NotInvariant: When a compressed projector is not (numerically) a projector.
    """
    basis = np.asarray(subspace_basis, dtype=np.complex128)
    rtnval = []

    for char in action.characters:
        if basis.shape[1] == 0:
            rtnval.append((char.eigenvalue, 0))
            continue
        dim_real = float(np.real(np.trace(basis.conj().T @ char.projector @ basis)))
        dim_int = int(round(dim_real))
        if abs(dim_real - dim_int) > 1e-6:
            raise NotInvariant(f"Subspace meets E_λ(γ) for λ={char.eigenvalue} in a non-integer dimension {dim_real:.6f}.")
        rtnval.append((char.eigenvalue, dim_int))

    return rtnval


def equivariant_trace(action: SymmetryAction, subspace_basis: ComplexMatrix) -> EquivariantValue:
    """
        The trace tr(γ|X) of γ over an invariant subspace X given by orthonormal columns,
        computed as tr(B*UB) and cross-checked against Σ λ·dim(E_λ ∩ X).

        :raises NotInvariant: When X is not γ-invariant within inv_tol.
        :raises InternalInconsistency: When the two evaluations disagree.
    """
    tols = action.tolerances
    basis = np.asarray(subspace_basis, dtype=np.complex128)

    if basis.ndim != 2 or basis.shape[0] != action.dim:
        raise InvalidInput(f"Subspace basis of shape {basis.shape} does not match action dim {action.dim}.")

    if basis.shape[1] == 0:
        return EquivariantValue.from_sum(0.0, action.gamma_id, action.is_identity)

    gram = basis.conj().T @ basis
    if float(np.max(np.abs(gram - np.eye(basis.shape[1])))) > tols.inv_tol:
        raise InvalidInput("Subspace basis columns are not orthonormal.")

    moved = action.unitary @ basis
    compressed = basis.conj().T @ moved
    leak = float(np.max(np.abs(moved - basis @ compressed)))
    if leak > tols.inv_tol:
        raise NotInvariant(f"Subspace is not invariant under '{action.gamma_id}', defect={leak:.3e}.")

    direct = complex(np.trace(compressed))
    char_sum = sum(value * dim for value, dim in character_dimensions(action, basis))

    if abs(direct - char_sum) > tols.trace_agreement_tol:
        raise InternalInconsistency(f"Equivariant trace {direct} disagrees with character sum {char_sum}.")

    return EquivariantValue.from_sum(direct, action.gamma_id, action.is_identity)
