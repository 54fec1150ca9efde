
import cmath

import numpy as np
import pytest

from mojo.specflow.exceptions import ClusterAmbiguity, InvalidInput, NotEquivariant, NotInvariant
from mojo.specflow.linalg.matrixcore import HermitianBlock
from mojo.specflow.linalg.symmetry import (
    SymmetryAction,
    character_dimensions,
    check_commutes,
    decompose,
    direct_sum_actions,
    equivariant_trace,
    restrict
)
from mojo.specflow.randomfamilies import haar_unitary

TOL = 1e-10

OMEGA = cmath.exp(2j * cmath.pi / 5)


def test_identity_action_is_identity():
    action = SymmetryAction.identity(3)
    assert action.is_identity
    assert len(action.characters) == 1
    assert action.characters[0].multiplicity == 3
    assert action.gamma_id == "1"


def test_characters_ordered_by_argument():
    action = SymmetryAction.from_diagonal([OMEGA, 1.0, -1.0, OMEGA], "g")
    values = [c.eigenvalue for c in action.characters]
    assert abs(values[0] - 1.0) < TOL
    assert abs(values[1] - OMEGA) < TOL
    assert abs(values[2] + 1.0) < TOL
    assert [c.multiplicity for c in action.characters] == [1, 2, 1]
    assert not action.is_identity


def test_decompose_rejects_non_unitary():
    with pytest.raises(InvalidInput):
        decompose(np.diag([1.0, 2.0]))


def test_decompose_rejects_near_but_unequal_eigenvalues():
    with pytest.raises(ClusterAmbiguity):
        decompose(np.diag([1.0, cmath.exp(1e-9j)]))


def test_conjugated_action_reconstructs():
    rng = np.random.default_rng(5)
    frame = haar_unitary(rng, 4)
    phases = np.array([1j, 1j, -1.0, 1.0])
    unitary = (frame * phases[None, :]) @ frame.conj().T
    action = decompose(unitary)

    rebuilt = sum(c.eigenvalue * c.projector for c in action.characters)
    np.testing.assert_allclose(rebuilt, unitary, atol=1e-9)
    for char in action.characters:
        np.testing.assert_allclose(char.basis.conj().T @ char.basis, np.eye(char.multiplicity), atol=TOL)


def test_restrict_and_commutation():
    action = SymmetryAction.from_diagonal([1.0, 1.0, 1j], "g")
    block = HermitianBlock(np.array([[1.0, 2.0, 0.0], [2.0, -1.0, 0.0], [0.0, 0.0, 4.0]]))
    assert check_commutes(action, block)

    restricted = restrict(action, block, 1.0)
    assert restricted.dim == 2
    np.testing.assert_allclose(np.sort(restricted.values), np.sort(np.linalg.eigvalsh([[1.0, 2.0], [2.0, -1.0]])), atol=TOL)

    offending = HermitianBlock(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]))
    assert not check_commutes(action, offending)
    with pytest.raises(NotEquivariant):
        restrict(action, offending, 1.0)


def test_equivariant_trace_of_invariant_subspace():
    action = SymmetryAction.from_diagonal([1.0, OMEGA, OMEGA], "g")
    basis = np.eye(3)[:, 1:]
    value = equivariant_trace(action, basis)
    assert abs(value.value - 2.0 * OMEGA) < TOL
    assert value.exact_integer is None

    assert character_dimensions(action, basis) == [(1.0 + 0j, 0), (action.characters[1].eigenvalue, 2)]


def test_equivariant_trace_empty_subspace():
    action = SymmetryAction.identity(2)
    value = equivariant_trace(action, np.zeros((2, 0)))
    assert value.exact_integer == 0


def test_equivariant_trace_rejects_non_invariant_subspace():
    action = SymmetryAction.from_diagonal([1.0, -1.0], "g")
    basis = np.array([[1.0], [1.0]]) / np.sqrt(2.0)
    with pytest.raises(NotInvariant):
        equivariant_trace(action, basis)


def test_direct_sum_actions():
    first = SymmetryAction.from_diagonal([1.0, 1j], "g")
    second = SymmetryAction.from_diagonal([1j], "g")
    action = direct_sum_actions(first, second)
    assert action.dim == 3
    assert [c.multiplicity for c in action.characters] == [1, 2]
