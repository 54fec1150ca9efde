"""
.. module:: randomfamilies
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the seeded generators of random equivariant families, symmetry
               actions, deformations and congruence weights used by the verification harness.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>

    Every generator takes a :class:`numpy.random.Generator`.  Instances are built block
    diagonally over the characters of γ in a frame V and conjugated back, so B(t) = V·⊕H_λ(t)·V*
    and γ = V·diag(λ)·V*.  Haar unitaries come from the QR decomposition of a complex Gaussian
    matrix with the phases of the diagonal of R divided out.
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Callable, List, Optional, Sequence, Tuple

import math

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.linalg.symmetry import SymmetryAction, decompose
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

MIN_CHARACTER_SEPARATION = 0.1
EIGENVALUE_RANGE = (0.05, 5.0)
INVERTIBLE_RANGE = (1.0, 5.0)
INVERTIBLE_PERTURBATION = 0.9


@dataclass(frozen=True)
class RandomInstance:
    """
        A random equivariant family together with the data it was built from.

        :param family: The sampled family B.
        :param action: The symmetry γ.
        :param frame: The unitary V that block diagonalizes γ.
        :param characters: The characters of γ, one per block.
        :param block_samples: For every sample time the Hermitian blocks H_λ(t_i).
    """

    family: SampledFamily
    action: SymmetryAction
    frame: np.ndarray
    characters: Tuple[complex, ...]
    block_samples: Tuple[Tuple[np.ndarray, ...], ...]

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(b.shape[0] for b in self.block_samples[0])

    @property
    def dim(self) -> int:
        return self.family.dim


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    gauss = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    qmat, rmat = np.linalg.qr(gauss)
    phases = np.diag(rmat) / np.abs(np.diag(rmat))
    return qmat * phases[None, :]


def random_characters(rng: np.random.Generator, count: int) -> List[complex]:
    """
        ``count`` unit complex numbers whose arguments are pairwise at least 0.1 apart.
    """
    angles: List[float] = []
    while len(angles) < count:
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        gaps = [abs((angle - a + math.pi) % (2.0 * math.pi) - math.pi) for a in angles]
        if all(gap >= MIN_CHARACTER_SEPARATION for gap in gaps):
            angles.append(angle)
    return [complex(math.cos(a), math.sin(a)) for a in angles]


def random_hermitian(rng: np.random.Generator, dim: int, low: float = EIGENVALUE_RANGE[0],
                     high: float = EIGENVALUE_RANGE[1]) -> np.ndarray:
    """
        W·diag(±u)·W* with u uniform in [low, high], random signs and W Haar distributed.
    """
    signs = rng.choice([-1.0, 1.0], size=dim)
    values = signs * rng.uniform(low, high, size=dim)
    return _conjugate(haar_unitary(rng, dim), values)


def _conjugate(unitary: np.ndarray, values: np.ndarray) -> np.ndarray:
    mat = (unitary * values[None, :]) @ unitary.conj().T
    return 0.5 * (mat + mat.conj().T)


def _assemble(frame: np.ndarray, blocks: Sequence[np.ndarray]) -> np.ndarray:
    mat = frame @ scipy.linalg.block_diag(*blocks) @ frame.conj().T
    return 0.5 * (mat + mat.conj().T)


def _sample_times(rng: np.random.Generator, max_samples: int) -> np.ndarray:
    count = int(rng.integers(2, max_samples + 1))
    interior = np.sort(rng.uniform(0.05, 0.95, size=count - 2))
    return np.concatenate(([0.0], interior, [1.0]))


def _block_sizes(rng: np.random.Generator, dim: int, char_count: int) -> List[int]:
    cuts = np.sort(rng.choice(np.arange(1, dim), size=char_count - 1, replace=False)) if char_count > 1 else []
    edges = [0] + [int(c) for c in cuts] + [dim]
    return [hi - lo for lo, hi in zip(edges[:-1], edges[1:])]


def _instance(frame: np.ndarray, characters: Sequence[complex], times: np.ndarray,
              block_samples: Sequence[Sequence[np.ndarray]], gamma_id: str, tolerances: Tolerances) -> RandomInstance:
    sizes = [b.shape[0] for b in block_samples[0]]
    phases = np.concatenate([np.full(size, char) for size, char in zip(sizes, characters)])
    action = decompose((frame * phases[None, :]) @ frame.conj().T, gamma_id=gamma_id, tolerances=tolerances)

    blocks = [_assemble(frame, sample) for sample in block_samples]
    family = SampledFamily(times, blocks, gamma_id=gamma_id, tolerances=tolerances)

    samples = tuple(tuple(np.array(b) for b in sample) for sample in block_samples)
    return RandomInstance(family, action, frame, tuple(complex(c) for c in characters), samples)


def random_instance(rng: np.random.Generator, max_dim: int = 8, max_samples: int = 5, kernel_at_end: bool = False,
                    identity: bool = False, gamma_id: str = "gamma",
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> RandomInstance:
    """
        A random equivariant sampled family of dimension ≤ max_dim and norm ≤ 5 with 1 to 3
        characters.  B(0) is invertible; with ``kernel_at_end`` B(1) has a one dimensional
        kernel inside one character space.

        :param identity: Use γ = I instead of random characters.
    """
    if int(max_dim) < 1:
        raise InvalidInput("max_dim must be at least 1.")

    dim = int(rng.integers(1, int(max_dim) + 1))
    char_count = 1 if identity else int(rng.integers(1, min(3, dim) + 1))
    characters = [1.0 + 0j] if identity else random_characters(rng, char_count)
    sizes = _block_sizes(rng, dim, char_count)
    frame = haar_unitary(rng, dim)
    times = _sample_times(rng, max_samples)

    block_samples = [[random_hermitian(rng, size) for size in sizes] for _ in times]

    if kernel_at_end:
        target = int(rng.integers(0, char_count))
        unitary = haar_unitary(rng, sizes[target])
        signs = rng.choice([-1.0, 1.0], size=sizes[target])
        values = signs * rng.uniform(*EIGENVALUE_RANGE, size=sizes[target])
        values[0] = 0.0
        block_samples[-1][target] = _conjugate(unitary, values)

    return _instance(frame, characters, times, block_samples, "1" if identity else gamma_id, tolerances)


def random_invertible_instance(rng: np.random.Generator, max_dim: int = 8, max_samples: int = 5,
                               gamma_id: str = "gamma", tolerances: Tolerances = DEFAULT_TOLERANCES) -> RandomInstance:
    """
        A random equivariant family that is invertible for every t: a constant C with
        eigenvalues of modulus in [1, 5] plus perturbations of norm at most 0.9.
    """
    dim = int(rng.integers(1, int(max_dim) + 1))
    char_count = int(rng.integers(1, min(3, dim) + 1))
    characters = random_characters(rng, char_count)
    sizes = _block_sizes(rng, dim, char_count)
    frame = haar_unitary(rng, dim)
    times = _sample_times(rng, max_samples)

    centers = [random_hermitian(rng, size, *INVERTIBLE_RANGE) for size in sizes]
    block_samples = []
    for _ in times:
        sample = []
        for center, size in zip(centers, sizes):
            noise = random_hermitian(rng, size, 0.0, 1.0)
            scale = INVERTIBLE_PERTURBATION * rng.uniform(0.0, 1.0) / max(1.0, float(np.linalg.norm(noise, ord=2)))
            sample.append(center + scale * noise)
        block_samples.append(sample)

    return _instance(frame, characters, times, block_samples, gamma_id, tolerances)


def continuation(rng: np.random.Generator, instance: RandomInstance, max_samples: int = 5) -> RandomInstance:
    """
        A random family with the same action that starts where ``instance`` ends, so that the
        two can be concatenated.
    """
    times = _sample_times(rng, max_samples)
    first = [np.array(b) for b in instance.block_samples[-1]]
    block_samples = [first] + [[random_hermitian(rng, size) for size in instance.block_sizes] for _ in times[1:]]

    family = instance.family
    rtnval = _instance(instance.frame, instance.characters, times, block_samples, family.gamma_id, family.tolerances)
    return rtnval


def equivariant_perturbation(rng: np.random.Generator, instance: RandomInstance, scale: float) -> List[np.ndarray]:
    """
        A Hermitian perturbation per character block with norm at most ``scale``.
    """
    blocks = []
    for size in instance.block_sizes:
        noise = random_hermitian(rng, size, 0.0, 1.0)
        blocks.append(scale * noise / max(1.0, float(np.linalg.norm(noise, ord=2))))
    return blocks


def midpath_deformation(rng: np.random.Generator, instance: RandomInstance,
                        scale: float = 1.0) -> Callable[[float], SampledFamily]:
    """
        A deformation s ↦ B_s with B_s(t_i) = B(t_i) + s·P_i at the interior samples and the
        endpoint blocks untouched.  With a single sample interval an interior sample at t = ½ is
        inserted.
    """
    family = instance.family
    times = family.times
    if len(times) == 2:
        times = np.array([0.0, 0.5, 1.0])
    base = [family(t).matrix for t in times]
    perturbations = [np.zeros_like(base[0])]
    perturbations += [_assemble(instance.frame, equivariant_perturbation(rng, instance, scale)) for _ in times[1:-1]]
    perturbations += [np.zeros_like(base[0])]

    def deform(s: float) -> SampledFamily:
        blocks = [b + float(s) * p for b, p in zip(base, perturbations)]
        return SampledFamily(times, blocks, gamma_id=family.gamma_id, tolerances=family.tolerances)

    return deform


def congruence_weights(rng: np.random.Generator, instance: RandomInstance, max_samples: int = 5,
                       scale: float = 1.0) -> SampledFamily:
    """
        Positive definite equivariant weights N(t) = V·⊕exp(S_λ(t))·V* with S = 0 at t = 0 and
        t = 1, so that N(0) = N(1) = I.
    """
    times = _sample_times(rng, max(3, max_samples))
    if len(times) == 2:
        times = np.array([0.0, 0.5, 1.0])

    blocks = []
    for idx, _ in enumerate(times):
        if idx == 0 or idx == len(times) - 1:
            blocks.append(np.eye(instance.dim, dtype=np.complex128))
            continue
        logs = equivariant_perturbation(rng, instance, scale)
        blocks.append(_assemble(instance.frame, [scipy.linalg.expm(log) for log in logs]))

    family = instance.family
    return SampledFamily(times, blocks, gamma_id=family.gamma_id, tolerances=family.tolerances)


def random_action(rng: np.random.Generator, dim: int, char_count: Optional[int] = None,
                  gamma_id: str = "gamma") -> SymmetryAction:
    """
        A random unitary symmetry with 1 to 3 distinct characters.
    """
    if char_count is None:
        char_count = int(rng.integers(1, min(3, dim) + 1))
    characters = random_characters(rng, char_count)
    sizes = _block_sizes(rng, dim, char_count)
    phases = np.concatenate([np.full(size, char) for size, char in zip(sizes, characters)])
    frame = haar_unitary(rng, dim)
    return decompose((frame * phases[None, :]) @ frame.conj().T, gamma_id=gamma_id)
