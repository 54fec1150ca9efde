"""
.. module:: circlemodel
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the twisted Dirac operator family on the circle,
               A_t = i∂_x + f(t)J, its Fourier mode truncation and its exact spectrum with
               characters.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Callable, List, Optional, Tuple

import cmath
import collections
import math

from dataclasses import dataclass, field

import numpy as np

from mojo.specflow.eta.etainvariant import CharacterSpectrum, Progression, SpectralPoint, boundary_term
from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.families.modeblockfamily import ModeBlock, ModeBlockFamily
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.linalg.matrixcore import as_complex_matrix
from mojo.specflow.linalg.symmetry import IDENTITY_GAMMA_ID, SymmetryAction
from mojo.specflow.model.boundaryterm import BoundaryTerm
from mojo.specflow.model.conventions import ActionConvention
from mojo.specflow.model.equivariantvalue import complex_pair
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

PROFILES = ("linear", "smoothstep")
SMOOTHSTEP_SAMPLES = 33
INTEGER_SNAP_TOL = 1e-12
TWIST_HERMITICITY_TOL = 1e-12


def profile_function(profile: str) -> Callable:
    """
        The twist profile f with f(0) = 0 and f(1) = 1.
    """
    if profile == "linear":
        return lambda t: t
    if profile == "smoothstep":
        return lambda t: 3.0 * t * t - 2.0 * t * t * t
    raise InvalidInput(f"Unknown twist profile '{profile}', expected one of {PROFILES}.")


def gamma_label(z: complex) -> str:
    """
        The label of the rotation by z carried into result documents.
    """
    z = complex(z)
    if abs(z - 1.0) <= INTEGER_SNAP_TOL:
        return IDENTITY_GAMMA_ID
    return f"z=({z.real:.12g},{z.imag:.12g})"


@dataclass(frozen=True, eq=False)
class CircleModel:
    """
        The product M = [0, 1] × S¹ with the trivial bundle ℂ^k, the connection d − i f(t) J dx
        and the circle action whose element z acts on the fiber by α(z) = diag(z^w_i).

        :param k: The fiber dimension.
        :param twist: The Hermitian k×k matrix J.
        :param fiber_weights: The integer weights w_i of α.
        :param j_max: The Fourier mode truncation.
        :param z: The group element, a unit complex number.
        :param action_convention: Whether z acts on the fiber only or also rotates the base.
        :param profile: The twist profile, "linear" or "smoothstep".
    """

    k: int
    twist: np.ndarray
    fiber_weights: Tuple[int, ...]
    j_max: int = 16
    z: complex = 1.0
    action_convention: ActionConvention = ActionConvention.FIBER
    profile: str = "linear"
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, compare=False)

    def __post_init__(self):
        twist = as_complex_matrix(self.twist)
        if twist.shape != (self.k, self.k):
            raise InvalidInput(f"The twist must be {self.k}×{self.k}, got shape {twist.shape}.")
        if float(np.max(np.abs(twist - twist.conj().T))) > TWIST_HERMITICITY_TOL:
            raise InvalidInput("The twist matrix must be Hermitian.")
        twist.setflags(write=False)
        object.__setattr__(self, "twist", twist)

        weights = tuple(int(w) for w in self.fiber_weights)
        if len(weights) != self.k:
            raise InvalidInput(f"Expected {self.k} fiber weights, got {len(weights)}.")
        object.__setattr__(self, "fiber_weights", weights)

        for row in range(self.k):
            for col in range(self.k):
                if weights[row] != weights[col] and abs(twist[row, col]) > TWIST_HERMITICITY_TOL:
                    raise InvalidInput("The twist must commute with the fiber action: J_ab = 0 where the weights differ.")

        z = complex(self.z)
        if abs(abs(z) - 1.0) > INTEGER_SNAP_TOL:
            raise InvalidInput(f"The group element must have unit modulus, got {z}.")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "action_convention", ActionConvention(self.action_convention))

        if int(self.j_max) < 1:
            raise InvalidInput(f"j_max must be at least 1, got {self.j_max}.")
        object.__setattr__(self, "j_max", int(self.j_max))
        profile_function(self.profile)
        return

    @classmethod
    def line_twist(cls, **kwargs) -> "CircleModel":
        """
            k = 1, J = 1, α(z) = z.
        """
        return cls(1, np.array([[1.0]]), (1,), **kwargs)

    @classmethod
    def split_twist(cls, **kwargs) -> "CircleModel":
        """
            k = 2, J = diag(1, −1), α(z) = diag(1, z).
        """
        return cls(2, np.diag([1.0, -1.0]), (0, 1), **kwargs)

    @property
    def gamma_id(self) -> str:
        return gamma_label(self.z)

    @property
    def is_identity(self) -> bool:
        return abs(self.z - 1.0) <= self.tolerances.char_cluster_tol

    def with_options(self, **changes) -> "CircleModel":
        values = dict(k=self.k, twist=self.twist, fiber_weights=self.fiber_weights, j_max=self.j_max, z=self.z,
                      action_convention=self.action_convention, profile=self.profile, tolerances=self.tolerances)
        values.update(changes)
        return CircleModel(**values)

    def fiber_phases(self) -> List[complex]:
        return [self.z ** w for w in self.fiber_weights]

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("model", "circle"),
            ("k", self.k),
            ("twist", [[complex_pair(v) for v in row] for row in self.twist]),
            ("fiber_weights", list(self.fiber_weights)),
            ("j_max", self.j_max),
            ("z", complex_pair(self.z)),
            ("action_convention", self.action_convention.value),
            ("profile", self.profile)
        ])
        return rtnval


def _sample_times(profile: str) -> np.ndarray:
    if profile == "linear":
        return np.array([0.0, 1.0])
    return np.linspace(0.0, 1.0, SMOOTHSTEP_SAMPLES)


def build_circle_family(model: CircleModel) -> ModeBlockFamily:
    """
        The mode blocks j·I + f(t)J for |j| ≤ j_max.  Mode j carries the base character z^j
        under the fiber-base convention and 1 under the fiber convention; on the fiber z acts
        by α(z).
    """
    profile = profile_function(model.profile)
    times = _sample_times(model.profile)
    eye = np.eye(model.k, dtype=np.complex128)
    fiber_action = SymmetryAction.from_diagonal(model.fiber_phases(), model.gamma_id)

    modes = []
    for label in range(-model.j_max, model.j_max + 1):
        blocks = [label * eye + profile(t) * model.twist for t in times]
        family = SampledFamily(times, blocks, gamma_id=model.gamma_id, tolerances=model.tolerances)

        base_character = 1.0
        if model.action_convention == ActionConvention.FIBER_BASE:
            base_character = model.z ** label

        modes.append(ModeBlock(label, family, base_character, fiber_action))

    return ModeBlockFamily(modes, gamma_id=model.gamma_id, truncation=model.j_max,
                           descriptor=model.as_dict(), tolerances=model.tolerances)


def joint_eigenvalues(model: CircleModel) -> List[Tuple[float, int]]:
    """
        The pairs (μ, w) of eigenvalues of J and weights of α on a joint eigenbasis.
    """
    pairs = []
    weights = np.array(model.fiber_weights)
    for weight in sorted(set(model.fiber_weights)):
        idx = np.nonzero(weights == weight)[0]
        sub = model.twist[np.ix_(idx, idx)]
        for mu in np.linalg.eigvalsh(sub):
            pairs.append((float(mu), weight))
    return pairs


def circle_spectrum(model: CircleModel, t: float, z: Optional[complex] = None) -> CharacterSpectrum:
    """
        The exact spectrum of A_t on the untruncated mode space: one progression {j + f(t)μ}
        per joint eigenvalue (μ, w), written as {j + a} with a ∈ (0, 1], plus the zero mode
        when f(t)μ is an integer.

        :param model: The circle model.
        :param t: The family parameter.
        :param z: Overrides the model's group element.
    """
    z = model.z if z is None else complex(z)
    fiber_base = model.action_convention == ActionConvention.FIBER_BASE
    profile = profile_function(model.profile)

    finite: List[SpectralPoint] = []
    progressions: List[Progression] = []

    for mu, weight in joint_eigenvalues(model):
        x = profile(float(t)) * mu
        if abs(x - round(x)) <= INTEGER_SNAP_TOL:
            x = float(round(x))

        shift = math.ceil(x) - 1
        offset = x - shift

        if fiber_base:
            weight_char = z ** (weight - shift)
            progressions.append(Progression(offset, weight_char, weight_char, z))
            kernel_char = z ** (weight - shift - 1)
        else:
            weight_char = z ** weight
            progressions.append(Progression(offset, weight_char, weight_char, 1.0))
            kernel_char = weight_char

        if offset == 1.0:
            finite.append(SpectralPoint(0.0, 1, kernel_char))

    gamma_id = gamma_label(z)
    return CharacterSpectrum(finite, progressions, gamma_id)


def circle_boundary_term(model: CircleModel, method: str = "auto") -> BoundaryTerm:
    """
        The boundary term 𝔟 of the circle model from the exact spectra of A_0 and A_1.
    """
    start = circle_spectrum(model, 0.0)
    end = circle_spectrum(model, 1.0)
    return boundary_term(start, end, method=method, tolerances=model.tolerances)


def connection_form(model: CircleModel, t: np.ndarray, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
        The components (ω_t, ω_x) of the connection d − i f(t) J dx on the grid t × x.
    """
    profile = profile_function(model.profile)
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    grid_t, _ = np.meshgrid(t, x, indexing="ij")
    omega_x = -1j * profile(grid_t)[..., None, None] * model.twist
    omega_t = np.zeros_like(omega_x)
    return omega_t, omega_x


def curvature_tx(model: CircleModel, t: np.ndarray, x: np.ndarray, step: float) -> np.ndarray:
    """
        F_tx = ∂_t ω_x − ∂_x ω_t + [ω_t, ω_x] with central differences of width 2·step.
    """
    _, omega_x_plus = connection_form(model, t + step, x)
    _, omega_x_minus = connection_form(model, t - step, x)
    omega_t_plus, _ = connection_form(model, t, x + step)
    omega_t_minus, _ = connection_form(model, t, x - step)
    omega_t, omega_x = connection_form(model, t, x)

    dt_omega_x = (omega_x_plus - omega_x_minus) / (2.0 * step)
    dx_omega_t = (omega_t_plus - omega_t_minus) / (2.0 * step)
    bracket = omega_t @ omega_x - omega_x @ omega_t

    return dt_omega_x - dx_omega_t + bracket


def interior_closed_form(model: CircleModel) -> complex:
    """
        (2πi)^(−1)∫ tr(−F) over [0, 1] × S¹, which is tr(J)(f(1) − f(0)).
    """
    profile = profile_function(model.profile)
    return complex(np.trace(model.twist)) * (profile(1.0) - profile(0.0))


def interior_quadrature(model: CircleModel, points: int = 64, step: float = 1e-5) -> complex:
    """
        (2πi)^(−1)∫ tr(−F_tx) dt dx by the midpoint rule on a points × points grid.
    """
    if int(points) < 1:
        raise InvalidInput("The quadrature needs at least one point per direction.")
    points = int(points)

    dt = 1.0 / points
    dx = 2.0 * math.pi / points
    t = (np.arange(points) + 0.5) * dt
    x = (np.arange(points) + 0.5) * dx

    curvature = curvature_tx(model, t, x, step)
    density = -np.trace(curvature, axis1=-2, axis2=-1)

    return complex(np.sum(density) * dt * dx / (2j * math.pi))


def rotation(theta: float) -> complex:
    """
        The circle element e^(iθ).
    """
    return cmath.exp(1j * float(theta))


def reference_flow(model: CircleModel) -> complex:
    """
        The spectral flow of the truncated family counted by hand.  The eigenvalue j + f(t)μ
        passes zero upward for the modes −μ ≤ j ≤ −1 when μ > 0 and downward for 0 ≤ j < |μ|
        when μ < 0, with the closed window [0, a] deciding the endpoints.
    """
    fiber_base = model.action_convention == ActionConvention.FIBER_BASE
    total = 0j
    for mu, weight in joint_eigenvalues(model):
        if mu > 0:
            labels, sign = range(-int(math.floor(mu + INTEGER_SNAP_TOL)), 0), 1
        else:
            labels, sign = range(0, int(math.ceil(-mu - INTEGER_SNAP_TOL))), -1
        for label in labels:
            if abs(label) <= model.j_max:
                total += sign * model.z ** (weight + (label if fiber_base else 0))
    return total
