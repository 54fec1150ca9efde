"""
.. module:: etainvariant
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing equivariant eta invariants of spectra given as finite parts plus
               arithmetic progressions with characters, an Abel summation oracle and the
               boundary term assembly.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Optional, Sequence, Tuple

import collections
import logging
import math

from dataclasses import dataclass, field

import mpmath
import numpy as np

from mojo.specflow.exceptions import InvalidInput, NoConvergence, SchemaError, UseNumericOracle
from mojo.specflow.linalg.symmetry import IDENTITY_GAMMA_ID
from mojo.specflow.model.boundaryterm import BoundaryTerm
from mojo.specflow.model.equivariantvalue import EquivariantValue, complex_pair
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances, parallel_map

logger = logging.getLogger(__name__)

DEFAULT_ABEL_LEVELS = tuple(range(4, 13))
UNIT_TOL = 1e-12
KERNEL_TOL = 1e-12


@dataclass(frozen=True)
class SpectralPoint:
    """
        An eigenvalue of the finite part with its multiplicity and character.  Eigenvalue 0 is
        kernel data and never enters a signed eta sum.
    """

    eigenvalue: float
    multiplicity: int = 1
    character: complex = 1.0

    @property
    def is_kernel(self) -> bool:
        return abs(self.eigenvalue) <= KERNEL_TOL

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("eigenvalue", self.eigenvalue),
            ("multiplicity", self.multiplicity),
            ("character", complex_pair(self.character))
        ])
        return rtnval


@dataclass(frozen=True)
class Progression:
    """
        The two sided progression {scale·(j + a) : j ∈ ℤ, j + a ≠ 0} with offset a ∈ (0, 1].
        The point j + a carries the character w₊·q^j for j ≥ 0 and w₋·q^j for j < 0; a = 1
        describes ℤ∖{0} with the zero mode left to the finite part.
    """

    offset: float
    weight_plus: complex = 1.0
    weight_minus: complex = 1.0
    ratio: complex = 1.0
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "weight_plus", complex(self.weight_plus))
        object.__setattr__(self, "weight_minus", complex(self.weight_minus))
        object.__setattr__(self, "ratio", complex(self.ratio))
        object.__setattr__(self, "scale", float(self.scale))

        if not (0.0 < self.offset <= 1.0):
            raise InvalidInput(f"Progression offset must lie in (0, 1], got {self.offset}.")
        if abs(abs(self.ratio) - 1.0) > UNIT_TOL:
            raise InvalidInput(f"Progression ratio must have unit modulus, got {self.ratio}.")
        if not self.scale > 0:
            raise InvalidInput(f"Progression scale must be positive, got {self.scale}.")
        return

    @property
    def has_unit_ratio(self) -> bool:
        return abs(self.ratio - 1.0) <= UNIT_TOL

    @property
    def negative_offset(self) -> float:
        """
            The smallest |j + a| over j < 0 with j + a ≠ 0, in units of the scale.
        """
        return 1.0 - self.offset if self.offset < 1.0 else 1.0

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("offset", self.offset),
            ("weight_plus", complex_pair(self.weight_plus)),
            ("weight_minus", complex_pair(self.weight_minus)),
            ("ratio", complex_pair(self.ratio)),
            ("scale", self.scale)
        ])
        return rtnval


@dataclass(frozen=True)
class CharacterSpectrum:
    """
        A spectrum with characters: a finite part plus finitely many progressions.
    """

    finite_part: Tuple[SpectralPoint, ...] = field(default=())
    progressions: Tuple[Progression, ...] = field(default=())
    gamma_id: str = IDENTITY_GAMMA_ID

    def __post_init__(self):
        object.__setattr__(self, "finite_part", tuple(self.finite_part))
        object.__setattr__(self, "progressions", tuple(self.progressions))
        return

    def kernel_trace(self) -> EquivariantValue:
        """
            tr(γ|ker A), the sum of the characters of the zero entries of the finite part.
        """
        value = sum((p.multiplicity * p.character for p in self.finite_part if p.is_kernel), 0j)
        return _equivariant(value, self.gamma_id, self.is_identity)

    @property
    def is_identity(self) -> bool:
        chars = [p.character for p in self.finite_part]
        for prog in self.progressions:
            chars.extend([prog.weight_plus, prog.weight_minus, prog.ratio])
        return all(abs(c - 1.0) <= UNIT_TOL for c in chars)

    def scaled(self, factor: float) -> "CharacterSpectrum":
        """
            The spectrum of c·A for c > 0.
        """
        if not factor > 0:
            raise InvalidInput(f"Scale factor must be positive, got {factor}.")
        finite = [SpectralPoint(factor * p.eigenvalue, p.multiplicity, p.character) for p in self.finite_part]
        progs = [Progression(p.offset, p.weight_plus, p.weight_minus, p.ratio, factor * p.scale) for p in self.progressions]
        return CharacterSpectrum(finite, progs, self.gamma_id)

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("gamma", self.gamma_id),
            ("finite_part", [p.as_dict() for p in self.finite_part]),
            ("progressions", [p.as_dict() for p in self.progressions])
        ])
        return rtnval


@dataclass(frozen=True)
class EtaEstimate:
    """
        An Abel oracle evaluation with the extrapolation residual used as its error estimate.
    """

    value: EquivariantValue
    residual: float
    levels: Tuple[int, ...]
    radii: Tuple[float, ...] = ()

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("eta", self.value.as_dict()),
            ("residual", self.residual),
            ("levels", list(self.levels))
        ])
        if self.radii:
            rtnval["radii"] = list(self.radii)
        return rtnval


def _equivariant(value: complex, gamma_id: str, is_identity: bool) -> EquivariantValue:
    if is_identity:
        rounded = round(complex(value).real)
        if abs(complex(value) - rounded) < 1e-9:
            return EquivariantValue(value, gamma_id, int(rounded))
    return EquivariantValue(value, gamma_id)


def _finite_signed_sum(spectrum: CharacterSpectrum) -> complex:
    total = 0j
    for point in spectrum.finite_part:
        if not point.is_kernel:
            total += math.copysign(1.0, point.eigenvalue) * point.multiplicity * point.character
    return total


def eta_closed_form(spectrum: CharacterSpectrum) -> EquivariantValue:
    """
        η_γ(A) from the Hurwitz zeta continuation ζ_H(0, a) = ½ − a.  A progression with unit
        ratio contributes w₊·(½ − a) − w₋·(½ − b), b being the smallest |j + a| over j < 0.

        :raises UseNumericOracle: For progressions with a non trivial character ratio.
    """
    total = _finite_signed_sum(spectrum)

    for prog in spectrum.progressions:
        if not prog.has_unit_ratio:
            raise UseNumericOracle(f"No closed form for a progression with character ratio {prog.ratio}.")
        total += prog.weight_plus * (0.5 - prog.offset) - prog.weight_minus * (0.5 - prog.negative_offset)

    return EquivariantValue(total, spectrum.gamma_id)


def eta_lerch_form(spectrum: CharacterSpectrum) -> EquivariantValue:
    """
        η_γ(A) for spectra whose progressions all have a non trivial ratio q, using the value
        1/(1 − q) of the Lerch transcendent at s = 0.

        :raises InvalidInput: When a progression has unit ratio.
    """
    total = _finite_signed_sum(spectrum)

    for prog in spectrum.progressions:
        if prog.has_unit_ratio:
            raise InvalidInput("The Lerch evaluation needs progressions with a non trivial ratio.")
        qbar = prog.ratio.conjugate()
        first_negative = 1 if prog.offset < 1.0 else 2
        total += prog.weight_plus / (1.0 - prog.ratio)
        total -= prog.weight_minus * qbar ** first_negative / (1.0 - qbar)

    return EquivariantValue(total, spectrum.gamma_id)


def eta_function(spectrum: CharacterSpectrum, s: float) -> EquivariantValue:
    """
        η_γ(s, A) = Σ sign(λ)|λ|^(−s) tr(γ|E_λ) continued through the Hurwitz zeta function.

        :raises UseNumericOracle: For progressions with a non trivial character ratio.
    """
    s = float(s)
    if s == 1.0:
        raise InvalidInput("The eta function has a pole at s = 1.")

    total = 0j
    for point in spectrum.finite_part:
        if not point.is_kernel:
            total += math.copysign(1.0, point.eigenvalue) * point.multiplicity * point.character * abs(point.eigenvalue) ** (-s)

    for prog in spectrum.progressions:
        if not prog.has_unit_ratio:
            raise UseNumericOracle(f"No continuation for a progression with character ratio {prog.ratio}.")
        positive = complex(mpmath.zeta(s, prog.offset))
        negative = complex(mpmath.zeta(s, prog.negative_offset))
        total += prog.scale ** (-s) * (prog.weight_plus * positive - prog.weight_minus * negative)

    return EquivariantValue(total, spectrum.gamma_id)


def _branch_terms(radius: float, tail_tol: float) -> int:
    """
        The number of terms after which the geometric tail Σ r^k is below the tail tolerance.
    """
    return int(math.ceil(math.log(tail_tol * (1.0 - radius)) / math.log(radius))) + 1


def abel_sum(spectrum: CharacterSpectrum, radius: float, tail_tol: float) -> complex:
    """
        Σ sign(λ)·χ_λ·r^|λ| truncated where the remaining tail is below ``tail_tol``.
    """
    total = 0j
    for point in spectrum.finite_part:
        if not point.is_kernel:
            total += math.copysign(1.0, point.eigenvalue) * point.multiplicity * point.character * radius ** abs(point.eigenvalue)

    for prog in spectrum.progressions:
        rscaled = radius ** prog.scale
        count = _branch_terms(rscaled, tail_tol)
        steps = np.arange(count, dtype=np.float64)
        phases = prog.ratio ** np.arange(count)

        positive = np.sum(phases * rscaled ** (steps + prog.offset))
        first_negative = 1 if prog.offset < 1.0 else 2
        negative_steps = steps + first_negative
        negative = np.sum(np.conj(prog.ratio) ** negative_steps * rscaled ** (negative_steps - prog.offset))

        total += prog.weight_plus * complex(positive) - prog.weight_minus * complex(negative)

    return total


def _extrapolate_radii(spectrum: CharacterSpectrum, r_sequence: Sequence[float], tolerances: Tolerances) -> EtaEstimate:
    radii = tuple(float(r) for r in r_sequence)
    if len(radii) < 3 or any(not 0.0 < r < 1.0 for r in radii) or any(b <= a for a, b in zip(radii[:-1], radii[1:])):
        raise InvalidInput("The Abel oracle needs at least three increasing radii in (0, 1).")

    deltas = np.array([-math.log(r) for r in radii])
    sums = np.array(parallel_map(lambda r: abel_sum(spectrum, r, tolerances.eta_tail_tol), radii), dtype=np.complex128)

    def constant_term(first: int) -> complex:
        scaled = deltas[first:] / deltas[first]
        exponents = np.arange(-1, len(scaled) - 1)
        system = scaled[:, None] ** exponents[None, :]
        coeffs = np.linalg.solve(system, sums[first:])
        return complex(coeffs[1])

    estimate = constant_term(0)
    residual = abs(estimate - constant_term(1))

    if residual > tolerances.eta_residual_tol:
        raise NoConvergence(f"Abel extrapolation residual {residual:.3e} exceeds {tolerances.eta_residual_tol:.1e}.")

    return EtaEstimate(EquivariantValue(estimate, spectrum.gamma_id), residual, (), radii)


def eta_abel_oracle(spectrum: CharacterSpectrum, levels: Sequence[int] = DEFAULT_ABEL_LEVELS,
                    tolerances: Tolerances = DEFAULT_TOLERANCES, r_sequence: Optional[Sequence[float]] = None) -> EtaEstimate:
    """
        Evaluates the Abel sums at r = exp(−δ), δ = 2^(−k), for the given levels and extrapolates
        to r → 1 with a Richardson tableau in δ.  The sums behave like c₋₁/δ + η + c₁δ + ...,
        so the first elimination removes the pole and the following ones the powers of δ.


        An explicit increasing ``r_sequence`` replaces the levels.  Its sums are fitted by the same
        expansion in δ = −ln r, solved as one linear system, and the residual compares the fit with
        the one that drops the coarsest radius.

        :raises NoConvergence: When the extrapolation residual exceeds eta_residual_tol.
    """
    if r_sequence is not None:
        return _extrapolate_radii(spectrum, r_sequence, tolerances)

    levels = tuple(int(k) for k in levels)
    if len(levels) < 3 or any(b != a + 1 for a, b in zip(levels[:-1], levels[1:])):
        raise InvalidInput("The Abel oracle needs at least three consecutive levels.")

    sums = parallel_map(lambda k: abel_sum(spectrum, math.exp(-2.0 ** (-k)), tolerances.eta_tail_tol), levels)

    exponents = [-1] + list(range(1, len(levels) - 1))
    previous_row = list(sums)
    diagonal = [previous_row[-1]]
    for exponent in exponents:
        factor = 2.0 ** exponent
        row = [
            (factor * previous_row[idx + 1] - previous_row[idx]) / (factor - 1.0)
            for idx in range(len(previous_row) - 1)
        ]
        diagonal.append(row[-1])
        previous_row = row

    estimate = diagonal[-1]
    residual = abs(diagonal[-1] - diagonal[-2])

    if residual > tolerances.eta_residual_tol:
        raise NoConvergence(f"Abel extrapolation residual {residual:.3e} exceeds {tolerances.eta_residual_tol:.1e}.")

    logger.debug("abel oracle eta=%s residual=%.3e", estimate, residual)

    return EtaEstimate(EquivariantValue(estimate, spectrum.gamma_id), residual, levels)


def eta_value(spectrum: CharacterSpectrum, method: str = "auto",
              tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[EquivariantValue, str]:
    """
        Evaluates η_γ with the requested method.  ``auto`` uses the closed form when every
        progression has unit ratio, the Lerch form when none has, and the oracle otherwise.

        :returns: The value and the name of the method used.
    """
    if method not in ("auto", "closed", "lerch", "oracle"):
        raise InvalidInput(f"Unknown eta method '{method}'.")

    if method == "auto":
        unit = [p.has_unit_ratio for p in spectrum.progressions]
        if all(unit):
            method = "closed"
        elif not any(unit):
            method = "lerch"
        else:
            method = "oracle"

    if method == "closed":
        value = eta_closed_form(spectrum)
    elif method == "lerch":
        value = eta_lerch_form(spectrum)
    else:
        value = eta_abel_oracle(spectrum, tolerances=tolerances).value

    return value, method


def boundary_term(start: CharacterSpectrum, end: CharacterSpectrum, method: str = "auto",
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundaryTerm:
    """
        𝔟 = −½(tr(γ|ker A(0)) + tr(γ|ker A(1)) + η_γ(A(0)) − η_γ(A(1))).

        :param start: The spectrum of A(0).
        :param end: The spectrum of A(1).
        :param method: The eta evaluation method, see :func:`eta_value`.
    """
    ker0 = start.kernel_trace()
    ker1 = end.kernel_trace()
    eta0, method0 = eta_value(start, method, tolerances)
    eta1, method1 = eta_value(end, method, tolerances)

    value = -0.5 * (ker0.value + ker1.value + eta0.value - eta1.value)
    is_identity = start.is_identity and end.is_identity
    b_value = _equivariant(value, start.gamma_id, is_identity)

    used = method0 if method0 == method1 else f"{method0}/{method1}"
    return BoundaryTerm(b_value, ker0, ker1, eta0, eta1, used)


def symmetric_spectrum(values: Sequence[float], characters: Optional[Sequence[complex]] = None,
                       gamma_id: str = IDENTITY_GAMMA_ID) -> CharacterSpectrum:
    """
        The finite spectrum {±λ} with the same character χ at λ and at −λ.  Its eta invariant
        vanishes.
    """
    if characters is None:
        characters = [1.0] * len(values)
    points: List[SpectralPoint] = []
    for value, char in zip(values, characters):
        points.append(SpectralPoint(float(value), 1, complex(char)))
        points.append(SpectralPoint(-float(value), 1, complex(char)))
    return CharacterSpectrum(points, (), gamma_id)


def _complex_field(entry: dict, key: str, default: complex = 1.0) -> complex:
    value = entry.get(key, None)
    if value is None:
        return complex(default)
    if isinstance(value, (int, float)):
        return complex(value, 0.0)
    if isinstance(value, list) and len(value) == 2:
        return complex(value[0], value[1])
    raise SchemaError(f"'{key}' must be a number or an [re, im] pair, got {value!r}.")


def spectrum_from_dict(document: dict, gamma_id: str = IDENTITY_GAMMA_ID) -> CharacterSpectrum:
    """
        Reads a spectrum written as ``{"finite_part": [...], "progressions": [...]}`` with
        characters as ``[re, im]`` pairs.

        :raises SchemaError: For malformed documents.
    """
    if not isinstance(document, dict):
        raise SchemaError("A spectrum document must be a JSON object.")

    try:
        finite = [
            SpectralPoint(float(entry["eigenvalue"]), int(entry.get("multiplicity", 1)), _complex_field(entry, "character"))
            for entry in document.get("finite_part", [])
        ]
        progressions = [
            Progression(float(entry["offset"]), _complex_field(entry, "weight_plus"), _complex_field(entry, "weight_minus"),
                        _complex_field(entry, "ratio"), float(entry.get("scale", 1.0)))
            for entry in document.get("progressions", [])
        ]
    except (KeyError, TypeError, ValueError) as xcpt:
        raise SchemaError(f"Malformed spectrum document: {xcpt!r}") from None

    return CharacterSpectrum(finite, progressions, document.get("gamma", gamma_id))
