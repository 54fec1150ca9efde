"""
.. module:: bergermodel
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the Dirac eigenvalue curves of the Berger spheres (S³, g_λ) with
               SU(2) characters and the location of their zero crossings.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Tuple

import cmath
import collections
import math

from dataclasses import dataclass, field

import numpy as np

from mojo.specflow.exceptions import InvalidInput
from mojo.specflow.families.curvefamily import CurveFamily, make_curve
from mojo.specflow.families.partitioning import Crossing, zero_crossings
from mojo.specflow.linalg.symmetry import IDENTITY_GAMMA_ID
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

NO_CROSSING_BOUND = 4.0 * math.sqrt(2.0)


def chi_n(n: int, theta: float) -> float:
    """
        The character sin(nθ)/sin(θ) of the n dimensional irreducible representation of SU(2),
        evaluated as the sum of its weights so that θ → 0 gives n.
    """
    if int(n) < 1:
        raise InvalidInput(f"Representation dimensions start at 1, got {n}.")
    exponents = np.arange(int(n) - 1, -int(n), -2, dtype=np.float64)
    return float(np.sum(np.cos(exponents * float(theta))))


def weights(n: int, theta: float) -> List[complex]:
    """
        The weights e^(i(n−1−2m)θ), m = 0 .. n−1, of the n dimensional representation.
    """
    return [cmath.exp(1j * (n - 1 - 2 * m) * float(theta)) for m in range(n)]


@dataclass(frozen=True)
class BergerModel:
    """
        The Berger metrics g_λ on S³ for λ(t) = λ_lo + t(λ_hi − λ_lo) with the SU(2) element of
        rotation angle θ.

        :param n_max: The largest representation dimension kept.
        :param lambda_lo: The smallest metric parameter, positive.
        :param lambda_hi: The largest metric parameter, below 4√2.
        :param theta: The rotation angle of γ.
    """

    n_max: int = 12
    lambda_lo: float = 1.0
    lambda_hi: float = 5.0
    theta: float = 0.0
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, compare=False)

    def __post_init__(self):
        if int(self.n_max) < 1:
            raise InvalidInput(f"n_max must be at least 1, got {self.n_max}.")
        if not (0.0 < self.lambda_lo < self.lambda_hi < NO_CROSSING_BOUND):
            errmsg = f"Need 0 < λ_lo < λ_hi < 4√2, got [{self.lambda_lo}, {self.lambda_hi}]."
            raise InvalidInput(errmsg)
        object.__setattr__(self, "n_max", int(self.n_max))
        object.__setattr__(self, "lambda_lo", float(self.lambda_lo))
        object.__setattr__(self, "lambda_hi", float(self.lambda_hi))
        object.__setattr__(self, "theta", float(self.theta))
        return

    @property
    def gamma_id(self) -> str:
        if self.theta == 0.0:
            return IDENTITY_GAMMA_ID
        return f"theta={self.theta:.12g}"

    @property
    def span(self) -> float:
        return self.lambda_hi - self.lambda_lo

    def lambda_at(self, t):
        return self.lambda_lo + np.asarray(t, dtype=np.float64) * self.span

    def with_options(self, **changes) -> "BergerModel":
        values = dict(n_max=self.n_max, lambda_lo=self.lambda_lo, lambda_hi=self.lambda_hi,
                      theta=self.theta, tolerances=self.tolerances)
        values.update(changes)
        return BergerModel(**values)

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("model", "berger"),
            ("n_max", self.n_max),
            ("lambda_range", [self.lambda_lo, self.lambda_hi]),
            ("theta", self.theta)
        ])
        return rtnval


def _scalar_or_array(values: np.ndarray):
    return values if values.ndim else float(values)


def fiber_eigenvalue(lam, n: int):
    """
        λ/2 + n/λ, the eigenvalue of multiplicity 2 in the n dimensional representation.
    """
    lam = np.asarray(lam, dtype=np.float64)
    return _scalar_or_array(0.5 * lam + n / lam)


def mixed_eigenvalue(lam, n: int, p: int, sign: int):
    """
        λ/2 ± √(4p(n−p) + ((2p−n)/λ)²) for 0 < p < n.
    """
    lam = np.asarray(lam, dtype=np.float64)
    root = np.sqrt(4.0 * p * (n - p) + ((2 * p - n) / lam) ** 2)
    return _scalar_or_array(0.5 * lam + sign * root)


def build_berger_family(model: BergerModel) -> CurveFamily:
    """
        One curve per eigenvalue branch and weight of R_n, for n ≤ n_max.  The branch
        λ/2 + n/λ has multiplicity 2 per weight, each square root branch multiplicity 1.
    """
    curves = []
    lip_scale = model.span

    for n in range(1, model.n_max + 1):
        chars = weights(n, model.theta)

        def fiber_branch(t, n=n):
            return fiber_eigenvalue(model.lambda_at(t), n)

        lip = lip_scale * (0.5 + n / model.lambda_lo ** 2)
        for m, char in enumerate(chars):
            curves.append(make_curve(f"n={n},m={m},0", fiber_branch, 2, char, lip))

        for p in range(1, n):
            lip = lip_scale * (0.5 + abs(2 * p - n) / model.lambda_lo ** 2)
            for sign, tag in ((1, "+"), (-1, "-")):

                def mixed_branch(t, n=n, p=p, sign=sign):
                    return mixed_eigenvalue(model.lambda_at(t), n, p, sign)

                for m, char in enumerate(chars):
                    curves.append(make_curve(f"n={n},p={p},m={m},{tag}", mixed_branch, 1, char, lip))

    return CurveFamily(curves, gamma_id=model.gamma_id, descriptor=model.as_dict(), tolerances=model.tolerances)


def berger_crossings(model: BergerModel) -> List[Tuple[Crossing, float]]:
    """
        The zero crossings of the Berger family with the metric parameter λ at which they occur.
    """
    family = build_berger_family(model)
    rtnval = [(crossing, float(model.lambda_at(crossing.t))) for crossing in zero_crossings(family)]
    return rtnval
