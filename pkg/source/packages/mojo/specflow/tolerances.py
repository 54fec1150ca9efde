"""
.. module:: tolerances
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`Tolerances` dataclass used to contain and pass
               the numerical tolerances of a computation.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Callable, Iterable, List

import collections
import dataclasses
import os

from concurrent.futures import ThreadPoolExecutor

from dataclasses import dataclass

from mojo.specflow.exceptions import InvalidInput

ENV_SPECFLOW_THREADS = "SPECFLOW_THREADS"


@dataclass(frozen=True)
class Tolerances:

    hermiticity_tol: float = 1e-12 # max-norm defect allowed for M - M*
    eig_tol: float = 1e-12 # relative residual allowed for eigenpairs
    rank_tol: float = 1e-8 # relative singular value threshold for rank decisions
    rank_gap_ratio: float = 1e3 # separation required around a rank threshold
    zero_noise_tol: float = 1e-11 # relative magnitude under which a sampled eigenvalue is an exact zero
    prop_tol: float = 1e-12 # unitarity defect allowed for propagators
    char_cluster_tol: float = 1e-8 # distance under which symmetry eigenvalues are one character
    char_noise_tol: float = 1e-10 # spread above which a character cluster is ambiguous
    commute_tol: float = 1e-10 # relative commutator norm for equivariance
    inv_tol: float = 1e-8 # invariance defect allowed for traced subspaces
    trace_agreement_tol: float = 1e-8 # agreement of the two equivariant trace evaluations
    identity_tol: float = 1e-9 # agreement of the cross-asserted identities
    margin_min: float = 1e-6 # minimum distance of window edges to the spectrum
    lip_slack: float = 0.05 # slack on sampled-family Lipschitz bounds
    max_segments: int = 2 ** 20 # refinement budget for flow partitions
    top_window_width: float = 2.0 ** -6 # segment width below which the top window may be used
    eta_residual_tol: float = 1e-5 # extrapolation residual allowed for the Abel oracle
    eta_tail_tol: float = 1e-10 # truncation tail allowed for the Abel oracle

    def __post_init__(self):
        for field in dataclasses.fields(self):
            val = getattr(self, field.name)
            if not val > 0:
                raise InvalidInput(f"Tolerance '{field.name}' must be positive, got {val!r}.")
        return

    def with_overrides(self, **overrides) -> "Tolerances":
        """
            Returns a copy of the tolerances with the specified fields replaced.

            :param overrides: Field names and their new positive values.
        """
        known = {f.name: f.type for f in dataclasses.fields(self)}
        for name in overrides:
            if name not in known:
                raise InvalidInput(f"Unknown tolerance '{name}'.")
        return dataclasses.replace(self, **overrides)

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict()
        for field in dataclasses.fields(self):
            rtnval[field.name] = getattr(self, field.name)
        return rtnval


DEFAULT_TOLERANCES = Tolerances()


def worker_count() -> int:
    """
        Returns the number of workers allowed for independent sub-computations, taken from
        the ``SPECFLOW_THREADS`` environment variable.
    """
    count = 1

    if ENV_SPECFLOW_THREADS in os.environ:
        try:
            count = int(os.environ[ENV_SPECFLOW_THREADS])
        except ValueError:
            raise InvalidInput(f"{ENV_SPECFLOW_THREADS} must be an integer.") from None

    return max(1, count)


def parallel_map(func: Callable, items: Iterable) -> List:
    """
        Maps a function over independent items with at most :func:`worker_count` threads.  The
        results are returned in the order of the items regardless of the schedule.
    """
    items = list(items)
    workers = min(worker_count(), len(items))

    if workers <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rtnval = list(pool.map(func, items))

    return rtnval
