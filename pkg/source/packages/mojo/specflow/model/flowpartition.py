"""
.. module:: flowpartition
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`FlowPartition` and :class:`SegmentCertificate` objects
               that record a certified subdivision of [0, 1] with spectral window radii.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Iterator, Tuple

import collections

from dataclasses import dataclass

from mojo.specflow.exceptions import InvalidPartition


@dataclass(frozen=True)
class SegmentCertificate:
    """
        The certificate of one segment: no eigenvalue enclosure on [t_start, t_end] comes
        closer than ``margin`` to the window edges ±``radius``.
    """

    t_start: float
    t_end: float
    radius: float
    margin: float
    top_window: bool = False # radius placed above every enclosure instead of inside a gap

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("t_start", self.t_start),
            ("t_end", self.t_end),
            ("radius", self.radius),
            ("margin", self.margin),
            ("top_window", self.top_window)
        ])
        return rtnval


@dataclass(frozen=True)
class FlowPartition:
    """
        Times 0 = t_0 < t_1 < ... < t_n = 1 with radii a_1, ..., a_n such that the spectral
        projection onto [−a_k, a_k] has constant rank on [t_(k−1), t_k].
    """

    times: Tuple[float, ...]
    radii: Tuple[float, ...]
    certificates: Tuple[SegmentCertificate, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "radii", tuple(float(a) for a in self.radii))
        object.__setattr__(self, "certificates", tuple(self.certificates))

        if len(self.times) < 2 or self.times[0] != 0.0 or self.times[-1] != 1.0:
            raise InvalidPartition(f"Partition times must run from 0 to 1, got {self.times[:1]}..{self.times[-1:]}.")
        if any(t1 <= t0 for t0, t1 in zip(self.times[:-1], self.times[1:])):
            raise InvalidPartition("Partition times must be strictly increasing.")
        if len(self.radii) != len(self.times) - 1 or len(self.certificates) != len(self.radii):
            raise InvalidPartition("A partition needs exactly one radius and one certificate per segment.")
        if any(not a > 0 for a in self.radii):
            raise InvalidPartition("Window radii must be positive.")
        return

    @property
    def min_margin(self) -> float:
        return min(cert.margin for cert in self.certificates)

    @property
    def segment_count(self) -> int:
        return len(self.radii)

    def segments(self) -> Iterator[Tuple[float, float, float]]:
        """
            Iterates the segments of the partition as ``(t_start, t_end, radius)`` tuples.
        """
        for idx, radius in enumerate(self.radii):
            yield self.times[idx], self.times[idx + 1], radius

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("segment_count", self.segment_count),
            ("min_margin", self.min_margin),
            ("times", list(self.times)),
            ("radii", list(self.radii)),
            ("top_windows", sum(1 for c in self.certificates if c.top_window))
        ])
        return rtnval
