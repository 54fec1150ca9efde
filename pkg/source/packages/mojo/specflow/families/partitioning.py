"""
.. module:: partitioning
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the construction and verification of certified flow partitions
               and the isolation of zero crossings of curve families.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import List, Optional, Tuple, Union

import collections
import logging

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from mojo.specflow.exceptions import InvalidInput, InvalidPartition, PartitionFailure
from mojo.specflow.families.curvefamily import CurveFamily
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.model.equivariantvalue import complex_pair
from mojo.specflow.model.flowpartition import FlowPartition, SegmentCertificate
from mojo.specflow.tolerances import Tolerances

logger = logging.getLogger(__name__)

CROSSING_GRID_POINTS = 1025
CROSSING_XTOL = 1e-12


def segment_enclosures(family: Union[SampledFamily, CurveFamily], t_start: float, t_end: float) -> Tuple[np.ndarray, np.ndarray]:
    """
        Encloses the range of every branch on [t_start, t_end] and folds it to |λ|.

        A branch with values f_lo, f_hi at the segment ends and Lipschitz constant L stays in
        [(f_lo + f_hi − L·w) / 2, (f_lo + f_hi + L·w) / 2] where w is the segment width.

        :returns: The lower and upper ends of the folded enclosures.
    """
    f_lo = family.branch_values(t_start)
    f_hi = family.branch_values(t_end)
    lip = family.segment_lipschitz(t_start, t_end)

    half = 0.5 * np.asarray(lip, dtype=np.float64) * (t_end - t_start)
    mid = 0.5 * (f_lo + f_hi)
    lower = mid - half
    upper = mid + half

    folded_lo = np.where(lower >= 0.0, lower, np.where(upper <= 0.0, -upper, 0.0))
    folded_hi = np.maximum(np.abs(lower), np.abs(upper))

    return folded_lo, folded_hi


def choose_window(folded_lo: np.ndarray, folded_hi: np.ndarray, margin_min: float,
                  allow_top: bool) -> Optional[Tuple[float, float, bool]]:
    """
        Picks the window radius for a segment: the midpoint of the widest gap between the folded
        enclosures (the lowest gap wins ties), or the top window above every enclosure.

        :returns: ``(radius, margin, top_window)`` or None when the segment must be refined.
    """
    order = np.argsort(folded_lo, kind="stable")
    lows = folded_lo[order]
    highs = folded_hi[order]

    reach = np.concatenate(([0.0], np.maximum.accumulate(highs)[:-1]))
    gap_idx = np.nonzero(lows > reach)[0]

    best = None
    for idx in gap_idx.tolist():
        half_width = 0.5 * (lows[idx] - reach[idx])
        if half_width >= margin_min and (best is None or half_width > best[1]):
            best = (reach[idx] + half_width, half_width, False)

    if best is None and allow_top:
        top = float(highs.max()) if highs.size else 0.0
        margin = max(1.0, top)
        best = (top + margin, margin, True)

    return best


def window_margin(folded_lo: np.ndarray, folded_hi: np.ndarray, radius: float) -> float:
    """
        The distance from the window edge to the nearest folded enclosure, negative when the
        edge lies inside an enclosure.
    """
    inside = (folded_lo <= radius) & (radius <= folded_hi)
    if np.any(inside):
        return -1.0
    return float(np.min(np.minimum(np.abs(folded_lo - radius), np.abs(folded_hi - radius))))


def build_flow_partition(family: Union[SampledFamily, CurveFamily], tolerances: Optional[Tolerances] = None,
                         initial_segments: int = 1) -> FlowPartition:
    """
        Builds a certified flow partition by canonical left-to-right bisection of [0, 1].

        :param family: A sampled or curve family.
        :param tolerances: Overrides the family's tolerances.
        :param initial_segments: Number of uniform segments the bisection starts from; different
                                 values give independently generated admissible partitions.

        :raises PartitionFailure: When certification needs more than max_segments segments.
    """
    if not isinstance(family, (SampledFamily, CurveFamily)):
        raise InvalidInput(f"Flow partitions are built for sampled or curve families, not '{family.kind}'.")

    tols = tolerances if tolerances is not None else family.tolerances
    max_segments = int(tols.max_segments)

    if int(initial_segments) < 1:
        raise InvalidInput("initial_segments must be at least 1.")
    edges = np.linspace(0.0, 1.0, int(initial_segments) + 1)
    edges[0], edges[-1] = 0.0, 1.0

    pending = [(float(lo), float(hi)) for lo, hi in zip(edges[:-1], edges[1:])]
    pending.reverse()

    certificates = []
    depth = 0

    while pending:
        if len(certificates) + len(pending) > max_segments:
            raise PartitionFailure(f"Flow partition needs more than {max_segments} segments.")

        lo, hi = pending.pop()
        folded_lo, folded_hi = segment_enclosures(family, lo, hi)
        if not (np.all(np.isfinite(folded_lo)) and np.all(np.isfinite(folded_hi))):
            raise InvalidInput(f"Family is not finite on [{lo}, {hi}].")

        window = choose_window(folded_lo, folded_hi, tols.margin_min, allow_top=(hi - lo) < tols.top_window_width)
        if window is None:
            mid = 0.5 * (lo + hi)
            pending.append((mid, hi))
            pending.append((lo, mid))
            depth = max(depth, int(round(-np.log2(hi - lo))) + 1)
            continue

        radius, margin, top_window = window
        certificates.append(SegmentCertificate(lo, hi, radius, margin, top_window))

    times = [certificates[0].t_start] + [c.t_end for c in certificates]
    partition = FlowPartition(times, [c.radius for c in certificates], certificates)

    logger.debug("flow partition with %d segments (refinement depth %d, min margin %.3e)",
                 partition.segment_count, depth, partition.min_margin)

    return partition


def verify_partition(family: Union[SampledFamily, CurveFamily], partition: FlowPartition,
                     tolerances: Optional[Tolerances] = None):
    """
        Re-certifies a partition against a family.

        :raises InvalidPartition: When a window edge comes closer than margin_min to an enclosure.
    """
    tols = tolerances if tolerances is not None else family.tolerances

    for idx, (lo, hi, radius) in enumerate(partition.segments()):
        folded_lo, folded_hi = segment_enclosures(family, lo, hi)
        margin = window_margin(folded_lo, folded_hi, radius)
        if margin < tols.margin_min:
            errmsg = f"Segment {idx} [{lo}, {hi}] with radius {radius} is not certified for this family (margin={margin:.3e})."
            raise InvalidPartition(errmsg)

    return


@dataclass(frozen=True)
class Crossing:
    """
        A zero of one eigenvalue curve.
    """

    curve: str
    t: float
    direction: int # +1 upward, −1 downward, 0 touching
    multiplicity: int
    character: complex

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("curve", self.curve),
            ("t", self.t),
            ("direction", self.direction),
            ("multiplicity", self.multiplicity),
            ("character", complex_pair(self.character))
        ])
        return rtnval


def zero_crossings(family: CurveFamily, grid_points: int = CROSSING_GRID_POINTS) -> List[Crossing]:
    """
        Isolates every sign change of every curve on a uniform grid with Brent's method to
        width 1e-12.  Zeros that fall exactly on grid points are reported as they are.
    """
    grid = np.linspace(0.0, 1.0, grid_points)
    crossings = []

    for curve in family.curves:
        values = np.asarray(curve(grid), dtype=np.float64)

        for idx in range(grid_points):
            val = values[idx]
            if val == 0.0:
                before = values[idx - 1] if idx > 0 else 0.0
                after = values[idx + 1] if idx + 1 < grid_points else 0.0
                direction = int(np.sign(after - before))
                crossings.append(Crossing(curve.name, float(grid[idx]), direction, curve.multiplicity, curve.character))
                continue
            if idx + 1 < grid_points:
                nxt = values[idx + 1]
                if nxt != 0.0 and (val < 0.0) != (nxt < 0.0):
                    root = scipy.optimize.brentq(lambda t, f=curve.func: float(f(t)), grid[idx], grid[idx + 1], xtol=CROSSING_XTOL)
                    direction = 1 if nxt > val else -1
                    crossings.append(Crossing(curve.name, float(root), direction, curve.multiplicity, curve.character))

    crossings.sort(key=lambda c: (c.t, c.curve))

    return crossings
