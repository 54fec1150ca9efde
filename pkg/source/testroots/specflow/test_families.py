
import json

import numpy as np
import pytest

from mojo.specflow.exceptions import InvalidInput, InvalidPartition, PartitionFailure, SchemaError
from mojo.specflow.families.curvefamily import CurveFamily, make_curve
from mojo.specflow.families.familyjson import dumps_family, family_from_dict, family_to_dict, loads_family
from mojo.specflow.families.modeblockfamily import ModeBlock, ModeBlockFamily, truncate_modes
from mojo.specflow.families.operatorfamily import spectrum_at
from mojo.specflow.families.partitioning import build_flow_partition, verify_partition, zero_crossings
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.geometry.bergermodel import BergerModel, build_berger_family
from mojo.specflow.geometry.circlemodel import CircleModel, build_circle_family
from mojo.specflow.linalg.symmetry import SymmetryAction
from mojo.specflow.model.flowpartition import FlowPartition
from mojo.specflow.randomfamilies import random_instance
from mojo.specflow.tolerances import DEFAULT_TOLERANCES

TOL = 1e-12


def scalar_family(start: float, end: float) -> SampledFamily:
    return SampledFamily([0.0, 1.0], [np.array([[start]]), np.array([[end]])])


def test_sampled_family_validates_times():
    block = np.eye(2)
    with pytest.raises(InvalidInput):
        SampledFamily([0.0, 0.5], [block, block])
    with pytest.raises(InvalidInput):
        SampledFamily([0.0, 0.5, 0.5, 1.0], [block] * 4)
    with pytest.raises(InvalidInput):
        SampledFamily([0.0, 1.0], [block, np.eye(3)])


def test_sampled_family_lipschitz_bound_checked():
    with pytest.raises(InvalidInput):
        SampledFamily([0.0, 1.0], [np.array([[0.0]]), np.array([[2.0]])], lipschitz_bound=1.0)
    family = SampledFamily([0.0, 1.0], [np.array([[0.0]]), np.array([[2.0]])], lipschitz_bound=2.0)
    assert family.lipschitz_bound == 2.0


def test_sampled_family_interpolates_linearly():
    family = SampledFamily([0.0, 0.5, 1.0], [np.diag([0.0, 1.0]), np.diag([1.0, 1.0]), np.diag([1.0, 3.0])])
    np.testing.assert_allclose(family(0.25).matrix, np.diag([0.5, 1.0]), atol=TOL)
    np.testing.assert_allclose(family(0.75).matrix, np.diag([1.0, 2.0]), atol=TOL)
    np.testing.assert_allclose(family(0.5).matrix, np.diag([1.0, 1.0]), atol=TOL)


def test_spectrum_at_with_characters():
    action = SymmetryAction.from_diagonal([1.0, 1j], "g")
    family = SampledFamily([0.0, 1.0], [np.diag([-1.0, 2.0]), np.diag([1.0, 2.0])])
    entries = spectrum_at(family, 0.0, action=action)
    assert [e.eigenvalue for e in entries] == pytest.approx([-1.0, 2.0], abs=TOL)
    assert [e.character for e in entries] == [1.0 + 0j, action.characters[1].eigenvalue]

    plain = spectrum_at(family, 1.0)
    assert [e.eigenvalue for e in plain] == [1.0, 2.0]


def test_gapped_constant_family_single_segment():
    family = scalar_family(2.0, 2.0)
    partition = build_flow_partition(family)
    assert partition.segment_count == 1
    assert partition.radii[0] == pytest.approx(1.0)


def test_crossing_family_needs_several_segments():
    family = scalar_family(-0.5, 0.5)
    partition = build_flow_partition(family)
    assert partition.segment_count > 1
    assert partition.min_margin >= DEFAULT_TOLERANCES.margin_min
    verify_partition(family, partition)


def test_partition_budget():
    family = scalar_family(-0.5, 0.5)
    tols = DEFAULT_TOLERANCES.with_overrides(max_segments=2)
    with pytest.raises(PartitionFailure):
        build_flow_partition(family, tolerances=tols)


def test_verify_partition_rejects_foreign_partition():
    gapped = build_flow_partition(scalar_family(2.0, 2.0))
    assert gapped.radii == (1.0,)
    with pytest.raises(InvalidPartition):
        verify_partition(scalar_family(0.5, 1.5), gapped)


def test_flow_partition_validates_times():
    with pytest.raises(InvalidPartition):
        FlowPartition([0.0, 0.5], [1.0], [])
    with pytest.raises(InvalidPartition):
        FlowPartition([0.0, 1.0], [1.0], [])


def test_curve_family_crossings():
    family = CurveFamily([
        make_curve("up", lambda t: t - 0.5, lipschitz=1.0),
        make_curve("down", lambda t: 0.25 - t, multiplicity=2, character=1j, lipschitz=1.0),
        make_curve("flat", lambda t: 1.0 + 0.0 * np.asarray(t), lipschitz=0.0)
    ])
    crossings = zero_crossings(family)
    assert [(c.curve, c.direction, c.multiplicity) for c in crossings] == [("down", -1, 2), ("up", 1, 1)]
    assert crossings[0].t == pytest.approx(0.25, abs=1e-12)
    assert crossings[1].t == pytest.approx(0.5, abs=1e-12)

    groups = family.character_groups()
    assert len(groups) == 2
    assert groups[0][0] == 1.0 + 0j


def test_make_curve_validates():
    with pytest.raises(InvalidInput):
        make_curve("bad", lambda t: t, character=2.0)
    with pytest.raises(InvalidInput):
        make_curve("bad", lambda t: t, multiplicity=0)


def test_mode_block_family_labels_unique():
    family = scalar_family(1.0, 1.0)
    with pytest.raises(InvalidInput):
        ModeBlockFamily([ModeBlock(0, family), ModeBlock(0, family)])


def test_truncate_modes():
    model = CircleModel.line_twist(j_max=4)
    family = truncate_modes(build_circle_family(model), 2)
    assert family.labels == [-2, -1, 0, 1, 2]
    assert family.truncation == 2


def test_sampled_family_json_roundtrip():
    rng = np.random.default_rng(17)
    instance = random_instance(rng)
    family = loads_family(dumps_family(instance.family))

    assert isinstance(family, SampledFamily)
    np.testing.assert_allclose(family.times, instance.family.times, atol=0.0)
    for mine, theirs in zip(family.blocks, instance.family.blocks):
        np.testing.assert_allclose(mine.matrix, theirs.matrix, atol=TOL)


def test_model_families_json_roundtrip():
    berger = loads_family(dumps_family(build_berger_family(BergerModel(n_max=3, theta=0.4))))
    assert isinstance(berger, CurveFamily)
    assert berger.descriptor["theta"] == 0.4

    circle = family_from_dict(json.loads(dumps_family(build_circle_family(CircleModel.split_twist(j_max=2)))))
    assert isinstance(circle, ModeBlockFamily)
    assert circle.labels == [-2, -1, 0, 1, 2]


def test_family_json_errors():
    with pytest.raises(SchemaError):
        loads_family("{not json")
    with pytest.raises(SchemaError):
        loads_family(json.dumps({"schema": "specflow/0", "kind": "sampled"}))
    with pytest.raises(SchemaError):
        loads_family(json.dumps({"kind": "sampled", "times": [0.0, 1.0]}))
    with pytest.raises(SchemaError):
        loads_family(json.dumps({"kind": "sampled", "times": [0.0, 0.5], "blocks": [[[1.0]], [[1.0]]]}))
    with pytest.raises(SchemaError):
        family_to_dict(CurveFamily([make_curve("c", lambda t: t + 1.0, lipschitz=1.0)]))
