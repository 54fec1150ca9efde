"""
.. module:: familyjson
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the JSON codec for operator families, model descriptors and
               symmetry matrices.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>

    Matrices are lists of rows whose entries are ``[re, im]`` pairs (plain numbers are read as
    real entries).  Curve families are closed forms and are written through the model
    descriptor they were built from.
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Any, Union

import collections
import json

import numpy as np

from mojo.specflow.exceptions import InvalidInput, SchemaError
from mojo.specflow.families.curvefamily import CurveFamily
from mojo.specflow.families.modeblockfamily import ModeBlock, ModeBlockFamily
from mojo.specflow.families.operatorfamily import OperatorFamily
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.geometry.bergermodel import BergerModel, build_berger_family
from mojo.specflow.geometry.circlemodel import CircleModel
from mojo.specflow.linalg.symmetry import IDENTITY_GAMMA_ID, SymmetryAction, decompose
from mojo.specflow.model.equivariantvalue import complex_pair
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

SCHEMA_VERSION = "specflow/1"


def matrix_to_json(matrix: np.ndarray) -> list:
    return [[complex_pair(v) for v in row] for row in np.asarray(matrix)]


def matrix_from_json(value: Any) -> np.ndarray:
    """
        Reads a square matrix of ``[re, im]`` pairs or real numbers.

        :raises SchemaError: When the value is not a rectangular matrix of numbers.
    """
    if not isinstance(value, list) or len(value) == 0 or not all(isinstance(row, list) for row in value):
        raise SchemaError("A matrix must be a non-empty list of rows.")

    rows = []
    for row in value:
        entries = []
        for entry in row:
            if isinstance(entry, (int, float)):
                entries.append(complex(entry, 0.0))
            elif isinstance(entry, list) and len(entry) == 2 and all(isinstance(v, (int, float)) for v in entry):
                entries.append(complex(entry[0], entry[1]))
            else:
                raise SchemaError(f"Matrix entries must be numbers or [re, im] pairs, got {entry!r}.")
        rows.append(entries)

    if len({len(r) for r in rows}) != 1:
        raise SchemaError("Matrix rows must all have the same length.")

    return np.array(rows, dtype=np.complex128)


def action_from_json(value: Any, gamma_id: str = "gamma", tolerances: Tolerances = DEFAULT_TOLERANCES) -> SymmetryAction:
    """
        Reads a symmetry from its unitary matrix.
    """
    return decompose(matrix_from_json(value), gamma_id=gamma_id, tolerances=tolerances)


def _sampled_to_dict(family: SampledFamily) -> collections.OrderedDict:
    rtnval = collections.OrderedDict([
        ("kind", family.kind),
        ("gamma", family.gamma_id),
        ("times", [float(t) for t in family.times]),
        ("blocks", [matrix_to_json(b.matrix) for b in family.blocks]),
        ("lipschitz_bound", family.lipschitz_bound)
    ])
    return rtnval


def _curves_to_dict(family: CurveFamily) -> collections.OrderedDict:
    if family.descriptor is None:
        raise SchemaError("Curve families without a model descriptor cannot be serialized.")
    rtnval = collections.OrderedDict([
        ("kind", family.kind),
        ("gamma", family.gamma_id),
        ("model", family.descriptor)
    ])
    return rtnval


def _modes_to_dict(family: ModeBlockFamily) -> collections.OrderedDict:
    modes = []
    for mode in family.modes:
        entry = collections.OrderedDict([
            ("label", mode.label),
            ("base_character", complex_pair(mode.base_character)),
            ("fiber_action", matrix_to_json(mode.fiber_action.unitary) if mode.fiber_action is not None else None),
            ("family", family_to_dict(mode.family))
        ])
        modes.append(entry)

    rtnval = collections.OrderedDict([
        ("kind", family.kind),
        ("gamma", family.gamma_id),
        ("truncation", family.truncation),
        ("model", family.descriptor),
        ("modes", modes)
    ])
    return rtnval


def family_to_dict(family: OperatorFamily) -> collections.OrderedDict:
    if isinstance(family, SampledFamily):
        return _sampled_to_dict(family)
    if isinstance(family, CurveFamily):
        return _curves_to_dict(family)
    if isinstance(family, ModeBlockFamily):
        return _modes_to_dict(family)
    raise SchemaError(f"Unsupported family kind '{family.kind}'.")


def dumps_family(family: OperatorFamily) -> str:
    """
        Serializes a family to a JSON document with the schema header.
    """
    document = collections.OrderedDict([("schema", SCHEMA_VERSION)])
    document.update(family_to_dict(family))
    return json.dumps(document, indent=2)


def _require(document: dict, key: str) -> Any:
    if key not in document:
        raise SchemaError(f"Family document is missing '{key}'.")
    return document[key]


def model_from_descriptor(descriptor: dict, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """
        Rebuilds a circle or Berger model from its descriptor.
    """
    name = _require(descriptor, "model")
    try:
        if name == "berger":
            lo, hi = _require(descriptor, "lambda_range")
            return BergerModel(int(_require(descriptor, "n_max")), float(lo), float(hi), float(descriptor.get("theta", 0.0)),
                               tolerances=tolerances)
        if name == "circle":
            z_re, z_im = descriptor.get("z", [1.0, 0.0])
            return CircleModel(int(_require(descriptor, "k")), matrix_from_json(_require(descriptor, "twist")),
                               tuple(_require(descriptor, "fiber_weights")), int(descriptor.get("j_max", 16)),
                               complex(z_re, z_im), descriptor.get("action_convention", "fiber"),
                               descriptor.get("profile", "linear"), tolerances=tolerances)
    except (TypeError, ValueError) as xcpt:
        raise SchemaError(f"Malformed '{name}' model descriptor: {xcpt}") from None

    raise SchemaError(f"Unknown model '{name}'.")


def family_from_dict(document: dict, tolerances: Tolerances = DEFAULT_TOLERANCES) -> OperatorFamily:
    """
        Rebuilds a family from its dictionary form.

        :raises SchemaError: For malformed documents.
    """
    if not isinstance(document, dict):
        raise SchemaError("A family document must be a JSON object.")

    kind = _require(document, "kind")
    gamma_id = document.get("gamma", IDENTITY_GAMMA_ID)

    if kind == "sampled":
        blocks = [matrix_from_json(b) for b in _require(document, "blocks")]
        times = _require(document, "times")
        try:
            return SampledFamily(times, blocks, lipschitz_bound=document.get("lipschitz_bound"),
                                 gamma_id=gamma_id, tolerances=tolerances)
        except InvalidInput as xcpt:
            raise SchemaError(f"Invalid sampled family: {xcpt}") from None

    if kind == "curves":
        model = model_from_descriptor(_require(document, "model"), tolerances)
        if not isinstance(model, BergerModel):
            raise SchemaError("Curve families are only defined by Berger model descriptors.")
        return build_berger_family(model)

    if kind == "modes":
        modes = []
        for entry in _require(document, "modes"):
            family = family_from_dict(_require(entry, "family"), tolerances)
            re_part, im_part = entry.get("base_character", [1.0, 0.0])
            fiber = entry.get("fiber_action")
            fiber_action = action_from_json(fiber, gamma_id, tolerances) if fiber is not None else None
            modes.append(ModeBlock(int(_require(entry, "label")), family, complex(re_part, im_part), fiber_action))
        return ModeBlockFamily(modes, gamma_id=gamma_id, truncation=document.get("truncation"),
                               descriptor=document.get("model"), tolerances=tolerances)

    raise SchemaError(f"Unknown family kind '{kind}'.")


def loads_family(text: Union[str, bytes], tolerances: Tolerances = DEFAULT_TOLERANCES) -> OperatorFamily:
    """
        Parses a JSON family document.

        :raises SchemaError: When the document is not valid JSON, has the wrong schema version
                             or is malformed.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as xcpt:
        raise SchemaError(f"Family document is not valid JSON: {xcpt}") from None

    schema = document.get("schema", SCHEMA_VERSION) if isinstance(document, dict) else None
    if schema != SCHEMA_VERSION:
        raise SchemaError(f"Unsupported schema '{schema}', expected '{SCHEMA_VERSION}'.")

    return family_from_dict(document, tolerances)
