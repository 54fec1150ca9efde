"""
.. module:: specflowcli
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the ``specflow`` command line scenario runner.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Any, List, Optional, Sequence, Tuple, Union

import argparse
import cmath
import collections
import json
import logging
import math
import os
import re
import sys

from dataclasses import dataclass

import numpy as np

from mojo.specflow.eta.etainvariant import (
    CharacterSpectrum,
    eta_abel_oracle,
    eta_function,
    eta_value,
    spectrum_from_dict
)
from mojo.specflow.exceptions import (
    InvalidInput,
    NumericalFailure,
    SchemaError,
    SpecflowError,
    UseNumericOracle,
    ValidationError
)
from mojo.specflow.families.curvefamily import CurveFamily
from mojo.specflow.families.familyjson import action_from_json, family_from_dict, model_from_descriptor
from mojo.specflow.families.modeblockfamily import ModeBlockFamily
from mojo.specflow.families.partitioning import zero_crossings
from mojo.specflow.families.sampledfamily import SampledFamily
from mojo.specflow.flow.spectralflow import sfl_equivariant
from mojo.specflow.geometry.bergermodel import BergerModel, berger_crossings, build_berger_family, chi_n
from mojo.specflow.geometry.circlemodel import (
    CircleModel,
    build_circle_family,
    circle_boundary_term,
    reference_flow
)
from mojo.specflow.geometry.rhsflat import QUADRATURE_AGREEMENT_TOL, rhs_flat
from mojo.specflow.index.apsindex import (
    ApsProblem,
    expected_index,
    index_decomposition_check,
    index_identity_check,
    solve_index
)
from mojo.specflow.linalg.symmetry import SymmetryAction
from mojo.specflow.model.checkreport import CheckReport
from mojo.specflow.model.checkcode import ExitCode
from mojo.specflow.model.conventions import ActionConvention, EndpointConvention, OperatorVariant
from mojo.specflow.model.equivariantvalue import complex_pair
from mojo.specflow.randomfamilies import random_instance
from mojo.specflow.recorders.jsonresultrecorder import JsonResultRecorder
from mojo.specflow.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger("mojo.specflow.cli")

EXAMPLES = ("circle-k1", "circle-k2", "berger", "rhs-flat")

INTEGER_TOLERANCES = ("max_segments",)

ORACLE_AGREEMENT_TOL = 1e-6

PI_EXPONENT = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*(?:π|pi)\s*\*?\s*i(?:\s*/\s*(\d+(?:\.\d*)?))?$")


@dataclass(frozen=True)
class GammaSpec:
    """
        A parsed ``--gamma`` descriptor.  Exactly one of ``z``, ``theta`` and ``matrix`` is set.
    """

    text: str
    z: Optional[complex] = None
    theta: Optional[float] = None
    matrix: Optional[Any] = None

    def circle_element(self) -> complex:
        if self.matrix is not None:
            raise InvalidInput("The circle model takes a group element z or theta, not a matrix.")
        if self.theta is not None:
            return cmath.exp(1j * self.theta)
        return self.z if self.z is not None else 1.0 + 0j

    def rotation_angle(self) -> float:
        if self.matrix is not None:
            raise InvalidInput("The Berger model takes a rotation angle theta, not a matrix.")
        if self.z is not None:
            return cmath.phase(self.z)
        return self.theta if self.theta is not None else 0.0


def parse_complex(text: str) -> complex:
    """
        Parses ``i``, ``-1``, ``0.6+0.8i`` or an exponent form such as ``0.2πi`` or ``2πi/5``,
        which stands for exp(0.2πi) and exp(2πi/5).
    """
    text = text.strip().replace(" ", "")
    match = PI_EXPONENT.match(text)
    if match is not None:
        coefficient = match.group(1)
        factor = float(coefficient) if coefficient not in ("", "+", "-") else (-1.0 if coefficient == "-" else 1.0)
        divisor = float(match.group(2)) if match.group(2) else 1.0
        return cmath.exp(1j * math.pi * factor / divisor)

    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise InvalidInput(f"Cannot read '{text}' as a complex number.") from None


def parse_gamma(text: Optional[str], theta: Optional[float] = None) -> GammaSpec:
    """
        Parses ``z=<complex>``, ``theta=<float>`` or ``matrix=<file.json>``.
    """
    if text is None:
        if theta is not None:
            return GammaSpec(f"theta={theta}", theta=float(theta))
        return GammaSpec("z=1", z=1.0 + 0j)

    if theta is not None:
        raise InvalidInput("Give either --gamma or --theta, not both.")

    key, sep, value = text.partition("=")
    if sep == "":
        raise InvalidInput(f"--gamma expects z=..., theta=... or matrix=..., got '{text}'.")

    key = key.strip()
    if key == "z":
        z = parse_complex(value)
        if abs(abs(z) - 1.0) > 1e-12:
            raise InvalidInput(f"The group element z must have unit modulus, got {z}.")
        return GammaSpec(text, z=z)
    if key == "theta":
        try:
            return GammaSpec(text, theta=float(value))
        except ValueError:
            raise InvalidInput(f"Cannot read theta from '{value}'.") from None
    if key == "matrix":
        return GammaSpec(text, matrix=_read_json(value))

    raise InvalidInput(f"Unknown group element form '{key}'.")


def parse_tolerances(pairs: Optional[Sequence[str]]) -> Tolerances:
    """
        Applies ``name=value`` overrides to the default tolerances.
    """
    overrides = collections.OrderedDict()
    for pair in pairs or []:
        name, sep, value = pair.partition("=")
        if sep == "":
            raise InvalidInput(f"--tol expects name=value, got '{pair}'.")
        name = name.strip()
        try:
            overrides[name] = int(value) if name in INTEGER_TOLERANCES else float(value)
        except ValueError:
            raise InvalidInput(f"Cannot read a value for tolerance '{name}' from '{value}'.") from None
    return DEFAULT_TOLERANCES.with_overrides(**overrides)


def _read_json(source: str) -> Any:
    text = source
    if not source.lstrip().startswith(("{", "[")):
        if not os.path.exists(source):
            raise InvalidInput(f"Input file '{source}' does not exist.")
        with open(source, 'r') as jin:
            text = jin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as xcpt:
        raise SchemaError(f"Input is not valid JSON: {xcpt}") from None


def load_input(source: str, args: argparse.Namespace, tolerances: Tolerances) -> Any:
    """
        Loads a family, a model or a spectrum from inline JSON or a file and applies the
        command line options to models.
    """
    document = _read_json(source)
    if not isinstance(document, dict):
        raise SchemaError("The input document must be a JSON object.")

    if "kind" in document:
        return family_from_dict(document, tolerances)
    if "model" in document:
        model = model_from_descriptor(document, tolerances)
        return apply_model_options(model, args)
    if "finite_part" in document or "progressions" in document:
        return spectrum_from_dict(document)

    raise SchemaError("The input is neither a family, a model descriptor nor a spectrum.")


def apply_model_options(model: Union[CircleModel, BergerModel], args: argparse.Namespace):
    gamma = args.gamma_spec
    if isinstance(model, CircleModel):
        changes = {}
        if args.gamma is not None or args.theta is not None:
            changes["z"] = gamma.circle_element()
        if args.jmax is not None:
            changes["j_max"] = args.jmax
        if args.action is not None:
            changes["action_convention"] = ActionConvention(args.action)
        return model.with_options(**changes) if changes else model

    changes = {}
    if args.gamma is not None or args.theta is not None:
        changes["theta"] = gamma.rotation_angle()
    if args.nmax is not None:
        changes["n_max"] = args.nmax
    return model.with_options(**changes) if changes else model


def family_and_action(subject: Any, args: argparse.Namespace, tolerances: Tolerances) -> Tuple[Any, Optional[SymmetryAction]]:
    """
        Turns a loaded input into a family and, for sampled families, the symmetry given on the
        command line.
    """
    if isinstance(subject, CircleModel):
        return build_circle_family(subject), None
    if isinstance(subject, BergerModel):
        return build_berger_family(subject), None
    if isinstance(subject, SampledFamily):
        gamma = args.gamma_spec
        if gamma.matrix is not None:
            return subject, action_from_json(gamma.matrix, gamma_id=gamma.text, tolerances=tolerances)
        if gamma.z is not None and abs(gamma.z - 1.0) > tolerances.char_cluster_tol:
            phases = [gamma.z] * subject.dim
            return subject, SymmetryAction.from_diagonal(phases, gamma.text)
        return subject, None
    if isinstance(subject, (CurveFamily, ModeBlockFamily)):
        return subject, None
    raise InvalidInput("This command needs an operator family or a model.")


def _per_character_rows(pairs) -> List[list]:
    return [[complex(c).real, complex(c).imag, n] for c, n in pairs]


def _value_check(name: str, value: complex, reference: complex, tol: float) -> CheckReport:
    report = CheckReport(name)
    deviation = abs(complex(value) - complex(reference))
    report.add_value("value", complex_pair(value))
    report.add_value("reference", complex_pair(reference))
    report.add_value("deviation", deviation)
    if deviation <= tol:
        report.mark_passed()
    else:
        report.mark_failed(f"{value} differs from {reference} by {deviation:.3e}")
    return report


def command_sfl(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    subject = load_input(args.model, args, tolerances)
    family, action = family_and_action(subject, args, tolerances)

    result = sfl_equivariant(family, action=action)
    recorder.record("family", family.describe())
    recorder.record("sfl", result.as_dict())
    recorder.add_table("per_character", ["character_re", "character_im", "sfl"], _per_character_rows(result.per_character))

    if isinstance(family, CurveFamily):
        crossings = zero_crossings(family)
        recorder.record("crossings", [c.as_dict() for c in crossings])

    return


def command_index(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    subject = load_input(args.model, args, tolerances)
    family, action = family_and_action(subject, args, tolerances)
    if isinstance(family, CurveFamily):
        raise InvalidInput("Index problems are posed for sampled or mode-block families.")

    problem = ApsProblem(family, EndpointConvention(args.convention), OperatorVariant(args.variant), horizon=args.horizon)
    result = solve_index(problem, action)

    recorder.record("problem", problem.as_dict())
    recorder.record("index", result.as_dict())
    recorder.record("expected", expected_index(family, problem.convention, action).as_dict())
    recorder.add_table("per_character", ["character_re", "character_im", "index"], _per_character_rows(result.per_character))

    recorder.record_check(index_identity_check(problem, action))
    recorder.record_check(index_decomposition_check(problem, action))

    return


def _eta_entry(spectrum: CharacterSpectrum, method: str, tolerances: Tolerances, s_value: Optional[float]):
    rtnval = collections.OrderedDict()
    value, used = eta_value(spectrum, method, tolerances)
    oracle = eta_abel_oracle(spectrum, tolerances=tolerances)
    rtnval["eta"] = value.as_dict()
    rtnval["method"] = used
    rtnval["oracle"] = oracle.as_dict()
    rtnval["kernel_trace"] = spectrum.kernel_trace().as_dict()
    if s_value is not None:
        try:
            rtnval["eta_s"] = collections.OrderedDict([("s", s_value), ("value", eta_function(spectrum, s_value).as_dict())])
        except UseNumericOracle:
            rtnval["eta_s"] = None
    return rtnval, value, oracle


def command_eta(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    subject = load_input(args.model, args, tolerances)

    if isinstance(subject, CharacterSpectrum):
        entry, value, oracle = _eta_entry(subject, args.method, tolerances, args.s)
        recorder.record("spectrum", subject.as_dict())
        recorder.record("eta", entry)
        recorder.record_check(_value_check("eta-oracle-agreement", oracle.value.value, value.value,
                                           max(ORACLE_AGREEMENT_TOL, 10.0 * oracle.residual)))
        return

    if isinstance(subject, CircleModel):
        term = circle_boundary_term(subject, method=args.method)
        recorder.record("model", subject.as_dict())
        recorder.record("boundary_term", term.as_dict())
        return

    raise InvalidInput("The eta command takes a spectrum document or a circle model descriptor.")


def _identity_checks(label: str, family, action, tolerances: Tolerances) -> List[CheckReport]:
    """
        The strict identity for both operator variants, their agreement and the character
        decomposition, for one family.
    """
    reports = []
    expected = expected_index(family, EndpointConvention.STRICT, action)

    indices = {}
    for variant in OperatorVariant:
        report = CheckReport(f"{label}-identity-{variant.value}")
        try:
            result = solve_index(ApsProblem(family, EndpointConvention.STRICT, variant), action)
            indices[variant] = result.index.value
            deviation = abs(result.index.value - expected.value)
            report.add_value("index", result.index.as_dict())
            report.add_value("expected", expected.as_dict())
            report.add_value("deviation", deviation)
            if deviation <= tolerances.identity_tol:
                report.mark_passed()
            else:
                report.mark_failed(f"index {result.index.value} differs from {expected.value}")
        except SpecflowError as xcpt:
            report.mark_errored(f"{type(xcpt).__name__}: {xcpt}", type(xcpt))
        reports.append(report)

    if len(indices) == 2:
        reports.append(_value_check(f"{label}-variants-agree", indices[OperatorVariant.RIEMANNIAN],
                                    indices[OperatorVariant.LORENTZIAN], tolerances.identity_tol))

    try:
        reports.append(index_decomposition_check(ApsProblem(family, EndpointConvention.STRICT, OperatorVariant.LORENTZIAN), action))
    except SpecflowError as xcpt:
        report = CheckReport(f"{label}-decomposition")
        report.mark_errored(f"{type(xcpt).__name__}: {xcpt}", type(xcpt))
        reports.append(report)

    return reports


def command_verify_identity(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    rows = []

    if args.random:
        for idx in range(args.n):
            rng = np.random.default_rng([args.seed, idx])
            instance = random_instance(rng, kernel_at_end=bool(idx % 2), tolerances=tolerances)
            reports = _identity_checks(f"instance-{idx}", instance.family, instance.action, tolerances)
            for report in reports:
                recorder.record_check(report)
            rows.append([idx, instance.dim, len(instance.characters), all(r.passed for r in reports)])
    else:
        if args.model is None:
            raise InvalidInput("verify-identity needs --random or a model.")
        subject = load_input(args.model, args, tolerances)
        family, action = family_and_action(subject, args, tolerances)
        for report in _identity_checks("input", family, action, tolerances):
            recorder.record_check(report)

    recorder.add_table("instances", ["instance", "dim", "characters", "passed"], rows)
    return


def _circle_results(model: CircleModel, convention: EndpointConvention, variant: OperatorVariant):
    family = build_circle_family(model)
    flow = sfl_equivariant(family)
    index = solve_index(ApsProblem(family, convention, variant))
    return family, flow, index


def example_circle(name: str, args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    j_max = args.jmax if args.jmax is not None else 16
    action = ActionConvention(args.action or ActionConvention.FIBER.value)
    z = args.gamma_spec.circle_element()
    factory = CircleModel.line_twist if name == "circle-k1" else CircleModel.split_twist
    model = factory(j_max=j_max, z=z, action_convention=action, tolerances=tolerances)

    convention = EndpointConvention(args.convention)
    variant = OperatorVariant(args.variant)

    family, flow, index = _circle_results(model, convention, variant)
    recorder.record("model", model.as_dict())
    recorder.record("sfl", flow.as_dict())
    recorder.record("index", index.as_dict())
    recorder.add_table("per_character", ["character_re", "character_im", "index"], _per_character_rows(index.per_character))

    recorder.record_check(_value_check("reference-flow", flow.value.value, reference_flow(model), tolerances.identity_tol))
    recorder.record_check(index_identity_check(ApsProblem(family, convention, variant)))
    if convention != EndpointConvention.STRICT:
        recorder.record_check(index_identity_check(ApsProblem(family, EndpointConvention.STRICT, variant)))

    _, flow2, index2 = _circle_results(model.with_options(j_max=2 * j_max), convention, variant)
    stable = abs(flow2.value.value - flow.value.value) <= tolerances.identity_tol \
        and abs(index2.index.value - index.index.value) <= tolerances.identity_tol
    recorder.record("truncation", collections.OrderedDict([("j_max", j_max), ("doubled", 2 * j_max), ("truncation_stable", stable)]))

    return


def example_berger(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    n_max = args.nmax if args.nmax is not None else 12
    theta = args.gamma_spec.rotation_angle()
    model = BergerModel(n_max=n_max, theta=theta, tolerances=tolerances)

    flow = sfl_equivariant(build_berger_family(model))
    crossings = berger_crossings(model)

    recorder.record("model", model.as_dict())
    recorder.record("sfl", flow.as_dict())
    recorder.record("crossings", [
        collections.OrderedDict(list(c.as_dict().items()) + [("lambda", lam)]) for c, lam in crossings
    ])
    recorder.add_table("crossings", ["curve", "t", "lambda", "direction", "multiplicity", "character_re", "character_im"],
                       [[c.curve, c.t, lam, c.direction, c.multiplicity, c.character.real, c.character.imag] for c, lam in crossings])
    recorder.record_check(_value_check("reference-flow", flow.value.value, chi_n(2, theta), tolerances.identity_tol))

    flow2 = sfl_equivariant(build_berger_family(model.with_options(n_max=2 * n_max)))
    stable = abs(flow2.value.value - flow.value.value) <= tolerances.identity_tol
    recorder.record("truncation", collections.OrderedDict([("n_max", n_max), ("doubled", 2 * n_max), ("truncation_stable", stable)]))

    return


def example_rhs_flat(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    j_max = args.jmax if args.jmax is not None else 16
    action = ActionConvention(args.action or ActionConvention.FIBER.value)
    factory = CircleModel.line_twist if args.k == 1 else CircleModel.split_twist
    model = factory(j_max=j_max, z=args.gamma_spec.circle_element(), action_convention=action, tolerances=tolerances)

    report = rhs_flat(model)
    recorder.record("model", model.as_dict())
    recorder.record("rhs", report.as_dict())

    if model.is_identity:
        recorder.record_check(_value_check("interior-quadrature", report.interior.value, report.interior_closed_form,
                                           QUADRATURE_AGREEMENT_TOL))
    family = build_circle_family(model)
    recorder.record_check(index_identity_check(ApsProblem(family, EndpointConvention.STRICT, OperatorVariant.LORENTZIAN)))

    return


def command_example(args: argparse.Namespace, tolerances: Tolerances, recorder: JsonResultRecorder):
    if args.name in ("circle-k1", "circle-k2"):
        example_circle(args.name, args, tolerances, recorder)
    elif args.name == "berger":
        example_berger(args, tolerances, recorder)
    else:
        example_rhs_flat(args, tolerances, recorder)
    return


COMMANDS = collections.OrderedDict([
    ("sfl", command_sfl),
    ("index", command_index),
    ("eta", command_eta),
    ("verify-identity", command_verify_identity),
    ("example", command_example)
])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", default=None, help="Group element: z=<complex> (z=0.2πi is exp(0.2πi)), theta=<angle> or matrix=<file.json>.")
    common.add_argument("--theta", type=float, default=None, help="Rotation angle of the group element.")
    common.add_argument("--convention", choices=[c.value for c in EndpointConvention], default=EndpointConvention.STRICT.value,
                        help="Terminal APS condition (default: strict).")
    common.add_argument("--action", choices=[a.value for a in ActionConvention], default=None,
                        help="How the circle acts on Fourier modes (default: fiber).")
    common.add_argument("--variant", choices=[v.value for v in OperatorVariant], default=OperatorVariant.LORENTZIAN.value,
                        help="Model operator (default: lorentzian).")
    common.add_argument("--horizon", type=float, default=1.0, help="The length T of the cylinder (default: 1).")
    common.add_argument("--jmax", type=int, default=None, help="Fourier mode truncation of the circle model.")
    common.add_argument("--nmax", type=int, default=None, help="Representation cutoff of the Berger model.")
    common.add_argument("--tol", action="append", default=None, metavar="NAME=VALUE", help="Tolerance override, repeatable.")
    common.add_argument("--out", default=None, help="Write the result document to this file instead of stdout.")
    common.add_argument("--csv", default=None, help="Also write flat CSV tables to this file.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log progress to stderr (-vv for debug).")

    parser = argparse.ArgumentParser(prog="specflow", description="Equivariant spectral flow and APS index laboratory.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in ("sfl", "index"):
        sub = subparsers.add_parser(name, parents=[common], help=f"Compute {name} of a family or model.")
        sub.add_argument("model", help="Inline JSON or a file with a family document or model descriptor.")

    sub = subparsers.add_parser("eta", parents=[common], help="Evaluate eta invariants and boundary terms.")
    sub.add_argument("model", help="Inline JSON or a file with a spectrum document or circle model descriptor.")
    sub.add_argument("--method", choices=["auto", "closed", "lerch", "oracle"], default="auto", help="Eta evaluation method.")
    sub.add_argument("--s", type=float, default=None, help="Also evaluate the eta function at s.")

    sub = subparsers.add_parser("verify-identity", parents=[common], help="Check the index identity on random or given families.")
    sub.add_argument("model", nargs="?", default=None, help="Optional family or model to check.")
    sub.add_argument("--random", action="store_true", help="Check seeded random equivariant families.")
    sub.add_argument("--seed", type=int, default=0, help="Seed of the random instances.")
    sub.add_argument("--n", type=int, default=100, help="Number of random instances.")

    sub = subparsers.add_parser("example", parents=[common], help="Run one of the built in geometric examples.")
    sub.add_argument("name", choices=EXAMPLES)
    sub.add_argument("--k", type=int, choices=[1, 2], default=1, help="Fiber dimension for rhs-flat.")

    return parser


def _inputs(args: argparse.Namespace) -> collections.OrderedDict:
    rtnval = collections.OrderedDict()
    for key in ("name", "model", "gamma", "theta", "convention", "action", "variant", "horizon", "jmax", "nmax",
                "random", "seed", "n", "k", "method", "s"):
        if hasattr(args, key):
            rtnval[key] = getattr(args, key)
    if rtnval.get("action") is None:
        rtnval["action"] = ActionConvention.FIBER.value
    return rtnval


def error_exit_code(error_type: type) -> ExitCode:
    """
        The exit code of an error class: 2 for validation errors, 3 for numerical failures and 4
        for internal inconsistencies and anything unexpected.
    """
    if issubclass(error_type, ValidationError):
        return ExitCode.VALIDATION
    if issubclass(error_type, NumericalFailure):
        return ExitCode.NUMERICAL
    return ExitCode.INCONSISTENT


def run(args: argparse.Namespace) -> ExitCode:
    """
        Executes a parsed scenario and writes its result document.

        :returns: The exit code of the scenario.
    """
    tolerances = parse_tolerances(args.tol)
    args.gamma_spec = parse_gamma(args.gamma, args.theta)

    recorder = JsonResultRecorder(command=args.command, inputs=_inputs(args), tolerances=tolerances, out_filename=args.out)
    stopped = False
    try:
        COMMANDS[args.command](args, tolerances, recorder)
    except SpecflowError as xcpt:
        logger.error("%s: %s", type(xcpt).__name__, xcpt)
        recorder.record_error(xcpt)
        stopped = True

    recorder.finalize()
    if not stopped:
        recorder.write_tables(args.csv)

    for line in recorder.format_lines():
        logger.info(line)

    codes = [error_exit_code(error_type) for error_type in recorder.error_types]
    if recorder.failure_count > 0:
        codes.append(ExitCode.INCONSISTENT)

    rtnval = max(codes, default=ExitCode.SUCCESS)

    return rtnval


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        exit_code = run(args)
    except SpecflowError as xcpt:
        logger.error("%s: %s", type(xcpt).__name__, xcpt)
        exit_code = error_exit_code(type(xcpt))

    return int(exit_code)


if __name__ == "__main__":
    sys.exit(main())
