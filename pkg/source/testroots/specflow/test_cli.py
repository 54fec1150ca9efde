
import cmath
import json

import pytest

from mojo.specflow.cli import specflowcli
from mojo.specflow.cli.specflowcli import main, parse_complex, parse_gamma, parse_tolerances
from mojo.specflow.exceptions import DegenerateEndpoint, InternalInconsistency, InvalidInput, NoConvergence
from mojo.specflow.model.checkcode import ExitCode

TOL = 1e-8

CROSSING_FAMILY = json.dumps({"kind": "sampled", "times": [0.0, 1.0], "blocks": [[[-0.5]], [[0.5]]]})


def run_json(capsys, argv) -> dict:
    assert main(argv) == ExitCode.SUCCESS
    return json.loads(capsys.readouterr().out)


def value_of(entry: dict) -> complex:
    re_part, im_part = entry["value"]
    return complex(re_part, im_part)


def test_parse_complex_forms():
    assert parse_complex("i") == 1j
    assert parse_complex("-1") == -1.0
    assert parse_complex("0.6+0.8i") == 0.6 + 0.8j
    assert abs(parse_complex("0.2πi") - cmath.exp(0.2j * cmath.pi)) < 1e-15
    assert abs(parse_complex("2πi/5") - cmath.exp(2j * cmath.pi / 5)) < 1e-15
    assert abs(parse_complex("-pi*i") + 1.0) < 1e-15
    with pytest.raises(InvalidInput):
        parse_complex("one")


def test_parse_gamma_forms():
    assert parse_gamma(None).z == 1.0
    assert parse_gamma(None, 0.5).theta == 0.5
    assert parse_gamma("theta=1.5").rotation_angle() == 1.5
    assert parse_gamma("z=i").circle_element() == 1j
    assert parse_gamma("matrix=[[1, 0], [0, -1]]").matrix == [[1, 0], [0, -1]]

    with pytest.raises(InvalidInput):
        parse_gamma("z=2")
    with pytest.raises(InvalidInput):
        parse_gamma("z=i", 0.5)
    with pytest.raises(InvalidInput):
        parse_gamma("w=1")
    with pytest.raises(InvalidInput):
        parse_gamma("i")
    with pytest.raises(InvalidInput):
        parse_gamma("matrix=[[1]]").circle_element()


def test_parse_tolerances():
    tols = parse_tolerances(["max_segments=64", "identity_tol=1e-7"])
    assert tols.max_segments == 64
    assert tols.identity_tol == 1e-7
    with pytest.raises(InvalidInput):
        parse_tolerances(["identity_tol"])
    with pytest.raises(InvalidInput):
        parse_tolerances(["identity_tol=small"])


def test_sfl_of_inline_family(capsys):
    document = run_json(capsys, ["sfl", CROSSING_FAMILY])
    assert document["schema"] == "specflow/1"
    assert document["command"] == "sfl"
    assert document["results"]["sfl"]["sfl"]["exact_integer"] == 1
    assert document["result"] == "PASSED"


def test_sfl_with_group_element(capsys):
    document = run_json(capsys, ["sfl", CROSSING_FAMILY, "--gamma", "z=i"])
    assert abs(value_of(document["results"]["sfl"]["sfl"]) - 1j) < TOL


def test_index_of_family_file(capsys, tmp_path):
    source = tmp_path / "family.json"
    source.write_text(CROSSING_FAMILY)
    document = run_json(capsys, ["index", str(source), "--variant", "riemannian"])

    assert document["results"]["index"]["index"]["exact_integer"] == 1
    assert document["results"]["problem"]["variant"] == "riemannian"
    assert document["totals"]["failed"] == 0


def test_eta_of_spectrum(capsys):
    spectrum = json.dumps({"progressions": [{"offset": 0.25}]})
    document = run_json(capsys, ["eta", spectrum, "--s", "0"])

    eta = document["results"]["eta"]
    assert eta["method"] == "closed"
    assert abs(value_of(eta["eta"]) - 0.5) < TOL
    assert abs(value_of(eta["eta_s"]["value"]) - 0.5) < TOL
    assert document["checks"][0]["name"] == "eta-oracle-agreement"
    assert document["checks"][0]["result"] == "PASSED"


def test_eta_of_circle_model(capsys):
    descriptor = json.dumps({"model": "circle", "k": 1, "twist": [[1.0]], "fiber_weights": [1]})
    document = run_json(capsys, ["eta", descriptor])
    assert document["results"]["boundary_term"]["b"]["exact_integer"] == -1


def test_example_circle_line_twist(capsys):
    document = run_json(capsys, ["example", "circle-k1", "--jmax", "4", "--gamma", "z=2πi/5", "--convention", "inclusive"])
    z = cmath.exp(2j * cmath.pi / 5)

    assert abs(value_of(document["results"]["sfl"]["sfl"]) - z) < TOL
    assert abs(value_of(document["results"]["index"]["index"]) - z) < TOL
    assert document["results"]["truncation"]["truncation_stable"]
    assert document["totals"]["total"] == 3


def test_example_circle_split_twist(capsys):
    document = run_json(capsys, ["example", "circle-k2", "--jmax", "3", "--gamma", "z=i", "--convention", "inclusive"])
    assert abs(value_of(document["results"]["index"]["index"]) - (1.0 - 1j)) < TOL


def test_example_berger(capsys):
    document = run_json(capsys, ["example", "berger", "--nmax", "4", "--theta", "1.0"])

    assert abs(value_of(document["results"]["sfl"]["sfl"]) - 2.0 * cmath.cos(1.0)) < TOL
    assert len(document["results"]["crossings"]) == 2
    assert all(abs(c["lambda"] - 4.0) < 1e-9 for c in document["results"]["crossings"])


def test_example_rhs_flat(capsys):
    document = run_json(capsys, ["example", "rhs-flat", "--k", "1", "--jmax", "4"])
    rhs = document["results"]["rhs"]
    assert rhs["convention_matches"] == {"inclusive": False, "strict": True}
    assert [c["name"] for c in document["checks"]][0] == "interior-quadrature"


def test_verify_identity_random(capsys):
    document = run_json(capsys, ["verify-identity", "--random", "--n", "3", "--seed", "11"])
    assert document["totals"]["total"] == 12
    assert document["totals"]["passed"] == 12


def test_output_is_deterministic(tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    argv = ["verify-identity", "--random", "--n", "2", "--seed", "3"]

    assert main(argv + ["--out", str(first)]) == ExitCode.SUCCESS
    assert main(argv + ["--out", str(second)]) == ExitCode.SUCCESS
    assert first.read_bytes() == second.read_bytes()


def test_csv_tables(capsys, tmp_path):
    target = tmp_path / "tables.csv"
    run_json(capsys, ["example", "berger", "--nmax", "3", "--csv", str(target)])

    lines = target.read_text().splitlines()
    assert lines[0] == "# crossings"
    assert lines[1] == "curve,t,lambda,direction,multiplicity,character_re,character_im"
    assert len(lines) == 4


def test_unparsable_scenario_exits_two_without_document(capsys):
    assert main(["sfl", CROSSING_FAMILY, "--gamma", "z=2"]) == ExitCode.VALIDATION
    assert main(["sfl", CROSSING_FAMILY, "--tol", "rank_tol=-1"]) == ExitCode.VALIDATION
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv, error", [
    (["sfl", "{not json"], "SchemaError"),
    (["sfl", json.dumps({"something": "else"})], "SchemaError"),
    (["verify-identity"], "InvalidInput"),
])
def test_validation_errors_exit_two(capsys, argv, error):
    assert main(argv) == ExitCode.VALIDATION

    document = json.loads(capsys.readouterr().out)
    assert document["result"] == "ERRORED"
    assert document["error"]["type"] == error
    assert document["command"] == argv[0]


def test_missing_file_exits_two(capsys, tmp_path):
    assert main(["sfl", str(tmp_path / "missing.json")]) == ExitCode.VALIDATION
    assert json.loads(capsys.readouterr().out)["result"] == "ERRORED"


def test_partition_budget_exits_three(capsys):
    assert main(["sfl", CROSSING_FAMILY, "--tol", "max_segments=2"]) == ExitCode.NUMERICAL

    document = json.loads(capsys.readouterr().out)
    assert document["result"] == "ERRORED"
    assert document["error"]["type"] == "PartitionFailure"
    assert document["tolerances"]["max_segments"] == 2
    assert document["totals"]["total"] == 0


@pytest.mark.parametrize("error, exit_code", [
    (DegenerateEndpoint("kernel at the end"), ExitCode.VALIDATION),
    (NoConvergence("propagator did not settle"), ExitCode.NUMERICAL),
    (InternalInconsistency("traces disagree"), ExitCode.INCONSISTENT),
])
def test_errored_checks_exit_with_their_error_class(capsys, monkeypatch, error, exit_code):
    def raise_error(*args, **kwargs):
        raise error

    monkeypatch.setattr(specflowcli, "solve_index", raise_error)
    monkeypatch.setattr(specflowcli, "index_decomposition_check", raise_error)
    assert main(["verify-identity", "--random", "--n", "1"]) == exit_code

    document = json.loads(capsys.readouterr().out)
    assert document["result"] == "FAILED"
    errored = [c for c in document["checks"] if c["result"] == "ERRORED"]
    assert len(errored) == 3
    assert all(c["error"] == type(error).__name__ for c in errored)


def test_failed_check_exits_four(capsys, monkeypatch):
    monkeypatch.setattr(specflowcli, "reference_flow", lambda model: 42.0)
    assert main(["example", "circle-k1", "--jmax", "2"]) == ExitCode.INCONSISTENT

    document = json.loads(capsys.readouterr().out)
    assert document["result"] == "FAILED"
    assert document["checks"][0]["result"] == "FAILED"
