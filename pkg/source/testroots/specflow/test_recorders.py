
import collections
import io
import json

import numpy as np
import pytest

from mojo.errors.exceptions import NotOverloadedError

from mojo.specflow.exceptions import DegenerateRank, SchemaError
from mojo.specflow.model.checkcode import CheckCode
from mojo.specflow.model.checkreport import CheckReport
from mojo.specflow.model.conventions import EndpointConvention
from mojo.specflow.recorders.jsonresultrecorder import JsonResultRecorder, finite_values
from mojo.specflow.recorders.resultrecorder import SCHEMA_VERSION, ResultRecorder
from mojo.specflow.tolerances import DEFAULT_TOLERANCES


def make_recorder(stream=None, **kwargs) -> JsonResultRecorder:
    inputs = collections.OrderedDict([("example", "unit")])
    return JsonResultRecorder(command="sfl", inputs=inputs, tolerances=DEFAULT_TOLERANCES,
                              stream=stream if stream is not None else io.StringIO(), **kwargs)


def passed_check(name: str) -> CheckReport:
    report = CheckReport(name)
    report.mark_passed()
    return report


def test_check_report_codes():
    report = CheckReport("identity")
    assert report.check_code == CheckCode.UNSET
    report.add_value("lhs", 1.0)
    report.mark_failed("lhs differs")
    assert not report.passed
    document = report.as_dict()
    assert document["result"] == "FAILED"
    assert document["reason"] == "lhs differs"
    assert document["values"] == {"lhs": 1.0}


def test_recorder_counts_and_result():
    stream = io.StringIO()
    recorder = make_recorder(stream)
    recorder.record("sfl", {"value": [1.0, 0.0], "exact_integer": 1})
    recorder.record_check(passed_check("first"))

    errored = CheckReport("second")
    errored.mark_errored("no convergence")
    recorder.record_check(errored)
    recorder.finalize()

    document = json.loads(stream.getvalue())
    assert document["schema"] == SCHEMA_VERSION
    assert document["command"] == "sfl"
    assert document["result"] == "FAILED"
    assert document["totals"] == {"errors": 1, "failed": 0, "passed": 1, "total": 2}
    assert not recorder.passed



def test_errored_check_keeps_error_class():
    recorder = make_recorder()
    errored = CheckReport("rank")
    errored.mark_errored("DegenerateRank: not separated", DegenerateRank)
    assert errored.as_dict()["error"] == "DegenerateRank"

    recorder.record_check(errored)
    recorder.record_check(passed_check("other"))
    assert recorder.error_types == [DegenerateRank]


def test_run_error_is_written_into_document():
    stream = io.StringIO()
    recorder = make_recorder(stream)
    recorder.record("partial", 1)
    recorder.record_error(SchemaError("not a family"))
    recorder.finalize()

    document = json.loads(stream.getvalue())
    assert document["result"] == "ERRORED"
    assert document["error"] == {"type": "SchemaError", "message": "not a family"}
    assert document["results"] == {"partial": 1}
    assert recorder.error_types == [SchemaError]
    assert not recorder.passed

def test_recorder_context_finalizes_on_success():
    stream = io.StringIO()
    with make_recorder(stream) as recorder:
        recorder.record_check(passed_check("only"))

    document = json.loads(stream.getvalue())
    assert document["result"] == "PASSED"
    assert recorder.passed


def test_recorder_context_skips_on_exception():
    stream = io.StringIO()
    with pytest.raises(RuntimeError):
        with make_recorder(stream):
            raise RuntimeError("boom")
    assert stream.getvalue() == ""


def test_document_keys_are_ordered():
    recorder = make_recorder()
    assert list(recorder.document.keys()) == ["schema", "command", "inputs", "tolerances", "results", "checks", "totals", "result"]


def test_encoder_handles_numeric_types():
    recorder = make_recorder()
    recorder.record("values", [np.int64(3), np.float64(0.5), np.complex128(1 + 2j), 2j, EndpointConvention.STRICT, np.eye(2)])
    document = json.loads(recorder.dumps())
    assert document["results"]["values"] == [3, 0.5, [1.0, 2.0], [0.0, 2.0], "strict", [[1.0, 0.0], [0.0, 1.0]]]


def test_finite_values():
    cleaned = finite_values({"a": [float("inf"), -float("inf")], "b": float("nan"), "c": 1.0})
    assert cleaned == {"a": ["inf", "-inf"], "b": "nan", "c": 1.0}


def test_summary_lines():
    recorder = make_recorder()
    recorder.record("sfl", {"value": [1.0, 0.0], "exact_integer": 1})
    recorder.record("eta", {"value": [0.25, -0.5]})
    recorder.record_check(passed_check("only"))
    recorder.finalize()

    lines = recorder.format_lines()
    assert "sfl: 1" in "\n".join(lines)
    assert "eta: 0.25-0.5i" in "\n".join(lines)
    assert lines[-2].strip() == "PASSED"


def test_write_tables(tmp_path):
    recorder = make_recorder()
    recorder.add_table("per_character", ["character", "count"], [[1j, 2], [1.0 + 0j, -1]])
    target = tmp_path / "tables.csv"
    recorder.write_tables(str(target))

    lines = target.read_text().splitlines()
    assert lines == ["# per_character", "character,count", "0+1j,2", "1+0j,-1"]

    recorder.write_tables(None)


def test_out_filename(tmp_path):
    target = tmp_path / "result.json"
    recorder = make_recorder(out_filename=str(target))
    recorder.finalize()
    assert json.loads(target.read_text())["result"] == "PASSED"


def test_base_recorder_must_be_derived():
    recorder = ResultRecorder(command="sfl", inputs=collections.OrderedDict(), tolerances=DEFAULT_TOLERANCES)
    with pytest.raises(NotOverloadedError):
        recorder.finalize()
    with pytest.raises(NotOverloadedError):
        recorder.write_tables("unused.csv")
