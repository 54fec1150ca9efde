"""
.. module:: resultrecorder
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`ResultRecorder` object.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []



from typing import Any, List, Optional, Sequence

from types import TracebackType

import collections
import copy
import threading

from mojo.errors.exceptions import NotOverloadedError

from mojo.xmods.xformatting import indent_lines_list

from mojo.specflow.model.checkcode import CheckCode
from mojo.specflow.model.checkreport import CheckReport
from mojo.specflow.tolerances import Tolerances

SCHEMA_VERSION = "specflow/1"


class ResultRecorder:
    """
        The :class:`ResultRecorder` object is the base class object that establishes the API patterns
        for recorders of different formats to use when writing a specflow result document.
    """
    def __init__(self, *, command: str, inputs: collections.OrderedDict, tolerances: Tolerances):
        """
            Initializes an instance of a ResultRecorder with the scenario being run.

            :param command: The name of the command that produced the results.
            :param inputs: The scenario inputs echoed into the document.
            :param tolerances: The tolerances actually used.
        """

        self._command = command

        self._error_count = 0
        self._failure_count = 0
        self._pass_count = 0
        self._total_count = 0

        self._finalized = False

        self._tables = collections.OrderedDict()
        self._failures: List[str] = []
        self._error_types: List[type] = []

        self._document = collections.OrderedDict((
            ("schema", SCHEMA_VERSION),
            ("command", command),
            ("inputs", inputs),
            ("tolerances", tolerances.as_dict()),
            ("results", collections.OrderedDict()),
            ("checks", []),
            ("totals", None),
            ("result", "RUNNING")
        ))

        self._lock = threading.Lock()

        return

    def __enter__(self):
        return self

    def __exit__(self, ex_type: type, ex_inst: Exception, ex_tb: TracebackType) -> bool:
        """
            Finalizes the document when the recording scope is left.

            :param ex_type: The type associated with the exception being raised.
            :param ex_inst: The exception instance of the exception being raised.
            :param ex_tb: The traceback associated with the exception being raised.

            :returns: Returns true if an exception was handled and should be suppressed.
        """
        if not self._finalized and ex_type is None:
            self.finalize()
        return False

    @property
    def document(self) -> collections.OrderedDict:
        """
            Get a copy of the result document.
        """
        rtnval = None

        self._lock.acquire()
        try:
            rtnval = copy.deepcopy(self._document)
        finally:
            self._lock.release()

        return rtnval

    @property
    def error_types(self) -> List[type]:
        """
            The exception classes behind the errored checks and the run error, in recording order.
        """
        return list(self._error_types)

    @property
    def failure_count(self) -> int:
        return self._failure_count

    @property
    def passed(self) -> bool:
        return self._error_count == 0 and self._failure_count == 0 and "error" not in self._document

    @property
    def tables(self) -> collections.OrderedDict:
        return self._tables

    def add_table(self, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]):
        """
            Adds a flat table for the CSV view of the results.
        """
        self._lock.acquire()
        try:
            self._tables[name] = (list(header), [list(r) for r in rows])
        finally:
            self._lock.release()
        return

    def finalize(self):
        """
            Finalizes the check counters and status of the run.
        """

        self._lock.acquire()
        try:

            self._finalized = True

            self._document["totals"] = collections.OrderedDict((
                ("errors", self._error_count),
                ("failed", self._failure_count),
                ("passed", self._pass_count),
                ("total", self._total_count)
            ))

            if "error" in self._document:
                self._document["result"] = "ERRORED"
            elif self._error_count > 0 or self._failure_count > 0:
                self._document["result"] = "FAILED"
            else:
                self._document["result"] = "PASSED"

        finally:
            self._lock.release()

        self.update_summary()

        return

    def format_lines(self) -> List[str]:
        lines = [
            " ============== Specflow Summary ============== ",
            "   Command: {}".format(self._command),
        ]

        results = self._document["results"]
        if len(results) > 0:
            lines.append(" ------------------ Results ------------------ ")
            value_lines = []
            for key, value in results.items():
                value_lines.append("{}: {}".format(key, _summarize(value)))
            lines.extend(indent_lines_list(value_lines, 1))

        if len(self._failures) > 0:
            lines.append(" ----------------- Failures ------------------ ")
            lines.extend(indent_lines_list(self._failures, 1))

        lines.extend([
            " ------------------ Detail ------------------- ",
            "       Errors: {}".format(self._error_count),
            "       Failed: {}".format(self._failure_count),
            "       Passed: {}".format(self._pass_count),
            "        Total: {}".format(self._total_count),
            " ============================================= ",
            "   {}".format(self._document["result"]),
            " ============================================= ",
        ])

        return lines

    def record(self, key: str, value: Any):
        """
            Records a named result value in the document.

            :param key: The name of the result.
            :param value: A JSON compatible value, usually the ``as_dict()`` of a model object.
        """
        self._lock.acquire()
        try:
            self._document["results"][key] = value
        finally:
            self._lock.release()
        return

    def record_error(self, error: Exception):
        """
            Records the error that stopped the command.  The document keeps the results recorded
            before it.

            :param error: The exception raised by the command.
        """
        self._lock.acquire()
        try:
            self._document["error"] = collections.OrderedDict((
                ("type", type(error).__name__),
                ("message", str(error))
            ))
            self._error_types.append(type(error))
            self._failures.append("{}: {}".format(type(error).__name__, error))
        finally:
            self._lock.release()

        return

    def record_check(self, report: CheckReport):
        """
            Records a check report and counts its outcome.

            :param report: The check report to be recorded.
        """
        self._lock.acquire()
        try:
            self._document["checks"].append(report.as_dict())
            self._total_count += 1

            check_code = report.check_code
            if check_code == CheckCode.PASSED:
                self._pass_count += 1
            elif check_code == CheckCode.ERRORED:
                self._error_count += 1
                self._failures.append("{}: {}".format(report.name, report.reason))
                if report.error_type is not None:
                    self._error_types.append(report.error_type)
            else:
                self._failure_count += 1
                self._failures.append("{}: {}".format(report.name, report.reason))
        finally:
            self._lock.release()

        return

    def update_summary(self): # pylint: disable=no-self-use
        """
            Writes out the result document.
        """
        raise NotOverloadedError("The 'update_summary' method must be overridden by derived 'ResultRecorder' objects.") from None

    def write_tables(self, filename: Optional[str]):
        """
            Writes the flat tables of the results.

            :param filename: The destination of the tables.
        """
        raise NotOverloadedError("The 'write_tables' method must be overridden by derived 'ResultRecorder' objects.") from None


def _summarize(value: Any) -> str:
    if isinstance(value, dict):
        if "exact_integer" in value:
            return str(value["exact_integer"])
        if "value" in value and isinstance(value["value"], list) and len(value["value"]) == 2:
            re_part, im_part = value["value"]
            return "{:.12g}{:+.12g}i".format(re_part, im_part)
        return "{...}"
    if isinstance(value, list):
        return "[{} items]".format(len(value))
    return str(value)
