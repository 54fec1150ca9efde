"""
.. module:: jsonresultrecorder
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`JsonResultRecorder` object.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []



from typing import Any, Optional, TextIO

import collections
import csv
import json
import math
import sys

from enum import Enum

import numpy as np

from mojo.specflow.recorders.resultrecorder import ResultRecorder
from mojo.specflow.tolerances import Tolerances


class JsonResultEncoder(json.JSONEncoder):

    def default(self, obj) -> Any:

        cval = None

        if isinstance(obj, complex):
            cval = [obj.real, obj.imag]
        elif isinstance(obj, Enum):
            cval = obj.value
        elif isinstance(obj, np.integer):
            cval = int(obj)
        elif isinstance(obj, np.floating):
            cval = float(obj)
        elif isinstance(obj, np.complexfloating):
            cval = [float(obj.real), float(obj.imag)]
        elif isinstance(obj, np.ndarray):
            cval = obj.tolist()
        else:
            cval = json.JSONEncoder.default(self, obj)

        return cval


def finite_values(value: Any) -> Any:
    """
        Replaces non finite floats, which JSON cannot carry, with the strings "inf", "-inf" and
        "nan".
    """
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return collections.OrderedDict((k, finite_values(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [finite_values(v) for v in value]
    return value


class JsonResultRecorder(ResultRecorder):
    """
        The :class:`JsonResultRecorder` object writes the result document in JSON format.
    """
    def __init__(self, *, command: str, inputs: collections.OrderedDict, tolerances: Tolerances,
                 out_filename: Optional[str] = None, stream: Optional[TextIO] = None):
        """
            Initializes the :class:`JsonResultRecorder` object.

            :param command: The name of the command that produced the results.
            :param inputs: The scenario inputs echoed into the document.
            :param tolerances: The tolerances actually used.
            :param out_filename: Optional file the document is written to instead of the stream.
            :param stream: The stream the document is written to, stdout by default.
        """
        super(JsonResultRecorder, self).__init__(command=command, inputs=inputs, tolerances=tolerances)
        self._out_filename = out_filename
        self._stream = stream
        return

    def dumps(self) -> str:
        """
            The result document as JSON text.
        """
        return json.dumps(finite_values(self.document), indent=2, cls=JsonResultEncoder)

    def update_summary(self):
        """
            Writes out the result document.
        """

        text = self.dumps()

        if self._out_filename is not None:
            with open(self._out_filename, 'w') as dout:
                dout.write(text)
                dout.write("\n")
        else:
            stream = self._stream if self._stream is not None else sys.stdout
            stream.write(text)
            stream.write("\n")
            stream.flush()

        return

    def write_tables(self, filename: Optional[str]):
        """
            Writes every table as a CSV section headed by a ``# <table name>`` line.

            :param filename: The CSV destination.
        """
        if filename is None:
            return

        with open(filename, 'w', newline='') as cout:
            writer = csv.writer(cout)
            for name, (header, rows) in self.tables.items():
                cout.write("# {}\n".format(name))
                writer.writerow(header)
                for row in rows:
                    writer.writerow([_cell(v) for v in row])

        return


def _cell(value: Any) -> Any:
    if isinstance(value, complex):
        return "{:.15g}{:+.15g}j".format(value.real, value.imag)
    if isinstance(value, Enum):
        return value.value
    return value
