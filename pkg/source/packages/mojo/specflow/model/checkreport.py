"""
.. module:: checkreport
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`CheckReport` object used to record the outcome of
               an identity or invariance check.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from typing import Any, Optional

import collections

from mojo.specflow.model.checkcode import CheckCode


class CheckReport:
    """
        The :class:`CheckReport` records a named check, the values it compared and its
        :class:`CheckCode`.  Values are stored in insertion order so that documents are stable.
    """
    def __init__(self, name: str, check_code: CheckCode = CheckCode.UNSET):
        self._name = name
        self._check_code = check_code
        self._values = collections.OrderedDict()
        self._reason = None
        self._error_type = None
        return

    @property
    def check_code(self) -> CheckCode:
        return self._check_code

    @property
    def error_type(self) -> Optional[type]:
        """
            The class of the exception behind an errored check.
        """
        return self._error_type

    @property
    def name(self) -> str:
        return self._name

    @property
    def passed(self) -> bool:
        return self._check_code == CheckCode.PASSED

    @property
    def reason(self) -> Optional[str]:
        return self._reason

    @property
    def values(self) -> collections.OrderedDict:
        return self._values

    def add_value(self, key: str, value: Any):
        self._values[key] = value
        return

    def mark_errored(self, reason: str, error_type: Optional[type] = None):
        """
            Marks the check as errored, the computation it depends on raised.

            :param reason: The message of the error.
            :param error_type: The class of the exception that was raised.
        """
        self._reason = reason
        self._error_type = error_type
        self._check_code = CheckCode.ERRORED
        return

    def mark_failed(self, reason: str):
        self._reason = reason
        self._check_code = CheckCode.FAILED
        return

    def mark_passed(self):
        self._check_code = CheckCode.PASSED
        return

    def as_dict(self) -> collections.OrderedDict:
        rtnval = collections.OrderedDict([
            ("name", self._name),
            ("result", self._check_code.name),
            ("values", self._values)
        ])
        if self._reason is not None:
            rtnval["reason"] = self._reason
        if self._error_type is not None:
            rtnval["error"] = self._error_type.__name__
        return rtnval
