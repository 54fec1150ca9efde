"""
.. module:: checkcode
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the :class:`CheckCode` and :class:`ExitCode` enumerations.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from enum import IntEnum


class CheckCode(IntEnum):
    """
        Enumeration that summarizes an identity check.
    """
    UNSET = 0
    PASSED = 1
    ERRORED = 3
    FAILED = 4


class ExitCode(IntEnum):
    """
        Process exit codes of the ``specflow`` command.
    """
    SUCCESS = 0
    VALIDATION = 2
    NUMERICAL = 3
    INCONSISTENT = 4
