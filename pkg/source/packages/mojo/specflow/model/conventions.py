"""
.. module:: conventions
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the enumerations that name the conventions a result was computed under.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


from enum import Enum


class EndpointConvention(str, Enum):
    """
        The terminal APS condition: ``strict`` admits E_(0,∞)(B(T)), ``inclusive`` admits E_[0,∞)(B(T)).
    """
    STRICT = "strict"
    INCLUSIVE = "inclusive"


class OperatorVariant(str, Enum):
    """
        The model operator: ``lorentzian`` is ∂_t − iB, ``riemannian`` is ∂_t + B.
    """
    LORENTZIAN = "lorentzian"
    RIEMANNIAN = "riemannian"


class ActionConvention(str, Enum):
    """
        How the circle group acts on Fourier mode spaces.
    """
    FIBER = "fiber"
    FIBER_BASE = "fiber-base"
