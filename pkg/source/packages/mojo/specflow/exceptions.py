"""
.. module:: exceptions
    :platform: Darwin, Linux, Unix, Windows
    :synopsis: Module containing the exception hierarchy raised by the spectral flow laboratory.

.. moduleauthor:: Myron Walker <myron.walker@gmail.com>
"""

__author__ = "Myron Walker"
__copyright__ = "Copyright 2023, Myron W Walker"
__credits__ = []


class SpecflowError(Exception):
    """
        Base class for all errors raised by the :mod:`mojo.specflow` package.
    """


class ValidationError(SpecflowError):
    """
        Raised when an input, a scenario or a requested combination of inputs is not valid.
        The command line runner maps this family of errors to exit code 2.
    """


class NumericalFailure(SpecflowError):
    """
        Raised when a computation could not be certified numerically.  The command line
        runner maps this family of errors to exit code 3.
    """


class InternalInconsistency(SpecflowError):
    """
        Raised when two independent evaluations of the same quantity disagree.  This is
        never resolved silently; the command line runner maps it to exit code 4.
    """


class InvalidInput(ValidationError):
    """
        Raised when a matrix, family or parameter violates its documented invariants.
    """


class InvalidConcat(ValidationError):
    """
        Raised when two families are concatenated whose joining blocks do not agree.
    """


class InvalidPartition(ValidationError):
    """
        Raised when a flow partition is used with a family it was not certified for.
    """


class NotEquivariant(ValidationError):
    """
        Raised when an operator does not commute with the symmetry it is paired with.
    """


class NotInvariant(ValidationError):
    """
        Raised when a subspace is not invariant under the symmetry used to trace over it.
    """


class ClusterAmbiguity(ValidationError):
    """
        Raised when two eigenvalues of a symmetry are closer than the cluster tolerance but
        still numerically distinct.
    """


class OutOfScope(ValidationError):
    """
        Raised when a model asks for a geometric term that is only recorded analytically.
    """


class UseNumericOracle(ValidationError):
    """
        Raised by the closed form eta evaluation for spectra it has no continuation formula for.
    """


class DegenerateEndpoint(ValidationError):
    """
        Raised when a finite dimensional formula needs an invertible endpoint and the endpoint
        of a sampled family has numerical kernel.
    """


class SchemaError(ValidationError):
    """
        Raised when a JSON family or scenario document does not follow the schema.
    """


class PartitionFailure(NumericalFailure):
    """
        Raised when a flow partition cannot be certified within the refinement budget.
    """


class NoConvergence(NumericalFailure):
    """
        Raised when an extrapolation does not settle within its residual tolerance.
    """


class DegenerateRank(NumericalFailure):
    """
        Raised when a rank decision is not separated from its threshold by the required gap ratio.
    """


class SpectralBoundaryCollision(NumericalFailure):
    """
        Raised when a spectral window endpoint lies on (or too close to) the spectrum, which
        signals that the partition must be refined.
    """
