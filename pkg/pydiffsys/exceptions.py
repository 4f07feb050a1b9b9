# -*- coding: utf-8 -*-
"""
Errors raised by pydiffsys.

Every error carries the exit code the command line maps it to:
2 for bad input, 3 for violated preconditions, 4 for numeric failures.
"""


class PyDiffSysError(RuntimeError):
    exit_code = 1


class InputError(PyDiffSysError):
    exit_code = 2


class PreconditionError(PyDiffSysError):
    exit_code = 3


class NumericError(PyDiffSysError):
    exit_code = 4


# input errors

class ParseError(InputError):

    def __init__(self, message, location=None):
        if location is not None:
            message = '{}: {}'.format(location, message)
        super().__init__(message)
        self.location = location


class ConfigError(InputError):
    pass


class SuiteInapplicable(InputError):
    pass


# precondition violations

class ZeroDeterminant(PreconditionError):
    pass


class ResonanceError(PreconditionError):
    pass


class NonDiagonalizable(PreconditionError):
    pass


class SingularGauge(PreconditionError):
    pass


class NotUnitOffOrigin(PreconditionError):
    pass


class ProgressImpossible(PreconditionError):
    pass


class MultipleZeroDetected(PreconditionError):
    pass


class DomainError(PreconditionError):
    pass


class SingularityOnPath(PreconditionError):
    pass


class CongruentRoots(PreconditionError):
    pass


# numeric failures

class RootClusterAmbiguous(NumericError):
    pass


class PrecisionExhausted(NumericError):
    pass


class FitResidualTooLarge(NumericError):
    pass


class ZeroCountMismatch(NumericError):
    pass


class NormalizationLost(NumericError):
    pass


class PipelineDiverged(NumericError):
    pass


# warnings

class BranchCutCrossing(UserWarning):
    """
    Emitted when a principal logarithm would jump along an evaluation
    path. The evaluation continues on the continuous branch; `branch`
    holds the winding data.
    """

    def __init__(self, message, branch=None):
        super().__init__(message)
        self.branch = branch or {}


class HypothesisWarning(UserWarning):
    pass
