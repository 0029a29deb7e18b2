"""Exception types shared across the package."""

import numpy as np


class KronresError(Exception):
    """Base class for domain errors raised by this package.

    ``nodes`` holds the 0-based node indices the error refers to, if any.
    """

    category = "precondition"

    def __init__(self, message, nodes=()):
        super().__init__(message)
        self.nodes = tuple(int(i) for i in nodes)


class GraphFormatError(KronresError, ValueError):
    """Malformed graph input (bad index, weight, duplicate edge, file syntax)."""

    category = "parse"


class PreconditionError(KronresError, ValueError):
    """A structural hypothesis of an operation does not hold."""


class NotReachableError(PreconditionError):
    """The boundary set is not a reachable subset of the graph."""


class NotStronglyConnectedError(PreconditionError):
    pass


class NotBalancedError(PreconditionError):
    pass


class SingularMatrixError(KronresError, np.linalg.LinAlgError):
    """A matrix that must be inverted is singular to working precision."""

    category = "numerical"


class SimulationError(KronresError):
    """A Monte-Carlo run produced no usable walks."""

    category = "numerical"
