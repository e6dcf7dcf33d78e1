"""Exception hierarchy shared by all modules."""


class PoissonQuadError(Exception):
    """Base class for errors raised by this package."""


class ParameterDomainError(PoissonQuadError, ValueError):
    """Family parameters or arguments outside their admissible domain."""


class OrderTooLargeError(PoissonQuadError, ValueError):
    pass


class SingularKernelError(PoissonQuadError, ValueError):
    pass


class UnsupportedArgumentError(PoissonQuadError, ValueError):
    """A kernel was asked for a z value outside its supported set."""


class ConvergenceDomainError(PoissonQuadError, ValueError):
    """Appell F4 arguments fall outside the guarded convergence region."""


class NumericalFailureError(PoissonQuadError, ArithmeticError):
    pass


class NonConvergenceError(NumericalFailureError):
    pass


class BesselOverflowError(PoissonQuadError, OverflowError):
    """Result not representable as a double; ``log_value`` holds its logarithm."""

    def __init__(self, message, log_value):
        super().__init__(message)
        self.log_value = log_value


class EvaluationError(PoissonQuadError, ValueError):
    """A sampled function returned a non-finite value at a node."""

    def __init__(self, message, node_index):
        super().__init__(message)
        self.node_index = node_index


class AccuracyError(NumericalFailureError):
    """Adaptive integration stopped before reaching the requested tolerance."""

    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class InsufficientNodesError(PoissonQuadError, ValueError):
    pass
