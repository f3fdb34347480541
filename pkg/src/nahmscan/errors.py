"""Exception hierarchy shared by the solver, ledger and CLI."""


class NahmError(Exception):
    """Base class for all package errors."""


class InvalidInputError(NahmError, ValueError):
    """Malformed or out-of-contract input (zero polynomial, indefinite matrix, ...)."""


class NotSquareFreeError(InvalidInputError):
    """Raised by ``sturm_count`` on input with repeated roots.

    Pass the polynomial through ``squarefree_decompose`` first.
    """


class EndpointRootError(InvalidInputError):
    """An interval endpoint is itself a root; the caller must move it."""


class WrongFormError(InvalidInputError):
    """A predictor was called for a sign of b it does not cover."""


class NormalizationError(InvalidInputError):
    """A predictor expecting a >= d received the transposed orientation."""


class RefinementFailure(NahmError):
    """Certification did not finish within the precision cap.

    ``state`` carries whatever partial information was available.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class NotCertifiedError(NahmError):
    """A solution set still holds undecided entries."""


class InconsistencyError(NahmError):
    """Two independent computations of the same quantity disagree."""
