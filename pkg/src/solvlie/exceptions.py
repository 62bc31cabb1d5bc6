"""Error hierarchy shared by all solvlie modules."""


class SolvlieError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SolvlieError):
    """Malformed arguments: wrong shapes, bad names, unparsable data."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SingularMatrixError(SolvlieError):
    pass


class NoSolutionError(SolvlieError):
    pass


class NonUniqueSolutionError(SolvlieError):
    pass


class NotRationalSplitError(SolvlieError):
    """The characteristic polynomial does not split over the rationals.

    Callers that can tolerate approximate spectra should retry in float mode.
    """


class NonDiagonalizableError(SolvlieError):
    """Rational spectrum but defective eigenspaces."""


class ValidationError(SolvlieError):
    """Semantic failure of a well-formed input (bad algebra, bad subset, ...)."""


class DegenerateMetricError(ValidationError):
    pass


class ClosureError(ValidationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StrongIwasawaError(ValidationError):
    def __init__(self, clause, message, witness=None):
        super().__init__(f"clause ({clause}): {message}")
        self.clause = clause
        self.witness = witness


class InadmissibleError(ValidationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TheoremViolationError(SolvlieError):
    """Internal consistency breach: two routes that must agree disagreed."""
