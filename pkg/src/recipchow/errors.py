"""Exception hierarchy.

Precondition failures (bad input) and internal inconsistencies (a computed
identity that should hold but did not) are kept apart so the CLI can map them
to different exit codes.
"""


class RecipChowError(Exception):
    pass


class PreconditionError(RecipChowError, ValueError):
    """Input violates a documented precondition."""


class DimensionError(PreconditionError):
    pass


class NotPlueckerError(PreconditionError):
    pass


class GenericityError(PreconditionError):
    pass


class PivotError(PreconditionError):
    """A zero leading minor stopped an unpivoted factorization."""


class InternalInconsistencyError(RecipChowError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
