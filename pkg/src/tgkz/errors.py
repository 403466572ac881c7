"""Error types shared across the package.

Every error carries a short machine-readable code; the CLI maps codes to
exit codes (2 hypothesis/refusal, 3 parse, 4 budget) and report notes.
"""


class TgkzError(Exception):
    code = "ERROR"

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class EmptyConeError(TgkzError):
    code = "EMPTY_CONE"


class NotPointedError(TgkzError):
    code = "NOT_POINTED"


class HypothesisError(TgkzError):
    """Raised when a command is refused because a standing hypothesis fails."""

    code = "HYPOTHESIS_FAILED"


class LatticeMismatchError(TgkzError):
    code = "LATTICE_MISMATCH"


class NotSaturatedError(TgkzError):
    code = "NOT_SATURATED"


class NotGradedError(TgkzError):
    code = "NOT_GRADED"


class SliceTooSmallError(TgkzError):
    code = "SLICE_TOO_SMALL"


class BudgetExceededError(TgkzError):
    code = "BUDGET_EXCEEDED"


class SpecError(TgkzError):
    """Problem-spec parsing/validation failure.

    code is one of MALFORMED, DIMENSION_MISMATCH, UNSUPPORTED_CHARACTER_VALUE,
    UNSUPPORTED_MODULE.
    """

    def __init__(self, message, code="MALFORMED", **context):
        super().__init__(message, **context)
        self.code = code
