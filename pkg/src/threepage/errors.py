"""Exception types shared across the package.

The CLI maps these onto exit codes: syntax errors from the PD reader are
exit 1, structural validation failures are exit 2, and verification
failures (a constructed presentation that does not pass its own checkers)
are exit 3.
"""


class PDSyntaxError(ValueError):
    """The input text is not a well-formed PD expression."""


class DiagramError(ValueError):
    """A diagram violates a structural requirement of the operation."""


class VerificationError(RuntimeError):
    """A constructed object failed one of the independent verifiers."""


class InternalError(RuntimeError):
    """An invariant the construction relies on was violated; a bug."""
