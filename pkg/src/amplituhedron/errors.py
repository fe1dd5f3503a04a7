"""Exception hierarchy shared by the library and the CLI."""


class ValidationError(ValueError):
    """Input rejected: malformed, not totally positive, not generic."""


class ClaimFailure(RuntimeError):
    """A mathematical claim under verification did not hold."""


class DegenerateError(ValueError):
    """A join or meet was requested for incident (non-general) operands."""
