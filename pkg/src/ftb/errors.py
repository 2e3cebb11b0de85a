"""Exception types shared by the solver modules."""


class ValidationError(ValueError):
    """Malformed input: bad instance data, bad arguments, violated preconditions."""


class InfeasibleError(ValueError):
    """The instance admits no feasible solution for the requested parameters."""


class CapExceededError(ValidationError):
    """An exhaustive search was asked to run beyond its size cap."""
