class DomainError(ValueError):
    """A precondition on the mathematical input is violated."""


class DimensionError(DomainError):
    pass


class DegenerateLatticeError(DomainError):
    pass


class IdentityFailure(AssertionError):
    """A computed identity that must hold did not; indicates an arithmetic bug."""
