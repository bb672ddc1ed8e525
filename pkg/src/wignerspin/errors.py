"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where the quantity is defined."""


class ContractViolation(RuntimeError):
    """An intermediate object broke an invariant it is required to satisfy."""
