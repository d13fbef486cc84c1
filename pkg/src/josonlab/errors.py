"""Exception types shared across the package."""


class NumericsError(RuntimeError):
    """A numerical procedure failed to reach its accuracy or convergence target."""
