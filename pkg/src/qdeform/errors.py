"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class DivergenceError(ArithmeticError):
    """An infinite product, series or lattice sum cannot converge for these inputs."""


class ConvergenceError(ArithmeticError):
    """Truncation budget exhausted before the tail bound met the tolerance."""


class ConsistencyError(ArithmeticError):
    """Two independent evaluations of the same quantity disagree."""


class RepresentationError(ValueError):
    """Representation data violates a positivity or case requirement."""
