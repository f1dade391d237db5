"""Exception hierarchy shared by the library and the CLI."""


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class DegenerateSampleError(DomainError):
    """The sample has zero spread, so a scale-based construction is undefined."""


class DegenerateEstimateError(DegenerateSampleError):
    """The likelihood supremum is approached at sigma = 0 and is not attained."""
