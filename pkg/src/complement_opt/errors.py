"""Exception types shared across the package."""


class DomainError(ValueError):
    """A physical parameter is outside its admissible domain."""


class RangeError(ValueError):
    """An index (collision count, probe index) is out of range."""


class NormalizationError(ValueError):
    """A state vector deviates from unit norm beyond tolerance."""


class DegenerateOutcomeError(ValueError):
    """Post-selection on an outcome of (numerically) zero probability."""
