"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, DomainError -> 2.
"""


class DomainError(ValueError):
    """Numerical or domain violation: bad evaluation point, non-finite
    intermediate, unusable grid, and the like."""


class TermLimitError(DomainError):
    """A polynomial operation would produce more terms than the budget allows."""


class ConfigError(ValueError):
    """Malformed or inconsistent model configuration."""
