"""Exception types shared across the package.

The CLI maps these onto exit codes: ValidationError -> 3, NumericalError -> 4.
"""


class ValidationError(ValueError):
    """Bad user input: sizes, ranges, config schema violations."""


class NumericalError(RuntimeError):
    """A numerical routine failed or an invariant check tripped."""
