"""Exception types shared across the package.

The CLI maps these onto exit codes: data/format problems are user input
errors (exit 2), schema and unusable-model problems are mismatches
(exit 3), and invariant violations are internal bugs (exit 4).
"""


class SphereCoverError(Exception):
    """Base class for all package-specific errors."""


class DataFormatError(SphereCoverError):
    """Malformed input file (bad row, non-numeric value, empty file)."""


class SchemaMismatchError(SphereCoverError):
    """Dataset and model (or two datasets) disagree on attributes."""


class UnusableModelError(SphereCoverError):
    """A model that retained zero spheres cannot classify anything."""


class InvariantError(SphereCoverError):
    """An internal bookkeeping invariant was violated."""
