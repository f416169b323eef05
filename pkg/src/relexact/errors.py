"""Exception types shared across the package.

Every error carries a short machine-readable ``reason`` used by the CLI.
"""


class RelexactError(Exception):
    reason = "error"


class InvalidInput(RelexactError):
    reason = "invalid-input"


class DimensionMismatch(InvalidInput):
    reason = "dimension-mismatch"


class RingMismatch(InvalidInput):
    reason = "ring-mismatch"


class IllDefined(InvalidInput):
    """The matrix does not respect the relations of the source module."""

    reason = "ill-defined"


class ForeignElement(InvalidInput):
    reason = "foreign-element"


class AmbientMismatch(InvalidInput):
    reason = "ambient-mismatch"


class NotComposable(InvalidInput):
    reason = "not-composable"


class NotAComplex(InvalidInput):
    reason = "not-a-complex"


class NotSingular(InvalidInput):
    reason = "not-singular"


class SearchExhausted(RelexactError):
    """A bounded search could not produce a certified answer."""

    reason = "search-exhausted"


class GenerationExhausted(RelexactError):
    """Rejection sampling ran out of attempts."""

    reason = "generation-exhausted"
