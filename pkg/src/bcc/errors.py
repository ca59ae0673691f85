"""Exception hierarchy shared across the package."""


class BccError(Exception):
    """Base class for every error raised by this package."""


class UnknownStateError(BccError):
    """A state id that is not a member of the graph it was queried against."""


class InvalidPairError(BccError):
    """A composition pair whose components are not valid state ids."""


class ParseError(BccError):
    """Syntax error in contract source, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class DuplicateNameError(ParseError):
    """Two contract definitions share a name."""


class IllFormedError(BccError):
    """Term rejected by the well-formedness check (open or unguarded)."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class StateExplosionError(BccError):
    """Compilation produced more states than the configured bound."""


class PairExplosionError(BccError):
    """Universe construction produced more pairs than the configured bound."""


class UniverseMismatchError(BccError):
    """An operation mixed pair sets or pairs from different universes."""
