"""Exception taxonomy shared across the package."""


class GenShiftError(Exception):
    """Base class for every error raised by this package."""


class ConstructionError(GenShiftError, ValueError):
    """Invalid construction input: bad image table, bad size, bad rule param."""


class DomainError(GenShiftError, ValueError):
    """Index outside an index set, or two objects with mismatched domains."""


class ParseError(GenShiftError, ValueError):
    """Malformed map or vector document."""


class IntegrityError(GenShiftError, RuntimeError):
    """A symbolic rule contradicts its own declared certificate."""


class UnsupportedError(GenShiftError, RuntimeError):
    """Operation precondition not met for this map."""


class SearchExhaustedError(GenShiftError, RuntimeError):
    """A windowed search hit its cap before finding what it needed."""


class NumericError(GenShiftError, RuntimeError):
    """A numerical routine failed to converge."""
