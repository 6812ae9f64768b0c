"""Exception types shared across the package."""


class SimplicialTCError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SimplicialTCError):
    """Input data violates a precondition (empty facet, foreign simplex, ...)."""


class ParseError(InvalidInput):
    """Malformed complex text or JSON; carries the offending line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DomainMismatch(SimplicialTCError):
    """Two maps (or a map and a subcomplex) do not live over the required complexes."""


class NotSimplicial(SimplicialTCError):
    """A vertex assignment sends some facet outside the codomain."""

    def __init__(self, message, facet_labels=()):
        super().__init__(message)
        self.facet_labels = tuple(facet_labels)
