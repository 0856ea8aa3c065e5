"""Exception hierarchy shared by every module in the package."""


class GraphError(ValueError):
    """Base class for all errors raised by graph_homotopy."""


class UnknownVertexError(GraphError):
    def __init__(self, vertex, where="graph"):
        super().__init__(f"unknown vertex {vertex!r} in {where}")
        self.vertex = vertex


class InvalidMapError(GraphError):
    """A vertex assignment is not a total function between the declared vertex sets."""


class InvalidParameterError(GraphError):
    pass


class NotMorphismError(GraphError):
    """A map that was required to preserve adjacency does not."""


class MismatchError(GraphError):
    """Sources, targets or endpoints of two objects do not line up."""


class PreconditionError(GraphError):
    pass


class EmptyGraphError(PreconditionError):
    pass


class TooLargeError(GraphError):
    def __init__(self, required, cap):
        super().__init__(f"object needs {required} vertices, cap is {cap}; raise the cap to at least {required}")
        self.required = required
        self.cap = cap


class InvalidFoldError(GraphError):
    pass


class ParseError(GraphError):
    """Malformed graph/map/walk document. ``location`` names where it went wrong."""

    def __init__(self, message, location=None):
        text = message if location is None else f"{location}: {message}"
        super().__init__(text)
        self.location = location


class SearchCancelled(Exception):
    """Raised when a cooperative cancellation token is set during a search."""
