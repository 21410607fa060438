"""Exception hierarchy shared across the package."""


class GraphError(ValueError):
    """Structurally invalid graph, edge, or operation argument."""


class TwgParseError(GraphError):
    """Malformed TWG text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DisconnectedError(GraphError):
    """Operation requires a connected graph."""


class NotATreeError(GraphError):
    """Operation requires a tree."""


class ConsistencyError(AssertionError):
    """A numerical cross-check or theorem assertion failed.

    Raised when quantities that are mathematically forced to agree
    (method agreement, Kemeny start-independence, proven strict
    inequalities) disagree beyond tolerance; signals an implementation
    bug, never bad user input.
    """
