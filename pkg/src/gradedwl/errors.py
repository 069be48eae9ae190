"""Exception hierarchy shared across the package."""


class GradedWLError(Exception):
    """Base class for all errors raised by this package."""


class VocabularyError(GradedWLError):
    """Mismatched or invalid vocabulary (propositions / channels)."""


class ModelDomainError(GradedWLError):
    """A node or channel does not belong to the model."""


class FormulaSyntaxError(GradedWLError):
    """Concrete-syntax parse failure, carries a character position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RenderSizeError(GradedWLError):
    """Rendering a type descriptor would exceed the formula size cap."""

    def __init__(self, size, cap):
        super().__init__(f"rendered formula would have {size} nodes, cap is {cap}")
        self.size = size
        self.cap = cap


class TransitionError(GradedWLError):
    """A transition function rejected its input (e.g. depth mismatch)."""

    def __init__(self, message, node=None):
        if node is not None:
            message = f"{message} (node {node})"
        super().__init__(message)
        self.node = node


class NotFullTypeError(GradedWLError):
    """Operation requires a full type descriptor (all counts exact)."""


class InputFormatError(GradedWLError):
    """Malformed model or automaton document, carries a line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GridCapError(GradedWLError):
    """Exhaustive grid enumeration would exceed the hard cap."""
