"""Exception hierarchy shared by all dcrel modules."""


class DcrError(Exception):
    """Base class for every error raised by dcrel."""


class InstanceError(DcrError, ValueError):
    """A graph, instance or gadget argument violates its invariants."""


class ParseError(InstanceError):
    """Malformed instance or bipartite text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceededError(DcrError):
    """Exhaustive evaluation would exceed the configured size cap."""

    def __init__(self, what, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has size {size}, above the cap of {cap}")
