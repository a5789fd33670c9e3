"""Exception types shared across the package."""


class GraphmarkError(Exception):
    """Base class for all package-specific errors."""


class TamperError(GraphmarkError):
    """An integrity check failed: the artifact is not a clean codec output.

    Raised by decoders, validators, and recovery routines when a permutation
    or graph fails a structural property. The message names the violated
    property so callers can report it.
    """


class FormatError(GraphmarkError):
    """A serialized artifact is not well-formed at the file level."""
