"""Exception hierarchy for the engine.

Every error raised on malformed input derives from MsalgError, so callers
(in particular the CLI) can distinguish engine diagnostics from bugs.
"""


class MsalgError(Exception):
    """Base class for all diagnosable errors."""


class UnknownSort(MsalgError):
    pass


class UnknownVariable(MsalgError):
    pass


class UnknownOperation(MsalgError):
    pass


class ArityMismatch(MsalgError):
    pass


class SortMismatch(MsalgError):
    pass


class ContextMismatch(MsalgError):
    pass


class DomainMismatch(MsalgError):
    pass


class IndexOutOfRange(MsalgError):
    pass


class NonCanonicalContext(MsalgError):
    pass


class SignatureMismatch(MsalgError):
    pass


class TypingError(MsalgError):
    pass


class DepthLimitExceeded(MsalgError):
    pass


class TableTooLarge(MsalgError):
    pass


class BoundTooLarge(MsalgError):
    pass


class UnboundCloneVariable(MsalgError):
    pass


class EndpointMismatch(MsalgError):
    pass


class ModelNotAModel(MsalgError):
    pass


class NotAHomomorphism(MsalgError):
    """Internal assertion failure: a map that must be a homomorphism is not.

    This signals an engine bug, never bad user input.
    """


class UnresolvedName(MsalgError):
    pass


class SpecSyntaxError(MsalgError):
    """Parse error carrying a source location."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
