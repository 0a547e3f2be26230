"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class RainbowError(Exception):
    """Base class for all errors raised by rainbowpan."""


class UsageError(RainbowError, ValueError):
    """Invalid ids, ranges or malformed input. CLI exit code 2."""


class FamilyFormatError(UsageError):
    """A family JSON document violates the canonical format."""


class PreconditionError(RainbowError):
    """An operation was called outside the hypothesis it relies on."""


class GenerationError(RainbowError):
    """A generator could not reach the requested threshold. CLI exit code 3."""
