"""Exception hierarchy shared by all modules.

Domain errors are faults in the *input* (exit code 1 at the CLI); format
errors are unparseable text (exit code 2); internal soundness errors signal
that a search guaranteed to succeed came up empty, i.e. a bug (exit code 3).
"""


class DomainError(Exception):
    """Input violates an operation's precondition."""


class MalformedInputError(DomainError):
    """A letter's type index exceeds the declared alphabet size."""


class NotInLanguageError(DomainError):
    """The word (or tuple concatenation) is not balanced."""


class PreconditionError(DomainError):
    """Structural precondition violated (reducible, short component, ...)."""


class ParityError(DomainError):
    """A split target's parity does not match the necklace's amounts."""


class UnsupportedGrammarError(DomainError):
    """The grammar has a length-decreasing rule; enumeration would be incomplete."""


class BoundExceededError(DomainError):
    """Instance exceeds the configured exhaustive-scan bound."""


class FormatError(ValueError):
    """Unparseable word/tuple text."""


class InternalSoundnessError(Exception):
    """A theorem-guaranteed search failed; this is a bug, not a bad input."""
