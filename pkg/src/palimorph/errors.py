"""Exception hierarchy for the toolkit.

All toolkit errors derive from :class:`PaliError` so callers can catch
everything with one clause; parse-type errors additionally derive from
``ValueError``.
"""


class PaliError(Exception):
    """Base class for all toolkit errors."""


class RuleSyntaxError(PaliError, ValueError):
    """Base class for errors raised while parsing rule or dictionary files."""


class MalformedLineError(RuleSyntaxError):
    """A dictionary-file line is neither a constant, an operation, nor a comment."""


class UnknownOperationError(RuleSyntaxError):
    """An operation was declared or invoked that has no built-in implementation."""


class UnresolvedConstantError(RuleSyntaxError):
    """A rule references a constant that the dictionary file does not define."""


class DanglingBackReferenceError(RuleSyntaxError):
    """A back-reference index exceeds the number of grouping expressions."""


class UnbalancedParenthesesError(RuleSyntaxError):
    """A group or operation call is not closed."""


class DomainError(PaliError, ValueError):
    """An operation was applied to a phoneme outside its domain."""


class NotAtomicError(PaliError, ValueError):
    """A rule expected to be atomic contains groups, constants or references."""


class UnreversibleRuleError(PaliError):
    """A rule cannot be reversed with the information available."""


class TooFewWordsError(PaliError, ValueError):
    """The sandhi merger needs at least two words."""


class LexiconUnavailableError(PaliError):
    """An operation required a lexicon but none is open."""


class MalformedDocumentError(PaliError, ValueError):
    """A grammar document is not structurally well-formed."""


class EmptyParadigmError(MalformedDocumentError):
    """A grammar document contains no endings."""


class MalformedEntryError(PaliError, ValueError):
    """An irregular-file line does not match ``form{key=value, ...}``."""


class UnknownWordClassError(PaliError, KeyError):
    """No paradigm is loaded for the requested word class."""


class RuleNotApplicableError(PaliError, ValueError):
    """A stem-derivation rule does not apply to the given lemma."""


class UnknownCollectionError(PaliError, KeyError):
    """The lexicon has no collection of the requested name."""


class IoFailureError(PaliError, OSError):
    """The lexicon store could not read or write its backing files."""


class MissingWordKeyError(PaliError, ValueError):
    """A record inserted into the lexicon lacks the ``word`` key."""


class EmptyInputError(PaliError, ValueError):
    """The console received an empty input line."""
