"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`SymdynError`.
The CLI reports ``type(err).__name__`` on stderr, so class names are part of the
user-facing contract.
"""


class SymdynError(Exception):
    """Base class for domain errors."""


class InvalidArgument(SymdynError, ValueError):
    pass


# finite fields

class NotPrime(SymdynError, ValueError):
    pass


class DegreeZero(SymdynError, ValueError):
    pass


class ScanLimitExceeded(SymdynError):
    pass


class FieldMismatch(SymdynError, TypeError):
    """Arithmetic between elements of different field contexts."""


class ZeroPolynomial(SymdynError, ValueError):
    pass


class NotSeparable(SymdynError):
    pass


class NotSplitWithinBound(SymdynError):
    pass


# shifts

class NotSquare(SymdynError, ValueError):
    pass


class EntryOutOfRange(SymdynError, ValueError):
    pass


class DimensionMismatch(SymdynError, ValueError):
    pass


class DuplicateState(SymdynError, ValueError):
    pass


class EmptyShift(SymdynError):
    pass


class NotEssential(SymdynError):
    pass


class CapExceeded(SymdynError):
    pass


class LengthZero(SymdynError, ValueError):
    pass


class InconsistentTable(SymdynError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WordTooShort(SymdynError, ValueError):
    pass


class InadmissibleWord(SymdynError, ValueError):
    pass


# decompositions

class NotIrreducible(SymdynError):
    pass


class EmptyComponent(SymdynError):
    pass


class NotWeaklyConnected(SymdynError):
    pass


# spectral

class NoCycle(SymdynError):
    pass


class DidNotConverge(SymdynError):
    """Raised with the best bracket found so far attached as ``bracket``."""

    def __init__(self, max_iter, bracket):
        super().__init__(f"bracket not within tolerance after {max_iter} iterations")
        self.max_iter = max_iter
        self.bracket = bracket


class LMaxTooSmall(SymdynError, ValueError):
    pass


# zeta

class IntegralityViolation(SymdynError, ArithmeticError):
    pass


class NotBijective(SymdynError, ValueError):
    pass


class NotAutomorphism(SymdynError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# difference systems

class FrobeniusNotAutomorphism(SymdynError):
    pass


class AlphabetTooLarge(SymdynError):
    pass


# input files

class ParseError(SymdynError):
    """Malformed input text; ``line`` is 1-based, or None if not tied to a line."""

    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class InputSyntaxError(ParseError):
    pass


class SemanticError(ParseError):
    pass
