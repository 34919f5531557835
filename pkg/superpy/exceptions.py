"""Exceptions raised by superpy.

Every error the library raises on purpose derives from `SuperpyError`, so
callers (the command line in particular) can tell domain failures apart from
programming errors. Malformed spec documents are reported by pydantic as
`pydantic.ValidationError` instead.

Classes:
    SuperpyError: Base class of all library errors.
    DomainMismatchError: Operands live in different scalar domains or algebras.
    NonInvertibleError: Inversion of a zero scalar or a non-unit element.
    SpecError: An algebra spec describes no valid superalgebra.
    ParseError: Element or literal text does not follow the grammar.
    UnsupportedError: The request needs enumeration over an infinite field.
    PreconditionError: An operation was called outside its domain.
    CapExceededError: A factorization search went deeper than its cap.
    UndecidedError: A tri-state answer was undecided but a boolean was requested.
"""


class SuperpyError(Exception):
    """Base class for all errors raised by superpy."""


class DomainMismatchError(SuperpyError):
    """Raised when operands belong to different scalar domains or algebras."""


class NonInvertibleError(SuperpyError):
    """Raised when inverting zero, a non-unit integer, or a non-unit element."""


class SpecError(SuperpyError):
    """Raised when a spec is well formed but does not define a superalgebra.

    Examples are relations that are not parity-homogeneous and relation sets
    that generate the unit ideal.
    """


class ParseError(SuperpyError):
    """Raised when text does not follow the element or literal grammar.

    Attributes:
        position (int): Zero-based offset of the offending character.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedError(SuperpyError):
    """Raised when an exact answer would need enumerating an infinite field."""


class PreconditionError(SuperpyError):
    """Raised when an operation's precondition does not hold."""


class CapExceededError(SuperpyError):
    """Raised when a factorization search exceeds its recursion cap."""


class UndecidedError(SuperpyError):
    """Raised when a decision over an infinite field stays undecided."""
