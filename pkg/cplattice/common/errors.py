"""
This module defines the exception hierarchy of the calculator.

Every exception carries the exit code the command-line front end reports for it,
so library code only has to raise and `cplattice.cli` only has to catch
`CPLatticeError`.

Classes
-------
CPLatticeError : Root of the hierarchy.
InputValidationError : Malformed or inconsistent correspondence data (exit code 1).
PreconditionError : An operation was called outside its domain (exit code 2).
ConsistencyError : A postcondition that the theory guarantees failed (exit code 2).
InputReadError : The input could not be read or decoded (exit code 3).
"""

from typing import Optional


class CPLatticeError(Exception):
    """
    Base class for all errors raised by the package.

    Attributes
    ----------
    exit_code : int
        Process exit code used by the command-line interface.
    """
    exit_code = 2

    @property
    def kind(self) -> str:
        """
        Returns the class name, which is what the CLI prints before the message.
        """
        return type(self).__name__


class InputValidationError(CPLatticeError, ValueError):
    exit_code = 1


class DuplicateLabel(InputValidationError):
    pass


class UnknownLabel(InputValidationError):
    pass


class UnknownVertex(InputValidationError):
    pass


class FullnessViolation(InputValidationError):
    pass


class NegativeOrMalformedNumber(InputValidationError):
    pass


class SchemaError(InputValidationError):
    """
    The input document does not match the expected layout.

    Attributes
    ----------
    field : str
        Slash-separated path of the offending field ("$" for the document root).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class PreconditionError(CPLatticeError):
    exit_code = 2


class NotPositivelyInvariant(PreconditionError):
    pass


class NotTPair(PreconditionError):
    pass


class NotOPair(NotTPair):
    """
    A T-pair was given where an O-pair is required.
    """


class NotCompactlyActing(PreconditionError):
    pass


class SizeLimit(PreconditionError):
    pass


class NotRowFinite(PreconditionError):
    pass


class NotAcyclic(PreconditionError):
    pass


class NotABimodule(PreconditionError):
    pass


class ConsistencyError(CPLatticeError):
    exit_code = 2


class InputReadError(CPLatticeError):
    exit_code = 3


class ParseError(InputReadError):
    """
    The input is not a well-formed JSON document.

    Attributes
    ----------
    line : int | None
        1-based line of the first offending character.
    column : int | None
        1-based column of the first offending character.
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
