"""Errors"""
from typing import Optional, Sequence


class ConcatReachError(Exception):
    """Base error of the library"""


class AutomatonError(ConcatReachError, ValueError):
    """Malformed transformation, DFA or letter"""


class NotationError(AutomatonError):
    """Transformation notation which cannot be parsed or is not a valid term"""


class ParseError(ConcatReachError, ValueError):
    """Text format error (DFA or certificate files)"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CertificateError(ConcatReachError):
    """Certificate precondition violated or certificate not applicable"""


class CyclicConstraintError(CertificateError):
    """Precedence constraints contain a cycle"""

    def __init__(self, cycle: Sequence[int]):
        self.cycle = list(cycle)
        super().__init__(
            "constraint cycle: " + " -> ".join(str(q) for q in self.cycle)
        )


class FamilyConstraintError(ConcatReachError, ValueError):
    """Witness family parameters violate the family constraints"""


class VerificationError(AssertionError):
    """Verification report which does not hold"""
