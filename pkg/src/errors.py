"""Errors

This module contains the exception hierarchy shared by every invforge module.

Each exception carries a `name` equal to the identifier used in diagnostics, so
the command line front end can print `error: <name>: <message>` without knowing
the concrete class.
"""


class InvForgeError(Exception):
    """Base class for every error raised by invforge."""

    name = "InvForgeError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def diagnostic(self) -> str:
        """
            Builds the one-line diagnostic printed by the command line front end.

            @return: The diagnostic line.
        """
        return f"{self.name}: {self.message}"


class ConfigError(InvForgeError):
    name = "ConfigError"


class OutputError(InvForgeError):
    name = "OutputError"


# Field construction and arithmetic

class NotPrime(InvForgeError):
    name = "NotPrime"


class NotIrreducible(InvForgeError):
    name = "NotIrreducible"


class DegreeMismatch(InvForgeError):
    name = "DegreeMismatch"


class FieldMismatch(InvForgeError):
    name = "FieldMismatch"


class FieldDivisionByZero(InvForgeError):
    name = "DivisionByZero"


class NotAGenerator(InvForgeError):
    name = "NotAGenerator"


class LimitExceeded(InvForgeError):
    name = "LimitExceeded"


# Polynomials

class PolySyntaxError(InvForgeError):
    name = "SyntaxError"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CoefficientOutOfRange(InvForgeError):
    name = "CoefficientOutOfRange"


class ZeroPolynomial(InvForgeError):
    name = "ZeroPolynomial"


class ExponentOutOfRange(InvForgeError):
    name = "ExponentOutOfRange"


# Constructions

class BadCongruence(InvForgeError):
    name = "BadCongruence"


class CharacteristicTwo(InvForgeError):
    name = "CharacteristicTwo"


class IndexOutOfRange(InvForgeError):
    name = "IndexOutOfRange"


class NotADivisor(InvForgeError):
    name = "NotADivisor"


class BadFactorization(InvForgeError):
    name = "BadFactorization"


class NotCoprime(InvForgeError):
    name = "NotCoprime"


class OddCofactor(InvForgeError):
    name = "OddCofactor"


class NoMatchingCase(InvForgeError):
    name = "NoMatchingCase"


class UnverifiedParams(InvForgeError):
    name = "UnverifiedParams"


# Analysis

class NotAPermutation(InvForgeError):
    name = "NotAPermutation"


class UnsupportedFamily(InvForgeError):
    name = "UnsupportedFamily"
