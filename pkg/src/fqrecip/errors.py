"""Exception hierarchy shared by every module of the package."""


class FqError(Exception):
    """Base class for all library errors."""


class ValidationError(FqError, ValueError):
    """Input that parses but violates a mathematical precondition."""


class NotOddPrime(ValidationError):
    pass


class ReducibleModulus(ValidationError):
    pass


class MissingModulus(ValidationError):
    pass


class InvalidGenerator(ValidationError):
    pass


class SpecMismatch(ValidationError):
    pass


class DivisionByZero(FqError, ZeroDivisionError):
    pass


class ZeroElement(ValidationError):
    pass


class DNotDividing(ValidationError):
    pass


class NotRootOfUnity(ValidationError):
    pass


class ConstantInput(ValidationError):
    pass


class NotIrreducible(ValidationError):
    pass


class EqualPrimes(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class DivisibleInput(ValidationError):
    pass


class NonConstantResult(FqError, ArithmeticError):
    """Euler-criterion power was not a constant; the modulus cannot be irreducible."""


class PartitionFailure(FqError, ArithmeticError):
    pass


class FormMismatch(FqError, ArithmeticError):
    pass


class ParseError(FqError, ValueError):
    """Malformed text. Carries a :class:`ParseDiagnostic`."""

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


class CoeffLengthMismatch(ParseError):
    pass
