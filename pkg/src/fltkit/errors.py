"""Exception hierarchy shared by every fltkit module.

Everything a caller can trip over by passing mathematically invalid input
derives from :class:`DomainError`; the CLI maps that to exit code 2.
"""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class NotPrime(DomainError):
    pass


class SingularCurve(DomainError):
    pass


class OffCurve(DomainError):
    pass


class UnsupportedPrime(DomainError):
    pass


class UnsupportedAdditiveSmallPrime(UnsupportedPrime):
    pass


class NonIntegralModel(DomainError):
    pass


class NotAFermatTriple(DomainError):
    pass


class NotCoprime(DomainError):
    pass


class BadReductionPrime(DomainError):
    pass


class InsufficientPrecision(DomainError):
    def __init__(self, required: int, available: int):
        super().__init__(f"need prec >= {required}, series has prec {available}")
        self.required = required
        self.available = available


class NearPole(DomainError):
    pass


class FactorizationLimit(DomainError):
    pass


class InternalInconsistency(AssertionError):
    """Two independent constructions disagreed; always an implementation bug."""


class FormulaViolation(InternalInconsistency):
    pass
