"""Exception hierarchy shared across the package."""


class FermatError(Exception):
    """Base class for all package errors."""


class NotPrime(FermatError):
    pass


class NoIrreducibleFound(FermatError):
    """Signals an internal bug: an irreducible polynomial always exists."""


class OrderDoesNotDivide(FermatError):
    pass


class FieldMismatch(FermatError):
    pass


class OrderMismatch(FermatError):
    pass


class TrivialCharacter(FermatError):
    pass


class ExtensionFieldUnsupported(FermatError):
    """Gauss sums over extension fields are deliberately out of scope."""


class NotAUnit(FermatError):
    pass


class NotCoprimeToLambda(FermatError):
    pass


class UnsupportedOrder(FermatError):
    pass


class UnitInput(FermatError):
    pass


class SearchExhausted(FermatError):
    pass


class NotCoprime(FermatError):
    pass


class RamifiedPlace(FermatError):
    pass


class ContextTooLarge(FermatError):
    pass


class NotInIS(FermatError):
    """Ideal support meets the excluded place set S'."""


class BadReduction(FermatError):
    pass


class ZetaMismatch(FermatError):
    """Point count disagrees with the character-sum zeta data at some degree k."""

    def __init__(self, k, expected, got):
        self.k = k
        self.expected = expected
        self.got = got
        super().__init__(f"count mismatch at degree {k}: expected {expected}, got {got}")


class NoWitnessBelow(FermatError):
    pass


class TruncationTooSmall(FermatError):
    pass


class AmbiguousConductor(UserWarning):
    """Two conductor candidates fit equally well; the larger is used."""


class UnsupportedRho(FermatError):
    pass


class NonPrincipalModulus(FermatError):
    pass


class RamifiedOverlap(FermatError):
    pass


class BudgetExceeded(FermatError):
    pass
