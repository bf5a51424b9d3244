"""Exception types shared across the package."""


class SiegelSieveError(Exception):
    """Base class for all package-specific errors."""


class ZeroPolynomialError(SiegelSieveError, ValueError):
    """An operation received the zero polynomial where a nonzero one is required."""


class BadDenominatorError(SiegelSieveError, ValueError):
    """A rational or field element has a denominator divisible by the residue prime."""

    def __init__(self, ell, what="element"):
        self.ell = ell
        super().__init__(f"{what} has a denominator divisible by {ell}")


class NearDiscriminantPrimeError(SiegelSieveError, ValueError):
    """The prime divides the defining polynomial's discriminant.

    Places are never constructed over such primes: the factorization of the
    defining polynomial no longer matches the splitting of the prime, and the
    pipeline treats these primes as potentially ramified.
    """

    def __init__(self, ell):
        self.ell = ell
        super().__init__(
            f"near-discriminant prime {ell}: it divides the polynomial discriminant"
        )


class IrreducibilityError(SiegelSieveError, ValueError):
    """The defining polynomial is reducible over the rationals."""


class CertificationError(SiegelSieveError, ValueError):
    """Irreducibility could not be certified within the configured effort."""


class DatasetError(SiegelSieveError, ValueError):
    """An input dataset failed validation."""
