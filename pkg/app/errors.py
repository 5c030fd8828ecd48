class BorelCoadjointError(Exception):
    """Base class for every error raised by the library"""


class InvalidTypeError(BorelCoadjointError, ValueError):
    """Unknown family, rank outside the family's range, or a malformed Cartan matrix"""


class NotFiniteTypeError(BorelCoadjointError):
    """Root generation exceeded the bound for finite root systems"""


class NotARootError(BorelCoadjointError, ValueError):
    pass


class NotSymmetricError(BorelCoadjointError, ValueError):
    """A root subset that is not closed under negation"""


class DimensionMismatchError(BorelCoadjointError, ValueError):
    pass


class SearchBudgetExceeded(BorelCoadjointError):
    """The exhaustive strongly orthogonal search was refused for this instance"""


class StructureConstantError(BorelCoadjointError):
    """Jacobi identity or form invariance failed on the constructed algebra"""


class SupportError(BorelCoadjointError, ValueError):
    """A point is not supported in the ambient its action kind requires"""


class SelectorError(BorelCoadjointError, ValueError):
    """Invalid command-line selector"""


class DegenerateRootPairError(BorelCoadjointError, ValueError):
    """Strong orthogonality asked of a root and itself or its negative"""
