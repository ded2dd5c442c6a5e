"""Exception taxonomy shared by all unicrit modules."""


class UnicritError(Exception):
    """Base class for all domain errors raised by this package."""


class NotDivisibleError(UnicritError):
    """Exact polynomial division left a nonzero remainder.

    Raised where a construction expects an exact factor; usually signals a
    bug upstream rather than bad user input.
    """


class ResourceLimitError(UnicritError):
    """A configured size cap (polynomial degree, orbit bit size) was hit."""


class DegenerateEmptyError(UnicritError):
    """A dynamical-polynomial construction produced a degree-0 quotient."""


class NoConvergenceError(UnicritError):
    """Simultaneous root iteration did not converge within its budget."""


class CommonRootError(UnicritError):
    """Resultant certificate requested for polynomials sharing a root."""


class AlphaIsRootError(UnicritError):
    """The base point coincides with a root of the polynomial under study."""


class TooCloseToRootError(UnicritError):
    """Numeric log-distance average requested too close to a root."""


class ZeroInputError(UnicritError):
    """Valuation of zero requested."""
