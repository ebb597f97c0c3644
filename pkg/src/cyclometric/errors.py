"""Exception hierarchy.

Everything derives from :class:`CycloError` (itself a ``ValueError``) so callers
can catch the whole family at once. The CLI maps :class:`BudgetExceeded` and
:class:`SearchExhausted` to exit code 2, everything else to 1.
"""


class CycloError(ValueError):
    pass


class NonPrimeModulus(CycloError):
    pass


class DimensionMismatch(CycloError):
    pass


class ModulusMismatch(CycloError):
    pass


class OutOfBox(CycloError):
    pass


class BadAutomorphismIndex(CycloError):
    pass


class UnsupportedExponent(CycloError):
    pass


class OddMomentUnsupported(CycloError):
    pass


class NonPositiveEpsilon(CycloError):
    pass


class ExhaustionError(CycloError):
    """A search or enumeration ran out of its allowance."""


class BudgetExceeded(ExhaustionError):
    pass


class SearchExhausted(ExhaustionError):
    pass
