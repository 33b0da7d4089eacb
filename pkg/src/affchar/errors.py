"""Exception hierarchy.

Scope errors (a request the engine deliberately does not serve) derive from
:class:`ScopeError`; everything else that is the caller's fault derives from
:class:`ValueError` so plain ``except ValueError`` keeps working.
"""


class AffCharError(Exception):
    """Base class for every error raised by this package."""


class InputError(AffCharError, ValueError):
    """Malformed or out-of-range input."""


class ScopeError(AffCharError):
    """The request is well formed but outside what the engine computes."""


class NotAUnit(InputError):
    pass


class EmptySeries(InputError):
    pass


class InvalidFactor(InputError):
    pass


class InvalidRank(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotPositiveDefinite(InputError):
    pass


class NonIntegralExponent(InputError):
    pass


class OutsideSupport(InputError, KeyError):
    """Lookup of a lattice point the table makes no claim about."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class InsufficientSupport(InputError):
    pass


class InsufficientOrder(InputError):
    pass


class NotSimplyLaced(ScopeError):
    pass


class MissingSeed(ScopeError):
    pass
