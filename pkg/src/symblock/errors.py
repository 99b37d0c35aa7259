"""Exception hierarchy shared by all modules."""


class SymBlockError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SymBlockError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidBeadCount(DomainError):
    pass


class InvalidBeta(DomainError):
    pass


class IllegalMove(DomainError):
    pass


class NotDefined(DomainError):
    """A partial map (Phi, Psi) was applied outside its domain."""


class NotFound(DomainError):
    pass


class ExcludedCase(DomainError):
    pass


class Undecided(SymBlockError):
    """A bounded search hit its depth cap without reaching a verdict.

    This is not a mathematical "no": callers must not treat it as one.
    """
