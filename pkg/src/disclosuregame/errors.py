"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the function's domain (beliefs/types live in [0,1])."""


class ConstructionError(ValueError):
    """Invalid data for a structure, builder or game (coverage gaps, bad thresholds...)."""


class UnknownMessageError(KeyError):
    """Lookup of a message name that is not part of the structure."""


class PreconditionError(ValueError):
    """An operation was called outside its stated precondition."""


class OracleSizeError(ValueError):
    """The brute-force oracle refuses instances above its desk-scale bounds."""


class EquilibriumExistenceError(RuntimeError):
    """No equilibrium of the canonical form exists.

    Only reachable for structures that break the upper-semicontinuity of the
    skeptical type map (e.g. a message support that is right-open at an interior
    point while carrying the maximal credible type).  Such structures fall outside
    the admissible class; the solver refuses rather than returning a profile that
    would fail verification.
    """


class GameFileError(ValueError):
    """Malformed game/structure JSON; message carries a field path diagnostic."""
