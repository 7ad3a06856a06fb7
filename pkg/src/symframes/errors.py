"""Exception hierarchy shared by all symframes modules."""


class SymframesError(Exception):
    """Base class for every error raised by this package."""


class InputError(SymframesError):
    """Malformed user input: bad permutations, unknown names, parse failures."""


class ComputationError(SymframesError):
    """A computation cannot proceed (caps, zero multiplicities, infeasible phases)."""


class InvariantViolation(SymframesError):
    """An internal consistency check failed; indicates a bug or bad data."""


# permcore
class NonBijectiveImage(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class ElementNotInGroup(InputError):
    pass


class NotASubgroup(InputError):
    pass


class OrderExceedsCap(ComputationError):
    pass


# cyclo
class NotReal(InputError):
    pass


class PrecisionUnreachable(ComputationError):
    pass


# chartab
class NoSuchCharacter(InputError):
    pass


class NotLinearCharacter(InputError):
    pass


class NonIntegerMultiplicity(InvariantViolation):
    pass


# frames
class ZeroMultiplicity(ComputationError):
    pass


class MultiplicityNotOne(ComputationError):
    pass


class AllChoicesZero(ComputationError):
    pass


class StabilizerNotSubgroup(InvariantViolation):
    pass


# codes
class InconsistentDimensions(InputError):
    pass


class MissingCrossBlock(InputError):
    pass


class NoFeasiblePhase(ComputationError):
    pass


class DuplicateVectors(ComputationError):
    pass


class NotPSD(ComputationError):
    pass


class RankExceedsDimension(ComputationError):
    pass


# cli
class UnknownName(InputError):
    pass


class CatalogError(InputError):
    pass


class ExpectationMismatch(SymframesError):
    """A reproduction run disagreed with its embedded expected values."""


class CoherenceExceeded(ComputationError):
    """A kissing verification found an off-diagonal entry above 1/2."""


class ParseError(CatalogError):
    pass


class OrderMismatch(CatalogError):
    pass


class SubgroupNotContained(CatalogError):
    pass


class UnknownExample(InputError):
    pass
