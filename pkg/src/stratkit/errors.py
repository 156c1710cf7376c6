"""Exception hierarchy shared by all stratkit modules."""


class StratError(Exception):
    """Base class for all stratkit errors."""


# --- poset construction ---

class DuplicateElement(StratError):
    pass


class UnknownElement(StratError):
    pass


class CycleDetected(StratError):
    pass


class IdentifierClash(StratError):
    pass


class NotMonotone(StratError):
    pass


# --- simplicial machinery ---

class IndexOutOfRange(StratError):
    pass


class InconsistentConstraint(StratError):
    pass


class NotAFunctor(StratError):
    pass


class BudgetExceeded(StratError):
    """An operation would materialise more simplices than the budget allows."""


# --- filtered structures ---

class PhiNotSimplicial(StratError):
    pass


class PhiNotMonotone(StratError):
    pass


class BaseMismatch(StratError):
    pass


class SquareDoesNotCommute(StratError):
    pass


class BijectionFailure(StratError):
    """An adjunction hom-set comparison failed; signals an implementation bug."""


# --- homotopy invariants ---

class NaturalityFailure(StratError):
    """A naturality square failed to commute; signals an implementation bug."""


class NotAnIsomorphismOfPosets(StratError):
    pass


class NotASubchain(StratError):
    pass


# --- diagrams ---

class InvalidAttachment(StratError):
    pass


# --- numerics ---

class NegativeCoordinate(StratError):
    pass


class SumOutOfTolerance(StratError):
    pass


class GlueMismatch(StratError):
    pass


class NotFiltered(StratError):
    pass


# --- CLI ---

class UnsupportedObject(StratError):
    pass


class UsageError(StratError):
    pass
