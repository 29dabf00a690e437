"""Exception hierarchy shared by every module of the package."""


class ReflexHomError(Exception):
    """Base class for all errors raised by reflexhom."""


class NotInSpan(ReflexHomError):
    """A vector is not in the (integer or linear) span of a basis."""


class CompositionNonzero(ReflexHomError):
    """Two maps expected to compose to zero do not."""


class SquareZeroViolation(ReflexHomError):
    """A differential fails d∘d = 0, or a square of a multicomplex fails to
    commute/anticommute."""


class TwoNotInvertible(ReflexHomError):
    """An operation requiring 1/2 was asked to run over Z or F_2."""


class IllDefinedDifferential(ReflexHomError):
    """A map on a quotient does not descend from the ambient module."""


class IllDefinedInvolution(IllDefinedDifferential):
    """An involution on a balanced tensor product does not descend."""


class NotInvolution(ReflexHomError):
    """A map expected to square to the identity does not."""


class NotAGroup(ReflexHomError):
    """A multiplication table fails one of the group axioms."""


class OrbitNotInversionClosed(ReflexHomError):
    """A set of conjugacy classes is not closed under inversion."""


class TorsionInQuotient(ReflexHomError):
    """A quotient module over Z has torsion and cannot be presented freely."""


class ValidationError(ReflexHomError):
    """An input structure fails its axioms; ``violations`` lists them."""

    def __init__(self, what, violations):
        self.violations = list(violations)
        head = "; ".join(self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"invalid {what}: {head}{more}")
