"""Exception types shared across the package.

Every computational failure that a caller can act on gets its own class;
generic bugs stay as plain Python exceptions.  The ``detail`` payload is a
string (or small structure) suitable for CLI reporting.
"""


class CorrformsError(Exception):
    """Base class for all expected failures."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


# --- scalars ---------------------------------------------------------------

class NotMonic(CorrformsError):
    pass


class ReducibleMinpoly(CorrformsError):
    pass


# --- rings and homomorphisms ----------------------------------------------

class ZeroDenominator(CorrformsError):
    pass


class NotAHomomorphism(CorrformsError):
    pass


class HomNotOverBase(CorrformsError):
    pass


class NotModuleFinite(CorrformsError):
    pass


class DegenerateSpecialization(CorrformsError):
    pass


# --- differential forms ----------------------------------------------------

class NegativeDegree(CorrformsError):
    pass


class NonRegularCoefficient(CorrformsError):
    pass


class NotRegular(CorrformsError):
    pass


class NotEtale(CorrformsError):
    pass


# --- covers and descent ----------------------------------------------------

class GroupNotClosed(CorrformsError):
    pass


class RankMismatch(CorrformsError):
    pass


class NotDescendable(CorrformsError):
    pass


class CheckFailed(CorrformsError):
    """A verification report contains at least one failing line."""
    pass


# --- correspondences -------------------------------------------------------

class WitnessInvalid(CorrformsError):
    pass


class ComponentNotContained(CorrformsError):
    pass


class WitnessDegreeMismatch(CorrformsError):
    pass


class BijectionFailure(CorrformsError):
    pass


class ValueMismatch(CorrformsError):
    pass


# --- text input ------------------------------------------------------------

class ParseError(CorrformsError):
    """Bad expression text.  ``position`` is a character offset."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position

    def __str__(self):
        base = super().__str__()
        if self.position is None:
            return base
        return "%s at position %d" % (base, self.position)


class WorkspaceError(CorrformsError):
    """Malformed workspace file: unresolved reference, bad section, etc."""
    pass
